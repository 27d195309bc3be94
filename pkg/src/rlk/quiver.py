"""Decategorified quiver shadows and their Graphviz export.

Arrows are single bulk -> sector edges; every quantitative statement lives
in ``coupling_dim``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Sequence

from .extension import is_incidence_compatible
from .incidence import IncidenceDatum, incidence_blocks
from .linalg import rank

__all__ = [
    "Arrow",
    "QuiverShadow",
    "Vertex",
    "VertexKind",
    "block_quiver",
    "coupling_is_block_compatible",
    "node_quiver",
    "to_dot",
]


class VertexKind(enum.Enum):
    BULK = "bulk"
    NODE = "node"
    BLOCK = "block"


@dataclass(frozen=True)
class Vertex:
    id: str
    kind: VertexKind
    label: str


@dataclass(frozen=True)
class Arrow:
    source: str
    target: str
    label: str


@dataclass(frozen=True)
class QuiverShadow:
    vertices: tuple[Vertex, ...]
    arrows: tuple[Arrow, ...]
    coupling_dim: int

    def __post_init__(self) -> None:
        kinds = [v.kind for v in self.vertices]
        if kinds.count(VertexKind.BULK) != 1:
            raise ValueError("a quiver shadow has exactly one bulk vertex")
        if VertexKind.NODE in kinds and VertexKind.BLOCK in kinds:
            raise ValueError("node and block vertices cannot share a shadow")
        ids = {v.id for v in self.vertices}
        if len(ids) != len(self.vertices):
            raise ValueError("vertex ids must be unique")
        for a in self.arrows:
            if a.source not in ids or a.target not in ids:
                raise ValueError(f"arrow {a.source}->{a.target} references a missing vertex")

    @property
    def local_vertices(self) -> tuple[Vertex, ...]:
        return tuple(v for v in self.vertices if v.kind is not VertexKind.BULK)


_BULK = Vertex("bulk", VertexKind.BULK, "bulk")


def node_quiver(d: IncidenceDatum) -> QuiverShadow:
    vertices = [_BULK] + [Vertex(f"n{k + 1}", VertexKind.NODE, lab) for k, lab in enumerate(d.node_labels)]
    arrows = [Arrow("bulk", v.id, f"c_{v.label}") for v in vertices[1:]]
    return QuiverShadow(tuple(vertices), tuple(arrows), d.r)


def block_quiver(d: IncidenceDatum) -> QuiverShadow:
    """One local vertex per relation block; coupling dim is the incidence rank."""
    blocks = incidence_blocks(d)
    vertices = [_BULK] + [
        Vertex(f"b{i + 1}", VertexKind.BLOCK, "{" + ",".join(d.node_labels[k] for k in block) + "}")
        for i, block in enumerate(blocks.blocks)
    ]
    arrows = [Arrow("bulk", v.id, f"c_B{i + 1}") for i, v in enumerate(vertices[1:])]
    return QuiverShadow(tuple(vertices), tuple(arrows), rank(d.matrix))


def coupling_is_block_compatible(c: Sequence[object], d: IncidenceDatum) -> bool:
    return is_incidence_compatible(c, d)


def _quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def to_dot(q: QuiverShadow, name: str = "quiver") -> str:
    lines = [f"digraph {_quote(name)} {{", f"  // coupling_dim = {q.coupling_dim}"]
    for v in q.vertices:
        shape = "doublecircle" if v.kind is VertexKind.BULK else "circle"
        lines.append(f"  {_quote(v.id)} [shape={shape}, class={v.kind.value}, label={_quote(v.label)}];")
    for a in q.arrows:
        lines.append(f"  {_quote(a.source)} -> {_quote(a.target)} [label={_quote(a.label)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"
