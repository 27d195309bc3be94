"""Nodewise extension coefficients and the geometrically realized subspace.

Each node contributes one rank-one local summand, so the free nodewise
extension space is modeled as Q^r with one labeled generator per node.
Perverse and mixed-Hodge-module layers share this model; they differ only in
their generator labels and the diagonal rescaling that relates them.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .incidence import BlockPartition, IncidenceDatum, geometric_space, incidence_blocks, is_geometrically_admissible
from .linalg import DimensionMismatch, RationalMatrix, Subspace, as_vector, image, membership

__all__ = [
    "CorrectedClass",
    "CorrectedClassReport",
    "ExtensionLayer",
    "LayerKind",
    "LayerMismatch",
    "RealizationMap",
    "check_corrected_class",
    "e_geom",
    "gamma_map",
    "is_incidence_compatible",
    "is_rigid",
    "propagation_closure",
    "realization_commutes",
    "realize",
    "vanishing_sector_span",
]


class LayerMismatch(ValueError):
    """A class was handed to a map defined on a different layer."""


class LayerKind(enum.Enum):
    PERVERSE = "perverse"
    MHM = "mhm"


@dataclass(frozen=True)
class ExtensionLayer:
    kind: LayerKind
    r: int
    generator_labels: tuple[str, ...] = ()
    scale: tuple[Fraction, ...] = ()

    def __post_init__(self) -> None:
        if not self.generator_labels:
            suffix = "^H" if self.kind is LayerKind.MHM else ""
            object.__setattr__(self, "generator_labels", tuple(f"eps_{k + 1}{suffix}" for k in range(self.r)))
        if not self.scale:
            object.__setattr__(self, "scale", (Fraction(1),) * self.r)
        object.__setattr__(self, "scale", as_vector(self.scale))
        if len(self.generator_labels) != self.r or len(self.scale) != self.r:
            raise ValueError("generator_labels and scale must have one entry per node")
        if len(set(self.generator_labels)) != self.r:
            raise ValueError("generator labels must be distinct")
        if any(s == 0 for s in self.scale):
            raise ValueError("generator scales must be nonzero")

    @classmethod
    def perverse(cls, r: int, scale: Sequence[object] = ()) -> ExtensionLayer:
        return cls(LayerKind.PERVERSE, r, scale=as_vector(scale))

    @classmethod
    def mhm(cls, r: int, scale: Sequence[object] = ()) -> ExtensionLayer:
        return cls(LayerKind.MHM, r, scale=as_vector(scale))


@dataclass(frozen=True)
class CorrectedClass:
    layer: ExtensionLayer
    components: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "components", as_vector(self.components))
        if len(self.components) != self.layer.r:
            raise DimensionMismatch(f"class has {len(self.components)} components, layer has {self.layer.r} nodes")


@dataclass(frozen=True)
class RealizationMap:
    """Invertible diagonal map from an MHM layer to a perverse layer."""

    source: ExtensionLayer
    target: ExtensionLayer
    matrix: RationalMatrix

    def __post_init__(self) -> None:
        if self.source.kind is not LayerKind.MHM or self.target.kind is not LayerKind.PERVERSE:
            raise LayerMismatch("realization goes from an MHM layer to a perverse layer")
        r = self.source.r
        if self.target.r != r or self.matrix.shape != (r, r):
            raise DimensionMismatch("realization map must be r x r between layers of rank r")
        for i, row in enumerate(self.matrix.entries):
            for j, x in enumerate(row):
                if (i == j) != (x != 0):
                    raise ValueError("realization map must be diagonal with nonzero diagonal")

    @classmethod
    def from_diagonal(cls, source: ExtensionLayer, diag: Sequence[object]) -> RealizationMap:
        """Realization with the given diagonal; the target layer's generators are
        the realized images of the source generators."""
        d = as_vector(diag)
        if len(d) != source.r:
            raise DimensionMismatch("diagonal length must equal the node count")
        if any(x == 0 for x in d):
            raise ValueError("realization map must be diagonal with nonzero diagonal")
        target = ExtensionLayer.perverse(source.r, tuple(x * s for x, s in zip(d, source.scale)))
        return cls(source, target, RationalMatrix.diagonal(d))

    @property
    def diagonal(self) -> tuple[Fraction, ...]:
        return tuple(self.matrix.entries[k][k] for k in range(self.matrix.rows))


def _check_nodes(layer_r: int, d: IncidenceDatum) -> None:
    if layer_r != d.r:
        raise DimensionMismatch(f"layer has {layer_r} nodes, datum has {d.r}")


def gamma_map(d: IncidenceDatum, layer: ExtensionLayer) -> RationalMatrix:
    """The r x |A| matrix whose column alpha is sum_k a_{alpha k} scale_k eps_k."""
    _check_nodes(layer.r, d)
    return RationalMatrix(
        d.r,
        d.n_cycles,
        tuple(tuple(d.matrix.entries[a][k] * layer.scale[k] for a in range(d.n_cycles)) for k in range(d.r)),
    )


def e_geom(d: IncidenceDatum, layer: ExtensionLayer | None = None) -> Subspace:
    if layer is None:
        layer = ExtensionLayer.perverse(d.r)
    return image(gamma_map(d, layer))


def is_incidence_compatible(c: CorrectedClass | Sequence[object], d: IncidenceDatum) -> bool:
    components = c.components if isinstance(c, CorrectedClass) else as_vector(c)
    _check_nodes(len(components), d)
    return incidence_blocks(d).is_constant_on_blocks(components)


def propagation_closure(d: IncidenceDatum) -> BlockPartition:
    """Connected components of the co-incidence graph of admissible cycles."""
    parent = list(range(d.r))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    admissible = is_geometrically_admissible(d).per_cycle
    for a, ok in enumerate(admissible):
        if not ok:
            continue
        support = [k for k, x in enumerate(d.matrix.row(a)) if x]
        for k in support[1:]:
            parent[find(k)] = find(support[0])
    return BlockPartition.from_labels([find(k) for k in range(d.r)])


@dataclass(frozen=True)
class CorrectedClassReport:
    propagation_ok: bool
    incidence_ok: bool
    in_e_geom: bool
    propagation_blocks: BlockPartition
    incidence_blocks: BlockPartition
    warnings: tuple[str, ...] = field(default=())

    @property
    def all_ok(self) -> bool:
        return self.propagation_ok and self.incidence_ok and self.in_e_geom


def check_corrected_class(c: CorrectedClass, d: IncidenceDatum) -> CorrectedClassReport:
    _check_nodes(c.layer.r, d)
    prop = propagation_closure(d)
    inc = incidence_blocks(d)
    warnings = []
    if not inc.refines(prop):
        warnings.append(
            f"incidence blocks {inc} are not refined by propagation blocks {prop}; "
            "incidence-compatibility is not forced by admissible cycles alone"
        )
    return CorrectedClassReport(
        propagation_ok=prop.is_constant_on_blocks(c.components),
        incidence_ok=inc.is_constant_on_blocks(c.components),
        in_e_geom=membership(c.components, e_geom(d, c.layer)),
        propagation_blocks=prop,
        incidence_blocks=inc,
        warnings=tuple(warnings),
    )


def realize(c: CorrectedClass, rat: RealizationMap) -> CorrectedClass:
    if c.layer != rat.source:
        raise LayerMismatch("class does not live on the realization map's source layer")
    return CorrectedClass(rat.target, rat.matrix.apply(c.components))


def realization_commutes(d: IncidenceDatum, rat: RealizationMap) -> bool:
    """rat o Gamma^H == Gamma as matrices."""
    return rat.matrix @ gamma_map(d, rat.source) == gamma_map(d, rat.target)


def is_rigid(d: IncidenceDatum) -> bool:
    """The realized extension subspace is a single line."""
    return e_geom(d).dim == 1


def vanishing_sector_span(d: IncidenceDatum) -> Subspace:
    """Span of sum_k a_{alpha k} delta_k, in coordinates over delta_1..delta_r."""
    return geometric_space(d)
