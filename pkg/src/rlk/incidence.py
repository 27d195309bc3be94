"""Cycle-node incidence data, relation blocks and block-constant subspaces.

Node indices are 0-based throughout the API; node and cycle *labels* are
free-form strings used only for reporting.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .linalg import RationalMatrix, Subspace, image, kernel, rank, subspace_equal

__all__ = [
    "AdmissibilityFlags",
    "AdmissibilityReport",
    "BlockPartition",
    "IncidenceDatum",
    "block_constant_space",
    "block_quotient_matrix",
    "block_relation_space",
    "geometric_space",
    "image_equals_block_constant_criterion",
    "incidence_blocks",
    "is_block_adapted",
    "is_geometrically_admissible",
]


@dataclass(frozen=True)
class AdmissibilityFlags:
    """Declared geometric properties of one cycle component.

    These are assertions supplied by the user about the geometry; nothing
    here is computed from the incidence matrix.
    """

    reduced_meets_nodes: bool = False
    smooth_locus_connected: bool = False
    rank_one_locally_constant: bool = False
    variation_by_specialization: bool = False
    locally_trivial_along_smooth_locus: bool = False

    @classmethod
    def all_set(cls) -> AdmissibilityFlags:
        return cls(True, True, True, True, True)

    @classmethod
    def from_names(cls, names: Iterable[str]) -> AdmissibilityFlags:
        names = set(names)
        unknown = names - set(cls.names())
        if unknown:
            raise ValueError(f"unknown admissibility flags: {sorted(unknown)}")
        return cls(**{n: True for n in names})

    @staticmethod
    def names() -> tuple[str, ...]:
        return (
            "reduced_meets_nodes",
            "smooth_locus_connected",
            "rank_one_locally_constant",
            "variation_by_specialization",
            "locally_trivial_along_smooth_locus",
        )

    def set_names(self) -> list[str]:
        return [n for n in self.names() if getattr(self, n)]

    @property
    def full_conditions(self) -> bool:
        return (
            self.reduced_meets_nodes
            and self.smooth_locus_connected
            and self.rank_one_locally_constant
            and self.variation_by_specialization
        )

    @property
    def local_triviality_shortcut(self) -> bool:
        return (
            self.locally_trivial_along_smooth_locus
            and self.rank_one_locally_constant
            and self.variation_by_specialization
        )


@dataclass(frozen=True)
class BlockPartition:
    """A set partition of ``range(n)`` in canonical form.

    Blocks are sorted tuples, ordered by their minimum element.
    """

    n: int
    blocks: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        seen = [b for block in self.blocks for b in block]
        if sorted(seen) != list(range(self.n)) or any(not b for b in self.blocks):
            raise ValueError(f"blocks {self.blocks} do not partition range({self.n})")
        canonical = tuple(sorted((tuple(sorted(b)) for b in self.blocks), key=lambda b: b[0]))
        object.__setattr__(self, "blocks", canonical)

    @classmethod
    def from_blocks(cls, blocks: Iterable[Iterable[int]], n: int | None = None) -> BlockPartition:
        blocks = tuple(tuple(b) for b in blocks)
        if n is None:
            n = sum(len(b) for b in blocks)
        return cls(n, blocks)

    @classmethod
    def singletons(cls, n: int) -> BlockPartition:
        return cls(n, tuple((k,) for k in range(n)))

    @classmethod
    def from_labels(cls, labels: Sequence[object]) -> BlockPartition:
        """Group indices carrying equal labels."""
        groups: dict[object, list[int]] = {}
        for k, lab in enumerate(labels):
            groups.setdefault(lab, []).append(k)
        return cls(len(labels), tuple(tuple(g) for g in groups.values()))

    def __len__(self) -> int:
        return len(self.blocks)

    def block_of(self) -> list[int]:
        """Map node index -> block index."""
        out = [0] * self.n
        for beta, block in enumerate(self.blocks):
            for k in block:
                out[k] = beta
        return out

    def refines(self, other: BlockPartition) -> bool:
        """True iff every block of ``self`` lies inside a block of ``other``."""
        owner = other.block_of()
        return all(len({owner[k] for k in block}) == 1 for block in self.blocks)

    @property
    def profile(self) -> tuple[int, ...]:
        return tuple(sorted((len(b) for b in self.blocks), reverse=True))

    def is_constant_on_blocks(self, v: Sequence[object]) -> bool:
        return all(all(v[k] == v[block[0]] for k in block) for block in self.blocks)

    def __str__(self) -> str:
        return "{" + ", ".join("{" + ",".join(str(k + 1) for k in b) + "}" for b in self.blocks) + "}"


@dataclass(frozen=True)
class IncidenceDatum:
    """Cycle labels, node labels and the |cycles| x |nodes| incidence matrix."""

    node_labels: tuple[str, ...]
    cycle_labels: tuple[str, ...]
    matrix: RationalMatrix
    cycle_flags: tuple[AdmissibilityFlags, ...] = field(default=())

    def __post_init__(self) -> None:
        if self.matrix.shape != (len(self.cycle_labels), len(self.node_labels)):
            raise ValueError(
                f"incidence matrix has shape {self.matrix.shape}, expected "
                f"({len(self.cycle_labels)}, {len(self.node_labels)})"
            )
        if len(set(self.node_labels)) != len(self.node_labels):
            raise ValueError("node labels must be distinct")
        if len(set(self.cycle_labels)) != len(self.cycle_labels):
            raise ValueError("cycle labels must be distinct")
        if not self.cycle_flags:
            object.__setattr__(self, "cycle_flags", tuple(AdmissibilityFlags() for _ in self.cycle_labels))
        elif len(self.cycle_flags) != len(self.cycle_labels):
            raise ValueError("one AdmissibilityFlags entry is required per cycle")

    @classmethod
    def from_rows(
        cls,
        rows: Sequence[Sequence[object]],
        n_nodes: int | None = None,
        flags: AdmissibilityFlags | Sequence[AdmissibilityFlags] | None = None,
        node_labels: Sequence[str] | None = None,
        cycle_labels: Sequence[str] | None = None,
    ) -> IncidenceDatum:
        if n_nodes is None:
            n_nodes = len(node_labels) if node_labels is not None else len(rows[0])
        m = RationalMatrix.from_rows(rows, cols=n_nodes)
        if node_labels is None:
            node_labels = [f"p{k + 1}" for k in range(n_nodes)]
        if cycle_labels is None:
            cycle_labels = [f"C{a + 1}" for a in range(m.rows)]
        if flags is None:
            flag_tuple: tuple[AdmissibilityFlags, ...] = ()
        elif isinstance(flags, AdmissibilityFlags):
            flag_tuple = (flags,) * m.rows
        else:
            flag_tuple = tuple(flags)
        return cls(tuple(node_labels), tuple(cycle_labels), m, flag_tuple)

    @property
    def r(self) -> int:
        return len(self.node_labels)

    @property
    def n_cycles(self) -> int:
        return len(self.cycle_labels)


def incidence_blocks(d: IncidenceDatum) -> BlockPartition:
    """Group nodes whose incidence columns agree."""
    return BlockPartition.from_labels(d.matrix.columns())


def geometric_space(d: IncidenceDatum) -> Subspace:
    """Image of the incidence map inside Q^r (the row space of the matrix)."""
    return image(d.matrix.transpose())


def block_constant_space(p: BlockPartition) -> Subspace:
    # indicator rows ordered by block minimum are already in reduced echelon form
    owner = p.block_of()
    rows = tuple(
        tuple(Fraction(1) if owner[k] == beta else Fraction(0) for k in range(p.n)) for beta in range(len(p))
    )
    return Subspace(p.n, rows)


def is_block_adapted(d: IncidenceDatum) -> bool:
    return subspace_equal(geometric_space(d), block_constant_space(incidence_blocks(d)))


def image_equals_block_constant_criterion(d: IncidenceDatum) -> bool:
    """Sufficient test for block-adaptedness: the distinct columns are independent.

    Column constancy on incidence blocks holds by construction of the blocks,
    so only independence of the distinct columns needs checking.
    """
    p = incidence_blocks(d)
    distinct = [d.matrix.column(block[0]) for block in p.blocks]
    if not distinct:
        return True
    return rank(RationalMatrix.from_columns(distinct, rows=d.matrix.rows)) == len(distinct)


def block_quotient_matrix(p: BlockPartition) -> RationalMatrix:
    """The |B| x n 0/1 matrix sending e_k to e_beta for k in block beta."""
    return RationalMatrix(len(p), p.n, block_constant_space(p).basis)


def block_relation_space(p: BlockPartition) -> Subspace:
    """Vectors whose entries sum to zero over every block."""
    return kernel(block_quotient_matrix(p))


@dataclass(frozen=True)
class AdmissibilityReport:
    admissible: bool
    per_cycle: tuple[bool, ...]
    reasons: tuple[str, ...]
    warnings: tuple[str, ...] = ()

    def __bool__(self) -> bool:
        return self.admissible


def is_geometrically_admissible(d: IncidenceDatum) -> AdmissibilityReport:
    """Evaluate the declared admissibility flags cycle by cycle.

    A cycle is admissible when its row is nonzero and either the four
    defining conditions are declared or the local-triviality shortcut is.
    """
    per_cycle = []
    reasons = []
    warnings = []
    for a, (label, flags) in enumerate(zip(d.cycle_labels, d.cycle_flags)):
        row = d.matrix.row(a)
        meets = any(row)
        ok = meets and (flags.full_conditions or flags.local_triviality_shortcut)
        per_cycle.append(ok)
        if not meets:
            reasons.append(f"{label}: incidence row is zero, cycle meets no node")
        elif not ok:
            missing = [
                n
                for n in ("reduced_meets_nodes", "smooth_locus_connected", "rank_one_locally_constant", "variation_by_specialization")
                if not getattr(flags, n)
            ]
            reasons.append(f"{label}: missing {', '.join(missing)} and local-triviality shortcut not declared")
        if flags.set_names() and any(x not in (0, 1) for x in row):
            warnings.append(f"{label}: admissibility flags declared on a row with non-0/1 coefficients")
    return AdmissibilityReport(all(per_cycle), tuple(per_cycle), tuple(reasons), tuple(warnings))

