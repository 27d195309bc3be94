"""Resolution, smoothing and extension relation lattices and their comparison.

Each side is described by a :class:`SideAssignment`: either per-node class
labels (distinct labels stand for linearly independent classes) or an
explicit matrix whose columns are the node classes.  The relation lattice of
a side is the kernel of the resulting map Q^r -> W.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Sequence

from .incidence import (
    BlockPartition,
    IncidenceDatum,
    block_quotient_matrix,
    block_relation_space,
    geometric_space,
    incidence_blocks,
    is_block_adapted,
    is_geometrically_admissible,
)
from .linalg import RationalMatrix, Subspace, contains, intersect, kernel, rank, subspace_equal

__all__ = [
    "BlockEqualityReport",
    "BlockSeparationReport",
    "ComparisonProblem",
    "ComparisonReport",
    "GroupAction",
    "HypothesisFailed",
    "InvalidComplement",
    "MissingSides",
    "Side",
    "SideAssignment",
    "block_separated_equality",
    "check_orbit_blocks",
    "comparison_theorem",
    "is_comparison_compatible",
    "is_minimal",
    "q_geom_kernel",
    "side_lattice",
    "verify_block_separated",
]


class InvalidComplement(ValueError):
    """A declared complement is not a direct-sum complement of V_geom."""


class MissingSides(ValueError):
    """The comparison needs side data that was not supplied."""


class HypothesisFailed(RuntimeError):
    """A theorem was requested on an instance violating its hypotheses."""

    def __init__(self, failed: Sequence[str], message: str = "") -> None:
        self.failed = tuple(failed)
        super().__init__(message or f"hypothesis conditions failed: {', '.join(self.failed)}")


class Side(enum.Enum):
    RESOLUTION = "res"
    SMOOTHING = "sm"
    EXTENSION = "ext"


@dataclass(frozen=True)
class SideAssignment:
    side: Side
    labels: tuple[str, ...] | None = None
    explicit_matrix: RationalMatrix | None = None

    def __post_init__(self) -> None:
        if (self.labels is None) == (self.explicit_matrix is None):
            raise ValueError("give exactly one of labels or explicit_matrix")
        if self.labels is not None:
            object.__setattr__(self, "labels", tuple(self.labels))

    @property
    def mode(self) -> str:
        return "labels" if self.labels is not None else "explicit"

    @property
    def r(self) -> int:
        return len(self.labels) if self.labels is not None else self.explicit_matrix.cols

    def matrix(self) -> RationalMatrix:
        """The side map eta as a matrix (label indicators in Labels mode)."""
        if self.explicit_matrix is not None:
            return self.explicit_matrix
        distinct = list(dict.fromkeys(self.labels))
        return RationalMatrix.from_rows(
            [[int(lab == target) for lab in self.labels] for target in distinct], cols=len(self.labels)
        )


def side_lattice(s: SideAssignment) -> Subspace:
    return kernel(s.matrix())


@dataclass(frozen=True)
class ComparisonProblem:
    datum: IncidenceDatum
    res: SideAssignment
    sm: SideAssignment
    ext: SideAssignment | None = None
    q_geom_complement: Subspace | None = None

    def __post_init__(self) -> None:
        for s in (self.res, self.sm, self.ext):
            if s is not None and s.r != self.datum.r:
                raise ValueError(f"{s.side.value} side has {s.r} nodes, datum has {self.datum.r}")
        if self.q_geom_complement is not None and self.q_geom_complement.ambient_dim != self.datum.r:
            raise ValueError("declared complement must live in Q^r")

    @property
    def ext_side(self) -> SideAssignment:
        """The extension side, defaulting to the block quotient for block-adapted data."""
        if self.ext is not None:
            return self.ext
        if not is_block_adapted(self.datum):
            raise MissingSides("extension side must be given explicitly for data that is not block-adapted")
        return SideAssignment(Side.EXTENSION, explicit_matrix=block_quotient_matrix(incidence_blocks(self.datum)))

    def sides(self) -> dict[str, SideAssignment]:
        return {"res": self.res, "sm": self.sm, "ext": self.ext_side}


def _q_geom_kernel_with_source(p: ComparisonProblem) -> tuple[Subspace, str]:
    v_geom = geometric_space(p.datum)
    r = p.datum.r
    if p.q_geom_complement is not None:
        c = p.q_geom_complement
        if c.dim + v_geom.dim != r or intersect(c, v_geom).dim != 0:
            raise InvalidComplement(f"{c} is not a complement of {v_geom}")
        return c, "declared"
    if is_block_adapted(p.datum):
        return block_relation_space(incidence_blocks(p.datum)), "block-relation"
    pivots = set(v_geom.pivots)
    vectors = [[int(i == j) for i in range(r)] for j in range(r) if j not in pivots]
    return Subspace.span(vectors, r), "coordinate"


def q_geom_kernel(p: ComparisonProblem) -> Subspace:
    """Kernel of the projection Q^r -> V_geom along the chosen complement."""
    return _q_geom_kernel_with_source(p)[0]


def is_comparison_compatible(p: ComparisonProblem) -> dict[str, bool]:
    """Per-side factorization through q_geom; the datum is compatible iff all hold."""
    r_geom = q_geom_kernel(p)
    return {name: contains(side_lattice(s), r_geom) for name, s in p.sides().items()}


def common_lattice(p: ComparisonProblem) -> Subspace:
    lattices = [side_lattice(s) for s in p.sides().values()]
    return intersect(intersect(lattices[0], lattices[1]), lattices[2])


def is_minimal(p: ComparisonProblem) -> bool:
    return subspace_equal(q_geom_kernel(p), common_lattice(p))


@dataclass(frozen=True)
class ComparisonReport:
    r_geom: Subspace
    r_res: Subspace
    r_sm: Subspace
    r_ext: Subspace
    intersection: Subspace
    compatible: dict[str, bool]
    minimal: bool
    identity_holds: bool
    complement: str
    failing: tuple[str, ...] = ()


def comparison_theorem(p: ComparisonProblem) -> ComparisonReport:
    r_geom, source = _q_geom_kernel_with_source(p)
    sides = p.sides()
    r_res, r_sm, r_ext = (side_lattice(sides[k]) for k in ("res", "sm", "ext"))
    inter = intersect(intersect(r_res, r_sm), r_ext)
    compat = {"res": contains(r_res, r_geom), "sm": contains(r_sm, r_geom), "ext": contains(r_ext, r_geom)}
    minimal = subspace_equal(r_geom, inter)
    failing = tuple(f"{k} side does not factor through q_geom" for k, ok in compat.items() if not ok)
    if not minimal:
        failing += ("kernel of q_geom differs from the common relation lattice",)
    holds = all(compat.values()) and minimal
    if holds and not subspace_equal(r_geom, inter):  # pragma: no cover - re-verification
        raise AssertionError("identity asserted but R_geom != intersection")
    return ComparisonReport(r_geom, r_res, r_sm, r_ext, inter, compat, minimal, holds, source, failing)


@dataclass(frozen=True)
class BlockSeparationReport:
    conditions: dict[str, bool]
    details: dict[str, str] = field(default_factory=dict)
    blocks: BlockPartition | None = None

    @property
    def passed(self) -> bool:
        return all(self.conditions.values())

    @property
    def failed(self) -> tuple[str, ...]:
        return tuple(k for k, ok in self.conditions.items() if not ok)


def _block_classes(s: SideAssignment, blocks: BlockPartition) -> tuple[bool, bool]:
    """(constant on blocks, block classes independent) for one side."""
    m = s.matrix()
    columns = m.columns()
    constant = blocks.is_constant_on_blocks(columns)
    if s.labels is not None:
        reps = [s.labels[b[0]] for b in blocks.blocks]
        independent = len(set(reps)) == len(reps)
    else:
        reps_m = RationalMatrix.from_columns([columns[b[0]] for b in blocks.blocks], rows=m.rows)
        independent = rank(reps_m) == len(blocks)
    return constant, independent


def verify_block_separated(p: ComparisonProblem) -> BlockSeparationReport:
    d = p.datum
    blocks = incidence_blocks(d)
    rows = d.matrix.entries
    details: dict[str, str] = {}

    col_support = [sum(1 for a in range(d.n_cycles) if rows[a][k] != 0) for k in range(d.r)]
    c1 = all(n == 1 for n in col_support)
    if not c1:
        bad = [d.node_labels[k] for k, n in enumerate(col_support) if n != 1]
        details["1"] = f"nodes not on exactly one cycle: {', '.join(bad)}"

    zero_one = all(x in (0, 1) for row in rows for x in row)
    c2 = zero_one and all(any(row) for row in rows)
    if not c2:
        details["2"] = "incidence rows are not 0/1 indicators of nonempty blocks"

    res_const, res_indep = _block_classes(p.res, blocks)
    sm_const, sm_indep = _block_classes(p.sm, blocks)
    if not res_const:
        details["3"] = "resolution classes vary within a block"
    if not sm_const:
        details["4"] = "smoothing classes vary within a block"
    c5 = res_indep and sm_indep
    if not c5:
        details["5"] = "block classes are not linearly independent"

    admissible = is_geometrically_admissible(d).admissible
    adapted = is_block_adapted(d)
    if not (admissible and adapted):
        details["6a"] = f"admissible={admissible}, block_adapted={adapted}"

    if p.ext is None:
        c6b = adapted
    else:
        ext_const, ext_indep = _block_classes(p.ext, blocks)
        c6b = ext_const and ext_indep
    if not c6b:
        details["6b"] = "extension map does not factor injectively through the block quotient"

    conditions = {
        "1": c1,
        "2": c2,
        "3": res_const,
        "4": sm_const,
        "5": c5,
        "6a": admissible and adapted,
        "6b": c6b,
    }
    return BlockSeparationReport(conditions, details, blocks)


@dataclass(frozen=True)
class BlockEqualityReport:
    r_res: Subspace
    r_sm: Subspace
    r_ext: Subspace
    r_blk: Subspace
    n_blocks: int
    quotient_dims: dict[str, int]
    equal: bool


def block_separated_equality(p: ComparisonProblem) -> BlockEqualityReport:
    """Compute all four lattices and check they coincide with quotient dim |B|."""
    check = verify_block_separated(p)
    if not check.passed:
        raise HypothesisFailed(check.failed)
    blocks = check.blocks
    sides = p.sides()
    r_res, r_sm, r_ext = (side_lattice(sides[k]) for k in ("res", "sm", "ext"))
    r_blk = block_relation_space(blocks)
    r = p.datum.r
    quotient_dims = {"res": r - r_res.dim, "sm": r - r_sm.dim, "ext": r - r_ext.dim, "blk": r - r_blk.dim}
    equal = (
        subspace_equal(r_res, r_blk)
        and subspace_equal(r_sm, r_blk)
        and subspace_equal(r_ext, r_blk)
        and all(q == len(blocks) for q in quotient_dims.values())
    )
    return BlockEqualityReport(r_res, r_sm, r_ext, r_blk, len(blocks), quotient_dims, equal)


@dataclass(frozen=True)
class GroupAction:
    """Permutations of range(n), each given as its list of images."""

    n: int
    generators: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        gens = tuple(tuple(g) for g in self.generators)
        for g in gens:
            if sorted(g) != list(range(self.n)):
                raise ValueError(f"{g} is not a permutation of range({self.n})")
        object.__setattr__(self, "generators", gens)

    def orbits(self) -> BlockPartition:
        # forward closure suffices: generators of a finite group have finite order
        owner: list[int | None] = [None] * self.n
        for start in range(self.n):
            if owner[start] is not None:
                continue
            owner[start] = start
            stack = [start]
            while stack:
                x = stack.pop()
                for g in self.generators:
                    y = g[x]
                    if owner[y] is None:
                        owner[y] = start
                        stack.append(y)
        return BlockPartition.from_labels(owner)


def check_orbit_blocks(g: GroupAction, p: BlockPartition) -> bool:
    """Each block is preserved and acted on transitively, i.e. orbits == blocks."""
    if g.n != p.n:
        raise ValueError("group action and partition act on different node sets")
    return g.orbits() == p
