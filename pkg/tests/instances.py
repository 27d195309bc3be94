"""Random instance builders shared by the property and acceptance tests."""

from __future__ import annotations

import random

from rlk.incidence import AdmissibilityFlags, BlockPartition, IncidenceDatum, block_quotient_matrix
from rlk.lattice import ComparisonProblem, Side, SideAssignment
from rlk.linalg import RationalMatrix, rank


def random_partition(rng: random.Random, r: int, max_blocks: int) -> BlockPartition:
    k = rng.randint(1, min(max_blocks, r))
    labels = list(range(k)) + [rng.randrange(k) for _ in range(r - k)]
    rng.shuffle(labels)
    return BlockPartition.from_labels(labels)


def _invertible(rng: random.Random, k: int) -> RationalMatrix:
    while True:
        m = RationalMatrix.from_rows([[rng.randint(-2, 2) for _ in range(k)] for _ in range(k)], cols=k)
        if rank(m) == k:
            return m


def block_separated_instance(rng: random.Random, max_r: int = 8, max_blocks: int = 4) -> ComparisonProblem:
    """One cycle per block with indicator rows, per-block side labels, all flags set.

    The extension side is left to its default half of the time; otherwise it is
    an explicit injective map composed with the block quotient.
    """
    r = rng.randint(1, max_r)
    p = random_partition(rng, r, max_blocks)
    owner = p.block_of()
    rows = [[int(owner[k] == b) for k in range(r)] for b in range(len(p))]
    order = list(range(len(rows)))
    rng.shuffle(order)
    d = IncidenceDatum.from_rows([rows[i] for i in order], n_nodes=r, flags=[AdmissibilityFlags.all_set()] * len(rows))
    res_names = rng.sample(["u1", "u2", "u3", "u4", "u5", "u6"], len(p))
    sm_names = rng.sample(["v1", "v2", "v3", "v4", "v5", "v6"], len(p))
    res = SideAssignment(Side.RESOLUTION, labels=tuple(res_names[owner[k]] for k in range(r)))
    sm = SideAssignment(Side.SMOOTHING, labels=tuple(sm_names[owner[k]] for k in range(r)))
    ext = None
    if rng.random() < 0.5:
        ext = SideAssignment(Side.EXTENSION, explicit_matrix=_invertible(rng, len(p)) @ block_quotient_matrix(p))
    return ComparisonProblem(d, res, sm, ext)
