from collections import Counter

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import canonical, set_partitions
from rlk.incidence import BlockPartition, block_constant_space, block_relation_space
from rlk.partitions import (
    BlockProfile,
    InvalidBlocks,
    InvalidSplit,
    TooLarge,
    bell,
    coalesce,
    dimension_law,
    enumerate_partitions,
    integer_partitions,
    profile_multiplicity,
    stirling2,
    thicken,
)


def blocks(*bs):
    return BlockPartition.from_blocks([[k - 1 for k in b] for b in bs])


@pytest.mark.parametrize("n, count", [(1, 1), (3, 5), (4, 15)])
def test_enumeration_examples(n, count):
    assert len(enumerate_partitions(n)) == count


def test_enumeration_is_rgs_ordered():
    assert enumerate_partitions(3) == [
        blocks([1, 2, 3]),
        blocks([1, 2], [3]),
        blocks([1, 3], [2]),
        blocks([1], [2, 3]),
        blocks([1], [2], [3]),
    ]
    assert enumerate_partitions(0) == [BlockPartition(0, ())]


@pytest.mark.parametrize("n", range(0, 8))
def test_enumeration_matches_oracle(n):
    ours = [canonical(p.blocks) for p in enumerate_partitions(n)]
    theirs = {canonical(p) for p in set_partitions(list(range(n)))}
    assert len(ours) == len(set(ours)) == len(theirs)
    assert set(ours) == theirs


def test_stirling_examples():
    for n in range(1, 9):
        assert stirling2(n, n) == 1 and stirling2(n, 1) == 1
    assert stirling2(4, 2) == 7
    assert stirling2(5, 3) == 25
    assert stirling2(0, 0) == 1 and stirling2(3, 0) == 0 and stirling2(2, 5) == 0


def test_bell_examples():
    assert (bell(0), bell(1), bell(4), bell(6)) == (1, 1, 15, 203)


def test_counts_have_no_guard():
    assert bell(30) == 846749014511809332450147
    assert stirling2(40, 20) > 0


@pytest.mark.parametrize("n", range(0, 9))
def test_stirling_matches_enumeration(n):
    counts = Counter(len(p) for p in set_partitions(list(range(n))))
    for k in range(n + 1):
        assert stirling2(n, k) == counts.get(k, 0)


def test_bell_triangle_cross_check():
    # Bell triangle: each row starts with the last entry of the previous one
    row = [1]
    values = [1]
    for _ in range(12):
        nxt = [row[-1]]
        for x in row:
            nxt.append(nxt[-1] + x)
        values.append(nxt[0])
        row = nxt
    assert [bell(n) for n in range(13)] == values


def test_profile_examples():
    for n in range(1, 7):
        assert profile_multiplicity([n]) == 1
        assert profile_multiplicity([1] * n) == 1
    assert profile_multiplicity(BlockProfile((2, 1))) == 3
    assert BlockProfile.parse("1,2") == BlockProfile((2, 1))
    with pytest.raises(ValueError):
        BlockProfile((1, 2))


@pytest.mark.parametrize("n", range(1, 8))
def test_profile_multiplicity_matches_oracle(n):
    counts = Counter(tuple(sorted(map(len, p), reverse=True)) for p in set_partitions(list(range(n))))
    for lam in integer_partitions(n):
        assert profile_multiplicity(lam) == counts[lam.parts]
    assert sum(1 for _ in integer_partitions(n)) == len(counts)


@pytest.mark.parametrize(
    "n, p, law",
    [(3, blocks([1, 2], [3]), (3, 2, 1)), (4, blocks([1, 2, 3, 4]), (4, 1, 3)), (2, blocks([1], [2]), (2, 2, 0))],
)
def test_dimension_law_examples(n, p, law):
    assert tuple(dimension_law(n, p)) == law
    assert dimension_law(n, p).dim_geom == block_constant_space(p).dim
    assert dimension_law(n, p).dim_rel == block_relation_space(p).dim


def test_coalesce_examples():
    singles = BlockPartition.singletons(3)
    assert coalesce(singles, [0, 1]) == blocks([1, 2], [3])
    merged = coalesce(singles, [0, 1, 2])
    before, after = dimension_law(3, singles), dimension_law(3, merged)
    assert (before.dim_rel, after.dim_rel) == (0, 2)
    assert after.dim_geom - before.dim_geom == -2
    with pytest.raises(InvalidBlocks):
        coalesce(singles, [0])
    with pytest.raises(InvalidBlocks):
        coalesce(singles, [0, 5])


def test_thicken_examples():
    assert thicken(blocks([1, 2, 3]), 0, [[0], [1, 2]]) == blocks([1], [2, 3])
    whole = blocks([1, 2, 3, 4])
    split = thicken(whole, 0, [[0], [1], [2], [3]])
    assert dimension_law(4, split).dim_rel - dimension_law(4, whole).dim_rel == -3
    with pytest.raises(InvalidSplit):
        thicken(whole, 0, [[0, 1, 2, 3]])
    with pytest.raises(InvalidSplit):
        thicken(whole, 0, [[0, 1], [1, 2, 3]])
    with pytest.raises(InvalidSplit):
        thicken(whole, 3, [[0], [1, 2, 3]])


def test_thicken_then_coalesce_round_trip():
    p = blocks([1, 2, 3], [4])
    q = thicken(p, 0, [[0], [1, 2]])
    idx = [i for i, b in enumerate(q.blocks) if set(b) <= {0, 1, 2}]
    assert coalesce(q, idx) == p


def test_guard(monkeypatch):
    with pytest.raises(TooLarge):
        enumerate_partitions(13)
    monkeypatch.setenv("RLK_ENUM_GUARD", "3")
    with pytest.raises(TooLarge):
        enumerate_partitions(4)
    assert len(enumerate_partitions(3)) == 5
    monkeypatch.setenv("RLK_ENUM_GUARD", "many")
    with pytest.raises(ValueError):
        enumerate_partitions(2)


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 7).flatmap(lambda n: st.lists(st.integers(0, n - 1), min_size=n, max_size=n)))
def test_dimension_totals(labels):
    p = BlockPartition.from_labels(labels)
    law = dimension_law(p.n, p)
    assert law.dim_geom + law.dim_rel == law.dim_node
    assert law.dim_geom == block_constant_space(p).dim


def test_multiplicity_hand_values():
    for lam, expected in [((2, 2), 3), ((3, 1), 4), ((2, 1, 1), 6), ((2, 2, 2), 15)]:
        assert profile_multiplicity(lam) == expected
