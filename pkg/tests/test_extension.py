import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import in_span, sym_matrix
from rlk.extension import (
    CorrectedClass,
    ExtensionLayer,
    LayerMismatch,
    RealizationMap,
    check_corrected_class,
    e_geom,
    gamma_map,
    is_incidence_compatible,
    is_rigid,
    propagation_closure,
    realization_commutes,
    realize,
    vanishing_sector_span,
)
from rlk.incidence import AdmissibilityFlags, BlockPartition, IncidenceDatum, geometric_space, incidence_blocks, is_block_adapted
from rlk.linalg import DimensionMismatch, RationalMatrix, Subspace, membership, rank

ALL = AdmissibilityFlags.all_set()


def datum(rows, n=None, admissible=True):
    rows = list(rows)
    flags = [ALL if admissible else AdmissibilityFlags()] * len(rows)
    return IncidenceDatum.from_rows(rows, n_nodes=n, flags=flags)


S81 = datum([[1, 1]])
S82 = datum([[1, 1, 0], [0, 0, 1]])
S83 = datum([[1, 1, 1, 0], [0, 0, 1, 1]])


def cls(values, layer=None):
    return CorrectedClass(layer or ExtensionLayer.perverse(len(values)), values)


def test_gamma_examples():
    assert gamma_map(S81, ExtensionLayer.perverse(2)) == RationalMatrix.from_columns([[1, 1]])
    assert gamma_map(S82, ExtensionLayer.perverse(3)) == RationalMatrix.from_columns([[1, 1, 0], [0, 0, 1]])
    scaled = gamma_map(S81, ExtensionLayer.perverse(2, (1, 2)))
    assert scaled == RationalMatrix.from_columns([[1, 2]])
    assert e_geom(S81, ExtensionLayer.perverse(2, (1, 2))).dim == e_geom(S81).dim


def test_e_geom_examples():
    assert e_geom(S81) == Subspace.span([[1, 1]], 2)
    assert e_geom(S83) == Subspace.span([[1, 1, 1, 0], [0, 0, 1, 1]], 4)
    assert e_geom(IncidenceDatum.from_rows([], n_nodes=3)) == Subspace.zero(3)


def test_incidence_compatible_examples():
    assert is_incidence_compatible(cls([5, 5, -2]), S82)
    assert not is_incidence_compatible(cls([1, 2, 3]), S82)
    assert is_incidence_compatible([9, -4, 1], datum([[1, 0, 0], [0, 1, 0], [0, 0, 1]]))


def test_propagation_closure_examples():
    assert propagation_closure(S81) == BlockPartition.from_blocks([[0, 1]])
    assert propagation_closure(S82) == BlockPartition.from_blocks([[0, 1], [2]])
    assert propagation_closure(S83) == BlockPartition.from_blocks([[0, 1, 2, 3]])
    assert propagation_closure(datum([[1, 1]], admissible=False)) == BlockPartition.singletons(2)


def test_check_corrected_class_examples():
    rep = check_corrected_class(cls([3, 3]), S81)
    assert rep.propagation_ok and rep.incidence_ok and rep.in_e_geom and rep.all_ok
    assert not check_corrected_class(cls([3, 4]), S81).propagation_ok
    assert check_corrected_class(cls([5, 5, -2]), S82).in_e_geom


def test_refinement_warning():
    # the incidence blocks of S83 refine its single propagation block, so no warning
    assert not check_corrected_class(cls([1, 1, 1, 1]), S83).warnings
    # a non-admissible shared cycle: incidence block {1,2} but singleton propagation blocks
    rep = check_corrected_class(cls([1, 2]), datum([[1, 1]], admissible=False))
    assert rep.warnings and rep.propagation_ok and not rep.incidence_ok


def test_realize_examples():
    src = ExtensionLayer.mhm(2)
    assert realize(cls([1, 1], src), RealizationMap.from_diagonal(src, [1, 1])).components == (1, 1)
    assert realize(cls([1, 1], src), RealizationMap.from_diagonal(src, [2, 3])).components == (2, 3)
    with pytest.raises(LayerMismatch):
        realize(cls([1, 1]), RealizationMap.from_diagonal(src, [2, 3]))


def test_realization_map_validation():
    src = ExtensionLayer.mhm(2)
    with pytest.raises(ValueError):
        RealizationMap.from_diagonal(src, [1, 0])
    with pytest.raises(ValueError):
        RealizationMap(src, ExtensionLayer.perverse(2), RationalMatrix.from_rows([[1, 1], [0, 1]]))
    with pytest.raises(LayerMismatch):
        RealizationMap(ExtensionLayer.perverse(2), ExtensionLayer.perverse(2), RationalMatrix.identity(2))
    with pytest.raises(DimensionMismatch):
        RealizationMap.from_diagonal(src, [1, 2, 3])


def test_rigidity_examples():
    assert is_rigid(S81)
    assert not is_rigid(S82)
    assert not is_rigid(IncidenceDatum.from_rows([], n_nodes=2))


def test_vanishing_span_examples():
    assert vanishing_sector_span(S81) == Subspace.span([[1, 1]], 2)
    assert vanishing_sector_span(datum([[1, 0, 0], [0, 1, 0], [0, 0, 1]])) == Subspace.full(3)
    assert vanishing_sector_span(S83).dim == 2


def test_layer_checks():
    with pytest.raises(DimensionMismatch):
        e_geom(S81, ExtensionLayer.perverse(3))
    with pytest.raises(ValueError):
        ExtensionLayer.perverse(2, (1, 0))
    assert ExtensionLayer.mhm(2).generator_labels == ("eps_1^H", "eps_2^H")


def random_datum(rng, max_r=5, max_a=4):
    r = rng.randint(1, max_r)
    rows = [[rng.choice([0, 0, 1, 1, 2, -1]) for _ in range(r)] for _ in range(rng.randint(0, max_a))]
    return datum(rows, n=r, admissible=rng.random() < 0.7)


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 2**32))
def test_scale_independence(seed):
    rnd = random.Random(seed)
    d = random_datum(rnd)
    scale = [rnd.choice([-3, -1, 1, 2, Fraction(1, 2)]) for _ in range(d.r)]
    base, scaled = e_geom(d), e_geom(d, ExtensionLayer.perverse(d.r, scale))
    assert base.dim == scaled.dim == rank(d.matrix) <= d.n_cycles
    # rescaling coordinates maps one image onto the other
    rescaled = Subspace.span([[x * s for x, s in zip(v, scale)] for v in base.basis], d.r)
    assert rescaled == scaled


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 2**32))
def test_realization_commutes_random(seed):
    rnd = random.Random(seed)
    d = random_datum(rnd)
    src = ExtensionLayer.mhm(d.r, [rnd.choice([1, 2, -1, Fraction(3, 2)]) for _ in range(d.r)])
    rat = RealizationMap.from_diagonal(src, [rnd.choice([1, -2, 5, Fraction(1, 3)]) for _ in range(d.r)])
    assert realization_commutes(d, rat)
    # column-by-column, using sympy for the product
    lhs = sym_matrix(rat.matrix.tolist(), d.r) * sym_matrix(gamma_map(d, src).tolist(), d.n_cycles)
    assert lhs.tolist() == sym_matrix(gamma_map(d, rat.target).tolist(), d.n_cycles).tolist()


def test_compatibility_iff_membership_exhaustive():
    rng = random.Random(7)
    cases = [S81, S82] + [random_datum(rng, 4, 3) for _ in range(40)]
    for d in cases:
        if not is_block_adapted(d):
            continue
        for v in itertools.product(range(-1, 2), repeat=d.r):
            assert is_incidence_compatible(v, d) == membership(v, e_geom(d))
            assert membership(v, e_geom(d)) == in_span(v, d.matrix.tolist(), d.r)


def test_propagation_implies_incidence_when_refined():
    rng = random.Random(11)
    for _ in range(200):
        d = random_datum(rng, 4, 3)
        prop, inc = propagation_closure(d), incidence_blocks(d)
        if not inc.refines(prop):
            continue
        for v in itertools.product(range(2), repeat=d.r):
            rep = check_corrected_class(cls(list(v)), d)
            assert not rep.propagation_ok or rep.incidence_ok
