import random
from itertools import combinations

import numpy as np
import pytest

from pg2q.codes import (
    NotCodeword,
    batch_peel_fixpoint,
    hyperoval,
    incidence_code,
    peel_decode,
    stopping_equivalence_check,
    trivial_signing,
)
from pg2q.constructions import frobenius_graph, interior_points, trivial
from pg2q.conic import canonical_conic
from pg2q.plane import PointSet, plane_for_order
from pg2q.tangency import is_tangent_free


@pytest.mark.parametrize("q", [2, 3, 4, 5, 7, 9])
def test_incidence_weights(q):
    code = incidence_code(q)
    assert (code.A.sum(axis=0) == q + 1).all()
    assert (code.A.sum(axis=1) == q + 1).all()


def test_trivial_signing_q5():
    code = incidence_code(5)
    v = trivial_signing(5)
    assert code.is_dual_codeword(v)
    assert len(code.support(v)) == 10
    assert code.support_tangency(v)


def test_zero_vector_is_codeword():
    code = incidence_code(5)
    assert code.is_dual_codeword(np.zeros(31, dtype=int))


def test_hyperoval_q4_weight6():
    code = incidence_code(4)
    h = hyperoval(4)
    v = np.zeros(21, dtype=int)
    v[list(h.members)] = 1
    assert code.is_dual_codeword(v)
    assert len(code.support(v)) == 6 == 4 + 2


def test_not_codeword_guard():
    code = incidence_code(5)
    v = np.zeros(31, dtype=int)
    v[3] = 1
    assert not code.is_dual_codeword(v)
    with pytest.raises(NotCodeword):
        code.support_tangency(v)


@pytest.mark.parametrize("q", [2, 3, 4, 5, 7, 8, 9])
def test_nullspace_sampling_supports_tangent_free(q):
    code = incidence_code(q)
    rng = random.Random(q)
    for v in code.random_dual_codewords(100, rng):
        assert code.is_dual_codeword(v)
        if v.any():
            assert code.support_tangency(v)


def test_dual_codeword_on_support_trivial():
    code = incidence_code(5)
    v, exact = code.dual_codeword_on_support(trivial(5).members)
    assert exact and v is not None
    assert len(code.support(v)) == 10


def test_dual_codeword_on_support_frobenius_completion():
    code = incidence_code(9)
    s, _ = frobenius_graph(9)
    v, exact = code.dual_codeword_on_support(s.members)
    assert exact and v is not None
    assert code.support(v) == frozenset(s.members)


def test_dual_codeword_negative_controls():
    code = incidence_code(5)
    pl = plane_for_order(5)
    # a full line: its own sum is q+1 = 1 mod p, so only the zero vector fits
    v, exact = code.dual_codeword_on_support(pl.points_on_line[0])
    assert v is None and exact
    # a tangent-free set that is NOT a codeword support
    s = interior_points(canonical_conic(pl))
    assert is_tangent_free(s)
    v2, exact2 = code.dual_codeword_on_support(s.members)
    assert v2 is None and exact2


def test_min_weight_q5_via_u5():
    """Supports are tangent-free, u_5 = 10, and weight 10 is achieved: the
    dual code of the plane of order 5 has minimum weight exactly 2p = 10."""
    from pg2q.search import min_tangent_free

    code = incidence_code(5)
    assert min_tangent_free(5, 12, workers=1).u == 10
    assert code.is_dual_codeword(trivial_signing(5))
    # no codeword of weight 1..9 can exist: its support would be a smaller
    # non-empty tangent-free set


def test_peel_single_point():
    assert peel_decode(5, [7]) == frozenset()


def test_peel_tangent_free_is_fixpoint():
    s = interior_points(canonical_conic(plane_for_order(5)))
    assert peel_decode(5, s.members) == frozenset(s.members)


def test_peel_extra_point_removed():
    s = interior_points(canonical_conic(plane_for_order(5)))
    extra = next(p for p in range(31) if p not in s.members)
    assert peel_decode(5, set(s.members) | {extra}) == frozenset(s.members)


def test_peel_confluence_and_oracle():
    rng = random.Random(123)
    for q in (3, 4, 5):
        pl = plane_for_order(q)
        for _ in range(30):
            erased = rng.sample(range(pl.n), rng.randrange(1, pl.n))
            base = peel_decode(q, erased)
            oracle = batch_peel_fixpoint(q, erased)
            assert base == oracle
            for _ in range(10):
                assert peel_decode(q, erased, rng=random.Random(rng.random())) == base


def test_peel_residual_is_maximal_stopping_subset():
    """The residual contains every tangent-free subset of the erasures."""
    rng = random.Random(5)
    pl = plane_for_order(3)
    for _ in range(200):
        erased = set(rng.sample(range(13), rng.randrange(6, 13)))
        residual = peel_decode(3, erased)
        if residual:
            assert is_tangent_free(PointSet(pl, residual))
        for sub in combinations(sorted(erased), 6):
            if is_tangent_free(PointSet(pl, sub)):
                assert set(sub) <= residual


def test_stopping_equivalence():
    assert stopping_equivalence_check(3).ok  # exhaustive over 6-subsets
    assert stopping_equivalence_check(4, samples=150).ok
    assert stopping_equivalence_check(5, samples=150).ok


def test_stopping_classified_sets_are_fixpoints():
    s1 = trivial(5)
    s2 = interior_points(canonical_conic(plane_for_order(5)))
    assert peel_decode(5, s1.members) == frozenset(s1.members)
    assert peel_decode(5, s2.members) == frozenset(s2.members)
    h = hyperoval(4)
    assert peel_decode(4, h.members) == frozenset(h.members)


def test_nullspace_dimension_q5():
    # rank of the odd-order plane incidence matrix is (p(p+1)/2)^h + 1
    assert len(incidence_code(5).nullspace_basis()) == 31 - 16
    assert len(incidence_code(9).nullspace_basis()) == 91 - 37
