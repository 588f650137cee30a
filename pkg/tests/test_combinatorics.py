from __future__ import annotations

import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from flagrep.combinatorics import (
    binom,
    binom_tuple,
    classic_macaulay_rep,
    colex_initial_segment,
    colex_less,
    colex_rank,
    colex_unrank,
    covers,
    is_permuted_refinement,
    kappa,
    leq,
    lt,
)
from flagrep.errors import CapacityError, DimensionError, DomainError


def test_binom_tuple_examples():
    """Componentwise products with the zero convention for negative or oversized bottoms."""
    assert binom_tuple((3, 2), (1, 1)) == 6
    assert binom_tuple((1, 3), (1, -1)) == 0
    assert binom_tuple((4, 3), (2, 2)) == 18
    assert binom(2, 3) == 0


def test_binom_tuple_length_mismatch():
    """Tuples of different lengths are rejected."""
    with pytest.raises(DimensionError):
        binom_tuple((1, 2), (1,))


def test_order_relations():
    """Componentwise order, strict order and covers."""
    assert leq((1, 0), (1, 1)) and lt((1, 0), (1, 1)) and covers((1, 0), (1, 1))
    assert not lt((1, 1), (1, 1))
    assert not covers((0, 0), (1, 1))


def test_colex_initial_segments():
    """First subsets in colex order."""
    assert colex_initial_segment(5, 3, 6) == [(1, 2, 3), (1, 2, 4), (1, 3, 4), (2, 3, 4), (1, 2, 5), (1, 3, 5)]
    assert colex_initial_segment(7, 2, 0) == []
    assert colex_initial_segment(4, 1, 3) == [(1,), (2,), (3,)]
    with pytest.raises(CapacityError):
        colex_initial_segment(3, 2, 4)


@given(st.integers(min_value=0, max_value=3000), st.integers(min_value=1, max_value=5))
@settings(max_examples=200, deadline=None)
def test_colex_rank_roundtrip(rank, k):
    """Unranking then ranking is the identity."""
    assert colex_rank(colex_unrank(rank, k)) == rank


def test_colex_order_matches_rank():
    """Sorting all 3-subsets of [6] by rank agrees with the symmetric-difference comparison."""
    subsets = list(itertools.combinations(range(1, 7), 3))
    ordered = sorted(subsets, key=colex_rank)
    assert all(colex_less(x, y) for x, y in zip(ordered, ordered[1:]))


def test_classic_macaulay_examples():
    """Greedy binomial expansions."""
    assert classic_macaulay_rep(6, 3).terms == ((4, 3), (2, 2), (1, 1))
    assert classic_macaulay_rep(1, 4).terms == ((4, 4),)
    assert classic_macaulay_rep(10, 3).terms == ((5, 3),)


@given(st.integers(min_value=1, max_value=100_000), st.integers(min_value=1, max_value=8))
@settings(max_examples=300, deadline=None)
def test_classic_macaulay_roundtrip(N, k):
    """The expansion evaluates back to N with strictly decreasing tops and N_j >= j."""
    rep = classic_macaulay_rep(N, k)
    assert rep.value() == N
    tops = [top for top, _ in rep.terms]
    assert all(x > y for x, y in zip(tops, tops[1:]))
    assert all(top >= level >= 1 for top, level in rep.terms)


def _all_expansions(N, k, floor):
    if N == 0:
        yield ()
        return
    if k == 0:
        return
    for top in range(k, N + k + 1):
        if top >= floor:
            break
        value = binom(top, k)
        if value > N:
            break
        for rest in _all_expansions(N - value, k - 1, top):
            yield ((top, k),) + rest


def test_classic_macaulay_uniqueness():
    """Every strictly decreasing expansion equals the greedy one."""
    for k in range(1, 5):
        for N in range(1, 201):
            expansions = [e for e in _all_expansions(N, k, 10**9) if all(t >= lvl for t, lvl in e)]
            assert expansions == [classic_macaulay_rep(N, k).terms]


def test_permuted_refinement_examples():
    """Block refinements after permutation."""
    assert is_permuted_refinement((2, 1), (3,))
    assert not is_permuted_refinement((2, 2), (3, 1))
    assert is_permuted_refinement((1, 1, 1), (1, 2))


def test_kappa_examples():
    """Part sizes win over the fallback when the part is non-empty."""
    assert kappa(({"a"}, set()), (1, 3)) == (1, 3)
    assert kappa(({"a", "b"}, {"c"}), (9, 9)) == (2, 1)
    with pytest.raises(DomainError):
        kappa((set(),), (0,))
