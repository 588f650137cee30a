from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from flagrep.characterization import enumerate_reps
from flagrep.combinatorics import box
from flagrep.complex import fine_f_vector
from flagrep.errors import DomainError, MalformedTreeError, ParseError, PreconditionError
from flagrep.macaulay_tree import (
    GeneralizedRep,
    condensation,
    derived_labels,
    is_compatible,
    is_compressed_like,
    is_condensed,
    is_generalized_rep,
    partial_diff,
    preceq,
    preceq_by_realization,
    realize,
    signature,
    tree_from_json,
    tree_from_text,
    tree_to_dot,
    tree_to_json,
    tree_to_text,
    twin,
    validate,
    wedge,
    zeta,
    zeta_recursive,
)
from flagrep.structure import is_color_compressed, is_color_shifted

T = tree_from_text
TWO_LEAF = "[2 (4,3) (3,3)]"
THREE_LEAF = "[2 (4,3) [1 (2,3) (2,3)]]"
WEDGE_TEXT = "[3 [2 [2 (5,2,2) (4,2,2)] (3,3,2)] [2 (4,3,1) (3,3,1)]]"

SMALL_REPS = [t for a in [(1, 1), (2, 1), (1, 2), (1, 1, 1)] for N in range(1, 6) for t in enumerate_reps(a, N)]


def test_one_color_tree_valid(one_color_tree):
    """The one-color tree of 6 is valid with the expected splitting labels and weight."""
    report = validate(one_color_tree)
    assert report.valid and report.N == 6
    labels = derived_labels(one_color_tree)
    terminals = one_color_tree.arena.terminals
    assert [labels.nu[u] for u in terminals] == [(3,), (2,), (1,)]
    assert labels.weight == (5,)


def test_distinct_trees_same_complex():
    """Two distinct (2,2)-trees of 27 realize the same complex."""
    first, second = T((2, 2), TWO_LEAF), T((2, 2), THREE_LEAF)
    assert validate(first).valid and validate(second).valid
    assert first.N == second.N == 27
    assert first != second
    assert realize(first) == realize(second)
    assert len(realize(first).facets) == 27


def test_improper_weight_invalid():
    """Relabeling the top leaf of the one-color tree to 2 breaks properness."""
    report = validate(T((3,), "[1 (2) [1 (2) (1)]]"))
    assert not report.valid
    assert "d" in {code for code, _ in report.failures}


def test_single_terminal_labels():
    """A one-leaf tree has splitting label a everywhere and weight equal to its leaf."""
    M = T((2, 1), "(3,2)")
    labels = derived_labels(M)
    assert set(labels.nu.values()) == {(2, 1)}
    assert labels.weight == (3, 2)
    assert len(realize(M).facets) == 3 * 2


def test_running_example_labels(sigma):
    """The tree induced by the running example has leaves nu (1,1),(1,0),(1,0) and weight (3,4)."""
    M = T((1, 1), "[2 [2 (3,2) (1,2)] (1,3)]")
    labels = derived_labels(M)
    assert [labels.nu[u] for u in M.arena.terminals] == [(1, 1), (1, 0), (1, 0)]
    assert labels.weight == (3, 4)
    assert partial_diff(M, (0, -1)) == 3
    assert realize(M) == sigma


def test_one_color_signatures(one_color_tree):
    """Signature sets at the middle leaf of the one-color tree."""
    middle = one_color_tree.arena.terminals[1]
    sig = signature(one_color_tree, middle, 1)
    assert (sig.psi, sig.psi_hat, sig.xi_hat, sig.xi) == ((5,), (2,), (1,), (1, 2, 5))
    top = one_color_tree.arena.terminals[0]
    assert signature(one_color_tree, top, 1).psi == ()


def test_alpha_prime_signature(alpha_prime_tree):
    """The last leaf of the left tree of the wedge example has psi (4)."""
    assert signature(alpha_prime_tree, alpha_prime_tree.arena.terminals[-1], 2).psi == (4,)


def test_zeta_examples(one_color_tree):
    """One ascent from the last leaf reaches the middle leaf; a leaf without a right-branching ancestor is rejected."""
    terminals = one_color_tree.arena.terminals
    assert zeta(one_color_tree, 1, 0, terminals[-1]) == terminals[1]
    with pytest.raises(PreconditionError):
        zeta(one_color_tree, 1, 0, terminals[0])


def test_zeta_three_leaf():
    """In the three-leaf (2,2)-tree the last leaf maps to the first leaf for color 2."""
    M = T((2, 2), THREE_LEAF)
    terminals = M.arena.terminals
    assert zeta(M, 2, 0, terminals[-1]) == terminals[0]


def test_compressed_like_examples(one_color_tree, unshifted_tree, unit_reps_of_five):
    """The non-shifted example fails; one-color and the 24 listed trees pass."""
    assert not is_compressed_like(unshifted_tree)
    assert is_compressed_like(one_color_tree) and is_compatible(one_color_tree)
    assert all(is_compressed_like(t) and is_compatible(t) for t in unit_reps_of_five)


def test_unshifted_realization(unshifted_tree):
    """The non-shifted example realizes six edges and misses {(2,1),(2,2)}."""
    C = realize(unshifted_tree)
    assert len(C.facets) == 6
    assert frozenset({(2, 1), (2, 2)}) not in C.faces
    assert not is_color_shifted(C)


def test_condensation_examples():
    """The three-leaf tree condenses to the two-leaf tree; condensed trees are fixed."""
    three = T((2, 2), THREE_LEAF)
    two = T((2, 2), TWO_LEAF)
    assert not is_condensed(three)
    assert condensation(three) == two
    assert condensation(three).N == 27
    assert condensation(two) == two


def test_condensation_chooser_irrelevant():
    """Every cloning-vertex order yields the same condensation."""
    M = T((2, 2), "[2 [2 [1 (4,3) (4,3)] (3,3)] [1 (2,3) (2,3)]]")
    expected = condensation(M)
    assert condensation(M, chooser="last") == expected
    for seed in range(5):
        assert condensation(M, chooser="random", rng=random.Random(seed)) == expected


def test_alpha_condensed(alpha_tree):
    """Children with distinct labels are not cloning vertices."""
    assert condensation(alpha_tree) == alpha_tree


def test_twin_examples(alpha_tree):
    """The (1,1)-twin has leaves (4,3),(3,3) and represents 15."""
    result = twin(alpha_tree, (1, 1))
    assert tree_to_text(result) == "[2 (4,3) (3,3)]"
    assert result.N == 15 == partial_diff(alpha_tree, (-1, -1))
    assert twin(alpha_tree, (2, 2)) == alpha_tree
    with pytest.raises(DomainError):
        twin(alpha_tree, (0, 0))


def test_wedge_example(alpha_prime_tree, alpha_tree):
    """The wedge is the expected (1,1,2)-tree and is a generalized representation."""
    result = wedge(alpha_tree, alpha_prime_tree)
    assert result.a == (1, 1, 2)
    assert tree_to_text(result) == WEDGE_TEXT
    assert is_compressed_like(result) and is_compatible(result)
    assert is_color_compressed(realize(result))


def test_wedge_self(unit_reps_of_five):
    """Wedging a representation with itself gives a compatible tree."""
    for alpha in unit_reps_of_five:
        glued = wedge(alpha, alpha)
        assert validate(glued).valid and is_compatible(glued)


def test_preceq_one_color():
    """For one color the order is the classic boundary bound."""
    six = enumerate_reps((3,), 6)[0]
    assert partial_diff(six, (-1,)) == 9
    assert preceq(six, enumerate_reps((2,), 9)[0])
    assert not preceq(six, enumerate_reps((2,), 8)[0])
    glued = wedge(six, enumerate_reps((2,), 8)[0])
    assert validate(glued).valid and not is_compatible(glued)


def test_preceq_examples(alpha_prime_tree, alpha_tree):
    """The trivial representation is below everything; the wedge example is ordered."""
    assert preceq(GeneralizedRep((1, 1)), alpha_prime_tree)
    assert not preceq(alpha_prime_tree, GeneralizedRep((1, 1)))
    assert preceq(alpha_tree, alpha_prime_tree) and preceq_by_realization(alpha_tree, alpha_prime_tree)


def test_partial_diff_examples(one_color_tree):
    """Boundary counts of the one-color tree of 6."""
    assert partial_diff(one_color_tree, (-1,)) == 9
    assert partial_diff(one_color_tree, (-2,)) == 5
    assert partial_diff(one_color_tree, (-3,)) == 1


@given(st.sampled_from(SMALL_REPS))
@settings(max_examples=80, deadline=None)
def test_partial_diff_matches_realization(M):
    """Each boundary count equals the matching fine f-vector entry of the realization."""
    F = fine_f_vector(realize(M))
    for b in box(M.a):
        assert partial_diff(M, tuple(x - y for x, y in zip(b, M.a))) == F[b]


@given(st.sampled_from(SMALL_REPS))
@settings(max_examples=80, deadline=None)
def test_alternative_methods_agree(M):
    """Local and path compressed-like checks agree, as do the two zeta evaluations."""
    assert bool(is_compressed_like(M, "local")) == bool(is_compressed_like(M, "path"))
    assert bool(is_compatible(M, "descent")) == bool(is_compatible(M, "recursive"))
    ar = M.arena
    for x in ar.terminals:
        for i in range(1, M.n + 1):
            if M.a[i - 1] - ar.nu[x][i - 1] > 0:
                for j in range(M.a[i - 1] - ar.nu[x][i - 1]):
                    assert zeta(M, i, j, x) == zeta_recursive(M, i, j, x)


@given(st.sampled_from(SMALL_REPS), st.sampled_from(SMALL_REPS))
@settings(max_examples=150, deadline=None)
def test_preceq_matches_realization(first, second):
    """The wedge test and realization containment define the same order."""
    if first.n != second.n or any(y > x for x, y in zip(first.a, second.a)):
        return
    assert preceq(first, second) == preceq_by_realization(first, second)


@given(st.sampled_from(SMALL_REPS))
@settings(max_examples=60, deadline=None)
def test_realization_compressed(M):
    """Generalized representations realize pure color-compressed complexes with N facets."""
    C = realize(M)
    assert is_generalized_rep(M)
    assert len(C.facets) == M.N and C.is_pure() and is_color_compressed(C)


@given(st.sampled_from(SMALL_REPS))
@settings(max_examples=60, deadline=None)
def test_serialization_roundtrip(M):
    """Text and JSON forms round-trip; DOT output mentions every leaf."""
    assert T(M.a, tree_to_text(M)) == M
    assert tree_from_json(tree_to_json(M)) == M
    dot = tree_to_dot(M)
    assert dot.startswith("digraph") and dot.count("xlabel") == len(M.arena.kind)


def test_trivial_json():
    """The trivial representation serializes to a tree-free object."""
    assert tree_from_json(tree_to_json(None, (1, 1))) is None


def test_parse_errors():
    """Malformed tree text is rejected."""
    with pytest.raises(ParseError):
        T((1, 1), "[2 (1,1)")
    with pytest.raises(MalformedTreeError):
        T((1, 1), "(1,1,1)")
