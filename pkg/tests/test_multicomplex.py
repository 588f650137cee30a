from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from flagrep.errors import DomainError, PreconditionError
from flagrep.multicomplex import (
    all_color_compressions,
    color_compress_fixpoint,
    compress_t,
    from_monomials,
    is_color_compressed_mc,
    multicomplex_from_json,
    multicomplex_to_json,
    score,
)


def mono(x: int, y: int) -> tuple[int, ...]:
    """Exponent vector of x_x * y_y over three x and three y variables."""
    out = [0] * 6
    out[x - 1] = 1
    out[2 + y] = 1
    return tuple(out)


def as_pairs(monomials) -> set[tuple[int, int]]:
    return {(m[:3].index(1) + 1, m[3:].index(1) + 1) for m in monomials}


@pytest.fixture
def example():
    pairs = [(1, 1), (1, 2), (1, 3), (2, 1), (2, 2), (3, 1), (3, 3)]
    return from_monomials((3, 3), [[1, 1, 1], [1, 1, 1]], [mono(x, y) for x, y in pairs])


def test_compress_first_color(example):
    """Compressing color 1 replaces each fiber by a lex initial segment."""
    top = as_pairs(compress_t(example, 1).maximal_monomials())
    assert top == {(1, 1), (2, 1), (3, 1), (1, 2), (2, 2), (1, 3), (2, 3)}


def test_compress_second_color(example):
    """Compressing color 2 acts on the y-fibers."""
    top = as_pairs(compress_t(example, 2).maximal_monomials())
    assert top == {(1, 1), (1, 2), (1, 3), (2, 1), (2, 2), (3, 1), (3, 2)}


def test_fixpoint_sequence(example):
    """One compression of color 1 already reaches a fixpoint."""
    result, sequence = color_compress_fixpoint(example)
    assert sequence == [1]
    assert is_color_compressed_mc(result)
    assert score(result) < score(example)


def test_fine_f_preserved(example):
    """Compression keeps the per-degree counts."""
    for t in (1, 2):
        assert compress_t(example, t).fine_f_vector() == example.fine_f_vector()


def test_reachable_fixpoints(example):
    """Every reachable fixpoint is color-compressed."""
    assert all(is_color_compressed_mc(M) for M in all_color_compressions(example))


def test_caps_validation():
    """Exponents above a cap and increasing caps are rejected."""
    with pytest.raises(DomainError):
        from_monomials((1,), [[1]], [(2,)])
    M = from_monomials((2,), [[1, 2]], [(1, 2)])
    with pytest.raises(PreconditionError):
        compress_t(M, 1)


def test_json_roundtrip(example):
    """Serialization preserves the multicomplex."""
    assert multicomplex_from_json(multicomplex_to_json(example)) == example


@st.composite
def multicomplexes(draw):
    n = draw(st.integers(min_value=1, max_value=3))
    counts = [draw(st.integers(min_value=1, max_value=3)) for _ in range(n)]
    caps = [[draw(st.integers(min_value=1, max_value=2))] * k for k in counts]
    width = sum(counts)
    flat = [c for group in caps for c in group]
    gens = draw(st.lists(st.tuples(*(st.integers(min_value=0, max_value=c) for c in flat)), min_size=1, max_size=4))
    assert len(gens[0]) == width
    return from_monomials(counts, caps, gens)


@given(multicomplexes(), st.data())
@settings(max_examples=150, deadline=None)
def test_compression_invariants(M, data):
    """Each operator keeps divisor closure and the fine f-vector and never raises the score."""
    t = data.draw(st.integers(min_value=1, max_value=M.n))
    result = compress_t(M, t)
    assert result.is_divisor_closed()
    assert result.fine_f_vector() == M.fine_f_vector()
    assert score(result) <= score(M)
    assert compress_t(result, t) == result
