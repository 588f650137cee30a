"""Integer-tuple arithmetic, binomials, colex machinery and classic Macaulay expansions."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

from .errors import CapacityError, DimensionError, DomainError

IntTuple = tuple[int, ...]


def binom(top: int, bottom: int) -> int:
    """Binomial coefficient that is zero whenever ``bottom < 0`` or ``bottom > top``."""
    if bottom < 0 or top < 0 or bottom > top:
        return 0
    return math.comb(top, bottom)


def _check_same_length(x: Sequence[int], y: Sequence[int]) -> None:
    if len(x) != len(y):
        raise DimensionError(f"length mismatch: {len(x)} vs {len(y)}")


def binom_tuple(x: Sequence[int], y: Sequence[int]) -> int:
    """Product of componentwise binomial coefficients."""
    _check_same_length(x, y)
    result = 1
    for top, bottom in zip(x, y):
        result *= binom(top, bottom)
        if result == 0:
            return 0
    return result


def add(x: Sequence[int], y: Sequence[int]) -> IntTuple:
    _check_same_length(x, y)
    return tuple(p + q for p, q in zip(x, y))


def sub(x: Sequence[int], y: Sequence[int]) -> IntTuple:
    _check_same_length(x, y)
    return tuple(p - q for p, q in zip(x, y))


def unit(color: int, n: int) -> IntTuple:
    """The tuple with a single 1 at the 1-based position ``color``."""
    if not 1 <= color <= n:
        raise DomainError(f"color {color} outside [1, {n}]")
    return tuple(1 if i == color - 1 else 0 for i in range(n))


def bump(x: Sequence[int], color: int, amount: int = 1) -> IntTuple:
    """Add ``amount`` to the 1-based coordinate ``color`` of ``x``."""
    out = list(x)
    out[color - 1] += amount
    return tuple(out)


def leq(x: Sequence[int], y: Sequence[int]) -> bool:
    """Componentwise order."""
    _check_same_length(x, y)
    return all(p <= q for p, q in zip(x, y))


def lt(x: Sequence[int], y: Sequence[int]) -> bool:
    """Strict poset order: componentwise ``<=`` and not equal."""
    return leq(x, y) and tuple(x) != tuple(y)


def covers(x: Sequence[int], y: Sequence[int]) -> bool:
    """True iff ``x`` is covered by ``y``: ``x < y`` and ``|y| = |x| + 1``."""
    return lt(x, y) and sum(y) == sum(x) + 1


def box(a: Sequence[int]) -> list[IntTuple]:
    """All tuples ``0 <= b <= a`` in lexicographic order."""
    return [tuple(b) for b in itertools.product(*(range(v + 1) for v in a))]


def colex_key(subset: Iterable[int]) -> IntTuple:
    """Sort key realizing colex order on equal-size sets."""
    return tuple(sorted(subset, reverse=True))


def colex_less(first: Iterable[int], second: Iterable[int]) -> bool:
    """Colex comparison: the larger set holds the maximum of the symmetric difference."""
    a, b = set(first), set(second)
    diff = a ^ b
    if not diff:
        return False
    return max(diff) in b


def colex_rank(subset: Iterable[int]) -> int:
    """0-based colex rank of a set of positive integers among sets of the same size."""
    elements = sorted(subset)
    return sum(binom(value - 1, index + 1) for index, value in enumerate(elements))


def colex_unrank(rank: int, k: int) -> IntTuple:
    """Inverse of :func:`colex_rank` for ``k``-subsets of positive integers."""
    if rank < 0 or k < 0:
        raise DomainError("rank and size must be non-negative")
    out = []
    for size in range(k, 0, -1):
        value = size
        while binom(value, size) <= rank:
            value += 1
        rank -= binom(value - 1, size)
        out.append(value)
    return tuple(sorted(out))


def colex_initial_segment(universe_size: int, k: int, count: int) -> list[IntTuple]:
    """The first ``count`` ``k``-subsets of ``[universe_size]`` in colex order."""
    if universe_size < 0 or k < 0 or count < 0:
        raise DomainError("arguments must be non-negative")
    capacity = binom(universe_size, k)
    if count > capacity:
        raise CapacityError(f"only {capacity} {k}-subsets of [{universe_size}] exist, {count} requested")
    return [colex_unrank(rank, k) for rank in range(count)]


@dataclass(frozen=True)
class ClassicMacaulayRep:
    """Terms ``(N_i, i)`` of the unique greedy binomial expansion, highest level first."""

    terms: tuple[tuple[int, int], ...]

    def value(self) -> int:
        return sum(binom(top, level) for top, level in self.terms)

    def shadow(self) -> int:
        """The Kruskal-Katona lower shadow size ``sum C(N_i, i - 1)``."""
        return sum(binom(top, level - 1) for top, level in self.terms)


@lru_cache(maxsize=None)
def classic_macaulay_rep(N: int, k: int) -> ClassicMacaulayRep:
    """The ``k``-th Macaulay representation of ``N`` by the greedy algorithm."""
    if N < 1 or k < 1:
        raise DomainError("N and k must be positive")
    terms = []
    remaining = N
    level = k
    while remaining > 0:
        top = level
        while binom(top + 1, level) <= remaining:
            top += 1
        terms.append((top, level))
        remaining -= binom(top, level)
        level -= 1
    return ClassicMacaulayRep(tuple(terms))


def is_permuted_refinement(a: Sequence[int], b: Sequence[int]) -> bool:
    """True iff some permutation of ``a`` splits into consecutive blocks summing to ``b``."""
    if any(v < 0 for v in a) or any(v < 0 for v in b):
        raise DomainError("entries must be non-negative")
    if sum(a) != sum(b) or len(a) < len(b):
        return False

    def assign(remaining: tuple[int, ...], targets: tuple[int, ...]) -> bool:
        if not targets:
            return not remaining
        target, rest = targets[0], targets[1:]
        # choose a non-empty sub-multiset of remaining summing to target
        for size in range(1, len(remaining) + 1):
            seen = set()
            for picked in itertools.combinations(range(len(remaining)), size):
                values = tuple(sorted(remaining[i] for i in picked))
                if values in seen or sum(values) != target:
                    continue
                seen.add(values)
                left = tuple(remaining[i] for i in range(len(remaining)) if i not in picked)
                if assign(left, rest):
                    return True
        return False

    return assign(tuple(a), tuple(b))


def kappa(parts: Sequence[Iterable[object]], x: Sequence[int]) -> IntTuple:
    """Entry ``i`` is ``|parts[i]|`` when that part is nonempty, otherwise ``x[i]``."""
    _check_same_length(list(parts), x)
    if any(v <= 0 for v in x):
        raise DomainError("kappa needs a strictly positive tuple")
    out = []
    for part, fallback in zip(parts, x):
        size = len(list(part))
        out.append(size if size else fallback)
    return tuple(out)


def compositions(total: int, parts: int, caps: Sequence[int | None] | None = None) -> Iterator[IntTuple]:
    """Exponent vectors of length ``parts`` summing to ``total`` with optional per-entry caps."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    cap = None if caps is None else caps[0]
    upper = total if cap is None else min(total, cap)
    rest_caps = None if caps is None else caps[1:]
    for first in range(upper + 1):
        for tail in compositions(total - first, parts - 1, rest_caps):
            yield (first,) + tail
