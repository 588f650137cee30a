"""Finite colored multicomplexes with per-variable caps and the color compression operators."""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from functools import lru_cache
from typing import Any, Iterable, Sequence

from .combinatorics import IntTuple, compositions
from .errors import DomainError, ParseError, PreconditionError

Cap = int | None  # None means unbounded


@dataclass(frozen=True)
class ColoredMulticomplex:
    """A divisor-closed set of exponent vectors over variables grouped by color.

    Exponent vectors are flat: the variables of color 1 come first, then color 2, and so on.
    """

    vars_per_color: IntTuple
    caps: tuple[tuple[Cap, ...], ...]
    monomials: frozenset

    @property
    def n(self) -> int:
        return len(self.vars_per_color)

    def color_slice(self, color: int) -> slice:
        start = sum(self.vars_per_color[: color - 1])
        return slice(start, start + self.vars_per_color[color - 1])

    def degree(self, monomial: Sequence[int]) -> IntTuple:
        """Total degree within each color."""
        return tuple(sum(monomial[self.color_slice(c)]) for c in range(1, self.n + 1))

    def fine_f_vector(self) -> dict[IntTuple, int]:
        counts: dict[IntTuple, int] = defaultdict(int)
        for m in self.monomials:
            counts[self.degree(m)] += 1
        return dict(sorted(counts.items()))

    def maximal_monomials(self) -> list[IntTuple]:
        members = self.monomials
        out = []
        for m in members:
            if not any(_bump(m, i) in members for i in range(len(m))):
                out.append(m)
        return sorted(out)

    def is_divisor_closed(self) -> bool:
        members = self.monomials
        zero = tuple(0 for _ in range(sum(self.vars_per_color)))
        if zero not in members:
            return False
        for m in members:
            for i, e in enumerate(m):
                if e and _bump(m, i, -1) not in members:
                    return False
        return True


def _bump(m: Sequence[int], index: int, amount: int = 1) -> IntTuple:
    out = list(m)
    out[index] += amount
    return tuple(out)


def _divisors(m: Sequence[int]) -> Iterable[IntTuple]:
    ranges = [range(e + 1) for e in m]
    from itertools import product

    return (tuple(d) for d in product(*ranges))


def from_monomials(vars_per_color: Sequence[int], caps: Sequence[Sequence[Cap] | None] | None, monomials: Iterable[Sequence[int]]) -> ColoredMulticomplex:
    """Divisor closure of ``monomials``; ``caps[i]`` may be ``None`` for an unbounded color."""
    vars_per_color = tuple(int(v) for v in vars_per_color)
    if any(v < 1 for v in vars_per_color):
        raise DomainError("every color needs at least one variable")
    if caps is None:
        caps = [None] * len(vars_per_color)
    if len(caps) != len(vars_per_color):
        raise DomainError("caps must list one entry per color")
    norm_caps = []
    for count, color_caps in zip(vars_per_color, caps):
        if color_caps is None:
            norm_caps.append(tuple(None for _ in range(count)))
        else:
            if len(color_caps) != count:
                raise DomainError("caps must list one entry per variable")
            norm_caps.append(tuple(None if c is None else int(c) for c in color_caps))
    flat_caps = [c for color_caps in norm_caps for c in color_caps]
    width = sum(vars_per_color)
    closure: set[IntTuple] = {tuple(0 for _ in range(width))}
    for m in monomials:
        m = tuple(int(e) for e in m)
        if len(m) != width:
            raise DomainError(f"monomial {m} must have {width} exponents")
        for e, cap in zip(m, flat_caps):
            if e < 0 or (cap is not None and e > cap):
                raise DomainError(f"monomial {m} violates its caps")
        closure.update(_divisors(m))
    return ColoredMulticomplex(vars_per_color, tuple(norm_caps), frozenset(closure))


def _lex_key(part: Sequence[int]) -> IntTuple:
    """Lex order: compare the exponent of the largest variable first."""
    return tuple(reversed(part))


@lru_cache(maxsize=None)
def lex_monomials(count: int, caps: tuple[Cap, ...], degree: int) -> tuple[IntTuple, ...]:
    """All capped degree-``degree`` monomials in ``count`` variables, ascending in lex order."""
    return tuple(sorted(compositions(degree, count, caps), key=_lex_key))


@lru_cache(maxsize=None)
def _lex_rank_table(count: int, caps: tuple[Cap, ...], degree: int) -> dict[IntTuple, int]:
    return {m: i for i, m in enumerate(lex_monomials(count, caps, degree), start=1)}


def _check_monotone(caps: Sequence[Cap]) -> None:
    as_numbers = [float("inf") if c is None else c for c in caps]
    if any(x < y for x, y in zip(as_numbers, as_numbers[1:])):
        raise PreconditionError(f"caps {list(caps)} must be non-increasing along the variable order")


def compress_t(M: ColoredMulticomplex, t: int) -> ColoredMulticomplex:
    """Replace every fiber's degree-``d`` color-``t`` parts by the lex initial segment of equal size."""
    if not 1 <= t <= M.n:
        raise DomainError(f"color {t} outside [1, {M.n}]")
    caps = M.caps[t - 1]
    _check_monotone(caps)
    window = M.color_slice(t)
    count = M.vars_per_color[t - 1]
    fibers: dict[tuple[IntTuple, int], int] = defaultdict(int)
    for m in M.monomials:
        part = m[window]
        rest = m[: window.start] + m[window.stop :]
        fibers[(rest, sum(part))] += 1
    out = set()
    for (rest, degree), size in fibers.items():
        segment = lex_monomials(count, caps, degree)[:size]
        for part in segment:
            out.add(rest[: window.start] + part + rest[window.start :])
    return ColoredMulticomplex(M.vars_per_color, M.caps, frozenset(out))


def score(M: ColoredMulticomplex) -> int:
    """Sum over monomials and colors of the 1-based lex rank of the color part within its degree."""
    total = 0
    for m in M.monomials:
        for color in range(1, M.n + 1):
            part = m[M.color_slice(color)]
            table = _lex_rank_table(M.vars_per_color[color - 1], M.caps[color - 1], sum(part))
            total += table[part]
    return total


def color_compress_fixpoint(M: ColoredMulticomplex) -> tuple[ColoredMulticomplex, list[int]]:
    """Apply compressions in ascending color order, restarting after every change."""
    sequence: list[int] = []
    current = M
    changed = True
    while changed:
        changed = False
        for t in range(1, current.n + 1):
            candidate = compress_t(current, t)
            if candidate != current:
                current = candidate
                sequence.append(t)
                changed = True
                break
    return current, sequence


def is_color_compressed_mc(M: ColoredMulticomplex) -> bool:
    return all(compress_t(M, t) == M for t in range(1, M.n + 1))


def all_color_compressions(M: ColoredMulticomplex) -> set[ColoredMulticomplex]:
    """Every color-compressed multicomplex reachable by some sequence of compressions."""
    seen = {M}
    frontier = [M]
    results = set()
    while frontier:
        current = frontier.pop()
        moved = False
        for t in range(1, current.n + 1):
            nxt = compress_t(current, t)
            if nxt != current:
                moved = True
                if nxt not in seen:
                    seen.add(nxt)
                    frontier.append(nxt)
        if not moved:
            results.add(current)
    return results


def multicomplex_to_json(M: ColoredMulticomplex) -> dict:
    caps: list[Any] = []
    for color_caps in M.caps:
        caps.append(None if all(c is None for c in color_caps) else list(color_caps))
    return {
        "n": M.n,
        "vars": list(M.vars_per_color),
        "caps": caps,
        "monomials": [list(m) for m in M.maximal_monomials()],
    }


def multicomplex_from_json(data: Any) -> ColoredMulticomplex:
    try:
        vars_per_color = [int(v) for v in data["vars"]]
        caps = data.get("caps")
        monomials = [[int(e) for e in m] for m in data["monomials"]]
        n = int(data.get("n", len(vars_per_color)))
    except (KeyError, TypeError, ValueError, AttributeError) as exc:
        raise ParseError(f"multicomplex JSON needs 'vars', 'caps' and 'monomials': {exc}") from exc
    if n != len(vars_per_color):
        raise ParseError(f"'n' is {n} but 'vars' lists {len(vars_per_color)} colors")
    return from_monomials(vars_per_color, caps, monomials)
