"""Enumeration of generalized Macaulay representations and the numerical feasibility checks."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from concurrent.futures import ProcessPoolExecutor
from functools import lru_cache
from typing import Iterator, Mapping, Optional, Sequence

from .combinatorics import IntTuple, binom, box, classic_macaulay_rep, leq
from .complex import FineVector
from .errors import DomainError, ResourceError
from .macaulay_tree import (
    MacaulayTree,
    Node,
    is_compatible,
    is_compressed_like,
    is_condensed,
    is_leaf,
    partial_diff,
    preceq,
    validate,
)

MAX_TYPE_SIZE = 8
MAX_N = 10_000


@lru_cache(maxsize=None)
def _omega(node: Node) -> IntTuple:
    if is_leaf(node):
        return node[1]
    base = list(_omega(node[2]))
    base[node[1] - 1] += 1
    return tuple(base)


def _first_leaf(node: Node) -> IntTuple:
    while not is_leaf(node):
        node = node[2]
    return node[1]


def _factorizations(ranks: Sequence[int], remaining: int) -> Iterator[IntTuple]:
    """Tuples ``phi`` with ``phi_i >= max(ranks_i, 1)`` and ``prod C(phi_i, ranks_i) == remaining``."""
    if not ranks:
        if remaining == 1:
            yield ()
        return
    take = ranks[0]
    top = max(take, 1)
    while True:
        value = binom(top, take)
        if value > remaining:
            return
        if remaining % value == 0:
            for tail in _factorizations(ranks[1:], remaining // value):
                yield (top,) + tail
        if take == 0:
            return
        top += 1


def _leaves(nu: IntTuple, N: int, pins: tuple[tuple[int, int], ...]) -> list[Node]:
    fixed = dict(pins)
    product = 1
    for color, value in fixed.items():
        product *= binom(value, nu[color - 1]) if value >= 1 else 0
    if product == 0 or N % product:
        return []
    free = [c for c in range(1, len(nu) + 1) if c not in fixed]
    if any(nu[c - 1] == 0 for c in free):
        return []
    out = []
    for values in _factorizations([nu[c - 1] for c in free], N // product):
        phi = dict(fixed)
        phi.update(zip(free, values))
        out.append(("L", tuple(phi[c] for c in range(1, len(nu) + 1))))
    return out


def _trivalents(nu: IntTuple, c: int, N: int, pins: tuple[tuple[int, int], ...], flagcolor: Optional[int]) -> list[Node]:
    n = len(nu)
    if nu[c - 1] < 1:
        return []
    lowered = tuple(v - (1 if i == c - 1 else 0) for i, v in enumerate(nu))
    if not any(lowered):
        return []
    flagged = flagcolor == c
    out = []
    for left_count in range(1, N):
        for left in _subtrees(nu, c, left_count, pins, c):
            w_left = _omega(left)
            extra = dict(pins)
            common = _first_leaf(left)
            for j in range(c + 1, n + 1):
                extra[j] = common[j - 1]
            if nu[c - 1] == 1:
                extra[c] = w_left[c - 1]
            chain_end = left
            while not is_leaf(chain_end) and chain_end[1] == c:
                chain_end = chain_end[3]
            w_end = _omega(chain_end)
            right_pins = tuple(sorted(extra.items()))
            for right in _subtrees(lowered, c, N - left_count, right_pins, c if flagged else None):
                w_right = _omega(right)
                if not leq(w_right, w_left):
                    continue
                if flagged and w_right[c - 1] != w_left[c - 1]:
                    continue
                if any(w_end[t] < w_right[t] for t in range(n) if t != c - 1):
                    continue
                if left == right and (is_leaf(left) or left[1] < c):
                    continue
                out.append(("Y", c, left, right))
    return out


@lru_cache(maxsize=None)
def _subtrees(nu: IntTuple, maxcolor: int, N: int, pins: tuple[tuple[int, int], ...], flagcolor: Optional[int]) -> tuple[Node, ...]:
    """Subtree bodies below a vertex with splitting label ``nu`` whose binomial sum is ``N``.

    ``pins`` fixes terminal coordinates forced by agreement and chain conditions; ``flagcolor``
    marks a color whose trivalent child must keep the left and right weights equal.
    """
    out = list(_leaves(nu, N, pins))
    for c in range(1, maxcolor + 1):
        out.extend(_trivalents(nu, c, N, pins, flagcolor))
    return tuple(out)


def _check_limits(a: IntTuple, N: int) -> None:
    if not a or any(v < 1 for v in a):
        raise DomainError(f"type {a} must be a tuple of positive integers")
    if N < 1:
        raise DomainError(f"N must be positive, got {N}")
    if sum(a) > MAX_TYPE_SIZE or N > MAX_N:
        raise ResourceError(f"enumeration limited to |a| <= {MAX_TYPE_SIZE} and N <= {MAX_N}")


def _classic_chain(a: IntTuple, N: int) -> MacaulayTree:
    terms = classic_macaulay_rep(N, a[0]).terms
    body: Node = ("L", (terms[-1][0],))
    for top, _ in reversed(terms[:-1]):
        body = ("Y", 1, ("L", (top,)), body)
    return MacaulayTree(a, body)


def _certified(a: IntTuple, bodies: Sequence[Node]) -> list[MacaulayTree]:
    out = []
    for body in bodies:
        tree = MacaulayTree(a, body)
        if validate(tree) and is_condensed(tree) and is_compressed_like(tree) and is_compatible(tree):
            out.append(tree)
    return out


def _enumerate_top(a: IntTuple, N: int, top: int) -> list[MacaulayTree]:
    """Representations whose first vertex is a terminal (``top = 0``) or a trivalent of color ``top``."""
    if top == 0:
        bodies = _leaves(a, N, ())
    else:
        bodies = _trivalents(a, top, N, (), None)
    return _certified(a, bodies)


def enumerate_reps(a: Sequence[int], N: int, jobs: int = 1, shortcut: bool = True) -> list[MacaulayTree]:
    """All condensed compressed-like compatible ``a``-Macaulay trees of ``N``, in canonical order.

    For a single color the classic greedy expansion gives the unique answer directly unless
    ``shortcut`` is off.
    """
    a = tuple(int(v) for v in a)
    _check_limits(a, N)
    if len(a) == 1 and shortcut:
        return [_classic_chain(a, N)]
    tops = range(len(a) + 1)
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = list(pool.map(_enumerate_top, itertools.repeat(a), itertools.repeat(N), tops))
    else:
        parts = [_enumerate_top(a, N, top) for top in tops]
    found = {tree for part in parts for tree in part}
    return sorted(found, key=lambda tree: repr(tree.root))


@lru_cache(maxsize=None)
def _cached_reps(a: IntTuple, N: int) -> tuple[MacaulayTree, ...]:
    return tuple(enumerate_reps(a, N))


def _as_values(a: IntTuple, f: FineVector | Mapping) -> dict[IntTuple, int]:
    if isinstance(f, FineVector):
        source = f.values
    else:
        source = f
    values = {}
    for key, value in source.items():
        key = tuple(int(v) for v in key)
        if len(key) != len(a):
            raise DomainError(f"index {key} does not match type {a}")
        values[key] = int(value)
    return values


def _support(a: IntTuple) -> tuple[int, ...]:
    return tuple(i for i, v in enumerate(a) if v > 0)


@lru_cache(maxsize=None)
def _box_set(a: IntTuple) -> frozenset:
    return frozenset(box(a))


def _restrict(a: IntTuple, values: dict[IntTuple, int]) -> tuple[IntTuple, dict[IntTuple, int], bool]:
    """Drop zero coordinates of the type; report whether any entry lives outside the box."""
    if all(a):
        inside = _box_set(a)
        return a, {k: v for k, v in values.items() if k in inside}, any(v for k, v in values.items() if k not in inside)
    keep = _support(a)
    outside = False
    restricted: dict[IntTuple, int] = {}
    for key, value in values.items():
        if any(key[i] != 0 for i in range(len(a)) if i not in keep) or not leq(tuple(max(v, 0) for v in key), a) or min(key) < 0:
            if value:
                outside = True
            continue
        restricted[tuple(key[i] for i in keep)] = value
    return tuple(a[i] for i in keep), restricted, outside


def lift(tree: MacaulayTree, support: Sequence[int], n: int, fill: Sequence[int]) -> MacaulayTree:
    """Embed a tree over the coordinates ``support`` into ``n`` colors, filling the rest from ``fill``."""
    support = tuple(support)
    color_map = {old: new + 1 for old, new in enumerate(support, start=1)}

    def convert(node: Node) -> Node:
        if is_leaf(node):
            phi = list(fill)
            for position, index in enumerate(support):
                phi[index] = node[1][position]
            return ("L", tuple(phi))
        return ("Y", color_map[node[1]], convert(node[2]), convert(node[3]))

    a = [0] * n
    for position, index in enumerate(support):
        a[index] = tree.a[position]
    return MacaulayTree(tuple(a), convert(tree.root))


def check_pure_balanced_fine_f(a: Sequence[int], f: FineVector | Mapping) -> tuple[bool, Optional[MacaulayTree]]:
    """Is ``f`` the fine f-vector of a pure ``a``-balanced complex?  Returns a witnessing representation."""
    a = tuple(int(v) for v in a)
    reduced, values, outside = _restrict(a, _as_values(a, f))
    if outside or not reduced:
        return False, None
    top = values.get(reduced, 0)
    if top < 1:
        return False, None
    for alpha in _cached_reps(reduced, top):
        if all(partial_diff(alpha, tuple(x - y for x, y in zip(b, reduced))) == values.get(b, 0) for b in box(reduced)):
            return True, alpha
    return False, None


@lru_cache(maxsize=None)
def _lifted_reps(b: IntTuple, N: int, fill: IntTuple) -> tuple[MacaulayTree, ...]:
    """Representations of ``N`` over the support of ``b``, with ``fill`` in the zero coordinates."""
    support = _support(b)
    small = tuple(b[i] for i in support)
    if len(support) == len(b):
        return _cached_reps(small, N)
    values = iter(fill)
    padded = [0 if x else next(values) for x in b]
    return tuple(lift(tree, support, len(b), padded) for tree in _cached_reps(small, N))


@lru_cache(maxsize=None)
def _preceq_cached(alpha: MacaulayTree, alpha_prime: MacaulayTree) -> bool:
    return preceq(alpha, alpha_prime)


@dataclass(frozen=True)
class _Layout:
    """Index bookkeeping for one type: the box, positive indices by size, covers and units."""

    cells: tuple[IntTuple, ...]
    positive: tuple[IntTuple, ...]
    covers: dict
    units: tuple[IntTuple, ...]
    ups: dict


@lru_cache(maxsize=None)
def _layout(a: IntTuple) -> _Layout:
    n = len(a)
    cells = tuple(box(a))
    units = tuple(tuple(1 if j == i else 0 for j in range(n)) for i in range(n))
    positive = tuple(sorted((b for b in cells if any(b)), key=lambda b: (sum(b), b)))
    covers = {b: tuple(c for c in (tuple(v - u for v, u in zip(b, unit)) for unit, x in zip(units, b) if x) if any(c)) for b in positive}
    ups = {b: tuple(up for up in (tuple(v + u for v, u in zip(b, unit)) for unit in units) if leq(up, a)) for b in cells}
    return _Layout(cells, positive, covers, units, ups)


def _prechecks(layout: _Layout, values: dict[IntTuple, int]) -> bool:
    if values.get(layout.cells[0], 0) != 1:
        return False
    if any(v < 0 for v in values.values()):
        return False
    if any(values.get(unit, 0) < 1 for unit in layout.units):
        return False
    for b in layout.cells:
        if not values.get(b, 0) and any(values.get(up, 0) for up in layout.ups[b]):
            return False
    return True


def check_fine_f_colored(a: Sequence[int], f: FineVector | Mapping) -> tuple[bool, Optional[dict[IntTuple, Optional[MacaulayTree]]]]:
    """Is ``f`` the fine f-vector of an ``a``-colored complex?

    Searches for an array of generalized representations ``alpha_b`` of ``f_b`` with
    ``alpha_b`` below ``alpha_b'`` for every cover ``b' < b``.  Zero coordinates of each ``b``
    are filled with the vertex counts ``f_{delta_i}``.  Returns the witnessing array.
    """
    a = tuple(int(v) for v in a)
    reduced, values, outside = _restrict(a, _as_values(a, f))
    if outside or not reduced:
        return False, None
    layout = _layout(reduced)
    if not _prechecks(layout, values):
        return False, None
    lam = tuple(values[unit] for unit in layout.units)
    order = [b for b in layout.positive if values.get(b, 0) > 0]
    candidates = {b: _lifted_reps(b, values[b], tuple(v for v, x in zip(lam, b) if not x)) for b in order}
    covers = layout.covers
    chosen: dict[IntTuple, MacaulayTree] = {}

    def search(position: int) -> bool:
        if position == len(order):
            return True
        b = order[position]
        for alpha in candidates[b]:
            if all(_preceq_cached(alpha, chosen[c]) for c in covers[b]):
                chosen[b] = alpha
                if search(position + 1):
                    return True
                del chosen[b]
        return False

    if not search(0):
        return False, None
    witnesses: dict[IntTuple, Optional[MacaulayTree]] = {b: chosen.get(b) for b in layout.cells}
    return True, witnesses


def check_fine_h_cm(a: Sequence[int], h: FineVector | Mapping) -> tuple[bool, Optional[dict]]:
    """Fine h-vectors of balanced Cohen-Macaulay complexes are the fine f-vectors of colored complexes."""
    return check_fine_f_colored(a, h)


def subset_array(d: int, values: Mapping) -> dict[IntTuple, int]:
    """Convert a map from subsets of ``[d]`` (any iterable of 1-based colors) to indicator keys."""
    out = {}
    for key, value in values.items():
        members = set(int(v) for v in key)
        if not members <= set(range(1, d + 1)):
            raise DomainError(f"subset {sorted(members)} is not inside [1, {d}]")
        out[tuple(1 if i in members else 0 for i in range(1, d + 1))] = int(value)
    return out


def check_flag_f_cm(d: int, f: Mapping) -> tuple[bool, Optional[MacaulayTree]]:
    """Is ``f`` (keyed by subsets of ``[d]``) the flag f-vector of a completely balanced CM complex?"""
    if d < 1:
        raise DomainError("d must be positive")
    return check_pure_balanced_fine_f((1,) * d, subset_array(d, f))


def check_flag_h_cm(d: int, h: Mapping) -> bool:
    """Is ``h`` (keyed by subsets of ``[d]``) the flag h-vector of a completely balanced CM complex?"""
    if d < 1:
        raise DomainError("d must be positive")
    values = subset_array(d, h)
    if values.get((0,) * d, 0) != 1:
        return False
    if any(values.get(tuple(1 if j == i else 0 for j in range(d)), 0) < 1 for i in range(d)):
        return False
    return check_fine_f_colored((1,) * d, values)[0]


def kruskal_katona_feasible(f: Sequence[int]) -> bool:
    """Textbook test: ``f[k-1]`` faces of size ``k`` for ``k = 1..d`` (empty face implicit)."""
    f = list(f)
    if not f or f[0] < 1 or any(v < 0 for v in f):
        return False
    for k in range(2, len(f) + 1):
        count = f[k - 1]
        if count == 0:
            if any(f[k:]):
                return False
            continue
        if f[k - 2] < classic_macaulay_rep(count, k).shadow():
            return False
    return True
