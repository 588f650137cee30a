"""Macaulay trees: derived labelings, validity, condensation, signatures, navigation and gluing.

A tree is stored in nested canonical form: a terminal is ``("L", phi)`` and a trivalent
vertex is ``("Y", color, left, right)``.  The planted root ``r0`` is implicit and carries the
type ``a``; ``MacaulayTree.root`` is its unique child ``r1``.  An arena view numbers the
vertices in depth-first preorder with ``r0 = 0`` and ``r1 = 1``.
"""

from __future__ import annotations

import itertools
import random
import re
from dataclasses import dataclass
from functools import cached_property
from typing import Any, Callable, Iterable, Optional, Sequence, Union

from .combinatorics import IntTuple, binom_tuple, colex_key, leq
from .complex import ColoredComplex
from .errors import DomainError, MalformedTreeError, ParseError, PreconditionError

Node = tuple

ROOT, TRIVALENT, TERMINAL = "root", "trivalent", "terminal"


def leaf(phi: Sequence[int]) -> Node:
    return ("L", tuple(int(v) for v in phi))


def trivalent(color: int, left: Node, right: Node) -> Node:
    return ("Y", int(color), left, right)


def is_leaf(node: Node) -> bool:
    return node[0] == "L"


def map_leaves(node: Node, fn: Callable[[IntTuple], IntTuple]) -> Node:
    if is_leaf(node):
        return ("L", fn(node[1]))
    return ("Y", node[1], map_leaves(node[2], fn), map_leaves(node[3], fn))


def bump_leaves(node: Node, color: int, amount: int = 1) -> Node:
    """Add ``amount`` to coordinate ``color`` of every terminal label in ``node``."""

    def shift(phi: IntTuple) -> IntTuple:
        out = list(phi)
        out[color - 1] += amount
        return tuple(out)

    return map_leaves(node, shift)


def _check_node(node: Any, n: int) -> None:
    stack = [node]
    while stack:
        current = stack.pop()
        if not isinstance(current, tuple) or not current:
            raise MalformedTreeError(f"malformed tree node {current!r}")
        if current[0] == "L":
            if len(current) != 2 or not isinstance(current[1], tuple) or len(current[1]) != n:
                raise MalformedTreeError(f"terminal {current!r} needs an integer {n}-tuple label")
            if not all(isinstance(v, int) for v in current[1]):
                raise MalformedTreeError(f"terminal {current!r} has non-integer entries")
        elif current[0] == "Y":
            if len(current) != 4 or not isinstance(current[1], int):
                raise MalformedTreeError(f"trivalent {current[:2]!r} needs a color and two children")
            stack.extend((current[2], current[3]))
        else:
            raise MalformedTreeError(f"unknown node kind {current[0]!r}")


@dataclass(frozen=True)
class TreeArena:
    """Preorder arena of a Macaulay tree with splitting labels ``nu`` and left-weights ``omega``."""

    kind: tuple[str, ...]
    color: tuple[Optional[int], ...]
    label: tuple[Optional[IntTuple], ...]
    left: tuple[int, ...]
    right: tuple[int, ...]
    parent: tuple[int, ...]
    end: tuple[int, ...]
    nu: tuple[IntTuple, ...]
    omega: tuple[Optional[IntTuple], ...]
    node: tuple[Optional[Node], ...]

    @property
    def size(self) -> int:
        return len(self.kind)

    @cached_property
    def terminals(self) -> tuple[int, ...]:
        return tuple(i for i, k in enumerate(self.kind) if k == TERMINAL)

    @cached_property
    def trivalents(self) -> tuple[int, ...]:
        return tuple(i for i, k in enumerate(self.kind) if k == TRIVALENT)

    def is_descendant(self, x: int, y: int) -> bool:
        """True iff ``x`` lies in the subtree of ``y`` (inclusive)."""
        return y <= x < self.end[y]

    def path_from_root(self, x: int) -> list[int]:
        out = [x]
        while out[-1] != 0:
            out.append(self.parent[out[-1]])
        return out[::-1]

    def right_relatives(self, x: int) -> list[int]:
        out = [x]
        while self.kind[out[-1]] == TRIVALENT:
            out.append(self.right[out[-1]])
        return out

    def left_relatives(self, x: int) -> list[int]:
        out = [x]
        while self.kind[out[-1]] == TRIVALENT:
            out.append(self.left[out[-1]])
        return out

    def right_branch_ancestors(self, x: int) -> list[int]:
        """Trivalent ``v`` such that both ``v`` and ``v_right`` are ancestors of ``x`` (inclusive)."""
        out = []
        child, current = x, self.parent[x]
        while current > 0:
            if self.right[current] == child:
                out.append(current)
            child, current = current, self.parent[current]
        return out

    def is_leading(self, x: int, t: int) -> bool:
        if self.kind[x] == ROOT:
            return False
        if self.kind[x] == TRIVALENT and self.color[x] > t:
            return False
        p = self.parent[x]
        return p == 0 or self.color[p] > t

    @cached_property
    def _leading_cache(self) -> dict[int, tuple[int, ...]]:
        return {}

    def leading(self, t: int) -> tuple[int, ...]:
        """All ``t``-leading vertices in depth-first order."""
        cache = self._leading_cache
        if t not in cache:
            cache[t] = tuple(x for x in range(1, self.size) if self.is_leading(x, t))
        return cache[t]

    def steps_from_r1(self, x: int) -> list[str]:
        steps = []
        path = self.path_from_root(x)
        for parent, child in zip(path[1:], path[2:]):
            steps.append("l" if self.left[parent] == child else "r")
        return steps


def _build_arena(a: IntTuple, root: Node) -> TreeArena:
    kind: list[str] = [ROOT]
    color: list[Optional[int]] = [None]
    label: list[Optional[IntTuple]] = [a]
    left = [-1]
    right = [-1]
    parent = [-1]
    nu: list[IntTuple] = [a]
    node: list[Optional[Node]] = [None]
    stack = [(root, 0, a)]
    while stack:
        current, par, split = stack.pop()
        index = len(kind)
        parent.append(par)
        nu.append(split)
        node.append(current)
        left.append(-1)
        right.append(-1)
        if par > 0:
            if left[par] == -1:
                left[par] = index
            else:
                right[par] = index
        if is_leaf(current):
            kind.append(TERMINAL)
            color.append(None)
            label.append(current[1])
        else:
            c = current[1]
            kind.append(TRIVALENT)
            color.append(c)
            label.append(None)
            lowered = list(split)
            if 1 <= c <= len(split):
                lowered[c - 1] -= 1
            stack.append((current[3], index, tuple(lowered)))
            stack.append((current[2], index, split))
    size = len(kind)
    end = list(range(1, size + 1))
    omega: list[Optional[IntTuple]] = [None] * size
    for index in range(size - 1, 0, -1):
        if kind[index] == TERMINAL:
            omega[index] = label[index]
        else:
            end[index] = end[right[index]]
            base = list(omega[left[index]])
            c = color[index]
            if 1 <= c <= len(base):
                base[c - 1] += 1
            omega[index] = tuple(base)
    end[0] = size
    return TreeArena(tuple(kind), tuple(color), tuple(label), tuple(left), tuple(right), tuple(parent), tuple(end), tuple(nu), tuple(omega), tuple(node))


@dataclass(frozen=True)
class ValidationReport:
    """Outcome of the Macaulay-tree conditions (a) through (g)."""

    valid: bool
    N: int
    failures: tuple[tuple[str, str], ...]

    def __bool__(self) -> bool:
        return self.valid


@dataclass(frozen=True)
class CheckReport:
    ok: bool
    failures: tuple[str, ...] = ()

    def __bool__(self) -> bool:
        return self.ok


@dataclass(frozen=True)
class DerivedLabels:
    nu: dict
    omega: dict
    weight: IntTuple


@dataclass(frozen=True)
class Signature:
    """The ``t``-signature ``xi = psi | psi_hat | xi_hat`` of a vertex."""

    t: int
    psi: IntTuple
    psi_hat: IntTuple
    xi_hat: IntTuple
    xi: IntTuple


@dataclass(frozen=True)
class MacaulayTree:
    """A planar trivalent planted tree with root label ``a`` and nested body ``root``."""

    a: IntTuple
    root: Node

    def __post_init__(self) -> None:
        object.__setattr__(self, "a", tuple(int(v) for v in self.a))
        if not self.a:
            raise MalformedTreeError("the root label must be a non-empty tuple")
        _check_node(self.root, len(self.a))

    @property
    def n(self) -> int:
        return len(self.a)

    @cached_property
    def arena(self) -> TreeArena:
        return _build_arena(self.a, self.root)

    @cached_property
    def _signature_cache(self) -> dict:
        return {}

    @property
    def N(self) -> int:
        ar = self.arena
        return sum(binom_tuple(ar.label[u], ar.nu[u]) for u in ar.terminals)

    @property
    def weight(self) -> IntTuple:
        return self.arena.omega[1]

    def terminal_labels(self) -> list[IntTuple]:
        ar = self.arena
        return [ar.label[u] for u in ar.terminals]

    def __str__(self) -> str:
        return f"{tuple_text(self.a)} {tree_to_text(self)}"


@dataclass(frozen=True)
class GeneralizedRep:
    """Either the trivial representation of 0 (``tree is None``) or a certified tree."""

    type_a: IntTuple
    tree: Optional[MacaulayTree] = None

    @property
    def is_trivial(self) -> bool:
        return self.tree is None

    @property
    def N(self) -> int:
        return 0 if self.tree is None else self.tree.N


RepLike = Union[MacaulayTree, GeneralizedRep, None]


def _unwrap(rep: RepLike) -> Optional[MacaulayTree]:
    if isinstance(rep, GeneralizedRep):
        return rep.tree
    return rep


def derived_labels(M: MacaulayTree) -> DerivedLabels:
    ar = M.arena
    return DerivedLabels({i: ar.nu[i] for i in range(ar.size)}, {i: ar.omega[i] for i in range(1, ar.size)}, M.weight)


def validate(M: MacaulayTree) -> ValidationReport:
    """Check conditions (a)-(g) of an ``a``-Macaulay tree and compute ``N``."""
    ar = M.arena
    a, n = M.a, M.n
    failures: list[tuple[str, str]] = []
    if any(v < 0 for v in a) or not any(a):
        failures.append(("a", f"root label {a} must be a non-zero non-negative tuple"))
    for y in ar.trivalents:
        if not 1 <= ar.color[y] <= n:
            failures.append(("a", f"vertex {y} has color {ar.color[y]} outside [1, {n}]"))
    for u in ar.terminals:
        if any(v < 1 for v in ar.label[u]):
            failures.append(("a", f"terminal {u} label {ar.label[u]} is not positive"))
    if failures:
        return ValidationReport(False, 0, tuple(failures))
    for y in ar.trivalents:
        for child in (ar.left[y], ar.right[y]):
            if ar.kind[child] == TRIVALENT and ar.color[child] > ar.color[y]:
                failures.append(("b", f"vertex {child} has color {ar.color[child]} above its parent's {ar.color[y]}"))
    for y in ar.trivalents:
        c = ar.color[y]
        if c < n:
            tails = {ar.label[u][c:] for u in ar.terminals if ar.is_descendant(u, y)}
            if len(tails) > 1:
                failures.append(("c", f"terminals below vertex {y} disagree on colors above {c}"))
    for y in ar.trivalents:
        if not leq(ar.omega[ar.right[y]], ar.omega[ar.left[y]]):
            failures.append(("d", f"left-weight not proper at vertex {y}: {ar.omega[ar.left[y]]} vs {ar.omega[ar.right[y]]}"))
    for u in ar.terminals:
        nu = ar.nu[u]
        if any(v < 0 for v in nu) or not any(nu) or not leq(nu, ar.label[u]):
            failures.append(("e", f"terminal {u} has label {ar.label[u]} and splitting label {nu}"))
    for y in ar.trivalents:
        c = ar.color[y]
        if ar.nu[y][c - 1] == 1:
            target = ar.omega[y][c - 1] - 1
            r = ar.right[y]
            for x in range(r, ar.end[r]):
                if ar.omega[x][c - 1] != target:
                    failures.append(("f", f"vertex {x} below the right child of {y} has left-weight {ar.omega[x][c - 1]} in color {c}, expected {target}"))
                    break
    N = sum(binom_tuple(ar.label[u], ar.nu[u]) for u in ar.terminals if all(v >= 0 for v in ar.nu[u]))
    if N < 1:
        failures.append(("g", "the binomial sum is not positive"))
    return ValidationReport(not failures, N, tuple(failures))


def partial_diff(M: MacaulayTree, x: Sequence[int]) -> int:
    """``sum over terminals of C(phi(u), nu(u) + x)``."""
    ar = M.arena
    x = tuple(x)
    if len(x) != M.n:
        raise DomainError(f"shift {x} must have length {M.n}")
    return sum(binom_tuple(ar.label[u], tuple(p + q for p, q in zip(ar.nu[u], x))) for u in ar.terminals)


def signature(M: MacaulayTree, x: int, t: int) -> Signature:
    """The ``t``-signature of vertex ``x``; the filler is empty once ``nu_t`` of the chain end is 0."""
    cache = M._signature_cache
    key = (x, t)
    if key in cache:
        return cache[key]
    ar = M.arena
    if not 1 <= t <= M.n:
        raise DomainError(f"color {t} outside [1, {M.n}]")
    if ar.kind[x] == ROOT:
        raise DomainError("the planted root has no signature")
    a_t = M.a[t - 1]
    if a_t == 0:
        result = Signature(t, (), (), (), ())
        cache[key] = result
        return result
    psi = sorted(ar.omega[v][t - 1] for v in ar.right_branch_ancestors(x) if ar.color[v] == t)
    chain = []
    current = x
    while ar.kind[current] == TRIVALENT and ar.color[current] == t:
        chain.append(current)
        current = ar.right[current]
    psi_hat = [ar.omega[v][t - 1] for v in chain]
    remaining = ar.nu[current][t - 1]
    xi_hat: list[int] = []
    if remaining >= 1:
        top = ar.omega[current][t - 1]
        psi_hat.append(top)
        xi_hat = [top - i for i in range(1, remaining)]
    if len(psi) + len(psi_hat) + len(xi_hat) != a_t:
        raise MalformedTreeError(f"signature of vertex {x} in color {t} has the wrong size")
    xi = set(psi) | set(psi_hat) | set(xi_hat)
    if len(xi) != a_t or min(xi) < 1:
        raise MalformedTreeError(f"signature of vertex {x} in color {t} is not an {a_t}-set of positive integers")
    result = Signature(t, tuple(psi), tuple(sorted(psi_hat)), tuple(sorted(xi_hat)), tuple(sorted(xi)))
    cache[key] = result
    return result


def _xi_key(M: MacaulayTree, x: int, t: int) -> IntTuple:
    return colex_key(signature(M, x, t).xi)


def _check_zeta_args(M: MacaulayTree, i: int, j: int, x: int) -> None:
    ar = M.arena
    if not 0 <= j < i <= M.n:
        raise PreconditionError(f"need 0 <= j < i <= n, got i={i}, j={j}")
    if not ar.is_leading(x, j):
        raise PreconditionError(f"vertex {x} is not {j}-leading")
    if M.a[i - 1] - ar.nu[x][i - 1] <= 0:
        raise PreconditionError(f"entry {i} of a - nu({x}) is not positive")


def zeta(M: MacaulayTree, i: int, j: int, x: int) -> Optional[int]:
    """Descend from the deepest right-branching color-``i`` ancestor by colex threshold searches.

    Returns ``None`` when some search set is empty (``zeta`` undefined).
    """
    _check_zeta_args(M, i, j, x)
    ar = M.arena
    path = ar.path_from_root(x)
    q = None
    for index in range(len(path) - 2, 0, -1):
        v = path[index]
        if ar.color[v] == i and ar.right[v] == path[index + 1]:
            q = v
            break
    if q is None:
        raise PreconditionError(f"vertex {x} has no right-branching ancestor of color {i}")
    y = ar.left[q]
    while ar.kind[y] == TRIVALENT and ar.color[y] == i:
        y = ar.right[y]
    if ar.kind[y] == TERMINAL:
        return y
    s = ar.color[y]
    while s > j:
        threshold = _xi_key(M, x, s)
        candidates = [u for u in ar.leading(s - 1) if ar.is_descendant(u, y) and _xi_key(M, u, s) >= threshold]
        if not candidates:
            return None
        y = candidates[0]
        s = j if ar.kind[y] == TERMINAL else ar.color[y]
    return y


def zeta_recursive(M: MacaulayTree, i: int, j: int, x: int) -> Optional[int]:
    """The level-by-level definition: predecessor at ``i = j + 1``, threshold descent otherwise."""
    _check_zeta_args(M, i, j, x)
    ar = M.arena
    if i == j + 1:
        ordered = ar.leading(j)
        position = ordered.index(x)
        return ordered[position - 1] if position > 0 else None
    upper = next(v for v in ar.path_from_root(x) if v > 0 and ar.is_leading(v, j + 1))
    target = zeta_recursive(M, i, j + 1, upper)
    if target is None:
        return None
    threshold = _xi_key(M, x, j + 1)
    for z in ar.leading(j):
        if ar.is_descendant(z, target) and _xi_key(M, z, j + 1) >= threshold:
            return z
    return None


def is_compressed_like(M: MacaulayTree, method: str = "local") -> CheckReport:
    """Conditions (i) and (ii) for every trivalent vertex.

    ``method="local"`` checks (i) through a flag propagated from parent to child;
    ``method="path"`` checks every path from a same-color ancestor literally.
    """
    ar = M.arena
    failures: list[str] = []
    if method == "local":
        flagged = [False] * ar.size
        for y in ar.trivalents:
            c = ar.color[y]
            p = ar.parent[y]
            if p > 0 and ar.color[p] == c:
                flagged[y] = ar.left[p] == y or flagged[p]
            if flagged[y] and ar.omega[ar.right[y]][c - 1] != ar.omega[ar.left[y]][c - 1]:
                failures.append(f"(i) fails at vertex {y}")
    elif method == "path":
        for y in ar.trivalents:
            t = ar.color[y]
            for x in ar.path_from_root(y)[1:-1]:
                if ar.color[x] != t or not ar.is_descendant(y, ar.left[x]):
                    continue
                path = ar.path_from_root(y)
                path = path[path.index(x):] + [ar.right[y]]
                base = ar.omega[x][t - 1]
                if any(ar.omega[v][t - 1] != base - step for step, v in enumerate(path) if step):
                    failures.append(f"(i) fails on the path from {x} to the right child of {y}")
    else:
        raise DomainError(f"unknown method {method!r}")
    for y in ar.trivalents:
        t = ar.color[y]
        current = ar.left[y]
        while ar.kind[current] == TRIVALENT and ar.color[current] == t:
            current = ar.right[current]
        low, high = ar.omega[current], ar.omega[ar.right[y]]
        for other in range(1, M.n + 1):
            if other != t and low[other - 1] < high[other - 1]:
                failures.append(f"(ii) fails at vertex {y} in color {other}")
    return CheckReport(not failures, tuple(failures))


def is_compatible(M: MacaulayTree, zeta_method: str = "descent") -> CheckReport:
    """Colex comparison of every ``t``-signature with that of its ``zeta`` image."""
    if not is_compressed_like(M):
        raise PreconditionError("compatibility is defined only for compressed-like trees")
    navigate = zeta if zeta_method == "descent" else zeta_recursive
    ar = M.arena
    failures: list[str] = []
    for t in range(M.n - 1, 0, -1):
        for x in ar.leading(t):
            for i in range(t + 1, M.n + 1):
                if M.a[i - 1] - ar.nu[x][i - 1] <= 0:
                    continue
                target = navigate(M, i, t, x)
                if target is None:
                    failures.append(f"zeta^{i}_{t}({x}) is undefined")
                elif _xi_key(M, x, t) > _xi_key(M, target, t):
                    failures.append(f"signature of {x} exceeds that of zeta^{i}_{t}({x}) = {target} in color {t}")
    return CheckReport(not failures, tuple(failures))


def cloning_vertices(M: MacaulayTree) -> list[int]:
    ar = M.arena
    found = []
    for y in ar.trivalents:
        l, r = ar.left[y], ar.right[y]
        if ar.node[l] != ar.node[r]:
            continue
        if all(ar.kind[v] == TERMINAL or ar.color[v] < ar.color[y] for v in (l, r)):
            found.append(y)
    return found


def is_condensed(M: MacaulayTree) -> bool:
    return not cloning_vertices(M)


def _replace(node: Node, steps: Sequence[str], new: Node) -> Node:
    if not steps:
        return new
    head, rest = steps[0], steps[1:]
    if head == "l":
        return ("Y", node[1], _replace(node[2], rest, new), node[3])
    return ("Y", node[1], node[2], _replace(node[3], rest, new))


def condensation(M: MacaulayTree, chooser: str = "first", rng: Optional[random.Random] = None, literal: bool = False) -> MacaulayTree:
    """Repeatedly contract a cloning vertex onto its left subtree.

    Each contraction adds 1 to the cloning color in every retained terminal label, which
    keeps the binomial sum unchanged; ``literal=True`` skips that increment.
    """
    current = M
    rng = rng or random.Random(0)
    while True:
        clones = cloning_vertices(current)
        if not clones:
            return current
        if chooser == "first":
            y = clones[0]
        elif chooser == "last":
            y = clones[-1]
        elif chooser == "random":
            y = rng.choice(clones)
        else:
            raise DomainError(f"unknown chooser {chooser!r}")
        ar = current.arena
        kept = ar.node[ar.left[y]]
        if not literal:
            kept = bump_leaves(kept, ar.color[y])
        current = MacaulayTree(current.a, _replace(current.root, ar.steps_from_r1(y), kept))


def twin(M: MacaulayTree, a_prime: Sequence[int]) -> MacaulayTree:
    """Restrict to vertices with ``nu > a - a'`` and absorb trivalents that lost their right child."""
    a_prime = tuple(int(v) for v in a_prime)
    if len(a_prime) != M.n or any(v < 0 for v in a_prime) or not any(a_prime) or not leq(a_prime, M.a):
        raise DomainError(f"twin needs 0 < a' <= a, got a'={a_prime}, a={M.a}")
    ar = M.arena
    threshold = tuple(p - q for p, q in zip(M.a, a_prime))

    def kept(x: int) -> bool:
        return leq(threshold, ar.nu[x]) and ar.nu[x] != threshold

    def walk(x: int) -> Node:
        if ar.kind[x] == TERMINAL:
            return ar.node[x]
        inner = walk(ar.left[x])
        if kept(ar.right[x]):
            return ("Y", ar.color[x], inner, walk(ar.right[x]))
        return bump_leaves(inner, ar.color[x])

    return MacaulayTree(a_prime, walk(1))


def extend_labels(node: Node, value: int) -> Node:
    """Append one coordinate with a fixed value to every terminal label."""
    return map_leaves(node, lambda phi: phi + (value,))


def glue(upper: MacaulayTree, lower: MacaulayTree) -> MacaulayTree:
    """Join two trees of the same type under a new trivalent of color ``n + 1``."""
    if upper.a != lower.a:
        raise DomainError(f"glued trees must share a type, got {upper.a} and {lower.a}")
    n = upper.n
    body = ("Y", n + 1, extend_labels(upper.root, 2), extend_labels(lower.root, 1))
    return MacaulayTree(upper.a + (2,), body)


def wedge(alpha: MacaulayTree, alpha_prime: MacaulayTree) -> MacaulayTree:
    """``alpha'`` on the left, the condensed ``a'``-twin of ``alpha`` on the right."""
    if alpha.n != alpha_prime.n or not leq(alpha_prime.a, alpha.a):
        raise DomainError(f"wedge needs type {alpha_prime.a} <= {alpha.a}")
    return glue(alpha_prime, condensation(twin(alpha, alpha_prime.a)))


def is_generalized_rep(M: MacaulayTree) -> bool:
    """Valid, condensed, compressed-like and compatible."""
    return bool(validate(M)) and is_condensed(M) and bool(is_compressed_like(M)) and bool(is_compatible(M))


def certify(M: MacaulayTree) -> GeneralizedRep:
    report = validate(M)
    if not report:
        raise PreconditionError(f"not a Macaulay tree: {report.failures}")
    if not is_condensed(M):
        raise PreconditionError("tree is not condensed")
    like = is_compressed_like(M)
    if not like:
        raise PreconditionError(f"tree is not compressed-like: {like.failures}")
    compatible = is_compatible(M)
    if not compatible:
        raise PreconditionError(f"tree is not compatible: {compatible.failures}")
    return GeneralizedRep(M.a, M)


def preceq(alpha: RepLike, alpha_prime: RepLike) -> bool:
    """The partial order on generalized representations via compatibility of the wedge."""
    first, second = _unwrap(alpha), _unwrap(alpha_prime)
    if first is None:
        return True
    if second is None:
        return False
    if first.n != second.n or not leq(second.a, first.a):
        raise DomainError(f"incomparable types {first.a} and {second.a}")
    glued = wedge(first, second)
    return bool(is_compressed_like(glued)) and bool(is_compatible(glued))


def preceq_by_realization(alpha: RepLike, alpha_prime: RepLike) -> bool:
    """Containment of the realization of the condensed twin in that of ``alpha'``."""
    first, second = _unwrap(alpha), _unwrap(alpha_prime)
    if first is None:
        return True
    if second is None:
        return False
    if first.n != second.n or not leq(second.a, first.a):
        raise DomainError(f"incomparable types {first.a} and {second.a}")
    reduced = condensation(twin(first, second.a))
    return leq(reduced.weight, second.weight) and realize(reduced).facets <= realize(second).facets


def realize(M: MacaulayTree) -> ColoredComplex:
    """Union over terminals of the rib on ``phi(u)`` of type ``nu(u)`` joined with the simplex on ``psi(u)``."""
    ar = M.arena
    facets = []
    for u in ar.terminals:
        fixed = frozenset((ar.omega[v][ar.color[v] - 1], ar.color[v]) for v in ar.right_branch_ancestors(u))
        pieces = []
        for color, (size, take) in enumerate(zip(ar.label[u], ar.nu[u]), start=1):
            pieces.append([frozenset((r, color) for r in combo) for combo in itertools.combinations(range(1, size + 1), take)])
        for choice in itertools.product(*pieces):
            facets.append(fixed.union(*choice))
    return ColoredComplex(M.a, M.weight, frozenset(facets))


def tuple_text(values: Iterable[int]) -> str:
    return "(" + ",".join(str(v) for v in values) + ")"


def _node_text(node: Node) -> str:
    if is_leaf(node):
        return tuple_text(node[1])
    return f"[{node[1]} {_node_text(node[2])} {_node_text(node[3])}]"


def tree_to_text(M: MacaulayTree) -> str:
    """Compact form: terminals ``(x,y)``, trivalents ``[color left right]``."""
    return _node_text(M.root)


_TOKEN = re.compile(r"\s*(\[|\]|\(-?\d+(?:\s*,\s*-?\d+)*\)|\d+)")


def tree_from_text(a: Sequence[int], text: str) -> MacaulayTree:
    tokens = []
    position = 0
    text = text.strip()
    while position < len(text):
        match = _TOKEN.match(text, position)
        if not match:
            raise ParseError(f"unexpected character at column {position + 1} in {text!r}")
        tokens.append(match.group(1))
        position = match.end()
        while position < len(text) and text[position].isspace():
            position += 1
    cursor = 0

    def parse() -> Node:
        nonlocal cursor
        if cursor >= len(tokens):
            raise ParseError("unexpected end of tree text")
        token = tokens[cursor]
        cursor += 1
        if token.startswith("("):
            return leaf(int(v) for v in token[1:-1].split(","))
        if token == "[":
            if cursor >= len(tokens) or not tokens[cursor].isdigit():
                raise ParseError("a trivalent vertex must start with its color")
            color = int(tokens[cursor])
            cursor += 1
            left = parse()
            right = parse()
            if cursor >= len(tokens) or tokens[cursor] != "]":
                raise ParseError("missing ']' in tree text")
            cursor += 1
            return trivalent(color, left, right)
        raise ParseError(f"unexpected token {token!r}")

    body = parse()
    if cursor != len(tokens):
        raise ParseError("trailing tokens after tree text")
    return MacaulayTree(tuple(a), body)


def tree_to_json(M: Optional[MacaulayTree], a: Optional[Sequence[int]] = None) -> dict:
    """Arena serialization; the trivial representation has an empty node list."""
    if M is None:
        if a is None:
            raise DomainError("the trivial representation needs an explicit type")
        return {"a": list(a), "nodes": []}
    ar = M.arena
    nodes = []
    for x in range(ar.size):
        if ar.kind[x] == ROOT:
            nodes.append({"id": 0, "kind": ROOT, "label": list(M.a), "children": [1]})
        elif ar.kind[x] == TRIVALENT:
            nodes.append({"id": x, "kind": TRIVALENT, "label": ar.color[x], "children": [ar.left[x], ar.right[x]]})
        else:
            nodes.append({"id": x, "kind": TERMINAL, "label": list(ar.label[x]), "children": []})
    return {"a": list(M.a), "nodes": nodes}


def tree_from_json(data: Any) -> Optional[MacaulayTree]:
    """Inverse of :func:`tree_to_json`; returns ``None`` for the trivial representation."""
    try:
        a = tuple(int(v) for v in data["a"])
        nodes = {int(entry["id"]): entry for entry in data["nodes"]}
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"tree JSON needs 'a' and 'nodes' with ids: {exc}") from exc
    if not nodes:
        return None
    roots = [entry for entry in nodes.values() if entry.get("kind") == ROOT]
    if len(roots) != 1 or len(roots[0].get("children", [])) != 1:
        raise ParseError("tree JSON needs exactly one root with one child")

    def build(index: int, depth: int) -> Node:
        if depth > len(nodes):
            raise ParseError("tree JSON contains a cycle")
        if index not in nodes:
            raise ParseError(f"tree JSON references missing node {index}")
        entry = nodes[index]
        kind = entry.get("kind")
        try:
            if kind == TERMINAL:
                return leaf(int(v) for v in entry["label"])
            if kind == TRIVALENT:
                children = entry["children"]
                if len(children) != 2:
                    raise ParseError(f"trivalent node {index} needs two children")
                return trivalent(int(entry["label"]), build(int(children[0]), depth + 1), build(int(children[1]), depth + 1))
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"malformed node {index}: {exc}") from exc
        raise ParseError(f"node {index} has unknown kind {kind!r}")

    try:
        return MacaulayTree(a, build(int(roots[0]["children"][0]), 0))
    except MalformedTreeError as exc:
        raise ParseError(str(exc)) from exc


def tree_to_dot(M: MacaulayTree, name: str = "macaulay_tree") -> str:
    """Graphviz source with trivalent colors and terminal tuples as labels."""
    ar = M.arena
    lines = [f"digraph {name} {{", "  node [shape=point];", "  edge [arrowhead=none];"]
    for x in range(ar.size):
        if ar.kind[x] == ROOT:
            text = tuple_text(M.a)
        elif ar.kind[x] == TRIVALENT:
            text = str(ar.color[x])
        else:
            text = tuple_text(ar.label[x])
        lines.append(f'  n{x} [xlabel="{text}"];')
    for x in range(1, ar.size):
        lines.append(f"  n{ar.parent[x]} -> n{x};")
    lines.append("}")
    return "\n".join(lines) + "\n"
