"""Decision procedures: color-shifted, color-compressed, vertex- and Macaulay-decomposable."""

from __future__ import annotations

import itertools
from collections import defaultdict
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional, Sequence

from .combinatorics import IntTuple, binom, box, colex_rank, lt
from .complex import ColoredComplex, Vertex, deletion_facets, link_facets, maximal_sets, sort_face
from .errors import StructureError

POLICIES = ("highest-color", "lowest-color")


@dataclass(frozen=True)
class DecompositionCertificate:
    """A witness tree: ``rib-base`` leaves and ``shed`` nodes with deletion and link branches."""

    kind: str
    vertex: Optional[Vertex] = None
    sub_a: Optional[IntTuple] = None
    children: tuple = ()
    covering: Optional[bool] = None

    def uses_non_covering(self) -> bool:
        """True if some link branch needed a type more than one step below its parent."""
        return self.covering is False or any(child.uses_non_covering() for child in self.children)

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "vertex": None if self.vertex is None else list(self.vertex),
            "sub_a": None if self.sub_a is None else list(self.sub_a),
            "covering": self.covering,
            "children": [child.to_json() for child in self.children],
        }


def is_color_shifted(C: ColoredComplex) -> bool:
    """Closed under replacing a vertex by a smaller vertex of the same color."""
    by_color = {c: C.vertices_of_color(c) for c in range(1, C.n + 1)}
    faces = C.faces
    for face in faces:
        for vertex in face:
            rank, color = vertex
            for smaller in by_color[color]:
                if smaller[0] >= rank:
                    break
                if smaller in face:
                    continue
                if (face - {vertex}) | {smaller} not in faces:
                    return False
    return True


def _positions(C: ColoredComplex) -> dict[Vertex, int]:
    """1-based position of every vertex inside its color class."""
    out = {}
    for color in range(1, C.n + 1):
        for index, vertex in enumerate(C.vertices_of_color(color), start=1):
            out[vertex] = index
    return out


def is_color_compressed(C: ColoredComplex) -> bool:
    """Every fiber of color-``t`` parts over a fixed complement is a colex initial segment."""
    position = _positions(C)
    for t in range(1, C.n + 1):
        fibers: dict[tuple[frozenset, int], set[int]] = defaultdict(set)
        for face in C.faces:
            part = [position[v] for v in face if v[1] == t]
            rest = frozenset(v for v in face if v[1] != t)
            fibers[(rest, len(part))].add(colex_rank(part))
        for ranks in fibers.values():
            if max(ranks) != len(ranks) - 1:
                return False
    return True


def color_compress_complex(C: ColoredComplex, t: int) -> ColoredComplex:
    """Replace every color-``t`` fiber by the colex initial segment of the same size."""
    from .combinatorics import colex_unrank

    vertices = C.vertices_of_color(t)
    fibers: dict[tuple[frozenset, int], int] = defaultdict(int)
    for face in C.faces:
        part = [v for v in face if v[1] == t]
        rest = frozenset(v for v in face if v[1] != t)
        fibers[(rest, len(part))] += 1
    faces = []
    for (rest, size), count in fibers.items():
        for rank in range(count):
            chosen = colex_unrank(rank, size)
            faces.append(rest | frozenset(vertices[p - 1] for p in chosen))
    return ColoredComplex(C.type_a, C.lam, maximal_sets(faces))


def _vertices_of(facets: frozenset) -> list[Vertex]:
    found = set()
    for facet in facets:
        found.update(facet)
    return list(found)


def _candidate_order(facets: frozenset, policy: str = "highest-color") -> list[Vertex]:
    vertices = _vertices_of(facets)
    if policy == "lowest-color":
        return sorted(vertices, key=lambda v: (v[1], -v[0]))
    return sorted(vertices, key=lambda v: (v[1], v[0]), reverse=True)


def _dimension(facets: frozenset) -> int:
    if not facets:
        return -2
    return max(len(f) for f in facets) - 1


@lru_cache(maxsize=200_000)
def _vertex_decomposable(facets: frozenset, policy: str) -> Optional[DecompositionCertificate]:
    if len(facets) <= 1:
        return DecompositionCertificate("rib-base") if facets else None
    for vertex in _candidate_order(facets, policy):
        single = frozenset([vertex])
        dl = deletion_facets(facets, single)
        lk = link_facets(facets, single)
        if dl & lk:
            continue
        left = _vertex_decomposable(dl, policy)
        if left is None:
            continue
        right = _vertex_decomposable(lk, policy)
        if right is None:
            continue
        return DecompositionCertificate("shed", vertex, None, (left, right))
    return None


def is_vertex_decomposable(C: ColoredComplex, policy: str = "highest-color") -> tuple[bool, Optional[DecompositionCertificate]]:
    """Exhaustive memoized search for a shedding order; simplices and ``{{}}`` are base cases."""
    cert = _vertex_decomposable(C.facets, policy)
    return cert is not None, cert


def rib_partition(facets: frozenset, a: Sequence[int]) -> Optional[list[list[Vertex]]]:
    """An ordered partition exhibiting the complex as an ``a``-rib of a simplex, if one exists.

    Cone points form singleton-style factors; the other vertices split into join factors
    detected by pairwise dependence of their facet counts, and each factor must be a full
    skeleton whose size matches an unused entry of ``a``.
    """
    a = tuple(a)
    if not facets:
        return None
    total = len(facets)
    if _dimension(facets) != sum(a) - 1:
        return None
    if any(len(f) != sum(a) for f in facets):
        return None
    if sum(a) == 0:
        return [[] for _ in a]
    vertices = sorted(_vertices_of(facets))
    count = {v: sum(1 for f in facets if v in f) for v in vertices}
    cones = [v for v in vertices if count[v] == total]
    others = [v for v in vertices if count[v] != total]
    parent = {v: v for v in others}

    def find(v: Vertex) -> Vertex:
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for u, v in itertools.combinations(others, 2):
        together = sum(1 for f in facets if u in f and v in f)
        if together * total != count[u] * count[v]:
            parent[find(u)] = find(v)
    classes: dict[Vertex, list[Vertex]] = defaultdict(list)
    for v in others:
        classes[find(v)].append(v)
    groups = list(classes.values())
    sizes = []
    for group in groups:
        members = set(group)
        hits = {len(f & members) for f in facets}
        if len(hits) != 1:
            return None
        sizes.append(hits.pop())
    product = 1
    for group, k in zip(groups, sizes):
        product *= binom(len(group), k)
    if product != total:
        return None
    # match each factor to a distinct color with a_i = k, then fill cones
    free = [i for i, v in enumerate(a) if v > 0]
    parts: list[list[Vertex]] = [[] for _ in a]
    for group, k in sorted(zip(groups, sizes), key=lambda item: -item[1]):
        match = next((i for i in free if a[i] == k), None)
        if match is None:
            return None
        free.remove(match)
        parts[match] = sorted(group)
    remaining = sorted(cones)
    for i in free:
        if len(remaining) < a[i]:
            return None
        parts[i], remaining = remaining[: a[i]], remaining[a[i] :]
    if remaining:
        return None
    return parts


def is_rib_of_simplex(C: ColoredComplex, a: Sequence[int] | None = None) -> bool:
    return rib_partition(C.facets, C.type_a if a is None else a) is not None


@lru_cache(maxsize=200_000)
def _macaulay_decomposable(facets: frozenset, a: IntTuple, policy: str) -> Optional[DecompositionCertificate]:
    if _dimension(facets) != sum(a) - 1:
        return None
    if rib_partition(facets, a) is not None:
        return DecompositionCertificate("rib-base", None, a)
    if len(facets) <= 1:
        return None
    for vertex in _candidate_order(facets, policy):
        single = frozenset([vertex])
        dl = deletion_facets(facets, single)
        lk = link_facets(facets, single)
        if dl & lk:
            continue
        left = _macaulay_decomposable(dl, a, policy)
        if left is None:
            continue
        target = _dimension(lk) + 1
        candidates = [b for b in box(a) if lt(b, a) and sum(b) == target]
        candidates.sort(key=lambda b: (sum(a) - sum(b), tuple(-x for x in b)))
        for sub in candidates:
            right = _macaulay_decomposable(lk, sub, policy)
            if right is not None:
                return DecompositionCertificate("shed", vertex, sub, (left, right), sum(a) - sum(sub) == 1)
    return None


def is_macaulay_decomposable(C: ColoredComplex, a: Sequence[int] | None = None, policy: str = "highest-color") -> tuple[bool, Optional[DecompositionCertificate]]:
    """Recursive search for Macaulay shedding vertices down to ribs of simplices."""
    a = tuple(C.type_a if a is None else a)
    cert = _macaulay_decomposable(C.facets, a, policy)
    return cert is not None, cert


def _is_own_rib(C: ColoredComplex) -> bool:
    product = 1
    for color in range(1, C.n + 1):
        product *= binom(len(C.vertices_of_color(color)), C.type_a[color - 1])
    return product == len(C.facets)


def macaulay_shedding_vertex(C: ColoredComplex, policy: str = "highest-color") -> Optional[Vertex]:
    """Maximal vertex of the highest (or lowest) color with more vertices than its type entry."""
    if policy not in POLICIES:
        raise StructureError(f"unknown split policy {policy!r}")
    if not C.facets or not C.is_pure() or not C.is_balanced():
        raise StructureError("a pure balanced complex is required")
    if not is_color_shifted(C):
        raise StructureError("a color-shifted complex is required")
    if _is_own_rib(C):
        return None
    colors = [c for c in range(1, C.n + 1) if len(C.vertices_of_color(c)) > C.type_a[c - 1]]
    color = max(colors) if policy == "highest-color" else min(colors)
    return C.vertices_of_color(color)[-1]


def describe_facets(facets: frozenset) -> list[list[Vertex]]:
    return sorted(sort_face(f) for f in facets)
