"""Colored simplicial complexes, face operations, fine f/h-vectors, ribs and ribcages."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Iterable, Mapping, Sequence

from .combinatorics import IntTuple, binom, binom_tuple, box, leq
from .errors import CapacityError, ColoringError, DomainError, FaceError, ParseError, PartitionError

Vertex = tuple[int, int]
Face = frozenset
MAX_VERTICES = 64


def color_counts(face: Iterable[Vertex], n: int) -> IntTuple:
    """Number of vertices of each color in ``face``."""
    counts = [0] * n
    for _, color in face:
        counts[color - 1] += 1
    return tuple(counts)


def maximal_sets(sets: Iterable[frozenset]) -> frozenset:
    """The inclusion-maximal members of a family of sets."""
    ordered = sorted(set(sets), key=len, reverse=True)
    kept: list[frozenset] = []
    for candidate in ordered:
        if not any(candidate < other for other in kept):
            kept.append(candidate)
    return frozenset(kept)


def sort_face(face: Iterable[Vertex]) -> list[Vertex]:
    """Vertices ordered by color, then rank."""
    return sorted(face, key=lambda v: (v[1], v[0]))


@dataclass(frozen=True)
class ColoredComplex:
    """A simplicial complex on vertices ``(rank, color)`` with a type bound per color.

    ``facets`` is the antichain of maximal faces; the empty family denotes the void
    complex and ``{frozenset()}`` denotes the complex whose only face is the empty set.
    """

    type_a: IntTuple
    lam: IntTuple
    facets: frozenset = field(compare=True)

    @property
    def n(self) -> int:
        return len(self.type_a)

    @cached_property
    def faces(self) -> frozenset:
        out: set[frozenset] = set()
        for facet in self.facets:
            members = sorted(facet)
            for size in range(len(members) + 1):
                for combo in itertools.combinations(members, size):
                    out.add(frozenset(combo))
        return frozenset(out)

    @cached_property
    def vertices(self) -> tuple[Vertex, ...]:
        found = set()
        for facet in self.facets:
            found.update(facet)
        return tuple(sort_face(found))

    def vertices_of_color(self, color: int) -> list[Vertex]:
        """Vertices of one color in increasing rank order."""
        return sorted((v for v in self.vertices if v[1] == color), key=lambda v: v[0])

    @property
    def dimension(self) -> int:
        if not self.facets:
            return -2
        return max(len(f) for f in self.facets) - 1

    def is_pure(self) -> bool:
        return len({len(f) for f in self.facets}) <= 1

    def is_balanced(self) -> bool:
        """Dimension equals ``|a| - 1``."""
        return self.dimension == sum(self.type_a) - 1

    def contains(self, face: Iterable[Vertex]) -> bool:
        target = frozenset(face)
        return any(target <= facet for facet in self.facets)

    def facet_list(self) -> list[list[Vertex]]:
        """Facets in a canonical order."""
        return sorted((sort_face(f) for f in self.facets), key=lambda f: (len(f), [(c, r) for r, c in f]))


def _validate_vertex(vertex: Sequence[int], type_a: IntTuple, lam: IntTuple) -> Vertex:
    if len(vertex) != 2:
        raise PartitionError(f"vertex {vertex!r} must be a (rank, color) pair")
    rank, color = int(vertex[0]), int(vertex[1])
    if not 1 <= color <= len(type_a):
        raise PartitionError(f"vertex {(rank, color)} has color outside [1, {len(type_a)}]")
    if not 1 <= rank <= lam[color - 1]:
        raise PartitionError(f"vertex {(rank, color)} has rank outside [1, {lam[color - 1]}]")
    return (rank, color)


def from_facets(type_a: Sequence[int], lam: Sequence[int], facets: Iterable[Iterable[Sequence[int]]]) -> ColoredComplex:
    """The complex generated by ``facets`` on the partition ``([lam_1]_1, ..., [lam_n]_n)``."""
    type_a, lam = tuple(int(v) for v in type_a), tuple(int(v) for v in lam)
    if len(type_a) != len(lam):
        raise PartitionError("type and lambda must have the same length")
    if any(v < 0 for v in type_a) or any(v < 0 for v in lam):
        raise DomainError("type and lambda must be non-negative")
    generated = []
    for facet in facets:
        face = frozenset(_validate_vertex(v, type_a, lam) for v in facet)
        counts = color_counts(face, len(type_a))
        if not leq(counts, type_a):
            raise ColoringError(f"face {sort_face(face)} has color counts {counts} exceeding type {type_a}")
        generated.append(face)
    complex_ = ColoredComplex(type_a, lam, maximal_sets(generated))
    if len(complex_.vertices) > MAX_VERTICES:
        raise CapacityError(f"complexes are limited to {MAX_VERTICES} vertices")
    return complex_


def simplex(type_a: Sequence[int], lam: Sequence[int], vertices: Iterable[Vertex]) -> ColoredComplex:
    return from_facets(type_a, lam, [list(vertices)])


def _as_face(arg: Any) -> frozenset:
    if isinstance(arg, tuple) and len(arg) == 2 and all(isinstance(v, int) for v in arg):
        return frozenset([arg])
    return frozenset(tuple(v) for v in arg)


def deletion_facets(facets: frozenset, face: frozenset) -> frozenset:
    """Facets of the subcomplex of faces not containing ``face``."""
    pieces = []
    for facet in facets:
        if face <= facet:
            pieces.extend(facet - {v} for v in face)
        else:
            pieces.append(facet)
    return maximal_sets(pieces)


def link_facets(facets: frozenset, face: frozenset) -> frozenset:
    """Facets of the link of ``face``."""
    return maximal_sets(facet - face for facet in facets if face <= facet)


def face_restriction(C: ColoredComplex, kind: str, arg: Any) -> ColoredComplex:
    """Deletion or link of a face, or the ``k``-skeleton for an integer ``arg``."""
    if kind == "skeleton":
        k = int(arg)
        pieces = [face for face in C.faces if len(face) <= k + 1]
        return ColoredComplex(C.type_a, C.lam, maximal_sets(pieces) if pieces else frozenset())
    face = _as_face(arg)
    if not C.contains(face):
        raise FaceError(f"{sort_face(face)} is not a face")
    if kind == "deletion":
        if not face:
            return ColoredComplex(C.type_a, C.lam, frozenset())
        return ColoredComplex(C.type_a, C.lam, deletion_facets(C.facets, face))
    if kind == "link":
        counts = color_counts(face, C.n)
        new_type = tuple(a - c for a, c in zip(C.type_a, counts))
        return ColoredComplex(new_type, C.lam, link_facets(C.facets, face))
    raise DomainError(f"unknown restriction kind {kind!r}")


def deletion(C: ColoredComplex, face: Any) -> ColoredComplex:
    return face_restriction(C, "deletion", face)


def link(C: ColoredComplex, face: Any) -> ColoredComplex:
    return face_restriction(C, "link", face)


def join(first: ColoredComplex, second: ColoredComplex, reindex: bool = True) -> ColoredComplex:
    """All unions of a face of ``first`` with a face of ``second``.

    With ``reindex`` the colors of ``second`` are shifted past those of ``first`` and the
    type is the concatenation.  Without it both complexes must share the same colors,
    use disjoint color classes, and the type is the componentwise sum.
    """
    if reindex:
        shift = first.n
        moved = [frozenset((r, c + shift) for r, c in f) for f in second.facets]
        type_a = first.type_a + second.type_a
        lam = first.lam + second.lam
    else:
        if first.n != second.n:
            raise PartitionError("joined complexes must have the same number of colors")
        used_first = {c for _, c in first.vertices}
        used_second = {c for _, c in second.vertices}
        if used_first & used_second:
            raise PartitionError(f"colors {sorted(used_first & used_second)} occur in both complexes")
        moved = list(second.facets)
        type_a = tuple(x + y for x, y in zip(first.type_a, second.type_a))
        lam = tuple(max(x, y) for x, y in zip(first.lam, second.lam))
    if not first.facets or not moved:
        return ColoredComplex(type_a, lam, frozenset())
    facets = frozenset(f | g for f in first.facets for g in moved)
    return ColoredComplex(type_a, lam, facets)


@dataclass(frozen=True)
class FineVector:
    """An array indexed by tuples ``0 <= b <= a``; absent keys read as zero."""

    type_a: IntTuple
    values: Mapping[IntTuple, int]

    def __getitem__(self, b: Sequence[int]) -> int:
        return self.values.get(tuple(b), 0)

    def keys(self) -> list[IntTuple]:
        return box(self.type_a)

    def items(self) -> list[tuple[IntTuple, int]]:
        return [(b, self[b]) for b in self.keys()]

    def collapsed(self) -> IntTuple:
        """Sums over ``|b| = i`` for ``i = 0..|a|``."""
        out = [0] * (sum(self.type_a) + 1)
        for b, value in self.items():
            out[sum(b)] += value
        return tuple(out)

    def as_tuple(self) -> IntTuple:
        return tuple(value for _, value in self.items())

    def __hash__(self) -> int:
        return hash((self.type_a, self.as_tuple()))

    def __eq__(self, other: object) -> bool:
        return isinstance(other, FineVector) and self.type_a == other.type_a and self.as_tuple() == other.as_tuple()


def fine_f_vector(C: ColoredComplex) -> FineVector:
    """Number of faces meeting each color class in exactly ``b_i`` vertices."""
    values = {b: 0 for b in box(C.type_a)}
    for face in C.faces:
        counts = color_counts(face, C.n)
        values[counts] = values.get(counts, 0) + 1
    return FineVector(C.type_a, values)


def fine_h_vector(F: FineVector) -> FineVector:
    """Signed binomial transform ``h_b = sum_{c<=b} f_c prod (-1)^(b_i-c_i) C(a_i-c_i, b_i-c_i)``."""
    a = F.type_a
    values = {}
    for b in box(a):
        total = 0
        for c in box(b):
            f_c = F[c]
            if not f_c:
                continue
            term = f_c
            for a_i, b_i, c_i in zip(a, b, c):
                term *= (-1) ** (b_i - c_i) * binom(a_i - c_i, b_i - c_i)
            total += term
        values[b] = total
    return FineVector(a, values)


def fine_f_from_h(H: FineVector) -> FineVector:
    """Inverse of :func:`fine_h_vector`: ``f_b = sum_{c<=b} h_c prod C(a_i-c_i, b_i-c_i)``."""
    a = H.type_a
    values = {}
    for b in box(a):
        values[b] = sum(H[c] * binom_tuple(tuple(x - y for x, y in zip(a, c)), tuple(x - y for x, y in zip(b, c))) for c in box(b))
    return FineVector(a, values)


def normalize(C: ColoredComplex) -> tuple[ColoredComplex, tuple[int, ...]]:
    """Drop colors without vertices; return the re-indexed complex and kept original colors."""
    used = sorted({color for _, color in C.vertices})
    new_index = {old: new for new, old in enumerate(used, start=1)}
    facets = frozenset(frozenset((r, new_index[c]) for r, c in f) for f in C.facets)
    type_a = tuple(C.type_a[c - 1] for c in used)
    lam = tuple(C.lam[c - 1] for c in used)
    return ColoredComplex(type_a, lam, facets), tuple(used)


def build_rib(lam: Sequence[int], a: Sequence[int], kind: str = "rib") -> ColoredComplex:
    """Join of the generators ``<binom([lam_i]_i, a_i)>``; the ribcage has ``lam = a + 1``."""
    lam, a = tuple(lam), tuple(a)
    if len(lam) != len(a):
        raise PartitionError("lambda and type must have the same length")
    if kind == "ribcage" and lam != tuple(v + 1 for v in a):
        raise DomainError(f"the {a}-ribcage needs lambda = {tuple(v + 1 for v in a)}")
    if kind not in ("rib", "ribcage"):
        raise DomainError(f"unknown rib kind {kind!r}")
    if not leq(a, lam):
        raise CapacityError(f"lambda {lam} is smaller than type {a}")
    pieces = []
    for color, (size, take) in enumerate(zip(lam, a), start=1):
        pieces.append([frozenset((r, color) for r in combo) for combo in itertools.combinations(range(1, size + 1), take)])
    facets = frozenset(frozenset().union(*choice) for choice in itertools.product(*pieces))
    return ColoredComplex(a, lam, facets)


def is_t_factorizable(C: ColoredComplex, t: int) -> bool:
    """True iff the complex splits as ``<binom(V_t, a_t)> * C'`` over its actual color-``t`` vertices."""
    a_t = C.type_a[t - 1]
    if a_t == 0:
        return True
    color_vertices = C.vertices_of_color(t)
    for facet in C.facets:
        if sum(1 for v in facet if v[1] == t) != a_t:
            return False
    faces = C.faces
    for facet in C.facets:
        rest = frozenset(v for v in facet if v[1] != t)
        for choice in itertools.combinations(color_vertices, a_t):
            if rest | frozenset(choice) not in faces:
                return False
    return True


def complex_to_json(C: ColoredComplex) -> dict:
    return {
        "type": list(C.type_a),
        "lambda": list(C.lam),
        "facets": [[list(v) for v in f] for f in C.facet_list()],
    }


def complex_from_json(data: Any) -> ColoredComplex:
    try:
        type_a = [int(v) for v in data["type"]]
        lam = [int(v) for v in data["lambda"]]
        facets = [[(int(v[0]), int(v[1])) for v in facet] for facet in data["facets"]]
    except (KeyError, TypeError, ValueError, IndexError) as exc:
        raise ParseError(f"complex JSON needs 'type', 'lambda' and 'facets' of [rank, color] pairs: {exc}") from exc
    return from_facets(type_a, lam, facets)
