"""Brute-force ground truth: exhaustive small colored complexes and their fine f-vectors."""

from __future__ import annotations

import hashlib
import itertools
import json
import os
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Iterable, Iterator, Optional, Sequence, Union

from .characterization import check_fine_f_colored
from .combinatorics import IntTuple, binom_tuple, box, colex_unrank
from .complex import ColoredComplex, FineVector, color_counts, fine_f_vector, maximal_sets
from .errors import DomainError, ResourceError
from .structure import is_color_compressed, is_color_shifted

MAX_FACES = 24

Filter = Union[str, Callable[[ColoredComplex], bool]]

_NAMED_FILTERS: dict[str, Callable[[ColoredComplex], bool]] = {
    "pure": lambda C: bool(C.facets) and C.is_pure(),
    "balanced": lambda C: C.is_balanced(),
    "color-shifted": is_color_shifted,
    "color-compressed": is_color_compressed,
    "full-support": lambda C: all(C.vertices_of_color(c) for c in range(1, C.n + 1)),
    "all-vertices": lambda C: all(len(C.vertices_of_color(c)) == C.lam[c - 1] for c in range(1, C.n + 1)),
}


def cache_dir() -> Path:
    return Path(os.environ.get("FLAGREP_CACHE_DIR", Path.home() / ".cache" / "flagrep"))


def admissible_faces(a: Sequence[int], lam: Sequence[int]) -> list[frozenset]:
    """Non-empty faces on ``([lam_1]_1, ..., [lam_n]_n)`` meeting color ``i`` in at most ``a_i`` vertices."""
    pieces = []
    for color, (size, bound) in enumerate(zip(lam, a), start=1):
        options = [frozenset((r, color) for r in combo) for k in range(min(size, bound) + 1) for combo in itertools.combinations(range(1, size + 1), k)]
        pieces.append(options)
    faces = [frozenset().union(*choice) for choice in itertools.product(*pieces)]
    faces = [f for f in faces if f]
    return sorted(faces, key=lambda f: (len(f), sorted(f)))


def _down_sets(faces: list[frozenset]) -> Iterator[list[frozenset]]:
    index = {f: i for i, f in enumerate(faces)}
    boundary = [[index[f - {v}] for v in f if len(f) > 1] for f in faces]
    chosen = [False] * len(faces)

    def walk(position: int) -> Iterator[list[frozenset]]:
        if position == len(faces):
            yield [faces[i] for i in range(len(faces)) if chosen[i]]
            return
        yield from walk(position + 1)
        if all(chosen[j] for j in boundary[position]):
            chosen[position] = True
            yield from walk(position + 1)
            chosen[position] = False

    yield from walk(0)


def canonical_form(C: ColoredComplex) -> tuple:
    """Minimum sorted facet list over rank permutations inside each color class."""
    best = None
    for perms in itertools.product(*(itertools.permutations(range(1, size + 1)) for size in C.lam)):
        relabeled = sorted(tuple(sorted((perms[c - 1][r - 1], c) for r, c in f)) for f in C.facets)
        key = tuple(relabeled)
        if best is None or key < best:
            best = key
    return best


def _resolve(filters: Iterable[Filter]) -> list[Callable[[ColoredComplex], bool]]:
    out = []
    for item in filters:
        if callable(item):
            out.append(item)
        elif item in _NAMED_FILTERS:
            out.append(_NAMED_FILTERS[item])
        else:
            raise DomainError(f"unknown filter {item!r}; known: {sorted(_NAMED_FILTERS)}")
    return out


def enumerate_complexes(a: Sequence[int], lam: Sequence[int], filters: Iterable[Filter] = (), facet_count: Optional[int] = None, up_to_isomorphism: bool = False, require_all_vertices: bool = True) -> Iterator[ColoredComplex]:
    """All ``a``-colored complexes on the partition ``lam``.

    By default every vertex of the partition must appear; ``require_all_vertices=False``
    also yields complexes on a subset of the vertices (including the one with only the empty face).
    """
    a, lam = tuple(a), tuple(lam)
    if len(a) != len(lam) or any(v < 0 for v in a + lam):
        raise DomainError("type and lambda must be non-negative tuples of equal length")
    faces = admissible_faces(a, lam)
    if len(faces) > MAX_FACES:
        raise ResourceError(f"{len(faces)} admissible faces exceed the limit of {MAX_FACES}")
    checks = _resolve(filters)
    if require_all_vertices:
        checks.insert(0, _NAMED_FILTERS["all-vertices"])
    seen = set()
    for family in _down_sets(faces):
        facets = maximal_sets(family) if family else frozenset([frozenset()])
        if facet_count is not None and len(facets) != facet_count:
            continue
        C = ColoredComplex(a, lam, facets)
        if not all(check(C) for check in checks):
            continue
        if up_to_isomorphism:
            key = canonical_form(C)
            if key in seen:
                continue
            seen.add(key)
        yield C


def _cache_path(kind: str, key: dict) -> Path:
    digest = hashlib.sha256(json.dumps(key, sort_keys=True).encode()).hexdigest()[:16]
    return cache_dir() / f"{kind}-{digest}.json"


def achievable_fine_f(a: Sequence[int], lam_max: Sequence[int], use_cache: bool = True) -> set[FineVector]:
    """Fine f-vectors of all ``a``-colored complexes with at least one vertex per color and ``lam <= lam_max``."""
    a, lam_max = tuple(a), tuple(lam_max)
    path = _cache_path("achievable", {"a": list(a), "lambda_max": list(lam_max)})
    if use_cache and path.exists():
        try:
            rows = json.loads(path.read_text())
            return {FineVector(a, dict(zip(box(a), row))) for row in rows}
        except (OSError, ValueError):
            pass
    found = set()
    for C in enumerate_complexes(a, lam_max, ["full-support"], require_all_vertices=False):
        found.add(fine_f_vector(C))
    if use_cache:
        try:
            path.parent.mkdir(parents=True, exist_ok=True)
            path.write_text(json.dumps(sorted(list(f.as_tuple()) for f in found)))
        except OSError:
            pass
    return found


def candidate_arrays(a: Sequence[int], lam_max: Sequence[int]) -> Iterator[FineVector]:
    """Arrays with ``f_0 = 1``, ``1 <= f_{delta_i} <= lam_max_i`` and each ``f_b`` at most the face capacity."""
    a, lam_max = tuple(a), tuple(lam_max)
    n = len(a)
    singles = [tuple(1 if j == i else 0 for j in range(n)) for i in range(n)]
    rest = [b for b in box(a) if sum(b) >= 2]
    for counts in itertools.product(*(range(1, m + 1) for m in lam_max)):
        ranges = [range(binom_tuple(counts, b) + 1) for b in rest]
        for values in itertools.product(*ranges):
            entries = {(0,) * n: 1}
            entries.update(zip(singles, counts))
            entries.update(zip(rest, values))
            yield FineVector(a, entries)


def _feasible_chunk(a: IntTuple, arrays: list[IntTuple]) -> list[IntTuple]:
    keys = box(a)
    return [row for row in arrays if check_fine_f_colored(a, dict(zip(keys, row)))[0]]


def feasible_arrays(a: Sequence[int], lam_max: Sequence[int], jobs: int = 1) -> set[FineVector]:
    a = tuple(a)
    rows = [f.as_tuple() for f in candidate_arrays(a, lam_max)]
    if jobs > 1 and len(rows) > 1:
        size = max(1, len(rows) // (4 * jobs))
        chunks = [rows[i:i + size] for i in range(0, len(rows), size)]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            accepted = [row for part in pool.map(_feasible_chunk, itertools.repeat(a), chunks) for row in part]
    else:
        accepted = _feasible_chunk(a, rows)
    return {FineVector(a, dict(zip(box(a), row))) for row in accepted}


@dataclass(frozen=True)
class CrossValidationReport:
    a: IntTuple
    lam_max: IntTuple
    achievable: int
    feasible: int
    missing: tuple = field(default=())
    spurious: tuple = field(default=())

    @property
    def match(self) -> bool:
        return not self.missing and not self.spurious

    def to_json(self) -> dict:
        return {
            "a": list(self.a),
            "lambda_max": list(self.lam_max),
            "achievable": self.achievable,
            "feasible": self.feasible,
            "match": self.match,
            "missing": [list(row) for row in self.missing],
            "spurious": [list(row) for row in self.spurious],
        }


def cross_validate(a: Sequence[int], lam_max: Sequence[int], jobs: int = 1, use_cache: bool = True) -> CrossValidationReport:
    """Compare brute-force achievable fine f-vectors with the characterization's feasible set.

    ``missing`` lists achievable arrays the characterization rejects; ``spurious`` lists
    accepted arrays no complex realizes.
    """
    a, lam_max = tuple(a), tuple(lam_max)
    achievable = {f.as_tuple() for f in achievable_fine_f(a, lam_max, use_cache)}
    feasible = {f.as_tuple() for f in feasible_arrays(a, lam_max, jobs)}
    return CrossValidationReport(a, lam_max, len(achievable), len(feasible), tuple(sorted(achievable - feasible)), tuple(sorted(feasible - achievable)))


def census(a: Sequence[int], lam: Sequence[int], filters: Iterable[Filter] = ("pure", "balanced"), up_to_isomorphism: bool = True) -> dict[int, int]:
    """Number of complexes per facet count on the exact partition ``lam``."""
    counts: Counter = Counter()
    for C in enumerate_complexes(a, lam, filters, up_to_isomorphism=up_to_isomorphism):
        counts[len(C.facets)] += 1
    return dict(sorted(counts.items()))


def compression_census(a: Sequence[int], lam: Sequence[int]) -> dict[str, int]:
    """Counts of complexes that are color-shifted, color-compressed, and both."""
    shifted = compressed = both = total = 0
    for C in enumerate_complexes(a, lam, require_all_vertices=False):
        total += 1
        s, c = is_color_shifted(C), is_color_compressed(C)
        shifted += s
        compressed += c
        both += s and c
    return {"total": total, "color_shifted": shifted, "color_compressed": compressed, "both": both}


def lattice_down_sets(n: int, size: int) -> list[frozenset]:
    """Down-sets of ``N^n`` (componentwise order) with exactly ``size`` elements."""
    layer = {frozenset()}
    for _ in range(size):
        grown = set()
        for family in layer:
            candidates = {(0,) * n} if not family else {tuple(v + (1 if j == i else 0) for j, v in enumerate(p)) for p in family for i in range(n)}
            for point in candidates - family:
                lower = [tuple(v - (1 if j == i else 0) for j, v in enumerate(point)) for i in range(n) if point[i] > 0]
                if all(q in family for q in lower):
                    grown.add(family | {point})
        layer = grown
    return sorted(layer, key=lambda family: sorted(family))


def compressed_complex_from_down_set(a: Sequence[int], family: Iterable[IntTuple]) -> ColoredComplex:
    """Facets whose color-``i`` part is the colex subset of rank ``p_i`` for each point ``p``."""
    a = tuple(a)
    facets = []
    for point in family:
        facet = frozenset((r, color) for color, (rank, k) in enumerate(zip(point, a), start=1) for r in colex_unrank(rank, k))
        facets.append(facet)
    lam = tuple(max((r for f in facets for r, c in f if c == color), default=1) for color in range(1, len(a) + 1))
    return ColoredComplex(a, lam, frozenset(facets))


def pure_compressed_complexes(a: Sequence[int], N: int) -> list[ColoredComplex]:
    """Pure color-compressed ``a``-balanced complexes with ``N`` facets, one per down-set of ``N^n``."""
    a = tuple(a)
    if any(v < 1 for v in a):
        raise DomainError("type entries must be positive")
    return [compressed_complex_from_down_set(a, family) for family in lattice_down_sets(len(a), N)]


def facet_type_counts(C: ColoredComplex) -> Counter:
    return Counter(color_counts(f, C.n) for f in C.facets)
