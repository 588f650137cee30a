from __future__ import annotations

import itertools
import json
import random
import time
from collections import Counter

import pytest

from flagrep.characterization import check_fine_f_colored, check_flag_f_cm, enumerate_reps, kruskal_katona_feasible
from flagrep.cli import main
from flagrep.combinatorics import classic_macaulay_rep
from flagrep.complex import complex_from_json, fine_f_vector
from flagrep.macaulay_tree import (
    condensation,
    derived_labels,
    partial_diff,
    realize,
    tree_from_text,
    tree_to_text,
    twin,
    wedge,
)
from flagrep.multicomplex import compress_t, from_monomials, score
from flagrep.oracle import cross_validate, enumerate_complexes, pure_compressed_complexes
from flagrep.repro import flag_matrix, flag_values_of
from flagrep.shedding import fine_f_from_tree, induced_macaulay_tree, shedding_tree
from flagrep.structure import is_color_shifted, is_macaulay_decomposable, is_vertex_decomposable

from conftest import expectation, record_acceptance

ORACLE_RANGES = [((1, 1), (2, 2)), ((1, 1), (3, 2)), ((1, 1, 1), (2, 2, 1)), ((2,), (4,)), ((2, 1), (3, 2))]


def leaf_sequences(texts):
    """Multiset of leaf-label sequences, read left to right."""
    return Counter(tuple(tuple(leaf.split(",")) for leaf in text.replace("[", " ").replace("]", " ").split("(")[1:]) for text in texts)


def finish(number, title, ok, start, budget, detail=""):
    elapsed = time.perf_counter() - start
    within = elapsed < budget
    record_acceptance(number, title, ok and within, f"{elapsed:.1f}s of {budget}s{'; ' + detail if detail else ''}")
    assert ok, detail
    assert within, f"took {elapsed:.1f}s, budget {budget}s"


def test_criterion_01_unit_type_census(capsys):
    """All representations of 5 for three colors from the command line."""
    start = time.perf_counter()
    code = main(["enum-reps", "--type", "1,1,1", "--n", "5"])
    data = json.loads(capsys.readouterr().out)
    texts = [t["text"] for t in data["trees"]]
    expected = expectation("fig7")["trees"]
    ok = code == 0 and data["count"] == 24 and leaf_sequences(texts) == leaf_sequences(expected) and sorted(texts) == sorted(expected)
    with capsys.disabled():
        finish(1, "24 representations of 5 for type (1,1,1) match the reference list", ok, start, 5, f"count {data['count']}")


def test_criterion_02_flag_tables():
    """Feasible flag f-vectors with top entry 5 are the six listed matrices; F is rejected."""
    start = time.perf_counter()
    data = expectation("example-flag-tables")
    images = [flag_values_of(alpha) for alpha in enumerate_reps((1, 1, 1), 5)]
    accepted = all(check_flag_f_cm(3, values)[0] for values in images)
    matrices = sorted({flag_matrix(3, values) for values in images})
    expected = sorted(tuple(row[0] + row[1]) for row in data["matrices"])
    rejected = {tuple(int(v) for v in key.split(",")) if key else (): value for key, value in data["rejected"].items()}
    ok = accepted and matrices == expected and len(matrices) == 6 and not check_flag_f_cm(3, rejected)[0]
    finish(2, "flag f-vectors with f_[3] = 5 are the six listed matrices and F is rejected", ok, start, 30, f"{len(matrices)} matrices")


def test_criterion_03_shedding_running_example():
    """The shedding tree of the two-colored example, node for node."""
    start = time.perf_counter()
    data = expectation("fig2")
    S = shedding_tree(complex_from_json(data), verify=True)
    root = S.root
    shape_ok = (
        root.color == 2
        and root.vertex == (4, 2)
        and root.left.color == 2
        and root.left.vertex == (3, 2)
        and [t.lam for t in S.terminals()] == [(3, 2), (1, 2), (1, 3)]
        and [t.type_a for t in S.terminals()] == [(1, 1), (1, 0), (1, 0)]
        and tree_to_text(induced_macaulay_tree(S)) == data["tree"]
    )
    counts = [fine_f_from_tree(S, b) for b in ((1, 1), (1, 0), (0, 1))]
    finish(3, "shedding tree of the two-colored example and counts (8,3,4)", shape_ok and counts == [8, 3, 4], start, 1, f"counts {counts}")


def test_criterion_04_one_color_example():
    """Six triangles on five vertices: tree, classic expansion and boundary counts."""
    start = time.perf_counter()
    data = expectation("fig1")
    C = complex_from_json(data)
    M = induced_macaulay_tree(shedding_tree(C))
    labels = derived_labels(M)
    terminals = M.arena.terminals
    classic = classic_macaulay_rep(6, 3).terms
    data_ok = [(M.arena.label[u][0], labels.nu[u][0]) for u in terminals] == list(classic)
    F = fine_f_vector(realize(M))
    ok = (
        tree_to_text(M) == data["tree"]
        and M.N == 6
        and data_ok
        and partial_diff(M, (-1,)) == 9 == F[(2,)]
        and partial_diff(M, (-2,)) == 5 == F[(1,)]
        and realize(M) == C
    )
    finish(4, "one-color tree of 6, classic expansion, boundaries 9 and 5", ok, start, 1)


def test_criterion_05_tree_operations():
    """Condensation, twin and wedge on the reference trees."""
    start = time.perf_counter()
    three = tree_from_text((2, 2), "[2 (4,3) [1 (2,3) (2,3)]]")
    condensed = condensation(three)
    alpha = tree_from_text((2, 2), "[2 (4,3) [1 (2,3) (1,3)]]")
    alpha_prime = tree_from_text((1, 1), "[2 [2 (5,2) (4,2)] (3,3)]")
    twinned = twin(alpha, (1, 1))
    glued = wedge(alpha, alpha_prime)
    ok = (
        tree_to_text(condensed) == "[2 (4,3) (3,3)]"
        and condensed.N == three.N == 27
        and tree_to_text(twinned) == "[2 (4,3) (3,3)]"
        and twinned.a == (1, 1)
        and tree_to_text(glued) == "[3 [2 [2 (5,2,2) (4,2,2)] (3,3,2)] [2 (4,3,1) (3,3,1)]]"
    )
    finish(5, "condensation, twin and wedge give the corrected reference trees", ok, start, 1)


def test_criterion_06_oracle_equivalence():
    """Brute-force achievable fine f-vectors equal the characterized set."""
    start = time.perf_counter()
    details, ok = [], True
    for a, lam in ORACLE_RANGES:
        report = cross_validate(a, lam, use_cache=False)
        ok = ok and report.match
        details.append(f"{a}/{lam}: {report.achievable}={report.feasible}" if report.match else f"{a}/{lam}: mismatch")
    finish(6, "achievable and characterized fine f-vectors agree on all oracle ranges", ok, start, 600, "; ".join(details))


def _facet_key(C):
    return frozenset(C.facets)


def test_criterion_07_bijection():
    """Representation counts equal compressed complex counts, and shedding and realization invert each other."""
    start = time.perf_counter()
    ok = True
    for a in [(1, 1), (2, 1), (1, 1, 1)]:
        for N in range(1, 7):
            reps = enumerate_reps(a, N)
            complexes = pure_compressed_complexes(a, N)
            ok = ok and len(reps) == len(complexes)
            ok = ok and all(realize(induced_macaulay_tree(shedding_tree(C))) == C for C in complexes)
            ok = ok and all(induced_macaulay_tree(shedding_tree(realize(M))) == M for M in reps)
            ok = ok and {_facet_key(realize(M)) for M in reps} == {_facet_key(C) for C in complexes}
    for a, lam_max in [((1, 1), (3, 3)), ((2, 1), (3, 2)), ((1, 1, 1), (2, 2, 1))]:
        found: Counter = Counter()
        for lam in itertools.product(*(range(v, m + 1) for v, m in zip(a, lam_max))):
            for C in enumerate_complexes(a, lam, ["pure", "balanced", "color-compressed"]):
                found[len(C.facets)] += 1
        for N in range(1, 7):
            bounded = [C for C in pure_compressed_complexes(a, N) if all(x <= y for x, y in zip(C.lam, lam_max))]
            ok = ok and found[N] == len(bounded)
    finish(7, "representation counts match compressed complexes and round trips are identities", ok, start, 600)


def test_criterion_08_kruskal_katona():
    """One-color feasibility agrees with the classic boundary bound on every small f-vector."""
    start = time.perf_counter()
    disagreements = total = 0
    for d in range(1, 5):
        for f in itertools.product(range(36), repeat=d):
            total += 1
            values = {(0,): 1}
            values.update({(k + 1,): v for k, v in enumerate(f)})
            if check_fine_f_colored((d,), values)[0] != kruskal_katona_feasible(f):
                disagreements += 1
    finish(8, "one-color feasibility equals the Kruskal-Katona bound for entries <= 35, d <= 4", disagreements == 0, start, 60, f"{total} arrays, {disagreements} disagreements")


def test_criterion_09_structural_implications():
    """Pure shifted balanced complexes are Macaulay decomposable, which implies vertex decomposable."""
    start = time.perf_counter()
    counterexamples = checked = 0
    for a, lam in ORACLE_RANGES:
        for C in enumerate_complexes(a, lam, require_all_vertices=False):
            if not C.facets:
                continue
            md = is_macaulay_decomposable(C)[0]
            if md and not is_vertex_decomposable(C)[0]:
                counterexamples += 1
            if C.is_pure() and C.is_balanced() and is_color_shifted(C):
                checked += 1
                if not md:
                    counterexamples += 1
    finish(9, "pure shifted balanced implies Macaulay decomposable implies vertex decomposable", counterexamples == 0, start, 300, f"{checked} shifted complexes, {counterexamples} counterexamples")


def _random_multicomplex(rng: random.Random):
    n = rng.randint(1, 3)
    counts = [rng.randint(1, 4) for _ in range(n)]
    caps = [sorted((rng.randint(1, 2) for _ in range(k)), reverse=True) for k in counts]
    flat = [c for group in caps for c in group]
    gens = [tuple(rng.randint(0, c) for c in flat) for _ in range(rng.randint(1, 5))]
    return from_monomials(counts, caps, gens)


def test_criterion_10_compression_invariance():
    """Seeded random multicomplexes: every compression keeps counts and closure, and lowers the score unless fixed."""
    start = time.perf_counter()
    rng = random.Random(20240611)
    failures = applications = 0
    for _ in range(1000):
        M = _random_multicomplex(rng)
        for t in range(1, M.n + 1):
            applications += 1
            result = compress_t(M, t)
            if result.fine_f_vector() != M.fine_f_vector() or not result.is_divisor_closed():
                failures += 1
            if result != M and not score(result) < score(M):
                failures += 1
            if result == M and score(result) != score(M):
                failures += 1
    finish(10, "compression preserves fine f-vectors and closure and strictly lowers the score", failures == 0, start, 60, f"{applications} applications, {failures} failures")
