"""Regenerate the reference figures and tables and compare them with committed expectations."""

from __future__ import annotations

import itertools
import json
from importlib import resources
from typing import Any, Mapping

from .characterization import check_flag_f_cm, enumerate_reps
from .combinatorics import classic_macaulay_rep
from .complex import complex_from_json, fine_f_vector
from .macaulay_tree import MacaulayTree, partial_diff, realize, tree_to_text
from .shedding import fine_f_from_tree, induced_macaulay_tree, shedding_tree

TARGETS = ("fig1", "fig2", "fig7", "example-flag-tables")


def expectations() -> dict:
    return json.loads(resources.files("flagrep").joinpath("data/expectations.json").read_text())


def parse_index(text: str) -> tuple[int, ...]:
    return tuple(int(v) for v in text.split(",")) if text.strip() else ()


def flag_matrix(d: int, values: Mapping[tuple[int, ...], int]) -> tuple[int, ...]:
    """Pairs then singletons, maximized over color permutations with decreasing pair entries."""
    best = None
    pairs = list(itertools.combinations(range(1, d + 1), 2))
    for perm in itertools.permutations(range(1, d + 1)):
        moved = {tuple(sorted(perm[i - 1] for i in key)): value for key, value in values.items()}
        row = tuple(moved.get(p, 0) for p in pairs)
        if any(x < y for x, y in zip(row, row[1:])):
            continue
        candidate = row + tuple(moved.get((i,), 0) for i in range(1, d + 1))
        if best is None or candidate > best:
            best = candidate
    return best


def flag_values_of(alpha: MacaulayTree) -> dict[tuple[int, ...], int]:
    d = alpha.n
    out = {}
    for size in range(d + 1):
        for subset in itertools.combinations(range(1, d + 1), size):
            shift = tuple(0 if i in subset else -1 for i in range(1, d + 1))
            out[subset] = partial_diff(alpha, shift)
    return out


def _fig1(expected: dict) -> dict:
    C = complex_from_json(expected)
    tree = induced_macaulay_tree(shedding_tree(C))
    counts = fine_f_vector(realize(tree))
    return {
        "tree": tree_to_text(tree),
        "N": tree.N,
        "diff_minus_1": partial_diff(tree, (-1,)),
        "diff_minus_2": partial_diff(tree, (-2,)),
        "edges": counts[(2,)],
        "vertices": counts[(1,)],
        "classic_terms": [list(t) for t in classic_macaulay_rep(6, 3).terms],
    }


def _fig2(expected: dict) -> dict:
    S = shedding_tree(complex_from_json(expected), verify=True)
    return {
        "tree": tree_to_text(induced_macaulay_tree(S)),
        "splits": [list(v) for v in S.splits],
        "fine_f": {",".join(map(str, b)): fine_f_from_tree(S, b) for b in ((1, 1), (1, 0), (0, 1))},
    }


def _fig7(expected: dict) -> dict:
    reps = enumerate_reps(tuple(expected["type"]), expected["N"])
    return {"count": len(reps), "trees": sorted(tree_to_text(t) for t in reps)}


def _flag_tables(expected: dict) -> dict:
    d, top = expected["d"], expected["top"]
    matrices = set()
    for alpha in enumerate_reps((1,) * d, top):
        row = flag_matrix(d, flag_values_of(alpha))
        matrices.add(row)
    rejected = {parse_index(k): v for k, v in expected["rejected"].items()}
    return {
        "matrices": sorted([list(m[:3]), list(m[3:])] for m in matrices),
        "rejected_feasible": check_flag_f_cm(d, rejected)[0],
    }


def _expected_view(target: str, expected: dict) -> dict:
    if target == "fig1":
        return {
            "tree": expected["tree"],
            "N": expected["N"],
            "diff_minus_1": expected["diff_minus_1"],
            "diff_minus_2": expected["diff_minus_2"],
            "edges": expected["diff_minus_1"],
            "vertices": expected["diff_minus_2"],
            "classic_terms": expected["classic_terms"],
        }
    if target == "fig2":
        return {"tree": expected["tree"], "splits": expected["splits"], "fine_f": expected["fine_f"]}
    if target == "fig7":
        return {"count": len(expected["trees"]), "trees": sorted(expected["trees"])}
    return {"matrices": sorted(expected["matrices"]), "rejected_feasible": False}


def reproduce(target: str) -> dict[str, Any]:
    """Computed and expected views of one target plus whether they agree."""
    data = expectations()[target]
    builders = {"fig1": _fig1, "fig2": _fig2, "fig7": _fig7, "example-flag-tables": _flag_tables}
    computed = builders[target](data)
    expected = _expected_view(target, data)
    return {"target": target, "match": computed == expected, "computed": computed, "expected": expected}
