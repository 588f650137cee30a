from __future__ import annotations

import json
from importlib import resources

import pytest

from flagrep.complex import ColoredComplex, complex_from_json, from_facets
from flagrep.macaulay_tree import MacaulayTree, tree_from_text


def expectation(target: str) -> dict:
    return json.loads(resources.files("flagrep").joinpath("data/expectations.json").read_text())[target]


@pytest.fixture(autouse=True, scope="session")
def isolated_cache(tmp_path_factory):
    """Keep oracle caches out of the user's home directory."""
    patcher = pytest.MonkeyPatch()
    patcher.setenv("FLAGREP_CACHE_DIR", str(tmp_path_factory.mktemp("cache")))
    yield
    patcher.undo()


@pytest.fixture
def sigma() -> ColoredComplex:
    return complex_from_json(expectation("fig2"))


@pytest.fixture
def six_triangles() -> ColoredComplex:
    return complex_from_json(expectation("fig1"))


@pytest.fixture
def one_color_tree() -> MacaulayTree:
    return tree_from_text((3,), "[1 (4) [1 (2) (1)]]")


@pytest.fixture
def unshifted_tree() -> MacaulayTree:
    return tree_from_text((1, 1), "[2 [2 (3,1) (1,1)] (2,2)]")


@pytest.fixture
def alpha_prime_tree() -> MacaulayTree:
    return tree_from_text((1, 1), "[2 [2 (5,2) (4,2)] (3,3)]")


@pytest.fixture
def alpha_tree() -> MacaulayTree:
    return tree_from_text((2, 2), "[2 (4,3) [1 (2,3) (1,3)]]")


@pytest.fixture
def unit_reps_of_five() -> list[MacaulayTree]:
    return [tree_from_text((1, 1, 1), text) for text in expectation("fig7")["trees"]]


def empty_triangle() -> ColoredComplex:
    return from_facets((2,), (3,), [[(1, 1), (2, 1)], [(2, 1), (3, 1)], [(1, 1), (3, 1)]])


ACCEPTANCE_RESULTS: dict[int, tuple[str, str]] = {}


def record_acceptance(number: int, title: str, ok: bool, detail: str = "") -> None:
    """Store and print one PASS/FAIL line for an acceptance criterion."""
    line = f"criterion {number:2d} {'PASS' if ok else 'FAIL'}: {title}" + (f" ({detail})" if detail else "")
    ACCEPTANCE_RESULTS[number] = ("PASS" if ok else "FAIL", line)
    print(line)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE_RESULTS):
        terminalreporter.write_line(ACCEPTANCE_RESULTS[number][1])
