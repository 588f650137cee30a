"""Shedding trees of pure color-shifted balanced complexes and their induced Macaulay trees."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence, Union

from .combinatorics import IntTuple, binom_tuple, box, kappa, leq
from .complex import ColoredComplex, Vertex, deletion_facets, fine_f_vector, is_t_factorizable, link_facets, sort_face
from .errors import DomainError, StructureError
from .macaulay_tree import MacaulayTree, Node, tuple_text
from .structure import is_color_compressed, is_color_shifted

TERMINAL_POLICIES = ("dfs-first", "dfs-last")


@dataclass(frozen=True)
class ShedTerminal:
    """Terminal label: sub-type, sub-complex, vertex partition and its size vector."""

    type_a: IntTuple
    complex: ColoredComplex
    partition: tuple[tuple[Vertex, ...], ...]
    lam: IntTuple


@dataclass(frozen=True)
class ShedSplit:
    """A trivalent vertex: deletion of ``vertex`` on the left, its link on the right."""

    color: int
    vertex: Vertex
    left: "ShedNode"
    right: "ShedNode"


ShedNode = Union[ShedTerminal, ShedSplit]


@dataclass(frozen=True)
class SheddingTree:
    a: IntTuple
    root: ShedNode
    splits: tuple[Vertex, ...] = ()
    history: tuple[MacaulayTree, ...] = ()

    def terminals(self) -> list[ShedTerminal]:
        return list(_terminals(self.root))


def _terminals(node: ShedNode):
    if isinstance(node, ShedTerminal):
        yield node
    else:
        yield from _terminals(node.left)
        yield from _terminals(node.right)


def _make_terminal(type_a: IntTuple, facets: frozenset, lam_source: ColoredComplex, partition: Sequence[Sequence[Vertex]], fallback: IntTuple) -> ShedTerminal:
    complex_ = ColoredComplex(type_a, lam_source.lam, facets)
    used = set(complex_.vertices)
    parts = tuple(tuple(v for v in part if v in used) for part in partition)
    return ShedTerminal(type_a, complex_, parts, kappa(parts, fallback))


def _split(term: ShedTerminal, t: int, verify: bool) -> ShedSplit:
    C = term.complex
    vertex = C.vertices_of_color(t)[-1]
    single = frozenset([vertex])
    fallback = tuple(v - (1 if i == t - 1 else 0) for i, v in enumerate(term.lam))
    lowered = tuple(v - (1 if i == t - 1 else 0) for i, v in enumerate(term.type_a))
    left = _make_terminal(term.type_a, deletion_facets(C.facets, single), C, term.partition, fallback)
    right = _make_terminal(lowered, link_facets(C.facets, single), C, term.partition, fallback)
    if verify:
        parent_f, left_f, right_f = fine_f_vector(C), fine_f_vector(left.complex), fine_f_vector(right.complex)
        for b in box(term.type_a):
            below = tuple(v - (1 if i == t - 1 else 0) for i, v in enumerate(b))
            expected = left_f[b] + (right_f[below] if min(below) >= 0 else 0)
            if parent_f[b] != expected:
                raise StructureError(f"face counts not conserved at b={b} when shedding {vertex}")
    return ShedSplit(t, vertex, left, right)


def _first_unfactorizable(node: ShedNode, t: int, last: bool) -> Optional[list[str]]:
    if isinstance(node, ShedTerminal):
        return None if is_t_factorizable(node.complex, t) else []
    order = (("r", node.right), ("l", node.left)) if last else (("l", node.left), ("r", node.right))
    for step, child in order:
        found = _first_unfactorizable(child, t, last)
        if found is not None:
            return [step] + found
    return None


def _replace_at(node: ShedNode, steps: Sequence[str], fn) -> ShedNode:
    if not steps:
        return fn(node)
    if steps[0] == "l":
        return ShedSplit(node.color, node.vertex, _replace_at(node.left, steps[1:], fn), node.right)
    return ShedSplit(node.color, node.vertex, node.left, _replace_at(node.right, steps[1:], fn))


def _to_node(node: ShedNode) -> Node:
    if isinstance(node, ShedTerminal):
        return ("L", node.lam)
    return ("Y", node.color, _to_node(node.left), _to_node(node.right))


def shedding_tree(C: ColoredComplex, policy: str = "dfs-first", keep_history: bool = False, verify: bool = False) -> SheddingTree:
    """Split terminals at their maximal color-``t`` vertex until every terminal is ``t``-factorizable, for ``t = n..1``."""
    if policy not in TERMINAL_POLICIES:
        raise DomainError(f"unknown terminal policy {policy!r}")
    if not C.facets or not C.is_pure() or not C.is_balanced():
        raise StructureError("shedding needs a non-void pure balanced complex")
    if not (is_color_shifted(C) or is_color_compressed(C)):
        raise StructureError("shedding needs a color-shifted or color-compressed complex")
    partition = tuple(tuple(C.vertices_of_color(c)) for c in range(1, C.n + 1))
    fallback = tuple(len(part) if part else max(C.lam[i], 1) for i, part in enumerate(partition))
    root: ShedNode = ShedTerminal(C.type_a, C, partition, fallback)
    splits: list[Vertex] = []
    history: list[MacaulayTree] = []
    for t in range(C.n, 0, -1):
        while True:
            steps = _first_unfactorizable(root, t, policy == "dfs-last")
            if steps is None:
                break
            if keep_history:
                history.append(MacaulayTree(C.type_a, _to_node(root)))
            holder: list[Vertex] = []

            def split_here(term: ShedTerminal) -> ShedNode:
                node = _split(term, t, verify)
                holder.append(node.vertex)
                return node

            root = _replace_at(root, steps, split_here)
            splits.extend(holder)
    if keep_history:
        history.append(MacaulayTree(C.type_a, _to_node(root)))
    return SheddingTree(C.type_a, root, tuple(splits), tuple(history))


def induced_macaulay_tree(S: SheddingTree) -> MacaulayTree:
    """Copy trivalent colors and replace each terminal by its size vector."""
    return MacaulayTree(S.a, _to_node(S.root))


def fine_f_from_tree(S: SheddingTree, b: Sequence[int]) -> int:
    """``sum over terminals of C(lam', a' + b - a)``."""
    b = tuple(b)
    if len(b) != len(S.a) or not leq(b, S.a):
        raise DomainError(f"need b <= {S.a}, got {b}")
    total = 0
    for term in S.terminals():
        shift = tuple(x + y - z for x, y, z in zip(term.type_a, b, S.a))
        if min(shift) >= 0:
            total += binom_tuple(term.lam, shift)
    return total


def _vertex_text(v: Vertex) -> str:
    return f"{v[0]}_{v[1]}"


def _terminal_text(term: ShedTerminal, verbose: bool) -> str:
    if not verbose:
        return tuple_text(term.lam)
    facets = " ".join("{" + ",".join(_vertex_text(v) for v in sort_face(f)) + "}" for f in sorted(term.complex.facets, key=sort_face))
    parts = "|".join(",".join(_vertex_text(v) for v in part) for part in term.partition)
    return f"a'={tuple_text(term.type_a)} facets={facets} parts={parts} lam'={tuple_text(term.lam)}"


def shedding_to_dot(S: SheddingTree, verbose_labels: bool = False, name: str = "shedding_tree") -> str:
    """Graphviz source: colors beside trivalent vertices, size vectors (or full labels) at terminals."""
    lines = [f"digraph {name} {{", "  node [shape=point];", "  edge [arrowhead=none];", f'  n0 [xlabel="{tuple_text(S.a)}"];']
    counter = [0]

    def emit(node: ShedNode, parent: int) -> None:
        counter[0] += 1
        index = counter[0]
        if isinstance(node, ShedTerminal):
            text = _terminal_text(node, verbose_labels).replace('"', "'")
        else:
            text = f"{node.color}" + (f" ({_vertex_text(node.vertex)})" if verbose_labels else "")
        lines.append(f'  n{index} [xlabel="{text}"];')
        lines.append(f"  n{parent} -> n{index};")
        if isinstance(node, ShedSplit):
            emit(node.left, index)
            emit(node.right, index)

    emit(S.root, 0)
    lines.append("}")
    return "\n".join(lines) + "\n"


def shedding_to_json(S: SheddingTree) -> dict:
    nodes = [{"id": 0, "kind": "root", "label": list(S.a), "children": [1]}]

    def emit(node: ShedNode, parent: int) -> int:
        index = len(nodes)
        entry: dict = {"id": index, "parent": parent}
        nodes.append(entry)
        if isinstance(node, ShedTerminal):
            entry.update(
                kind="terminal",
                label=list(node.lam),
                type=list(node.type_a),
                partition=[[list(v) for v in part] for part in node.partition],
                facets=[[list(v) for v in f] for f in node.complex.facet_list()],
                children=[],
            )
        else:
            entry.update(kind="trivalent", label=node.color, vertex=list(node.vertex))
            entry["children"] = [emit(node.left, index), emit(node.right, index)]
        return index

    emit(S.root, 0)
    return {"a": list(S.a), "splits": [list(v) for v in S.splits], "nodes": nodes}
