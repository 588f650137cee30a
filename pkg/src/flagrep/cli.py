"""Command-line interface: JSON in, canonical JSON out, feasibility as exit status."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Any, Optional, Sequence

from . import characterization, oracle, repro
from .complex import complex_from_json, complex_to_json, fine_f_vector, fine_h_vector
from .errors import FlagrepError, ParseError
from .macaulay_tree import (
    condensation,
    is_compatible,
    is_compressed_like,
    is_condensed,
    partial_diff,
    preceq,
    realize,
    tree_from_json,
    tree_from_text,
    tree_to_json,
    tree_to_text,
    twin,
    validate,
    wedge,
)
from .multicomplex import color_compress_fixpoint, compress_t, multicomplex_from_json, multicomplex_to_json
from .shedding import TERMINAL_POLICIES, induced_macaulay_tree, shedding_to_dot, shedding_to_json, shedding_tree
from .structure import POLICIES, is_color_compressed, is_color_shifted, is_macaulay_decomposable, is_vertex_decomposable

EXIT_OK, EXIT_FALSE, EXIT_ERROR = 0, 1, 2


def parse_tuple(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(v) for v in text.split(",") if v.strip() != "")
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from exc


def load_json(path: str) -> Any:
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"{path}: {exc.strerror}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from exc


def emit(payload: Any) -> None:
    sys.stdout.write(json.dumps(payload, sort_keys=True, indent=2) + "\n")


def fine_to_json(values) -> dict:
    return {"values": {",".join(str(v) for v in b): value for b, value in values.items()}}


def load_array(path: str, n: int) -> dict[tuple[int, ...], int]:
    """Accept ``{"values": {"1,0": 3}}``, ``{"values": [[b, v], ...]}`` or a bare list of pairs."""
    data = load_json(path)
    if isinstance(data, dict):
        data = data.get("values", data)
    pairs: list
    if isinstance(data, dict):
        pairs = [(repro.parse_index(k), v) for k, v in data.items()]
    elif isinstance(data, list):
        pairs = [(tuple(entry[0]), entry[1]) for entry in data]
    else:
        raise ParseError(f"{path}: array JSON must be an object or a list of [index, value] pairs")
    out = {}
    for key, value in pairs:
        try:
            key = tuple(int(v) for v in key) if key else (0,) * n
            value = int(value)
        except (TypeError, ValueError) as exc:
            raise ParseError(f"{path}: bad entry {key!r}: {exc}") from exc
        if len(key) != n:
            raise ParseError(f"{path}: index {key} does not have {n} entries")
        out[key] = value
    return out


def load_tree(path: str):
    data = load_json(path)
    if isinstance(data, dict) and "text" in data:
        try:
            return tree_from_text(tuple(int(v) for v in data["a"]), data["text"])
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"{path}: tree text needs 'a' and 'text': {exc}") from exc
    tree = tree_from_json(data)
    if tree is None:
        raise ParseError(f"{path}: the trivial representation is not a tree")
    return tree


def tree_payload(tree) -> dict:
    payload = tree_to_json(tree)
    payload["text"] = tree_to_text(tree)
    payload["N"] = tree.N
    return payload


def cmd_fine(args) -> int:
    C = complex_from_json(load_json(args.complex))
    values = fine_f_vector(C)
    if args.command == "fine-h":
        values = fine_h_vector(values)
    emit(fine_to_json(dict(values.items())))
    return EXIT_OK


def cmd_compress(args) -> int:
    M = multicomplex_from_json(load_json(args.multicomplex))
    if args.color is not None:
        result, sequence = compress_t(M, args.color), [args.color]
    else:
        result, sequence = color_compress_fixpoint(M)
    emit({"multicomplex": multicomplex_to_json(result), "sequence": sequence, "fine_f": fine_to_json(result.fine_f_vector())["values"]})
    return EXIT_OK


def cmd_check(args) -> int:
    C = complex_from_json(load_json(args.complex))
    payload: dict[str, Any] = {"property": args.property}
    if args.property == "shifted":
        result = is_color_shifted(C)
    elif args.property == "compressed":
        result = is_color_compressed(C)
    elif args.property == "vertex-decomp":
        result, cert = is_vertex_decomposable(C, args.split_policy)
        payload["certificate"] = cert.to_json() if cert else None
    else:
        result, cert = is_macaulay_decomposable(C, args.type, args.split_policy)
        payload["certificate"] = cert.to_json() if cert else None
    payload["result"] = result
    emit(payload)
    return EXIT_OK if result else EXIT_FALSE


def cmd_shed(args) -> int:
    C = complex_from_json(load_json(args.complex))
    S = shedding_tree(C, policy=args.terminal_policy, verify=args.verify)
    if args.dot:
        Path(args.dot).write_text(shedding_to_dot(S, verbose_labels=args.verbose_labels))
    emit({"shedding_tree": shedding_to_json(S), "macaulay_tree": tree_payload(induced_macaulay_tree(S))})
    return EXIT_OK


def cmd_tree(args) -> int:
    trees = [load_tree(path) for path in args.trees]
    needed = {"wedge": 2, "preceq": 2}.get(args.action, 1)
    if len(trees) != needed:
        raise ParseError(f"tree {args.action} needs {needed} tree file(s), got {len(trees)}")
    tree = trees[0]
    if args.action == "validate":
        report = validate(tree)
        payload: dict[str, Any] = {"valid": report.valid, "N": report.N, "failures": [list(f) for f in report.failures]}
        if report.valid:
            like = is_compressed_like(tree)
            payload["condensed"] = is_condensed(tree)
            payload["compressed_like"] = like.ok
            payload["compatible"] = is_compatible(tree).ok if like.ok else None
        emit(payload)
        return EXIT_OK if report.valid else EXIT_FALSE
    if args.action == "condense":
        emit(tree_payload(condensation(tree)))
    elif args.action == "twin":
        if args.aprime is None:
            raise ParseError("tree twin needs --aprime")
        emit(tree_payload(twin(tree, args.aprime)))
    elif args.action == "wedge":
        emit(tree_payload(wedge(trees[0], trees[1])))
    elif args.action == "preceq":
        result = preceq(trees[0], trees[1])
        emit({"preceq": result})
        return EXIT_OK if result else EXIT_FALSE
    elif args.action == "realize":
        emit(complex_to_json(realize(tree)))
    else:
        if args.x is None:
            raise ParseError("tree diff needs --x")
        emit({"x": list(args.x), "value": partial_diff(tree, args.x)})
    return EXIT_OK


def cmd_enum(args) -> int:
    reps = characterization.enumerate_reps(args.type, args.n, jobs=args.jobs)
    emit({"type": list(args.type), "N": args.n, "count": len(reps), "trees": [tree_payload(t) for t in reps]})
    return EXIT_OK


def cmd_feasible(args) -> int:
    n = len(args.type)
    values = load_array(args.array, n)
    if args.kind == "fine-f":
        ok, witnesses = characterization.check_fine_f_colored(args.type, values)
        listed = [] if not witnesses else [{"b": list(b), "tree": tree_to_json(t, b)} for b, t in sorted(witnesses.items())]
    elif args.kind == "flag-f-cm":
        ok, witness = characterization.check_pure_balanced_fine_f((1,) * n, values)
        listed = [tree_to_json(witness)] if witness is not None else []
    else:
        subsets = {tuple(i + 1 for i, x in enumerate(b) if x): v for b, v in values.items()}
        ok = characterization.check_flag_h_cm(n, subsets)
        listed = []
    emit({"feasible": ok, "witnesses": listed})
    return EXIT_OK if ok else EXIT_FALSE


def cmd_oracle(args) -> int:
    if args.action == "census":
        emit({
            "type": list(args.type),
            "lambda": list(args.lambda_max),
            "pure_balanced_by_facets": {str(k): v for k, v in oracle.census(args.type, args.lambda_max).items()},
            "compression": oracle.compression_census(args.type, args.lambda_max),
        })
        return EXIT_OK
    report = oracle.cross_validate(args.type, args.lambda_max, jobs=args.jobs)
    emit(report.to_json())
    return EXIT_OK if report.match else EXIT_FALSE


def cmd_repro(args) -> int:
    result = repro.reproduce(args.target)
    emit(result)
    return EXIT_OK if result["match"] else EXIT_FALSE


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="flagrep", description="Fine f-vectors, Macaulay trees and feasibility checks for colored complexes.")
    parser.add_argument("--split-policy", choices=POLICIES, default="highest-color", help="color preference when choosing shedding vertices")
    sub = parser.add_subparsers(dest="command", required=True)

    for name in ("fine-f", "fine-h"):
        p = sub.add_parser(name, help=f"{name} vector of a colored complex")
        p.add_argument("complex")
        p.set_defaults(handler=cmd_fine)

    p = sub.add_parser("compress", help="color compression of a multicomplex")
    p.add_argument("multicomplex")
    group = p.add_mutually_exclusive_group()
    group.add_argument("--color", type=int)
    group.add_argument("--fixpoint", action="store_true")
    p.set_defaults(handler=cmd_compress)

    p = sub.add_parser("check", help="structural property of a complex")
    p.add_argument("property", choices=("shifted", "compressed", "vertex-decomp", "mac-decomp"))
    p.add_argument("complex")
    p.add_argument("--type", type=parse_tuple)
    p.set_defaults(handler=cmd_check)

    p = sub.add_parser("shed", help="shedding tree and induced Macaulay tree")
    p.add_argument("complex")
    p.add_argument("--dot")
    p.add_argument("--verbose-labels", action="store_true")
    p.add_argument("--terminal-policy", choices=TERMINAL_POLICIES, default="dfs-first")
    p.add_argument("--verify", action="store_true", help="check face-count conservation at every split")
    p.set_defaults(handler=cmd_shed)

    p = sub.add_parser("tree", help="Macaulay tree operations")
    p.add_argument("action", choices=("validate", "condense", "twin", "wedge", "preceq", "realize", "diff"))
    p.add_argument("trees", nargs="+")
    p.add_argument("--aprime", type=parse_tuple)
    p.add_argument("--x", type=parse_tuple)
    p.set_defaults(handler=cmd_tree)

    p = sub.add_parser("enum-reps", help="all generalized representations of N")
    p.add_argument("--type", type=parse_tuple, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(handler=cmd_enum)

    p = sub.add_parser("feasible", help="numerical feasibility of an array")
    p.add_argument("kind", choices=("fine-f", "flag-f-cm", "flag-h-cm"))
    p.add_argument("array")
    p.add_argument("--type", type=parse_tuple, required=True)
    p.set_defaults(handler=cmd_feasible)

    p = sub.add_parser("oracle", help="brute-force enumeration")
    p.add_argument("action", choices=("census", "cross-validate"))
    p.add_argument("--type", type=parse_tuple, required=True)
    p.add_argument("--lambda-max", type=parse_tuple, required=True)
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(handler=cmd_oracle)

    p = sub.add_parser("repro", help="regenerate a reference figure or table and diff it")
    p.add_argument("target", choices=repro.TARGETS)
    p.set_defaults(handler=cmd_repro)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except FlagrepError as exc:
        sys.stderr.write(f"error: {type(exc).__name__}: {exc}\n")
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
