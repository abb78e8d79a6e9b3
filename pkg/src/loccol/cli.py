"""Command-line entry point: ``loccol <command> ...``.

Exit codes: 0 success, 1 usage or input error, 2-4 verifier verdicts
(improper, collision, empty class), 5 refusal (reduction stuck or search
budget exhausted).
"""
from __future__ import annotations

import argparse
import json
import random
import sys
from pathlib import Path

from . import families
from .coloring import ColoringFormatError, parse_coloring, serialize_coloring, verify_locating
from .exact import SearchConfig, exact_chi_L
from .paint import PipelineRefused, color_tree
from .tree import Terminal, TreeFormatError, parse_tree, reduction_sequence, serialize_tree

EXIT_USAGE = 1
EXIT_REFUSED = 5


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _read(path: str | None) -> str:
    if path is None or path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text()
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror}") from None


def _emit(args, text: str):
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)


def _record(args, fields: dict) -> str:
    """One report record, as a json line or ``key: value`` lines."""
    if args.format == "json-lines":
        return json.dumps(fields, sort_keys=True) + "\n"
    return "".join(f"{k}: {v}\n" for k, v in fields.items())


def _report_dict(report, fmt: str) -> dict:
    d = report.as_dict()
    if fmt == "text":
        d["per_stage"] = " ".join(map(str, report.per_stage)) or "-"
    return d


def cmd_color(args) -> int:
    t = parse_tree(_read(args.input))
    try:
        col, report, trace = color_tree(t, args.strategy)
    except PipelineRefused as e:
        print(f"refused: {e}", file=sys.stderr)
        return EXIT_REFUSED
    _emit(args, serialize_coloring(col))
    if args.trace:
        out = Path(args.trace)
        out.mkdir(parents=True, exist_ok=True)
        for i, stage in enumerate(trace.stages):
            (out / f"stage{i:03d}.tree").write_text(serialize_tree(stage))
    if args.emit_bounds:
        sys.stderr.write(_record(args, _report_dict(report, args.format)))
    return 0


def cmd_verify(args) -> int:
    t = parse_tree(_read(args.input))
    c = parse_coloring(_read(args.coloring))
    verdict = verify_locating(t, c)
    _emit(args, _record(args, {"verdict": verdict.kind.value, "witness": _witness(verdict.witness)}))
    return verdict.exit_code


def _witness(w):
    if w is None:
        return None
    if isinstance(w, tuple):
        return [_witness(x) for x in w]
    return w if isinstance(w, int) else list(w)


def cmd_exact(args) -> int:
    t = parse_tree(_read(args.input))
    if t.rays:
        raise UsageError("exact search needs a finite tree")
    cfg = SearchConfig(k_max=args.kmax, node_budget=args.budget, symmetry_breaking=not args.no_symmetry)
    res = exact_chi_L(t, cfg)
    print(_record(args, {"chi_L": str(res.chi_L), "nodes_explored": res.nodes_explored}), end="")
    if res.witness is not None:
        _emit(args, serialize_coloring(res.witness))
    return 0 if res.known else EXIT_REFUSED


def cmd_reduce(args) -> int:
    t = parse_tree(_read(args.input))
    trace = reduction_sequence(t)
    lines = []
    for i, stage in enumerate(trace.stages):
        rec = {"stage": i, "vertices": stage.n, "rays": stage.total_rays}
        if i < trace.steps:
            rec["l_max"], rec["p_max"] = trace.per_stage[i]
        if args.format == "json-lines":
            lines.append(json.dumps(rec, sort_keys=True) + "\n")
        else:
            lines.append("  ".join(f"{k}={v}" for k, v in rec.items()) + "\n")
    tail = {"stages": trace.steps, "terminal": trace.terminal.value}
    if args.format == "json-lines":
        lines.append(json.dumps(tail, sort_keys=True) + "\n")
    else:
        lines.append(f"stages={trace.steps}  terminal={trace.terminal.value}\n")
    _emit(args, "".join(lines))
    return 0 if trace.terminal in (Terminal.PATH, Terminal.SINGLETON) else EXIT_REFUSED


def cmd_family(args) -> int:
    params = families.parse_params(args.params or "")
    if args.name == "random":
        rng = random.Random(args.seed)
        t = families.random_tree(params.get("n", 20), params.get("max_degree", 4), rng)
    else:
        t = families.generate(families.FamilySpec(args.name, params))
    _emit(args, serialize_tree(t))
    return 0


def cmd_bounds(args) -> int:
    t = parse_tree(_read(args.input))
    try:
        _, report, _ = color_tree(t, args.strategy)
    except PipelineRefused as e:
        print(f"refused: {e}", file=sys.stderr)
        return EXIT_REFUSED
    _emit(args, _record(args, _report_dict(report, args.format)))
    return 0


def cmd_witness(args) -> int:
    if args.kind == "regular":
        if args.k is None:
            raise UsageError("witness regular needs --k")
        n = families.pigeonhole_regular(args.k, args.t)
        lhs, rhs = families.regular_sides(args.k, args.t, n)
        rec = {"n": n, "codes": lhs, "sphere": rhs, "inequality": f"(2*{n})^{args.t} = {lhs} < {rhs} = {args.k}*{args.k - 1}^{n - 1}"}
    else:
        if args.n is None:
            raise UsageError("witness gtree needs --n")
        n = families.pigeonhole_gtree(args.n, args.t)
        lhs, rhs = families.gtree_sides(args.n, args.t, n)
        rec = {"n": n, "codes": lhs, "leaves": rhs, "inequality": f"(2*{n})^{args.t} = {lhs} < {rhs} = {args.n}^{n}"}
    _emit(args, _record(args, rec))
    return 0


def cmd_table1(args) -> int:
    if args.params != "default":
        raise UsageError("table1 supports only --params default")
    rows = families.table1(budget=args.budget)
    _emit(args, families.render_table(rows, args.format))
    return 0


def build_parser() -> argparse.ArgumentParser:
    shared = argparse.ArgumentParser(add_help=False)
    shared.add_argument("--input", help="input file (default: stdin)")
    shared.add_argument("--output", help="output file (default: stdout)")
    shared.add_argument("--seed", type=int, default=0, help="seed for randomized commands")
    shared.add_argument("--format", choices=["text", "json-lines"], default="text")

    p = _Parser(prog="loccol", description="Locating colorings of trees.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("color", parents=[shared], help="color a tree with the reduction pipeline")
    c.add_argument("--strategy", choices=["compact", "simple"], default="compact")
    c.add_argument("--emit-bounds", action="store_true", help="print the bound report to stderr")
    c.add_argument("--trace", metavar="DIR", help="write every reduction stage as a tree file")
    c.set_defaults(func=cmd_color)

    v = sub.add_parser("verify", parents=[shared], help="check a coloring file against a tree")
    v.add_argument("--coloring", required=True)
    v.set_defaults(func=cmd_verify)

    e = sub.add_parser("exact", parents=[shared], help="exact locating number by search")
    e.add_argument("--kmax", type=int)
    e.add_argument("--budget", type=int, help="node budget (default: $LOCCOL_BUDGET or 5000000)")
    e.add_argument("--no-symmetry", action="store_true")
    e.set_defaults(func=cmd_exact)

    r = sub.add_parser("reduce", parents=[shared], help="print the reduction trace")
    r.set_defaults(func=cmd_reduce)

    f = sub.add_parser(
        "family", parents=[shared], help="emit a family member as a tree file",
        description=families.__doc__, formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    f.add_argument("name", choices=sorted([*families.GENERATORS, "random"]))
    f.add_argument("--params", default="", help="comma-separated name=value list")
    f.set_defaults(func=cmd_family)

    b = sub.add_parser("bounds", parents=[shared], help="print the bound report")
    b.add_argument("--strategy", choices=["compact", "simple"], default="compact")
    b.set_defaults(func=cmd_bounds)

    w = sub.add_parser("witness", parents=[shared], help="pigeonhole certificate")
    w.add_argument("kind", choices=["regular", "gtree"])
    w.add_argument("--k", type=int)
    w.add_argument("--n", type=int)
    w.add_argument("--t", type=int, required=True)
    w.set_defaults(func=cmd_witness)

    t = sub.add_parser("table1", parents=[shared], help="reproduce the family table")
    t.add_argument("--params", default="default")
    t.add_argument("--budget", type=int)
    t.set_defaults(func=cmd_table1)
    return p


def run(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, TreeFormatError, ColoringFormatError, ValueError) as e:
        print(f"loccol: error: {e}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
