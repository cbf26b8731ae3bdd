"""Command-line interface.

Exit codes: 0 success, 2 invalid input, 3 resource guard, 4 verification failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path

from .errors import ResourceGuardError, VerificationFailure, WitnessNotFound, resolve_max_cells
from .identities import attach_witness, discover, verify_identity, witness_nonzero
from .invariant_tensor import kernel
from .multigraph import Multigraph, degree_vectors, enumerate_classes, enumerate_matchings, orbits
from .operator_eval import OperatorExpr, compile, evaluate, independence_rank
from .polynomial import jet, parse_polynomial
from .rational import format_fraction, to_fraction
from .tables import beta_label, class_row, graph_name, table1, table3

EXIT_INVALID = 2
EXIT_RESOURCE = 3
EXIT_VERIFY = 4


class InvalidInput(ValueError):
    pass


@dataclass
class Report:
    payload: dict
    columns: list[str] = field(default_factory=list)
    rows: list[dict] = field(default_factory=list)
    sections: list[tuple[str, list[str], list[dict]]] = field(default_factory=list)

    def render(self, fmt: str) -> str:
        if fmt == "json":
            return json.dumps(self.payload, indent=2) + "\n"
        sections = self.sections or [("", self.columns, self.rows)]
        seed_line = f"# seed: {self.payload.get('seed')}\n"
        if fmt == "csv":
            buf = io.StringIO()
            buf.write(seed_line)
            for title, cols, rows in sections:
                if title:
                    buf.write(f"# {title}\n")
                writer = csv.DictWriter(buf, fieldnames=cols, lineterminator="\n")
                writer.writeheader()
                writer.writerows(rows)
            return buf.getvalue()
        out = [seed_line.rstrip("\n")]
        for title, cols, rows in sections:
            if title:
                out.append(f"\n{title}")
            out.extend(_text_table(cols, rows))
        return "\n".join(out) + "\n"


def _text_table(cols: list[str], rows: list[dict]) -> list[str]:
    if not cols:
        return []
    cells = [[str(r.get(c, "")) for c in cols] for r in rows]
    widths = [max([len(c)] + [len(row[k]) for row in cells]) for k, c in enumerate(cols)]
    fmt = "  ".join("{:<%d}" % w for w in widths)
    lines = [fmt.format(*cols).rstrip(), fmt.format(*("-" * w for w in widths))]
    lines.extend(fmt.format(*row).rstrip() for row in cells)
    if not rows:
        lines.append("(none)")
    return lines


def _need_seed(args) -> int:
    if args.seed is None:
        raise InvalidInput(f"'{args.command}' is randomized; pass --seed")
    return args.seed


def _edge_string(graph: dict) -> str:
    return " ".join(f"{i}-{j}" for i, j in graph["edges"]) or "-"


# -- commands ----------------------------------------------------------------

def cmd_enumerate(args) -> Report:
    graphs = enumerate_classes(args.edges, connected_only=args.connected, max_isolated=args.max_isolated)
    rows = [class_row(g) for g in graphs]
    payload = {"command": "enumerate", "seed": args.seed, "edges": args.edges, "connected_only": args.connected,
               "max_isolated": args.max_isolated, "count": len(rows), "classes": rows}
    table = [{**r, "beta": beta_label(r["beta"]), "graph": _edge_string(r["graph"])} for r in rows]
    cols = ["beta", "name", "vertices", "edges", "connected", "order", "total_order", "polynomial_degree", "graph"]
    return Report(payload, cols, table)


def cmd_kernel(args) -> Report:
    basis = kernel(args.p, args.d, reduced=args.reduced, max_cells=args.max_cells)
    n = len(enumerate_matchings(args.p))
    payload = {"command": "kernel", "seed": args.seed, "dimension": basis.dimension, "rank": n - basis.dimension,
               "kernel": basis.to_json()}
    rows = [{"row": k, "coefficients": " ".join(format_fraction(x) for x in row)} for k, row in enumerate(basis.basis)]
    return Report(payload, ["row", "coefficients"], rows)


def cmd_identities(args) -> Report:
    found = discover(args.d, args.p, max_cells=args.max_cells)
    if args.verify or args.witness is not None:
        seed = _need_seed(args)
        if args.verify:
            found = [verify_identity(i, trials=args.trials, seed=seed, points=args.points) for i in found]
        if args.witness is not None:
            if args.witness <= args.d:
                raise InvalidInput("--witness dimension must exceed --d")
            found = [attach_witness(i, witness_nonzero(i, args.witness, budget=args.budget, seed=seed)) for i in found]
    payload = {"command": "identities", "seed": args.seed, "d": args.d, "p": args.p, "count": len(found),
               "identities": [i.to_json() for i in found]}
    rows = []
    for i in found:
        w = i.status.get("witnessed_nonzero")
        rows.append({
            "beta": str(i.beta),
            "relation": " ".join(f"{'+' if c > 0 else '-'}{abs(c)}*[{graph_name(g)}]" for g, c in i.terms),
            "verified_zero": "d=%d" % i.status["verified_zero"]["dim"] if "verified_zero" in i.status else "",
            "witness": f"d={w['dim']} value={w['value']}" if w else "",
        })
    return Report(payload, ["beta", "relation", "verified_zero", "witness"], rows)


def _load_operator(path: str) -> OperatorExpr:
    try:
        data = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise InvalidInput(f"cannot read graph file {path}: {exc}") from None
    try:
        if "terms" in data:
            return OperatorExpr.from_json(data)
        return compile(Multigraph.from_json(data))
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidInput(f"malformed graph file {path}: {exc}") from None


def cmd_eval(args) -> Report:
    expr = _load_operator(args.graph)
    try:
        point = tuple(to_fraction(x) for x in args.point.split(",")) if args.point else ()
    except (ValueError, ZeroDivisionError):
        raise InvalidInput(f"bad point {args.point!r}") from None
    d = args.d if args.d is not None else len(point)
    if d < 1 or len(point) != d:
        raise InvalidInput("point must have d coordinates")
    f = parse_polynomial(args.poly, d)
    value = evaluate(expr, jet(f, point, expr.max_degree))
    payload = {"command": "eval", "seed": args.seed, "d": d, "f": str(f), "x": [format_fraction(c) for c in point],
               "operator": expr.to_json(), "value": format_fraction(value)}
    return Report(payload, ["value"], [{"value": format_fraction(value)}])


def cmd_tables(args) -> Report:
    payload = {"command": "tables", "seed": args.seed}
    sections = []
    if args.table in ("1", "all"):
        t1 = table1(args.edges)
        payload["table1"] = t1
        rows = [{"edges": r["edges"], "name": r["name"], "order": r["order"], "total_order": r["total_order"],
                 "polynomial_degree": r["polynomial_degree"], "operator": r["operator"]} for r in t1]
        sections.append((f"connected classes with at most {args.edges} edges",
                         ["edges", "name", "order", "total_order", "polynomial_degree", "operator"], rows))
    if args.table in ("3", "all"):
        t3 = table3(args.edges)
        payload["table3"] = t3
        rows = [{"beta": beta_label(r["beta"]), "orbits": r["orbits"], "group_order": r["group_order"],
                 "representatives": "; ".join(r["representatives"])} for r in t3]
        sections.append((f"degree vectors with {args.edges} edges",
                         ["beta", "orbits", "group_order", "representatives"], rows))
    return Report(payload, sections=sections)


def cmd_independence(args) -> Report:
    seed = _need_seed(args)
    classes = [o.graph for beta in degree_vectors(args.edges) for o in orbits(beta)]
    trials = args.trials if args.trials is not None else len(classes) + 10
    if trials < len(classes):
        raise InvalidInput("--trials must be at least the number of classes")
    r = independence_rank(classes, args.d, trials=trials, seed=seed)
    payload = {"command": "independence", "seed": seed, "edges": args.edges, "d": args.d, "trials": trials,
               "classes": len(classes), "rank": r, "deficiency": len(classes) - r}
    return Report(payload, ["edges", "d", "classes", "rank", "deficiency"],
                  [{k: payload[k] for k in ("edges", "d", "classes", "rank", "deficiency")}])


# -- argument parsing --------------------------------------------------------

def _global_options(parser: argparse.ArgumentParser, suppress: bool) -> None:
    default = argparse.SUPPRESS if suppress else None
    parser.add_argument("--format", choices=["json", "csv", "text"], default=default,
                        help="output format (default: text on a terminal, json otherwise)")
    parser.add_argument("--seed", type=int, default=default, help="seed for randomized checks")
    parser.add_argument("--max-cells", type=int, default=default,
                        help="matrix cell ceiling (env EQUIVARIANT_OPS_MAX_CELLS, default 10^7)")
    parser.add_argument("--out", default=default, help="write output to this file")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="equivariant-ops",
                                     description="Enumerate and relate isometry-equivariant multigraph operators.")
    _global_options(parser, suppress=False)
    common = argparse.ArgumentParser(add_help=False)
    _global_options(common, suppress=True)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("enumerate", parents=[common], help="list isomorphism classes with a given edge count")
    p.add_argument("--edges", type=int, required=True)
    p.add_argument("--connected", action="store_true")
    p.add_argument("--max-isolated", type=int, default=0)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("kernel", parents=[common], help="relations among matching tensors in dimension d")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--reduced", action="store_true", help="use only parity/relabeling representative columns")
    p.set_defaults(func=cmd_kernel)

    p = sub.add_parser("identities", parents=[common], help="dimension-dependent operator relations")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--verify", action="store_true")
    p.add_argument("--witness", type=int, metavar="D_PRIME")
    p.add_argument("--trials", type=int, default=20)
    p.add_argument("--points", type=int, default=3)
    p.add_argument("--budget", type=int, default=10_000)
    p.set_defaults(func=cmd_identities)

    p = sub.add_parser("eval", parents=[common], help="evaluate an operator on a polynomial at a point")
    p.add_argument("--graph", required=True, help="multigraph or operator JSON file")
    p.add_argument("--poly", required=True, help="polynomial in x1..xd, e.g. 'x1^2 + 3*x2^2'")
    p.add_argument("--point", required=True, help="comma-separated rational coordinates")
    p.add_argument("--d", type=int)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("tables", parents=[common], help="class census and degree-vector census")
    p.add_argument("--table", choices=["1", "3", "all"], default="all")
    p.add_argument("--edges", type=int, default=3)
    p.set_defaults(func=cmd_tables)

    p = sub.add_parser("independence", parents=[common], help="sampled rank of all classes with a given edge count")
    p.add_argument("--edges", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--trials", type=int)
    p.set_defaults(func=cmd_independence)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.max_cells is None:
            args.max_cells = resolve_max_cells()
        report = args.func(args)
    except ResourceGuardError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except (VerificationFailure, WitnessNotFound) as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    fmt = args.format or ("text" if args.out is None and sys.stdout.isatty() else "json")
    text = report.render(fmt)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
