"""Command-line front end.

Exit codes: 0 success, 1 domination/verification failure, 2 input error,
3 resource limit (including a solver that ran out of budget).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from math import comb

from . import constructions, coverings, formats
from .domination import (DEFAULT_SOLVER_NODES, DEFAULT_SOLVER_VERTICES, exact_min_dominating,
                         greedy_dominating, is_dominating)
from .errors import InvalidParameterError, ResourceLimitError
from .graphs import DEFAULT_VERTEX_BUDGET, base_graph, build_token_graph

EXIT_OK, EXIT_NOT_DOMINATING, EXIT_INPUT, EXIT_RESOURCE = 0, 1, 2, 3

CSV_HEADER = ["family", "n", "k", "method", "size", "lower", "upper", "exact_gamma",
              "verified", "runtime_ms"]

EXPERIMENTS = {
    "star-f2": ("star", 2),
    "star-fk": ("star", None),
    "complete-f2": ("complete", 2),
    "complete-f3": ("complete", 3),
    "complete-fk": ("complete", None),
}


class _Failure(Exception):
    def __init__(self, message, code):
        super().__init__(message)
        self.code = code


def parse_range(text: str) -> list[int]:
    """``"a..b"`` (inclusive) or a comma list such as ``"6,14,18"``."""
    out = []
    try:
        for part in text.split(","):
            part = part.strip()
            if ".." in part:
                a, b = part.split("..")
                out.extend(range(int(a), int(b) + 1))
            elif part:
                out.append(int(part))
    except ValueError:
        raise InvalidParameterError(f"bad range {text!r}; use 'a..b' or 'a,b,c'") from None
    if not out:
        raise InvalidParameterError(f"empty range {text!r}")
    return out


def _emit(args, text: str, summary: str | None = None):
    """Write ``text`` to --out (summary to stdout) or to stdout (summary to stderr)."""
    if args.out:
        with open(args.out, "w", newline="") as fh:
            fh.write(text)
        if summary:
            print(summary)
    else:
        sys.stdout.write(text)
        if summary:
            print(summary, file=sys.stderr)


def _load_json(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InvalidParameterError(f"cannot read {path}: {exc}") from None


# --- commands -----------------------------------------------------------------


def cmd_build(args) -> int:
    tg = build_token_graph(base_graph(args.family, args.n), args.k, "explicit",
                           args.budget_vertices)
    if args.format == "dot":
        text = formats.graph_to_dot(tg)
    else:
        text = formats.dumps(formats.graph_to_json(tg))
    _emit(args, text, f"{tg.vertex_count} vertices, {tg.edge_count} edges")
    return EXIT_OK


def _gamma_certificate(family, n, k, method, args):
    if method == "construction":
        return constructions.construct(family, n, k, args.budget_vertices)
    tg = build_token_graph(base_graph(family, n), k, "explicit", args.budget_vertices)
    if method == "greedy":
        cert = greedy_dominating(tg)
    else:
        cert = exact_min_dominating(tg, args.solver_vertices, args.solver_nodes, args.timeout_ms)
    if not cert.optimal:
        cert.lower_bound = max(cert.lower_bound, constructions._proven_lower(family, n, k))
        cert.optimal = cert.verified and cert.lower_bound == cert.size
    return cert


def cmd_gamma(args) -> int:
    cert = _gamma_certificate(args.family, args.n, args.k, args.method, args)
    status = "optimal" if cert.optimal else ("verified" if cert.verified else "unverified")
    summary = f"{args.family} {args.n} {args.k} {args.method} {cert.size} {status}"
    _emit(args, formats.dumps(cert.to_json()), summary)
    if not cert.verified:
        return EXIT_NOT_DOMINATING
    if args.method == "exact" and not cert.optimal:
        return EXIT_RESOURCE
    return EXIT_OK


def _table_row(experiment, family, n, k, args) -> dict:
    start = time.perf_counter()
    if experiment == "complete-fk":
        cert = constructions.complete_fk_construction(n, k, args.budget_vertices)
    else:
        cert = constructions.construct(family, n, k, args.budget_vertices)
    elapsed = (time.perf_counter() - start) * 1000
    name = f"{experiment} n={n} k={k}"
    if not cert.verified:
        raise _Failure(f"{name}: construction failed verification", EXIT_NOT_DOMINATING)
    theory = constructions.theoretical_gamma(family, n, k)
    lower = max(theory.lower, cert.lower_bound)
    exact = None
    if cert.optimal:
        exact = cert.size
    else:
        nb = n + 1 if family == "star" else n
        if comb(nb, k) <= args.solver_vertices:
            tg = build_token_graph(base_graph(family, n), k, "explicit", args.budget_vertices)
            sol = exact_min_dominating(tg, args.solver_vertices, args.solver_nodes,
                                       args.timeout_ms)
            if sol.optimal:
                exact = sol.size
    if lower > cert.size or (exact is not None and not lower <= exact <= cert.size):
        raise _Failure(f"{name}: bound ordering violated (lower={lower}, size={cert.size}, "
                       f"exact={exact})", EXIT_NOT_DOMINATING)
    return {
        "family": family, "n": n, "k": k, "method": cert.method, "size": cert.size,
        "lower": lower, "upper": theory.upper, "exact_gamma": "" if exact is None else exact,
        "verified": str(cert.verified).lower(),
        "runtime_ms": "" if args.no_timing else f"{elapsed:.1f}",
    }


def cmd_table(args) -> int:
    family, fixed_k = EXPERIMENTS[args.experiment]
    k = fixed_k if fixed_k is not None else args.k
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=CSV_HEADER, lineterminator="\n")
    writer.writeheader()
    for n in parse_range(args.n):
        writer.writerow(_table_row(args.experiment, family, n, k, args))
    _emit(args, buf.getvalue())
    return EXIT_OK


def cmd_verify(args) -> int:
    g = formats.graph_from_json(_load_json(args.graph_file))
    d = formats.vertex_set_from_json(_load_json(args.set_file))
    ok, witness = is_dominating(g, d)
    if ok:
        print(f"dominating: {len(d)} vertices dominate all {len(g)}")
        return EXIT_OK
    print(f"not dominating: witness {list(witness)}")
    return EXIT_NOT_DOMINATING


def cmd_cover(args) -> int:
    n, k, l, method = args.n, args.k, args.l, args.method
    sts_shape = k == 3 and l == 2
    if method == "auto":
        method = "greedy"
        if sts_shape and n % 6 == 3:
            method = "bose"
        elif sts_shape and n % 6 == 1 and n >= 7:
            method = "skolem"
    if method in ("bose", "skolem") and not sts_shape:
        raise InvalidParameterError(f"{method} builds (n,3,2) systems, got k={k}, l={l}")
    if method == "bose":
        design = coverings.bose_sts(n)
    elif method == "skolem":
        design = coverings.skolem_sts(n)
    else:
        design = coverings.greedy_cover(n, k, l)
    report = coverings.verify_cover(design)
    lower = -(-comb(n, l) // comb(k, l))
    text = design.to_text() if args.format == "text" else formats.dumps(design.to_json())
    _emit(args, text, f"blocks={len(design)} lower_bound={lower} "
                      f"exact={str(report.exact).lower()}")
    return EXIT_OK


# --- parser -------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--budget-vertices", type=int, default=DEFAULT_VERTEX_BUDGET,
                        help="largest token graph to materialise or verify")
    common.add_argument("--solver-vertices", type=int, default=DEFAULT_SOLVER_VERTICES,
                        help="largest graph handed to the exact solver")
    common.add_argument("--solver-nodes", type=int, default=DEFAULT_SOLVER_NODES,
                        help="branch-and-bound node limit")
    common.add_argument("--timeout-ms", type=int, default=None,
                        help="wall-clock limit for the exact solver")
    common.add_argument("--out", default=None, help="output file (default: stdout)")

    # global flags live on each subcommand so they may follow it
    parser = argparse.ArgumentParser(prog="tokendom", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", parents=[common], help="export a token graph")
    p.add_argument("family", choices=["star", "complete"])
    p.add_argument("n", type=int)
    p.add_argument("k", type=int)
    p.add_argument("--format", choices=["json", "dot"], default="json")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("gamma", parents=[common], help="dominating set certificate")
    p.add_argument("family", choices=["star", "complete"])
    p.add_argument("n", type=int)
    p.add_argument("k", type=int)
    p.add_argument("--method", choices=["exact", "greedy", "construction"], default="construction")
    p.set_defaults(func=cmd_gamma)

    p = sub.add_parser("table", parents=[common], help="reproduce a results table as CSV")
    p.add_argument("experiment", choices=sorted(EXPERIMENTS))
    p.add_argument("--n", required=True, help="'a..b' or comma list")
    p.add_argument("--k", type=int, default=3, help="token count for star-fk / complete-fk")
    p.add_argument("--no-timing", action="store_true", help="leave runtime_ms empty")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("verify", parents=[common], help="check a vertex set dominates a graph")
    p.add_argument("graph_file")
    p.add_argument("set_file")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("cover", parents=[common], help="build an (n,k,l) covering design")
    p.add_argument("n", type=int)
    p.add_argument("k", type=int)
    p.add_argument("l", type=int)
    p.add_argument("--method", choices=["greedy", "bose", "skolem", "auto"], default="auto")
    p.add_argument("--format", choices=["json", "text"], default="json")
    p.set_defaults(func=cmd_cover)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return args.func(args)
    except _Failure as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except InvalidParameterError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ResourceLimitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RESOURCE


if __name__ == "__main__":
    sys.exit(main())
