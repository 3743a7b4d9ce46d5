"""Command-line entry point: ``flowroots <command> ...``.

Exit codes: 0 success, 1 domain failure (for example a bridged graph where a
bridgeless one is required, or a screening violation), 2 usage or parse
error, 3 budget exceeded. With ``--format json`` (the default) stdout is
always JSON for exit codes 0 and 1; diagnostics go to stderr.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from pathlib import Path

from .flow import BudgetExceeded, EngineConfig, FlowEngine
from .multigraph import GraphFormatError, has_bridge, parse_multigraph
from .polynomial import DEFAULT_TOLERANCE, _frac_str, factor_rational, isolate_and_refine

EXIT_OK, EXIT_DOMAIN, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3


class UsageError(Exception):
    pass


class DomainError(Exception):
    def __init__(self, message: str, payload: dict | None = None):
        super().__init__(message)
        self.payload = payload or {"error": message}


def resolve_cache_dir(arg: str | None) -> Path:
    """``--cache-dir``, else ``$FLOWROOTS_CACHE``, else ``~/.cache/flowroots``."""
    if arg:
        return Path(arg)
    env = os.environ.get("FLOWROOTS_CACHE")
    if env:
        return Path(env)
    return Path.home() / ".cache" / "flowroots"


def _tolerance(text: str) -> Fraction:
    try:
        tol = Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational: {text!r}") from exc
    if tol <= 0:
        raise argparse.ArgumentTypeError("tolerance must be positive")
    return tol


def _nonneg(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError("expected a non-negative integer")
    return v


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("expected a positive integer")
    return v


def read_graph(path: str):
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"{path}: {exc.strerror}") from exc
    try:
        return parse_multigraph(text)
    except GraphFormatError as exc:
        raise UsageError(f"{path}: {exc}") from exc


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def _emit(args, obj, text: str | None = None):
    if args.format == "text" and text is not None:
        print(text)
    else:
        print(_dump(obj))


# --------------------------------------------------------------------------
# commands

def cmd_compute(args) -> int:
    g = read_graph(args.graph)
    engine = FlowEngine(EngineConfig(max_nodes=args.budget))
    res = engine.run(g)
    p = res.polynomial
    out = {
        "vertices": g.n,
        "edges": g.m,
        "coeffs": list(p.coeffs),
        "p": res.p_exponent,
        "reductions": res.reductions_used,
        "cache_hits": res.cache_hits,
    }
    lines = [f"F(G, x) = {p}", f"p(G) = {res.p_exponent}"]
    if args.factor:
        if p.is_zero():
            out["factors"] = []
        else:
            content = p.content() * (1 if p.lead > 0 else -1)
            out["content"] = content
            out["factors"] = [{"coeffs": list(f.coeffs), "mult": m} for f, m in factor_rational(p)]
            lines.append("factors: " + " * ".join(f"({f})^{m}" for f, m in factor_rational(p)))
    if args.eval:
        out["eval"] = {str(k): p(k) for k in args.eval}
        lines += [f"F(G, {k}) = {p(k)}" for k in args.eval]
    _emit(args, out, "\n".join(lines))
    return EXIT_OK


def cmd_roots(args) -> int:
    from .analyzer import profile_of_polynomial

    g = read_graph(args.graph)
    if has_bridge(g):
        raise DomainError("the graph has a bridge; its flow polynomial is identically zero")
    p = FlowEngine(EngineConfig(max_nodes=args.budget)).polynomial(g)
    roots = isolate_and_refine(p, tolerance=args.tolerance)
    prof = profile_of_polynomial(p, args.tolerance)
    out = {
        "coeffs": list(p.coeffs),
        "real_roots": [r.to_json() for r in roots],
        "complex_roots": prof.complex_count,
        **prof.to_json(),
    }
    lines = [f"F(G, x) = {p}"] + [
        f"  root {r.approx}  mult {r.multiplicity}  in [{_frac_str(r.low)}, {_frac_str(r.high)}]" for r in roots
    ] + [f"complex roots: {prof.complex_count}", f"all real: {prof.all_real}  subset of {{1,2,3}}: {prof.subset_123}"]
    _emit(args, out, "\n".join(lines))
    return EXIT_OK


def cmd_enumerate(args) -> int:
    from .theta import ThetaEnumerator

    enum = ThetaEnumerator(args.budget, resolve_cache_dir(args.cache_dir))
    records = enum.level(args.k)
    out = [r.to_json() for r in records]
    text = f"{len(records)} graphs with {args.k} vertices\n" + "\n".join(r.canonical.decode() for r in records)
    _emit(args, out, text)
    return EXIT_OK


def cmd_xi(args) -> int:
    from .theta import ThetaEnumerator
    from .xi import xi

    enum = ThetaEnumerator(args.budget, resolve_cache_dir(args.cache_dir))
    cert = xi(args.k, tolerance=args.tolerance, enumerator=enum)
    out = cert.to_json()
    text = f"xi_{args.k} = {cert.value_approx}"
    if cert.minimal_factor is not None:
        text += f"  root of {cert.minimal_factor}  attained by {cert.attaining_graph.decode()}"
    _emit(args, out, text)
    return EXIT_OK


def cmd_screen(args) -> int:
    from .analyzer import ScreenSummary, certified_xi_lower, iter_screen
    from .corpus import load_corpus

    if args.graphs and args.corpus:
        raise UsageError("give either graph files or --corpus, not both")
    if args.graphs:
        graphs = [read_graph(p) for p in args.graphs]
        bridged = [p for p, g in zip(args.graphs, graphs) if has_bridge(g)]
        if bridged:
            raise DomainError("bridged input", {"error": "bridged input", "files": bridged})
        source = {"files": len(graphs)}
    else:
        try:
            graphs = load_corpus(args.corpus or "default", args.seed)
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
        if len(graphs) > args.budget:
            raise BudgetExceeded(f"corpus has {len(graphs)} graphs, budget {args.budget}")
        source = {"corpus": args.corpus or "default", "seed": args.seed}
    summary = ScreenSummary()
    for rec in iter_screen(graphs, args.jobs, args.tolerance, certified_xi_lower()):
        summary.add(rec)
        if args.format == "text":
            print(f"{rec['canonical']}  all_real={rec['all_real']} subset_123={rec['subset_123']} "
                  f"t={rec['t']} omega={rec['omega']}")
        else:
            print(_dump(rec))
    tail = summary.to_json(**source)
    if args.format == "text":
        print(f"{summary.graphs} graphs, {summary.all_real} all-real, "
              f"{summary.counterexamples} counterexamples, {summary.audit_failures} audit failures")
    else:
        print(_dump(tail))
    return EXIT_OK if summary.passed else EXIT_DOMAIN


def cmd_verify(args) -> int:
    from .acceptance import CRITERIA

    which = sorted(args.only) if args.only else sorted(CRITERIA)
    results = []
    for i in which:
        c = CRITERIA[i]()
        print(c.line(), file=sys.stderr)
        results.append(c)
    ok = all(c.ok for c in results)
    out = {"passed": ok, "criteria": [c.to_json() for c in results]}
    _emit(args, out, "\n".join(c.line() for c in results))
    return EXIT_OK if ok else EXIT_DOMAIN


# --------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("--tolerance", type=_tolerance, default=DEFAULT_TOLERANCE,
                        help="width of certified root intervals, a rational (default 1/1000000000000)")
    common.add_argument("--budget", type=_positive, default=None, help="work budget (recursion nodes, expansions or graphs)")
    common.add_argument("--jobs", type=_positive, default=1)
    common.add_argument("--seed", type=_nonneg, default=0)
    common.add_argument("--cache-dir", default=None)

    parser = argparse.ArgumentParser(prog="flowroots", description="Flow polynomials and their real roots.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compute", parents=[common], help="flow polynomial of a graph file")
    p.add_argument("graph")
    p.add_argument("--factor", action="store_true", help="split off rational roots and square-free parts")
    p.add_argument("--eval", type=int, action="append", metavar="K", help="evaluate at an integer (repeatable)")
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("roots", parents=[common], help="certified real roots of the flow polynomial")
    p.add_argument("graph")
    p.set_defaults(func=cmd_roots)

    p = sub.add_parser("enumerate", parents=[common], help="members of the expansion family with K vertices")
    p.add_argument("k", type=_nonneg)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("xi", parents=[common], help="certified zero-free constant xi_k")
    p.add_argument("k", type=_nonneg)
    p.set_defaults(func=cmd_xi)

    p = sub.add_parser("screen", parents=[common], help="screen graphs for real-root structure")
    p.add_argument("graphs", nargs="*")
    p.add_argument("--corpus", default=None, help="default, v6e11, e9, small or v<N>e<M>[m<K>][l<L>][r<R>]")
    p.set_defaults(func=cmd_screen)

    p = sub.add_parser("verify-paper", parents=[common], help="run the acceptance criteria")
    p.add_argument("--only", type=int, action="append", choices=range(1, 9))
    p.set_defaults(func=cmd_verify)
    return parser


_DEFAULT_BUDGETS = {"enumerate": 1_000_000, "xi": 1_000_000, "screen": 1_000_000}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.budget is None:
        args.budget = _DEFAULT_BUDGETS.get(args.command)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"flowroots: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DomainError as exc:
        print(f"flowroots: {exc}", file=sys.stderr)
        print(_dump(exc.payload))
        return EXIT_DOMAIN
    except BudgetExceeded as exc:
        print(f"flowroots: budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET


if __name__ == "__main__":
    sys.exit(main())
