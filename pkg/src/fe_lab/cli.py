"""fe-lab command line.

Exit codes: 0 embeds / true, 1 refuted / false, 2 unknown.  Malformed input
exits with 64 (syntax or evaluation), 65 (tier), 66 (filter base without
the finite intersection property) or 70 (anything else from the library).
"""
from __future__ import annotations

import argparse
import json
import sys
from datetime import datetime, timezone

from . import __version__
from . import natset as ns
from . import structure as st
from .embed import construct_bprime, fe, fe_equiv, proper_fe
from .errors import EvalError, ExprSyntaxError, FeLabError, FipViolation, TierError, WitnessExhausted
from .explore import DEFAULT_CANDIDATES, density_search, difference_search, summarize_differences
from .expr import load_corpus, parse_base, parse_expr
from .filters import (filter_fe, filter_member, filter_sum_member, fip_check, left_sum_property,
                      leftward_shift_member, regularity_experiment, urich_check)
from .natset import Truth

EXIT_SYNTAX, EXIT_TIER, EXIT_FIP, EXIT_OTHER = 64, 65, 66, 70
_TRUTH_EXIT = {Truth.TRUE: 0, Truth.FALSE: 1, Truth.UNKNOWN: 2}
_FE_EXIT = {"embeds": 0, "refuted": 1, "unknown": 2}


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return v


def _natural(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError("must be >= 0")
    return v


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--horizon", type=_positive, default=ns.DEFAULT_HORIZON)
    p.add_argument("--nmax", type=_natural, default=64)
    p.add_argument("--kmax", type=_positive, default=1 << 20)
    p.add_argument("--indexcap", type=_natural, default=64)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--corpus", default=None, help="file of 'name = expr' lines (default $FE_LAB_CORPUS)")
    p.add_argument("--json", action="store_true", help="JSON output (the default)")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="fe-lab", description="Finite embeddability toolkit.")
    parser.add_argument("--version", action="version", version=f"fe-lab {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, help_text):
        return sub.add_parser(name, parents=[common], help=help_text)

    p = add("check", "decide A ≤fe B")
    p.add_argument("a")
    p.add_argument("b")
    p = add("proper", "proper finite embeddability of A in B")
    p.add_argument("a")
    p.add_argument("b")
    p = add("equiv", "both directions of ≤fe")
    p.add_argument("a")
    p.add_argument("b")
    p = add("classify", "thick / syndetic / piecewise syndetic")
    p.add_argument("s")
    p.add_argument("--gap", type=_positive, default=None, help="gap bound for generator-tier sets")
    p = add("density", "density samples and upper Banach density")
    p.add_argument("s")
    p.add_argument("--samples", choices=("pow2", "peaks"), default="pow2")
    p.add_argument("--mmax", type=_positive, default=20)
    p.add_argument("--windows", default="", help="comma-separated window lengths")
    p.add_argument("--csv", action="store_true")
    p = add("ap", "find a k-term arithmetic progression")
    p.add_argument("s")
    p.add_argument("-k", type=_positive, default=3)
    p = add("bprime", "construct B' ⊆ B with the prefix shifts")
    p.add_argument("a")
    p.add_argument("b")

    p = add("filter", "filter-base operations")
    fsub = p.add_subparsers(dest="op", required=True)

    def fadd(name, *args):
        q = fsub.add_parser(name, parents=[common])
        for a in args:
            q.add_argument(a)
        return q

    fadd("fip", "base")
    fadd("member", "base", "x")
    fadd("leftshift", "base", "b", "k")
    fadd("sum", "x", "u", "v")
    fadd("rich", "u", "b")
    fadd("fe", "u", "v")
    q = fadd("leftsum", "v")
    q.add_argument("sets", nargs="+")
    q = fadd("regularity", "u", "b")
    q.add_argument("--coloring", default="parity")

    p = add("suite", "property suite on random Embeds pairs")
    p.add_argument("--count", type=_positive, default=100)
    p.add_argument("--maxt", type=_natural, default=16)
    p.add_argument("--maxp", type=_positive, default=12)
    p.add_argument("--workers", type=_positive, default=1)
    p.add_argument("--dump", action="store_true", help="include every case and sub-verdict")

    p = add("explore", "exploratory searches (no claims)")
    p.add_argument("topic", choices=("density", "differences"))
    p.add_argument("--count", type=_positive, default=200)
    p.add_argument("--sets", nargs="*", default=None, help="candidate expressions for the density search")
    return parser


# ---------------------------------------------------------------------------
# commands; each returns (result dict, exit code)


def _sets(args, *names):
    corpus = load_corpus(args.corpus)
    return [parse_expr(getattr(args, n), corpus) for n in names]


def _base(args, text, corpus):
    return parse_base(text, corpus, default_cap=args.indexcap)


def cmd_check(args):
    a, b = _sets(args, "a", "b")
    v = fe(a, b, args.nmax, args.kmax)
    return {"a": ns.describe(a), "b": ns.describe(b), **v.to_dict()}, _FE_EXIT[v.status]


def cmd_proper(args):
    a, b = _sets(args, "a", "b")
    v = proper_fe(a, b)
    return v.to_dict(), 0 if v.proper else 1


def cmd_equiv(args):
    a, b = _sets(args, "a", "b")
    ab, ba = fe_equiv(a, b, args.nmax, args.kmax)
    if ab.embeds and ba.embeds:
        code = 0
    elif ab.refuted or ba.refuted:
        code = 1
    else:
        code = 2
    return {"a_into_b": ab.to_dict(), "b_into_a": ba.to_dict()}, code


def cmd_classify(args):
    (s,) = _sets(args, "s")
    return st.classify(s, args.horizon, args.gap).to_dict(), 0


def cmd_density(args):
    (s,) = _sets(args, "s")
    windows = [int(w) for w in args.windows.split(",") if w.strip()]
    if args.samples == "peaks":
        points = st.peak_points(args.mmax)
    else:
        points = [1 << m for m in range(args.mmax + 1)]
    horizon = max([args.horizon, *points, *windows])
    rep = st.density_report(s, horizon, windows, points)
    if args.csv:
        return rep.to_csv(), 0
    return rep.to_dict(), 0


def cmd_ap(args):
    (s,) = _sets(args, "s")
    v = st.has_ap(s, args.k, args.horizon)
    return v.to_dict(), _TRUTH_EXIT[v.truth]


def cmd_bprime(args):
    a, b = _sets(args, "a", "b")
    try:
        r = construct_bprime(a, b, args.nmax, args.kmax)
    except WitnessExhausted as exc:
        return {"status": "exhausted", "failed_n": exc.n, "partial": exc.partial.to_dict()}, 2
    return {"status": "complete", **r.to_dict()}, 0


def cmd_filter(args):
    corpus = load_corpus(args.corpus)
    expr = lambda text: parse_expr(text, corpus)  # noqa: E731
    base = lambda text: _base(args, text, corpus)  # noqa: E731
    h = args.horizon
    if args.op == "fip":
        v = fip_check(base(args.base), h)
    elif args.op == "member":
        v = filter_member(base(args.base), expr(args.x), h)
    elif args.op == "leftshift":
        v = leftward_shift_member(expr(args.b), base(args.base), int(args.k), h)
    elif args.op == "sum":
        v = filter_sum_member(expr(args.x), base(args.u), base(args.v), h)
    elif args.op == "rich":
        r = urich_check(base(args.u), expr(args.b), h, args.nmax, args.kmax)
        return r.to_dict(), _TRUTH_EXIT[r.truth]
    elif args.op == "fe":
        v = filter_fe(base(args.u), base(args.v), h, args.nmax, args.kmax)
    elif args.op == "leftsum":
        entries = left_sum_property(base(args.v), [expr(t) for t in args.sets], h)
        truths = [e.holds.truth for e in entries]
        code = 1 if Truth.FALSE in truths else 2 if Truth.UNKNOWN in truths else 0
        return {"entries": [e.to_dict() for e in entries]}, code
    else:
        rep = regularity_experiment(base(args.u), expr(args.b), args.coloring, h)
        return rep.to_dict(), _TRUTH_EXIT[rep.gap.truth]
    return v.to_dict(), _TRUTH_EXIT[v.truth]


def cmd_suite(args):
    batch = st.run_suite(args.count, args.seed, args.maxt, args.maxp, workers=args.workers)
    return batch.to_dict(dump=args.dump), 0 if not batch.violations else 1


def cmd_explore(args):
    if args.topic == "density":
        corpus = load_corpus(args.corpus)
        texts = args.sets or DEFAULT_CANDIDATES
        cands = {t: parse_expr(t, corpus) for t in texts}
        found = density_search(cands, args.horizon, min(args.nmax, 12), min(args.kmax, 1 << 16))
        return {"pairs": [c.to_dict() for c in found]}, 0
    return summarize_differences(difference_search(args.count, args.seed)), 0


COMMANDS = {"check": cmd_check, "proper": cmd_proper, "equiv": cmd_equiv, "classify": cmd_classify,
            "density": cmd_density, "ap": cmd_ap, "bprime": cmd_bprime, "filter": cmd_filter,
            "suite": cmd_suite, "explore": cmd_explore}


def envelope(args, result) -> dict:
    flags = {k: v for k, v in sorted(vars(args).items()) if k not in ("command",)}
    command = args.command + (f" {args.op}" if getattr(args, "op", None) else "")
    return {"tool": "fe-lab", "version": __version__, "command": command, "flags": flags,
            "seed": args.seed, "timestamp": datetime.now(timezone.utc).isoformat(), "result": result}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        result, code = COMMANDS[args.command](args)
    except (ExprSyntaxError, EvalError) as exc:
        print(f"fe-lab: error: {exc}", file=sys.stderr)
        return EXIT_SYNTAX
    except TierError as exc:
        print(f"fe-lab: tier error: {exc}", file=sys.stderr)
        return EXIT_TIER
    except FipViolation as exc:
        print(f"fe-lab: {exc}", file=sys.stderr)
        return EXIT_FIP
    except (FeLabError, ValueError, OSError) as exc:
        print(f"fe-lab: error: {exc}", file=sys.stderr)
        return EXIT_OTHER
    if isinstance(result, str):
        sys.stdout.write(result)
    else:
        json.dump(envelope(args, result), sys.stdout, indent=2, sort_keys=True, default=str)
        sys.stdout.write("\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
