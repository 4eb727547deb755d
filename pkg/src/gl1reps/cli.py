"""Command line front end: ``gl1reps enumerate | matrix | convert | verify | hwv``.

Signatures are comma separated rationals (``1/2,3``).  Settings can also come
from a JSON file named by ``GL1REPS_CONFIG``; command line flags win.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, fields, replace
from typing import Sequence

from . import scalar
from .c_rep import CModule, c_hwv_flag_conditions, signature_c_to_gz, signature_gz_to_c
from .errors import (
    GuardExceeded,
    Gl1RepsError,
    InvalidTable,
    LengthMismatch,
    MalformedSignature,
    NotEssentiallyTypical,
)
from .gz_rep import GzModule
from .isomap import table_c_to_gz, table_gz_to_c
from .scalar import RadicalScalar
from .tables import (
    CSignature,
    CTable,
    GzSignature,
    GzTable,
    InfiniteCSignature,
    InfiniteGzSignature,
    c_is_essentially_typical,
    frac,
    gz_highest_table,
    gz_is_essentially_typical,
    render_c,
    render_gz,
)
from .vector import GeneratorId
from . import verify

CONFIG_ENV = "GL1REPS_CONFIG"

EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_CODES = {
    MalformedSignature: 3,
    LengthMismatch: 3,
    NotEssentiallyTypical: 4,
    GuardExceeded: 5,
    InvalidTable: 6,
}
EXIT_OTHER = 7


@dataclass(frozen=True)
class Config:
    guard: int = 10**5
    factor_bound: int = 10**6
    seed: int = verify.DEFAULT_SEED
    depth: int = verify.DEFAULT_DEPTH
    bound: int = 4
    sample: int = verify.DEFAULT_SAMPLE

    def __post_init__(self):
        for f in fields(self):
            value = getattr(self, f.name)
            if f.name != "seed" and (not isinstance(value, int) or value <= 0):
                raise ValueError(f"config {f.name} must be a positive integer, got {value!r}")


def load_config(path: str | None = None) -> Config:
    path = path or os.environ.get(CONFIG_ENV)
    if not path:
        return Config()
    with open(path, encoding="utf-8") as fh:
        data = json.load(fh)
    known = {f.name for f in fields(Config)}
    unknown = set(data) - known
    if unknown:
        raise ValueError(f"unknown config keys: {sorted(unknown)}")
    return Config(**data)


def parse_labels(text: str) -> list:
    return [frac(x.strip()) for x in text.split(",") if x.strip()]


def _fmt(x: RadicalScalar, approx: bool) -> str:
    return f"{float(x):.15g}" if approx else str(x)


def _emit(obj) -> None:
    print(json.dumps(obj, indent=None, sort_keys=True))


def _gz_signature(args) -> GzSignature:
    sig = GzSignature(parse_labels(args.sig))
    if not gz_is_essentially_typical(sig):
        raise NotEssentiallyTypical(f"{sig} is not essentially typical")
    return sig


def _c_signature(args) -> CSignature:
    labels = parse_labels(args.sig)
    if args.n is not None and len(labels) not in (2 * args.n, 2 * args.n + 1):
        raise LengthMismatch(f"--n {args.n} needs {2 * args.n} or {2 * args.n + 1} labels, got {len(labels)}")
    sig = CSignature(labels)
    if not c_is_essentially_typical(sig):
        raise NotEssentiallyTypical(f"{sig} is not essentially typical")
    return sig


def _module(args):
    if args.basis == "c":
        return CModule(_c_signature(args), guard=args.config.guard)
    return GzModule(_gz_signature(args), guard=args.config.guard)


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def cmd_enumerate(args) -> int:
    mod = _module(args)
    if args.text:
        render = render_c if args.basis == "c" else render_gz
        for n, t in enumerate(mod.basis):
            print(f"# {n}")
            print(render(t))
        print(f"count {mod.dim}")
    else:
        _emit({"basis": args.basis, "count": mod.dim, "tables": [t.to_json() for t in mod.basis]})
    return 0


def cmd_matrix(args) -> int:
    mod = _module(args)
    gen = GeneratorId.parse(args.gen)
    expected = "glz" if args.basis == "c" else "gl0"
    if gen.convention != expected:
        raise ValueError(f"generator {gen} does not act on the {args.basis} basis")
    m = mod.matrix(gen)
    out = {
        "generator": str(gen),
        "dim": m.dim,
        "order": list(range(m.dim)),
        "basis": [t.to_json() for t in mod.basis],
        "entries": [[r, c, _fmt(v, args.approx)] for r, c, v in m.entries()],
    }
    if not args.approx:
        out["entries_json"] = [[r, c, v.to_json()] for r, c, v in m.entries()]
    if args.dense:
        out["dense"] = [[_fmt(v, args.approx) for v in row] for row in m.dense()]
    _emit(out)
    return 0


def cmd_convert(args) -> int:
    text = sys.stdin.read() if args.input == "-" else open(args.input, encoding="utf-8").read()
    data = json.loads(text)
    if args.to == "c":
        src = GzTable.from_json(data)
        out = table_gz_to_c(_validated(src))
    else:
        src = CTable.from_json(data)
        out = table_c_to_gz(_validated(src))
    payload = json.dumps(out.to_json(), sort_keys=True) + "\n"
    if args.output in (None, "-"):
        sys.stdout.write(payload)
    else:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(payload)
    return 0


def _validated(t):
    from .tables import require_valid

    require_valid(t)
    return t


def _infinite_c_signature(args) -> InfiniteCSignature:
    nonneg = parse_labels(args.sig_tail)
    if len(nonneg) < 2:
        raise MalformedSignature("--sig-tail needs at least M_0 and M_1")
    neg = parse_labels(args.sig_neg) if args.sig_neg else [nonneg[1] + 1]
    sig = InfiniteCSignature(neg, nonneg)
    if not c_is_essentially_typical(sig):
        raise NotEssentiallyTypical(f"{sig}: M_0 + M_1 is an integer")
    return sig


def _infinite_gz_signature(args) -> InfiniteGzSignature:
    sig = InfiniteGzSignature(parse_labels(args.sig), args.tail)
    if not gz_is_essentially_typical(sig):
        raise NotEssentiallyTypical(f"{sig} is not essentially typical")
    return sig


def run_suite(args) -> list[verify.CheckReport]:
    cfg = args.config
    bound = args.bound or cfg.bound
    suites = ["relations", "hwv", "equivariance", "irreducibility"] if args.suite == "all" else [args.suite]
    walk = {"count": cfg.sample, "depth": cfg.depth, "seed": args.seed if args.seed is not None else cfg.seed}
    reports: list[verify.CheckReport] = []
    if args.infinite_c:
        sig = _infinite_c_signature(args)
        for suite in suites:
            if suite == "relations":
                reports += verify.check_relations("c_infinite", sig, bound, **walk)
            elif suite == "hwv":
                reports += verify.check_highest_weight("c_infinite", sig, bound)
        return reports
    if args.infinite_gz:
        sig = _infinite_gz_signature(args)
        for suite in suites:
            if suite == "relations":
                reports += verify.check_relations("gz_infinite", sig, bound, **walk)
            elif suite == "hwv":
                reports += verify.check_highest_weight("gz_infinite", sig, bound)
        return reports
    if args.basis == "c":
        c_sig = _c_signature(args)
        gz_sig = signature_c_to_gz(c_sig)
    else:
        gz_sig = _gz_signature(args)
        c_sig = signature_gz_to_c(gz_sig)
    for suite in suites:
        if suite == "relations":
            reports += verify.check_relations(args.basis, c_sig if args.basis == "c" else gz_sig, args.bound)
        elif suite == "hwv":
            reports += verify.check_highest_weight(args.basis, c_sig if args.basis == "c" else gz_sig)
        elif suite == "equivariance":
            reports.append(verify.check_equivariance(c_sig))
        elif suite == "irreducibility":
            reports.append(verify.check_irreducibility_probe(gz_sig))
    return reports


def cmd_verify(args) -> int:
    reports = run_suite(args)
    for r in reports:
        print(r.to_json() if args.jsonl else r.summary())
        if not r.passed and not args.jsonl:
            print("  counterexample: " + json.dumps(r.counterexample, sort_keys=True))
    return 0 if all(r.passed for r in reports) else EXIT_FAIL


def cmd_hwv(args) -> int:
    """Highest tables for the distinguished and the C flag."""
    mod = _module(args)
    gz_mod = mod.gz_module if isinstance(mod, CModule) else mod
    flag = [t for t in gz_mod.basis if c_hwv_flag_conditions(t)]
    out = {
        "gz_highest": gz_highest_table(gz_mod.signature).to_json(),
        "c_highest_gz_rows": [t.to_json() for t in flag],
        "c_highest": [table_gz_to_c(t).to_json() for t in flag],
    }
    _emit(out)
    return 0


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------


def _add_basis(p: argparse.ArgumentParser) -> None:
    g = p.add_mutually_exclusive_group()
    g.add_argument("--gz", dest="basis", action="store_const", const="gz", help="GZ basis (default)")
    g.add_argument("--c", dest="basis", action="store_const", const="c", help="C basis")
    p.set_defaults(basis="gz")
    p.add_argument("--n", type=int, help="rank n of gl(n|1|n); checks the number of C labels")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gl1reps", description=__doc__.splitlines()[0])
    parser.add_argument("--config", help=f"JSON config file (default: ${CONFIG_ENV})")
    parser.add_argument("--guard", type=int, help="maximum number of basis tables")
    parser.add_argument("--factor-bound", type=int, help="trial division bound for square roots")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("enumerate", help="list the basis tables of a module")
    _add_basis(p)
    p.add_argument("--sig", required=True)
    p.add_argument("--text", action="store_true", help="triangular text layout instead of JSON")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("matrix", help="sparse matrix of one generator")
    _add_basis(p)
    p.add_argument("--sig", required=True)
    p.add_argument("--gen", required=True, help="e,i,j for the GZ basis or E,i,j for the C basis")
    p.add_argument("--dense", action="store_true", help="also print the dense matrix")
    p.add_argument("--approx", action="store_true", help="15-digit decimals instead of exact values")
    p.set_defaults(func=cmd_matrix)

    p = sub.add_parser("convert", help="relabel one table between the GZ and C bases")
    p.add_argument("--to", choices=("c", "gz"), required=True)
    p.add_argument("--in", dest="input", default="-")
    p.add_argument("--out", dest="output")
    p.set_defaults(func=cmd_convert)

    p = sub.add_parser("verify", help="run consistency checks")
    p.add_argument("suite", choices=("relations", "hwv", "equivariance", "irreducibility", "all"))
    _add_basis(p)
    p.add_argument("--sig", help="finite signature, or the head of an infinite GZ signature")
    p.add_argument("--tail", help="repeating GZ label for --infinite-gz")
    p.add_argument("--infinite-gz", action="store_true")
    p.add_argument("--infinite-c", action="store_true")
    p.add_argument("--sig-tail", help="M_0,M_1,... for --infinite-c; the last value repeats")
    p.add_argument("--sig-neg", help="M_-1,M_-2,... for --infinite-c (default: M_1 + 1)")
    p.add_argument("--bound", type=int, help="generator index bound")
    p.add_argument("--seed", type=int, help="sampling seed for infinite modules")
    p.add_argument("--jsonl", action="store_true", help="one JSON report per line")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("hwv", help="highest tables for the GZ and C flags")
    _add_basis(p)
    p.add_argument("--sig", required=True)
    p.set_defaults(func=cmd_hwv)
    return parser


_VALUE_OPTIONS = {"--sig", "--sig-tail", "--sig-neg", "--tail", "--gen"}


def _glue_negative_values(argv: Sequence[str]) -> list[str]:
    """Turn ``--sig -1/2,3`` into ``--sig=-1/2,3`` so argparse does not read a flag."""
    out: list[str] = []
    it = iter(argv)
    for tok in it:
        if tok in _VALUE_OPTIONS:
            nxt = next(it, None)
            out.append(tok if nxt is None else f"{tok}={nxt}")
        else:
            out.append(tok)
    return out


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(_glue_negative_values(sys.argv[1:] if argv is None else argv))
    try:
        cfg = load_config(args.config)
        overrides = {k: v for k, v in (("guard", args.guard), ("factor_bound", args.factor_bound)) if v is not None}
        cfg = replace(cfg, **overrides)
    except (OSError, ValueError, TypeError) as exc:
        print(f"error: bad configuration: {exc}", file=sys.stderr)
        return EXIT_USAGE
    args.config = cfg
    scalar.set_factor_bound(cfg.factor_bound)
    if args.command == "verify":
        if args.infinite_c and not args.sig_tail:
            parser.error("--infinite-c needs --sig-tail")
        if not args.infinite_c and not args.sig:
            parser.error("verify needs --sig")
    try:
        return args.func(args)
    except InvalidTable as exc:
        print("error: invalid table", file=sys.stderr)
        for v in exc.violations:
            print(f"  {v}", file=sys.stderr)
        return EXIT_CODES[InvalidTable]
    except Gl1RepsError as exc:
        code = next((c for cls, c in EXIT_CODES.items() if isinstance(exc, cls)), EXIT_OTHER)
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return code
    except (ValueError, KeyError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
