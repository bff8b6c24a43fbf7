"""Command line front end.

Inputs are presentation files, ``-`` for standard input, or a builtin name
``builtin:<family>:<size>[:<order>]``, for example ``builtin:ut:4:column``.

    nilembed builtin heisenberg 1 | nilembed embed nickel -
    nilembed normalform heis.pc "g2 g1"
    nilembed dims ut 3..6 --order column
    nilembed report paper
"""

import argparse
import json
import re
import sys
from dataclasses import dataclass

from . import collect, jennings, multpoly, nickel, verify
from .errors import NilembedError
from .poly import format_poly, parse_poly
from .presentation import BUILTIN_FAMILIES, central_product, direct_product, parse_presentation, serialize


class UsageError(Exception):
    pass


@dataclass
class CliConfig:
    subcommand: str
    source: str = None
    out: str = None
    format: str = "text"
    seed: int = 0
    max_steps: int = collect.DEFAULT_MAX_STEPS
    max_dim: int = None
    jennings_max_dim: int = jennings.DEFAULT_MAX_DIM

    def __post_init__(self):
        for name in ("max_steps", "max_dim", "jennings_max_dim"):
            v = getattr(self, name)
            if v is not None and v <= 0:
                raise UsageError(f"--{name.replace('_', '-')} must be positive")


# -- input ---------------------------------------------------------------

def builtin_from_args(family, size, order=None):
    if family not in BUILTIN_FAMILIES:
        raise UsageError(f"unknown builtin family {family!r}; choose from {', '.join(BUILTIN_FAMILIES)}")
    try:
        size = int(size)
    except ValueError:
        raise UsageError(f"builtin size must be an integer, got {size!r}") from None
    if family == "ut":
        return BUILTIN_FAMILIES[family](size, order or "standard")
    if order:
        raise UsageError(f"--order only applies to the ut family")
    return BUILTIN_FAMILIES[family](size)


def load(source):
    if source.startswith("builtin:"):
        parts = source.split(":")[1:]
        if len(parts) not in (2, 3):
            raise UsageError(f"bad builtin source {source!r}; expected builtin:<family>:<size>[:<order>]")
        return builtin_from_args(*parts)
    if source == "-":
        text = sys.stdin.read()
    else:
        try:
            with open(source, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise NilembedError(f"cannot open {source}: {exc.strerror}") from None
    return parse_presentation(text)


def parse_range(text):
    m = re.fullmatch(r"(\d+)(?:(?:\.\.|-)(\d+))?", text)
    if not m:
        raise UsageError(f"bad range {text!r}; expected <a>..<b> or <a>")
    lo = int(m.group(1))
    hi = int(m.group(2) or lo)
    if hi < lo:
        raise UsageError(f"empty range {text!r}")
    return range(lo, hi + 1)


def parse_seeds(text):
    polys = []
    for item in text.split(","):
        item = re.sub(r"\bt(\d+)", r"x\1", item.strip())
        try:
            polys.append(parse_poly(item))
        except ValueError as exc:
            raise UsageError(f"bad seed polynomial {item!r}: {exc}") from None
    return polys


# -- output --------------------------------------------------------------

_NUMBER_LIST = re.compile(r"\[\s*(-?\d+(?:,\s*-?\d+)*)\s*\]")


def dumps(data):
    """Stable JSON: sorted keys, one line per matrix row."""
    text = json.dumps(data, sort_keys=True, indent=1)
    return _NUMBER_LIST.sub(lambda m: "[" + ", ".join(t.strip() for t in m.group(1).split(",")) + "]", text)


def emit(cfg, text=None, data=None):
    if cfg.format == "json":
        out = dumps(data) + "\n"
    else:
        out = text if text.endswith("\n") else text + "\n"
    if cfg.out and cfg.out != "-":
        with open(cfg.out, "w", encoding="utf-8") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)


def format_matrix(M):
    width = max((len(str(v)) for row in M for v in row), default=1)
    return "\n".join("  [" + " ".join(str(v).rjust(width) for v in row) + "]" for row in M)


# -- subcommands ---------------------------------------------------------

def cmd_builtin(args, cfg):
    P = builtin_from_args(args.family, args.size, args.order)
    text = serialize(P)
    if args.dest != "-":
        cfg.out = args.dest
    emit(cfg, text, {"presentation": text})


def cmd_normalform(args, cfg):
    P = load(args.source)
    try:
        word = collect.parse_word(args.word, P.n)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    nf = collect.normal_form(P, word, cfg.max_steps)
    emit(cfg, str(tuple(nf)), {"word": args.word, "normal_form": list(nf)})


def cmd_multpolys(args, cfg):
    P = load(args.source)
    if args.generator is not None and not 1 <= args.generator <= P.n:
        raise UsageError(f"--generator must lie in 1..{P.n}")
    gens = [args.generator - 1] if args.generator is not None else range(P.n)
    lines, data = [], []
    for j in gens:
        q = multpoly.restricted_mult_polys(P, j, max_steps=cfg.max_steps, seed=cfg.seed)
        lines.append(f"a_{j + 1}^-1:")
        lines.extend(f"  q{i + 1} = {format_poly(p)}" for i, p in enumerate(q.polys))
        data.append({"generator": j + 1, "polys": [format_poly(p) for p in q.polys]})
    emit(cfg, "\n".join(lines), {"group": P.describe(), "restricted": data})


def cmd_census(args, cfg):
    if args.family != "ut":
        raise UsageError("census is only defined for the ut family")
    prod = multpoly.ut_symbolic_product(args.m, args.order)
    census = multpoly.monomial_census_ut(args.m, prod)
    chain_ok, _ = multpoly.chain_shape_check(prod)
    lines = [f"{'pair':>8} {'monomials':>10} {'bound':>7}"]
    for r in census["rows"]:
        lines.append(f"{str(r.pair):>8} {r.count:>10} {r.bound:>7}  {'ok' if r.ok else 'FAIL'}")
    lines.append(f"total {census['total']}, sum of bounds {census['bound_total']}, 3^m = {census['three_to_m']}")
    lines.append(f"chain shape {'ok' if chain_ok else 'FAIL'}")
    data = {"m": args.m, "order": args.order, "total": census["total"],
            "bound_total": census["bound_total"], "three_to_m": census["three_to_m"],
            "chain_shape_ok": chain_ok, "ok": census["ok"] and chain_ok,
            "rows": [{"pair": list(r.pair), "count": r.count, "bound": r.bound} for r in census["rows"]]}
    emit(cfg, "\n".join(lines), data)
    return 0 if data["ok"] else 1


def _render_rep(R):
    lines = [f"{R.group}: {R.method} embedding of dimension {R.dimension}",
             "basis: " + ", ".join(str(b) for b in R.basis)]
    for name, M in zip(R.names, R.matrices):
        lines.append(f"{name} ->")
        lines.append(format_matrix(M))
    return "\n".join(lines)


def _rep_json(R):
    data = R.to_json()
    if R.method == "nickel":
        data["basis"] = [format_poly(b) for b in R.basis]
    return data


def embedding(P, method, cfg, seeds=None, basis_order=None):
    if method == "nickel":
        B = nickel.closure(P, seeds=seeds, max_dim=cfg.max_dim)
        return nickel.extract_matrices(P, B, order=basis_order)
    return jennings.jennings_matrices(P, max_dim=cfg.jennings_max_dim, max_steps=cfg.max_steps)


def cmd_embed(args, cfg):
    P = load(args.source)
    if args.count_only:
        if args.method == "jennings":
            dim = jennings.jennings_dimension(P)
        else:
            dim = len(nickel.closure(P, max_dim=cfg.max_dim))
        emit(cfg, str(dim), {"group": P.describe(), "method": args.method, "dimension": dim})
        return
    seeds = parse_seeds(args.seeds) if args.seeds else None
    order = parse_seeds(args.basis_order) if args.basis_order else None
    if (seeds is not None or order is not None) and args.method != "nickel":
        raise UsageError("--seeds and --basis-order only apply to the nickel embedding")
    R = embedding(P, args.method, cfg, seeds, order)
    emit(cfg, _render_rep(R), _rep_json(R))


def cmd_verify(args, cfg):
    P = load(args.source)
    R = embedding(P, args.embedding, cfg)
    report = verify.verify_representation(P, R, args.samples, cfg.seed)
    emit(cfg, report.format(), report.to_json())
    return 0 if report.ok else 1


def cmd_dims(args, cfg):
    report = verify.dims_report(args.family, parse_range(args.range), args.order, cfg.max_dim)
    emit(cfg, report.format(), report.to_json())
    return 0 if report.ok else 1


def cmd_product(args, cfg):
    A, B = load(args.first), load(args.second)
    if args.show:
        Q = direct_product(A, B) if args.show == "direct" else central_product(A, B)
        emit(cfg, serialize(Q), {"presentation": serialize(Q)})
        return 0
    rep = verify.product_report(A, B)
    lines = [f"{rep['A']}: {rep['dim_A']}", f"{rep['B']}: {rep['dim_B']}",
             f"direct product: {rep['dim_direct']} (expected {rep['dim_A'] + rep['dim_B'] - 1})"]
    if rep["dim_central"] is None:
        lines.append("central product: not defined")
    else:
        lines.append(f"central product: {rep['dim_central']} (expected {rep['dim_A'] + rep['dim_B'] - 2})")
    emit(cfg, "\n".join(lines), rep)
    return 0 if rep["ok"] else 1


def cmd_report(args, cfg):
    rows = verify.criteria_report()
    lines = [f"{num:>2}  {'PASS' if ok else 'FAIL'}  {title}: {detail}" for num, title, ok, detail in rows]
    ok = all(r[2] for r in rows)
    lines.append("all criteria pass" if ok else "some criteria FAIL")
    emit(cfg, "\n".join(lines), {"ok": ok, "criteria": [
        {"number": n, "title": t, "ok": o, "detail": d} for n, t, o, d in rows]})
    return 0 if ok else 1


# -- parser --------------------------------------------------------------

def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="write output to this file")
    common.add_argument("--format", choices=("text", "json"))
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--max-steps", type=int, default=collect.DEFAULT_MAX_STEPS,
                        help="collection rewrite budget")
    common.add_argument("--max-dim", type=int, default=None,
                        help="Nickel basis size budget (default: the class/rank bound)")
    common.add_argument("--jennings-max-dim", type=int, default=jennings.DEFAULT_MAX_DIM)

    ap = argparse.ArgumentParser(prog="nilembed", description=__doc__,
                                 formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = ap.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("builtin", parents=[common], help="print a builtin presentation")
    p.add_argument("family", choices=sorted(BUILTIN_FAMILIES))
    p.add_argument("size")
    p.add_argument("dest", nargs="?", default="-")
    p.add_argument("--order", choices=("standard", "column"))
    p.set_defaults(func=cmd_builtin)

    p = sub.add_parser("normalform", parents=[common], help="collect a word")
    p.add_argument("source")
    p.add_argument("word")
    p.set_defaults(func=cmd_normalform)

    p = sub.add_parser("multpolys", parents=[common], help="restricted multiplication polynomials")
    p.add_argument("source")
    p.add_argument("--generator", type=int, help="1-based generator index")
    p.set_defaults(func=cmd_multpolys)

    p = sub.add_parser("census", parents=[common], help="monomial census of the UT_m product")
    p.add_argument("family")
    p.add_argument("m", type=int)
    p.add_argument("--order", choices=("standard", "column"), default="standard")
    p.set_defaults(func=cmd_census)

    p = sub.add_parser("embed", parents=[common], help="compute an embedding")
    p.add_argument("method", choices=("nickel", "jennings"))
    p.add_argument("source")
    p.add_argument("--seeds", help="comma separated seed polynomials, e.g. t1,t2+1")
    p.add_argument("--basis-order", help="list the Nickel basis in this order, e.g. t1,t3,t2,1")
    p.add_argument("--count-only", action="store_true")
    p.set_defaults(func=cmd_embed, default_format="json")

    p = sub.add_parser("verify", parents=[common], help="audit an embedding")
    p.add_argument("source")
    p.add_argument("--embedding", choices=("nickel", "jennings"), default="nickel")
    p.add_argument("--samples", type=int, default=200)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("dims", parents=[common], help="dimension table for a builtin family")
    p.add_argument("family", choices=sorted(BUILTIN_FAMILIES))
    p.add_argument("range")
    p.add_argument("--order", choices=("standard", "column"))
    p.set_defaults(func=cmd_dims)

    p = sub.add_parser("product", parents=[common], help="product dimension identities")
    p.add_argument("first")
    p.add_argument("second")
    p.add_argument("--show", choices=("direct", "central"), help="print the product presentation instead")
    p.set_defaults(func=cmd_product)

    p = sub.add_parser("report", parents=[common], help="run the reproduction criteria")
    p.add_argument("which", choices=("paper",))
    p.set_defaults(func=cmd_report)
    return ap


def main(argv=None):
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        fmt = args.format or getattr(args, "default_format", "text")
        cfg = CliConfig(args.subcommand, getattr(args, "source", None), args.out, fmt, args.seed,
                        args.max_steps, args.max_dim, args.jennings_max_dim)
        if getattr(args, "samples", 1) <= 0:
            raise UsageError("--samples must be positive")
        code = args.func(args, cfg)
    except UsageError as exc:
        print(f"nilembed: usage error: {exc}", file=sys.stderr)
        return 2
    except (NilembedError, ValueError, IndexError) as exc:
        print(f"nilembed: error: {exc}", file=sys.stderr)
        return 1
    return code or 0


if __name__ == "__main__":
    sys.exit(main())
