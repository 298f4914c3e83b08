"""Command-line front end.

Exit codes: 0 on success, 1 on a user error, 2 when a computed result
fails its own verification.  Option values come from flags first, then
from a ``--config`` JSON file, then from the defaults (dim 1, trunc 8).
"""
import argparse
import json
import sys
from fractions import Fraction

from . import comm_series, feynman, kontsevich, nc_series, super_series, weyl
from .core import FinitePoset, InvalidArgument, InvariantError, enumerate_matchings, mobius
from .expr import Context, evaluate_text

DEFAULTS = {"dim": 1, "trunc": 8, "odd": 0}


def _parse_word(text):
    text = (text or "").strip()
    if not text:
        return ()
    parts = text.split(",") if "," in text else list(text)
    try:
        return tuple(int(p) for p in parts)
    except ValueError:
        raise InvalidArgument(f"malformed word {text!r}") from None


def _parse_matrix(text, dim):
    try:
        rows = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidArgument(f"malformed matrix: {exc}") from None
    if not isinstance(rows, list) or any(not isinstance(r, list) for r in rows):
        raise InvalidArgument("matrix must be a JSON list of lists")
    if len(rows) != dim or any(len(r) != dim for r in rows):
        raise InvalidArgument(f"matrix must be {dim} x {dim}")
    return rows


def _rational(v):
    if isinstance(v, (int, str)) and not isinstance(v, bool):
        return Fraction(v)
    raise InvalidArgument(f"not an exact rational: {v!r}")


def _emit(value, as_json):
    if as_json:
        return json.dumps(value.to_json(), sort_keys=True)
    return str(value)


# ---------------------------------------------------------------- subcommands

def cmd_series(args, out):
    ctx = Context(args.mode, args.dim, args.trunc, args.odd)
    result = evaluate_text(args.expr, ctx)
    for value in (result if isinstance(result, tuple) else (result,)):
        out.append(_emit(value, args.json))


def cmd_weyl(args, out):
    ctx = Context("weyl", args.dim, args.trunc)
    out.append(_emit(evaluate_text(args.expr, ctx), args.json))


def cmd_moments(args, out):
    rows = _parse_matrix(args.cov, args.dim)
    cov = feynman.CovarianceModel(args.dim, tuple(tuple(_rational(v) for v in r) for r in rows))
    out.append(str(feynman.gaussian_moment(_parse_word(args.word), cov)))


def cmd_feynman(args, out):
    rows = _parse_matrix(args.cov, args.dim)
    cov = feynman.CovarianceModel(args.dim, tuple(tuple(_rational(v) for v in r) for r in rows))
    text = args.interaction or args.couplings
    if not text:
        raise InvalidArgument("feynman needs --interaction")
    # the interaction must be known exactly up to the top degree used at this order
    s = evaluate_text(text, Context("comm", args.dim, max(args.trunc, 64)))
    legs = _parse_word(args.legs)
    graphs = feynman.feynman_expand(s, cov, legs, args.order).homogeneous(args.order)
    if args.json:
        line = json.dumps(graphs.to_json(), sort_keys=True)
    else:
        line = str(graphs)
    if args.oracle:
        oracle = feynman.wick_oracle(s, cov, legs, args.order).homogeneous(args.order)
        line += "\t" + (json.dumps(oracle.to_json(), sort_keys=True) if args.json else str(oracle))
        if oracle != graphs:
            out.append(line)
            raise InvariantError("graph expansion and Wick oracle disagree")
    out.append(line)


def cmd_graphs(args, out):
    if args.kind == "matchings":
        for m in enumerate_matchings(range(1, args.n + 1)):
            out.append(json.dumps([list(p) for p in m]) if args.json else " ".join(f"{p}-{q}" for p, q in m))
    elif args.kind == "flag":
        degrees = [int(d) for d in args.degrees.split(",")] if args.degrees else []
        for g, aut in feynman.enumerate_graphs(args.legs, degrees):
            out.append(json.dumps(g.to_json(aut), sort_keys=True))
    else:
        for g in kontsevich.enumerate_admissible(args.k, args.n, simple=args.simple):
            out.append(g.key)


def cmd_invert(args, out):
    ctx = Context(args.mode, args.dim, args.trunc, args.odd)
    values = [evaluate_text(e, ctx) for e in args.expr]
    if args.kind == "mul":
        if len(values) != 1:
            raise InvalidArgument("a multiplicative inverse takes one expression")
        mod = {"comm": comm_series, "nc": nc_series, "super": super_series}.get(args.mode)
        if mod is None:
            raise InvalidArgument(f"no multiplicative inverse in {args.mode} mode")
        out.append(_emit(mod.mul_inverse(values[0]), args.json))
    else:
        mod = {"comm": comm_series, "nc": nc_series}.get(args.mode)
        if mod is None:
            raise InvalidArgument(f"no compositional inverse in {args.mode} mode")
        for v in mod.comp_inverse(values):
            out.append(_emit(v, args.json))


def cmd_qbinom(args, out):
    for a in range(args.n + 1):
        for b in range(args.n + 1 - a):
            q = weyl.quantum_binomial(args.n, a, b)
            if q:
                out.append(f"{a} {b} {(args.n - a - b) // 2} {q}")


def cmd_mobius(args, out):
    try:
        with open(args.poset) as fh:
            data = json.load(fh)
    except OSError as exc:
        raise InvalidArgument(f"cannot read poset file: {exc}") from None
    except json.JSONDecodeError as exc:
        raise InvalidArgument(f"malformed poset file: {exc}") from None
    p = FinitePoset.from_relations(data["elements"], [tuple(r) for r in data.get("relations", [])])
    mu = mobius(p)
    if args.json:
        out.append(json.dumps([[i, k, mu[(i, k)]] for i in p.elements for k in p.elements if p.le(i, k)]))
    else:
        for i in p.elements:
            for k in p.elements:
                if p.le(i, k):
                    out.append(f"{i} {k} {mu[(i, k)]}")


def cmd_kontsevich(args, out):
    ctx = Context("comm", args.dim, args.trunc)
    rows = _parse_matrix(args.alpha, args.dim)
    alpha = kontsevich.PoissonStructure(
        args.dim, tuple(tuple(evaluate_text(str(v), ctx) for v in r) for r in rows))
    f = evaluate_text(args.f, ctx)
    g = evaluate_text(args.g, ctx)
    if args.order > 0 and not args.weights:
        raise InvalidArgument("--weights is required beyond order 0")
    try:
        weights = kontsevich.WeightAssignment.load(args.weights) if args.weights else kontsevich.WeightAssignment()
    except OSError as exc:
        raise InvalidArgument(f"cannot read weights file: {exc}") from None
    for n, c in enumerate(kontsevich.star_product(f, g, alpha, weights, args.order)):
        out.append(f"h^{n}: " + (json.dumps(c.to_json(), sort_keys=True) if args.json else str(c)))


# ---------------------------------------------------------------- argument parsing

def _common(p, odd=False):
    p.add_argument("--dim", type=int)
    p.add_argument("--trunc", type=int)
    if odd:
        p.add_argument("--odd", type=int)
    p.add_argument("--json", action="store_true")


def build_parser():
    parser = argparse.ArgumentParser(prog="qspecies", description="Exact species and series computations.")
    parser.add_argument("--config", help="JSON file with default option values")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("series", help="evaluate an expression in a series ring")
    _common(p, odd=True)
    p.add_argument("--mode", choices=["comm", "nc", "super"], default="comm")
    p.add_argument("--expr", required=True)
    p.set_defaults(func=cmd_series)

    p = sub.add_parser("weyl", help="normal-order a Weyl algebra expression")
    _common(p)
    p.add_argument("--expr", required=True)
    p.set_defaults(func=cmd_weyl)

    p = sub.add_parser("moments", help="Gaussian moment of a word")
    _common(p)
    p.add_argument("--cov", required=True)
    p.add_argument("--word", required=True)
    p.set_defaults(func=cmd_moments)

    p = sub.add_parser("feynman", help="graph expansion of a perturbed Gaussian moment")
    _common(p)
    p.add_argument("--cov", required=True)
    p.add_argument("--interaction")
    p.add_argument("--couplings", help="alias of --interaction")
    p.add_argument("--legs", default="")
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--oracle", action="store_true")
    p.set_defaults(func=cmd_feynman)

    p = sub.add_parser("graphs", help="enumerate matchings, flag graphs or admissible graphs")
    _common(p)
    p.add_argument("kind", choices=["matchings", "flag", "admissible"])
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--k", type=int, default=0)
    p.add_argument("--legs", type=int, default=0)
    p.add_argument("--degrees", default="")
    p.add_argument("--simple", action="store_true")
    p.set_defaults(func=cmd_graphs)

    p = sub.add_parser("invert", help="multiplicative or compositional inverse")
    _common(p, odd=True)
    p.add_argument("--mode", choices=["comm", "nc", "super"], default="comm")
    p.add_argument("--kind", choices=["mul", "comp"], default="mul")
    p.add_argument("--expr", action="append", required=True)
    p.set_defaults(func=cmd_invert)

    p = sub.add_parser("qbinom", help="quantum binomial table for one n")
    _common(p)
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_qbinom)

    p = sub.add_parser("mobius", help="Möbius table of a poset file")
    _common(p)
    p.add_argument("--poset", required=True)
    p.set_defaults(func=cmd_mobius)

    p = sub.add_parser("kontsevich", help="weighted admissible-graph star product")
    _common(p)
    p.add_argument("--alpha", required=True)
    p.add_argument("--f", required=True)
    p.add_argument("--g", required=True)
    p.add_argument("--order", type=int, default=1)
    p.add_argument("--weights")
    p.set_defaults(func=cmd_kontsevich)
    return parser


def _apply_config(args):
    config = {}
    if args.config:
        try:
            with open(args.config) as fh:
                config = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise InvalidArgument(f"cannot read config: {exc}") from None
    for key, default in DEFAULTS.items():
        if hasattr(args, key) and getattr(args, key) is None:
            setattr(args, key, config.get(key, default))
    for key, value in config.items():
        if key not in DEFAULTS and hasattr(args, key) and getattr(args, key) in (None, "", False):
            setattr(args, key, value)


def main(argv=None, stdout=None, stderr=None):
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 1 if exc.code else 0
    out = []
    try:
        _apply_config(args)
        args.func(args, out)
    except InvariantError as exc:
        for line in out:
            print(line, file=stdout)
        print(f"error: invariant failed: {exc}", file=stderr)
        return 2
    except (InvalidArgument, kontsevich.MissingWeight, KeyError, ValueError) as exc:
        print(f"error: {exc}", file=stderr)
        return 1
    for line in out:
        print(line, file=stdout)
    return 0


if __name__ == "__main__":
    sys.exit(main())
