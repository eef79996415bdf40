"""Command-line front end.

Exit codes: 0 pass/found, 1 fail/not found, 2 usage or invalid
parameters, 3 element budget exceeded. Every non-usage exit prints a JSON
document on stdout; diagnostics go to stderr.
"""

from __future__ import annotations

import argparse
import json
import sys

from .affine import DEFAULT_BUDGET, AffineSpace, rank_profile
from .codes import singleton_check, weight_enumerator
from .constructions import CONSTRUCTIONS, FAMILIES, bound, construct, verify_family
from .echelon import all_echelon, find_full_pivot_matrix, pivot_profile
from .errors import BudgetExceeded, FieldTooSmall, RankRangeError
from .field import make_field
from .forms import skew_normal_form
from .matrix import format_text, read_text
from .search import SearchSpec, exists_affine_of_dim, max_affine_dim

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3


def _emit(payload, out):
    out.write(json.dumps(payload, sort_keys=True) + "\n")


def _load_space(path) -> AffineSpace:
    with open(path) as fh:
        return AffineSpace.from_json(fh.read())


def _params(a):
    return {k: getattr(a, k) for k in ("m", "n", "s", "r") if getattr(a, k, None) is not None}


def cmd_construct(a, out):
    field = make_field(a.p) if a.p is not None else None
    S = construct(a.family, field=field, **_params(a))
    if a.out:
        with open(a.out, "w") as fh:
            fh.write(S.to_json(indent=1) + "\n")
    _emit({"family": a.family, "dimension": S.dim, "space": S.to_dict()}, out)
    return EXIT_OK


def cmd_verify(a, out):
    field = make_field(a.p) if a.p is not None else None
    if a.family != "counterexample-f3" and field is None:
        raise _Usage("--p is required")
    rep = verify_family(a.family, _params(a), field, a.budget, workers=a.threads)
    _emit(rep.to_dict(), out)
    return EXIT_OK if rep.passed else EXIT_FAIL


def cmd_bounds(a, out):
    value = bound(a.family, **_params(a))
    _emit(list(value) if isinstance(value, tuple) else value, out)
    return EXIT_OK


def cmd_scan(a, out):
    S = _load_space(a.inp)
    prof = rank_profile(S, a.budget, workers=a.threads)
    _emit({"dimension": S.dim, "p": S.p, "shape": list(S.shape), **prof.to_dict()}, out)
    return EXIT_OK


def cmd_search(a, out):
    if a.samples is not None and a.exhaustive:
        raise _Usage("--exhaustive and --samples are mutually exclusive")
    random_mode = a.samples is not None
    if random_mode and a.seed is None:
        raise _Usage("--samples requires an explicit --seed")
    spec = SearchSpec(
        a.m, a.n, a.s, a.r, make_field(a.p), a.dim,
        "skew" if a.skew else "full", a.echelon,
        "random" if random_mode else "exhaustive", a.samples or 0, a.seed,
    )
    if a.dim is None:
        dim, res = max_affine_dim(spec, a.budget)
        payload = res.to_dict()
        payload["max_dim"] = dim
    else:
        res = exists_affine_of_dim(spec, a.budget)
        payload = res.to_dict()
    _emit(payload, out)
    return EXIT_OK if res.found else EXIT_FAIL


def cmd_normal_form(a, out):
    M = read_text(a.inp)
    nf = skew_normal_form(M)
    congruent = nf.H.T @ M @ nf.H
    _emit(
        {
            "r": nf.r,
            "d": list(nf.d),
            "H": format_text(nf.H),
            "congruent": format_text(congruent),
            "matches_normal_form": congruent == nf.normal_matrix(),
        },
        out,
    )
    return EXIT_OK


def cmd_pivot(a, out):
    S = _load_space(a.inp)
    prof = pivot_profile(S)
    payload = prof.to_dict()
    payload["all_echelon"] = all_echelon(S, a.budget, workers=a.threads)
    if not payload["all_echelon"]:
        payload["witness"] = None
        payload["error"] = "some element is not in row echelon form"
        _emit(payload, out)
        return EXIT_FAIL
    try:
        payload["witness"] = find_full_pivot_matrix(S).tolist()
    except FieldTooSmall as exc:
        payload["witness"] = None
        payload["error"] = str(exc)
        _emit(payload, out)
        return EXIT_FAIL
    _emit(payload, out)
    return EXIT_OK


def cmd_code_params(a, out):
    S = _load_space(a.inp)
    cp = weight_enumerator(S, a.budget)
    payload = cp.to_dict()
    payload["element_profile"] = rank_profile(S, a.budget).to_dict()
    payload["singleton_ok"] = None if cp.degenerate else singleton_check(S, a.budget)
    _emit(payload, out)
    return EXIT_OK


class _Usage(Exception):
    pass


def build_parser() -> argparse.ArgumentParser:
    def add_globals(parser, defaults):
        # accepted before or after the subcommand; the subcommand copy only
        # overrides when given explicitly
        kw = (lambda v: {"default": v}) if defaults else (lambda v: {"default": argparse.SUPPRESS})
        parser.add_argument("--budget", type=int, help="element budget", **kw(DEFAULT_BUDGET))
        parser.add_argument("--threads", type=int, help="enumeration partitions", **kw(1))
        parser.add_argument("--seed", type=int, help="seed for randomized commands", **kw(None))

    common = argparse.ArgumentParser(add_help=False)
    add_globals(common, False)

    shape = argparse.ArgumentParser(add_help=False)
    for k in ("m", "n", "s", "r", "p"):
        shape.add_argument(f"--{k}", type=int)

    parser = argparse.ArgumentParser(prog="rankrange", description=__doc__.splitlines()[0])
    add_globals(parser, True)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", parents=[common, shape])
    p.add_argument("--family", required=True, choices=CONSTRUCTIONS)
    p.add_argument("--out")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("verify", parents=[common, shape])
    p.add_argument("--family", required=True, choices=CONSTRUCTIONS)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bounds", parents=[common, shape])
    p.add_argument("--family", required=True, choices=sorted(FAMILIES))
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("scan", parents=[common])
    p.add_argument("--in", dest="inp", required=True)
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("search", parents=[common])
    for k in ("m", "n", "s", "r", "p"):
        p.add_argument(f"--{k}", type=int, required=True)
    p.add_argument("--dim", type=int)
    p.add_argument("--skew", action="store_true")
    p.add_argument("--echelon", action="store_true")
    p.add_argument("--exhaustive", action="store_true")
    p.add_argument("--samples", type=int)
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("normal-form", parents=[common])
    p.add_argument("--in", dest="inp", required=True)
    p.set_defaults(func=cmd_normal_form)

    p = sub.add_parser("pivot", parents=[common])
    p.add_argument("--in", dest="inp", required=True)
    p.set_defaults(func=cmd_pivot)

    p = sub.add_parser("code-params", parents=[common])
    p.add_argument("--in", dest="inp", required=True)
    p.set_defaults(func=cmd_code_params)
    return parser


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        a = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return a.func(a, out)
    except _Usage as exc:
        err.write(f"usage error: {exc}\n")
        _emit({"error": str(exc), "kind": "usage"}, out)
        return EXIT_USAGE
    except BudgetExceeded as exc:
        err.write(f"budget exceeded: {exc}\n")
        _emit({"error": str(exc), "kind": "BudgetExceeded", "cost": exc.cost, "budget": exc.budget}, out)
        return EXIT_BUDGET
    except (RankRangeError, OSError, ValueError) as exc:
        err.write(f"error: {exc}\n")
        _emit({"error": str(exc), "kind": type(exc).__name__}, out)
        return EXIT_USAGE


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
