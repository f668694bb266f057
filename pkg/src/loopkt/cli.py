"""Command-line entry point: ``loopkt <subcommand> ...``.

Exit codes: 0 on success or full pass, 1 when a verification fails,
2 on usage or parse errors.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import chern, tower as tw
from .errors import LoopKError
from .parsing import parse_element
from .quotient_rings import RING_BUILDERS, is_symmetric, symmetric_reduce
from .verify import DEFAULT_DEGREE, DEFAULT_RMAX, check_gamma_truncation, default_seed, run_verify

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


def _emit(args, payload: dict, text: str):
    if args.json:
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print(text)


def _theory(ring_tag: str) -> str:
    return "K" if ring_tag in ("kt", "kg") else "H"


def cmd_verify(args) -> int:
    report = run_verify(args.rmax, args.degree, args.seed)
    print(report.to_json() if args.json else report.to_text())
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_reduce(args) -> int:
    ring = RING_BUILDERS[args.ring](args.n)
    u = parse_element(args.element, ring)
    payload = {"ring": args.ring, "n": args.n, "normal_form": str(u), "symmetric": is_symmetric(u)}
    text = str(u)
    if payload["symmetric"]:
        vec = symmetric_reduce(u)
        payload["s_basis"] = [str(c) for c in vec.coeffs]
        text += f"\n= {vec}"
    _emit(args, payload, text)
    return EXIT_OK


def cmd_istar(args) -> int:
    if args.element is not None:
        ring = RING_BUILDERS[args.ring](args.n)
        u = parse_element(args.element, ring)
        if args.ring == "kt":
            image = tw.istar_on_generators(u)
        elif args.ring == "ht":
            image = tw.istar_h_on_generators(u)
        else:
            image = tw.apply_istar(symmetric_reduce(u))
        _emit(args, {"image": str(image)}, str(image))
        return EXIT_OK
    mat = tw.istar_matrix(args.r, _theory(args.ring))
    _emit(args, {"r": args.r, "matrix": [[str(e) for e in row] for row in mat.entries]}, str(mat))
    return EXIT_OK


def cmd_kernel(args) -> int:
    kb = tw.kernel_basis(args.r, _theory(args.ring))
    _emit(
        args,
        {"r": args.r, "K1": [str(c) for c in kb.k1.coeffs], "K2": [str(c) for c in kb.k2.coeffs]},
        f"K1 = {kb.k1}\nK2 = {kb.k2}",
    )
    return EXIT_OK


def cmd_chern(args) -> int:
    if args.ring not in ("kt", "kg"):
        raise LoopKError("chern needs a K-theory ring (kt or kg)")
    ring = RING_BUILDERS[args.ring](args.n)
    u = parse_element(args.element, ring)
    image = chern.ch_element(u, args.degree)
    _emit(args, {"element": str(u), "degree": args.degree, "ch": str(image)}, str(image))
    return EXIT_OK


def cmd_gamma(args) -> int:
    rows = []
    for k in range(args.k + 1):
        ok, detail = check_gamma_truncation(k)
        rows.append({"k": k, "pass": ok, "detail": detail})
    ok_all = all(r["pass"] for r in rows)
    text = "\n".join(f"{'PASS' if r['pass'] else 'FAIL'}  truncation isomorphism k={r['k']}" for r in rows)
    _emit(args, {"suite": rows, "pass": ok_all}, text)
    return EXIT_OK if ok_all else EXIT_FAIL


def cmd_limit(args) -> int:
    theory = _theory(args.ring)
    ring = tw.level_ring(args.rmax, theory)
    top = symmetric_reduce(parse_element(args.element, ring))
    T = tw.tower_from_top(top)
    ok = tw.tower_check(T)
    payload = {"theory": theory, "tower": json.loads(T.to_json()), "compatible": ok}
    _emit(args, payload, f"{T}\ncompatible: {ok}")
    return EXIT_OK if ok else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--ring", choices=sorted(RING_BUILDERS), default="kg")
    common.add_argument("--n", type=int, default=2, help="number of generators")
    common.add_argument("--degree", type=int, default=DEFAULT_DEGREE, help="series cutoff D")
    common.add_argument("--rmax", type=int, default=DEFAULT_RMAX)
    common.add_argument("--seed", type=int, default=None, help="default from $LOOPKT_SEED")

    parser = argparse.ArgumentParser(
        prog="loopkt", description="Exact verifier for the loop-group K-theory tower."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", parents=[common], help="run the full identity suite")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("reduce", parents=[common], help="normal form and s-basis coordinates")
    p.add_argument("element")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("istar", parents=[common], help="i* matrix, or i* of an element")
    p.add_argument("element", nargs="?")
    p.add_argument("--r", type=int, default=2, help="level r")
    p.set_defaults(func=cmd_istar)

    p = sub.add_parser("kernel", parents=[common], help="canonical kernel basis at level r")
    p.add_argument("--r", type=int, default=2, help="level r")
    p.set_defaults(func=cmd_kernel)

    p = sub.add_parser("chern", parents=[common], help="Chern character of a K-theory element")
    p.add_argument("element")
    p.set_defaults(func=cmd_chern)

    p = sub.add_parser("gamma", parents=[common], help="divided-power truncation suite for k = 0..K")
    p.add_argument("--k", type=int, default=6)
    p.set_defaults(func=cmd_gamma)

    p = sub.add_parser("limit", parents=[common], help="tower generated by a top-level element")
    p.add_argument("element")
    p.set_defaults(func=cmd_limit)
    return parser


def _validate(parser, args):
    if args.rmax < 1:
        parser.error("--rmax must be >= 1")
    if args.degree < (4 if args.command == "verify" else 0):
        parser.error("--degree too small")
    if args.n < 0:
        parser.error("--n must be >= 0")
    if getattr(args, "k", 0) < 0:
        parser.error("--k must be >= 0")
    if getattr(args, "r", 1) < 1:
        parser.error("--r must be >= 1")
    if args.seed is None:
        args.seed = default_seed()


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    _validate(parser, args)
    try:
        return args.func(args)
    except LoopKError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
