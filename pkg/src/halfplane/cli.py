"""Command-line interface: JSON files in, one JSON report out.

Exit codes:
  0   success / certified / structure holds / Inconclusive (obstruct)
  1   refuted / structure violated
  2   input could not be parsed
  3   input parsed but violates a precondition of the operation
  10  Unknown (check-stability, rayleigh) or NotHPP (obstruct)

Every report carries the tool version, the seed, the budget, the sha256 of
the input file(s) and the wall time; everything except ``elapsed_seconds``
is a deterministic function of (inputs, seed, budget).
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from pathlib import Path

from . import __version__, constructors, obstruction, stability
from .combstruct import (Matroid, SupportSet, WeightedGraph, delta_matroid_report,
                         jump_system_violation, matroid_bases_violation)
from .gaussian import GaussRat, parse_rational
from .polynomial import Polynomial, polarize, support

EXIT_OK, EXIT_NO, EXIT_PARSE, EXIT_PRECONDITION, EXIT_UNDECIDED = 0, 1, 2, 3, 10

CONSTRUCT_KINDS = ("det-pencil", "principal-minors", "matching", "forest", "spanning-tree",
                   "degree", "representable", "basis-generating")


class ParseError(Exception):
    pass


def _load(path: str):
    try:
        raw = Path(path).read_bytes()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    try:
        return json.loads(raw), hashlib.sha256(raw).hexdigest()
    except (json.JSONDecodeError, UnicodeDecodeError) as exc:
        raise ParseError(f"{path} is not valid JSON: {exc}") from exc


def _parse(factory, obj):
    try:
        return factory(obj)
    except (ValueError, TypeError, KeyError, IndexError, ZeroDivisionError) as exc:
        raise ParseError(str(exc)) from exc


def _matrix(obj):
    if isinstance(obj, dict):
        obj = obj["matrix"]
    if not isinstance(obj, list) or not all(isinstance(r, list) for r in obj):
        raise ValueError("a matrix is a 2-D JSON array")
    return [[GaussRat.from_json(x) for x in row] for row in obj]


def _pencil(obj):
    return [_matrix(A) for A in obj["A"]], _matrix(obj["B"])


def _budget(args) -> stability.Budget:
    return stability.Budget(grid=not args.no_grid, samples=args.samples,
                            descent_iters=args.descent_iters)


def _poly_block(f: Polynomial) -> dict:
    return {"polynomial": f.to_json(), "text": str(f)}


# subcommands: each returns (exit code, result dict)

def cmd_check_stability(args, data):
    f = _parse(Polynomial.from_json, data)
    v = stability.check_stability(f, _budget(args), args.seed)
    code = {True: EXIT_OK, False: EXIT_NO, None: EXIT_UNDECIDED}[v.stable]
    return code, v.to_json()


def cmd_rayleigh(args, data):
    M = _parse(Matroid.from_json, data)
    rep = stability.matroid_rayleigh_check(M, args.mode, _budget(args), args.seed)
    code = {True: EXIT_OK, False: EXIT_NO, None: EXIT_UNDECIDED}[rep.verdict]
    return code, rep.to_json()


def cmd_check_support(args, data):
    f = _parse(Polynomial.from_json, data)
    F = support(f)
    v = jump_system_violation(F)
    result = {"support": F.to_json(), "jump_system": v is None,
              "violation": None if v is None else _jump_json(v)}
    return (EXIT_OK if v is None else EXIT_NO), result


def _jump_json(v) -> dict:
    return {"alpha": list(v.alpha), "beta": list(v.beta), "sigma": list(v.sigma)}


def cmd_verify(args, data):
    if args.structure == "matroid":
        obj = data
        try:
            n = obj["n"]
            bases = [[x - 1 for x in b] for b in obj["bases"]]
        except (KeyError, TypeError) as exc:
            raise ParseError("matroid JSON needs 'n' and 'bases'") from exc
        v = matroid_bases_violation(bases, n)
        result = {"structure": "matroid", "holds": v is None, "violation": None if v is None else {
            "A": [x + 1 for x in sorted(v.A)], "B": [x + 1 for x in sorted(v.B)],
            "x": None if v.x is None else v.x + 1}}
        return (EXIT_OK if v is None else EXIT_NO), result
    F = _parse(SupportSet.from_json, data)
    if args.structure == "jump":
        v = jump_system_violation(F)
        result = {"structure": "jump", "holds": v is None,
                  "violation": None if v is None else _jump_json(v)}
        return (EXIT_OK if v is None else EXIT_NO), result
    rep = delta_matroid_report(F)
    v = rep.exchange_violation
    holds = rep.is_delta_matroid if args.require_cover else rep.exchange_holds
    result = {"structure": "delta", "holds": holds, "exchange_holds": rep.exchange_holds,
              "unused_coordinates": [x + 1 for x in rep.unused],
              "violation": None if v is None else {
                  "A": list(v.A), "B": list(v.B), "x": v.x + 1}}
    return (EXIT_OK if holds else EXIT_NO), result


def cmd_construct(args, data):
    kind = args.kind
    if kind == "det-pencil":
        A_list, B = _parse(_pencil, data)
        f, tag = constructors.det_pencil(A_list, B)
    elif kind == "principal-minors":
        f, tag = constructors.principal_minors_poly(_parse(_matrix, data))
    elif kind == "representable":
        f, tag = constructors.representable_matroid_poly(_parse(_matrix, data))
    elif kind == "basis-generating":
        f = constructors.basis_generating_poly(_parse(Matroid.from_json, data))
        return EXIT_OK, {**_poly_block(f), "tag": None}
    else:
        G = _parse(WeightedGraph.from_json, data)
        if kind == "matching":
            f, tag = constructors.matching_polynomial(G)
        elif kind == "forest":
            f, tag = constructors.forest_polynomial(G)
        elif kind == "spanning-tree":
            f, tag = constructors.spanning_tree_polynomial(G, args.root - 1)
        else:
            f, tag = constructors.degree_poly(G)
    return EXIT_OK, {**_poly_block(f), "tag": tag.to_json()}


def cmd_polarize(args, data):
    f = _parse(Polynomial.from_json, data)
    pf = polarize(f)
    return EXIT_OK, {**_poly_block(pf.base), "degrees": list(pf.degrees),
                     "groups": [[k + 1 for k in pf.group(i)] for i in range(f.nvars)]}


def cmd_obstruct(args, data):
    M = _parse(Matroid.from_json, data)
    rep = obstruction.hpp_obstruction(M, _budget(args), args.seed)
    return (EXIT_UNDECIDED if rep.status == obstruction.NOT_HPP else EXIT_OK), rep.to_json()


def cmd_realify(args, data):
    f = _parse(Polynomial.from_json, data)
    alphas = _parse(lambda xs: [parse_rational(a) for a in xs], args.alpha) if args.alpha else None
    g, a = stability.realify(f, alphas)
    return EXIT_OK, {**_poly_block(g), "alpha": str(a)}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="halfplane", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--samples", type=int, default=10_000)
    common.add_argument("--descent-iters", type=int, default=50)
    common.add_argument("--no-grid", action="store_true")
    common.add_argument("--out", help="write the report here instead of stdout")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, func, **kw):
        sp = sub.add_parser(name, parents=[common], **kw)
        sp.set_defaults(func=func)
        return sp

    add("check-stability", cmd_check_stability).add_argument("input")
    sp = add("rayleigh", cmd_rayleigh)
    sp.add_argument("input")
    sp.add_argument("--mode", choices=(stability.ALL_REALS, stability.POSITIVE_ORTHANT),
                    default=stability.ALL_REALS)
    add("check-support", cmd_check_support).add_argument("input")
    sp = add("verify", cmd_verify)
    sp.add_argument("structure", choices=("jump", "delta", "matroid"))
    sp.add_argument("input")
    sp.add_argument("--require-cover", action="store_true",
                    help="delta: also demand every coordinate is used by some point")
    sp = add("construct", cmd_construct)
    sp.add_argument("kind", choices=CONSTRUCT_KINDS)
    sp.add_argument("input")
    sp.add_argument("--root", type=int, default=1, help="spanning-tree: root vertex (1-based)")
    add("polarize", cmd_polarize).add_argument("input")
    add("obstruct", cmd_obstruct).add_argument("input")
    sp = add("realify", cmd_realify)
    sp.add_argument("input")
    sp.add_argument("--alpha", action="append", help="candidate alpha, repeatable")
    return p


def run(argv=None) -> tuple[int, dict]:
    return execute(build_parser().parse_args(argv))


def execute(args) -> tuple[int, dict]:
    if args.seed < 0:
        return EXIT_PARSE, {"error": "seed must be an unsigned integer"}
    start = time.perf_counter()
    report = {"tool": "halfplane", "version": __version__, "command": args.command,
              "seed": args.seed, "budget": _budget(args).to_json()}
    try:
        data, digest = _load(args.input)
        report["input_sha256"] = digest
        code, result = args.func(args, data)
        report["result"] = result
    except ParseError as exc:
        code = EXIT_PARSE
        report["error"] = {"kind": "parse", "message": str(exc)}
    except (ValueError, IndexError) as exc:
        code = EXIT_PRECONDITION
        report["error"] = {"kind": "precondition", "message": str(exc)}
    report["exit_code"] = code
    report["elapsed_seconds"] = round(time.perf_counter() - start, 6)
    return code, report


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    code, report = execute(args)
    text = json.dumps(report, indent=2) + "\n"
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
