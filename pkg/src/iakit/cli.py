"""Command-line front end: verification suite, generators, probes, reports.

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 resource
ceiling exceeded.  All randomized commands take a seed and print it; JSON
output is canonically ordered so identical seeds reproduce identical bytes.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import List, Optional

from .ring import (IdealRef, LaurentPoly, RingError, hm2_in_tm_witness,
                   ideal_member, lp_parse, lp_reduce_mod_Hm)
from .magnus import MagnusError, mg_eval, psi_enumerate, word_parse
from .ia import (IAError, PolyMatrix, ia_generator_E, ia_rho, ia_validate,
                 matrix_parse, rho_ig_probe)
from .elem import (IAmWitness, Template, WitnessError, WitnessedSuslin,
                   TmComponent, decompose_form, sec6_generator,
                   template_value, witness_value)
from .ksym import (KsymError, GroupRingZmZmn, LaurentSRing, ZmodRing, ZRing,
                   sbar_ops, st_lift_eval, st_symbol_word, st_eval,
                   mat_identity, mat_eq)
from .verify import (VerifyError, chain_check, get_script, script_names)

VERSION = "1.0.0"

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_CEILING = 3


def _emit(doc: dict, as_json: bool) -> None:
    if as_json:
        print(json.dumps(doc, indent=2, sort_keys=True))


def _matrix_lines(M: PolyMatrix) -> List[str]:
    return ["  ".join(str(e) for e in row) for row in M.rows]


def _matrix_text(M: PolyMatrix) -> str:
    return ";".join(",".join(str(e) for e in row) for row in M.rows)


# -- verify ---------------------------------------------------------------


def cmd_verify(args) -> int:
    names = [args.chain] if args.chain else script_names()
    if args.chain and args.chain not in script_names():
        print(f"unknown chain name: {args.chain}", file=sys.stderr)
        return EXIT_USAGE
    items = []
    ok = True
    for name in sorted(names):
        report = chain_check(get_script(name))
        ok = ok and report.passed
        items.append(report.to_dict())
        if not args.json:
            status = "pass" if report.passed else "FAIL"
            print(f"{name:28s} {status}")
            if not report.passed:
                for s in report.steps:
                    if not s.passed:
                        print(f"  step {s.label!r} [{s.kind}]: {s.detail}")
    _emit({"version": VERSION, "items": items, "pass": ok}, args.json)
    return EXIT_OK if ok else EXIT_FAIL


# -- gen ------------------------------------------------------------------


def cmd_gen(args) -> int:
    n = args.n
    try:
        if args.kind == "E":
            r, s, t = args.indices
            gen = ia_generator_E(r, s, t, n)
            M = gen.M
            wdoc = None
        elif args.kind == "sec6":
            (family,) = args.indices
            if args.ij is None or args.u is None:
                print("sec6 requires --u and --ij", file=sys.stderr)
                return EXIT_USAGE
            i, j = args.ij
            f = lp_parse(args.f, n) if args.f else LaurentPoly.one(n)
            mat, w = sec6_generator(family, args.u, i, j, f, args.m, n,
                                    k=args.k)
            M = mat.M
            wdoc = {"family": family, "u": args.u, "i": i, "j": j,
                    "k": args.k, "m": args.m, "coeff": str(f)}
        else:
            print(f"unknown generator kind {args.kind!r}", file=sys.stderr)
            return EXIT_USAGE
    except (IAError, RingError, WitnessError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.validate:
        try:
            ia_validate(M, n)
        except IAError as exc:
            print(f"validation failed: {exc}", file=sys.stderr)
            return EXIT_FAIL
    if args.json:
        doc = {"version": VERSION, "matrix": _matrix_text(M)}
        if wdoc:
            doc["witness"] = wdoc
        print(json.dumps(doc, indent=2, sort_keys=True))
    else:
        for line in _matrix_lines(M):
            print(line)
        if args.witness and wdoc:
            print(json.dumps({"witness": wdoc}, sort_keys=True))
    return EXIT_OK


# -- probe ----------------------------------------------------------------


def cmd_probe(args) -> int:
    if args.target == "rho-ig":
        if args.n < 4:
            print("rho-ig probe needs n >= 4", file=sys.stderr)
            return EXIT_USAGE
        report = rho_ig_probe(args.i, args.m, args.samples, n=args.n,
                              seed=args.seed)
        doc = {"version": VERSION, "probe": "rho-ig", "seed": args.seed,
               "i": args.i, "m": args.m, "n": args.n,
               "samples": len(report["samples"]), "pass": report["pass"],
               "failures": [s for s in report["samples"] if not s["ok"]]}
        if args.json:
            print(json.dumps(doc, indent=2, sort_keys=True))
        else:
            print(f"rho-ig probe n={args.n} m={args.m} i={args.i} "
                  f"seed={args.seed}: {len(report['samples'])} samples, "
                  f"{'pass' if report['pass'] else 'FAIL'}")
        return EXIT_OK if report["pass"] else EXIT_FAIL
    if args.target == "psi":
        try:
            elems = psi_enumerate(args.n, args.m, ceiling=args.ceiling)
        except MagnusError as exc:
            print(f"ceiling: {exc}", file=sys.stderr)
            return EXIT_CEILING
        # closure of the enumerated set under the group law
        index = {(e.v, e.c) for e in elems}
        closed = all((a * b).v in {e.v for e in elems} and
                     ((a * b).v, (a * b).c) in index
                     for a in elems for b in elems)
        doc = {"version": VERSION, "probe": "psi", "n": args.n, "m": args.m,
               "cardinality": len(elems), "closed": closed, "pass": closed}
        if args.json:
            print(json.dumps(doc, indent=2, sort_keys=True))
        else:
            print(f"psi enumeration n={args.n} m={args.m}: "
                  f"{len(elems)} elements, closure "
                  f"{'pass' if closed else 'FAIL'}")
        return EXIT_OK if closed else EXIT_FAIL
    print(f"unknown probe {args.target!r}", file=sys.stderr)
    return EXIT_USAGE


# -- symbol ---------------------------------------------------------------


_RINGS = {
    "z": lambda: ZRing(),
    "z4": lambda: ZmodRing(4),
    "z5": lambda: ZmodRing(5),
    "z2z2": lambda: GroupRingZmZmn(2, 1),
    "s": lambda: LaurentSRing(1),
}


def cmd_symbol(args) -> int:
    if args.u == "sbar":
        try:
            ring = sbar_ops(args.p, args.l)
        except KsymError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_USAGE
        e = args.p ** (args.l + 1)
        ok = ring.verify_unit_identity()
        doc = {"version": VERSION, "check": "sbar-unit", "p": args.p,
               "l": args.l, "exponent": e, "pass": ok}
        if args.json:
            print(json.dumps(doc, indent=2, sort_keys=True))
        else:
            print(f"(y+1)^{e} == 1 over Z[y]/({args.p}^2, y^{args.p}^"
                  f"{args.l}): {'pass' if ok else 'FAIL'}")
        return EXIT_OK if ok else EXIT_FAIL
    if args.ring not in _RINGS:
        print(f"unknown ring {args.ring!r}", file=sys.stderr)
        return EXIT_USAGE
    ring = _RINGS[args.ring]()

    def unit_of(text):
        if args.ring == "z2z2" and text.strip() == "x":
            from .ring import ModGroupRingElem
            return ModGroupRingElem.var(1, 1, 2)
        return ring.from_int(int(text))

    try:
        u = unit_of(args.u)
        v = unit_of(args.v)
        ring.inv(u), ring.inv(v)
        word = st_symbol_word(u, v, ring=ring)
        img = st_eval(word, args.d, ring)
        trivial = mat_eq(img, mat_identity(args.d, ring), ring)
    except (KsymError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    doc = {"version": VERSION, "check": "symbol", "ring": args.ring,
           "u": args.u, "v": args.v, "d": args.d, "image_trivial": trivial}
    lifted = None
    if args.lift:
        try:
            if args.ring == "z5":
                lift = lambda r: LaurentPoly.const(1, int(r))
                ideal = lambda p: all(c % 5 == 0 for _, c in p.terms)
            elif args.ring == "z2z2":
                lift = lambda r: LaurentPoly.from_dict(
                    1, {e: c for e, c in r.terms})
                ideal = IdealRef.J(2)
            else:
                print("--lift supports rings z5 and z2z2", file=sys.stderr)
                return EXIT_USAGE
            lifted = st_lift_eval(word, lift, args.d, ideal)
            doc["lift"] = _matrix_text(lifted)
        except (KsymError, AttributeError) as exc:
            print(f"lift error: {exc}", file=sys.stderr)
            return EXIT_FAIL
    ok = trivial
    doc["pass"] = ok
    if args.json:
        print(json.dumps(doc, indent=2, sort_keys=True))
    else:
        print(f"symbol({args.u},{args.v}) over {args.ring}, d={args.d}: "
              f"image {'trivial' if trivial else 'NON-TRIVIAL'}")
        if lifted is not None:
            for line in _matrix_lines(lifted):
                print(line)
    return EXIT_OK if ok else EXIT_FAIL


# -- reduce / rho / magnus / factor ----------------------------------------


def cmd_reduce(args) -> int:
    try:
        f = lp_parse(args.poly, args.nvars)
        r = lp_reduce_mod_Hm(f, args.m)
    except RingError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    print(str(r))
    return EXIT_OK


def _read_matrix_arg(text: str, nvars: int) -> PolyMatrix:
    if text == "-":
        text = sys.stdin.read()
    return matrix_parse(text, nvars)


def cmd_rho(args) -> int:
    try:
        M = _read_matrix_arg(args.matrix, args.nvars)
        alpha = ia_validate(M, args.n)
        out = ia_rho(args.i, alpha)
    except (IAError, RingError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    for line in _matrix_lines(out):
        print(line)
    return EXIT_OK


def cmd_magnus(args) -> int:
    try:
        w = word_parse(args.word)
        elem = mg_eval(w, args.n)
    except MagnusError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    print(str(elem))
    return EXIT_OK


def _witness_from_doc(doc: dict, nvars: int) -> List[WitnessedSuslin]:
    out = []
    for g in doc["generators"]:
        comps = tuple(
            TmComponent(c["kind"], int(c.get("r", 0)),
                        lp_parse(c["coeff"], nvars))
            for c in g["components"])
        out.append(WitnessedSuslin(lp_parse(g["f"], nvars), comps,
                                   int(g["i"]), int(g["j"]), int(g["d"])))
    return out


def cmd_factor(args) -> int:
    try:
        with open(args.witness_file) as fh:
            doc = json.load(fh)
        nvars = int(doc.get("nvars", args.n))
        witness = _witness_from_doc(doc, nvars)
        B = matrix_parse(doc["matrix"], nvars)
        factors = decompose_form(B, witness, args.m, args.n)
    except (OSError, KeyError, ValueError, RingError, WitnessError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    items = [{"kind": f.kind, "i": f.i, "j": f.j, "h": str(f.h),
              "role": list(f.role), **({"f": str(f.f)} if f.f else {})}
             for f in factors]
    doc = {"version": VERSION, "count": len(items), "factors": items}
    print(json.dumps(doc, indent=2, sort_keys=True))
    return EXIT_OK


# -- parser ---------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="iakit",
        description="Exact verification of congruence-subgroup matrix "
                    "identities over Laurent polynomial rings.")
    sub = ap.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("verify", help="run the chain-script suite")
    p.add_argument("--chain", help="run a single named script")
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("gen", help="construct a generator matrix")
    p.add_argument("kind", choices=["E", "sec6"])
    p.add_argument("indices", nargs="+", type=int)
    p.add_argument("--n", type=int, default=4)
    p.add_argument("--m", type=int, default=2)
    p.add_argument("--u", type=int)
    p.add_argument("--ij", nargs=2, type=int)
    p.add_argument("--k", type=int, default=0)
    p.add_argument("--f", help="coefficient polynomial (default 1)")
    p.add_argument("--validate", action="store_true")
    p.add_argument("--witness", action="store_true")
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_gen)

    p = sub.add_parser("probe", help="finite-level randomized/exhaustive probes")
    p.add_argument("target", choices=["rho-ig", "psi"])
    p.add_argument("--n", type=int, default=4)
    p.add_argument("--m", type=int, default=2)
    p.add_argument("--i", type=int, default=4)
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--ceiling", type=int, default=4096)
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_probe)

    p = sub.add_parser("symbol", help="Steinberg symbol checks")
    p.add_argument("u", help="first unit, or 'sbar'")
    p.add_argument("v", nargs="?", default="1")
    p.add_argument("--ring", default="z5", choices=sorted(_RINGS))
    p.add_argument("--d", type=int, default=3)
    p.add_argument("--lift", action="store_true")
    p.add_argument("--p", type=int, default=2)
    p.add_argument("--l", type=int, default=1)
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_symbol)

    p = sub.add_parser("reduce", help="reduce a polynomial mod the level ideal")
    p.add_argument("poly")
    p.add_argument("--m", type=int, default=2)
    p.add_argument("--nvars", type=int, default=4)
    p.set_defaults(fn=cmd_reduce)

    p = sub.add_parser("rho", help="apply the corner projection to a matrix")
    p.add_argument("matrix", help="matrix text or '-' for stdin")
    p.add_argument("--i", type=int, default=4)
    p.add_argument("--n", type=int, default=4)
    p.add_argument("--nvars", type=int, default=4)
    p.set_defaults(fn=cmd_rho)

    p = sub.add_parser("magnus", help="evaluate a group word")
    p.add_argument("word")
    p.add_argument("--n", type=int, default=4)
    p.set_defaults(fn=cmd_magnus)

    p = sub.add_parser("factor", help="decompose a witnessed product")
    p.add_argument("witness_file")
    p.add_argument("--m", type=int, default=2)
    p.add_argument("--n", type=int, default=5)
    p.set_defaults(fn=cmd_factor)
    return ap


def main(argv: Optional[List[str]] = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        return args.fn(args)
    except VerifyError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
