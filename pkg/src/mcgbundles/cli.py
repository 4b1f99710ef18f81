"""Command line entry point.  JSON report on stdout, short summary on stderr.

Exit codes: 0 when every requested verdict is positive, 1 when a verification
fails, 2 on usage errors.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from . import bundles as bd
from . import rewrite as rw
from .planar import (ArcSpec, daisy_relation, holed_sphere, load_catalog_file, power_relation, push,
                     verify_relation)
from .words import RelationWord, Verdict, Word


def _verdict(v: Verdict) -> dict:
    return {"verdict": v.label(), "holds": v.holds, "provenance": v.provenance,
            "assumptions": list(v.assumptions), "detail": v.detail}


def _model(args, p):
    if getattr(args, "catalog", None):
        m = load_catalog_file(args.catalog)
        if m.size != p:
            raise SystemExit(f"catalog has {m.size} boundaries, command needs {p}")
        return m
    return holed_sphere(p)


def cmd_verify(args) -> tuple[dict, bool]:
    if args.what == "lantern":
        r, p = daisy_relation(3), 4
    elif args.what == "daisy":
        r, p = daisy_relation(args.petals), args.petals + 1
    elif args.what == "power":
        r, p = power_relation(args.k), 5
    else:
        model = _model(args, 5)
        lhs = Word()
        for i in range(1, model.holes + 1):
            lhs = lhs * push(model, ArcSpec((i,)))
        r = RelationWord(lhs, push(model, ArcSpec(None)), "push-naturality")
        v = verify_relation(model, r)
        return {"relation": str(r), **_verdict(v)}, v.holds
    v = verify_relation(_model(args, p), r)
    return {"relation": str(r), "name": r.name, **_verdict(v)}, v.holds


def cmd_derive(args) -> tuple[dict, bool]:
    if args.what == "power":
        d = rw.derive_power_relation(args.k)
        v = rw.check_derivation(d, rw.planar_oracles(5))
        out = {"start": str(d.start), "end": str(d.end), "steps": len(d.steps),
               "matches_power_relation": d.end == power_relation(args.k).rhs}
        return {**out, **_verdict(v)}, v.holds and out["matches_power_relation"]
    cf = rw.commutatorize_even_power(args.k)
    return {"target": str(cf.target), "count": cf.count, "cl_floor": bd.cl_floor(2 * args.k),
            "factors": [str(c) for c in cf.factors], "steps": len(cf.derivation.steps),
            **_verdict(cf.verdict)}, cf.verdict.holds


def cmd_script(args) -> tuple[dict, bool]:
    d, oracles = rw.parse_script(Path(args.script).read_text())
    v = rw.check_derivation(d, oracles)
    return {"script": str(args.script), "start": str(d.start), "end": str(d.end),
            "steps": len(d.steps), **_verdict(v)}, v.holds


def cmd_cl(args) -> tuple[dict, bool]:
    return {"n": args.n, "cl_floor": bd.cl_floor(args.n), "scl": str(bd.scl_tdelta())}, True


def cmd_bounds(args) -> tuple[dict, bool]:
    return {"h": args.h, "e": args.e, **bd.milnor_wood(args.h, args.e)}, True


def _bundle_report(b: bd.Bundle, args) -> tuple[dict, bool]:
    f = b.factorization
    S = b.sections[0]
    out = {
        "family": b.name, **b.params,
        "pairs": [[str(u), str(v)] for u, v in f.pairs],
        "certificates": [c.to_dict() for c in f.certificates],
        "weakest_provenance": bd.weakest(f.certificates),
        "sections": [{"name": s.name, "e": s.self_intersection, "abs_e": abs(s.self_intersection),
                      "disjoint_from": sorted(s.disjoint_from)} for s in b.sections],
        "milnor_wood": bd.milnor_wood(f.base_genus, S.self_intersection),
    }
    ok = all(c.verdict.holds for c in f.certificates)
    if getattr(args, "h1", False):
        g = bd.h1_total_space(f, b.classes)
        exp = bd.xm_expected_h1(f.fiber_genus, f.base_genus, b.params["m"]) if b.name == "X_m" \
            else bd.ym_expected_h1(f.base_genus, b.params["m"])
        out["h1"] = str(g)
        out["h1_expected"] = str(exp)
        if b.name == "Y_m":
            out["base_genus_reading"] = "base genus H, k = H - 2, H1 = Z^(2H+1) + Z/m"
        ok &= g == exp
    if getattr(args, "flat", False):
        fc = bd.flatness_certificate(f, b.disjoint)
        out["flatness"] = {"verdict": fc.verdict, "justifications": list(fc.justifications)}
        ok &= fc.certified
    if getattr(args, "obstruction", False):
        b1, b2 = bd.betti_numbers(f, b.classes)
        out["obstruction"] = {"b1": b1, "b2": b2, "obstructed": bd.complex_obstruction(b1, b2)}
    return out, ok


def cmd_family(args) -> tuple[dict, bool]:
    b = bd.build_Xm(args.g, args.h, args.m) if args.which == "xm" else bd.build_Ym(args.base, args.m)
    return _bundle_report(b, args)


def _range(text: str) -> range:
    a, _, b = text.partition("..")
    return range(int(a), int(b) + 1)


def cmd_distinguish(args) -> tuple[dict, bool]:
    items = []
    for m in _range(args.m_range):
        b = bd.build_Xm(args.g, args.h, m) if args.which == "xm" else bd.build_Ym(args.base, m)
        items.append((f"{b.name}[m={m}]", b.factorization, b.classes))
    rep = bd.family_distinguisher(items)
    rep["collisions"] = [list(c) for c in rep["collisions"]]
    return rep, rep["pairwise_distinct"]


def cmd_nonlift(args) -> tuple[dict, bool]:
    rep = bd.nonlifting_report(args.g, args.h, args.m, args.marked)
    return rep, True


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="mcgbundles", description=__doc__)
    p.add_argument("--catalog", help="holed-sphere catalog file used by verify")
    p.add_argument("--script", help="check a derivation script and exit")
    sub = p.add_subparsers(dest="cmd")

    v = sub.add_parser("verify")
    v.add_argument("what", choices=["lantern", "daisy", "power", "push-naturality"])
    v.add_argument("--petals", type=int, default=4)
    v.add_argument("--k", type=int, default=1)
    v.set_defaults(fn=cmd_verify)

    d = sub.add_parser("derive")
    d.add_argument("what", choices=["power", "commutatorize"])
    d.add_argument("--k", type=int, required=True)
    d.set_defaults(fn=cmd_derive)

    c = sub.add_parser("cl")
    c.add_argument("--n", type=int, required=True)
    c.set_defaults(fn=cmd_cl)

    b = sub.add_parser("bounds")
    b.add_argument("--h", type=int, required=True)
    b.add_argument("--e", type=int, required=True)
    b.set_defaults(fn=cmd_bounds)

    for name, fn in (("family", cmd_family), ("distinguish", cmd_distinguish)):
        f = sub.add_parser(name)
        f.add_argument("which", choices=["xm", "ym"])
        f.add_argument("--g", type=int, default=3)
        f.add_argument("--h", type=int, default=2)
        f.add_argument("--base", type=int, default=3)
        if name == "family":
            f.add_argument("--m", type=int, required=True)
            f.add_argument("--h1", action="store_true")
            f.add_argument("--flat", action="store_true")
            f.add_argument("--obstruction", action="store_true")
        else:
            f.add_argument("--m-range", required=True, help="A..B")
        f.set_defaults(fn=fn)

    n = sub.add_parser("nonlift")
    n.add_argument("--g", type=int, required=True)
    n.add_argument("--h", type=int, required=True)
    n.add_argument("--m", type=int, required=True)
    n.add_argument("--marked", type=int, default=1)
    n.set_defaults(fn=cmd_nonlift)
    return p


def run(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0) and 2
    if args.script:
        fn = cmd_script
    elif args.cmd is None:
        parser.print_usage(sys.stderr)
        return 2
    else:
        fn = args.fn
    t0 = time.perf_counter()
    try:
        result, ok = fn(args)
    except (ValueError, KeyError, SystemExit) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    report = {"command": argv, "result": result, "ok": ok,
              "seconds": round(time.perf_counter() - t0, 4)}
    print(json.dumps(report, indent=2, sort_keys=True))
    summary = result.get("verdict") or result.get("h1") or ("ok" if ok else "FAILED")
    print(f"{' '.join(argv)}: {summary}", file=sys.stderr)
    return 0 if ok else 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
