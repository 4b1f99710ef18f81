"""H1, flatness and section bounds over a grid of X_m and Y_m bundles."""
import argparse

from mcgbundles import bundles as bd


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--g", type=int, nargs="+", default=[3, 4])
    ap.add_argument("--h", type=int, nargs="+", default=[2, 3])
    ap.add_argument("--base", type=int, nargs="+", default=[3, 4, 5])
    ap.add_argument("--m-max", type=int, default=6)
    args = ap.parse_args()

    print(f"{'family':8} {'g':>2} {'h':>2} {'m':>2}  {'H1':18} {'match':5} {'flat':9} {'|e|':>3} {'flat ok':7}")
    rows = [bd.build_Xm(g, h, m) for g in args.g for h in args.h for m in range(args.m_max + 1)]
    rows += [bd.build_Ym(H, m) for H in args.base for m in range(args.m_max + 1)]
    for b in rows:
        f, p = b.factorization, b.params
        g1 = bd.h1_total_space(f, b.classes)
        exp = bd.xm_expected_h1(p["g"], p["h"], p["m"]) if b.name == "X_m" else bd.ym_expected_h1(p["h"], p["m"])
        e = b.sections[0].self_intersection
        mw = bd.milnor_wood(p["h"], e)
        flat = bd.flatness_certificate(f, b.disjoint).verdict
        print(f"{b.name:8} {p['g']:>2} {p['h']:>2} {p['m']:>2}  {str(g1):18} {str(g1 == exp):5} "
              f"{flat:9} {abs(e):>3} {str(mw['flat_parallel_admissible']):7}")


if __name__ == "__main__":
    main()
