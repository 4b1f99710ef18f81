"""One test per acceptance criterion; each prints a pass/fail line."""
import random
import time
from fractions import Fraction
from itertools import combinations
from math import gcd

from mcgbundles import bundles as bd
from mcgbundles import rewrite as rw
from mcgbundles.groupoid import EdgeGen, GroupoidWord, concat, inverse
from mcgbundles.homology import symplectic_check, transvection, word_to_matrix
from mcgbundles.planar import ArcSpec, daisy_relation, holed_sphere, power_relation, push, verify_relation
from mcgbundles.snf import matmul, smith_normal_form
from mcgbundles.words import RelationWord, Word

XM_GRID = [(g, h, m) for g in (3, 4) for h in (2, 3) for m in range(7)]
YM_GRID = [(H, m) for H in (3, 4, 5) for m in range(7)]


def test_criterion_01_lantern_and_daisy(criterion):
    t = time.perf_counter()
    assert verify_relation(holed_sphere(4), daisy_relation(3))
    assert verify_relation(holed_sphere(5), daisy_relation(4))
    for d in range(3, 8):
        assert verify_relation(holed_sphere(d + 1), daisy_relation(d))
    dt = time.perf_counter() - t
    assert dt < 1.0
    criterion(1, f"lantern, daisy, petals 3..7 exact ({dt:.2f}s)")


def test_criterion_02_power_relation(criterion):
    t = time.perf_counter()
    oracles = rw.planar_oracles(5)
    for k in range(1, 5):
        r = power_relation(k)
        assert verify_relation(holed_sphere(5), r)
        d = rw.derive_power_relation(k, oracles)
        assert rw.check_derivation(d, oracles)
        assert d.end.letters() == r.rhs.letters()
    dt = time.perf_counter() - t
    assert dt < 10.0
    criterion(2, f"power relation k=1..4 exact and derived ({dt:.2f}s)")


def test_criterion_03_push_naturality(criterion):
    t = time.perf_counter()
    m = holed_sphere(5)
    lhs = Word()
    for i in range(1, 5):
        lhs = lhs * push(m, ArcSpec((i,)))
    assert verify_relation(m, RelationWord(lhs, push(m, ArcSpec(None))))
    dt = time.perf_counter() - t
    assert dt < 1.0
    criterion(3, f"push naturality on 5-holed sphere ({dt:.2f}s)")


def test_criterion_04_commutator_counts(criterion):
    t = time.perf_counter()
    oracles = rw.default_oracles()
    for k in range(1, 11):
        cf = rw.commutatorize_even_power(k, oracles)
        assert cf.count == k + 1
        assert cf.verdict and cf.verdict.assumptions
    for n in range(1, 101):
        assert bd.cl_floor(n) == (n + 3) // 2
    assert abs(Fraction(bd.cl_floor(100), 100) - Fraction(1, 2)) <= Fraction(3, 100)
    dt = time.perf_counter() - t
    assert dt < 1.0
    criterion(4, f"k+1 brackets for k=1..10, cl_floor n=1..100 ({dt:.2f}s)")


def test_criterion_05_h1(criterion):
    t = time.perf_counter()
    for g, h, m in XM_GRID:
        b = bd.build_Xm(g, h, m)
        got = bd.h1_total_space(b.factorization, b.classes)
        assert got == bd.xm_expected_h1(g, h, m), (g, h, m, str(got))
    for H, m in YM_GRID:
        b = bd.build_Ym(H, m)
        got = bd.h1_total_space(b.factorization, b.classes)
        assert got == bd.ym_expected_h1(H, m), (H, m, str(got))
    dt = time.perf_counter() - t
    assert dt < 5.0
    criterion(5, f"H1(X_m) = Z^(2h+2g-3)+Z/m on {len(XM_GRID)} builds, "
                 f"H1(Y_m) = Z^(2H+1)+Z/m (H = base genus) on {len(YM_GRID)} ({dt:.2f}s)")


def test_criterion_06_distinguish(criterion):
    t = time.perf_counter()
    xs = [(f"X_{m}", bd.build_Xm(3, 2, m).factorization, bd.xm_classes(3)) for m in range(1, 7)]
    ys = [(f"Y_{m}", bd.build_Ym(3, m).factorization, bd.ym_classes()) for m in range(1, 7)]
    assert bd.family_distinguisher(xs)["pairwise_distinct"]
    assert bd.family_distinguisher(ys)["pairwise_distinct"]
    dt = time.perf_counter() - t
    assert dt < 5.0
    criterion(6, f"X_m and Y_m, m=1..6 pairwise distinct H1 ({dt:.2f}s)")


def test_criterion_07_milnor_wood(criterion):
    for g, h, m in XM_GRID + [(3, h, 1) for h in range(2, 9)]:
        e = bd.build_Xm(g, h, m).sections[0].self_intersection
        assert abs(e) == 2 * h - 2
        assert bd.milnor_wood(h, e)["section_admissible"]
        assert not bd.milnor_wood(h, e)["flat_parallel_admissible"]
    for H in range(3, 10):
        e = bd.build_Ym(H, 1).sections[0].self_intersection
        assert bd.milnor_wood(H, e)["flat_parallel_admissible"] == (H < 4)
    criterion(7, "X_m never flat-admissible; Y_m not admissible exactly when base genus >= 4")


def test_criterion_08_flatness(criterion):
    for g, h, m in XM_GRID:
        b = bd.build_Xm(g, h, m)
        assert bd.flatness_certificate(b.factorization, b.disjoint).certified
        without_b = {p for p in b.disjoint if "b" not in p}
        expect = "Certified" if m == 0 else "Unknown"
        assert bd.flatness_certificate(b.factorization, without_b).verdict == expect
    for H, m in YM_GRID:
        b = bd.build_Ym(H, m)
        assert bd.flatness_certificate(b.factorization, b.disjoint).certified
    criterion(8, "grid builds Certified; Unknown once b-disjointness is dropped (m >= 1)")


def test_criterion_09_complex_obstruction(criterion):
    for g, h, _ in XM_GRID:
        assert bd.complex_obstruction(2 * h + 2 * g - 3, 2)
    for g, h, m in XM_GRID:
        if m >= 1:
            b = bd.build_Xm(g, h, m)
            b1, b2 = bd.betti_numbers(b.factorization, b.classes)
            assert b1 == 2 * h + 2 * g - 3 and b2 >= 2 and bd.complex_obstruction(b1, b2)
    criterion(9, "obstruction holds on the grid, also from computed Betti numbers (m >= 1)")


def _random_path(rng, gens, n):
    here, letters = 0, []
    for _ in range(n):
        opts = [(g, 1) for g in gens if g.source == here] + [(g, -1) for g in gens if g.target == here]
        g, e = rng.choice(opts)
        letters.append((g, e))
        here = g.target if e > 0 else g.source
    return letters


def test_criterion_10_property_suites(criterion):
    t = time.perf_counter()
    rng = random.Random(10)
    # SNF on 500 random matrices
    for _ in range(500):
        m, n = rng.randint(1, 5), rng.randint(1, 5)
        A = [[rng.randint(-10, 10) for _ in range(n)] for _ in range(m)]
        r = smith_normal_form(A)
        assert matmul(matmul(r.U, A), r.V) == r.D
        nz = [d for d in r.diagonal if d]
        assert all(b % a == 0 for a, b in zip(nz, nz[1:]))
        # first elementary divisor is the gcd of the entries
        g = 0
        for row in A:
            for x in row:
                g = gcd(g, x)
        assert r.diagonal[0] == g
    # groupoid words
    gens = [EdgeGen("e1", 0, 1), EdgeGen("e2", 0, 2), EdgeGen("b1", 1, 1, "boundary-loop"),
            EdgeGen("b2", 2, 2, "boundary-loop")]
    for _ in range(1000):
        w = GroupoidWord.of(_random_path(rng, gens, rng.randint(0, 15)), 0)
        assert concat(w, inverse(w)) == GroupoidWord.empty(0)
        assert all(a[0] != b[0] or a[1] != -b[1] for a, b in zip(w.letters, w.letters[1:]))
    # disjoint curves commute, p <= 6
    for p in range(3, 7):
        model = holed_sphere(p)
        for u, v in combinations(model.curves, 2):
            if model.disjoint(u, v):
                assert verify_relation(model, RelationWord(Word.parse(f"{u} {v}"), Word.parse(f"{v} {u}")))
    # transvections and twist-word matrices are symplectic
    for _ in range(200):
        c = tuple(rng.randint(-3, 3) for _ in range(6))
        assert symplectic_check(transvection(c, rng.randint(-4, 4)))
    b = bd.build_Xm(3, 3, 4)
    for u, v in b.factorization.pairs:
        assert symplectic_check(word_to_matrix(u * v, b.classes, capped=True))
    dt = time.perf_counter() - t
    assert dt < 30.0
    criterion(10, f"SNF x500, groupoid x1000, commutation p<=6, symplectic ({dt:.2f}s)")
