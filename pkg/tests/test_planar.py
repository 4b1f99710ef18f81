import itertools

import pytest

from mcgbundles.catalog import format_catalog
from mcgbundles.groupoid import CatalogError, GroupoidWord, evaluate, word_from_text
from mcgbundles.planar import (DELTA, ArcSpec, ConventionError, boundary_twist_image, cyclic_interval,
                               daisy_relation, holed_sphere, holed_sphere_catalog, load_model, power_relation,
                               push, push_sides, verify_relation)
from mcgbundles.words import RelationWord, Word


def commute(model, u, v):
    return verify_relation(model, RelationWord(Word.parse(f"{u} {v}"), Word.parse(f"{v} {u}")))


def test_catalog_round_trip():
    for p in (3, 4, 5, 6):
        m = holed_sphere(p)
        assert format_catalog(load_model(format_catalog(m))) == format_catalog(m)


def test_catalog_curves_and_disjointness():
    m = holed_sphere(5)
    assert m.curve("x1").holes == (2, 3, 4)
    assert m.curve("x4").holes == (1, 2, 3)
    assert m.curve_by_holes({4, 1}) == "c4_1"
    for a in ("a1", "a2", "a3", "a4", DELTA):
        assert all(m.disjoint(a, c) for c in m.curves if c != a)
    assert not m.disjoint("x1", "x2")
    with pytest.raises(CatalogError):
        m.curve("nope")


def test_boundary_twist_action():
    m = holed_sphere(5)
    e1 = m.gen("e1")
    assert m.curve("a1").action.image(e1) == GroupoidWord.of([(e1, 1), (m.gen("b1"), 1)])


@pytest.mark.parametrize("n", range(-3, 4))
def test_boundary_twist_degree(n):
    m = holed_sphere(5)
    for i in range(1, 5):
        t = evaluate(Word.gen(f"a{i}", n), m)
        assert t.image(m.gen(f"e{i}")) == boundary_twist_image(m, i, n)
        assert all(t.image(g) == GroupoidWord.of([(g, 1)]) for g in m.generators if g.name != f"e{i}")


@pytest.mark.parametrize("p", [3, 4, 5, 6])
def test_disjoint_curves_commute_exhaustive(p):
    m = holed_sphere(p)
    for u, v in itertools.combinations(m.curves, 2):
        if m.disjoint(u, v):
            assert commute(m, u, v), (u, v)


def test_intersecting_curves_do_not_commute():
    m = holed_sphere(5)
    for u, v in itertools.combinations([f"x{i}" for i in range(1, 5)], 2):
        assert not commute(m, u, v)


def test_twists_pairwise_distinct():
    m = holed_sphere(5)
    tables = {c: evaluate(Word.gen(c), m) for c in m.curves}
    assert len(set(tables.values())) == len(tables)
    assert not any(t.is_identity() for t in tables.values())


def test_conjugation_records():
    m = holed_sphere(5)
    for r in m.conjugations:
        lhs = r.f * Word.gen(r.c) * r.f.inverse()
        assert verify_relation(m, RelationWord(lhs, Word.gen(r.c_image)))


def test_lantern():
    assert verify_relation(holed_sphere(4), daisy_relation(3))


@pytest.mark.parametrize("d", range(3, 8))
def test_daisy(d):
    assert verify_relation(holed_sphere(d + 1), daisy_relation(d))


def test_daisy_wrong_sign_fails():
    r = daisy_relation(4)
    reversed_rhs = RelationWord(r.lhs, Word.parse("x4 x3 x2 x1"))
    v = verify_relation(holed_sphere(5), reversed_rhs)
    assert not v and v.witness is not None


def test_corrupted_catalog_is_caught():
    text = holed_sphere_catalog(5)
    bad = text.replace("act x1 e2 : ", "act x1 e2 : e2 b2 e2^-1 ", 1)
    with pytest.raises(ConventionError):
        load_model(bad)
    # without validation the daisy relation reports a witness generator
    v = verify_relation(load_model(bad, validate=False), daisy_relation(4))
    assert not v and v.witness.startswith("e")


@pytest.mark.parametrize("k", range(1, 5))
def test_power_relation(k):
    assert verify_relation(holed_sphere(5), power_relation(k))


def test_power_relation_off_by_one_fails():
    r = power_relation(2)
    assert not verify_relation(holed_sphere(5), RelationWord(Word.gen(DELTA, 2), r.rhs))


def test_push_naturality():
    m = holed_sphere(5)
    lhs = Word()
    for i in range(1, 5):
        lhs = lhs * push(m, ArcSpec((i,)))
    assert verify_relation(m, RelationWord(lhs, push(m, ArcSpec(None))))


def test_push_single_hole_and_orientation():
    m = holed_sphere(5)
    assert push_sides(m, ArcSpec((2,))) == ("x2", "a2")
    assert push(m, ArcSpec((2,), "ccw")) == push(m, ArcSpec((2,))).inverse()
    assert push(m, ArcSpec(None)) == Word.gen(DELTA, -2)
    with pytest.raises(ValueError):
        push(m, ArcSpec((1, 3)))


def test_cyclic_interval():
    assert cyclic_interval(3, 3, 4) == (3, 4, 1)
    assert word_from_text("e1 b1 e1^-1", {g.name: g for g in holed_sphere(4).generators}).source == 0
