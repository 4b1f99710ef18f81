import pytest
from hypothesis import given, settings, strategies as st

from mcgbundles import rewrite as rw
from mcgbundles.bundles import cl_floor
from mcgbundles.corpus import DATA, script_texts
from mcgbundles.planar import DELTA, holed_sphere, power_relation, verify_relation
from mcgbundles.rewrite import (Derivation, Step, check_derivation, commute, derive_power_relation,
                                insert_commutator, invert, replay)
from mcgbundles.words import Word


@pytest.fixture(scope="module")
def planar():
    return rw.planar_oracles(5)


@pytest.fixture(scope="module")
def full():
    return rw.default_oracles()


def test_trivial_derivation_holds():
    w = Word.parse("a1 x3")
    assert check_derivation(Derivation(w, w), rw.OracleSet())


def test_swap_needs_oracle(planar):
    d = Derivation(Word.parse("a1 x3"), Word.parse("x3 a1"), (Step("swap", 0),))
    assert check_derivation(d, planar)
    v = check_derivation(d, rw.OracleSet())
    assert not v and v.witness == "step 0"


def test_malformed_steps():
    w = Word.parse("a1 x3")
    assert not check_derivation(Derivation(w, w, (Step("cancel", 0),)), rw.OracleSet())
    assert not check_derivation(Derivation(w, w, (Step("swap", 7),)), rw.OracleSet())
    assert not check_derivation(Derivation(w, Word.parse("x3"), ()), rw.OracleSet())


def test_planar_oracles_only_for_disjoint_pairs(planar):
    m = holed_sphere(5)
    for o in planar:
        if o.kind == "commute":
            assert m.disjoint(*o.args)
    assert planar.commuting("x1", "x2") is None


@pytest.mark.parametrize("k", range(1, 5))
def test_power_derivation_matches_exact(planar, k):
    d = derive_power_relation(k, planar)
    assert check_derivation(d, planar)
    assert d.end.letters() == power_relation(k).rhs.letters()
    assert d.start == Word.gen(DELTA, 2 * k)
    assert verify_relation(holed_sphere(5), power_relation(k))


def test_power_derivation_uses_daisy_k_times(planar):
    for k in (1, 2, 3):
        d = derive_power_relation(k, planar)
        assert sum(s.rule == "subst" for s in d.steps) == k


@pytest.mark.parametrize("k", [1, 2])
def test_every_cited_oracle_is_necessary(planar, k):
    d = derive_power_relation(k, planar)
    for o in rw.oracles_used(d, planar):
        assert not check_derivation(d, planar.without(o)), str(o)


def test_delta_x1_commutation_needed_from_k2(planar):
    d = derive_power_relation(2, planar)
    assert not check_derivation(d, planar.without(commute(DELTA, "x1")))


def test_replay_and_invert(planar):
    d = derive_power_relation(2, planar)
    stages = replay(d)
    assert stages[0] == d.start.letters() and stages[-1] == d.end.letters()
    back = invert(d)
    assert check_derivation(back, planar)
    assert invert(back) == d


def test_insert_commutator_examples(full):
    br, d = insert_commutator(Word.parse("x3^3 a4^-3 x4^3 a3^-3"), full)
    assert str(br) == "[x3^3 a4^-3, psi]"
    assert check_derivation(d, full)
    br, d = insert_commutator(Word.parse("x1 a2^-1 x2 a1^-1"), full)
    assert str(br) == "[x1 a2^-1, phi]"
    assert check_derivation(d, full)
    with pytest.raises(rw.RewriteError):
        insert_commutator(Word.parse("x1 a2^-1"), full)


@pytest.mark.parametrize("k", range(1, 11))
def test_commutatorize(full, k):
    cf = rw.commutatorize_even_power(k, full)
    assert cf.count == k + 1 == cl_floor(2 * k)
    assert cf.verdict
    assert cf.target == Word.gen(DELTA, 2 * k)
    assert cf.expand() == cf.derivation.end


def test_commutatorize_assumptions_exactly_the_axioms(full):
    cf = rw.commutatorize_even_power(2, full)
    axioms = set(rw.bracket_axioms())
    assert set(cf.verdict.assumptions) == {str(o) for o in axioms}
    for o in axioms:
        assert not check_derivation(cf.derivation, full.without(o))


def test_capping():
    assert rw.cap_boundary(Word.gen(DELTA, 6), rw.XM_CAP) == Word()
    c = rw.cap_commutator(rw.Commutator(Word.parse("x1 a2^-1"), Word.gen("phi")), rw.XM_CAP)
    assert (c.u, c.v) == (Word.parse("a1 a2^-1"), Word())
    c = rw.cap_commutator(rw.lifted_xm_brackets(3, 2)[-1], rw.XM_CAP)
    assert (c.u, c.v) == (Word.parse("a3^3 a1^-3"), Word.parse("b^2"))
    with pytest.raises(rw.RewriteError):
        rw.cap_boundary(Word.parse("q"), rw.XM_CAP)


cap_symbols = st.sampled_from(sorted(rw.XM_CAP))
words = st.lists(st.tuples(cap_symbols, st.integers(-3, 3)), max_size=8).map(lambda s: Word(tuple(s)))


@settings(max_examples=200, deadline=None)
@given(words, words)
def test_capping_is_homomorphism(u, v):
    assert rw.cap_boundary(u * v, rw.XM_CAP) == rw.cap_boundary(u, rw.XM_CAP) * rw.cap_boundary(v, rw.XM_CAP)


def test_lifted_derivations():
    d, v = rw.derive_lifted_xm(2, 3)
    assert v and "commute(b, a4)" in v.assumptions
    d, v = rw.derive_lifted_ym(2, 3)
    assert v


def test_script_round_trip(planar):
    d = derive_power_relation(2, planar)
    text = rw.format_script(d, rw.oracles_used(d, planar))
    d2, o2 = rw.parse_script(text)
    assert d2 == d
    assert check_derivation(d2, o2)


def test_shipped_scripts_are_current_and_check():
    for name, text in script_texts().items():
        assert (DATA / name).read_text() == text
        d, o = rw.parse_script(text)
        assert check_derivation(d, o), name


def test_script_with_false_relation_rejected():
    text = "relation bogus : delta = x1 [planar-verified]\nstart delta\nend x1\n"
    with pytest.raises(rw.RewriteError):
        rw.parse_script(text)
