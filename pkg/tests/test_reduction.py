import random

import pytest

import oracles
from divsyl import catalog
from divsyl.constructors import make
from divsyl.group import PermGroup, quotient_group
from divsyl.perm import Permutation
from divsyl.reduction import (Inapplicable, almost_simple_census, almsimple_check,
                              conjecture_scan, main_theorem_check, numpwreath_check,
                              overgroups_between, proposition_check, psl2_table,
                              socle_analysis, projections_balanced, subdirect_check, subdirect_witness,
                              wreath_embed)
from divsyl.subgroups import divsyl_check
from divsyl.sylow import nu, sylow_subgroup


def sylow_oracle(G, p):
    """Conjugates of one Sylow subgroup under the generators, by set closure."""
    P = oracles.elements(sylow_subgroup(G, p).group.generators, G.degree)
    assert len(P) == oracles.p_part(G.order, p)
    return oracles.orbit_size(P, G.generators)


def base_factors(name):
    W = catalog.wreath(name)
    G = catalog.group(name)
    return W, G, [PermGroup(G.degree, [W.base_embed(i, g) for g in W.L.generators])
                  for i in range(W.k)]


# -- socle -------------------------------------------------------------------------

def test_socle_of_wreath():
    s = socle_analysis(catalog.group("alt(5)wrc2"))
    assert s.k == 2 and s.socle.order == 3600
    assert s.rho.image().order == 2
    assert [ia.image.order for ia in s.induced] == [60, 60]
    S1, S2 = (f.group for f in s.factors)
    assert S1.order == S2.order == 60
    assert all(a * b == b * a for a in S1.generators for b in S2.generators)
    assert PermGroup(S1.degree, list(S1.generators) + list(S2.generators)).order == 3600


def test_socle_of_almost_simple():
    s = socle_analysis(make("alt(5)"))
    assert s.k == 1 and s.socle.order == 60 and s.induced[0].image.order == 60
    s = socle_analysis(make("sym(5)"))
    assert s.k == 1 and s.socle.order == 60 and s.induced[0].image.order == 120


@pytest.mark.parametrize("name", ["sym(4)", "alt(5)xc2", "cyclic(6)"])
def test_socle_inapplicable(name):
    with pytest.raises(Inapplicable):
        socle_analysis(catalog.group(name))


# -- wreath embedding --------------------------------------------------------------

def _check_relation(w):
    G = w.source
    S1 = w.socle.factors[0].group
    for gi, g in enumerate(G.generators):
        for i, r in enumerate(w.reps):
            n = w.cocycle[(gi, i)]
            # n normalizes S_1 and n^-1 r_i g is again a coset representative
            assert all(s ^ n in S1 for s in S1.generators)
            assert ~n * r * g in w.reps


@pytest.mark.parametrize("name, order", [("alt(5)wrc2", 7200), ("sym(5)", 120),
                                         ("alt(5)", 60), ("sym(3)wrc2", None)])
def test_wreath_embed(name, order):
    G = catalog.group(name)
    try:
        w = wreath_embed(G, sylow_subgroup(G, 2).group if G.order > 120 else None)
    except Inapplicable:
        assert order is None  # sym(3) wr C2 has an abelian socle
        return
    assert w.holds
    assert w.image.order == G.order == order
    _check_relation(w)
    assert len(w.reps) == w.socle.k
    assert all(r in w.H for r in w.reps)


def test_wreath_embed_of_simple_group_is_conjugation():
    A5 = make("alt(5)")
    w = wreath_embed(A5)
    # k = 1: phi(g) is g acting on A5 by conjugation, a faithful image of A5
    assert w.socle.k == 1 and w.image.order == 60
    assert w.phi.is_well_defined()


def test_wreath_embed_needs_ht_equal_g():
    S5 = make("sym(5)")
    with pytest.raises(Inapplicable):
        wreath_embed(S5, make("alt(5)"))


# -- the wreath formula --------------------------------------------------------------

def test_numpwreath_a5():
    A5, C2 = make("alt(5)"), make("cyclic(2)")
    v = numpwreath_check(A5, A5, C2, 2)
    assert v.applicable and v.holds
    assert v.details["nu_G"] == v.details["predicted"] == 75 == 15 * 5
    assert sylow_oracle(catalog.group("alt(5)wrc2"), 2) == 75


def test_numpwreath_s5():
    S5, A5, C2 = make("sym(5)"), make("alt(5)"), make("cyclic(2)")
    v = numpwreath_check(S5, A5, C2, 2)
    assert v.applicable and v.holds
    nu_s5 = sylow_oracle(S5, 2)
    assert nu_s5 == 15
    assert v.details["nu_G"] == 15 * nu_s5 == sylow_oracle(catalog.group("sym(5)wrc2"), 2)


def test_numpwreath_one_coordinate():
    S5, A5 = make("sym(5)"), make("alt(5)")
    v = numpwreath_check(S5, A5, PermGroup(1, []), 2)
    assert v.applicable and v.holds and v.details["nu_G"] == v.details["nu_L"] == 15


def test_numpwreath_inapplicable():
    A5, S5, C2 = make("alt(5)"), make("sym(5)"), make("cyclic(2)")
    assert not numpwreath_check(A5, A5, C2, 3).applicable
    assert not numpwreath_check(S5, A5, C2, 3).applicable
    # the base group alone misses the top, so (b) fails
    W = catalog.wreath("alt(5)wrc2")
    v = numpwreath_check(A5, A5, C2, 2, W.base_group())
    assert not v.applicable and v.reason.startswith("(b)")


# -- subdirect products ----------------------------------------------------------------

def test_subdirect_diagonal():
    W, G, factors = base_factors("alt(5)wrc2")
    swap = W.top_embed(Permutation.parse("(1 2)", 2))
    ident = Permutation.identity(2)
    H = PermGroup(G.degree, [W.element([a, a], tuple(ident)) for a in W.L.generators] + [swap])
    assert H.order == 120
    w = subdirect_witness(G, factors, H)
    assert w.valid and w.covers and w.full == [True, True] and w.intersection_order == 60
    v = subdirect_check(w, 2)
    assert v.applicable and v.holds
    assert v.details["nu_H"] == 5 == sylow_oracle(H, 2)
    assert v.details["nu_G"] == 75
    assert projections_balanced(w)


def test_subdirect_base_and_one_factor():
    W, G, factors = base_factors("alt(5)wrc2")
    T = PermGroup(G.degree, [g for F in factors for g in F.generators])
    v = subdirect_check(subdirect_witness(G, factors, T), 2)
    assert v.holds and v.details["nu_H"] == 25 == sylow_oracle(T, 2)
    w = subdirect_witness(G, factors, factors[0])
    assert w.valid and w.full == [True, False] and w.trivial == [False, True]
    v = subdirect_check(w, 2)
    assert v.holds and v.details["nu_H"] == 5


def test_subdirect_product_formula_on_whole_group():
    W, G, factors = base_factors("alt(5)wrc2")
    w = subdirect_witness(G, factors, G)
    assert w.covers and w.is_product
    v = subdirect_check(w, 2)
    assert v.holds and v.details["formula"] and v.details["predicted"] == 75


def test_subdirect_inapplicable():
    W, G, factors = base_factors("alt(5)wrc2")
    v = subdirect_check(subdirect_witness(G, factors, G), 3)
    assert not v.applicable
    # a Sylow 2-subgroup of the first factor projects onto neither 1 nor A5
    P = PermGroup(G.degree, [W.base_embed(0, g) for g in sylow_subgroup(W.L, 2).group.generators])
    w = subdirect_witness(G, factors, P)
    assert not w.valid and not subdirect_check(w, 2).applicable


@pytest.mark.parametrize("name", ["alt(5)wrc2", "sym(5)wrc2"])
def test_balanced_projections_on_sampled_covering_subgroups(name):
    W, G, factors = base_factors(name)
    rng = random.Random(7)
    seen = 0
    for _ in range(24):
        H = PermGroup(G.degree, [G.random_element(rng), G.random_element(rng)])
        w = subdirect_witness(G, factors, H)
        if w.covers:
            seen += 1
            assert projections_balanced(w)
    assert seen > 0


@pytest.mark.parametrize("name, socle", [("alt(5)wrc2", "alt(5)"), ("sym(5)wrc2", "alt(5)")])
def test_subgroups_between_socle_and_group(name, socle):
    W, G, _ = base_factors(name)
    S = make(socle)
    T = PermGroup(G.degree, [W.base_embed(i, s) for i in range(W.k) for s in S.generators])
    Q, _ = quotient_group(G, T)
    assert oracles.p_part(Q.order, 2) == Q.order
    nuG = nu(G, 2)
    mids = overgroups_between(T, G)
    assert mids[0].order == T.order and mids[-1].order == G.order
    for H in mids:
        assert nuG % nu(H, 2) == 0


# -- main theorem, proposition, conjecture ---------------------------------------------

@pytest.mark.parametrize("name, p, combo", [("alt(5)", 5, "TT"), ("alt(5)", 3, "FF"),
                                            ("sym(4)", 2, "TT")])
def test_main_theorem_rows(name, p, combo):
    r = main_theorem_check(make(name), p)
    assert r.combination == combo and r.holds and not r.errors


def test_main_theorem_records_the_failing_section():
    r = main_theorem_check(make("alt(5)"), 3)
    (sec,) = r.sections
    assert sec["order"] == 60 and sec["aut_order"] == 60
    assert {f["X_order"] for f in sec["failures"]} == {60}
    assert main_theorem_check(make("sym(4)"), 2).sections == []


def test_proposition_examples():
    v = proposition_check(make("sym(5)"), 7)
    assert v.applicable and v.satisfies and v.nu_p == 1 and v.mode == "full"
    v = proposition_check(make("pgammal2(8)"), 5)
    assert v.applicable and v.satisfies and v.nu_p == 1
    assert {c.nu_p for c in v.reports[0].classes} == {1}
    assert not proposition_check(make("alt(5)"), 5).applicable
    assert not proposition_check(make("sym(4)"), 3).applicable


def test_almsimple_examples():
    v = almsimple_check(make("sym(5)"), 5)
    assert v.applicable and v.holds and v.details["premise"] and v.details["conclusion"]
    v = almsimple_check(make("alt(5)"), 3)
    assert v.applicable and v.holds and not v.details["premise"]


def test_conjecture_alt5():
    r = conjecture_scan(make("alt(5)"), 5)
    assert r.premise and r.all_satisfy
    assert [(e["order"], e["nu_p"]) for e in r.entries] == [(60, 6), (120, 6)]
    assert all(e["nu_values"] == [1, 6] for e in r.entries)


def test_conjecture_psl27():
    r = conjecture_scan(make("psl2(7)"), 7)
    assert [(e["order"], e["nu_p"]) for e in r.entries] == [(168, 8), (336, 8)]
    assert sylow_oracle(make("pgl2(7)"), 7) == 8


def test_conjecture_prime_not_dividing():
    r = conjecture_scan(make("alt(5)"), 7)
    assert r.premise and r.all_satisfy and all(e["nu_p"] == 1 for e in r.entries)


def test_overgroups_between_psl28():
    S = make("psl2(8)")
    # PGammaL(2,8)/PSL(2,8) is cyclic of order 3
    assert [L.order for L in overgroups_between(S, make("pgammal2(8)"))] == [504, 1512]


# -- PSL(2, q) at the defining characteristic -------------------------------

def test_psl2_table():
    rows = psl2_table()
    assert [(r["q"], r["p"], r["order"]) for r in rows] == \
        [(4, 2, 60), (5, 5, 60), (7, 7, 168), (8, 2, 504), (9, 3, 360)]
    assert [r["satisfies"] for r in rows] == [False, True, True, False, False]
    assert psl2_table(seed=3) == rows
    # psl2(4) = A5 at p = 2: the S3 subgroups have 3 Sylow 2-subgroups, against 5
    assert rows[0]["nu_p"] == 5 and {"order": 6, "nu_p": 3} in rows[0]["violations"]
    # psl2(9) = A6 at p = 3: the A4 subgroups have 4 Sylow 3-subgroups, against 10
    assert rows[4]["nu_p"] == 10 and {"order": 12, "nu_p": 4} in rows[4]["violations"]


def test_psl2_violations_against_oracle():
    for q, p in [(4, 2), (8, 2), (9, 3)]:
        G = make(f"psl2({q})")
        nuG = sylow_oracle(G, p)
        rep = divsyl_check(G, p)
        assert rep.nu_p == nuG
        for v in rep.violations:
            H = PermGroup(G.degree, [Permutation.parse(g, G.degree) for g in v.witness_generators])
            assert sylow_oracle(H, p) == v.nu_p and nuG % v.nu_p


def test_almost_simple_census():
    groups = [make("alt(5)"), make("sym(5)"), make("sym(4)"), make("pgl2(7)")]
    rows = almost_simple_census(groups)
    # sym(4) has an abelian minimal normal subgroup and is left out
    assert [r["order"] for r in rows] == [60, 120, 336]
    for G, r in zip([groups[0], groups[1], groups[3]], rows):
        assert r["mode"] == "full" and r["socle_order"] in (60, 168)
        for p in r["satisfied"] + r["violated"]:
            assert divsyl_check(G, p).satisfies == (p in r["satisfied"])
    assert rows[0]["satisfied"] == [5] and rows[0]["violated"] == [2, 3]
