"""The acceptance criteria, one test (or a few) per criterion.

Every group is rebuilt from its generators so that no lattice, table or
oracle result computed by an earlier test is reused; the time limits are
checked on cold computations.
"""

import json
import time
from collections import Counter

import pytest

import oracles
from divsyl import catalog
from divsyl.cli import run
from divsyl.constructors import make
from divsyl.group import PermGroup, SubgroupHandle
from divsyl.reduction import (main_theorem_check, numpwreath_check, proposition_check,
                              wreath_embed)
from divsyl.subgroups import brute_subgroups, brute_sylow_count, divsyl_check, subgroup_classes
from divsyl.sylow import check_nu_factorization, is_p_solvable, nu, p_partition, sylow_subgroup
from divsyl.verify import _normal_candidates


def fresh(name):
    G = catalog.group(name)
    return PermGroup(G.degree, list(G.generators), name=G.name or name)


def sylow_orbit_oracle(G, p):
    P = oracles.elements(sylow_subgroup(G, p).group.generators, G.degree)
    assert len(P) == oracles.p_part(G.order, p)
    return oracles.orbit_size(P, G.generators)


class Clock:
    def __init__(self, limit):
        self.limit = limit

    def __enter__(self):
        self.t = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.t
        if exc[0] is None:
            assert self.elapsed < self.limit, f"{self.elapsed:.1f}s over {self.limit}s"


# 1 ------------------------------------------------------------------------------------

@pytest.mark.criterion(1)
def test_alt5_counterexample(tmp_path, capsys):
    f = tmp_path / "a5.grp"
    f.write_text("name A5\ndegree 5\ngen (1 2 3 4 5)\ngen (1 2 3)\n")
    out = tmp_path / "a5.json"
    with Clock(1.0):
        assert nu(make("alt(5)"), 3) == 10
        assert nu(make("alt(4)"), 3) == 4
        code = run(["divsyl", "-g", str(f), "-p", "3", "--no-cache", "-o", str(out)])
    assert code == 1
    d = json.loads(out.read_text())
    assert d["nu_p"] == 10
    assert [(v["order"], v["nu_p"]) for v in d["violations"]] == [(12, 4)]


# 2 ------------------------------------------------------------------------------------

P_SOLVABLE = ["sym(3)", "sym(4)", "alt(4)", "sl2(3)"] + [f"dihedral({n})" for n in range(4, 21)] \
    + [e.name for e in catalog.SMALL if "abelian" in e.tags]


@pytest.mark.criterion(2)
def test_p_solvable_suite():
    seen = 0
    with Clock(120):
        for name in P_SOLVABLE:
            G = fresh(name)
            for p in catalog.primes_dividing(G.order):
                assert is_p_solvable(G, p)
                rep = divsyl_check(G, p, "full")
                assert rep.satisfies, (name, p)
                seen += 1
    assert seen > len(P_SOLVABLE)


# 3 ------------------------------------------------------------------------------------

@pytest.mark.criterion(3)
def test_nupfactor_identity():
    triples = 0
    with Clock(120):
        for e in catalog.entries("all"):
            G = fresh(e.name)
            for A in _normal_candidates(G):
                for p in catalog.primes_dividing(G.order):
                    r = check_nu_factorization(G, SubgroupHandle(G, A), p)
                    assert r.nu_G == r.nu_quotient * r.nu_PA, (e.name, A.order, p)
                    assert r.index_holds, (e.name, A.order, p)
                    triples += 1
    assert triples > 100


# 4 ------------------------------------------------------------------------------------

@pytest.mark.criterion(4)
def test_wreath_formula_a5():
    with Clock(30):
        A5, C2 = make("alt(5)"), make("cyclic(2)")
        v = numpwreath_check(A5, A5, C2, 2)
        orbit = sylow_orbit_oracle(fresh("alt(5)wrc2"), 2)
    assert v.applicable
    assert v.details["predicted"] == 15 * 5 == 75
    assert orbit == 75 == v.details["nu_G"]


@pytest.mark.criterion(4)
def test_wreath_formula_s5():
    with Clock(30):
        S5, A5, C2 = make("sym(5)"), make("alt(5)"), make("cyclic(2)")
        v = numpwreath_check(S5, A5, C2, 2)
        nu_s5 = sylow_orbit_oracle(make("sym(5)"), 2)
        orbit = sylow_orbit_oracle(fresh("sym(5)wrc2"), 2)
    assert v.applicable and fresh("sym(5)wrc2").degree == 10
    assert v.details["predicted"] == 15 * nu_s5
    assert orbit == v.details["predicted"] == v.details["nu_G"]


# 5 ------------------------------------------------------------------------------------

@pytest.mark.criterion(5)
@pytest.mark.parametrize("name", ["alt(5)wrc2", "sym(5)", "alt(5)"])
def test_wreath_embedding(name):
    with Clock(30):
        G = fresh(name)
        H = sylow_subgroup(G, 2).group if name.endswith("wrc2") else None
        w = wreath_embed(G, H)
    S1 = w.socle.factors[0].group
    for gi, g in enumerate(G.generators):
        for i, r in enumerate(w.reps):
            n = w.cocycle[(gi, i)]
            j = w.reps.index(~n * r * g)
            # r_i g = n_i(g) r_j with n_i(g) normalizing S_1, and j is i^rho(g)
            assert r * g == n * w.reps[j]
            assert all(s ^ n in S1 for s in S1.generators)
            Si, Sj = (PermGroup(G.degree, [s ^ x for s in S1.generators]) for x in (r, w.reps[j]))
            assert PermGroup(G.degree, [s ^ g for s in Si.generators]).same_as(Sj)
    assert w.relation_holds
    assert w.image.order == G.order and w.injective
    assert w.socle_maps_onto


# 6 ------------------------------------------------------------------------------------

@pytest.mark.criterion(6)
def test_main_theorem_sweep():
    bad, rows = [], {}
    with Clock(600):
        for e in catalog.entries("all", 10_000):
            G = fresh(e.name)
            for p in catalog.primes_dividing(G.order):
                r = main_theorem_check(G, p)
                assert not r.errors, (e.name, p, r.errors)
                rows[(e.name, p)] = r.combination
                if not r.holds:
                    bad.append((e.name, p))
    assert bad == []
    assert (rows[("alt(5)", 5)], rows[("alt(5)", 3)], rows[("sym(4)", 2)]) == ("TT", "FF", "TT")
    assert len(rows) > 100


# 7 ------------------------------------------------------------------------------------

@pytest.mark.criterion(7)
def test_oracle_equivalence():
    names = [e.name for e in catalog.entries("all", 1000)]
    assert "sym(6)" in names and "psl2(11)" in names
    with Clock(300):
        for name in names:
            G = fresh(name)
            brute = brute_subgroups(G)
            classes = oracles.class_partition(brute, G.generators)
            table = subgroup_classes(G)
            assert len(table) == len(classes), name
            assert Counter((c.order, c.class_size) for c in table) == \
                Counter((len(c[0]), len(c)) for c in classes), name
            for p in catalog.primes_dividing(G.order):
                assert nu(G, p) == brute_sylow_count(G, p), (name, p)


# 8 ------------------------------------------------------------------------------------

@pytest.mark.criterion(8)
def test_proposition_at_scale():
    with Clock(300):
        A = make("pgammal2(32)")
        v = proposition_check(A, 5)
    assert A.order == 163680
    assert v.applicable and v.mode == "sampled"
    assert [(r.seed, r.mode) for r in v.reports] == [(0, "sampled"), (1, "sampled")]
    assert all(r.violations == [] for r in v.reports) and v.satisfies
    assert v.certificate_ok
    assert v.nu_p % 5 == 1 and p_partition(A.order, 5).p_prime_part % v.nu_p == 0
    assert v.nu_p == sylow_orbit_oracle(A, 5)


# 9 ------------------------------------------------------------------------------------

@pytest.mark.criterion(9)
def test_psl2_table_is_stable(tmp_path):
    tables = []
    for seed in (0, 0, 1, 7):
        out = tmp_path / f"r{seed}.json"
        run(["scan", "psl2", "--seed", str(seed), "--no-cache", "-o", str(out)])
        tables.append(json.loads(out.read_text())["rows"])
    assert all(t == tables[0] for t in tables)
    rows = tables[0]
    assert [(r["q"], r["p"]) for r in rows] == [(4, 2), (5, 5), (7, 7), (8, 2), (9, 3)]
    for r in rows:
        G = make(f"psl2({r['q']})")
        assert r["nu_p"] == sylow_orbit_oracle(G, r["p"])
        assert r["satisfies"] == (r["violations"] == [])
        assert all(r["nu_p"] % v["nu_p"] for v in r["violations"])
