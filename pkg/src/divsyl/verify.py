"""Catalog sweeps for each lemma validator, keyed by lemma name."""

from __future__ import annotations

from dataclasses import asdict, dataclass, field
from typing import Callable

from . import catalog
from .constructors import make
from .fields import is_prime
from .group import SCAN_BOUND, GroupError, PermGroup, SubgroupHandle, _scan_table, quotient_group
from .reduction import (Inapplicable, almsimple_check, conjecture_scan, main_theorem_check,
                        numpwreath_check, proposition_check, socle_analysis, projections_balanced,
                        subdirect_check, subdirect_witness, wreath_embed)
from .series import (compare_series, composition_series, induced_aut, lemma6_check,
                     minimal_normal_subgroups, rc_series, section_centralizer_scan)
from .subgroups import LATTICE_BOUND, divsyl_check, p_subgroup_classes, subgroup_classes
from .sylow import check_nu_factorization, is_p_solvable, p_core, sylow_indices
from .table import subgroup_key


@dataclass
class Check:
    group: str
    p: int | None
    applicable: bool
    holds: bool | None = None
    detail: dict = field(default_factory=dict)


@dataclass
class LemmaReport:
    lemma: str
    catalog: str
    seed: int
    max_order: int
    checks: list[Check]
    skipped: list[str]

    @property
    def failures(self) -> list[Check]:
        return [c for c in self.checks if c.applicable and c.holds is False]

    @property
    def verified(self) -> bool:
        return not self.failures

    def to_dict(self) -> dict:
        return {"lemma": self.lemma, "catalog": self.catalog, "seed": self.seed,
                "max_order": self.max_order, "verified": self.verified,
                "applicable": sum(c.applicable for c in self.checks),
                "checks": [asdict(c) for c in self.checks], "skipped": self.skipped}


def _name(G: PermGroup) -> str:
    return G.name or f"degree-{G.degree} group of order {G.order}"


def _normal_candidates(G: PermGroup) -> list[PermGroup]:
    """Minimal normal subgroups and the derived subgroup, without repeats."""
    t = _scan_table(G)
    out, seen = [], set()
    for A in [h.group for h in minimal_normal_subgroups(G)] + [G.derived_subgroup()]:
        key = subgroup_key(t.subgroup_indices(A))
        if key not in seen:
            seen.add(key)
            out.append(A)
    return out


def _primes(G: PermGroup) -> list[int]:
    return catalog.primes_dividing(G.order)


def _socle_simple(G: PermGroup):
    try:
        soc = socle_analysis(G)
    except Inapplicable:
        return None
    return soc if soc.k == 1 else None


# -- per-group checks ---------------------------------------------------------------

def _nupfactor(G, seed):
    for A in _normal_candidates(G):
        for p in _primes(G):
            r = check_nu_factorization(G, A, p, seed)
            yield Check(_name(G), p, True, r.holds, {"A_order": A.order, **asdict(r)})


def _extension(G, seed):
    t = _scan_table(G)
    for A in _normal_candidates(G):
        Q, _ = quotient_group(G, A)
        for p in _primes(G):
            P = sylow_indices(t, t.all, p, seed)
            PA = t.to_group(t.closure(list(t.generators_of(P)) + list(t.index_of(A.generators))))
            pa = divsyl_check(PA, p, "full", seed).satisfies
            q = divsyl_check(Q, p, "full", seed).satisfies
            if not (pa and q):
                yield Check(_name(G), p, False, detail={"A_order": A.order, "PA": pa, "quotient": q})
                continue
            g = divsyl_check(G, p, "full", seed).satisfies
            yield Check(_name(G), p, True, g, {"A_order": A.order})


def _psolvable(G, seed):
    for p in _primes(G):
        if not is_p_solvable(G, p):
            yield Check(_name(G), p, False, detail={"reason": "not p-solvable"})
            continue
        rep = divsyl_check(G, p, "full", seed)
        yield Check(_name(G), p, True, rep.satisfies, {"nu_p": rep.nu_p,
                                                       "violations": len(rep.violations)})


def _almsimple(G, seed):
    if _socle_simple(G) is None:
        yield Check(_name(G), None, False, detail={"reason": "not almost simple"})
        return
    for p in _primes(G):
        v = almsimple_check(G, p, seed)
        yield Check(_name(G), p, v.applicable, v.holds, dict(v.details, reason=v.reason))


def _inducedauto(G, seed):
    r1 = rc_series(G)
    r2 = rc_series(G, seed=seed + 1)
    m = compare_series(G, r1, r2)
    yield Check(_name(G), None, True, m.found and m.multisets_equal,
                {"kind": "rc-rc", "sigma": m.sigma, "aut_orders": m.aut_orders_1})
    c = composition_series(G, seed=seed)
    m2 = compare_series(G, c, r1)
    yield Check(_name(G), None, True, m2.found, {"kind": "composition-rc", "sigma": m2.sigma})
    t = _scan_table(G)
    same = True
    for sec in r1.sections():
        ia = induced_aut(G, sec)
        ker = t.subgroup_indices(ia.kernel.group)
        same = same and sorted(ker.tolist()) == sorted(section_centralizer_scan(G, sec).tolist())
    yield Check(_name(G), None, True, same, {"kind": "kernel equals centralizer scan"})


def _normpqp(G, seed):
    t = _scan_table(G)
    for p in _primes(G):
        H = p_core(G, p).group
        Hidx = t.subgroup_indices(H)
        # K = H O^p(G), O^p(G) being the normal closure of the p'-elements
        pprime = [int(x) for x in t.all if t.orders[x] % p]
        Ki = t.normal_closure(pprime, start=Hidx)
        K = t.to_group(Ki)
        for c in p_subgroup_classes(G, p):
            if not t.mask(c.indices)[Hidx].all():
                continue
            v = lemma6_check(G, H, K, c.representative, p)
            if not v.applicable:
                yield Check(_name(G), p, False, detail={"reason": v.reason})
                break
            yield Check(_name(G), p, True, v.holds,
                        {"H": H.order, "K": K.order, "Q": c.order,
                         "containment": v.containment, "image_identity": v.image_identity})


def _wreathembed(G, seed):
    try:
        soc = socle_analysis(G)
    except Inapplicable as e:
        yield Check(_name(G), None, False, detail={"reason": str(e)})
        return
    t = _scan_table(G)
    Tidx = t.subgroup_indices(soc.socle.group)
    tg = list(t.generators_of(Tidx))
    # the whole group, and the smallest class representative supplementing T
    Hs = [G]
    for c in subgroup_classes(G):
        if len(t.closure(list(t.generators_of(c.indices)) + tg)) == t.N:
            if c.order < G.order:
                Hs.append(c.representative.group)
            break
    for H in Hs:
        w = wreath_embed(G, SubgroupHandle(G, H))
        yield Check(_name(G), None, True, w.holds,
                    {"k": soc.k, "H_order": H.order, "image_order": w.image.order,
                     "relation": w.relation_holds, "injective": w.injective,
                     "socle_onto": w.socle_maps_onto, "covariance": w.covariance})


def _numpwreath(G, seed):
    if G.name not in catalog.WREATHS:
        yield Check(_name(G), None, False, detail={"reason": "not a catalog wreath product"})
        return
    Lname, Sname = catalog.WREATHS[G.name]
    W = catalog.wreath(G.name)
    L, S = make(Lname), make(Sname)
    for p in _primes(G):
        v = numpwreath_check(L, S, W.K, p, G)
        yield Check(_name(G), p, v.applicable, v.holds, dict(v.details, reason=v.reason))
    # the same L with one coordinate
    v = numpwreath_check(L, S, PermGroup(1, []), 2)
    yield Check(f"{Lname} (k=1)", 2, v.applicable, v.holds, dict(v.details, reason=v.reason))


def _subdirect(G, seed):
    if G.name not in catalog.WREATHS:
        yield Check(_name(G), None, False, detail={"reason": "not a catalog wreath product"})
        return
    W = catalog.wreath(G.name)
    factors = [PermGroup(G.degree, [W.base_embed(i, g) for g in W.L.generators])
               for i in range(W.k)]
    p = 2
    for c in subgroup_classes(G):
        w = subdirect_witness(G, factors, c.representative)
        if not w.valid:
            continue
        v = subdirect_check(w, p)
        detail = dict(v.details, H_order=c.order, covers=w.covers, reason=v.reason)
        ok = v.holds
        if w.covers and v.applicable:
            detail["balanced"] = s5 = projections_balanced(w)
            ok = ok and s5
        yield Check(_name(G), p, v.applicable, ok, detail)


def _maintheorem(G, seed):
    for p in _primes(G):
        r = main_theorem_check(G, p, seed)
        yield Check(_name(G), p, r.hypothesis is not None and r.conclusion is not None, r.holds,
                    {"combination": r.combination, "sections": r.sections, "errors": r.errors})


def _proposition(G, seed):
    soc = _socle_simple(G)
    if soc is None:
        yield Check(_name(G), None, False, detail={"reason": "not almost simple"})
        return
    S = soc.socle.group.order
    ps = [p for p in _primes(G) if S % p]
    # plus the smallest prime not dividing |G|, where everything is trivial
    ps.append(next(q for q in range(2, G.order + 2) if is_prime(q) and G.order % q))
    for p in ps:
        v = proposition_check(G, p)
        yield Check(_name(G), p, v.applicable, v.satisfies and bool(v.certificate_ok),
                    {"mode": v.mode, "nu_p": v.nu_p, "reason": v.reason})


def _conjecture(G, seed):
    if "simple" not in _tags(G):
        yield Check(_name(G), None, False, detail={"reason": "not a simple catalog group"})
        return
    for p in _primes(G):
        try:
            r = conjecture_scan(G, p, seed)
        except GroupError as e:
            yield Check(_name(G), p, False, detail={"reason": str(e)})
            return
        yield Check(_name(G), p, r.premise, (not r.premise) or r.all_satisfy,
                    {"premise": r.premise, "overgroups": r.entries})


def _tags(G: PermGroup) -> frozenset:
    for e in catalog.SMALL + catalog.FAMILIES:
        if e.name == G.name:
            return e.tags
    return frozenset()


@dataclass(frozen=True)
class Lemma:
    name: str
    run: Callable
    bound: int
    summary: str


LEMMAS: dict[str, Lemma] = {lm.name: lm for lm in [
    Lemma("nupfactor", _nupfactor, SCAN_BOUND,
          "nu_p(G) = nu_p(G/A) nu_p(PA) and nu_p(PA) = |A : N_A(P)|"),
    Lemma("extension", _extension, LATTICE_BOUND,
          "PA and G/A satisfy DivSyl(p) implies G does"),
    Lemma("psolvable", _psolvable, LATTICE_BOUND, "p-solvable groups satisfy DivSyl(p)"),
    Lemma("almsimple", _almsimple, LATTICE_BOUND,
          "almost simple A: PS satisfies DivSyl(p) implies A does"),
    Lemma("inducedauto", _inducedauto, LATTICE_BOUND,
          "induced automorphism orders agree between series"),
    Lemma("normpqp", _normpqp, LATTICE_BOUND, "N_K(P) <= N_K(Q) in p-by-p'-by-p groups"),
    Lemma("wreathembed", _wreathembed, LATTICE_BOUND, "embedding into Aut_G(S_1) wr rho(G)"),
    Lemma("numpwreath", _numpwreath, SCAN_BOUND, "nu_p(G) = |S|_p'^(k-1) nu_p(L)"),
    Lemma("subdirect", _subdirect, LATTICE_BOUND, "nu_p(H) divides nu_p(G) for subdirect H"),
    Lemma("maintheorem", _maintheorem, LATTICE_BOUND, "section hypothesis implies DivSyl(p)"),
    Lemma("proposition", _proposition, SCAN_BOUND,
          "almost simple with p not dividing |S| satisfies DivSyl(p)"),
    Lemma("conjecture", _conjecture, LATTICE_BOUND,
          "simple S with DivSyl(p): every S <= L <= Aut(S) too"),
]}


def run_lemma(name: str, catalog_name: str = "small", seed: int = 0,
              max_order: int | None = None) -> LemmaReport:
    if name not in LEMMAS:
        raise KeyError(f"unknown lemma {name!r}; choose from {', '.join(LEMMAS)}")
    lm = LEMMAS[name]
    bound = lm.bound if max_order is None else min(max_order, lm.bound)
    checks: list[Check] = []
    skipped = []
    for e in catalog.entries(catalog_name):
        G = catalog.group(e.name)
        if G.order > bound:
            skipped.append(e.name)
            continue
        checks.extend(lm.run(G, seed))
    return LemmaReport(name, catalog_name, seed, bound, checks, skipped)
