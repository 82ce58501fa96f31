"""Socle analysis, the wreath embedding and the reduction validators."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import cached_property
from math import prod

import numpy as np

from .constructors import aut_overgroup, make
from .group import (GroupError, Homomorphism, PermGroup, SubgroupHandle, TooLargeError,
                    WreathProduct, _scan_table, quotient_group, wreath_product)
from .perm import Permutation
from .series import (InducedAutGroup, induced_aut, minimal_normal_subgroups, rc_series,
                     section, section_fingerprint)
from .subgroups import LATTICE_BOUND, divsyl_check, p_subgroup_classes, subgroup_classes
from .sylow import _is_p_power, nu_in, nu_p, p_partition, sylow_indices, sylow_orbit
from .table import subgroup_key

PROPOSITION_SEEDS = (0, 1)
PROPOSITION_COUNT = 64


class Inapplicable(GroupError):
    """A hypothesis of a validator does not hold for the given input."""


def _handle(G: PermGroup, X) -> PermGroup:
    return X.group if isinstance(X, SubgroupHandle) else X


# -- socle -----------------------------------------------------------------------

@dataclass
class SocleDecomposition:
    group: PermGroup
    socle: SubgroupHandle
    factors: list[SubgroupHandle]
    rho: Homomorphism

    @property
    def k(self) -> int:
        return len(self.factors)

    @cached_property
    def induced(self) -> list[InducedAutGroup]:
        """``L_i = Aut_G(S_i)`` on the points of ``S_i``."""
        triv = SubgroupHandle(self.group, PermGroup(self.group.degree, []))
        return [induced_aut(self.group, section(S, triv)) for S in self.factors]

    def factor_action(self, g) -> Permutation:
        return self.rho(g)


def _factor_index(t, factor_keys: dict, factor_idx: list, g: int) -> list[int]:
    return [factor_keys[subgroup_key(t.conj_subgroup(S, g))] for S in factor_idx]


def socle_analysis(G: PermGroup) -> SocleDecomposition:
    """Split a unique nonabelian minimal normal subgroup into simple factors."""
    mins = minimal_normal_subgroups(G)
    if len(mins) != 1:
        raise Inapplicable(f"{len(mins)} minimal normal subgroups")
    T = mins[0]
    if T.group.is_abelian():
        raise Inapplicable("the minimal normal subgroup is abelian")
    t = _scan_table(G)
    # simple factors are the minimal normal subgroups of T
    facs = minimal_normal_subgroups(T.group)
    fidx = sorted((t.subgroup_indices(S.group) for S in facs), key=subgroup_key)
    keys = {subgroup_key(S): i for i, S in enumerate(fidx)}
    k = len(fidx)

    def act(g) -> Permutation:
        i = int(t.index_of([g])[0])
        return Permutation._trusted(_factor_index(t, keys, fidx, i))

    imgs = [act(g) for g in G.generators]
    rho = Homomorphism(G, PermGroup(k, imgs), imgs, evaluate=act)
    factors = [SubgroupHandle(G, t.to_group(S)) for S in fidx]
    return SocleDecomposition(G, T, factors, rho)


# -- wreath embedding ----------------------------------------------------------------

@dataclass
class WreathEmbedding:
    source: PermGroup
    H: PermGroup
    socle: SocleDecomposition
    reps: list[Permutation]
    cocycle: dict
    target: WreathProduct
    phi: Homomorphism
    image: PermGroup
    relation_holds: bool
    injective: bool
    socle_maps_onto: bool
    covariance: dict

    @property
    def holds(self) -> bool:
        return (self.relation_holds and self.injective and self.socle_maps_onto
                and all(self.covariance.values()))


def wreath_embed(G: PermGroup, H=None) -> WreathEmbedding:
    """The embedding of ``G`` into ``Aut_G(S_1) wr rho(G)``.

    ``r_i`` are right coset representatives of ``N_G(S_1)`` taken from
    ``H``, with ``S_1^{r_i} = S_i``; then ``r_i g = n_i(g) r_{i rho(g)}``
    and ``phi(g) = (theta(n_1(g)), ..., theta(n_k(g))) rho(g)``.
    """
    soc = socle_analysis(G)
    Hg = G if H is None else _handle(G, H)
    t = _scan_table(G)
    Tidx = t.subgroup_indices(soc.socle.group)
    HT = t.closure(list(t.index_of(Hg.generators)) + list(t.generators_of(Tidx)))
    if len(HT) != t.N:
        raise Inapplicable("HT is not all of G")
    k = soc.k
    fidx = [t.subgroup_indices(S.group) for S in soc.factors]
    keys = {subgroup_key(S): i for i, S in enumerate(fidx)}
    # reps inside H, found by a search over H's generators on factor indices
    hgens = [int(x) for x in t.index_of(Hg.generators)]
    reps: list[int | None] = [None] * k
    reps[0] = 0
    queue = [0]
    while queue:
        i = queue.pop(0)
        for h in hgens:
            j = keys[subgroup_key(t.conj_subgroup(fidx[i], h))]
            if reps[j] is None:
                reps[j] = int(t.mul(reps[i], h))
                queue.append(j)
    if any(r is None for r in reps):
        raise Inapplicable("H is not transitive on the simple factors")
    # relabel factors so that S_i = S_1^{r_i}
    order = [keys[subgroup_key(t.conj_subgroup(fidx[0], r))] for r in reps]
    fidx = [fidx[j] for j in order]
    keys = {subgroup_key(S): i for i, S in enumerate(fidx)}
    reps_arr = np.array(reps, dtype=np.int64)
    rinv = t.inv[reps_arr]
    N1 = t.normalizer(t.all, t.generators_of(fidx[0]))
    n1m = t.mask(N1)
    ia = induced_aut(G, section(SubgroupHandle(G, t.to_group(fidx[0])),
                                SubgroupHandle(G, PermGroup(G.degree, []))))
    L = ia.image
    m = L.degree

    def theta(x: int) -> Permutation:
        return Permutation._trusted(ia.labels[t.conj(ia.reps, x)].tolist())

    def rho_of(g: int) -> list[int]:
        return [keys[subgroup_key(t.conj_subgroup(S, g))] for S in fidx]

    def cocycle(g: int):
        r = rho_of(g)
        ns = [int(t.mul(t.mul(reps_arr[i], g), rinv[r[i]])) for i in range(k)]
        return r, ns

    rhoG = PermGroup(k, [Permutation._trusted(rho_of(int(g))) for g in t.gens])
    W0 = WreathProduct(PermGroup(k * m, []), L, rhoG)

    def phi_idx(g: int) -> Permutation:
        r, ns = cocycle(g)
        return W0.element([theta(n) for n in ns], r)

    def phi(g) -> Permutation:
        return phi_idx(int(t.index_of([g])[0]))

    relation = True
    table = {}
    for gi, g in enumerate(t.gens):
        r, ns = cocycle(int(g))
        for i in range(k):
            # r_i g = n_i(g) r_{i rho(g)} with n_i(g) in N_G(S_1)
            ok = n1m[ns[i]] and int(t.mul(reps[i], g)) == int(t.mul(ns[i], reps[r[i]]))
            relation &= bool(ok)
            table[(gi, i)] = t.perm(ns[i])
    imgs = [phi_idx(int(g)) for g in t.gens]
    image = PermGroup(k * m, imgs)
    target = WreathProduct(wreath_product(L, rhoG).group, L, rhoG)
    hom = Homomorphism(G, target.group, imgs, evaluate=phi)
    injective = image.order == G.order
    inner = ia.inner
    bold_S = PermGroup(k * m, [W0.base_embed(i, s) for i in range(k) for s in inner.generators])
    phiT = PermGroup(k * m, [phi_idx(int(x)) for x in t.generators_of(Tidx)])
    socle_ok = phiT.same_as(bold_S)
    # covariance: coordinates of phi(X) lie in Aut_X(S_1)
    cov = {}
    rng = random.Random(0)
    for name, X in (("H", Hg), ("G", G)):
        Xidx = t.subgroup_indices(X)
        NX = t.normalizer(Xidx, t.generators_of(fidx[0]))
        autX = PermGroup(m, [theta(int(x)) for x in t.generators_of(NX)])
        sample = [int(x) for x in t.index_of(X.generators)]
        sample += [int(Xidx[rng.randrange(len(Xidx))]) for _ in range(20)]
        cov[name] = all(theta(n) in autX for g in sample for n in cocycle(g)[1])
    return WreathEmbedding(G, Hg, soc, [t.perm(r) for r in reps], table, target, hom, image,
                           relation, injective, socle_ok, cov)


# -- Sylow numbers in wreath products -----------------------------------------------

@dataclass
class Verdict:
    applicable: bool
    holds: bool | None = None
    reason: str = ""
    details: dict = field(default_factory=dict)


def numpwreath_check(L: PermGroup, S, K: PermGroup, p: int, G: PermGroup | None = None) -> Verdict:
    """``nu_p(G) = |S|_{p'}^{k-1} nu_p(L)`` for ``G`` inside ``L wr K``.

    Checks the four hypotheses first: the base socle lies in ``G``, ``G``
    and the base group generate the whole wreath product, each ``S_i``
    normalizer projects onto ``L``, and a Sylow subgroup of ``G`` sits in
    ``(P x ... x P) K`` for a Sylow ``P`` of ``L``.
    """
    Sg = _handle(L, S)
    k = K.degree
    if not Sg.is_normal_in(L):
        return Verdict(False, reason="S is not normal in L")
    if not _is_p_power(L.order // Sg.order, p):
        return Verdict(False, reason="L/S is not a p-group")
    if k > 0 and (not _is_p_power(K.order, p) or not K.is_transitive()):
        return Verdict(False, reason="K is not a transitive p-group")
    W = wreath_product(L, K)
    G = W.group if G is None else G
    if any(g not in W.group for g in G.generators):
        return Verdict(False, reason="G is not inside L wr K")
    boldS = PermGroup(W.group.degree, [W.base_embed(i, s) for i in range(k) for s in Sg.generators])
    if not boldS.is_subgroup_of(G):
        return Verdict(False, reason="(a) the base socle is not in G")
    GL = PermGroup(W.group.degree, list(G.generators) + list(W.base_group().generators))
    if GL.order != W.group.order:
        return Verdict(False, reason="(b) G and the base group do not generate L wr K")
    t = _scan_table(G)
    for i in range(k):
        Si = t.subgroup_indices(PermGroup(G.degree, [W.base_embed(i, s) for s in Sg.generators]))
        N = t.normalizer(t.all, t.generators_of(Si))
        proj = PermGroup(L.degree, [W.pi(i, x) for x in t.perms(t.generators_of(N))])
        if not proj.same_as(L):
            return Verdict(False, reason=f"(c) the normalizer of S_{i + 1} does not project onto L")
    # (d): some Sylow Q lies in (P_1 x ... x P_k) K with P_i = pi_i(N_Q(S_i))
    blocks = [PermGroup(G.degree, [W.base_embed(i, s) for s in Sg.generators]) for i in range(k)]
    bidx = [t.subgroup_indices(B) for B in blocks]
    found = False
    for Q in sylow_orbit(t, sylow_indices(t, t.all, p)):
        qm = None
        gens = [W.top_embed(s) for s in K.generators]
        for i, B in enumerate(bidx):
            NQ = t.normalizer(Q, t.generators_of(B))
            gens += [W.base_embed(i, W.pi(i, x)) for x in t.perms(t.generators_of(NQ))]
        X = PermGroup(W.group.degree, gens)
        qm = all(x in X for x in t.perms(t.generators_of(Q)))
        if qm:
            found = True
            break
    if not found:
        return Verdict(False, reason="(d) no Sylow subgroup Q of G inside (P_1 x ... x P_k) K")
    lhs = nu_p(G, p).nu_p
    nuL = nu_p(L, p).nu_p
    rhs = p_partition(Sg.order, p).p_prime_part ** (k - 1) * nuL
    return Verdict(True, lhs == rhs, details={"nu_G": lhs, "predicted": rhs, "nu_L": nuL,
                                              "S_p_prime": p_partition(Sg.order, p).p_prime_part,
                                              "k": k})


# -- subdirect products ----------------------------------------------------------------

@dataclass
class SubdirectWitness:
    group: PermGroup
    factors: list[SubgroupHandle]
    H: PermGroup
    projections: list[np.ndarray] = field(repr=False)
    full: list[bool]
    trivial: list[bool]
    intersection_order: int
    covers: bool

    @property
    def valid(self) -> bool:
        return all(f or z for f, z in zip(self.full, self.trivial))

    @property
    def orders(self) -> list[int]:
        return [len(x) for x in self.projections]

    @property
    def is_product(self) -> bool:
        return self.intersection_order == prod(self.orders)


def _projections(t, fidx: list[np.ndarray]):
    """Elements of ``T = G_1 x ... x G_k`` with their component indices.

    Returns ``(elems, comps, where)``: ``comps[i][j]`` is the ``G_i``
    component of ``elems[j]`` and ``where`` maps a table index to ``j``.
    """
    elems = np.zeros(1, dtype=np.int64)
    comps: list[np.ndarray] = []
    for F in fidx:
        comps = [c.repeat(len(F)) for c in comps]
        comps.append(np.tile(F, len(elems)))
        elems = t.mul(elems[:, None], F[None, :]).ravel()
    where = np.full(t.N, -1, dtype=np.int64)
    where[elems] = np.arange(len(elems))
    return elems, comps, where


def subdirect_witness(G: PermGroup, factors, H) -> SubdirectWitness:
    t = _scan_table(G)
    fidx = [t.subgroup_indices(_handle(G, F)) for F in factors]
    Tidx, comps, where = _projections(t, fidx)
    Hidx = t.subgroup_indices(_handle(G, H))
    inter = Hidx[where[Hidx] >= 0]
    projs = [np.unique(c[where[inter]]) for c in comps]
    full = [len(pj) == len(F) for pj, F in zip(projs, fidx)]
    triv = [len(pj) == 1 for pj in projs]
    HT = t.closure(list(t.generators_of(Hidx)) + list(t.generators_of(np.sort(Tidx))))
    hs = [SubgroupHandle(G, _handle(G, F)) for F in factors]
    return SubdirectWitness(G, hs, _handle(G, H), projs, full, triv, len(inter), len(HT) == t.N)


def projections_balanced(w: SubdirectWitness) -> bool:
    """Equal projection orders, and H normalizes their product."""
    t = _scan_table(w.group)
    if len(set(w.orders)) != 1:
        return False
    prodgens = [int(x) for pj in w.projections for x in t.generators_of(pj)]
    Pidx = t.closure(prodgens)
    return t.is_normal(Pidx, within=t.subgroup_indices(w.H))


def subdirect_check(w: SubdirectWitness, p: int) -> Verdict:
    """``nu_p(H)`` divides ``nu_p(G)``, and the product formula when it applies."""
    G = w.group
    t = _scan_table(G)
    fidx = [t.subgroup_indices(F.group) for F in w.factors]
    Tidx = t.closure([int(x) for F in fidx for x in t.generators_of(F)])
    if not t.is_normal(Tidx):
        return Verdict(False, reason="T is not normal in G")
    if not _is_p_power(t.N // len(Tidx), p):
        return Verdict(False, reason="G/T is not a p-group")
    if not w.valid:
        return Verdict(False, reason="a projection is neither full nor trivial")
    if w.covers and len(set(w.orders)) != 1:
        return Verdict(False, reason="HT = G but the projections differ in order")
    Hidx = t.subgroup_indices(w.H)
    nuH = nu_in(t, Hidx, p)
    nuG = len(sylow_orbit(t, sylow_indices(t, t.all, p)))
    details = {"nu_H": nuH, "nu_G": nuG, "divides": nuG % nuH == 0}
    holds = nuG % nuH == 0
    if w.covers and w.is_product:
        # nu_p(H) = nu_p(Aut_H(S_1)) |H_1|_{p'}^{k-1}
        S1 = w.factors[0]
        ia = induced_aut(G, section(S1, SubgroupHandle(G, PermGroup(G.degree, []))))
        NH = t.normalizer(Hidx, t.generators_of(fidx[0]))
        autH = PermGroup(ia.image.degree, [ia.act(x) for x in t.perms(t.generators_of(NH))])
        nu_aut = nu_p(autH, p).nu_p
        k = len(fidx)
        pred = nu_aut * p_partition(w.orders[0], p).p_prime_part ** (k - 1)
        details.update({"nu_Aut_H": nu_aut, "predicted": pred, "formula": pred == nuH})
        holds = holds and pred == nuH
    return Verdict(True, holds, details=details)


# -- the main implication ------------------------------------------------------------

@dataclass
class ImplicationRecord:
    group: str
    p: int
    hypothesis: bool | None
    conclusion: bool | None
    sections: list[dict]
    errors: list[str] = field(default_factory=list)

    @property
    def holds(self) -> bool:
        return not (self.hypothesis is True and self.conclusion is False)

    @property
    def combination(self) -> str:
        f = {True: "T", False: "F", None: "?"}
        return f[self.hypothesis] + f[self.conclusion]


def _section_aut(G: PermGroup, sec) -> tuple[PermGroup, PermGroup]:
    """``Aut_G(A/B)`` and its inner part, kept on ``G`` so every prime reuses them."""
    t = _scan_table(G)
    key = (subgroup_key(t.subgroup_indices(sec.upper.group)),
           subgroup_key(t.subgroup_indices(sec.lower.group)))
    memo = G._cache.setdefault("section_aut", {})
    if key not in memo:
        ia = induced_aut(G, sec)
        memo[key] = (ia.image, ia.inner)
    return memo[key]


def main_theorem_check(G: PermGroup, p: int, seed: int = 0) -> ImplicationRecord:
    """Hypothesis: every ``P Inn(S_i)`` for a p-subgroup ``P`` of ``Aut_G(S_i)``,
    over the nonabelian sections of an (rc)-series, satisfies DivSyl(p).
    Conclusion: ``G`` does."""
    name = G.name or f"degree-{G.degree} group"
    errors: list[str] = []
    sections = []
    hyp: bool | None = True
    try:
        rc = rc_series(G)
        secs = rc.sections()
    except (TooLargeError, GroupError) as e:
        return ImplicationRecord(name, p, None, None, [], [str(e)])
    for i, sec in enumerate(secs):
        if section_fingerprint(G, sec)[1]:
            continue
        entry = {"section": i, "order": sec.order}
        try:
            aut, inner = _section_aut(G, sec)
            entry["aut_order"] = aut.order
            bad = []
            pc = p_subgroup_classes(aut, p)
            ta = _scan_table(aut)
            inner_idx = [int(x) for x in ta.index_of(inner.generators)]
            # many classes give the same P Inn(S_i); check each group once
            seen = aut._cache.setdefault("divsyl_over_inner", {})
            for c in pc:
                Xidx = ta.closure([int(x) for x in ta.index_of(c.representative.group.generators)]
                                  + inner_idx)
                vkey = (subgroup_key(Xidx), p, seed)
                if vkey not in seen:
                    X = aut if len(Xidx) == ta.N else ta.to_group(Xidx)
                    seen[vkey] = divsyl_check(X, p, "full", seed).satisfies
                if not seen[vkey]:
                    bad.append({"P_order": c.order, "X_order": len(Xidx)})
            entry["p_classes"] = len(pc)
            entry["failures"] = bad
            if bad:
                hyp = False
        except (TooLargeError, GroupError) as e:
            errors.append(f"section {i}: {e}")
            entry["error"] = str(e)
            if hyp is True:
                hyp = None
        sections.append(entry)
    try:
        concl: bool | None = divsyl_check(G, p, "full", seed).satisfies
    except TooLargeError as e:
        errors.append(f"conclusion: {e}")
        concl = None
    return ImplicationRecord(name, p, hyp, concl, sections, errors)


# -- almost simple groups ----------------------------------------------------------------

@dataclass
class PropositionVerdict:
    applicable: bool
    reason: str = ""
    mode: str = ""
    satisfies: bool | None = None
    reports: list = field(default_factory=list)
    certificate_ok: bool | None = None
    nu_p: int | None = None


def proposition_check(A: PermGroup, p: int) -> PropositionVerdict:
    """An almost simple group whose socle has order prime to p satisfies DivSyl(p)."""
    try:
        soc = socle_analysis(A)
    except Inapplicable as e:
        return PropositionVerdict(False, str(e))
    if soc.k != 1:
        return PropositionVerdict(False, "socle is not simple")
    S = soc.socle.group
    if S.order % p == 0:
        return PropositionVerdict(False, "p divides the order of the socle")
    Q, _ = quotient_group(A, S)
    if not Q.is_solvable():
        return PropositionVerdict(False, "A/S is not solvable")
    cert = nu_p(A, p)
    if A.order <= LATTICE_BOUND:
        reports = [divsyl_check(A, p, "full")]
        mode = "full"
    else:
        reports = [divsyl_check(A, p, "sampled", seed=s, count=PROPOSITION_COUNT)
                   for s in PROPOSITION_SEEDS]
        mode = "sampled"
    return PropositionVerdict(True, "", mode, all(r.satisfies for r in reports), reports,
                              cert.check(), cert.nu_p)


def almsimple_check(A: PermGroup, p: int, seed: int = 0) -> Verdict:
    """If ``PS`` satisfies DivSyl(p) for a Sylow ``P`` of ``A``, so does ``A``."""
    try:
        soc = socle_analysis(A)
    except Inapplicable as e:
        return Verdict(False, reason=str(e))
    if soc.k != 1:
        return Verdict(False, reason="socle is not simple")
    t = _scan_table(A)
    P = sylow_indices(t, t.all, p, seed)
    PS = t.to_group(t.closure(list(t.generators_of(P))
                              + list(t.index_of(soc.socle.group.generators))))
    premise = divsyl_check(PS, p, "full", seed).satisfies
    concl = divsyl_check(A, p, "full", seed).satisfies
    return Verdict(True, (not premise) or concl,
                   details={"PS_order": PS.order, "premise": premise, "conclusion": concl})


@dataclass
class ConjectureReport:
    simple: str
    p: int
    premise: bool
    entries: list[dict]

    @property
    def all_satisfy(self) -> bool:
        return all(e["satisfies"] for e in self.entries)


def overgroups_between(S: PermGroup, A: PermGroup) -> list[PermGroup]:
    """Every ``L`` with ``S <= L <= A``, for ``S`` normal in ``A``."""
    Q, proj = quotient_group(A, S)
    tq = _scan_table(Q)
    # a lift in A of every element of Q, by a search over A's generators
    lift = {0: Permutation.identity(A.degree)}
    gq = [int(x) for x in tq.index_of([proj(g) for g in A.generators])]
    queue = [0]
    while queue:
        q = queue.pop(0)
        for g, x in zip(A.generators, gq):
            r = int(tq.mul(q, x))
            if r not in lift:
                lift[r] = lift[q] * g
                queue.append(r)
    out = []
    seen = set()
    for c in subgroup_classes(Q):
        for U in sylow_orbit(tq, c.indices):
            key = subgroup_key(U)
            if key in seen:
                continue
            seen.add(key)
            gens = list(S.generators) + [lift[int(u)] for u in tq.generators_of(U)]
            out.append(PermGroup(A.degree, gens))
    out.sort(key=lambda L: (L.order, L.key()))
    return out


def conjecture_scan(S: PermGroup, p: int, seed: int = 0) -> ConjectureReport:
    """DivSyl(p) for every group between ``S`` and its automorphism overgroup."""
    A = aut_overgroup(S)
    name = S.name or "S"
    premise = divsyl_check(S, p, "full", seed).satisfies
    entries = []
    for L in overgroups_between(S, A):
        mode = "full" if L.order <= LATTICE_BOUND else "sampled"
        rep = divsyl_check(L, p, mode, seed)
        entries.append({"order": L.order, "index": L.order // S.order, "nu_p": rep.nu_p,
                        "satisfies": rep.satisfies, "mode": mode,
                        "nu_values": sorted({c.nu_p for c in rep.classes})})
    return ConjectureReport(name, p, premise, entries)


PSL2_QS = (4, 5, 7, 8, 9)


def psl2_table(qs=PSL2_QS, seed: int = 0) -> list[dict]:
    """Full DivSyl verdicts for ``psl2(q)`` at the defining characteristic."""
    rows = []
    for q in qs:
        G = make(f"psl2({q})")
        p = p_partition(q, next(d for d in range(2, q + 1) if q % d == 0)).p
        rep = divsyl_check(G, p, "full", seed)
        viol = sorted({(v.order, v.nu_p) for v in rep.violations})
        rows.append({"q": q, "p": p, "order": G.order, "nu_p": rep.nu_p,
                     "satisfies": rep.satisfies,
                     "violations": [{"order": o, "nu_p": n} for o, n in viol]})
    return rows


def almost_simple_census(groups, seed: int = 0) -> list[dict]:
    """DivSyl(p) for every prime ``p`` dividing each almost simple group given.

    One row per group, listing the primes that pass and those that fail, plus
    whether the group passes at every prime.
    """
    rows = []
    for A in groups:
        try:
            soc = socle_analysis(A)
        except Inapplicable:
            continue
        if soc.k != 1:
            continue
        mode = "full" if A.order <= LATTICE_BOUND else "sampled"
        good, bad = [], []
        n, d = A.order, 2
        while n > 1:
            if n % d == 0:
                rep = divsyl_check(A, d, mode, seed)
                (good if rep.satisfies else bad).append(d)
                while n % d == 0:
                    n //= d
            d += 1
        rows.append({"group": A.name or f"order {A.order}", "order": A.order,
                     "socle_order": soc.socle.order, "mode": mode,
                     "satisfied": good, "violated": bad, "all_primes": not bad})
    return rows
