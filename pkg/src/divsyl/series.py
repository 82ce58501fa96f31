"""Chief, composition and (rc)-series, sections and induced automorphisms."""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .group import (NotNormalError, PermGroup, SubgroupHandle, TooLargeError, _scan_table,
                    quotient_group)
from .perm import Permutation
from .sylow import _is_p_power, sylow_indices
from .table import subgroup_key

SECTION_BOUND = 10_000


# -- table helpers ---------------------------------------------------------------

def _pick(cands: list[np.ndarray], rng: random.Random | None) -> np.ndarray:
    """Smallest candidates first; ties broken by key, or at random."""
    low = min(len(c) for c in cands)
    tied = sorted({subgroup_key(c): c for c in cands if len(c) == low}.items())
    if rng is None:
        return tied[0][1]
    return tied[rng.randrange(len(tied))][1]


def _minimal_normal_above(t, X, floor, rng=None) -> np.ndarray:
    """A minimal normal subgroup of ``X`` properly containing ``floor``."""
    fm = t.mask(floor)
    within = None if len(X) == t.N else X
    cands = []
    for cls in t.conjugacy_classes(within):
        x = int(cls[0])
        if not fm[x]:
            cands.append(t.normal_closure([x], within=within, start=floor))
    return _pick(cands, rng)


def _normal_subgroups(t, X, floor) -> list[np.ndarray]:
    """All normal subgroups of ``X`` containing ``floor``."""
    within = None if len(X) == t.N else X
    fm = t.mask(floor)
    found = {subgroup_key(floor): floor}
    for cls in t.conjugacy_classes(within):
        x = int(cls[0])
        if not fm[x]:
            M = t.normal_closure([x], within=within, start=floor)
            found.setdefault(subgroup_key(M), M)
    # joins of normal subgroups are normal
    atoms = list(found.values())
    frontier = list(atoms)
    while frontier:
        new = []
        for A in frontier:
            am = t.mask(A)
            for B in atoms:
                if am[B].all():
                    continue
                J = t.closure(list(t.generators_of(B)), start=A)
                k = subgroup_key(J)
                if k not in found:
                    found[k] = J
                    new.append(J)
        frontier = new
    return list(found.values())


def _maximal_normal_below(t, X, floor, rng=None) -> np.ndarray:
    subs = [N for N in _normal_subgroups(t, X, floor) if len(N) < len(X)]
    masks = [t.mask(N) for N in subs]
    maximal = [N for i, N in enumerate(subs)
               if not any(len(M) > len(N) and masks[j][N].all() for j, M in enumerate(subs))]
    tied = sorted((subgroup_key(N), N) for N in maximal)
    if rng is None:
        return tied[0][1]
    return tied[rng.randrange(len(tied))][1]


def _is_solvable_idx(t, H) -> bool:
    while len(H) > 1:
        D = t.derived(H)
        if len(D) == len(H):
            return False
        H = D
    return True


# -- series ---------------------------------------------------------------------------

@dataclass
class SectionSeries:
    group: PermGroup
    chain: list[SubgroupHandle]
    kind: str
    normal_in_G: list[bool]
    normal_in_next: list[bool]
    indices: list[np.ndarray] = field(repr=False, default_factory=list)

    @property
    def orders(self) -> list[int]:
        return [H.order for H in self.chain]

    @property
    def section_orders(self) -> list[int]:
        o = self.orders
        return [b // a for a, b in zip(o, o[1:])]

    def sections(self) -> list["Section"]:
        return [section(self.chain[i + 1], self.chain[i]) for i in range(len(self.chain) - 1)]

    def __len__(self) -> int:
        return len(self.chain) - 1


def _series(G: PermGroup, t, idx: list[np.ndarray], kind: str) -> SectionSeries:
    nG, nN = [], []
    for i, H in enumerate(idx):
        hg = t.generators_of(H)
        nG.append(t.is_normal(H, hgens=hg))
        nN.append(True if i + 1 == len(idx) else t.is_normal(H, within=idx[i + 1], hgens=hg))
    chain = [SubgroupHandle(G, t.to_group(H)) for H in idx]
    return SectionSeries(G, chain, kind, nG, nN, idx)


def _chief_idx(t, rng=None) -> list[np.ndarray]:
    cur = np.zeros(1, dtype=np.int64)
    out = [cur]
    while len(cur) < t.N:
        cur = _minimal_normal_above(t, t.all, cur, rng)
        out.append(cur)
    return out


def chief_series(G: PermGroup, seed: int | None = None) -> SectionSeries:
    """Each term is a minimal normal subgroup of ``G`` over the previous one."""
    t = _scan_table(G)
    rng = None if seed is None else random.Random(seed)
    return _series(G, t, _chief_idx(t, rng), "chief")


def composition_series(G: PermGroup, seed: int | None = None) -> SectionSeries:
    """Top-down through maximal normal subgroups; ``seed`` randomizes the choices."""
    t = _scan_table(G)
    rng = None if seed is None else random.Random(seed)
    triv = np.zeros(1, dtype=np.int64)
    cur = t.all
    out = [cur]
    while len(cur) > 1:
        cur = _maximal_normal_below(t, cur, triv, rng)
        out.append(cur)
    return _series(G, t, out[::-1], "composition")


def rc_series(G: PermGroup, seed: int | None = None) -> SectionSeries:
    """A composition series through every term of a chief series.

    Each chief factor ``B < N`` is refined from the bottom by minimal normal
    subgroups of ``N``; the factor is a product of isomorphic simple groups,
    so every step is simple.
    """
    t = _scan_table(G)
    rng = None if seed is None else random.Random(seed)
    chief = _chief_idx(t, rng)
    out = [chief[0]]
    for B, N in zip(chief, chief[1:]):
        cur = B
        while len(cur) < len(N):
            cur = _minimal_normal_above(t, N, cur, rng)
            out.append(cur)
    return _series(G, t, out, "rc")


def minimal_normal_subgroups(G: PermGroup) -> list[SubgroupHandle]:
    """Minimal elements among normal closures of single elements."""
    t = _scan_table(G)
    closures = {}
    for cls in t.conjugacy_classes()[1:]:
        M = t.normal_closure([int(cls[0])])
        closures.setdefault(subgroup_key(M), M)
    subs = sorted(closures.values(), key=lambda M: (len(M), subgroup_key(M)))
    out = []
    for M in subs:
        if any(t.mask(M)[K].all() for K in out):
            continue
        out.append(M)
    return [SubgroupHandle(G, t.to_group(M)) for M in out]


def solvable_radical(G: PermGroup) -> SubgroupHandle:
    """Join of the normal closures that are solvable."""
    t = _scan_table(G)
    R = np.zeros(1, dtype=np.int64)
    rm = t.mask(R)
    for cls in t.conjugacy_classes()[1:]:
        x = int(cls[0])
        if rm[x]:
            continue
        M = t.normal_closure([x])
        if _is_solvable_idx(t, M):
            R = t.closure(list(t.generators_of(M)), start=R)
            rm = t.mask(R)
    return SubgroupHandle(G, t.to_group(R))


# -- sections and induced automorphisms ----------------------------------------

@dataclass
class Section:
    upper: SubgroupHandle
    lower: SubgroupHandle

    @property
    def order(self) -> int:
        return self.upper.order // self.lower.order

    @cached_property
    def quotient(self) -> PermGroup:
        """``A/B`` as the right-coset action of ``A`` on ``B``."""
        return quotient_group(self.upper.group, self.lower.group)[0]


def section(A: SubgroupHandle, B: SubgroupHandle) -> Section:
    if not B.group.is_normal_in(A.group):
        raise NotNormalError("lower term is not normal in the upper one")
    return Section(A, B)


def fingerprint(Q: PermGroup) -> tuple:
    """(order, abelian flag, element-order histogram)."""
    t = _scan_table(Q)
    return (Q.order, Q.is_abelian(), t.exponent_histogram(t.all))


def section_fingerprint(G: PermGroup, sec: Section) -> tuple:
    """``fingerprint(A/B)`` computed inside ``G`` without building the quotient."""
    t = _scan_table(G)
    A = t.subgroup_indices(sec.upper.group)
    B = t.subgroup_indices(sec.lower.group)
    bm = t.mask(B)
    abelian = bool(bm[t.derived(A)].all())
    # order of Ba: least k with a^k in B
    orders = np.zeros(len(A), dtype=np.int64)
    cur = A.copy()
    k = 1
    todo = np.ones(len(A), dtype=bool)
    while todo.any():
        hit = todo & bm[cur]
        orders[hit] = k
        todo &= ~hit
        cur = t.mul(cur, A)
        k += 1
    vals, counts = np.unique(orders, return_counts=True)
    hist = tuple(zip(vals.tolist(), (counts // len(B)).tolist()))
    return (len(A) // len(B), abelian, hist)


def coset_labels(t, A, B) -> tuple[np.ndarray, np.ndarray]:
    """Label every element of ``A`` by its right coset ``Ba``.

    Returns ``(label, reps)`` with ``label`` over the whole table (-1 outside
    ``A``) and ``reps[j]`` an element of coset ``j``.
    """
    A = np.asarray(A, dtype=np.int64)
    B = np.asarray(B, dtype=np.int64)
    label = np.full(t.N, -1, dtype=np.int64)
    label[B] = 0
    reps = [0]
    agens = t.generators_of(A)
    k = 0
    while k < len(reps):
        r = reps[k]
        k += 1
        for a in agens:
            c = int(t.mul(r, a))
            if label[c] < 0:
                label[t.mul(B, c)] = len(reps)
                reps.append(c)
    return label, np.array(reps, dtype=np.int64)


@dataclass
class InducedAutGroup:
    section: Section
    normalizer: SubgroupHandle
    kernel: SubgroupHandle
    image: PermGroup
    inner: PermGroup
    labels: np.ndarray = field(repr=False)
    reps: np.ndarray = field(repr=False)
    table: object = field(repr=False)

    def act(self, x) -> Permutation:
        """The coset permutation induced by ``x`` in the normalizer."""
        t = self.table
        i = int(t.index_of([x])[0])
        return Permutation._trusted(self.labels[t.conj(self.reps, i)].tolist())


def induced_aut(G: PermGroup, sec: Section) -> InducedAutGroup:
    """``Aut_G(A/B)`` acting on the cosets of ``B`` in ``A`` by ``Ba -> B a^x``."""
    if sec.order > SECTION_BOUND:
        raise TooLargeError(f"section of order {sec.order} above {SECTION_BOUND}")
    t = _scan_table(G)
    A = t.subgroup_indices(sec.upper.group)
    B = t.subgroup_indices(sec.lower.group)
    N = t.normalizer(t.normalizer(t.all, t.generators_of(A)), t.generators_of(B))
    labels, reps = coset_labels(t, A, B)
    # x centralizes A/B iff it fixes the coset of each generator of A
    agens = t.generators_of(A)
    ok = np.ones(len(N), dtype=bool)
    for a in agens:
        ok &= labels[t.conj(a, N)] == labels[a]
    C = N[ok]

    def induced(i: int) -> Permutation:
        return Permutation._trusted(labels[t.conj(reps, i)].tolist())

    k = len(reps)
    image = PermGroup(k, [induced(int(x)) for x in t.generators_of(N)])
    inner = PermGroup(k, [induced(int(x)) for x in agens])
    return InducedAutGroup(sec, SubgroupHandle(G, t.to_group(N)), SubgroupHandle(G, t.to_group(C)),
                           image, inner, labels, reps, t)


def section_centralizer_scan(G: PermGroup, sec: Section) -> np.ndarray:
    """``C_G(A/B)`` straight from the definition: all coset reps, all elements."""
    t = _scan_table(G)
    A = t.subgroup_indices(sec.upper.group)
    B = t.subgroup_indices(sec.lower.group)
    am, bm = t.mask(A), t.mask(B)
    keep = []
    for x in range(t.N):
        if not am[t.conj(A, x)].all() or not bm[t.conj(B, x)].all():
            continue
        # x^-1 a x in B a  <=>  x^-1 a x a^-1 in B
        if bm[t.mul(t.conj(A, x), t.inv[A])].all():
            keep.append(x)
    return np.array(keep, dtype=np.int64)


# -- series comparison ---------------------------------------------------------------

@dataclass
class SeriesMatching:
    sigma: list[int] | None
    aut_orders_1: list[int]
    aut_orders_2: list[int]
    fingerprints_1: list[tuple]
    fingerprints_2: list[tuple]
    multisets_equal: bool
    counterexample: str | None = None

    @property
    def found(self) -> bool:
        return self.sigma is not None


def _section_data(G: PermGroup, s: SectionSeries):
    fps, auts = [], []
    for sec in s.sections():
        fps.append(section_fingerprint(G, sec))
        auts.append(induced_aut(G, sec).image.order)
    return fps, auts


def compare_series(G: PermGroup, s1: SectionSeries, s2: SectionSeries) -> SeriesMatching:
    """Pair sections of equal fingerprint so that ``|Aut_G|`` orders divide."""
    if len(s1) != len(s2):
        raise ValueError(f"series lengths differ: {len(s1)} vs {len(s2)}")
    f1, a1 = _section_data(G, s1)
    f2, a2 = _section_data(G, s2)
    n = len(f1)
    rows, cols = [], []
    for i in range(n):
        for j in range(n):
            if f1[i] == f2[j] and a2[j] % a1[i] == 0:
                rows.append(i)
                cols.append(j)
    # scipy is slow to import and only needed here
    from scipy.sparse import csr_matrix
    from scipy.sparse.csgraph import maximum_bipartite_matching

    graph = csr_matrix((np.ones(len(rows)), (rows, cols)), shape=(n, n))
    match = maximum_bipartite_matching(graph, perm_type="column") if n else np.zeros(0, int)
    both_rc = s1.kind == "rc" and s2.kind == "rc"
    same = Counter(a1) == Counter(a2)
    if n and (match < 0).any():
        i = int(np.flatnonzero(match < 0)[0])
        return SeriesMatching(None, a1, a2, f1, f2, same,
                              f"section {i} (order {f1[i][0]}, |Aut| {a1[i]}) has no partner")
    if both_rc and not same:
        return SeriesMatching(None, a1, a2, f1, f2, same, "induced automorphism orders differ")
    return SeriesMatching([int(j) for j in match], a1, a2, f1, f2, same)


# -- lemma on p-by-p'-by-p groups -------------------------------------------------------

@dataclass
class Lemma6Verdict:
    applicable: bool
    reason: str = ""
    containment: bool | None = None
    image_identity: bool | None = None

    @property
    def holds(self) -> bool | None:
        if not self.applicable:
            return None
        return bool(self.containment and self.image_identity)


def lemma6_check(G: PermGroup, H, K, Q, p: int) -> Lemma6Verdict:
    """``N_K(P) <= N_K(Q)`` and ``N_K(Q)/H = C_{K/H}(Q/H)`` for a Sylow ``P >= Q``."""
    t = _scan_table(G)
    idx = {}
    for name, X in (("H", H), ("K", K), ("Q", Q)):
        Xg = X.group if isinstance(X, SubgroupHandle) else X
        if any(g not in G for g in Xg.generators):
            return Lemma6Verdict(False, f"{name} is not a subgroup of G")
        idx[name] = t.subgroup_indices(Xg)
    Hi, Ki, Qi = idx["H"], idx["K"], idx["Q"]
    hm, km, qm = t.mask(Hi), t.mask(Ki), t.mask(Qi)
    if not t.is_normal(Hi) or not t.is_normal(Ki):
        return Lemma6Verdict(False, "H and K must be normal in G")
    if not km[Hi].all():
        return Lemma6Verdict(False, "H is not contained in K")
    if not _is_p_power(len(Hi), p):
        return Lemma6Verdict(False, "H is not a p-group")
    if (len(Ki) // len(Hi)) % p == 0:
        return Lemma6Verdict(False, "K/H is not a p'-group")
    if not _is_p_power(t.N // len(Ki), p):
        return Lemma6Verdict(False, "G/K is not a p-group")
    if not _is_p_power(len(Qi), p) or not qm[Hi].all():
        return Lemma6Verdict(False, "Q is not a p-subgroup containing H")
    P = sylow_indices(t, t.all, p, start=Qi)
    NKP = t.normalizer(Ki, t.generators_of(P))
    NKQ = t.normalizer(Ki, t.generators_of(Qi))
    containment = bool(t.mask(NKQ)[NKP].all())
    # preimage of C_{K/H}(Q/H): k with [k, q] in H for every generator q of Q
    ok = np.ones(len(Ki), dtype=bool)
    for q in t.generators_of(Qi):
        ok &= hm[t.commutator_in(Ki, q)]
    image = bool(np.array_equal(Ki[ok], NKQ))
    return Lemma6Verdict(True, "", containment, image)
