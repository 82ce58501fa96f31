"""Subgroup classes, the DivSyl verdict and a brute-force subgroup oracle."""

from __future__ import annotations

import json
import random
import time
from dataclasses import asdict, dataclass, field

import numpy as np

from .group import GroupError, PermGroup, SubgroupHandle, TooLargeError, _scan_table
from .sylow import nu_in, p_partition, sylow_orbit, sylow_indices
from .table import subgroup_key

LATTICE_BOUND = 10_000
BRUTE_BOUND = 1000
SCHEMA_VERSION = 1


@dataclass
class SubgroupClass:
    representative: SubgroupHandle
    class_size: int
    canonical_key: bytes
    indices: np.ndarray = field(repr=False)

    @property
    def order(self) -> int:
        return len(self.indices)


@dataclass
class SubgroupClassTable:
    parent: PermGroup
    classes: list[SubgroupClass]

    def __len__(self) -> int:
        return len(self.classes)

    def __iter__(self):
        return iter(self.classes)

    @property
    def orders(self) -> list[int]:
        return [c.order for c in self.classes]

    @property
    def total(self) -> int:
        return sum(c.class_size for c in self.classes)


def _cyclic_orbit_reps(t, cand: np.ndarray, member: np.ndarray, reps: np.ndarray,
                       ngens) -> np.ndarray:
    """One cyclic-subgroup id per orbit of the normalizer on ``cand``."""
    if not len(cand) or not len(ngens):
        return cand
    pos = {int(c): i for i, c in enumerate(cand)}
    parent = list(range(len(cand)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for g in ngens:
        img = member[t.conj(reps[cand], int(g))]
        for i, j in enumerate(img.tolist()):
            a, b = find(i), find(pos[j])
            if a != b:
                parent[max(a, b)] = min(a, b)
    return cand[[i for i in range(len(cand)) if find(i) == i]]


def _lattice(t, p: int | None = None) -> list[tuple[np.ndarray, int, bytes]]:
    """Conjugacy classes of subgroups (of p-subgroups when ``p`` is given).

    Every subgroup ``H > 1`` equals ``<M, z>`` for a maximal subgroup ``M``
    and a prime-power element ``z`` of ``H`` outside ``M`` with ``z^q`` in
    ``M``: take ``z`` of least order among prime-power elements missing
    ``M``.  So extending each class by such cyclic subgroups, one per
    normalizer orbit, reaches everything.  For p-subgroups ``M`` is normal
    in ``H``, so only ``z`` normalizing ``M`` are needed.
    """
    reps, primes, pows, member = t.cyclic_prime_power()
    if p is not None:
        keep = primes == p
        reps, pows = reps[keep], pows[keep]
        remap = np.full(len(keep), -1, dtype=np.int64)
        remap[np.flatnonzero(keep)] = np.arange(int(keep.sum()))
        member = np.where(member >= 0, remap[np.maximum(member, 0)], -1)
    trivial = np.zeros(1, dtype=np.int64)
    known: dict[bytes, int] = {subgroup_key(trivial): 0}
    classes: list[tuple[np.ndarray, int, bytes]] = [(trivial, 1, subgroup_key(trivial))]
    k = 0
    while k < len(classes):
        U = classes[k][0]
        k += 1
        um = t.mask(U)
        ugens = t.generators_of(U)
        N = t.normalizer(t.all, ugens) if len(U) > 1 else t.all
        ok = ~um[reps] & um[pows]
        if p is not None:
            ok &= t.mask(N)[reps]
        cand = np.flatnonzero(ok)
        ngens = t.generators_of(N) if len(N) < t.N else t.gens
        for j in _cyclic_orbit_reps(t, cand, member, reps, ngens):
            H = t.closure(list(ugens) + [int(reps[j])], start=U)
            key = subgroup_key(H)
            if key in known:
                continue
            conj = sylow_orbit(t, H)
            keys = [subgroup_key(C) for C in conj]
            for kk in keys:
                known[kk] = len(classes)
            best = min(range(len(keys)), key=keys.__getitem__)
            classes.append((conj[best], len(conj), keys[best]))
    classes.sort(key=lambda c: (len(c[0]), c[2]))
    return classes


def _table_for(G: PermGroup, bound: int):
    if G.order > bound:
        raise TooLargeError(f"group of order {G.order} above the lattice bound {bound}")
    return G.table()


def _as_table(G: PermGroup, t, raw) -> SubgroupClassTable:
    out = []
    for idx, size, key in raw:
        out.append(SubgroupClass(SubgroupHandle(G, t.to_group(idx)), size, key, idx))
    return SubgroupClassTable(G, out)


def subgroup_classes(G: PermGroup) -> SubgroupClassTable:
    """All conjugacy classes of subgroups, ordered by (order, canonical key)."""
    t = _table_for(G, LATTICE_BOUND)
    raw = G._cache.get("lattice")
    if raw is None:
        raw = G._cache["lattice"] = _lattice(t)
    return _as_table(G, t, raw)


def p_subgroup_classes(G: PermGroup, p: int) -> SubgroupClassTable:
    """Conjugacy classes of p-subgroups, the trivial one included."""
    p_partition(1, p)
    t = _scan_table(G)
    if G.order > LATTICE_BOUND and p_partition(G.order, p).p_part > 2 ** 8:
        raise TooLargeError("p-subgroup walk limited to |G|_p <= 256 above the lattice bound")
    return _as_table(G, t, _lattice(t, p))


# -- DivSyl ---------------------------------------------------------------------

@dataclass
class ClassRecord:
    order: int
    index: int
    nu_p: int
    divides: bool
    witness_generators: list[str]
    class_size: int | None = None


@dataclass
class DivSylReport:
    group: str
    order: int
    prime: int
    nu_p: int
    classes: list[ClassRecord]
    violations: list[ClassRecord]
    mode: str
    seed: int
    elapsed_ms: int
    schema_version: int = SCHEMA_VERSION

    @property
    def satisfies(self) -> bool:
        return not self.violations

    def to_dict(self) -> dict:
        return {
            "schema_version": self.schema_version,
            "group": self.group,
            "order": self.order,
            "prime": self.prime,
            "nu_p": self.nu_p,
            "classes": [asdict(c) for c in self.classes],
            "violations": [asdict(c) for c in self.violations],
            "mode": self.mode,
            "seed": self.seed,
            "elapsed_ms": self.elapsed_ms,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=False) + "\n"

    @classmethod
    def from_dict(cls, d: dict) -> "DivSylReport":
        return cls(
            group=d["group"], order=d["order"], prime=d["prime"], nu_p=d["nu_p"],
            classes=[ClassRecord(**c) for c in d["classes"]],
            violations=[ClassRecord(**c) for c in d["violations"]],
            mode=d["mode"], seed=d["seed"], elapsed_ms=d["elapsed_ms"],
            schema_version=d.get("schema_version", SCHEMA_VERSION),
        )

    @classmethod
    def from_json(cls, text: str) -> "DivSylReport":
        return cls.from_dict(json.loads(text))


class ConjugationInconsistency(GroupError):
    pass


def _sampled_subgroups(G: PermGroup, t, seed: int, count: int) -> list[np.ndarray]:
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        x, y = G.random_element(rng), G.random_element(rng)
        ix, iy = (int(i) for i in t.index_of([x, y]))
        out.append(t.closure([ix]))
        out.append(t.closure([ix, iy]))
    for pt in range(G.degree):
        out.append(np.flatnonzero(t.E[:, pt] == pt))
    return out


def divsyl_check(G: PermGroup, p: int, mode: str = "full", seed: int = 0,
                 count: int = 64) -> DivSylReport:
    """Check that the Sylow p-number of each subgroup divides that of ``G``.

    ``full`` runs over all subgroup classes.  ``sampled`` runs over
    ``<x>`` and ``<x, y>`` for ``count`` seeded random pairs plus all point
    stabilizers, and says so in the report.
    """
    start = time.perf_counter()
    p_partition(1, p)
    if mode == "full":
        t = _table_for(G, LATTICE_BOUND)
        lat = subgroup_classes(G)
        items = [(c.indices, c.class_size) for c in lat.classes]
    elif mode == "sampled":
        t = _scan_table(G)
        seen: dict[bytes, np.ndarray] = {}
        for H in _sampled_subgroups(G, t, seed, count):
            seen.setdefault(subgroup_key(H), H)
        items = [(seen[k], None) for k in sorted(seen, key=lambda k: (len(k), k))]
    else:
        raise ValueError(f"unknown mode {mode!r}")
    P = sylow_indices(t, t.all, p, seed)
    nu_G = len(sylow_orbit(t, P))
    rng = random.Random(seed)
    records = []
    for H, size in items:
        nu_H = nu_in(t, H, p, seed)
        for _ in range(3):
            g = int(rng.randrange(t.N))
            if nu_in(t, t.conj_subgroup(H, g), p, seed) != nu_H:
                raise ConjugationInconsistency("Sylow number differs between conjugate subgroups")
        gens = [str(x) for x in t.perms(t.generators_of(H))] or ["()"]
        records.append(ClassRecord(len(H), t.N // len(H), nu_H, nu_G % nu_H == 0, gens, size))
    elapsed = int((time.perf_counter() - start) * 1000)
    return DivSylReport(G.name or f"degree-{G.degree} group", G.order, p, nu_G, records,
                        [r for r in records if not r.divides], mode, seed, elapsed)


# -- oracle -----------------------------------------------------------------------

def _brute_elements(G: PermGroup) -> list[tuple]:
    ident = tuple(range(G.degree))
    seen = {ident}
    elems = [ident]
    gens = [tuple(g) for g in G.generators]
    k = 0
    while k < len(elems):
        x = elems[k]
        k += 1
        for g in gens:
            y = tuple(g[i] for i in x)
            if y not in seen:
                seen.add(y)
                elems.append(y)
    return sorted(elems)


def brute_subgroups(G: PermGroup) -> list[frozenset]:
    """Every subgroup of ``G`` as a frozenset of image tuples.

    Joins of cyclic subgroups taken to a fixpoint over a full
    multiplication table; meant for cross-checking only.
    """
    if G.order > BRUTE_BOUND:
        raise TooLargeError(f"oracle limited to order {BRUTE_BOUND}")
    if "brute" not in G._cache:
        G._cache["brute"] = _brute_subgroups(G)
    return G._cache["brute"]


def _brute_subgroups(G: PermGroup) -> list[frozenset]:
    elems = _brute_elements(G)
    n = len(elems)
    where = {e: i for i, e in enumerate(elems)}
    arr = np.array(elems, dtype=np.int64).reshape(n, G.degree)
    # mult[a, b] = index of a*b, where (a*b)(i) = b(a(i))
    mult = np.empty((n, n), dtype=np.int64)
    for a in range(n):
        rows = arr[:, arr[a]] if G.degree else arr
        mult[a] = [where[tuple(r)] for r in rows.tolist()]

    def close(gens: list[int], base: np.ndarray | None = None) -> np.ndarray:
        g = np.array(sorted(set(gens)), dtype=np.int64)
        if base is None:
            m = np.zeros(n, dtype=bool)
            m[0] = True
            front = np.array([0])
        else:
            # elements of the old subgroup times its own generators stay inside
            m = base.copy()
            front = np.flatnonzero(m)
            g_new = g[~m[g]]
            hit = np.zeros(n, dtype=bool)
            hit[mult[front][:, g_new]] = True
            front = np.flatnonzero(hit & ~m)
            m |= hit
        while len(front) and len(g):
            hit = np.zeros(n, dtype=bool)
            hit[mult[front][:, g]] = True
            front = np.flatnonzero(hit & ~m)
            m |= hit
        return m

    # element orders, to keep cyclic subgroups of prime-power order only;
    # every subgroup is generated by its prime-power elements
    order = np.ones(n, dtype=np.int64)
    for x in range(1, n):
        y, k = x, 1
        while y:
            y = mult[y, x]
            k += 1
        order[x] = k

    def prime_power(k: int) -> bool:
        q = next(d for d in range(2, k + 1) if k % d == 0)
        while k % q == 0:
            k //= q
        return k == 1

    cyc: dict[bytes, tuple[np.ndarray, int]] = {}
    for x in range(1, n):
        if prime_power(int(order[x])):
            m = close([x])
            cyc.setdefault(m.tobytes(), (m, x))
    triv = np.zeros(n, dtype=bool)
    triv[0] = True
    subs: dict[bytes, tuple[np.ndarray, list[int]]] = {triv.tobytes(): (triv, [])}
    frontier = []
    for key, (m, x) in cyc.items():
        subs[key] = (m, [x])
        frontier.append(key)
    while frontier:
        new = []
        for key in frontier:
            m, gens = subs[key]
            for cm, x in cyc.values():
                if m[x]:
                    continue
                j = close(gens + [x], m)
                jk = j.tobytes()
                if jk not in subs:
                    subs[jk] = (j, gens + [x])
                    new.append(jk)
        frontier = new
    return [frozenset(elems[i] for i in np.flatnonzero(m)) for m, _ in subs.values()]


def brute_sylow_count(G: PermGroup, p: int) -> int:
    target = p_partition(G.order, p).p_part
    return sum(1 for H in brute_subgroups(G) if len(H) == target)
