"""Enumerated element tables for desk-scale groups.

Every element of the group gets an integer index (lexicographic order of the
image tuples, so the identity is index 0).  Subgroups are sorted ``int64``
index arrays.  An element is determined by the images of the base points,
which gives a cheap integer key for vectorised products.
"""

from __future__ import annotations

import numpy as np

from .group import SCAN_BOUND, PermGroup, TooLargeError
from .perm import Permutation


def subgroup_key(idx: np.ndarray) -> bytes:
    """Hashable key of a sorted index array; byte order equals element order."""
    return np.asarray(idx, dtype=">i4").tobytes()


class ElementTable:
    def __init__(self, group: PermGroup):
        if group.order > SCAN_BOUND:
            raise TooLargeError(f"group of order {group.order} too large for an element table")
        self.group = group
        n = group.degree
        dtype = np.uint8 if n <= 256 else np.uint16
        levels = [L for L in group._levels if len(L.orbit) > 1]
        E = np.arange(n, dtype=dtype)[None, :]
        for L in reversed(levels):
            us = np.array([L.trans[b][0] for b in L.orbit], dtype=dtype)
            # x * u == u[x]
            E = us[np.arange(len(us))[:, None, None], E[None, :, :]].reshape(-1, n)
        if n:
            E = E[np.lexsort(E.T[::-1])]
        self.E = np.ascontiguousarray(E)
        self.N = len(E)
        self.n = n
        self.base = np.array(group.base or [0][:n], dtype=np.int64)
        self._radix = n ** np.arange(len(self.base), dtype=np.int64) if n else np.zeros(0, np.int64)
        keys = self._encode(self.E[:, self.base]) if n else np.zeros(1, np.int64)
        self._korder = np.argsort(keys, kind="stable")
        self._ksorted = keys[self._korder]
        self.inv = self._lookup(np.argsort(self.E, axis=1)[:, self.base]) if n else np.zeros(1, np.int64)
        self.gens = self.index_of(group.generators)
        self.all = np.arange(self.N, dtype=np.int64)
        self._orders = None

    # -- index plumbing --------------------------------------------------

    def _encode(self, rows: np.ndarray) -> np.ndarray:
        return rows.astype(np.int64) @ self._radix

    def _lookup(self, base_rows: np.ndarray) -> np.ndarray:
        if not self.n:
            return np.zeros(base_rows.shape[:-1], dtype=np.int64)
        keys = self._encode(base_rows)
        pos = np.searchsorted(self._ksorted, keys)
        return self._korder[pos]

    def index_of(self, perms) -> np.ndarray:
        perms = list(perms)
        if not perms:
            return np.zeros(0, dtype=np.int64)
        rows = np.array([tuple(p) for p in perms], dtype=np.int64)
        idx = self._lookup(rows[:, self.base])
        if not np.array_equal(self.E[idx], rows):
            raise ValueError("permutation is not an element of the group")
        return idx

    def perm(self, i: int) -> Permutation:
        return Permutation._trusted(self.E[i].tolist())

    def perms(self, idx) -> list[Permutation]:
        return [Permutation._trusted(r) for r in self.E[np.asarray(idx, dtype=np.int64)].tolist()]

    # -- arithmetic --------------------------------------------------------

    def mul(self, a, b) -> np.ndarray:
        """Index of ``a * b`` (broadcasting)."""
        a, b = np.broadcast_arrays(np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64))
        if not self.n:
            return np.zeros(a.shape, dtype=np.int64)
        xb = self.E[a][..., self.base]
        return self._lookup(self.E[b[..., None], xb])

    def conj(self, a, g) -> np.ndarray:
        """Index of ``g^-1 a g``."""
        g = np.asarray(g, dtype=np.int64)
        return self.mul(self.mul(self.inv[g], a), g)

    def power(self, a, k: int) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        out = np.zeros_like(a)
        base = a
        while k:
            if k & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            k >>= 1
        return out

    @property
    def orders(self) -> np.ndarray:
        if self._orders is None:
            o = np.zeros(self.N, dtype=np.int64)
            o[0] = 1
            cur = self.all.copy()
            k = 1
            todo = self.all[1:]
            cur = cur[1:]
            while len(todo):
                k += 1
                cur = self.mul(cur, todo)
                hit = cur == 0
                o[todo[hit]] = k
                todo, cur = todo[~hit], cur[~hit]
            self._orders = o
        return self._orders

    # -- subgroups -----------------------------------------------------------

    def mask(self, idx) -> np.ndarray:
        m = np.zeros(self.N, dtype=bool)
        m[np.asarray(idx, dtype=np.int64)] = True
        return m

    def closure(self, gens, start=None) -> np.ndarray:
        """Sorted indices of the subgroup generated by ``gens`` (and ``start``)."""
        gens = np.unique(np.asarray(gens, dtype=np.int64))
        gens = gens[gens != 0]
        m = np.zeros(self.N, dtype=bool)
        m[0] = True
        if start is not None:
            m[start] = True
            front = np.asarray(start, dtype=np.int64)
            # only elements outside the old subgroup can spawn new ones
            extra = gens[~m[gens]]
            if not len(extra):
                return np.flatnonzero(m)
            front = np.unique(self.mul(front[:, None], extra[None, :]).ravel())
            front = front[~m[front]]
            m[front] = True
        else:
            front = np.zeros(1, dtype=np.int64)
        while len(front) and len(gens):
            nxt = np.unique(self.mul(front[:, None], gens[None, :]).ravel())
            nxt = nxt[~m[nxt]]
            m[nxt] = True
            front = nxt
        return np.flatnonzero(m)

    def subgroup_indices(self, H: PermGroup) -> np.ndarray:
        return self.closure(self.index_of(H.generators))

    def generators_of(self, idx) -> np.ndarray:
        """A small generating set of a subgroup given by its indices."""
        idx = np.asarray(idx, dtype=np.int64)
        if len(idx) <= 1:
            return np.zeros(0, dtype=np.int64)
        orders = self.orders[idx]
        cand = idx[np.argsort(-orders, kind="stable")]
        gens: list[int] = []
        cur = self.mask([0])
        size = 1
        for x in cand:
            if cur[x]:
                continue
            gens.append(int(x))
            sub = self.closure(gens)
            cur = self.mask(sub)
            size = len(sub)
            if size == len(idx):
                break
        return np.array(gens, dtype=np.int64)

    def to_group(self, idx, **kw) -> PermGroup:
        return PermGroup(self.n, self.perms(self.generators_of(idx)), **kw)

    def normalizer(self, within, gens) -> np.ndarray:
        """``N_within(<gens>)``; ``within`` is a subgroup index array (or None for all)."""
        within = self.all if within is None else np.asarray(within, dtype=np.int64)
        gens = np.asarray(gens, dtype=np.int64)
        H = self.closure(gens)
        hm = self.mask(H)
        ok = np.ones(len(within), dtype=bool)
        for h in gens:
            ok &= hm[self.conj(h, within)]
        return within[ok]

    def normalizer_of(self, within, H) -> np.ndarray:
        H = np.asarray(H, dtype=np.int64)
        return self.normalizer(within, self.generators_of(H))

    def centralizer(self, gens, within=None) -> np.ndarray:
        within = self.all if within is None else np.asarray(within, dtype=np.int64)
        ok = np.ones(len(within), dtype=bool)
        for h in np.asarray(gens, dtype=np.int64):
            ok &= self.conj(h, within) == h
        return within[ok]

    def conj_subgroup(self, H, g: int) -> np.ndarray:
        return np.sort(self.conj(H, g))

    def is_normal(self, H, within=None, hgens=None) -> bool:
        H = np.asarray(H, dtype=np.int64)
        hm = self.mask(H)
        wgens = self.gens if within is None else self.generators_of(within)
        hgens = self.generators_of(H) if hgens is None else hgens
        return all(hm[self.conj(hgens, g)].all() for g in wgens)

    def normal_closure(self, seeds, within=None, start=None) -> np.ndarray:
        """Normal closure of ``seeds`` (plus subgroup ``start``) in ``within``."""
        wgens = self.gens if within is None else self.generators_of(within)
        seeds = np.asarray(seeds, dtype=np.int64)
        gens = list(seeds.tolist())
        if start is not None:
            gens += self.generators_of(start).tolist()
        S = self.closure(gens)
        while True:
            sm = self.mask(S)
            sg = self.generators_of(S)
            new = [int(c) for g in wgens for c in self.conj(sg, g) if not sm[c]]
            if not new:
                return S
            S = self.closure(list(sg) + sorted(set(new)), start=S)

    def conjugacy_classes(self, within=None) -> list[np.ndarray]:
        """Conjugacy classes of ``within`` (default: the whole group), sorted by first index."""
        W = self.all if within is None else np.asarray(within, dtype=np.int64)
        wgens = self.gens if within is None else self.generators_of(W)
        label = np.full(self.N, -1, dtype=np.int64)
        out = []
        for x in W:
            if label[x] >= 0:
                continue
            orb = np.array([x], dtype=np.int64)
            label[x] = len(out)
            front = orb
            while len(front):
                nxt = np.unique(np.concatenate([self.conj(front, g) for g in wgens])) if len(wgens) else front[:0]
                nxt = nxt[label[nxt] < 0]
                label[nxt] = len(out)
                orb = np.concatenate([orb, nxt])
                front = nxt
            out.append(np.sort(orb))
        return out

    def commutator_in(self, a, b) -> np.ndarray:
        return self.mul(self.mul(self.inv[a], self.inv[b]), self.mul(a, b))

    def derived(self, H) -> np.ndarray:
        g = self.generators_of(H)
        comm = [int(self.commutator_in(a, b)) for a in g for b in g]
        return self.normal_closure(comm, within=H)

    def is_abelian(self, H) -> bool:
        g = self.generators_of(H)
        return all(int(self.mul(a, b)) == int(self.mul(b, a)) for a in g for b in g)

    def exponent_histogram(self, H) -> tuple:
        o = self.orders[np.asarray(H, dtype=np.int64)]
        vals, counts = np.unique(o, return_counts=True)
        return tuple(zip(vals.tolist(), counts.tolist()))

    def cyclic_prime_power(self):
        """Cyclic subgroups of prime-power order > 1.

        Returns ``(rep, prime, power_elem, member_of)``: the least-index
        generator of each cyclic subgroup, its prime, the index of
        ``rep**prime``, and an array mapping each prime-power element to its
        cyclic subgroup id (-1 elsewhere).
        """
        o = self.orders
        prime = np.array([_prime_of_power(int(k)) or 0 for k in range(int(o.max()) + 1)])[o]
        cand = np.flatnonzero(prime > 0)
        cid = cand.copy()
        cur = cand.copy()
        ords = o[cand]
        for j in range(2, int(o.max())):
            cur = self.mul(cur, cand)
            ok = (ords > j) & (np.gcd(ords, j) == 1)
            cid[ok] = np.minimum(cid[ok], cur[ok])
        reps = cand[cid == cand]
        slot = np.full(self.N, -1, dtype=np.int64)
        slot[reps] = np.arange(len(reps))
        member = np.full(self.N, -1, dtype=np.int64)
        member[cand] = slot[cid]
        p = prime[reps]
        pows = np.array([int(self.power(r, int(q))) for r, q in zip(reps, p)], dtype=np.int64)
        return reps, p.astype(np.int64), pows, member


def _prime_of_power(k: int) -> int | None:
    if k < 2:
        return None
    p = 2
    while p * p <= k:
        if k % p == 0:
            break
        p += 1
    else:
        p = k
    while k % p == 0:
        k //= p
    return p if k == 1 else None
