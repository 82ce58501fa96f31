"""Sylow subgroups, Sylow numbers, p-cores and p-solvability."""

from __future__ import annotations

import random
from dataclasses import dataclass

import numpy as np

from .fields import is_prime
from .group import (GroupError, NotNormalError, PermGroup, SubgroupHandle, _scan_table,
                    quotient_group)

ORBIT_CAP = 1_000_000


@dataclass(frozen=True)
class PPartition:
    n: int
    p: int
    p_part: int
    p_prime_part: int


def p_partition(n: int, p: int) -> PPartition:
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if n < 1:
        raise ValueError("n must be positive")
    a, b = 1, n
    while b % p == 0:
        a *= p
        b //= p
    return PPartition(n, p, a, b)


def _is_p_power(n: int, p: int) -> bool:
    return p_partition(n, p).p_prime_part == 1


# -- table-level machinery ---------------------------------------------------

def sylow_indices(t, H, p: int, seed: int = 0, start=None) -> np.ndarray:
    """A Sylow p-subgroup of the subgroup ``H`` (index array) of table ``t``.

    Seeds with the p-part of a random element of ``H`` (or with the
    p-subgroup ``start``), then repeatedly adjoins a p-element of
    ``N_H(P)`` outside ``P``.
    """
    H = np.asarray(H, dtype=np.int64)
    target = p_partition(len(H), p).p_part
    P = np.zeros(1, dtype=np.int64)
    if target == 1:
        return P
    if start is not None:
        P = np.asarray(start, dtype=np.int64)
    else:
        o = t.orders[H]
        cand = H[o % p == 0]
        rng = random.Random(seed)
        g = int(cand[rng.randrange(len(cand))])
        m = p_partition(int(t.orders[g]), p).p_prime_part
        P = t.closure([int(t.power(g, m))])
    while len(P) < target:
        gens = t.generators_of(P)
        N = t.normalizer(H, gens)
        inP = t.mask(P)
        outside = N[~inP[N]]
        pel = outside[[_is_p_power(int(k), p) for k in t.orders[outside]]]
        x = int(pel[0])
        P = t.closure(list(gens) + [x], start=P)
    return P


def nu_in(t, H, p: int, seed: int = 0, P=None) -> int:
    """Sylow number of the subgroup ``H`` of ``t`` via ``|H : N_H(P)|``."""
    H = np.asarray(H, dtype=np.int64)
    if P is None:
        P = sylow_indices(t, H, p, seed)
    if len(P) == 1 or len(P) == len(H):
        return 1
    return len(H) // len(t.normalizer(H, t.generators_of(P)))


def sylow_orbit(t, P, within_gens=None) -> list[np.ndarray]:
    """Conjugates of ``P`` under the group generated by ``within_gens``."""
    from .table import subgroup_key

    wgens = t.gens if within_gens is None else within_gens
    P = np.asarray(P, dtype=np.int64)
    seen = {subgroup_key(P)}
    orbit = [P]
    k = 0
    while k < len(orbit):
        Q = orbit[k]
        k += 1
        for g in wgens:
            R = t.conj_subgroup(Q, int(g))
            key = subgroup_key(R)
            if key not in seen:
                seen.add(key)
                orbit.append(R)
                if len(orbit) > ORBIT_CAP:
                    raise GroupError(f"Sylow orbit exceeds {ORBIT_CAP} subgroups")
    return orbit


# -- public operations ---------------------------------------------------------

def sylow_subgroup(G: PermGroup, p: int, seed: int = 0) -> SubgroupHandle:
    p_partition(1, p)
    t = _scan_table(G)
    return SubgroupHandle(G, t.to_group(sylow_indices(t, t.all, p, seed)))


@dataclass(frozen=True)
class SylowCertificate:
    group: PermGroup
    p: int
    sylow: SubgroupHandle
    nu_p: int
    normalizer_order: int

    def check(self) -> bool:
        n = self.group.order
        pp = p_partition(n, self.p)
        return (self.sylow.order == pp.p_part
                and self.nu_p % self.p == 1 % self.p
                and pp.p_prime_part % self.nu_p == 0
                and self.nu_p * self.normalizer_order == n)


def nu_p(G: PermGroup, p: int, seed: int = 0) -> SylowCertificate:
    """Count Sylow p-subgroups as the conjugation orbit of one of them."""
    p_partition(1, p)
    t = _scan_table(G)
    P = sylow_indices(t, t.all, p, seed)
    nu = len(sylow_orbit(t, P))
    # normalizer found by a separate element scan, so nu * |N| = |G| is a real check
    N = t.normalizer(t.all, t.generators_of(P))
    return SylowCertificate(G, p, SubgroupHandle(G, t.to_group(P)), nu, len(N))


def nu(G: PermGroup, p: int, seed: int = 0) -> int:
    return nu_p(G, p, seed).nu_p


def p_core(G: PermGroup, p: int, dual: bool = False) -> SubgroupHandle:
    """``O_p(G)``, or ``O_{p'}(G)`` when ``dual`` is set."""
    p_partition(1, p)
    t = _scan_table(G)
    if not dual:
        P = sylow_indices(t, t.all, p)
        m = np.ones(t.N, dtype=bool)
        for Q in sylow_orbit(t, P):
            m &= t.mask(Q)
        return SubgroupHandle(G, t.to_group(np.flatnonzero(m)))
    # a product of normal p'-subgroups is again one
    core = np.zeros(1, dtype=np.int64)
    cm = t.mask(core)
    for cls in t.conjugacy_classes():
        x = int(cls[0])
        if cm[x] or t.orders[x] % p == 0:
            continue
        N = t.normal_closure([x])
        if len(N) % p:
            core = t.closure(list(t.generators_of(N)), start=core)
            cm = t.mask(core)
    return SubgroupHandle(G, t.to_group(core))


def is_p_solvable(G: PermGroup, p: int) -> bool:
    """Every chief factor is a p-group or a p'-group."""
    from .series import chief_series

    s = chief_series(G)
    for a, b in zip(s.orders, s.orders[1:]):
        k = b // a
        pp = p_partition(k, p)
        if pp.p_part != 1 and pp.p_prime_part != 1:
            return False
    return True


@dataclass(frozen=True)
class NuFactorization:
    p: int
    nu_G: int
    nu_quotient: int
    nu_PA: int
    index_A_NAP: int

    @property
    def product_holds(self) -> bool:
        return self.nu_G == self.nu_quotient * self.nu_PA

    @property
    def index_holds(self) -> bool:
        return self.nu_PA == self.index_A_NAP

    @property
    def holds(self) -> bool:
        return self.product_holds and self.index_holds


def check_nu_factorization(G: PermGroup, A, p: int, seed: int = 0) -> NuFactorization:
    """Both sides of ``nu(G) = nu(G/A) nu(PA)`` and ``nu(PA) = |A : N_A(P)|``."""
    Ag = A.group if isinstance(A, SubgroupHandle) else A
    if not Ag.is_normal_in(G):
        raise NotNormalError("A is not normal in G")
    t = _scan_table(G)
    P = sylow_indices(t, t.all, p, seed)
    Aidx = t.subgroup_indices(Ag)
    PA = t.closure(list(t.generators_of(P)) + list(t.index_of(Ag.generators)))
    nuG = len(sylow_orbit(t, P))
    nuPA = len(sylow_orbit(t, P, t.generators_of(PA)))
    NAP = t.normalizer(Aidx, t.generators_of(P))
    Q, _ = quotient_group(G, Ag)
    nuQ = nu_p(Q, p, seed).nu_p
    return NuFactorization(p, nuG, nuQ, nuPA, len(Aidx) // len(NAP))
