"""Permutation groups backed by a deterministic Schreier-Sims stabilizer chain."""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Iterable, Iterator, Sequence

from .perm import Permutation, PermutationError, _inv, _mul

# Groups above this order are refused by element-scan algorithms.
SCAN_BOUND = 200_000
# Largest index accepted by quotient_group.
COSET_BOUND = 100_000


class GroupError(ValueError):
    pass


class TooLargeError(GroupError):
    pass


class NotNormalError(GroupError):
    pass


class _Level:
    """One stabilizer-chain level: base point, its strong generators and transversal."""

    __slots__ = ("point", "gens", "orbit", "trans", "checked")

    def __init__(self, point: int, ident: tuple):
        self.point = point
        self.gens: list[tuple] = []
        self.orbit: list[int] = [point]
        # point -> (u, u^-1) with point == u[base point]
        self.trans: dict[int, tuple[tuple, tuple]] = {point: (ident, ident)}
        self.checked: set[tuple[int, int]] = set()

    def add_gen(self, g: tuple) -> None:
        self.gens.append(g)
        # extend the orbit without disturbing existing transversal entries
        queue = list(self.orbit)
        k = 0
        while k < len(queue):
            b = queue[k]
            k += 1
            u = self.trans[b][0]
            for s in self.gens:
                c = s[b]
                if c not in self.trans:
                    v = _mul(u, s)
                    self.trans[c] = (v, _inv(v))
                    self.orbit.append(c)
                    queue.append(c)


def _first_moved(g: tuple) -> int:
    for i, j in enumerate(g):
        if i != j:
            return i
    return -1


class PermGroup:
    """A permutation group given by generators.

    The stabilizer chain is built eagerly and deterministically: base points
    are smallest moved points, orbits are explored breadth-first with
    generators in the given order.  Instances are treated as immutable.
    """

    def __init__(self, degree: int, gens: Iterable = (), *, base_prefix: Sequence[int] = (),
                 name: str | None = None):
        if degree < 0:
            raise GroupError("degree must be non-negative")
        gl = []
        for g in gens:
            if len(g) != degree:
                raise PermutationError(f"generator of degree {len(g)} in a group of degree {degree}")
            gl.append(g if isinstance(g, Permutation) else Permutation(g))
        self.degree = degree
        self.generators: tuple[Permutation, ...] = tuple(gl)
        self.name = name
        self.family = None
        self._cache: dict = {}
        self._ident = tuple(range(degree))
        self._levels: list[_Level] = []
        self._schreier_sims(list(base_prefix))

    # -- construction -------------------------------------------------

    def _strip(self, g: tuple, start: int) -> tuple[tuple, int]:
        for lvl in range(start, len(self._levels)):
            L = self._levels[lvl]
            t = L.trans.get(g[L.point])
            if t is None:
                return g, lvl
            g = _mul(g, t[1])
        return g, len(self._levels)

    def _schreier_sims(self, prefix: list[int]) -> None:
        ident = self._ident
        levels = self._levels
        for b in prefix:
            if any(L.point == b for L in levels):
                continue
            levels.append(_Level(b, ident))
        strong = [tuple(g) for g in self.generators if tuple(g) != ident]
        for g in strong:
            if all(g[L.point] == L.point for L in levels):
                levels.append(_Level(_first_moved(g), ident))
        for g in strong:
            self._add_strong(g, 0, len(levels) - 1)

        i = len(levels) - 1
        while i >= 0:
            L = levels[i]
            restart = False
            for bi in range(len(L.orbit)):
                beta = L.orbit[bi]
                u = L.trans[beta][0]
                for si, s in enumerate(L.gens):
                    if (beta, si) in L.checked:
                        continue
                    L.checked.add((beta, si))
                    v_inv = L.trans[s[beta]][1]
                    y = _mul(_mul(u, s), v_inv)
                    if y == ident:
                        continue
                    h, j = self._strip(y, i + 1)
                    if h == ident:
                        continue
                    if j == len(levels):
                        levels.append(_Level(_first_moved(h), ident))
                    self._add_strong(h, i + 1, j)
                    i = j
                    restart = True
                    break
                if restart:
                    break
            if not restart:
                i -= 1

    def _add_strong(self, h: tuple, lo: int, hi: int) -> None:
        """Add ``h`` to levels ``lo..hi`` whose pointwise stabilizer contains it."""
        for lvl in range(lo, hi + 1):
            if all(h[self._levels[m].point] == self._levels[m].point for m in range(lvl)):
                self._levels[lvl].add_gen(h)

    # -- basic queries --------------------------------------------------

    @property
    def base(self) -> list[int]:
        """Base points (0-based), in chain order."""
        return [L.point for L in self._levels if len(L.orbit) > 1] or []

    def stabilizer_chain(self) -> list[tuple[int, list[int]]]:
        return [(L.point, list(L.orbit)) for L in self._levels]

    @cached_property
    def order(self) -> int:
        out = 1
        for L in self._levels:
            out *= len(L.orbit)
        return out

    def __len__(self) -> int:
        return self.order

    def identity(self) -> Permutation:
        return Permutation.identity(self.degree)

    def __contains__(self, g) -> bool:
        if len(g) != self.degree:
            raise PermutationError(f"degree mismatch: {len(g)} vs {self.degree}")
        h, j = self._strip(tuple(g), 0)
        return j == len(self._levels) and h == self._ident

    def contains(self, g) -> bool:
        return g in self

    def is_trivial(self) -> bool:
        return self.order == 1

    def elements(self) -> Iterator[Permutation]:
        """All elements, as products of transversal elements (deepest level first)."""
        levels = [L for L in self._levels if len(L.orbit) > 1]
        items: list[tuple] = [self._ident]
        for L in reversed(levels):
            us = [L.trans[b][0] for b in L.orbit]
            items = [_mul(x, u) for x in items for u in us]
        for x in items:
            yield Permutation._trusted(x)

    def transversal(self, level: int) -> dict[int, Permutation]:
        L = self._levels[level]
        return {b: Permutation._trusted(L.trans[b][0]) for b in L.orbit}

    def random_element(self, rng: random.Random) -> Permutation:
        """Uniformly random element drawn through the stabilizer chain."""
        g = self._ident
        for L in reversed(self._levels):
            if len(L.orbit) > 1:
                g = _mul(g, L.trans[L.orbit[rng.randrange(len(L.orbit))]][0])
        return Permutation._trusted(g)

    def random_elements(self, seed: int, count: int) -> list[Permutation]:
        rng = random.Random(seed)
        return [self.random_element(rng) for _ in range(count)]

    # -- structure -----------------------------------------------------

    def is_abelian(self) -> bool:
        gens = self.generators
        return all(a * b == b * a for i, a in enumerate(gens) for b in gens[i + 1:])

    def is_subgroup_of(self, other: "PermGroup") -> bool:
        return self.degree == other.degree and all(g in other for g in self.generators)

    def same_as(self, other: "PermGroup") -> bool:
        """Subgroup equality: equal orders and mutual generator membership."""
        return self.order == other.order and self.is_subgroup_of(other)

    def is_normal_in(self, other: "PermGroup") -> bool:
        return self.is_subgroup_of(other) and all(h ^ g in self for h in self.generators
                                                 for g in other.generators)

    def with_generators(self, extra: Iterable, **kw) -> "PermGroup":
        return PermGroup(self.degree, list(self.generators) + list(extra), **kw)

    def subgroup(self, gens: Iterable) -> "SubgroupHandle":
        gens = list(gens)
        for g in gens:
            if g not in self:
                raise GroupError(f"{g} is not an element of the group")
        return SubgroupHandle(self, PermGroup(self.degree, gens))

    def orbit(self, point: int) -> list[int]:
        """Orbit of a 0-based point, in BFS order."""
        seen = {point: None}
        out = [point]
        for b in out:
            for g in self.generators:
                c = g[b]
                if c not in seen:
                    seen[c] = None
                    out.append(c)
        return out

    def orbits(self) -> list[list[int]]:
        seen: set[int] = set()
        out = []
        for i in range(self.degree):
            if i not in seen:
                o = self.orbit(i)
                seen.update(o)
                out.append(o)
        return out

    def is_transitive(self) -> bool:
        return self.degree <= 1 or len(self.orbit(0)) == self.degree

    def derived_subgroup(self) -> "PermGroup":
        comm = [~a * ~b * a * b for a in self.generators for b in self.generators]
        return normal_closure(self, comm).group

    def derived_series(self) -> list["PermGroup"]:
        out = [self]
        while True:
            d = out[-1].derived_subgroup()
            if d.order == out[-1].order:
                return out
            out.append(d)

    def is_solvable(self) -> bool:
        return self.derived_series()[-1].order == 1

    def table(self):
        """Element table for desk-scale scans (cached)."""
        t = self._cache.get("table")
        if t is None:
            from .table import ElementTable

            t = ElementTable(self)
            self._cache["table"] = t
        return t

    def key(self) -> tuple:
        """Canonical generator encoding: degree plus sorted generator images."""
        return (self.degree, tuple(sorted(tuple(g) for g in self.generators)))

    def __repr__(self) -> str:
        nm = f" {self.name}" if self.name else ""
        return f"<PermGroup{nm} degree={self.degree} order={self.order}>"


@dataclass(frozen=True)
class SubgroupHandle:
    parent: PermGroup
    group: PermGroup

    @property
    def order(self) -> int:
        return self.group.order

    @property
    def index(self) -> int:
        return self.parent.order // self.group.order

    def __contains__(self, g) -> bool:
        return g in self.group

    def is_normal(self) -> bool:
        return self.group.is_normal_in(self.parent)


class Homomorphism:
    """A homomorphism fixed by generator images.

    Well-definedness is checked through the graph group
    ``{(g, f(g))}`` acting on ``source.degree + target.degree`` points.
    """

    def __init__(self, source: PermGroup, target: PermGroup, generator_images: Sequence,
                 evaluate: Callable | None = None):
        if len(generator_images) != len(source.generators):
            raise GroupError("one image per source generator is required")
        self.source = source
        self.target = target
        self.generator_images = tuple(Permutation(x) if not isinstance(x, Permutation) else x
                                      for x in generator_images)
        self._evaluate = evaluate

    @cached_property
    def _graph(self) -> PermGroup:
        n, m = self.source.degree, self.target.degree
        gens = [tuple(g) + tuple(m_ + n for m_ in h)
                for g, h in zip(self.source.generators, self.generator_images)]
        return PermGroup(n + m, gens, base_prefix=self.source.base)

    def is_well_defined(self) -> bool:
        return self._graph.order == self.source.order

    def __call__(self, g) -> Permutation:
        if self._evaluate is not None:
            return self._evaluate(g)
        n = self.source.degree
        graph = self._graph
        x = tuple(g)
        us = []
        for L in graph._levels:
            if L.point >= n:
                break
            t = L.trans.get(x[L.point])
            if t is None:
                raise GroupError(f"{g} is not in the source group")
            us.append(t[0])
            x = _mul(x, t[1])
        if x != tuple(range(n)):
            raise GroupError(f"{g} is not in the source group")
        w = graph._ident
        for u in reversed(us):
            w = _mul(w, u)
        return Permutation._trusted(i - n for i in w[n:])

    def image(self) -> PermGroup:
        return PermGroup(self.target.degree, self.generator_images)

    def kernel(self) -> PermGroup:
        n, m = self.source.degree, self.target.degree
        gens = [tuple(h) + tuple(i + m for i in g)
                for g, h in zip(self.source.generators, self.generator_images)]
        prefix = self.image().base
        rev = PermGroup(n + m, gens, base_prefix=prefix)
        k = len(prefix)
        # elements fixing the image's base act trivially on the target
        ker = rev._levels[k].gens if k < len(rev._levels) else []
        return PermGroup(n, [Permutation._trusted(i - m for i in x[m:]) for x in ker])


# -- free functions on groups -------------------------------------------

def group_from_generators(degree: int, gens: Iterable) -> PermGroup:
    return PermGroup(degree, gens)


def membership(G: PermGroup, p) -> bool:
    return p in G


def normal_closure(G: PermGroup, seeds: Iterable) -> SubgroupHandle:
    """Smallest normal subgroup of ``G`` containing ``seeds``."""
    seeds = [s if isinstance(s, Permutation) else Permutation(s) for s in seeds]
    for s in seeds:
        if s not in G:
            raise GroupError(f"{s} is not an element of the group")
    gens = [s for s in seeds if not s.is_identity()]
    N = PermGroup(G.degree, gens)
    queue = list(gens)
    while queue:
        x = queue.pop(0)
        for g in G.generators:
            c = x ^ g
            if c not in N:
                gens.append(c)
                queue.append(c)
                N = PermGroup(G.degree, gens)
    return SubgroupHandle(G, N)


def _scan_table(G: PermGroup):
    if G.order > SCAN_BOUND:
        raise TooLargeError(f"group of order {G.order} too large for element scan (bound {SCAN_BOUND})")
    return G.table()


def normalizer(G: PermGroup, H) -> SubgroupHandle:
    """``N_G(H)`` by element scan."""
    Hg = H.group if isinstance(H, SubgroupHandle) else H
    t = _scan_table(G)
    if any(h not in G for h in Hg.generators):
        raise GroupError("H is not a subgroup of G")
    n = t.normalizer(t.all, t.index_of(Hg.generators))
    return SubgroupHandle(G, t.to_group(n))


def centralizer(G: PermGroup, H) -> SubgroupHandle:
    Hg = H.group if isinstance(H, SubgroupHandle) else H
    t = _scan_table(G)
    c = t.centralizer(t.index_of(Hg.generators))
    return SubgroupHandle(G, t.to_group(c))


def intersection(G: PermGroup, A: PermGroup, B: PermGroup) -> SubgroupHandle:
    small, big = (A, B) if A.order <= B.order else (B, A)
    if small.order > SCAN_BOUND:
        raise TooLargeError("intersection operands too large for element scan")
    t = small.table()
    keep = [x for x in t.perms(range(t.N)) if x in big]
    return SubgroupHandle(G, PermGroup(G.degree, _small_gens(G.degree, keep)))


def _small_gens(degree: int, elems: list) -> list:
    gens: list = []
    H = PermGroup(degree, [])
    for x in sorted(elems, key=lambda e: -e.order()):
        if x not in H:
            gens.append(x)
            H = PermGroup(degree, gens)
    return gens


def coset_representative(N: PermGroup, g: tuple) -> tuple:
    """Canonical element of the right coset ``N g``.

    Among the coset elements it is the one whose images of ``N``'s base
    points are lexicographically least.
    """
    h = tuple(g)
    for L in N._levels:
        if len(L.orbit) == 1:
            continue
        best = min(L.orbit, key=h.__getitem__)
        h = _mul(L.trans[best][0], h)
    return h


def quotient_group(G: PermGroup, N) -> tuple[PermGroup, Homomorphism]:
    """``G/N`` as the right-coset action of ``G`` on the cosets of ``N``."""
    Ng = N.group if isinstance(N, SubgroupHandle) else N
    if not Ng.is_normal_in(G):
        raise NotNormalError("subgroup is not normal")
    index = G.order // Ng.order
    if index > COSET_BOUND:
        raise TooLargeError(f"index {index} exceeds coset bound {COSET_BOUND}")
    reps = [coset_representative(Ng, G._ident)]
    where = {reps[0]: 0}
    k = 0
    while k < len(reps):
        r = reps[k]
        k += 1
        for g in G.generators:
            c = coset_representative(Ng, _mul(r, g))
            if c not in where:
                where[c] = len(reps)
                reps.append(c)

    def act(x) -> Permutation:
        return Permutation._trusted(where[coset_representative(Ng, _mul(r, tuple(x)))] for r in reps)

    imgs = [act(g) for g in G.generators]
    Q = PermGroup(index, imgs)
    return Q, Homomorphism(G, Q, imgs, evaluate=act)


@dataclass(frozen=True)
class DirectProduct:
    """``A x B`` on ``deg A + deg B`` points."""

    group: PermGroup
    factors: tuple[PermGroup, ...]
    offsets: tuple[int, ...]

    def projection(self, i: int, g) -> Permutation:
        lo, d = self.offsets[i], self.factors[i].degree
        return Permutation._trusted(x - lo for x in tuple(g)[lo:lo + d])

    def injection(self, i: int, g) -> Permutation:
        lo = self.offsets[i]
        img = list(range(self.group.degree))
        for j, x in enumerate(g):
            img[lo + j] = lo + x
        return Permutation._trusted(img)

    def projection_hom(self, i: int) -> Homomorphism:
        return Homomorphism(self.group, self.factors[i],
                            [self.projection(i, g) for g in self.group.generators],
                            evaluate=lambda g, i=i: self.projection(i, g))


def direct_product(*groups: PermGroup) -> DirectProduct:
    offsets = []
    lo = 0
    for G in groups:
        offsets.append(lo)
        lo += G.degree
    dp = DirectProduct(PermGroup(lo, []), tuple(groups), tuple(offsets))
    gens = [dp.injection(i, g) for i, G in enumerate(groups) for g in G.generators]
    return DirectProduct(PermGroup(lo, gens), tuple(groups), tuple(offsets))


@dataclass(frozen=True)
class WreathProduct:
    """``L wr K``: coordinate ``i`` lives on block ``i`` of ``deg L`` points.

    An element ``g = (g_1..g_k) rho(g)`` sends point ``(i, j)`` to
    ``(i rho(g), j g_i)``, so conjugating a base element by a top
    permutation ``s`` gives ``(g_{1 s^-1}, ..., g_{k s^-1})``.
    """

    group: PermGroup
    L: PermGroup
    K: PermGroup

    @property
    def k(self) -> int:
        return self.K.degree

    @property
    def m(self) -> int:
        return self.L.degree

    def rho(self, g) -> Permutation:
        m = self.m
        return Permutation._trusted(g[i * m] // m if m else i for i in range(self.k))

    def pi(self, i: int, g) -> Permutation:
        m = self.m
        lo = g[i * m] // m * m
        return Permutation._trusted(g[i * m + j] - lo for j in range(m))

    def element(self, coords: Sequence, top) -> Permutation:
        """Assemble ``(g_1..g_k) * top`` from coordinates and a top permutation."""
        m = self.m
        img = [0] * (self.k * m)
        for i, gi in enumerate(coords):
            for j in range(m):
                img[i * m + j] = top[i] * m + gi[j]
        return Permutation._trusted(img)

    def base_embed(self, i: int, g) -> Permutation:
        coords = [tuple(range(self.m))] * self.k
        coords = list(coords)
        coords[i] = tuple(g)
        return self.element(coords, tuple(range(self.k)))

    def top_embed(self, s) -> Permutation:
        return self.element([tuple(range(self.m))] * self.k, tuple(s))

    def base_group(self) -> PermGroup:
        gens = [self.base_embed(i, g) for i in range(self.k) for g in self.L.generators]
        return PermGroup(self.group.degree, gens)

    def rho_hom(self) -> Homomorphism:
        return Homomorphism(self.group, self.K, [self.rho(g) for g in self.group.generators],
                            evaluate=self.rho)


def wreath_product(L: PermGroup, K: PermGroup) -> WreathProduct:
    w0 = WreathProduct(PermGroup(L.degree * K.degree, []), L, K)
    gens = [w0.base_embed(0, g) for g in L.generators] + [w0.top_embed(s) for s in K.generators]
    if K.degree and not K.is_transitive():
        # every orbit of K needs its own base coordinate
        for orb in K.orbits()[1:]:
            gens += [w0.base_embed(orb[0], g) for g in L.generators]
    return WreathProduct(PermGroup(L.degree * K.degree, gens), L, K)
