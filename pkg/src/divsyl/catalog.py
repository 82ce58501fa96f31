"""Named test groups, grouped into sweeps."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

from .constructors import make
from .group import PermGroup, WreathProduct, direct_product, wreath_product


def _cyc(n: int) -> PermGroup:
    return make(f"cyclic({n})")


def _named(G: PermGroup, name: str) -> PermGroup:
    G.name = name
    return G


def _prod(name: str, *parts: str) -> PermGroup:
    return _named(direct_product(*(make(p) for p in parts)).group, name)


# wreath entries: name -> (L, S) with S the socle-type normal subgroup of L
WREATHS = {
    "c2wrc2": ("cyclic(2)", "cyclic(2)"),
    "sym(3)wrc2": ("sym(3)", "alt(3)"),
    "alt(5)wrc2": ("alt(5)", "alt(5)"),
    "sym(5)wrc2": ("sym(5)", "alt(5)"),
}


@lru_cache(maxsize=None)
def wreath(name: str) -> WreathProduct:
    """The wreath product object behind a catalog entry, top group ``C2``."""
    L, _ = WREATHS[name]
    W = wreath_product(make(L), _cyc(2))
    W.group.name = name
    return W


def _wr(name: str) -> PermGroup:
    return wreath(name).group


@dataclass(frozen=True)
class Entry:
    name: str
    build: Callable[[], PermGroup]
    tags: frozenset = frozenset()


def _fam(spec: str, *tags: str) -> Entry:
    return Entry(spec, lambda: make(spec), frozenset(tags))


def _abelian(name: str, *parts: str) -> Entry:
    return Entry(name, lambda: _prod(name, *parts), frozenset({"abelian"}))


SMALL: list[Entry] = [
    *(_fam(f"cyclic({n})", "abelian") for n in (2, 3, 4, 6, 8, 12)),
    _abelian("c2xc2", "cyclic(2)", "cyclic(2)"),
    _abelian("c2xc4", "cyclic(2)", "cyclic(4)"),
    _abelian("c3xc3", "cyclic(3)", "cyclic(3)"),
    _abelian("c2xc6", "cyclic(2)", "cyclic(6)"),
    _abelian("c2xc2xc2", "cyclic(2)", "cyclic(2)", "cyclic(2)"),
    _fam("sym(3)", "solvable"),
    _fam("alt(4)", "solvable"),
    _fam("sym(4)", "solvable"),
    *(_fam(f"dihedral({n})", "solvable") for n in range(4, 21)),
    _fam("sl2(3)", "solvable"),
    Entry("alt(4)xc2", lambda: _prod("alt(4)xc2", "alt(4)", "cyclic(2)"), frozenset({"solvable"})),
    Entry("c2wrc2", lambda: _wr("c2wrc2"), frozenset({"solvable", "wreath"})),
    Entry("sym(3)wrc2", lambda: _wr("sym(3)wrc2"), frozenset({"solvable", "wreath"})),
    _fam("alt(5)", "simple"),
    _fam("sym(5)", "almost-simple"),
    Entry("alt(5)xc2", lambda: _prod("alt(5)xc2", "alt(5)", "cyclic(2)")),
    _fam("sl2(5)"),
    _fam("psl2(7)", "simple"),
    _fam("pgl2(7)", "almost-simple"),
    _fam("psl2(8)", "simple"),
    _fam("alt(6)", "simple"),
]

FAMILIES: list[Entry] = [
    _fam("psl2(11)", "simple"),
    _fam("sym(6)", "almost-simple"),
    _fam("psl2(13)", "simple"),
    _fam("pgammal2(8)", "almost-simple"),
    _fam("alt(7)", "simple"),
    _fam("psl2(16)", "simple"),
    Entry("alt(5)wrc2", lambda: _wr("alt(5)wrc2"), frozenset({"wreath"})),
    # beyond the lattice bound: sampled checks and Sylow counts only
    Entry("sym(5)wrc2", lambda: _wr("sym(5)wrc2"), frozenset({"wreath", "large"})),
    Entry("pgammal2(32)", lambda: make("pgammal2(32)"), frozenset({"almost-simple", "large"})),
]

CATALOGS = {
    "small": SMALL,
    "families": FAMILIES,
    "all": SMALL + FAMILIES,
}


@lru_cache(maxsize=None)
def group(name: str) -> PermGroup:
    for e in SMALL + FAMILIES:
        if e.name == name:
            return e.build()
    return make(name)


def entries(catalog: str = "all", max_order: int | None = None) -> list[Entry]:
    if catalog not in CATALOGS:
        raise KeyError(f"unknown catalog {catalog!r}; choose from {sorted(CATALOGS)}")
    out = []
    for e in CATALOGS[catalog]:
        if max_order is not None and group(e.name).order > max_order:
            continue
        out.append(e)
    return out


def groups(catalog: str = "all", max_order: int | None = None) -> list[PermGroup]:
    return [group(e.name) for e in entries(catalog, max_order)]


def primes_dividing(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out
