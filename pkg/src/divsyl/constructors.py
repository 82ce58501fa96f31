"""Named group families as permutation groups."""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .fields import FieldError, field, prime_power
from .group import GroupError, PermGroup
from .perm import Permutation

FAMILIES = ("sym", "alt", "cyclic", "dihedral", "sl2", "psl2", "pgl2", "pgammal2")
LINEAR = ("sl2", "psl2", "pgl2", "pgammal2")

MAX_DEGREE = 30        # sym / alt
MAX_CYCLIC = 1000      # cyclic / dihedral
MAX_Q = 64


class FamilyError(GroupError):
    pass


@dataclass(frozen=True)
class GroupFamilySpec:
    family: str
    param: int

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise FamilyError(f"unknown family {self.family!r}")
        n = self.param
        if self.family in LINEAR:
            try:
                prime_power(n)
            except FieldError as e:
                raise FamilyError(str(e)) from None
            if n > MAX_Q:
                raise FamilyError(f"q = {n} above the bound {MAX_Q}")
        elif self.family in ("sym", "alt"):
            if not 1 <= n <= MAX_DEGREE:
                raise FamilyError(f"degree {n} outside 1..{MAX_DEGREE}")
        elif not 1 <= n <= MAX_CYCLIC:
            raise FamilyError(f"parameter {n} outside 1..{MAX_CYCLIC}")

    def __str__(self) -> str:
        return f"{self.family}({self.param})"

    @classmethod
    def parse(cls, text: str) -> "GroupFamilySpec":
        """Read ``alt(5)`` or ``alt5`` or ``alt:5``."""
        t = text.strip().lower().replace(" ", "")
        for fam in sorted(FAMILIES, key=len, reverse=True):
            if t.startswith(fam):
                rest = t[len(fam):].strip("():")
                try:
                    return cls(fam, int(rest))
                except ValueError:
                    break
        raise FamilyError(f"cannot read a group family from {text!r}")

    def expected_order(self) -> int:
        from math import factorial

        f, n = self.family, self.param
        if f == "sym":
            return factorial(n)
        if f == "alt":
            return max(1, factorial(n) // 2)
        if f == "cyclic":
            return n
        if f == "dihedral":
            return 2 * n
        q = n
        base = q * (q * q - 1)
        if f in ("sl2", "pgl2"):
            return base
        if f == "psl2":
            return base // gcd(2, q - 1)
        return prime_power(q)[1] * base


def _cyc(n: int, *cycles) -> Permutation:
    return Permutation.from_cycles(n, cycles)


def _sym(n: int) -> list:
    if n < 2:
        return []
    if n == 2:
        return [_cyc(2, (1, 2))]
    return [_cyc(n, tuple(range(1, n + 1))), _cyc(n, (1, 2))]


def _alt(n: int) -> list:
    if n < 3:
        return []
    # 3-cycles (1 2 k) generate A_n
    return [_cyc(n, (1, 2, k)) for k in range(3, n + 1)]


def _mobius(q: int, fn) -> Permutation:
    """Permutation of the projective line from a map on ``F u {None}``.

    Points: 0 is infinity, 1 is zero, ``2 + k`` is ``g^k``.
    """
    F = field(q)

    def pt(x):
        if x is None:
            return 0
        return 1 if x == 0 else 2 + F.log[x]

    elems = [None, 0] + F.exp
    return Permutation([pt(fn(x)) for x in elems])


def _projective(q: int, kind: str) -> list:
    F = field(q)
    add, mul, inv, neg = F.add, F.mul, F.inv, F.neg
    g = F.gen

    def translate(x):
        return None if x is None else add[x][1]

    def scale(c):
        return lambda x: None if x is None else mul[c][x]

    def weyl(x):
        if x is None:
            return 0
        if x == 0:
            return None
        return neg[inv[x]]

    gens = [_mobius(q, translate), _mobius(q, scale(mul[g][g])), _mobius(q, weyl)]
    if kind in ("pgl2", "pgammal2"):
        gens.insert(2, _mobius(q, scale(g)))
    if kind == "pgammal2" and F.t > 1:
        gens.append(_mobius(q, lambda x: None if x is None else F.frobenius(x)))
    return [x for x in gens if not x.is_identity()]


def _sl2(q: int) -> list:
    """SL(2,q) on the nonzero row vectors ``(a, b)`` numbered ``a*q + b - 1``."""
    F = field(q)
    add, mul = F.add, F.mul
    g = F.gen
    mats = [((1, 1), (0, 1)), ((1, 0), (1, 1)), ((g, 0), (0, F.inv[g]))]
    out = []
    for (m00, m01), (m10, m11) in mats:
        img = []
        for v in range(1, q * q):
            a, b = divmod(v, q)
            c = add[mul[a][m00]][mul[b][m10]]
            d = add[mul[a][m01]][mul[b][m11]]
            img.append(c * q + d - 1)
        p = Permutation(img)
        if not p.is_identity() and p not in out:
            out.append(p)
    return out


def make(spec: GroupFamilySpec | str) -> PermGroup:
    """Construct a family member; the result carries ``name`` and ``family``."""
    if isinstance(spec, str):
        spec = GroupFamilySpec.parse(spec)
    f, n = spec.family, spec.param
    if f == "sym":
        deg, gens = n, _sym(n)
    elif f == "alt":
        deg, gens = n, _alt(n)
    elif f == "cyclic":
        deg = n
        gens = [_cyc(n, tuple(range(1, n + 1)))] if n > 1 else []
    elif f == "dihedral":
        # symmetries of an n-gon; n = 1, 2 need extra points to stay faithful
        if n == 1:
            deg, gens = 2, [_cyc(2, (1, 2))]
        elif n == 2:
            deg, gens = 4, [_cyc(4, (1, 2), (3, 4)), _cyc(4, (1, 3), (2, 4))]
        else:
            deg = n
            refl = [(i, n + 2 - i) for i in range(2, (n + 3) // 2) if i != n + 2 - i]
            gens = [_cyc(n, tuple(range(1, n + 1))), _cyc(n, *refl)]
    elif f == "sl2":
        deg, gens = n * n - 1, _sl2(n)
    else:
        deg, gens = n + 1, _projective(n, f)
    G = PermGroup(deg, gens, name=str(spec))
    G.family = spec
    if G.order != spec.expected_order():
        raise FamilyError(f"{spec} came out with order {G.order}, expected {spec.expected_order()}")
    return G


def aut_overgroup(S: PermGroup) -> PermGroup:
    """A group containing ``S`` as a normal subgroup of index ``|Out(S)|``."""
    spec = getattr(S, "family", None)
    if spec is None:
        raise FamilyError("group carries no family tag")
    if spec.family == "alt" and spec.param != 6:
        A = make(GroupFamilySpec("sym", spec.param))
    elif spec.family == "psl2":
        A = make(GroupFamilySpec("pgammal2", spec.param))
    elif spec.family == "alt":
        raise FamilyError("alt(6) has an exceptional outer automorphism group; not supported")
    else:
        raise FamilyError(f"no automorphism overgroup for {spec}")
    if not S.is_normal_in(A):
        raise FamilyError(f"{spec} is not normal in {A.name}")
    return A
