"""Small finite fields GF(p^t) as lookup tables."""

from __future__ import annotations

from functools import lru_cache

# Conway polynomials, coefficients from the constant term up (monic).
CONWAY = {
    (2, 1): (1, 1), (2, 2): (1, 1, 1), (2, 3): (1, 1, 0, 1), (2, 4): (1, 1, 0, 0, 1),
    (2, 5): (1, 0, 1, 0, 0, 1), (2, 6): (1, 1, 0, 1, 1, 0, 1),
    (3, 1): (1, 1), (3, 2): (2, 2, 1), (3, 3): (1, 2, 0, 1),
    (5, 1): (3, 1), (5, 2): (2, 4, 1),
    (7, 1): (4, 1), (7, 2): (3, 6, 1),
}

MAX_FIELD = 64


class FieldError(ValueError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def prime_power(q: int) -> tuple[int, int]:
    """``(p, t)`` with ``q == p**t``; raises for anything else."""
    if q < 2:
        raise FieldError(f"{q} is not a prime power")
    p = next(d for d in range(2, q + 1) if q % d == 0)
    t, r = 0, q
    while r % p == 0:
        r //= p
        t += 1
    if r != 1:
        raise FieldError(f"{q} is not a prime power")
    return p, t


def _primitive_root(p: int) -> int:
    for g in range(1, p):
        x, k = g, 1
        while x != 1:
            x = x * g % p
            k += 1
        if k == p - 1:
            return g
    raise FieldError(p)


class FiniteField:
    """GF(q) with elements ``0..q-1`` read as base-p coefficient vectors.

    Element ``sum c_i p^i`` stands for the residue ``sum c_i x^i`` modulo a
    fixed Conway polynomial (for ``t == 1`` the field is the integers mod p).
    """

    def __init__(self, q: int):
        p, t = prime_power(q)
        if q > MAX_FIELD:
            raise FieldError(f"field order {q} above the supported bound {MAX_FIELD}")
        self.q, self.p, self.t = q, p, t
        if t == 1:
            self.poly = (p - _primitive_root(p), 1)
        else:
            self.poly = CONWAY[(p, t)]
        self.add = [[self._add(a, b) for b in range(q)] for a in range(q)]
        self.neg = [next(b for b in range(q) if self.add[a][b] == 0) for a in range(q)]
        self.mul = [[self._mul(a, b) for b in range(q)] for a in range(q)]
        # x (or the primitive root) generates the multiplicative group
        self.gen = p if t > 1 else _primitive_root(p)
        self.log: dict[int, int] = {}
        self.exp: list[int] = []
        x = 1
        for k in range(q - 1):
            if x in self.log:
                raise FieldError(f"generator of GF({q}) is not primitive")
            self.log[x] = k
            self.exp.append(x)
            x = self.mul[x][self.gen]
        if x != 1:
            raise FieldError(f"generator of GF({q}) is not primitive")
        self.inv = [0] + [self.exp[(-self.log[a]) % (q - 1)] for a in range(1, q)]

    def _digits(self, a: int) -> list[int]:
        out = []
        for _ in range(self.t):
            out.append(a % self.p)
            a //= self.p
        return out

    def _from_digits(self, d) -> int:
        out = 0
        for c in reversed(d):
            out = out * self.p + c
        return out

    def _add(self, a: int, b: int) -> int:
        return self._from_digits([(x + y) % self.p for x, y in zip(self._digits(a), self._digits(b))])

    def _mul(self, a: int, b: int) -> int:
        p, t = self.p, self.t
        da, db = self._digits(a), self._digits(b)
        prod = [0] * (2 * t - 1)
        for i, x in enumerate(da):
            for j, y in enumerate(db):
                prod[i + j] = (prod[i + j] + x * y) % p
        mono = self.poly
        for k in range(len(prod) - 1, t - 1, -1):
            c = prod[k]
            if c:
                for i in range(t + 1):
                    prod[k - t + i] = (prod[k - t + i] - c * mono[i]) % p
        return self._from_digits(prod[:t])

    def frobenius(self, a: int) -> int:
        out = 1
        for _ in range(self.p):
            out = self.mul[out][a]
        return out

    def elements(self) -> range:
        return range(self.q)


@lru_cache(maxsize=None)
def field(q: int) -> FiniteField:
    return FiniteField(q)
