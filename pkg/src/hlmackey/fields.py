"""Finite fields GF(p^e) with integer-coded elements, and polynomials over them.

An element is stored as the integer ``sum(c_k * p**k)`` where ``c_0 + c_1 x + ...``
is its representative modulo the field's defining polynomial.  The prime
subfield is therefore ``range(p)`` and ``0``/``1`` are the usual constants.
All arithmetic goes through precomputed tables; the fields used here have at
most a few hundred elements.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import product
from typing import Sequence

import numpy as np

# Fixed defining polynomials, coefficients low to high (monic).
MODULI: dict[tuple[int, int], tuple[int, ...]] = {
    (2, 2): (1, 1, 1),        # x^2 + x + 1
    (2, 3): (1, 1, 0, 1),     # x^3 + x + 1
    (3, 2): (1, 0, 1),        # x^2 + 1
    (3, 3): (1, 2, 0, 1),     # x^3 + 2x + 1
    (5, 2): (2, 0, 1),        # x^2 + 2
    (7, 2): (1, 0, 1),        # x^2 + 1
}

Poly = tuple[int, ...]


def _is_prime(n: int) -> bool:
    return n >= 2 and all(n % d for d in range(2, int(n**0.5) + 1))


def prime_power(q: int) -> tuple[int, int]:
    """Return ``(p, e)`` with ``q == p**e``; raise ValueError otherwise."""
    for p in range(2, q + 1):
        if q % p == 0:
            if not _is_prime(p):
                break
            e, r = 0, q
            while r % p == 0:
                r //= p
                e += 1
            if r == 1:
                return p, e
            break
    raise ValueError(f"{q} is not a prime power")


def _poly_mulmod_p(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return out


def _reduce_p(a: list[int], modulus: Sequence[int], p: int) -> list[int]:
    e = len(modulus) - 1
    a = list(a)
    for k in range(len(a) - 1, e - 1, -1):
        c = a[k]
        if c:
            for i in range(e + 1):
                a[k - e + i] = (a[k - e + i] - c * modulus[i]) % p
    return (a + [0] * e)[:e]


def _irreducible_over_prime(poly: Sequence[int], p: int) -> bool:
    d = len(poly) - 1
    for k in range(1, d // 2 + 1):
        for tail in product(range(p), repeat=k):
            f = list(tail) + [1]
            r = list(poly)
            # long division by monic f
            for top in range(len(r) - 1, k - 1, -1):
                c = r[top]
                if c:
                    for i in range(k + 1):
                        r[top - k + i] = (r[top - k + i] - c * f[i]) % p
            if not any(r[:k]):
                return False
    return True


def default_modulus(p: int, e: int) -> tuple[int, ...]:
    if e == 1:
        return (0, 1)
    if (p, e) in MODULI:
        return MODULI[(p, e)]
    for tail in product(range(p), repeat=e):
        cand = tuple(reversed(tail)) + (1,)
        if cand[0] and _irreducible_over_prime(cand, p):
            return cand
    raise ValueError(f"no irreducible polynomial of degree {e} over F_{p}")


class GF:
    """The finite field with ``p**e`` elements.

    Use :func:`field` to obtain shared instances.
    """

    def __init__(self, p: int, e: int = 1, modulus: Sequence[int] | None = None):
        if not _is_prime(p) or e < 1:
            raise ValueError(f"bad field parameters p={p}, e={e}")
        self.p = p
        self.e = e
        self.q = p**e
        self.modulus = tuple(modulus) if modulus is not None else default_modulus(p, e)
        if len(self.modulus) != e + 1 or self.modulus[-1] != 1:
            raise ValueError("modulus must be monic of degree e")
        if e > 1 and not _irreducible_over_prime(self.modulus, p):
            raise ValueError(f"modulus {self.modulus} is reducible over F_{p}")
        q = self.q
        vecs = [self.coeffs(a) for a in range(q)]
        self.add_t = [[self.from_coeffs([(x + y) % p for x, y in zip(vecs[a], vecs[b])])
                       for b in range(q)] for a in range(q)]
        self.mul_t = [[self.from_coeffs(_reduce_p(_poly_mulmod_p(vecs[a], vecs[b], p), self.modulus, p))
                       if e > 1 else (a * b) % p for b in range(q)] for a in range(q)]
        self.neg_t = [self.from_coeffs([(-x) % p for x in vecs[a]]) for a in range(q)]
        self.sub_t = [[self.add_t[a][self.neg_t[b]] for b in range(q)] for a in range(q)]
        self.inv_t = [0] * q
        for a in range(1, q):
            self.inv_t[a] = next(b for b in range(1, q) if self.mul_t[a][b] == 1)
        # numpy mirrors for batched matrix arithmetic
        self.ADD = np.array(self.add_t, dtype=np.int64)
        self.MUL = np.array(self.mul_t, dtype=np.int64)
        self.NEG = np.array(self.neg_t, dtype=np.int64)

    def __repr__(self) -> str:
        return f"GF({self.q})"

    def __reduce__(self):
        return (field, (self.q,))

    # -- encoding ---------------------------------------------------------
    def coeffs(self, a: int) -> tuple[int, ...]:
        """Polynomial-basis coordinates of ``a`` over F_p (low degree first)."""
        out = []
        for _ in range(self.e):
            out.append(a % self.p)
            a //= self.p
        return tuple(out)

    def from_coeffs(self, c: Sequence[int]) -> int:
        return sum((x % self.p) * self.p**k for k, x in enumerate(c))

    # -- arithmetic -------------------------------------------------------
    def add(self, a: int, b: int) -> int:
        return self.add_t[a][b]

    def sub(self, a: int, b: int) -> int:
        return self.sub_t[a][b]

    def mul(self, a: int, b: int) -> int:
        return self.mul_t[a][b]

    def neg(self, a: int) -> int:
        return self.neg_t[a]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in " + repr(self))
        return self.inv_t[a]

    def div(self, a: int, b: int) -> int:
        return self.mul_t[a][self.inv(b)]

    def pow(self, a: int, n: int) -> int:
        if n < 0:
            a, n = self.inv(a), -n
        r = 1
        while n:
            if n & 1:
                r = self.mul_t[r][a]
            a = self.mul_t[a][a]
            n >>= 1
        return r

    def elements(self) -> range:
        return range(self.q)

    def nonzero(self) -> range:
        return range(1, self.q)


@lru_cache(maxsize=None)
def field(q: int) -> GF:
    """Shared field instance of order ``q`` with the default modulus."""
    p, e = prime_power(q)
    return GF(p, e)


def base_q(F: GF) -> int:
    """For F = F_{q^2}, return q; raise if the order is not a square."""
    if F.e % 2:
        raise ValueError(f"{F!r} is not a quadratic extension of a subfield")
    return F.p ** (F.e // 2)


def conj(F: GF, a: int) -> int:
    """The involution a -> a^q of F_{q^2}."""
    return F.pow(a, base_q(F))


def skew_elements(F: GF) -> list[int]:
    """Solutions of y^q = -y in F = F_{q^2} (including 0)."""
    q = base_q(F)
    return [y for y in F.elements() if F.pow(y, q) == F.neg(y)]


# -- polynomials over GF, tuples of codes low->high, no trailing zeros ----

def ptrim(a: Sequence[int]) -> Poly:
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return tuple(a)


def padd(F: GF, a: Poly, b: Poly) -> Poly:
    n = max(len(a), len(b))
    a = tuple(a) + (0,) * (n - len(a))
    b = tuple(b) + (0,) * (n - len(b))
    return ptrim(F.add_t[x][y] for x, y in zip(a, b))


def pmul(F: GF, a: Poly, b: Poly) -> Poly:
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    mt, at = F.mul_t, F.add_t
    for i, x in enumerate(a):
        if x:
            row = mt[x]
            for j, y in enumerate(b):
                out[i + j] = at[out[i + j]][row[y]]
    return ptrim(out)


def pdivmod(F: GF, a: Poly, b: Poly) -> tuple[Poly, Poly]:
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(a)
    db = len(b) - 1
    lead_inv = F.inv(b[-1])
    qt = [0] * max(len(a) - db, 0)
    for top in range(len(r) - 1, db - 1, -1):
        c = r[top]
        if c:
            c = F.mul_t[c][lead_inv]
            qt[top - db] = c
            for i in range(db + 1):
                r[top - db + i] = F.sub_t[r[top - db + i]][F.mul_t[c][b[i]]]
    return ptrim(qt), ptrim(r)


def monic_polys(F: GF, d: int):
    for tail in product(range(F.q), repeat=d):
        yield tuple(tail) + (1,)


@lru_cache(maxsize=None)
def irreducibles(q: int, d: int) -> tuple[Poly, ...]:
    """All monic irreducible polynomials of degree d over F_q, sorted."""
    F = field(q)
    if d == 1:
        return tuple((F.neg(a), 1) for a in range(F.q))
    out = []
    for f in monic_polys(F, d):
        if f[0] == 0:
            continue
        if all(pdivmod(F, f, g)[1] for k in range(1, d // 2 + 1) for g in irreducibles(q, k)):
            out.append(f)
    return tuple(sorted(out))


def factor(F: GF, f: Poly) -> list[tuple[Poly, int]]:
    """Factor a monic polynomial into monic irreducibles with multiplicities."""
    out: list[tuple[Poly, int]] = []
    f = ptrim(f)
    d = 1
    while len(f) - 1 >= 2 * d:
        for g in irreducibles(F.q, d):
            m = 0
            while True:
                qt, r = pdivmod(F, f, g)
                if r:
                    break
                f, m = qt, m + 1
            if m:
                out.append((g, m))
        d += 1
    if len(f) > 1:
        merged = False
        for k, (g, m) in enumerate(out):
            if g == f:
                out[k] = (g, m + 1)
                merged = True
        if not merged:
            out.append((f, 1))
    return sorted(out)
