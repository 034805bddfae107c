"""Adjoint orbits of GL(n, F_q) on gl(n, F_q) and of U(2n, F_{q^2}) on u(2n, F_{q^2}).

Orbit labels come from the similarity type (rational canonical data).  For
the unitary case this is a complete invariant as well: two elements of u(m)
that are conjugate under GL(m, F_{q^2}) are conjugate under U(m), because
centralizers of Lie algebra elements in GL are connected.  The exhaustive
enumerators below check this against a brute-force conjugation closure.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Iterable

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from .fields import GF, Poly, field, irreducibles, pmul, skew_elements
from .hermitian import adapted_basis, gl_order, u_basis_params, unitary_group, unitary_order
from .matrices import (
    J, Matrix, Raw, identity, in_u_raw, inverse, jordan_type, mul, neg, np_matmul, similarity_type,
    star_raw, Type,
)
from .partitions import Partition, partitions

EXHAUSTIVE_BOUND = 10**6
MODES = ("exhaustive", "nilpotent", "types")


class InfeasibleError(ValueError):
    """Request exceeds the enumeration bounds; the message names a mode that works."""


@dataclass(frozen=True, order=True)
class OrbitLabel:
    """Canonical orbit name.  ``n`` is the matrix size."""

    kind: str
    n: int
    cls: tuple

    @property
    def is_nilpotent(self) -> bool:
        return self.cls[0] == "nilp"

    @property
    def partition(self) -> Partition:
        if not self.is_nilpotent:
            raise ValueError(f"{self} is not nilpotent")
        return self.cls[1]

    def __str__(self) -> str:
        if self.is_nilpotent:
            return "nilp:" + self.cls[1].label()
        parts = []
        for f, lam in self.cls[1]:
            parts.append(",".join(map(str, f)) + "^" + Partition(lam).label())
        return "type:" + "|".join(parts)

    @classmethod
    def nilpotent(cls, kind: str, lam: Iterable[int]) -> "OrbitLabel":
        lam = Partition(lam)
        return cls(kind, lam.size, ("nilp", lam))

    @classmethod
    def from_type(cls, kind: str, n: int, t: Type) -> "OrbitLabel":
        if len(t) == 0:
            return cls(kind, 0, ("nilp", Partition()))
        if len(t) == 1 and t[0][0] == (0, 1):
            return cls(kind, n, ("nilp", Partition(t[0][1])))
        return cls(kind, n, ("type", tuple((tuple(f), tuple(lam)) for f, lam in t)))

    @classmethod
    def parse(cls, kind: str, s: str) -> "OrbitLabel":
        head, _, body = s.partition(":")
        if head == "nilp":
            return cls.nilpotent(kind, _parse_parts(body))
        if head != "type":
            raise ValueError(f"bad orbit label {s!r}")
        t = []
        n = 0
        for chunk in body.split("|"):
            f, _, lam = chunk.partition("^")
            f = tuple(int(x) for x in f.split(","))
            lam = _parse_parts(lam)
            n += (len(f) - 1) * sum(lam)
            t.append((f, lam))
        return cls(kind, n, ("type", tuple(t)))

    def type_data(self) -> Type:
        if self.is_nilpotent:
            return (((0, 1), tuple(self.cls[1])),) if self.n else ()
        return self.cls[1]


def _parse_parts(s: str) -> tuple[int, ...]:
    s = s.strip().strip("[]")
    return tuple(int(x) for x in s.split(",") if x.strip())


def kind_field(kind: str, q: int) -> GF:
    """The field of the Lie algebra: F_q for GL, F_{q^2} for U."""
    if kind == "GL":
        return field(q)
    if kind == "U":
        if q % 2 == 0:
            raise ValueError("unitary constructions need odd q")
        return field(q * q)
    raise ValueError(f"unknown kind {kind!r}")


_CLASSIFY_CACHE: dict = {}


def classify_raw(F: GF, X: Raw, kind: str = "GL") -> OrbitLabel:
    key = (F.q, kind, X)
    lab = _CLASSIFY_CACHE.get(key)
    if lab is None:
        lab = OrbitLabel.from_type(kind, len(X), similarity_type(F, X))
        if len(_CLASSIFY_CACHE) > 2_000_000:
            _CLASSIFY_CACHE.clear()
        _CLASSIFY_CACHE[key] = lab
    return lab


def classify(X: Matrix, kind: str = "GL") -> OrbitLabel:
    """Orbit label of X in gl (kind 'GL') or u (kind 'U')."""
    F = X.field
    if kind == "U":
        if X.rows % 2:
            raise ValueError("u(m) needs even m here")
        if not in_u_raw(F, X.data):
            raise ValueError("matrix is not in u(m)")
    return classify_raw(F, X.data, kind)


# -- representatives -----------------------------------------------------

def jordan_matrix(lam: Iterable[int]) -> Raw:
    lam = Partition(lam)
    n = lam.size
    M = [[0] * n for _ in range(n)]
    pos = 0
    for k in lam:
        for a in range(k - 1):
            M[pos + a][pos + a + 1] = 1
        pos += k
    return tuple(tuple(r) for r in M)


def block_diag(blocks: Iterable[Raw]) -> Raw:
    blocks = list(blocks)
    n = sum(len(b) for b in blocks)
    M = [[0] * n for _ in range(n)]
    pos = 0
    for b in blocks:
        for i, r in enumerate(b):
            M[pos + i][pos:pos + len(r)] = list(r)
        pos += len(b)
    return tuple(tuple(r) for r in M)


def companion_of(F: GF, f: Poly) -> Raw:
    d = len(f) - 1
    M = [[0] * d for _ in range(d)]
    for i in range(1, d):
        M[i][i - 1] = 1
    for i in range(d):
        M[i][d - 1] = F.neg(f[i])
    return tuple(tuple(r) for r in M)


def type_rep(F: GF, t: Type) -> Raw:
    blocks = []
    for f, lam in t:
        for k in lam:
            g = (1,)
            for _ in range(k):
                g = pmul(F, g, f)
            blocks.append(companion_of(F, g))
    return block_diag(blocks) if blocks else ()


def _u_jordan_block(F: GF, k: int) -> Raw:
    """Single nilpotent Jordan-type block in u(k) for the form J_k."""
    eps = next(y for y in skew_elements(F) if y)
    M = [[0] * k for _ in range(k)]
    for a in range(k - 1):
        b = k - 2 - a
        if a < b:
            M[a][a + 1] = 1
        elif a > b:
            M[a][a + 1] = F.neg(1)
        else:
            M[a][a + 1] = eps
    return tuple(tuple(r) for r in M)


@lru_cache(maxsize=None)
def u_nilpotent_rep(lam: tuple[int, ...], q: int) -> Raw:
    """A nilpotent element of u(|lam|, F_{q^2}) with Jordan type lam."""
    lam = Partition(lam)
    F = field(q * q)
    N = block_diag(_u_jordan_block(F, k) for k in lam)
    D = block_diag(J(k) for k in lam)
    C = adapted_basis(F, D)  # C^* D C = J
    return mul(F, mul(F, inverse(F, C), N), C)


def gl_nilpotent_rep(lam: Iterable[int]) -> Raw:
    return jordan_matrix(lam)


# -- orbit sizes -----------------------------------------------------------

def _centralizer_factor(lam: Iterable[int], Q: Fraction | int) -> Fraction:
    lam = Partition(lam)
    conj = lam.conjugate()
    out = Fraction(Q) ** sum(c * c for c in conj)
    for i in set(lam):
        for k in range(1, lam.mult(i) + 1):
            out *= 1 - Fraction(1) / Fraction(Q) ** k
    return out


def gl_orbit_size(t: Type, q: int) -> int:
    n = sum((len(f) - 1) * sum(lam) for f, lam in t)
    c = Fraction(1)
    for f, lam in t:
        c *= _centralizer_factor(lam, q ** (len(f) - 1))
    size = Fraction(gl_order(n, q)) / c
    assert size.denominator == 1
    return int(size)


def u_nilpotent_orbit_size(lam: Iterable[int], q: int) -> int:
    """|U(m)| / |centralizer| with the Ennola-twisted GL centralizer order."""
    lam = Partition(lam)
    c = abs(_centralizer_factor(lam, -q))
    size = Fraction(unitary_order(lam.size, q)) / c
    assert size.denominator == 1
    return int(size)


# -- tables ----------------------------------------------------------------

@dataclass
class OrbitTable:
    kind: str
    n: int          # GL: matrix size; U: half the matrix size
    q: int
    mode: str
    entries: list   # (OrbitLabel, size, representative Raw)

    @property
    def field(self) -> GF:
        return kind_field(self.kind, self.q)

    @property
    def matrix_size(self) -> int:
        return self.n if self.kind == "GL" else 2 * self.n

    def labels(self) -> list[OrbitLabel]:
        return [e[0] for e in self.entries]

    def size_of(self, lab: OrbitLabel) -> int:
        return next(s for l, s, _ in self.entries if l == lab)

    def rep_of(self, lab: OrbitLabel) -> Raw:
        return next(r for l, _, r in self.entries if l == lab)

    def total(self) -> int:
        return sum(e[1] for e in self.entries)

    def to_json(self) -> dict:
        return {
            "schema": "orbit-table/1",
            "kind": self.kind.lower(),
            "q": self.q,
            "n": self.n,
            "mode": self.mode,
            "orbits": [{"label": str(l), "size": s, "rep": [list(r) for r in rep]}
                       for l, s, rep in self.entries],
        }


def enumerate_orbits(kind: str, n: int, q: int, mode: str = "exhaustive") -> OrbitTable:
    """Orbit table for gl(n, F_q) (kind 'GL') or u(2n, F_{q^2}) (kind 'U')."""
    kind = kind.upper()
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}")
    F = kind_field(kind, q)
    m = n if kind == "GL" else 2 * n
    if mode == "nilpotent":
        if m > 8:
            raise InfeasibleError("nilpotent mode supports matrix size <= 8")
        ent = []
        for lam in partitions(m):
            if kind == "GL":
                ent.append((OrbitLabel.nilpotent("GL", lam), gl_orbit_size(((( 0, 1), tuple(lam)),) if lam else (), q),
                            gl_nilpotent_rep(lam)))
            else:
                ent.append((OrbitLabel.nilpotent("U", lam), u_nilpotent_orbit_size(lam, q), u_nilpotent_rep(tuple(lam), q)))
        return OrbitTable(kind, n, q, mode, ent)
    if mode == "types":
        if kind != "GL":
            raise InfeasibleError("types mode is only available for GL; use nilpotent mode for U")
        ent = [(OrbitLabel.from_type("GL", n, t), gl_orbit_size(t, q), type_rep(F, t)) for t in gl_types(n, q)]
        return OrbitTable(kind, n, q, mode, sorted(ent, key=lambda e: e[0]))
    # exhaustive
    total = F.q ** (m * m) if kind == "GL" else q ** (m * m)
    if total > EXHAUSTIVE_BOUND:
        hint = "types" if kind == "GL" else "nilpotent"
        raise InfeasibleError(f"exhaustive enumeration of {total} matrices exceeds the bound "
                              f"{EXHAUSTIVE_BOUND}; use --mode {hint}")
    ent = _gl_closure(F, m) if kind == "GL" else _u_closure(q, m)
    return OrbitTable(kind, n, q, mode, ent)


def gl_types(n: int, q: int) -> list[Type]:
    """All similarity types of n x n matrices over F_q."""
    polys = [f for d in range(1, n + 1) for f in irreducibles(q, d)]
    out: list[Type] = []

    def rec(k: int, left: int, acc: list):
        if left == 0:
            out.append(tuple(sorted(acc)))
            return
        for idx in range(k, len(polys)):
            f = polys[idx]
            d = len(f) - 1
            for s in range(1, left // d + 1):
                for lam in partitions(s):
                    rec(idx + 1, left - d * s, acc + [(f, tuple(lam))])

    rec(0, n, [])
    return out


def _encode(F: GF, A: np.ndarray) -> np.ndarray:
    m2 = A.shape[-1] * A.shape[-2]
    w = F.q ** np.arange(m2, dtype=np.int64)
    return A.reshape(A.shape[:-2] + (m2,)) @ w


def _decode_all(F: GF, m: int) -> np.ndarray:
    idx = np.arange(F.q ** (m * m), dtype=np.int64)
    digits = np.empty((idx.size, m * m), dtype=np.int64)
    for k in range(m * m):
        digits[:, k] = idx % F.q
        idx = idx // F.q
    return digits.reshape(-1, m, m)


def gl_generators(F: GF, m: int) -> list[Raw]:
    gens = []
    prim = next(a for a in F.nonzero() if len({F.pow(a, k) for k in range(1, F.q)}) == F.q - 1)
    for i in range(m):
        for j in range(m):
            if i != j:
                for k in range(F.e):
                    g = [list(r) for r in identity(m)]
                    g[i][j] = F.p ** k
                    gens.append(tuple(tuple(r) for r in g))
    if m:
        g = [list(r) for r in identity(m)]
        g[0][0] = prim
        gens.append(tuple(tuple(r) for r in g))
    return gens


def _gl_closure(F: GF, m: int) -> list:
    if m == 0:
        return [(OrbitLabel("GL", 0, ("nilp", Partition())), 1, ())]
    X = _decode_all(F, m)
    N = X.shape[0]
    rows, cols = [], []
    for g in gl_generators(F, m):
        gi = inverse(F, g)
        Y = np_matmul(F, np_matmul(F, np.array(g)[None], X), np.array(gi)[None])
        rows.append(np.arange(N))
        cols.append(_encode(F, Y))
    r, c = np.concatenate(rows), np.concatenate(cols)
    graph = coo_matrix((np.ones(r.size, dtype=np.int8), (r, c)), shape=(N, N))
    ncomp, comp = connected_components(graph, directed=True, connection="weak")
    sizes = np.bincount(comp, minlength=ncomp)
    first = np.full(ncomp, -1, dtype=np.int64)
    order = np.arange(N)[::-1]
    first[comp[order]] = order
    ent = []
    for k in range(ncomp):
        rep = tuple(tuple(int(x) for x in row) for row in X[first[k]])
        ent.append((classify_raw(F, rep, "GL"), int(sizes[k]), rep))
    labels = [e[0] for e in ent]
    if len(set(labels)) != len(labels):
        raise AssertionError("similarity type failed to separate GL orbits")
    return sorted(ent, key=lambda e: e[0])


def _u_closure(q: int, m: int) -> list:
    F = field(q * q)
    if m == 0:
        return [(OrbitLabel("U", 0, ("nilp", Partition())), 1, ())]
    elems = list(u_basis_params(m, q))
    index = {x: k for k, x in enumerate(elems)}
    G = unitary_group(m, q)
    seen = [False] * len(elems)
    ent = []
    for k, x in enumerate(elems):
        if seen[k]:
            continue
        orbit = set()
        for g in G:
            y = mul(F, mul(F, g, x), inverse(F, g))
            orbit.add(index[y])
        for o in orbit:
            seen[o] = True
        ent.append((classify_raw(F, x, "U"), len(orbit), x))
    labels = [e[0] for e in ent]
    if len(set(labels)) != len(labels):
        raise AssertionError("similarity type failed to separate U orbits")
    return sorted(ent, key=lambda e: e[0])


# -- branching counts ------------------------------------------------------

@lru_cache(maxsize=None)
def count_L_all(mu: tuple[int, ...], q: int) -> dict[Partition, int]:
    """lambda -> #{x : [[X_mu, x], [0, 0]] has Jordan type lambda}."""
    F = field(q)
    X = gl_nilpotent_rep(mu)
    n = len(X)
    out: dict[Partition, int] = {}
    for x in product(range(q), repeat=n):
        B = tuple(tuple(X[i]) + (x[i],) for i in range(n)) + ((0,) * (n + 1),)
        lam = Partition(jordan_type(F, B))
        out[lam] = out.get(lam, 0) + 1
    return out


def count_L(lam, mu, q: int, rep: Raw | None = None) -> int:
    lam, mu = Partition(lam), Partition(mu)
    if lam.size != mu.size + 1:
        raise ValueError("need |lambda| = |mu| + 1")
    if rep is not None:
        return _count_L_rep(lam, rep, q)
    return count_L_all(tuple(mu), q).get(lam, 0)


def _count_L_rep(lam: Partition, X: Raw, q: int) -> int:
    F = field(q)
    n = len(X)
    c = 0
    for x in product(range(q), repeat=n):
        B = tuple(tuple(X[i]) + (x[i],) for i in range(n)) + ((0,) * (n + 1),)
        if Partition(jordan_type(F, B)) == lam:
            c += 1
    return c


def k_border(F: GF, X: Raw, x: tuple[int, ...], y: int) -> Raw:
    """[[0, -x^* J, y], [0, X, x], [0, 0, 0]] of size m + 2."""
    m = len(X)
    xs = star_raw(F, tuple((v,) for v in x))  # 1 x m
    top = neg(F, mul(F, xs, J(m))) if m else ((),)
    rows = [(0,) + tuple(top[0]) + (y,)]
    for i in range(m):
        rows.append((0,) + tuple(X[i]) + (x[i],))
    rows.append((0,) * (m + 2))
    return tuple(rows)


@lru_cache(maxsize=None)
def count_K_all(mu: tuple[int, ...], q: int) -> dict[Partition, int]:
    F = field(q * q)
    return _count_K(F, u_nilpotent_rep(tuple(Partition(mu)), q), q)


def _count_K(F: GF, X: Raw, q: int) -> dict[Partition, int]:
    m = len(X)
    out: dict[Partition, int] = {}
    sk = skew_elements(F)
    for x in product(range(F.q), repeat=m):
        for y in sk:
            lam = Partition(jordan_type(F, k_border(F, X, x, y)))
            out[lam] = out.get(lam, 0) + 1
    return out


def count_K(lam, mu, q: int, rep: Raw | None = None) -> int:
    lam, mu = Partition(lam), Partition(mu)
    if lam.size != mu.size + 2 or mu.size % 2:
        raise ValueError("need |lambda| = |mu| + 2 with |mu| even")
    if rep is not None:
        return _count_K(field(q * q), rep, q).get(lam, 0)
    return count_K_all(tuple(mu), q).get(lam, 0)


def L_closed_form(lam, mu, q: int) -> Fraction:
    """q^{n - sum_{j>=k} m_j(mu)} (1 - q^{-m_{k-1}(mu)}), or without the factor for k = 1."""
    from .partitions import added_column, covers
    lam, mu = Partition(lam), Partition(mu)
    if not covers(mu, lam):
        return Fraction(0)
    n = mu.size
    k = added_column(mu, lam)
    e = n - sum(mu.mult(j) for j in range(k, (mu[0] if mu else 0) + 1))
    val = Fraction(q) ** e
    if k > 1:
        val *= 1 - Fraction(1, q ** mu.mult(k - 1))
    return val
