"""Dense matrices over the fields of :mod:`hlmackey.fields`.

Internally a matrix is a tuple of row tuples of integer field codes; this
"raw" form is hashable and is what the enumeration code passes around.  The
:class:`Matrix` dataclass wraps a raw matrix together with its field order for
the public API.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from .fields import GF, Poly, base_q, factor, field, pmul, ptrim

Raw = tuple[tuple[int, ...], ...]

KINDS = ("group-GL", "group-U", "alg-gl", "alg-u")


@dataclass(frozen=True)
class Matrix:
    """An immutable rows x cols matrix over F_q (entries are field codes)."""

    q: int
    data: Raw

    @classmethod
    def of(cls, q: int, rows: Iterable[Iterable[int]]) -> "Matrix":
        data = tuple(tuple(int(x) for x in r) for r in rows)
        if data and len({len(r) for r in data}) != 1:
            raise ValueError("ragged matrix")
        if any(not 0 <= x < q for r in data for x in r):
            raise ValueError(f"entry outside F_{q}")
        return cls(q, data)

    @property
    def field(self) -> GF:
        return field(self.q)

    @property
    def rows(self) -> int:
        return len(self.data)

    @property
    def cols(self) -> int:
        return len(self.data[0]) if self.data else 0

    @property
    def entries(self) -> tuple[int, ...]:
        return tuple(x for r in self.data for x in r)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        _same_field(self, other)
        return Matrix(self.q, mul(self.field, self.data, other.data))

    def __add__(self, other: "Matrix") -> "Matrix":
        _same_field(self, other)
        return Matrix(self.q, add(self.field, self.data, other.data))

    def __sub__(self, other: "Matrix") -> "Matrix":
        _same_field(self, other)
        return Matrix(self.q, sub(self.field, self.data, other.data))

    def __neg__(self) -> "Matrix":
        return Matrix(self.q, neg(self.field, self.data))

    @property
    def T(self) -> "Matrix":
        return Matrix(self.q, transpose(self.data))

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self.data]


def _same_field(a: Matrix, b: Matrix) -> None:
    if a.q != b.q:
        raise ValueError(f"field mismatch: F_{a.q} vs F_{b.q}")


# -- raw helpers -----------------------------------------------------------

def zeros(n: int, m: int | None = None) -> Raw:
    m = n if m is None else m
    return tuple((0,) * m for _ in range(n))


def identity(n: int) -> Raw:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def J(n: int) -> Raw:
    return tuple(tuple(1 if i + j == n - 1 else 0 for j in range(n)) for i in range(n))


def transpose(A: Raw) -> Raw:
    return tuple(zip(*A)) if A else ()


def add(F: GF, A: Raw, B: Raw) -> Raw:
    at = F.add_t
    return tuple(tuple(at[x][y] for x, y in zip(r, s)) for r, s in zip(A, B))


def sub(F: GF, A: Raw, B: Raw) -> Raw:
    st = F.sub_t
    return tuple(tuple(st[x][y] for x, y in zip(r, s)) for r, s in zip(A, B))


def neg(F: GF, A: Raw) -> Raw:
    nt = F.neg_t
    return tuple(tuple(nt[x] for x in r) for r in A)


def scale(F: GF, c: int, A: Raw) -> Raw:
    row = F.mul_t[c]
    return tuple(tuple(row[x] for x in r) for r in A)


def mul(F: GF, A: Raw, B: Raw) -> Raw:
    if not A:
        return ()
    Bt = transpose(B)
    if not Bt:
        return tuple(() for _ in A)
    mt, at = F.mul_t, F.add_t
    out = []
    for r in A:
        row = []
        for c in Bt:
            s = 0
            for x, y in zip(r, c):
                if x and y:
                    s = at[s][mt[x][y]]
            row.append(s)
        out.append(tuple(row))
    return tuple(out)


def mat_pow(F: GF, A: Raw, k: int) -> Raw:
    R = identity(len(A))
    for _ in range(k):
        R = mul(F, R, A)
    return R


def is_zero(A: Raw) -> bool:
    return not any(any(r) for r in A)


def rref(F: GF, A: Raw) -> tuple[list[list[int]], list[int]]:
    """Reduced row echelon form and pivot columns."""
    M = [list(r) for r in A]
    rows = len(M)
    cols = len(M[0]) if M else 0
    piv: list[int] = []
    r = 0
    mt, st = F.mul_t, F.sub_t
    for c in range(cols):
        k = next((i for i in range(r, rows) if M[i][c]), None)
        if k is None:
            continue
        M[r], M[k] = M[k], M[r]
        inv = F.inv_t[M[r][c]]
        M[r] = [mt[inv][x] for x in M[r]]
        for i in range(rows):
            if i != r and M[i][c]:
                f = M[i][c]
                frow = mt[f]
                M[i] = [st[x][frow[y]] for x, y in zip(M[i], M[r])]
        piv.append(c)
        r += 1
        if r == rows:
            break
    return M, piv


def rank(F: GF, A: Raw) -> int:
    return len(rref(F, A)[1]) if A and A[0] else 0


def nullspace(F: GF, A: Raw) -> list[tuple[int, ...]]:
    """Basis of {v : A v = 0} as a list of column vectors (tuples)."""
    cols = len(A[0]) if A else 0
    M, piv = rref(F, A)
    free = [c for c in range(cols) if c not in piv]
    basis = []
    for f in free:
        v = [0] * cols
        v[f] = 1
        for r, p in enumerate(piv):
            v[p] = F.neg_t[M[r][f]]
        basis.append(tuple(v))
    return basis


def inverse(F: GF, A: Raw) -> Raw:
    n = len(A)
    aug = tuple(tuple(r) + identity(n)[i] for i, r in enumerate(A))
    M, piv = rref(F, aug)
    if piv[:n] != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    return tuple(tuple(M[i][n:]) for i in range(n))


def is_invertible(F: GF, A: Raw) -> bool:
    return rank(F, A) == len(A)


def solve(F: GF, A: Raw, b: Sequence[int]) -> tuple[int, ...] | None:
    """One solution of A x = b, or None when inconsistent."""
    cols = len(A[0])
    aug = tuple(tuple(r) + (b[i],) for i, r in enumerate(A))
    M, piv = rref(F, aug)
    if cols in piv:
        return None
    x = [0] * cols
    for r, p in enumerate(piv):
        x[p] = M[r][cols]
    return tuple(x)


# -- polynomial data -------------------------------------------------------

def charpoly(F: GF, A: Raw) -> Poly:
    """Monic characteristic polynomial det(xI - A), low degree first."""
    n = len(A)
    if n == 0:
        return (1,)
    H = [list(r) for r in A]
    mt, st, at = F.mul_t, F.sub_t, F.add_t
    # reduce to upper Hessenberg form by similarity
    for c in range(n - 2):
        k = next((i for i in range(c + 1, n) if H[i][c]), None)
        if k is None:
            continue
        if k != c + 1:
            H[k], H[c + 1] = H[c + 1], H[k]
            for row in H:
                row[k], row[c + 1] = row[c + 1], row[k]
        inv = F.inv_t[H[c + 1][c]]
        for i in range(c + 2, n):
            if H[i][c]:
                f = mt[H[i][c]][inv]
                H[i] = [st[x][mt[f][y]] for x, y in zip(H[i], H[c + 1])]
                for row in H:
                    row[c + 1] = at[row[c + 1]][mt[f][row[i]]]
    # recurrence for leading principal minors of xI - H
    polys: list[Poly] = [(1,)]
    for m in range(1, n + 1):
        cur = pmul(F, (F.neg_t[H[m - 1][m - 1]], 1), polys[m - 1])
        prod = 1
        for i in range(m - 1, 0, -1):
            prod = mt[prod][H[i][i - 1]]
            if not prod:
                break
            c = mt[prod][H[i - 1][m - 1]]
            term = pmul(F, (c,), polys[i - 1])
            cur = tuple(ptrim(st[x][y] for x, y in zip(cur + (0,) * (len(term) - len(cur)),
                                                       term + (0,) * (len(cur) - len(term)))))
        polys.append(cur)
    return polys[n]


def poly_at(F: GF, f: Poly, A: Raw) -> Raw:
    """Evaluate f at the square matrix A (Horner)."""
    n = len(A)
    R = zeros(n)
    I = identity(n)
    for c in reversed(f):
        R = add(F, mul(F, R, A), scale(F, c, I))
    return R


@lru_cache(maxsize=None)
def _factor_cached(q: int, f: Poly) -> tuple[tuple[Poly, int], ...]:
    return tuple(factor(field(q), f))


def conjugate_partition(parts: Sequence[int]) -> tuple[int, ...]:
    if not parts:
        return ()
    return tuple(sum(1 for p in parts if p > k) for k in range(max(parts)))


def jordan_type(F: GF, N: Raw) -> tuple[int, ...]:
    """Partition of Jordan block sizes of a nilpotent matrix."""
    n = len(N)
    ranks = [n]
    P = identity(n)
    for _ in range(n):
        P = mul(F, P, N)
        ranks.append(rank(F, P))
        if ranks[-1] == 0:
            break
    if ranks[-1] != 0:
        raise ValueError("not nilpotent")
    # conjugate partition: number of blocks of size >= k is rank(N^{k-1}) - rank(N^k)
    conj = [ranks[k - 1] - ranks[k] for k in range(1, len(ranks))]
    return conjugate_partition([c for c in conj if c])


Type = tuple[tuple[Poly, tuple[int, ...]], ...]


def similarity_type(F: GF, A: Raw) -> Type:
    """Canonical GL-conjugacy invariant: ((irreducible f, partition), ...).

    For each irreducible factor f of degree d, the partition lambda records the
    sizes of the elementary divisors f^{lambda_i}; its conjugate is read off from
    nullities of f(A)^k.
    """
    n = len(A)
    out = []
    for f, m in _factor_cached(F.q, charpoly(F, A)):
        d = len(f) - 1
        if m == 1:
            out.append((f, (1,)))
            continue
        B = poly_at(F, f, A)
        P = identity(n)
        prev = 0
        conj = []
        for _ in range(m):
            P = mul(F, P, B)
            nul = n - rank(F, P)
            if nul == prev:
                break
            conj.append((nul - prev) // d)
            prev = nul
        out.append((f, conjugate_partition(conj)))
    return tuple(out)


def is_nilpotent_type(t: Type) -> bool:
    return len(t) <= 1 and all(f == (0, 1) for f, _ in t)


# -- unitary structure -----------------------------------------------------

def frobenius_raw(F: GF, A: Raw) -> Raw:
    q = base_q(F)
    table = [F.pow(a, q) for a in range(F.q)]
    return tuple(tuple(table[x] for x in r) for r in A)


def star_raw(F: GF, A: Raw) -> Raw:
    return transpose(frobenius_raw(F, A))


def frobenius_entrywise(A: Matrix, q: int | None = None) -> Matrix:
    """Entrywise q-th power A^[q] for A over F_{q^2}."""
    F = A.field
    if q is not None and q * q != F.q:
        raise ValueError(f"F_{F.q} is not the quadratic extension of F_{q}")
    return Matrix(A.q, frobenius_raw(F, A.data))


def star(A: Matrix) -> Matrix:
    """Conjugate transpose (A^[q])^T."""
    return Matrix(A.q, star_raw(A.field, A.data))


def anti_diagonal_J(m: int, q: int = 9) -> Matrix:
    if m < 0:
        raise ValueError("negative size")
    return Matrix(q, J(m))


def omega_raw(F: GF, X: Raw) -> Raw:
    """X -> -J X^* J."""
    n = len(X)
    Jn = J(n)
    return neg(F, mul(F, mul(F, Jn, star_raw(F, X)), Jn))


def in_u_raw(F: GF, X: Raw) -> bool:
    n = len(X)
    Jn = J(n)
    return is_zero(add(F, mul(F, star_raw(F, X), Jn), mul(F, Jn, X)))


def in_U_raw(F: GF, g: Raw) -> bool:
    n = len(g)
    Jn = J(n)
    return mul(F, mul(F, star_raw(F, g), Jn), g) == Jn


def membership(X: Matrix, kind: str) -> bool:
    """Membership of X in GL, U, gl or u (conditions use J of matching size)."""
    if kind not in KINDS:
        raise ValueError(f"unknown kind {kind!r}")
    if X.rows != X.cols:
        raise ValueError("membership needs a square matrix")
    F = X.field
    if kind in ("group-U", "alg-u"):
        if X.rows % 2:
            raise ValueError("unitary kinds need even size")
        base_q(F)
    if kind == "alg-gl":
        return True
    if kind == "group-GL":
        return is_invertible(F, X.data)
    if kind == "group-U":
        return in_U_raw(F, X.data)
    return in_u_raw(F, X.data)


# -- batched numpy arithmetic ---------------------------------------------

def np_matmul(F: GF, A: np.ndarray, B: np.ndarray) -> np.ndarray:
    """Batched product over F using the lookup tables.  Shapes (..., n, k) @ (..., k, m)."""
    k = A.shape[-1]
    acc = F.MUL[A[..., :, 0, None], B[..., None, 0, :]]
    for l in range(1, k):
        acc = F.ADD[acc, F.MUL[A[..., :, l, None], B[..., None, l, :]]]
    return acc


def to_np(A: Raw) -> np.ndarray:
    return np.array(A, dtype=np.int64).reshape(len(A), len(A[0]) if A else 0)


def from_np(a: np.ndarray) -> Raw:
    return tuple(tuple(int(x) for x in r) for r in a.tolist())
