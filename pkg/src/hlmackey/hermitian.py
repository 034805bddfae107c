"""Hermitian forms over F_{q^2}: adapted bases, isotropic subspaces, u(m).

The form attached to a Hermitian matrix H is h(u, v) = u^* H v (semilinear in
the first slot).  The standard form uses H = J_m.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import product
from typing import Sequence

from .fields import GF, base_q, conj, field, skew_elements
from .matrices import J, Raw, mul, nullspace, solve, star_raw, transpose

Vec = tuple[int, ...]


def hform(F: GF, H: Raw, u: Vec, v: Vec) -> int:
    q = base_q(F)
    s = 0
    for i, ui in enumerate(u):
        if ui:
            ci = F.pow(ui, q)
            row = H[i]
            for j, vj in enumerate(v):
                if vj and row[j]:
                    s = F.add(s, F.mul(ci, F.mul(row[j], vj)))
    return s


def _functional_row(F: GF, H: Raw, u: Vec) -> list[int]:
    """Row vector r with r . v = h(u, v)."""
    q = base_q(F)
    cu = [F.pow(x, q) for x in u]
    m = len(H)
    out = [0] * m
    for i in range(m):
        if cu[i]:
            for j in range(m):
                out[j] = F.add(out[j], F.mul(cu[i], H[i][j]))
    return out


def _vadd(F, u, v):
    return tuple(F.add(a, b) for a, b in zip(u, v))


def _vscale(F, c, u):
    return tuple(F.mul(c, a) for a in u)


def _trace_preimage(F: GF, target: int) -> int:
    q = base_q(F)
    for lam in F.elements():
        if F.add(lam, F.pow(lam, q)) == target:
            return lam
    raise ArithmeticError("trace not surjective")


def _norm_preimage(F: GF, target: int) -> int:
    q = base_q(F)
    for g in F.nonzero():
        if F.pow(g, q + 1) == target:
            return g
    raise ArithmeticError("norm not surjective")


def _orth_complement(F: GF, H: Raw, vecs: Sequence[Vec], ambient: Sequence[Vec]) -> list[Vec]:
    """Basis of {v in span(ambient) : h(u, v) = 0 for u in vecs}."""
    if not vecs:
        return list(ambient)
    m = len(H)
    A = transpose(tuple(ambient))  # m x k, columns = ambient basis
    rows = []
    for u in vecs:
        r = _functional_row(F, H, u)
        rows.append(tuple(_dot(F, r, [A[i][c] for i in range(m)]) for c in range(len(ambient))))
    coeffs = nullspace(F, tuple(rows))
    return [tuple(_dot(F, A[i], c) for i in range(m)) for c in coeffs]


def _dot(F, a, b):
    s = 0
    for x, y in zip(a, b):
        if x and y:
            s = F.add(s, F.mul(x, y))
    return s


def _find_isotropic(F: GF, H: Raw, basis: Sequence[Vec]) -> Vec:
    """Nonzero isotropic vector in span(basis); needs dim >= 2 and nondegenerate."""
    for b in basis:
        if hform(F, H, b, b) == 0:
            return b
    # orthogonalize two anisotropic vectors x, y and solve N(g) = -h(x,x)/h(y,y)
    x = basis[0]
    rest = _orth_complement(F, H, [x], basis)
    y = next((v for v in _anisotropic_candidates(F, H, rest)), None)
    if y is None:
        # everything orthogonal to x is isotropic
        return next(v for v in rest if any(v))
    a, b = hform(F, H, x, x), hform(F, H, y, y)
    g = _norm_preimage(F, F.neg(F.div(a, b)))
    return _vadd(F, x, _vscale(F, g, y))


def _anisotropic_candidates(F, H, basis):
    for b in basis:
        if hform(F, H, b, b):
            yield b
    for u, v in product(basis, repeat=2):
        if u is v:
            continue
        for a in F.nonzero():
            w = _vadd(F, u, _vscale(F, a, v))
            if hform(F, H, w, w):
                yield w


def _partner(F: GF, H: Raw, v: Vec, others: Sequence[Vec], space: Sequence[Vec]) -> Vec:
    """Isotropic w in span(space) with h(v, w) = 1 and h(o, w) = 0 for o in others."""
    m = len(H)
    A = transpose(tuple(space))
    rows, rhs = [], []
    for u, target in [(v, 1)] + [(o, 0) for o in others]:
        r = _functional_row(F, H, u)
        rows.append(tuple(_dot(F, r, [A[i][c] for i in range(m)]) for c in range(len(space))))
        rhs.append(target)
    c = solve(F, tuple(rows), rhs)
    if c is None:
        raise ArithmeticError("no partner: form degenerate on the given space")
    w = tuple(_dot(F, A[i], c) for i in range(m))
    lam = _trace_preimage(F, F.neg(hform(F, H, w, w)))
    return _vadd(F, w, _vscale(F, lam, v))


def adapted_basis(F: GF, H: Raw, first: Sequence[Vec] = ()) -> Raw:
    """Matrix C with C^* H C = J_m whose leading columns are ``first``.

    ``first`` must span a totally isotropic subspace (linearly independent).
    """
    m = len(H)
    std = [tuple(1 if k == i else 0 for k in range(m)) for i in range(m)]
    return transpose(tuple(_adapted(F, H, list(first), std)))


def _adapted(F: GF, H: Raw, first: list[Vec], space: list[Vec]) -> list[Vec]:
    dim = len(space)
    if dim == 0:
        return []
    if dim == 1:
        x = space[0]
        a = hform(F, H, x, x)
        return [_vscale(F, _norm_preimage(F, F.inv(a)), x)]
    if not first:
        first = [_find_isotropic(F, H, space)]
    partners: list[Vec] = []
    for k, v in enumerate(first):
        others = first[:k] + first[k + 1:] + partners
        partners.append(_partner(F, H, v, others, space))
    rest = _orth_complement(F, H, first + partners, space)
    middle = _adapted(F, H, [], rest)
    return list(first) + middle + list(reversed(partners))


# -- the Lie algebra u(m) and the group U(m) --------------------------------

def u_basis_params(m: int, q: int):
    """Iterate u(m, F_{q^2}) as X = J S with S skew-Hermitian."""
    F = field(q * q)
    sk = skew_elements(F)
    offd = [(i, j) for i in range(m) for j in range(i + 1, m)]
    Jm = J(m)
    for diag in product(sk, repeat=m):
        for vals in product(range(F.q), repeat=len(offd)):
            S = [[0] * m for _ in range(m)]
            for i in range(m):
                S[i][i] = diag[i]
            for (i, j), v in zip(offd, vals):
                S[i][j] = v
                S[j][i] = F.neg(conj(F, v))
            yield mul(F, Jm, tuple(tuple(r) for r in S))


@lru_cache(maxsize=None)
def unitary_group(m: int, q: int) -> tuple[Raw, ...]:
    """All of U(m, F_{q^2}) by brute force (only tiny m)."""
    F = field(q * q)
    if F.q ** (m * m) > 10**6:
        raise ValueError("unitary group too large to enumerate")
    Jm = J(m)
    out = []
    for flat in product(range(F.q), repeat=m * m):
        g = tuple(tuple(flat[r * m:(r + 1) * m]) for r in range(m))
        if mul(F, mul(F, star_raw(F, g), Jm), g) == Jm:
            out.append(g)
    return tuple(out)


def unitary_order(m: int, q: int) -> int:
    """|U(m, F_{q^2})| = q^{m(m-1)/2} prod_{k=1}^m (q^k - (-1)^k)."""
    out = q ** (m * (m - 1) // 2)
    for k in range(1, m + 1):
        out *= q**k - (-1) ** k
    return out


def gl_order(n: int, q: int) -> int:
    out = 1
    for k in range(n):
        out *= q**n - q**k
    return out


def isotropic_subspaces(F: GF, m: int, i: int) -> list[Raw]:
    """All totally isotropic i-dim subspaces of (F^m, J_m), as RREF bases (i x m)."""
    Jm = J(m)
    out = []
    for basis in subspaces(F, m, i):
        if all(hform(F, Jm, u, v) == 0 for u in basis for v in basis):
            out.append(basis)
    return out


def subspaces(F: GF, m: int, i: int) -> list[Raw]:
    """All i-dimensional subspaces of F^m as RREF row bases."""
    out = []
    for piv in _combinations(m, i):
        free = [(r, c) for r in range(i) for c in range(piv[r] + 1, m) if c not in piv]
        for vals in product(range(F.q), repeat=len(free)):
            M = [[0] * m for _ in range(i)]
            for r, c in enumerate(piv):
                M[r][c] = 1
            for (r, c), v in zip(free, vals):
                M[r][c] = v
            out.append(tuple(tuple(r) for r in M))
    return out


def _combinations(m, i):
    from itertools import combinations
    return list(combinations(range(m), i))
