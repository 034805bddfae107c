"""Hall-Littlewood Q functions with exact coefficients.

Coefficients live either in the rational function field Q(t) (sympy's sparse
``field``; "symbolic" mode) or in :class:`fractions.Fraction` with t replaced by
a rational number ("evaluated" mode).  Symmetric functions of degree n are
stored as dicts ``Partition -> coefficient`` over the monomial basis m or the
power-sum basis p.

Q_lambda is computed from the tableau formula: the coefficient of m_mu is a
sum over chains of horizontal strips of sizes mu_1, mu_2, ... of products of
the strip weights phi.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Any

from sympy import QQ
from sympy.polys.fields import field as sym_field

from .partitions import Partition, double_covers, partitions

T_FIELD, T_SYM = sym_field("t", QQ)

BASES = ("power-sum", "monomial", "HL-Q")


def parse_t(t: Any):
    """Normalize a parameter: 't' -> the symbolic generator, else a Fraction."""
    if isinstance(t, str) and t.strip() in ("t", "sym"):
        return T_SYM
    if isinstance(t, str):
        return Fraction(t)
    if isinstance(t, int):
        return Fraction(t)
    return t


def _key(t) -> tuple:
    # lru_cache key that distinguishes Fraction(1, 3) from the symbolic t
    return ("sym", str(t)) if not isinstance(t, Fraction) else ("num", t)


_PARAMS: dict[tuple, Any] = {}


def _param(t):
    k = _key(t)
    _PARAMS.setdefault(k, t)
    return k


def _one(t):
    return t ** 0


def _zero(t):
    return t - t


@dataclass
class SymElement:
    """A homogeneous-or-not element of Sym in a named basis."""

    basis: str
    coeffs: dict[Partition, Any] = dc_field(default_factory=dict)
    t: Any = None

    def __post_init__(self):
        if self.basis not in BASES:
            raise ValueError(f"unknown basis {self.basis!r}")
        self.coeffs = {Partition(k): v for k, v in self.coeffs.items() if v != 0}

    def degrees(self) -> set[int]:
        return {sum(k) for k in self.coeffs}

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def __eq__(self, other) -> bool:
        if not isinstance(other, SymElement):
            return NotImplemented
        return self.basis == other.basis and self.coeffs == other.coeffs

    def __sub__(self, other: "SymElement") -> "SymElement":
        assert self.basis == other.basis
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out.get(k, 0) - v
        return SymElement(self.basis, out, self.t)

    def scale(self, c) -> "SymElement":
        return SymElement(self.basis, {k: c * v for k, v in self.coeffs.items()}, self.t)


# -- horizontal strips and the Q tableau formula --------------------------

def _strip_weight(lam: Partition, nu: Partition, t):
    """phi_{lam/nu}(t) for a horizontal strip lam/nu."""
    lc, nc = lam.conjugate(), nu.conjugate()
    theta = [lc[i] - (nc[i] if i < len(nc) else 0) for i in range(len(lc))] + [0]
    w = _one(t)
    for i in range(len(lc)):
        if theta[i] == 1 and theta[i + 1] == 0:
            w = w * (1 - t ** lam.mult(i + 1))
    return w


def _strips_below(lam: Partition, size: int):
    """All nu with lam/nu a horizontal strip of the given size."""
    rows = list(lam)
    out = []

    def rec(i: int, left: int, acc: list[int]):
        if i == len(rows):
            if left == 0:
                out.append(Partition(acc))
            return
        lo = rows[i + 1] if i + 1 < len(rows) else 0
        for v in range(rows[i], lo - 1, -1):
            take = rows[i] - v
            if take > left:
                break
            rec(i + 1, left - take, acc + [v])

    rec(0, size, [])
    return out


@lru_cache(maxsize=None)
def _tableau_sum(lam: Partition, weights: tuple[int, ...], tk: tuple):
    t = _PARAMS[tk]
    if not weights:
        return _one(t) if not lam else _zero(t)
    total = _zero(t)
    for nu in _strips_below(lam, weights[-1]):
        sub = _tableau_sum(nu, weights[:-1], tk)
        if sub != 0:
            total = total + sub * _strip_weight(lam, nu, t)
    return total


@lru_cache(maxsize=None)
def _q_mono(lam: Partition, tk: tuple) -> dict[Partition, Any]:
    out = {}
    for mu in partitions(lam.size):
        c = _tableau_sum(lam, tuple(mu), tk)
        if c != 0:
            out[mu] = c
    return out


def hl_Q_monomial(lam, t) -> dict[Partition, Any]:
    """Q_lambda(;t) as a dict over the monomial basis."""
    return dict(_q_mono(Partition(lam), _param(t)))


def hl_Q(lam, t, nvars: int | None = None, basis: str = "monomial") -> SymElement:
    lam = Partition(lam)
    t = parse_t(t)
    if nvars is None:
        nvars = lam.size
    if nvars < lam.size:
        raise ValueError(f"nvars={nvars} below |lambda|={lam.size}: unstable range")
    m = hl_Q_monomial(lam, t)
    if basis == "monomial":
        return SymElement("monomial", m, t)
    if basis == "power-sum":
        return SymElement("power-sum", m_to_p(m, lam.size, t), t)
    raise ValueError(basis)


def qtilde_sign(nu) -> int:
    return -1 if Partition(nu).n() % 2 else 1


def hl_Qtilde_monomial(lam, t) -> dict[Partition, Any]:
    """(-1)^{n(lambda)} Q_lambda(;-t) over the monomial basis."""
    s = qtilde_sign(lam)
    return {k: s * v for k, v in hl_Q_monomial(lam, -t).items()}


def hl_Qtilde(lam, t, nvars: int | None = None, basis: str = "monomial") -> SymElement:
    lam = Partition(lam)
    t = parse_t(t)
    q = hl_Q(lam, -t, nvars, basis)
    return q.scale(qtilde_sign(lam))


def b_lambda(lam: Partition, t):
    out = _one(t)
    for i in set(lam):
        for j in range(1, lam.mult(i) + 1):
            out = out * (1 - t ** j)
    return out


# -- change of basis --------------------------------------------------------

def mul_pk_m(k: int, f: dict[Partition, Any]) -> dict[Partition, Any]:
    """p_k * f with f in the monomial basis."""
    out: dict[Partition, Any] = {}
    for mu, c in f.items():
        for v in set(mu) | {0}:
            parts = list(mu)
            if v == 0:
                parts.append(k)
            else:
                parts[parts.index(v)] += k
            nu = Partition(parts)
            mult = nu.mult(v + k)
            out[nu] = out.get(nu, 0) + mult * c
    return {k_: v for k_, v in out.items() if v != 0}


@lru_cache(maxsize=None)
def p_in_m(rho: Partition) -> dict[Partition, int]:
    f: dict[Partition, int] = {Partition(): 1}
    for k in rho:
        f = mul_pk_m(k, f)
    return f


def m_to_p(f: dict[Partition, Any], n: int, t=None) -> dict[Partition, Any]:
    """Rewrite a degree-n element from the monomial into the power-sum basis."""
    rem = dict(f)
    out = {}
    for rho in reversed(partitions(n)):
        c = rem.get(rho, 0)
        if c == 0:
            continue
        lead = 1
        for i in set(rho):
            lead *= factorial(rho.mult(i))
        a = c / lead if not isinstance(c, int) else Fraction(c, lead)
        out[rho] = a
        for mu, r in p_in_m(rho).items():
            rem[mu] = rem.get(mu, 0) - a * r
    return out


def p_to_m(f: dict[Partition, Any]) -> dict[Partition, Any]:
    out: dict[Partition, Any] = {}
    for rho, c in f.items():
        for mu, r in p_in_m(rho).items():
            out[mu] = out.get(mu, 0) + c * r
    return {k: v for k, v in out.items() if v != 0}


def expand_in_Q(f: dict[Partition, Any], n: int, t, tilde: bool = False) -> dict[Partition, Any]:
    """Coefficients of a degree-n monomial-basis element in the Q (or Q-tilde) basis.

    Triangular solve: Q_lambda = b_lambda(t) m_lambda + lower terms in dominance
    order, and reverse lexicographic order refines dominance.
    """
    t = parse_t(t)
    rem = dict(f)
    out = {}
    for lam in partitions(n):
        c = rem.get(lam, 0)
        if c == 0:
            continue
        basis = hl_Qtilde_monomial(lam, t) if tilde else hl_Q_monomial(lam, t)
        lead = basis[lam]
        a = c / lead
        out[lam] = a
        for mu, r in basis.items():
            rem[mu] = rem.get(mu, 0) - a * r
    if any(v != 0 for v in rem.values()):
        raise ArithmeticError("triangular solve left a remainder")
    return out


# -- Pieri coefficients -----------------------------------------------------

@lru_cache(maxsize=None)
def _p1_pieri(mu: Partition, tk: tuple) -> dict[Partition, Any]:
    t = _PARAMS[tk]
    f = mul_pk_m(1, hl_Q_monomial(mu, t))
    return expand_in_Q(f, mu.size + 1, t)


def pieri_p1(lam, mu, t):
    """Coefficient of Q_lambda in p_1 * Q_mu, by basis expansion."""
    t = parse_t(t)
    lam, mu = Partition(lam), Partition(mu)
    if lam.size != mu.size + 1:
        raise ValueError("need |lambda| = |mu| + 1")
    return _p1_pieri(mu, _param(t)).get(lam, _zero(t))


def pieri_q1(lam, mu, t):
    """Coefficient of Q_lambda in Q_(1) * Q_mu = (1-t) p_1 * Q_mu."""
    t = parse_t(t)
    return (1 - t) * pieri_p1(lam, mu, t)


@lru_cache(maxsize=None)
def _p2_pieri(mu: Partition, tk: tuple) -> dict[Partition, Any]:
    t = _PARAMS[tk]
    f = mul_pk_m(2, hl_Qtilde_monomial(mu, t))
    f = {k: (1 - t * t) * v for k, v in f.items()}
    return expand_in_Q(f, mu.size + 2, t, tilde=True)


def xi_coeff(lam, mu, t):
    """Coefficient of Q~_lambda(;-t) in (1-t^2) p_2 * Q~_mu(;-t)."""
    t = parse_t(t)
    lam, mu = Partition(lam), Partition(mu)
    if lam.size != mu.size + 2:
        raise ValueError("need |lambda| = |mu| + 2")
    return _p2_pieri(mu, _param(t)).get(lam, _zero(t))


def xi_support_ok(lam, mu, t) -> bool:
    return (xi_coeff(lam, mu, t) != 0) == double_covers(mu, lam)


# -- JSON dump --------------------------------------------------------------

def coeff_str(c) -> str:
    if isinstance(c, Fraction):
        return f"{c.numerator}/{c.denominator}"
    if isinstance(c, int):
        return f"{c}/1"
    return str(c.as_expr())


def dump_expansion(lam, t) -> str:
    """JSON record of Q_lambda in the power-sum basis."""
    lam = Partition(lam)
    t = parse_t(t)
    p = m_to_p(hl_Q_monomial(lam, t), lam.size, t)
    doc = {
        "lambda": list(lam),
        "t": "sym" if not isinstance(t, Fraction) else f"{t.numerator}/{t.denominator}",
        "basis": "p",
        "terms": [{"mu": list(mu), "coeff": coeff_str(c)} for mu, c in sorted(p.items(), reverse=True)],
    }
    return json.dumps(doc, sort_keys=True)
