"""Maximal parabolics, parabolic restriction/induction and the Mackey formula.

Two settings are supported:

``GL``  G = GL(n, F_q) acting on gl(n, F_q), parabolic P_{i,j} of block-upper
        matrices for n = i + j.
``U``   G = U(2n, F_{q^2}) acting on u(2n, F_{q^2}), parabolic of 3 x 3 block
        upper matrices for 2n = i + 2j + i, Levi diag(A, B, -J A^* J).

Invariant functions are dicts keyed by orbit labels (pairs of labels on a
Levi).  Restriction and induction are evaluated straight from their
definitions: an average over the radical and a sum over coset
representatives of G/P.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from functools import lru_cache
from itertools import permutations, product
from typing import Mapping

import numpy as np

from .fields import conj, field, skew_elements
from .hermitian import (
    adapted_basis, gl_order, isotropic_subspaces, subspaces, u_basis_params, unitary_group, unitary_order,
)
from .matrices import J, Raw, add, identity, inverse, is_invertible, mul, neg, np_matmul, star_raw, transpose
from .orbits import InfeasibleError, OrbitLabel, classify_raw, enumerate_orbits
from .partitions import Partition

Label2 = tuple[OrbitLabel, OrbitLabel]
SETTINGS = ("GL", "U")


@dataclass
class InvariantFn:
    """An invariant function stored per orbit.  ``domain`` names the algebra."""

    domain: tuple
    values: dict = dc_field(default_factory=dict)

    def __call__(self, label) -> Fraction:
        return self.values.get(label, Fraction(0))

    def nonzero(self) -> dict:
        return {k: v for k, v in self.values.items() if v != 0}


def _np(A: Raw, m: int) -> np.ndarray:
    return np.array(A, dtype=np.int64).reshape(m, m)


def _raw(a: np.ndarray) -> Raw:
    return tuple(tuple(int(x) for x in r) for r in a.tolist())


class ParabolicData:
    """Levi/radical data of one maximal parabolic.

    ``n`` is the GL size, or half the unitary size; ``(i, j)`` with i + j = n.
    """

    def __init__(self, setting: str, n: int, i: int, j: int, q: int):
        setting = setting.upper()
        if setting not in SETTINGS:
            raise ValueError(f"unknown setting {setting!r}")
        if i < 0 or j < 0 or i + j != n:
            raise ValueError(f"bad split ({i},{j}) of {n}")
        self.setting, self.n, self.i, self.j, self.q = setting, n, i, j, q
        if setting == "GL":
            self.F = field(q)
            self.m = n
            self.s = j                      # size of the second Levi block
            self.kind2 = "GL"
            self.fq1 = q                    # field order of the gl-factor
        else:
            if q % 2 == 0:
                raise ValueError("unitary setting needs odd q")
            self.F = field(q * q)
            self.m = 2 * n
            self.s = 2 * j
            self.kind2 = "U"
            self.fq1 = q * q
            if j > 1 and i > 0:
                raise InfeasibleError("unitary Levi factors are supported up to u(2)")
        self.kind = setting
        self.trivial = i == 0 or (setting == "GL" and j == 0)
        self._R: dict | None = None
        self._I: dict = {}
        self.ambient_reps: dict[OrbitLabel, Raw] = {}

    # -- shapes --------------------------------------------------------
    def zero_mask(self) -> np.ndarray:
        """Boolean m x m mask of positions forced to vanish on the parabolic algebra."""
        m, i, s = self.m, self.i, self.s
        M = np.zeros((m, m), dtype=bool)
        M[i:, :i] = True
        if self.setting == "U":
            M[i + s:, :i + s] = True
        return M

    def levi_mask(self) -> np.ndarray:
        m, i, s = self.m, self.i, self.s
        M = np.zeros((m, m), dtype=bool)
        M[:i, :i] = True
        M[i:i + s, i:i + s] = True
        if self.setting == "U":
            M[i + s:, i + s:] = True
        return M

    def radical_mask(self) -> np.ndarray:
        return ~(self.zero_mask() | self.levi_mask())

    def in_parabolic(self, X: Raw) -> bool:
        zm = self.zero_mask()
        return all(X[r][c] == 0 for r, c in zip(*np.nonzero(zm)))

    def embed(self, A: Raw, B: Raw) -> Raw:
        F, m, i, s = self.F, self.m, self.i, self.s
        M = [[0] * m for _ in range(m)]
        for r in range(i):
            M[r][:i] = list(A[r])
        for r in range(s):
            M[i + r][i:i + s] = list(B[r])
        if self.setting == "U" and i:
            Ap = neg(F, mul(F, mul(F, J(i), star_raw(F, A)), J(i)))
            for r in range(i):
                M[i + s + r][i + s:] = list(Ap[r])
        return tuple(tuple(r) for r in M)

    def project(self, X: Raw) -> tuple[Raw, Raw]:
        i, s = self.i, self.s
        A = tuple(tuple(X[r][:i]) for r in range(i))
        B = tuple(tuple(X[i + r][i:i + s]) for r in range(s))
        return A, B

    def levi_label(self, X: Raw) -> Label2:
        A, B = self.project(X)
        return (classify_raw(self.F, A, "GL"), classify_raw(self.F, B, self.kind2))

    # -- Levi orbits ---------------------------------------------------
    @property
    def factor_tables(self):
        t1 = enumerate_orbits("GL", self.i, self.fq1, "types")
        if self.setting == "GL":
            t2 = enumerate_orbits("GL", self.j, self.q, "types")
        else:
            t2 = enumerate_orbits("U", self.j, self.q, "exhaustive")
        return t1, t2

    def levi_orbits(self) -> list[tuple[Label2, int, Raw]]:
        t1, t2 = self.factor_tables
        out = []
        for (l1, s1, r1), (l2, s2, r2) in product(t1.entries, t2.entries):
            out.append(((l1, l2), s1 * s2, self.embed(r1, r2)))
        return out

    def levi_labels(self) -> list[Label2]:
        return [e[0] for e in self.levi_orbits()]

    # -- orders ----------------------------------------------------------
    @property
    def group_order(self) -> int:
        return gl_order(self.n, self.q) if self.setting == "GL" else unitary_order(2 * self.n, self.q)

    @property
    def levi_group_order(self) -> int:
        if self.setting == "GL":
            return gl_order(self.i, self.q) * gl_order(self.j, self.q)
        return gl_order(self.i, self.q * self.q) * unitary_order(2 * self.j, self.q)

    @property
    def parabolic_order(self) -> int:
        return self.group_order // len(self.transversal)

    # -- radical -----------------------------------------------------------
    @property
    def radical(self) -> list[Raw]:
        if not hasattr(self, "_radical"):
            self._radical = list(self._radical_elements())
        return self._radical

    def _radical_elements(self):
        F, m, i, s = self.F, self.m, self.i, self.s
        if self.setting == "GL":
            for vals in product(range(F.q), repeat=i * s):
                M = [[0] * m for _ in range(m)]
                for k, v in enumerate(vals):
                    M[k // s][i + k % s] = v
                yield tuple(tuple(r) for r in M)
            return
        sk = skew_elements(F)
        offd = [(a, b) for a in range(i) for b in range(a + 1, i)]
        for cvals in product(range(F.q), repeat=i * s):
            C = tuple(tuple(cvals[r * s:(r + 1) * s]) for r in range(i))
            Cp = neg(F, mul(F, mul(F, J(s), star_raw(F, C)), J(i))) if s else ()
            for dg in product(sk, repeat=i):
                for ov in product(range(F.q), repeat=len(offd)):
                    S = [[0] * i for _ in range(i)]
                    for a in range(i):
                        S[a][a] = dg[a]
                    for (a, b), v in zip(offd, ov):
                        S[a][b] = v
                        S[b][a] = F.neg(conj(F, v))
                    D = mul(F, J(i), tuple(tuple(r) for r in S))
                    M = [[0] * m for _ in range(m)]
                    for r in range(i):
                        M[r][i:i + s] = list(C[r])
                        M[r][i + s:] = list(D[r])
                    for r in range(s):
                        M[i + r][i + s:] = list(Cp[r])
                    yield tuple(tuple(r) for r in M)

    # -- coset transversal -----------------------------------------------
    @property
    def transversal(self) -> list[Raw]:
        if not hasattr(self, "_transversal"):
            self._transversal = self._make_transversal()
        return self._transversal

    def _make_transversal(self) -> list[Raw]:
        F, m, i = self.F, self.m, self.i
        if self.trivial:
            return [identity(m)]
        out = []
        if self.setting == "GL":
            for V in subspaces(F, m, i):
                piv = [next(c for c in range(m) if row[c]) for row in V]
                cols = list(V) + [tuple(1 if k == c else 0 for k in range(m)) for c in range(m) if c not in piv]
                out.append(transpose(tuple(cols)))
        else:
            for V in isotropic_subspaces(F, m, i):
                out.append(adapted_basis(F, J(m), list(V)))
        return out

    # -- restriction -----------------------------------------------------
    def restriction_counts(self) -> dict[Label2, Counter]:
        """R[y][lambda] = #{Z in radical : Y_y + Z lies in orbit lambda}."""
        if self._R is None:
            F = self.F
            R = {}
            for y, _, Y in self.levi_orbits():
                c = Counter()
                for Z in self.radical:
                    X = add(F, Y, Z)
                    lab = classify_raw(F, X, self.kind)
                    c[lab] += 1
                    self.ambient_reps.setdefault(lab, X)
                R[y] = c
            self._R = R
        return self._R

    # -- induction ---------------------------------------------------------
    def induction_counts(self, lab: OrbitLabel, rep: Raw) -> Counter:
        """I[lambda][y] = #{g in [G/P] : g^-1 X g in P with Levi part in orbit y}."""
        if lab in self._I:
            return self._I[lab]
        F, m = self.F, self.m
        if not hasattr(self, "_tarr"):
            self._tarr = np.array([_np(g, m) for g in self.transversal])
            self._tinv = np.array([_np(inverse(F, g), m) for g in self.transversal])
        X = _np(rep, m)
        Y = np_matmul(F, np_matmul(F, self._tinv, X[None]), self._tarr)
        zm = self.zero_mask()
        ok = ~(Y[:, zm] != 0).any(axis=1)
        c = Counter()
        for k in np.nonzero(ok)[0]:
            c[self.levi_label(_raw(Y[k]))] += 1
        self._I[lab] = c
        return c


@lru_cache(maxsize=None)
def build_parabolic(setting: str, n: int, i: int, j: int, q: int) -> ParabolicData:
    return ParabolicData(setting, n, i, j, q)


def _values(f) -> Mapping:
    return f.values if isinstance(f, InvariantFn) else f


def par_restrict(psi, P: ParabolicData) -> InvariantFn:
    """(1/|U|) sum_Z Psi(Y + Z) on each Levi orbit."""
    if isinstance(psi, InvariantFn) and psi.domain != ambient_domain(P):
        raise ValueError(f"domain mismatch: {psi.domain} vs {ambient_domain(P)}")
    vals = _values(psi)
    if P.trivial:
        return InvariantFn(levi_domain(P), {_trivial_pair(P, lab): Fraction(v) for lab, v in vals.items()})
    R = P.restriction_counts()
    size = len(P.radical)
    out = {}
    for y, c in R.items():
        out[y] = sum((Fraction(k) * vals.get(lab, 0) for lab, k in c.items()), Fraction(0)) / size
    return InvariantFn(levi_domain(P), out)


def par_induce(phi, P: ParabolicData, targets: Mapping[OrbitLabel, Raw] | None = None) -> InvariantFn:
    """sum over [G/P] of the Levi-projected extension of Phi, on each target orbit."""
    if isinstance(phi, InvariantFn) and phi.domain != levi_domain(P):
        raise ValueError(f"domain mismatch: {phi.domain} vs {levi_domain(P)}")
    vals = _values(phi)
    if P.trivial:
        return InvariantFn(ambient_domain(P), {_trivial_unpair(P, y): Fraction(v) for y, v in vals.items()})
    if targets is None:
        targets = ambient_orbit_reps(P.setting, P.n, P.q)
    out = {}
    for lab, rep in targets.items():
        c = P.induction_counts(lab, rep)
        out[lab] = sum((Fraction(k) * vals.get(y, 0) for y, k in c.items()), Fraction(0))
    return InvariantFn(ambient_domain(P), out)


def _empty(kind: str) -> OrbitLabel:
    return OrbitLabel(kind, 0, ("nilp", Partition()))


def _trivial_pair(P: ParabolicData, lab: OrbitLabel) -> Label2:
    if P.i == 0:
        return (_empty("GL"), lab)
    return (lab, _empty(P.kind2))


def _trivial_unpair(P: ParabolicData, y: Label2) -> OrbitLabel:
    return y[1] if P.i == 0 else y[0]


def ambient_domain(P: ParabolicData) -> tuple:
    return ("G", P.setting, P.n, P.q)


def levi_domain(P: ParabolicData) -> tuple:
    return ("L", P.setting, P.n, P.i, P.j, P.q)


# -- ambient orbit universe -------------------------------------------------

@lru_cache(maxsize=None)
def ambient_orbits(setting: str, n: int, q: int) -> tuple[tuple[OrbitLabel, int | None, Raw], ...]:
    """Orbits used as the basis of C(G): (label, size, representative).

    GL: all orbits.  U with 2n <= 2: all orbits.  U with 2n = 4: the orbits
    meeting a proper parabolic (every orbit outside this set restricts to zero
    on all proper Levis); sizes from the double-counting identity
    |O| I[O][y] = |G/P| |O_y| R[y][O].
    """
    setting = setting.upper()
    if setting == "GL":
        T = enumerate_orbits("GL", n, q, "types")
        return tuple(T.entries)
    if n <= 1:
        return tuple(enumerate_orbits("U", n, q, "exhaustive").entries)
    if n > 2:
        raise InfeasibleError("unitary orbit universe supported up to u(4)")
    sizes: dict[OrbitLabel, Fraction] = {}
    reps: dict[OrbitLabel, Raw] = {}
    for i in range(1, n + 1):
        P = build_parabolic("U", n, i, n - i, q)
        R = P.restriction_counts()
        lsize = {y: s for y, s, _ in P.levi_orbits()}
        for y, c in R.items():
            for lab, k in c.items():
                reps.setdefault(lab, P.ambient_reps[lab])
                I = P.induction_counts(lab, P.ambient_reps[lab])
                val = Fraction(len(P.transversal) * lsize[y] * k, I[y])
                if sizes.setdefault(lab, val) != val:
                    raise AssertionError(f"inconsistent orbit size for {lab}")
    return tuple(sorted(((lab, int(sizes[lab]), reps[lab]) for lab in sizes), key=lambda e: e[0]))


def ambient_orbit_reps(setting: str, n: int, q: int) -> dict[OrbitLabel, Raw]:
    return {lab: rep for lab, _, rep in ambient_orbits(setting, n, q)}


# -- pairings ----------------------------------------------------------------

def pair_ambient(f, g, setting: str, n: int, q: int) -> Fraction:
    """|G|^-1 sum_X f(X) g(X)."""
    fv, gv = _values(f), _values(g)
    order = gl_order(n, q) if setting == "GL" else unitary_order(2 * n, q)
    tot = Fraction(0)
    for lab, size, _ in ambient_orbits(setting, n, q):
        tot += size * Fraction(fv.get(lab, 0)) * gv.get(lab, 0)
    return tot / order


def pair_levi(f, g, P: ParabolicData) -> Fraction:
    """|L|^-1 sum_Y f(Y) g(Y)."""
    fv, gv = _values(f), _values(g)
    tot = Fraction(0)
    for y, size, _ in P.levi_orbits():
        tot += size * Fraction(fv.get(y, 0)) * gv.get(y, 0)
    return tot / P.levi_group_order


# -- Weyl group and Mackey formula ------------------------------------------

def weyl_group(setting: str, n: int) -> list[tuple[int, ...]]:
    """Permutations sigma (as tuples) whose matrices lie in G, normalizing the torus."""
    m = n if setting == "GL" else 2 * n
    out = []
    for s in permutations(range(m)):
        if setting == "U" and any(s[m - 1 - a] != m - 1 - s[a] for a in range(m)):
            continue
        out.append(s)
    return out


def perm_matrix(s: tuple[int, ...]) -> Raw:
    m = len(s)
    M = [[0] * m for _ in range(m)]
    for a in range(m):
        M[s[a]][a] = 1
    return tuple(tuple(r) for r in M)


def _compose(a, b):
    return tuple(a[b[k]] for k in range(len(b)))


def _length(s) -> int:
    return sum(1 for x in range(len(s)) for y in range(x + 1, len(s)) if s[x] > s[y])


def _in_levi_perm(P: ParabolicData, s) -> bool:
    lm = P.levi_mask()
    return all(lm[s[a], a] for a in range(len(s)))


def weyl_double_cosets(setting: str, n: int, split: tuple[int, int], split2: tuple[int, int], q: int = 3) -> list[Raw]:
    """Minimal-length representatives of (W cap L') \\ W / (W cap L)."""
    setting = setting.upper()
    P = ParabolicData(setting, n, split[0], split[1], q)
    P2 = ParabolicData(setting, n, split2[0], split2[1], q)
    W = weyl_group(setting, n)
    WL = [s for s in W if _in_levi_perm(P, s)]
    WL2 = [s for s in W if _in_levi_perm(P2, s)]
    seen: set = set()
    reps = []
    for w in W:
        if w in seen:
            continue
        cls = {_compose(a, _compose(w, b)) for a in WL2 for b in WL}
        seen |= cls
        reps.append(min(cls, key=lambda s: (_length(s), s)))
    return [perm_matrix(s) for s in sorted(reps, key=lambda s: (_length(s), s))]


def _levi_elements(P: ParabolicData) -> np.ndarray:
    F = P.F
    firsts = [tuple(tuple(v[r * P.i:(r + 1) * P.i]) for r in range(P.i))
              for v in product(range(F.q), repeat=P.i * P.i)]
    if P.setting == "GL":
        seconds = [tuple(tuple(v[r * P.s:(r + 1) * P.s]) for r in range(P.s))
                   for v in product(range(F.q), repeat=P.s * P.s)]
    else:
        seconds = list(u_basis_params(P.s, P.q))
    return np.array([_np(P.embed(A, B), P.m) for A in firsts for B in seconds]).reshape(-1, P.m, P.m)


def _levi_group(P: ParabolicData) -> np.ndarray:
    F = P.F
    firsts = []
    for v in product(range(F.q), repeat=P.i * P.i):
        A = tuple(tuple(v[r * P.i:(r + 1) * P.i]) for r in range(P.i))
        if P.i == 0 or is_invertible(F, A):
            firsts.append(A)
    if P.setting == "GL":
        seconds = []
        for v in product(range(F.q), repeat=P.s * P.s):
            B = tuple(tuple(v[r * P.s:(r + 1) * P.s]) for r in range(P.s))
            if P.s == 0 or is_invertible(F, B):
                seconds.append(B)
    else:
        seconds = list(unitary_group(P.s, P.q)) if P.s else [()]
    out = []
    for A in firsts:
        Ap = None
        if P.setting == "U" and P.i:
            Ap = mul(F, mul(F, J(P.i), inverse(F, star_raw(F, A))), J(P.i))
        for B in seconds:
            M = [list(r) for r in P.embed(A, B)]
            if Ap is not None:
                for r in range(P.i):
                    M[P.i + P.s + r][P.i + P.s:] = list(Ap[r])
            out.append(M)
    return np.array(out, dtype=np.int64).reshape(-1, P.m, P.m)


def _pattern_ok(arr: np.ndarray, zero_mask: np.ndarray) -> np.ndarray:
    return ~(arr[:, zero_mask] != 0).any(axis=1)


@dataclass
class MackeyReport:
    setting: str
    n: int
    q: int
    split: tuple[int, int]
    split2: tuple[int, int]
    weyl_reps: list
    lhs: dict      # (y', y) -> Fraction
    rhs: dict

    @property
    def equal(self) -> bool:
        keys = set(self.lhs) | set(self.rhs)
        return all(self.lhs.get(k, 0) == self.rhs.get(k, 0) for k in keys)

    def discrepancies(self) -> list:
        keys = set(self.lhs) | set(self.rhs)
        return sorted((k, self.lhs.get(k, 0), self.rhs.get(k, 0)) for k in keys
                      if self.lhs.get(k, 0) != self.rhs.get(k, 0))


def mackey_check(setting: str, q: int, n: int, split: tuple[int, int], split2: tuple[int, int]) -> MackeyReport:
    """Both sides of restrict_{L'} o induce_L on every Levi-orbit indicator of L."""
    setting = setting.upper()
    P = build_parabolic(setting, n, split[0], split[1], q)
    P2 = build_parabolic(setting, n, split2[0], split2[1], q)
    if P.trivial or P2.trivial:
        raise ValueError("Mackey check is run on proper parabolics")
    F, m = P.F, P.m
    # left side: (1/|U'|) sum_Z' (ind chi_y)(Y' + Z')
    R2 = P2.restriction_counts()
    lhs = {}
    for y2, c in R2.items():
        for lab, k in c.items():
            I = P.induction_counts(lab, P2.ambient_reps[lab])
            for y, v in I.items():
                lhs[(y2, y)] = lhs.get((y2, y), Fraction(0)) + Fraction(k * v, len(P2.radical))
    # right side: sum over double coset representatives
    L_el = _levi_elements(P)
    L2_grp = _levi_group(P2)
    zP = P.zero_mask()
    rad2 = P2.radical_mask()
    reps = weyl_double_cosets(setting, n, split, split2, q)
    rhs: dict = {}
    for w in reps:
        wa = _np(w, m)
        wi = wa.T.copy()
        conj_L = np_matmul(F, np_matmul(F, wa[None], L_el), wi[None])
        in_rad2 = ~(conj_L[:, ~rad2] != 0).any(axis=1)
        U_w = L_el[in_rad2]
        # cosets of L' / P'_w with P'_w = {l in L' : w^-1 l w in P}
        covered = np.zeros(len(L2_grp), dtype=bool)
        coset_reps = []
        for k in range(len(L2_grp)):
            if covered[k]:
                continue
            r = L2_grp[k]
            coset_reps.append(r)
            rinv = _np(inverse(F, _raw(r)), m)
            prod_ = np_matmul(F, np_matmul(F, np_matmul(F, wi[None], rinv[None]), L2_grp), wa[None])
            covered |= _pattern_ok(prod_, zP)
        cache: dict = {}
        for y2, _, Y2 in P2.levi_orbits():
            Y2a = _np(Y2, m)
            for r in coset_reps:
                rinv = _np(inverse(F, _raw(r)), m)
                V = np_matmul(F, np_matmul(F, np_matmul(F, np_matmul(F, wi, rinv), Y2a), r), wa)
                if (V[zP] != 0).any():
                    continue
                Yw = np.where(P.levi_mask(), V, 0)
                key = Yw.tobytes()
                dist = cache.get(key)
                if dist is None:
                    S = F.ADD[Yw[None], U_w]
                    dist = Counter(P.levi_label(_raw(s)) for s in S)
                    cache[key] = dist
                for y, k in dist.items():
                    rhs[(y2, y)] = rhs.get((y2, y), Fraction(0)) + Fraction(k, len(U_w))
    return MackeyReport(setting, n, q, tuple(split), tuple(split2), reps, lhs, rhs)
