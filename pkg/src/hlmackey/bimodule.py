"""The graded spaces A_Q (invariant functions on gl(n, F_Q)) and B (on u(2n, F_{q^2})).

Elements are sparse dicts over the orbit-indicator basis with Fraction
coefficients.  A basis element of A is an ``OrbitLabel`` of kind GL whose size
is its degree; a basis element of B is an ``OrbitLabel`` of kind U, whose
degree is half its size.  Tensors are dicts keyed by tuples of labels.

Products come from parabolic induction, coproducts from parabolic
restriction, summed over all splits of the degree.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Callable, Iterable

from .fields import base_q, field
from .matrices import omega_raw
from .orbits import OrbitLabel, classify_raw
from .parabolic import ambient_orbit_reps, ambient_orbits, build_parabolic, par_induce, par_restrict
from .partitions import Partition

Vec = dict          # label -> Fraction
Tensor = dict       # tuple of labels -> Fraction

MAX_A_DEGREE = 4
MAX_B_DEGREE = 2


def unit_A() -> OrbitLabel:
    return OrbitLabel("GL", 0, ("nilp", Partition()))


def unit_B() -> OrbitLabel:
    return OrbitLabel("U", 0, ("nilp", Partition()))


def deg(lab: OrbitLabel) -> int:
    return lab.n if lab.kind == "GL" else lab.n // 2


def chi(kind: str, lam) -> OrbitLabel:
    """Nilpotent-orbit basis element; ``lam`` a partition (of 2n for kind U)."""
    return OrbitLabel.nilpotent(kind, lam)


@dataclass
class GradedVector:
    side: str           # "A" or "B"
    q: int              # field order of gl for A; base q for B
    coeffs: dict = dc_field(default_factory=dict)

    def component(self, n: int) -> dict:
        return {k: v for k, v in self.coeffs.items() if deg(k) == n}


@dataclass
class TensorVector:
    legs: tuple         # e.g. ("A", "B")
    q: int
    coeffs: dict = dc_field(default_factory=dict)


def _clean(d: dict) -> dict:
    return {k: v for k, v in d.items() if v != 0}


def _acc(out: dict, key, val) -> None:
    out[key] = out.get(key, Fraction(0)) + val


def basis_A(Q: int, n: int) -> list[OrbitLabel]:
    return [e[0] for e in ambient_orbits("GL", n, Q)]


def basis_B(q: int, n: int) -> list[OrbitLabel]:
    return [e[0] for e in ambient_orbits("U", n, q)]


def _check_deg(n: int, cap: int, what: str) -> None:
    if n > cap:
        raise ValueError(f"{what} degree {n} exceeds the supported bound {cap}")


# -- A side -------------------------------------------------------------------

@lru_cache(maxsize=None)
def _nabla_basis(a: OrbitLabel, b: OrbitLabel, Q: int) -> tuple:
    i, j = a.n, b.n
    _check_deg(i + j, MAX_A_DEGREE, "product")
    P = build_parabolic("GL", i + j, i, j, Q)
    return tuple(par_induce({(a, b): Fraction(1)}, P).nonzero().items())


@lru_cache(maxsize=None)
def _delta_basis(lam: OrbitLabel, Q: int) -> tuple:
    n = lam.n
    _check_deg(n, MAX_A_DEGREE, "coproduct")
    out: dict = {}
    for i in range(n + 1):
        P = build_parabolic("GL", n, i, n - i, Q)
        for y, v in par_restrict({lam: Fraction(1)}, P).nonzero().items():
            _acc(out, y, v)
    return tuple(_clean(out).items())


def nabla(x: Tensor, Q: int) -> Vec:
    out: dict = {}
    for (a, b), c in x.items():
        for lab, v in _nabla_basis(a, b, Q):
            _acc(out, lab, c * v)
    return _clean(out)


def delta(a: Vec, Q: int) -> Tensor:
    out: dict = {}
    for lab, c in a.items():
        for y, v in _delta_basis(lab, Q):
            _acc(out, y, c * v)
    return _clean(out)


def mult(a: Vec, b: Vec, Q: int) -> Vec:
    return nabla({(x, y): c * d for x, c in a.items() for y, d in b.items()}, Q)


def counit(a: Vec) -> Fraction:
    return a.get(unit_A(), Fraction(0))


@lru_cache(maxsize=None)
def _omega_label(lab: OrbitLabel, Q: int) -> OrbitLabel:
    F = field(Q)
    base_q(F)
    if lab.n == 0:
        return lab
    rep = ambient_orbit_reps("GL", lab.n, Q)[lab]
    return classify_raw(F, omega_raw(F, rep), "GL")


def omega_twist(a: Vec, Q: int) -> Vec:
    """Pushforward along X -> -J X^* J on A_Q, Q a square."""
    out: dict = {}
    for lab, c in a.items():
        _acc(out, _omega_label(lab, Q), c)
    return _clean(out)


# -- B side -------------------------------------------------------------------

@lru_cache(maxsize=None)
def _nabla_tilde_basis(a: OrbitLabel, b: OrbitLabel, q: int) -> tuple:
    i, j = a.n, b.n // 2
    _check_deg(i + j, MAX_B_DEGREE, "module product")
    P = build_parabolic("U", i + j, i, j, q)
    return tuple(par_induce({(a, b): Fraction(1)}, P).nonzero().items())


@lru_cache(maxsize=None)
def _delta_tilde_basis(lam: OrbitLabel, q: int) -> tuple:
    n = lam.n // 2
    _check_deg(n, MAX_B_DEGREE, "coaction")
    out: dict = {}
    for i in range(n + 1):
        P = build_parabolic("U", n, i, n - i, q)
        for y, v in par_restrict({lam: Fraction(1)}, P).nonzero().items():
            _acc(out, y, v)
    return tuple(_clean(out).items())


def nabla_tilde(x: Tensor, q: int) -> Vec:
    out: dict = {}
    for (a, b), c in x.items():
        for lab, v in _nabla_tilde_basis(a, b, q):
            _acc(out, lab, c * v)
    return _clean(out)


def delta_tilde(b: Vec, q: int) -> Tensor:
    out: dict = {}
    for lab, c in b.items():
        for y, v in _delta_tilde_basis(lab, q):
            _acc(out, y, c * v)
    return _clean(out)


def act(a: Vec, b: Vec, q: int) -> Vec:
    """a . b = nabla_tilde(a (x) b)."""
    return nabla_tilde({(x, y): c * d for x, c in a.items() for y, d in b.items()}, q)


# -- tensor helpers -------------------------------------------------------------

def apply_left(t: Tensor, f: Callable[[OrbitLabel], dict], pos: int = 0) -> Tensor:
    """Apply a linear map (given on basis labels) to one leg of a tensor."""
    out: dict = {}
    for key, c in t.items():
        for img, v in f(key[pos]).items():
            new = key[:pos] + (img if isinstance(img, tuple) else (img,)) + key[pos + 1:]
            _acc(out, new, c * v)
    return _clean(out)


def swap(t: Tensor) -> Tensor:
    return {(b, a): c for (a, b), c in t.items()}


def triple_coproduct(a: Vec, Q: int) -> Tensor:
    """(Delta (x) id) Delta(a)."""
    return apply_left(delta(a, Q), lambda lab: dict(_delta_basis(lab, Q)), 0)


def odot(a: Vec, x: Tensor, q: int) -> Tensor:
    """Twisted action a (.) (a' (x) b) = sum (a1 omega(a2) a') (x) (a3 . b)."""
    Q = q * q
    out: dict = {}
    for (a1, a2, a3), c in triple_coproduct(a, Q).items():
        w2 = omega_twist({a2: Fraction(1)}, Q)
        left12 = mult({a1: Fraction(1)}, w2, Q)
        for (ap, b), d in x.items():
            left = mult(left12, {ap: Fraction(1)}, Q)
            right = act({a3: Fraction(1)}, {b: Fraction(1)}, q)
            for l, u in left.items():
                for r, v in right.items():
                    _acc(out, (l, r), c * d * u * v)
    return _clean(out)


def odot_untwisted(a: Vec, x: Tensor, q: int) -> Tensor:
    """The naive candidate sum (a1 a') (x) (a2 . b), without the twist."""
    Q = q * q
    out: dict = {}
    for (a1, a2), c in delta(a, Q).items():
        for (ap, b), d in x.items():
            left = mult({a1: Fraction(1)}, {ap: Fraction(1)}, Q)
            right = act({a2: Fraction(1)}, {b: Fraction(1)}, q)
            for l, u in left.items():
                for r, v in right.items():
                    _acc(out, (l, r), c * d * u * v)
    return _clean(out)


# -- axiom checks ----------------------------------------------------------------

@dataclass
class AxiomReport:
    check: str
    q: int
    maxdeg: int
    failures: list = dc_field(default_factory=list)
    counts: dict = dc_field(default_factory=dict)
    notes: dict = dc_field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.failures

    def record(self, name: str, ok: bool, detail) -> None:
        self.counts[name] = self.counts.get(name, 0) + 1
        if not ok:
            self.failures.append({"law": name, "at": detail})

    def to_json(self) -> dict:
        return {"schema": "axiom-report/1", "check": self.check, "q": self.q, "maxdeg": self.maxdeg,
                "failures": self.failures, "counts": self.counts, "notes": self.notes}


def _labels_str(key) -> str:
    return "(x)".join(str(k) for k in key) if isinstance(key, tuple) else str(key)


def _splits(total: int, parts: int) -> Iterable[tuple[int, ...]]:
    for c in product(range(total + 1), repeat=parts):
        if sum(c) <= total:
            yield c


def check_bialgebra(q: int, maxdeg: int) -> AxiomReport:
    """Bialgebra, commutativity and cocommutativity laws of A_q on basis tensors."""
    if maxdeg > MAX_A_DEGREE:
        raise ValueError(f"maxdeg {maxdeg} exceeds {MAX_A_DEGREE}")
    rep = AxiomReport("bialgebra", q, maxdeg)
    B = {n: basis_A(q, n) for n in range(maxdeg + 1)}
    one = {unit_A(): Fraction(1)}
    for n in range(maxdeg + 1):
        for a in B[n]:
            va = {a: Fraction(1)}
            d = delta(va, q)
            rep.record("unit", mult(one, va, q) == va and mult(va, one, q) == va, str(a))
            left = _clean({k[1:]: v for k, v in d.items() if k[0] == unit_A()})
            right = _clean({k[:1]: v for k, v in d.items() if k[1] == unit_A()})
            rep.record("counit", left == {(a,): Fraction(1)} and right == {(a,): Fraction(1)}, str(a))
            rep.record("cocommutativity", swap(d) == d, str(a))
            dd1 = apply_left(d, lambda l: dict(_delta_basis(l, q)), 0)
            dd2 = apply_left(d, lambda l: dict(_delta_basis(l, q)), 1)
            rep.record("coassociativity", dd1 == dd2, str(a))
    for i, j in _splits(maxdeg, 2):
        for a, b in product(B[i], B[j]):
            ab = mult({a: 1}, {b: 1}, q)
            rep.record("commutativity", ab == mult({b: 1}, {a: 1}, q), f"{a}(x){b}")
            rep.record("counit-multiplicative", counit(ab) == counit({a: 1}) * counit({b: 1}), f"{a}(x){b}")
            lhs = delta(ab, q)
            da, db = delta({a: 1}, q), delta({b: 1}, q)
            rhs: dict = {}
            for (a1, a2), c in da.items():
                for (b1, b2), d in db.items():
                    for l, u in _nabla_basis(a1, b1, q):
                        for r, v in _nabla_basis(a2, b2, q):
                            _acc(rhs, (l, r), c * d * u * v)
            rep.record("compatibility", lhs == _clean(rhs), f"{a}(x){b}")
    for i, j, k in _splits(maxdeg, 3):
        for a, b, c in product(B[i], B[j], B[k]):
            l1 = mult(mult({a: 1}, {b: 1}, q), {c: 1}, q)
            l2 = mult({a: 1}, mult({b: 1}, {c: 1}, q), q)
            rep.record("associativity", l1 == l2, f"{a}(x){b}(x){c}")
    return rep


def check_twisted(q: int, maxdeg: int, search_untwisted: bool = True) -> AxiomReport:
    """Module, comodule and twisted-diagram laws of B over A_{q^2}."""
    if maxdeg > MAX_B_DEGREE:
        raise ValueError(f"maxdeg {maxdeg} exceeds {MAX_B_DEGREE}")
    Q = q * q
    rep = AxiomReport("twisted", q, maxdeg)
    BA = {n: basis_A(Q, n) for n in range(maxdeg + 1)}
    BB = {n: basis_B(q, n) for n in range(maxdeg + 1)}
    one = {unit_A(): Fraction(1)}
    # (a) grading
    for i, j in _splits(maxdeg, 2):
        for a, b in product(BA[i], BB[j]):
            out = act({a: 1}, {b: 1}, q)
            rep.record("grading-nabla", all(deg(k) == i + j for k in out), f"{a}(x){b}")
    for n in range(maxdeg + 1):
        for b in BB[n]:
            d = delta_tilde({b: 1}, q)
            rep.record("grading-delta", all(deg(x) + deg(y) == n for x, y in d), str(b))
            # (c) comodule law
            l = apply_left(d, lambda lab: dict(_delta_basis(lab, Q)), 0)
            r = apply_left(d, lambda lab: dict(_delta_tilde_basis(lab, q)), 1)
            rep.record("comodule", l == r, str(b))
            rep.record("unit-action", act(one, {b: 1}, q) == {b: Fraction(1)}, str(b))
            left = _clean({k[1:]: v for k, v in d.items() if k[0] == unit_A()})
            rep.record("counit-coaction", left == {(b,): Fraction(1)}, str(b))
    # (b) module law
    for i, j, k in _splits(maxdeg, 3):
        for a, a2, b in product(BA[i], BA[j], BB[k]):
            l = act(mult({a: 1}, {a2: 1}, Q), {b: 1}, q)
            r = act({a: 1}, act({a2: 1}, {b: 1}, q), q)
            rep.record("module", l == r, f"{a}(x){a2}(x){b}")
    # twisted diagram and the odot module law
    untwisted_fail = []
    for i, j in _splits(maxdeg, 2):
        for a, b in product(BA[i], BB[j]):
            lhs = delta_tilde(act({a: 1}, {b: 1}, q), q)
            db = delta_tilde({b: 1}, q)
            rhs = odot({a: 1}, db, q)
            rep.record("diagram", lhs == rhs, f"{a}(x){b}")
            if search_untwisted and lhs != odot_untwisted({a: 1}, db, q):
                untwisted_fail.append(f"{a}(x){b}")
    for i, j, k, l in _splits(maxdeg, 4):
        for a, a2, a3, b in product(BA[i], BA[j], BA[k], BB[l]):
            x = {(a3, b): Fraction(1)}
            lhs = odot({a: 1}, odot({a2: 1}, x, q), q)
            rhs = odot(mult({a: 1}, {a2: 1}, Q), x, q)
            rep.record("odot-module", lhs == rhs, f"{a}(x){a2}(x){a3}(x){b}")
    for n in range(maxdeg + 1):
        for a3 in BA[n]:
            for b in BB[maxdeg - n] if maxdeg - n >= 0 else []:
                x = {(a3, b): Fraction(1)}
                rep.record("odot-unit", odot(one, x, q) == x, f"{a3}(x){b}")
    if search_untwisted:
        rep.notes["untwisted_counterexamples"] = untwisted_fail[:20]
        rep.notes["untwisted_counterexample_count"] = len(untwisted_fail)
    return rep
