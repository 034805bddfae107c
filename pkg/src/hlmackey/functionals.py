"""Harmonic functionals on A_Q and B, the built-ins phi0/psi0, and mixing.

A functional is stored by its values on the orbit-indicator basis through a
truncation level N.  For side A the parameter ``q`` is the order of the field
of gl(n); for side B it is the base q of u(2n, F_{q^2}).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from pathlib import Path
from typing import Iterable

from .bimodule import (
    MAX_A_DEGREE, MAX_B_DEGREE, _delta_tilde_basis, _nabla_basis, _nabla_tilde_basis, basis_A, basis_B, chi,
    deg,
)
from .graphs import BranchingGraph, GaugeResult, build_graph, similarity_gauge
from .orbits import OrbitLabel
from .partitions import partitions

CONES = ("F", "F0", "Ftilde", "Ftilde0")
SCHEMA = "functional/1"


class SchemaError(ValueError):
    pass


def parse_fraction(s) -> Fraction:
    """Exact rational from "a/b", "a" or an int; floats are refused."""
    if isinstance(s, bool) or isinstance(s, float):
        raise SchemaError(f"not an exact rational: {s!r}")
    if isinstance(s, (int, Fraction)):
        return Fraction(s)
    try:
        return Fraction(str(s).strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise SchemaError(f"malformed rational {s!r}") from exc


def fstr(x) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


@dataclass
class ThomaPoint:
    alpha: tuple = ()
    beta: tuple = ()
    q: int = 3

    def __post_init__(self):
        self.alpha = tuple(Fraction(a) for a in self.alpha)
        self.beta = tuple(Fraction(b) for b in self.beta)
        for seq in (self.alpha, self.beta):
            if any(x < 0 for x in seq) or list(seq) != sorted(seq, reverse=True):
                raise ValueError("Thoma coordinates must be nonincreasing and nonnegative")
        if self.slack < 0:
            raise ValueError("Thoma point outside the simplex")

    @property
    def slack(self) -> Fraction:
        return 1 - sum(self.alpha) - sum(self.beta) / (1 - Fraction(1, self.q**2))


@dataclass
class Functional:
    side: str
    q: int
    N: int
    values: dict = dc_field(default_factory=dict)      # OrbitLabel -> Fraction
    provenance: dict = dc_field(default_factory=dict)

    @property
    def kind(self) -> str:
        return "GL" if self.side == "A" else "U"

    def __call__(self, lab: OrbitLabel) -> Fraction:
        if deg(lab) > self.N:
            raise ValueError(f"functional truncated at level {self.N}")
        return self.values.get(lab, Fraction(0))

    def apply(self, vec: dict) -> Fraction:
        return sum((Fraction(c) * self(lab) for lab, c in vec.items()), Fraction(0))

    def basis(self, n: int) -> list[OrbitLabel]:
        return basis_A(self.q, n) if self.side == "A" else basis_B(self.q, n)

    def to_json(self) -> dict:
        levels = []
        for n in range(self.N + 1):
            vals = {str(lab): fstr(v) for lab, v in sorted(self.values.items(), key=lambda kv: str(kv[0]))
                    if deg(lab) == n and v != 0}
            levels.append({"n": n, "values": vals})
        return {"schema": SCHEMA, "side": self.side, "q": self.q, "N": self.N,
                "provenance": self.provenance, "levels": levels}


def save_functional(phi: Functional, path) -> None:
    Path(path).write_text(json.dumps(phi.to_json(), indent=2, sort_keys=True) + "\n")


def functional_from_json(doc: dict) -> Functional:
    for key in ("side", "q", "N", "levels"):
        if key not in doc:
            raise SchemaError(f"missing field {key!r}")
    if doc.get("schema", SCHEMA) != SCHEMA:
        raise SchemaError(f"unsupported schema {doc.get('schema')!r}")
    side = doc["side"]
    if side not in ("A", "B"):
        raise SchemaError("side must be 'A' or 'B'")
    q, N = doc["q"], doc["N"]
    if not isinstance(q, int) or not isinstance(N, int) or N < 0:
        raise SchemaError("q and N must be integers")
    kind = "GL" if side == "A" else "U"
    seen = sorted(lvl.get("n") for lvl in doc["levels"])
    if seen != list(range(N + 1)):
        raise SchemaError(f"levels must be exactly 0..{N}, got {seen}")
    values = {}
    for lvl in doc["levels"]:
        n = lvl["n"]
        for s, v in lvl.get("values", {}).items():
            try:
                lab = OrbitLabel.parse(kind, s)
            except ValueError as exc:
                raise SchemaError(f"bad orbit label {s!r}") from exc
            if deg(lab) != n:
                raise SchemaError(f"label {s} does not live at level {n}")
            values[lab] = parse_fraction(v)
    return Functional(side, q, N, values, doc.get("provenance", {}))


def load_functional(path) -> Functional:
    try:
        doc = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise SchemaError(f"not JSON: {exc}") from exc
    phi = functional_from_json(doc)
    phi.provenance = {**phi.provenance, "file": str(path)}
    return phi


# -- built-ins ----------------------------------------------------------------

def q_factorial(n: int, Q) -> Fraction:
    out = Fraction(1)
    for k in range(1, n + 1):
        out *= sum(Fraction(Q) ** i for i in range(k))
    return out


def phi_zero(Q: int, N: int) -> Functional:
    """Supported on the zero orbits, phi0(chi_(1^n)) = 1/[n]_Q!."""
    vals = {chi("GL", (1,) * n): 1 / q_factorial(n, Q) for n in range(N + 1)}
    return Functional("A", Q, N, vals, {"builtin": "phi0"})


def psi_zero_value(n: int, q: int) -> Fraction:
    den = 1
    for i in range(1, 2 * n + 1):
        den *= q**i - (-1) ** i
    return Fraction((q * q - 1) ** n, den)


def psi_zero(q: int, N: int) -> Functional:
    if q % 2 == 0:
        raise ValueError("psi0 needs odd q")
    vals = {chi("U", (1,) * (2 * n)): psi_zero_value(n, q) for n in range(N + 1)}
    return Functional("B", q, N, vals, {"builtin": "psi0"})


def phi_from_zero_values(values: Iterable, Q: int) -> Functional:
    """Functional on A_Q supported on zero orbits with phi(chi_(1^m)) = values[m]."""
    vals = [parse_fraction(v) for v in values]
    return Functional("A", Q, len(vals) - 1, {chi("GL", (1,) * m): v for m, v in enumerate(vals)},
                      {"builtin": "zero-orbit table"})


# -- cones ----------------------------------------------------------------------

@dataclass
class ConeReport:
    cone: str
    N: int
    failures: list = dc_field(default_factory=list)
    checked: dict = dc_field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        return {"schema": "cone-report/1", "cone": self.cone, "N": self.N, "ok": self.ok,
                "checked": self.checked, "failures": self.failures}


def harmonic_image(phi: Functional, lab: OrbitLabel) -> dict:
    """x1 * chi_lab, with x1 the zero orbit of gl(1)."""
    if phi.side == "A":
        return dict(_nabla_basis(chi("GL", (1,)), lab, phi.q))
    return dict(_nabla_tilde_basis(chi("GL", (1,)), lab, phi.q))


def cone_check(phi: Functional, cone: str, N: int | None = None) -> ConeReport:
    if cone not in CONES:
        raise ValueError(f"unknown cone {cone!r}")
    want = "A" if cone in ("F", "F0") else "B"
    if phi.side != want:
        raise ValueError(f"cone {cone} lives on side {want}")
    N = phi.N if N is None else N
    if N > phi.N:
        raise ValueError(f"truncation too small: functional known through {phi.N}, need {N}")
    cap = MAX_A_DEGREE if want == "A" else MAX_B_DEGREE
    if N > cap:
        raise ValueError(f"level {N} beyond the supported bound {cap}")
    rep = ConeReport(cone, N)
    nilp = cone.endswith("0")
    for n in range(N + 1):
        for lab in phi.basis(n):
            v = phi(lab)
            rep.checked["positivity"] = rep.checked.get("positivity", 0) + 1
            if v < 0:
                rep.failures.append({"law": "positivity", "at": str(lab), "value": fstr(v)})
            if nilp:
                rep.checked["nilpotency"] = rep.checked.get("nilpotency", 0) + 1
                if v != 0 and not lab.is_nilpotent:
                    rep.failures.append({"law": "nilpotency", "at": str(lab), "value": fstr(v)})
            if n < N:
                rep.checked["harmonicity"] = rep.checked.get("harmonicity", 0) + 1
                r = v - phi.apply(harmonic_image(phi, lab))
                if r:
                    rep.failures.append({"law": "harmonicity", "at": str(lab), "residual": fstr(r)})
    return rep


# -- mixing --------------------------------------------------------------------

def mix(phi: Functional, psi: Functional, s, N: int | None = None) -> Functional:
    """(phi *_s psi)(b') = sum s^{deg a} (1-2s)^{deg b} phi(a) psi(b) over the coaction of b'."""
    s = parse_fraction(s)
    if phi.side != "A" or psi.side != "B":
        raise ValueError("mix takes a functional on A and one on B")
    q = psi.q
    if phi.q != q * q:
        raise ValueError(f"phi must live on A_{q * q}, got A_{phi.q}")
    N = min(phi.N, psi.N) if N is None else N
    if N > min(phi.N, psi.N):
        raise ValueError("truncation insufficient to expand the coaction")
    if N > MAX_B_DEGREE:
        raise ValueError(f"level {N} beyond the supported bound {MAX_B_DEGREE}")
    vals = {}
    for n in range(N + 1):
        for lab in basis_B(q, n):
            tot = Fraction(0)
            for (a, b), c in _delta_tilde_basis(lab, q):
                tot += c * s ** deg(a) * (1 - 2 * s) ** deg(b) * phi(a) * psi(b)
            if tot:
                vals[lab] = tot
    prov = {"mix": {"s": fstr(s), "phi": phi.provenance, "psi": psi.provenance}}
    return Functional("B", q, N, vals, prov)


def mix_closed_form(phi_vals: list, s, q: int, n: int) -> Fraction:
    s = Fraction(s)
    tot = Fraction(0)
    for m in range(n + 1):
        den = 1
        for i in range(1, 2 * n - 2 * m + 1):
            den *= q**i - (-1) ** i
        tot += (Fraction(q) ** (3 * m * m - 4 * m * n) * Fraction((q * q - 1) ** (n - m), den)
                * s**m * (1 - 2 * s) ** (n - m) * Fraction(phi_vals[m]))
    return tot


@dataclass
class ClosedFormReport:
    q: int
    s: Fraction
    rows: list

    @property
    def ok(self) -> bool:
        return all(r["mixed"] == r["closed"] for r in self.rows)

    def to_json(self) -> dict:
        return {"schema": "closed-form-report/1", "q": self.q, "s": fstr(self.s), "ok": self.ok,
                "rows": [{"n": r["n"], "mixed": fstr(r["mixed"]), "closed": fstr(r["closed"])} for r in self.rows]}


def mix_closed_form_check(phi_vals: list, s, q: int, nmax: int) -> ClosedFormReport:
    if nmax > MAX_B_DEGREE:
        raise ValueError(f"nmax {nmax} beyond the supported bound {MAX_B_DEGREE}")
    s = parse_fraction(s)
    phi_vals = [parse_fraction(v) for v in phi_vals]
    if len(phi_vals) < nmax + 1:
        raise ValueError("need phi values through level nmax")
    phi = phi_from_zero_values(phi_vals[:nmax + 1], q * q)
    mixed = mix(phi, psi_zero(q, nmax), s, nmax)
    rows = [{"n": n, "mixed": mixed(chi("U", (1,) * (2 * n))), "closed": mix_closed_form(phi_vals, s, q, n)}
            for n in range(nmax + 1)]
    return ClosedFormReport(q, s, rows)


# -- functional / graph gauge ------------------------------------------------------

def functional_graph(side: str, q: int, N: int) -> BranchingGraph:
    """Nilpotent part of the harmonicity operator, as a branching graph.

    Weight of mu -> lam is the coefficient of chi_lam in x1 * chi_mu.
    """
    step = 1 if side == "A" else 2
    kind = "GL" if side == "A" else "U"
    probe = Functional(side, q, N)
    levels = [list(partitions(step * n)) for n in range(N + 1)]
    weights = {}
    for n in range(N):
        for mu in levels[n]:
            for lab, c in harmonic_image(probe, chi(kind, mu)).items():
                if c and lab.is_nilpotent:
                    weights[(lab.partition, mu)] = Fraction(c)
    return BranchingGraph(f"functional-{side}", q, N, levels, weights, step)


def functional_gauge(side: str, q: int, N: int) -> GaugeResult:
    """g with phi(chi_lam) = F(lam) g(lam) for F harmonic on glb0 (A) or ub0 (B)."""
    target = build_graph("glb0" if side == "A" else "ub0", q, N)
    return similarity_gauge(functional_graph(side, q, N), target)


def graph_function_of(phi: Functional, gauge: dict) -> dict:
    """Graph function v -> phi(chi_v) / g(v) on nilpotent vertices."""
    return {v: phi(chi(phi.kind, v)) / g for v, g in gauge.items()}
