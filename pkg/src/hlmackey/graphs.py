"""Weighted branching graphs on partitions, gauges between them, harmonicity.

Four graphs are built:

``glb0``      level n = partitions of n, weight of mu -> lam is count_L(lam, mu, q)
``yhl``       level n = partitions of n, weight psi_coeff(lam, mu, t)
``ub0``       level n = partitions of 2n, weight count_K(lam, mu, q)
``yhl-even``  level n = partitions of 2n, weight xi_coeff(lam, mu, t)

For the two Hall-Littlewood graphs t defaults to 1/q.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Callable, Mapping

from .orbits import count_K_all, count_L_all
from .partitions import Partition, partitions, psi_coeff
from .symfunc import xi_coeff

GRAPHS = ("glb0", "yhl", "ub0", "yhl-even")
BOUNDS = {"glb0": 4, "yhl": 6, "ub0": 2, "yhl-even": 6}


class GraphBoundError(ValueError):
    pass


@dataclass
class BranchingGraph:
    name: str
    q: int
    N: int
    levels: list                      # list of lists of Partition
    weights: dict                     # (upper, lower) -> Fraction, declared edges only
    step: int = 1                     # partition size grows by `step` per level
    t: Fraction | None = None

    def level_of(self, v: Partition) -> int:
        return v.size // self.step

    def up(self, v: Partition) -> dict:
        return {w: c for (w, u), c in self.weights.items() if u == v}

    def down(self, v: Partition) -> dict:
        return {u: c for (w, u), c in self.weights.items() if w == v}

    @property
    def root(self) -> Partition:
        return self.levels[0][0]

    def edges(self) -> list[tuple[Partition, Partition]]:
        return sorted(self.weights, key=lambda e: (e[1].size, e[1], e[0]))

    def to_json(self) -> dict:
        return {
            "schema": "graph/1",
            "graph": self.name,
            "q": self.q,
            "levels": self.N,
            "t": None if self.t is None else _fs(self.t),
            "edges": [{"from": list(u), "to": list(w), "w": _fs(self.weights[(w, u)])}
                      for w, u in self.edges()],
        }


def _fs(x) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def build_graph(which: str, q: int, N: int, t: Fraction | None = None) -> BranchingGraph:
    if which not in GRAPHS:
        raise ValueError(f"unknown graph {which!r}; expected one of {GRAPHS}")
    if N > BOUNDS[which]:
        raise GraphBoundError(f"{which} supported through level {BOUNDS[which]}, asked for {N}")
    step = 2 if which in ("ub0", "yhl-even") else 1
    if which == "ub0" and q % 2 == 0:
        raise ValueError("the unitary graph needs odd q")
    levels = [list(partitions(step * n)) for n in range(N + 1)]
    if which in ("yhl", "yhl-even"):
        t = Fraction(1, q) if t is None else Fraction(t)
    weights: dict = {}
    for n in range(N):
        for mu in levels[n]:
            if which == "glb0":
                row = count_L_all(tuple(mu), q)
            elif which == "ub0":
                row = count_K_all(tuple(mu), q)
            elif which == "yhl":
                row = {lam: psi_coeff(lam, mu, t) for lam in levels[n + 1]}
            else:
                row = {lam: xi_coeff(lam, mu, t) for lam in levels[n + 1]}
            for lam, c in row.items():
                if c != 0:
                    weights[(Partition(lam), mu)] = Fraction(c)
    return BranchingGraph(which, q, N, levels, weights, step, t)


@dataclass
class GaugeResult:
    ok: bool
    gauge: dict = dc_field(default_factory=dict)      # vertex -> Fraction
    bad_edge: tuple | None = None
    reason: str = ""

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "gauge": {p.label(): _fs(v) for p, v in self.gauge.items()},
            "bad_edge": None if self.bad_edge is None else [list(self.bad_edge[0]), list(self.bad_edge[1])],
            "reason": self.reason,
        }


def similarity_gauge(g1: BranchingGraph, g2: BranchingGraph) -> GaugeResult:
    """f with tau1(lam, mu) = tau2(lam, mu) f(mu) / f(lam), f(root) = 1.

    Propagates along a BFS spanning tree and checks every remaining edge.
    """
    if set(g1.weights) != set(g2.weights):
        diff = next(iter(set(g1.weights) ^ set(g2.weights)))
        return GaugeResult(False, bad_edge=diff, reason="edge sets differ")
    f = {g1.root: Fraction(1)}
    queue = deque([g1.root])
    while queue:
        mu = queue.popleft()
        for lam, c1 in g1.up(mu).items():
            if lam not in f:
                f[lam] = g2.weights[(lam, mu)] * f[mu] / c1
                queue.append(lam)
    for (lam, mu), c1 in g1.weights.items():
        if c1 != g2.weights[(lam, mu)] * f[mu] / f[lam]:
            return GaugeResult(False, f, (lam, mu), "inconsistent on a cycle")
    if any(v <= 0 for v in f.values()):
        return GaugeResult(False, f, None, "nonpositive gauge value")
    return GaugeResult(True, f)


def gl_gauge_formula(lam: Partition, q: int) -> Fraction:
    """q^{sum (i-1) lam_i - C(|lam|, 2)}."""
    lam = Partition(lam)
    return Fraction(q) ** (lam.n() - lam.size * (lam.size - 1) // 2)


@dataclass
class HarmonicityReport:
    ok: bool
    residuals: dict        # vertex -> Fraction (nonzero only)
    checked: int

    def to_json(self) -> dict:
        return {"ok": self.ok, "checked": self.checked,
                "residuals": {p.label(): _fs(v) for p, v in self.residuals.items()}}


def harmonicity_check(F: Mapping[Partition, Fraction], g: BranchingGraph, N: int | None = None) -> HarmonicityReport:
    """F(v) = sum_w tau(w, v) F(w) for every v below level N."""
    N = g.N if N is None else N
    if N > g.N:
        raise ValueError("graph built with fewer levels than requested")
    res, checked = {}, 0
    for n in range(N):
        for v in g.levels[n]:
            checked += 1
            r = Fraction(F.get(v, 0)) - sum((c * Fraction(F.get(w, 0)) for w, c in g.up(v).items()), Fraction(0))
            if r:
                res[v] = r
    return HarmonicityReport(not res, res, checked)


def transport(F: Mapping[Partition, Fraction], gauge: Mapping[Partition, Fraction]) -> dict:
    """Carry a harmonic function of the second graph to the first: v -> F(v) f(v)."""
    return {v: Fraction(F.get(v, 0)) * gauge[v] for v in gauge}


def graph_function(g: BranchingGraph, fn: Callable[[Partition], Fraction]) -> dict:
    return {v: Fraction(fn(v)) for lvl in g.levels for v in lvl}
