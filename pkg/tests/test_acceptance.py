"""Acceptance criteria 1-11, exact arithmetic throughout.

Every test prints one ``PASS criterion k`` / ``FAIL criterion k`` line (visible
with ``pytest -v``; printing bypasses capture) before asserting.
"""
from fractions import Fraction
from itertools import product

import pytest

from hlmackey.bimodule import check_bialgebra, check_twisted, chi
from hlmackey.functionals import (
    cone_check, load_functional, mix, mix_closed_form, mix_closed_form_check, phi_from_zero_values, phi_zero,
    psi_zero, save_functional,
)
from hlmackey.graphs import build_graph, gl_gauge_formula, similarity_gauge
from hlmackey.orbits import L_closed_form, count_K_all, count_L_all
from hlmackey.parabolic import (
    ambient_orbits, build_parabolic, mackey_check, pair_ambient, pair_levi, par_induce, par_restrict,
)
from hlmackey.partitions import covers, double_covers, partitions, psi_coeff
from hlmackey.symfunc import T_SYM, pieri_p1, pieri_q1, xi_coeff, xi_support_ok

S_SWEEP = [Fraction(0), Fraction(1, 8), Fraction(1, 4), Fraction(3, 8), Fraction(1, 2)]


def report(capsys, k, ok, detail=""):
    with capsys.disabled():
        print(f"\n{'PASS' if ok else 'FAIL'} criterion {k}" + (f": {detail}" if detail else ""))
    assert ok, detail


# 1 -------------------------------------------------------------------------------------

def test_criterion_01_count_L_closed_form(capsys):
    bad = []
    for q in (2, 3):
        for n in range(5):
            for mu in partitions(n):
                row = count_L_all(tuple(mu), q)
                for lam in partitions(n + 1):
                    got = row.get(lam, 0)
                    if covers(mu, lam) and got != L_closed_form(lam, mu, q):
                        bad.append((q, str(lam), str(mu), got))
                    if not covers(mu, lam) and got != 0:
                        bad.append((q, str(lam), str(mu), got))
    report(capsys, 1, not bad, f"{len(bad)} mismatching edges" if bad else "all edges with |mu| <= 4, q in {2,3}")


# 2 -------------------------------------------------------------------------------------

def _pieri_mismatches(fn):
    return [(str(lam), str(mu)) for n in range(7) for mu in partitions(n) for lam in partitions(n + 1)
            if fn(lam, mu, T_SYM) != psi_coeff(lam, mu, T_SYM)]


@pytest.mark.xfail(strict=True, reason="the p1 coefficient carries an extra factor 1/(1-t) relative to psi; "
                                       "see the q1 variant below")
def test_criterion_02_pieri_p1_equals_psi(capsys):
    bad = _pieri_mismatches(pieri_p1)
    report(capsys, 2, not bad, f"{len(bad)} mismatches, first {bad[:1]}" if bad else "")


def test_criterion_02_companion_pieri_q1_equals_psi(capsys):
    bad = _pieri_mismatches(pieri_q1)
    assert not bad, bad[:3]
    # and the p1 coefficient is psi/(1-t) on every pair
    for n in range(7):
        for mu in partitions(n):
            for lam in partitions(n + 1):
                diff = pieri_p1(lam, mu, T_SYM) * (1 - T_SYM) - psi_coeff(lam, mu, T_SYM)
                assert diff == 0, (lam, mu)


# 3 -------------------------------------------------------------------------------------

def test_criterion_03_xi_support_and_sign(capsys):
    t = Fraction(1, 3)
    bad = []
    for n in range(7):
        for mu in partitions(n):
            for lam in partitions(n + 2):
                c = xi_coeff(lam, mu, t)
                if not xi_support_ok(lam, mu, t) or (c != 0) != double_covers(mu, lam) or c < 0:
                    bad.append((str(lam), str(mu), c))
    report(capsys, 3, not bad, f"{len(bad)} failures" if bad else "support and sign at t=1/3, |mu| <= 6")


# 4 -------------------------------------------------------------------------------------

def test_criterion_04_gauges(capsys):
    r1 = similarity_gauge(build_graph("glb0", 3, 4), build_graph("yhl", 3, 4))
    formula = r1.ok and all(r1.gauge[v] == gl_gauge_formula(v, 3) for v in r1.gauge)
    r2 = similarity_gauge(build_graph("ub0", 3, 2), build_graph("yhl-even", 3, 2))
    ok = formula and r2.ok
    report(capsys, 4, ok, f"glb0~yhl formula={formula}, ub0~yhl-even exists={r2.ok}")


# 5 -------------------------------------------------------------------------------------

def test_criterion_05_mackey(capsys):
    failures = []
    for q, n in product((2, 3), (2, 3)):
        splits = [(i, n - i) for i in range(1, n)]
        for s1, s2 in product(splits, repeat=2):
            if not mackey_check("GL", q, n, s1, s2).equal:
                failures.append(("GL", q, n, s1, s2))
    u_cases = [(1, (1, 0), (1, 0))] + [(2, a, b) for a, b in product([(1, 1), (2, 0)], repeat=2)]
    for n, s1, s2 in u_cases:
        if not mackey_check("U", 3, n, s1, s2).equal:
            failures.append(("U", 3, n, s1, s2))
    report(capsys, 5, not failures, f"failing cases {failures}" if failures else "GL n in {2,3}, U 2n in {2,4}")


# 6 -------------------------------------------------------------------------------------

def test_criterion_06_bialgebra(capsys):
    reps = [check_bialgebra(2, 4), check_bialgebra(3, 3)]
    ok = all(r.ok for r in reps)
    report(capsys, 6, ok, "; ".join(f"q={r.q} maxdeg={r.maxdeg} failures={len(r.failures)}" for r in reps))


# 7 -------------------------------------------------------------------------------------

def test_criterion_07_twisted_module(capsys):
    r = check_twisted(3, 2)
    report(capsys, 7, r.ok, f"failures={len(r.failures)}, untwisted counterexamples="
                            f"{r.notes.get('untwisted_counterexample_count')}")


# 8 -------------------------------------------------------------------------------------

def test_criterion_08_psi0(capsys):
    psi = psi_zero(3, 2)
    vals = [psi(chi("U", (1,) * (2 * n))) for n in range(3)]
    ok = cone_check(psi, "Ftilde0").ok and vals == [1, Fraction(1, 4), Fraction(1, 1120)]
    report(capsys, 8, ok, "values " + ", ".join(map(str, vals)))


# 9 -------------------------------------------------------------------------------------

def test_criterion_09_mix_sweep(capsys):
    phi, psi = phi_zero(9, 2), psi_zero(3, 2)
    bad = [str(s) for s in S_SWEEP if not cone_check(mix(phi, psi, s), "Ftilde0").ok]
    same = mix(phi, psi, 0).values == psi.values
    report(capsys, 9, not bad and same, f"failing s={bad}, s=0 reproduces psi0={same}")


# 10 ------------------------------------------------------------------------------------

def test_criterion_10_closed_form(capsys, tmp_path):
    tables = [[1, 1, Fraction(1, 10)]]
    for k, vals in enumerate([[1, Fraction(1, 2), Fraction(1, 30)], [1, 2, Fraction(3, 10)]]):
        path = tmp_path / f"phi{k}.json"
        save_functional(phi_from_zero_values(vals, 9), path)
        loaded = load_functional(path)
        tables.append([loaded(chi("GL", (1,) * n)) for n in range(3)])
    bad = [(t, str(s)) for t in tables for s in S_SWEEP if not mix_closed_form_check(t, s, 3, 2).ok]
    n1 = all(mix_closed_form(tables[0], s, 3, 1) == (1 - 2 * s) / 4 + s / 3 for s in S_SWEEP)
    report(capsys, 10, not bad and n1, f"{len(bad)} failing (table, s) pairs, n=1 formula={n1}")


# 11 ------------------------------------------------------------------------------------

def test_criterion_11_adjointness_and_conservation(capsys):
    bad = []
    for setting, n, i, j, q in [("GL", 1, 1, 0, 2), ("GL", 2, 1, 1, 2), ("GL", 2, 1, 1, 3), ("GL", 2, 2, 0, 3),
                                ("U", 1, 1, 0, 3)]:
        P = build_parabolic(setting, n, i, j, q)
        labs = [e[0] for e in ambient_orbits(setting, n, q)]
        for y in P.levi_labels():
            up = par_induce({y: 1}, P)
            for lab in labs:
                if pair_ambient(up, {lab: 1}, setting, n, q) != pair_levi({y: 1}, par_restrict({lab: 1}, P), P):
                    bad.append((setting, n, i, j, q, str(y), str(lab)))
    for q in (2, 3):
        for n in range(5):
            for mu in partitions(n):
                if sum(count_L_all(tuple(mu), q).values()) != q**n:
                    bad.append(("L", q, str(mu)))
    for n in range(2):
        for mu in partitions(2 * n):
            if sum(count_K_all(tuple(mu), 3).values()) != 3 ** (4 * n + 1):
                bad.append(("K", str(mu)))
    report(capsys, 11, not bad, f"failures {bad[:3]}" if bad else "adjointness and sum rules hold")
