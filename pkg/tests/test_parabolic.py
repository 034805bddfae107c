from collections import Counter
from fractions import Fraction
from itertools import product

import pytest

from hlmackey.fields import field
from hlmackey.hermitian import u_basis_params, unitary_group
from hlmackey.matrices import add, inverse, is_invertible, mul
from hlmackey.orbits import OrbitLabel, classify_raw
from hlmackey.parabolic import (
    InvariantFn, ambient_orbit_reps, ambient_orbits, build_parabolic, mackey_check, pair_ambient, pair_levi,
    par_induce, par_restrict, weyl_double_cosets,
)

chi = OrbitLabel.nilpotent
E_GL, E_U = chi("GL", ()), chi("U", ())


# -- brute-force oracles straight from the definitions ----------------------------------

def _group(setting, n, q):
    if setting == "U":
        return unitary_group(2 * n, q)
    F = field(q)
    out = []
    for flat in product(range(q), repeat=n * n):
        g = tuple(tuple(flat[r * n:(r + 1) * n]) for r in range(n))
        if is_invertible(F, g):
            out.append(g)
    return out


def _algebra(setting, n, q):
    if setting == "U":
        return list(u_basis_params(2 * n, q))
    return [tuple(tuple(flat[r * n:(r + 1) * n]) for r in range(n)) for flat in product(range(q), repeat=n * n)]


def _oracle_induce(P, X):
    """y -> (1/|P|) #{g in G : g X g^-1 in p with Levi type y}."""
    F = P.F
    G = _group(P.setting, P.n, P.q)
    Pord = sum(1 for g in G if P.in_parabolic(g))
    c = Counter()
    for g in G:
        Y = mul(F, mul(F, g, X), inverse(F, g))
        if P.in_parabolic(Y):
            c[P.levi_label(Y)] += 1
    return {y: Fraction(k, Pord) for y, k in c.items()}


def _oracle_restrict(P, Y):
    """lab -> (1/|u|) #{Z in u : Y + Z in orbit lab}."""
    F = P.F
    rad = [Z for Z in _algebra(P.setting, P.n, P.q) if P.in_parabolic(Z) and _levi_zero(P, Z)]
    kind = P.setting
    c = Counter(classify_raw(F, add(F, Y, Z), kind) for Z in rad)
    return {lab: Fraction(k, len(rad)) for lab, k in c.items()}


def _levi_zero(P, Z):
    A, B = P.project(Z)
    return all(v == 0 for r in A for v in r) and all(v == 0 for r in B for v in r)


CASES = [("GL", 2, 1, 1, 2), ("GL", 2, 1, 1, 3), ("GL", 3, 1, 2, 2), ("GL", 3, 2, 1, 2), ("U", 1, 1, 0, 3)]


@pytest.mark.parametrize("setting,n,i,j,q", CASES)
def test_induction_matches_group_sum(setting, n, i, j, q):
    P = build_parabolic(setting, n, i, j, q)
    for lab, X in ambient_orbit_reps(setting, n, q).items():
        ref = _oracle_induce(P, X)
        for y in P.levi_labels():
            got = par_induce({y: Fraction(1)}, P, {lab: X})(lab)
            assert got == ref.get(y, 0), (lab, y)


@pytest.mark.parametrize("setting,n,i,j,q", CASES)
def test_restriction_matches_radical_average(setting, n, i, j, q):
    P = build_parabolic(setting, n, i, j, q)
    labs = [e[0] for e in ambient_orbits(setting, n, q)]
    for y, _, Y in P.levi_orbits():
        ref = _oracle_restrict(P, Y)
        for lab in labs:
            assert par_restrict({lab: Fraction(1)}, P)(y) == ref.get(lab, 0)


def test_worked_example_gl2():
    P = build_parabolic("GL", 2, 1, 1, 3)
    x0 = chi("GL", (1,))
    ind = par_induce({(x0, x0): 1}, P).nonzero()
    assert ind == {chi("GL", (1, 1)): 4, chi("GL", (2,)): 1}
    assert par_restrict({chi("GL", (1, 1)): 1}, P)((x0, x0)) == Fraction(1, 3)
    assert par_restrict({chi("GL", (2,)): 1}, P)((x0, x0)) == Fraction(2, 3)


def test_trivial_parabolics():
    P = build_parabolic("GL", 2, 0, 2, 3)
    lab = chi("GL", (2,))
    assert par_restrict({lab: 1}, P).nonzero() == {(E_GL, lab): 1}
    assert par_induce({(E_GL, lab): 1}, P).nonzero() == {lab: 1}


def test_domain_mismatch():
    P = build_parabolic("GL", 2, 1, 1, 3)
    wrong = InvariantFn(("G", "GL", 3, 3), {})
    with pytest.raises(ValueError):
        par_restrict(wrong, P)


ADJ = [("GL", 2, 1, 1, 2), ("GL", 2, 1, 1, 3), ("U", 1, 1, 0, 3)]


@pytest.mark.parametrize("setting,n,i,j,q", ADJ)
def test_adjointness(setting, n, i, j, q):
    P = build_parabolic(setting, n, i, j, q)
    labs = [e[0] for e in ambient_orbits(setting, n, q)]
    for y in P.levi_labels():
        up = par_induce({y: 1}, P)
        for lab in labs:
            lhs = pair_ambient(up, {lab: 1}, setting, n, q)
            rhs = pair_levi({y: 1}, par_restrict({lab: 1}, P), P)
            assert lhs == rhs


def test_double_coset_counts():
    assert len(weyl_double_cosets("GL", 2, (1, 1), (1, 1))) == 2
    assert len(weyl_double_cosets("GL", 3, (1, 2), (2, 1))) == 2
    assert len(weyl_double_cosets("U", 1, (1, 0), (1, 0))) == 2


@pytest.mark.parametrize("q", [2, 3])
@pytest.mark.parametrize("n", [2, 3])
def test_mackey_gl(n, q):
    splits = [(i, n - i) for i in range(1, n)]
    for s1, s2 in product(splits, repeat=2):
        r = mackey_check("GL", q, n, s1, s2)
        assert r.equal, r.discrepancies()[:3]


def test_mackey_u2():
    r = mackey_check("U", 3, 1, (1, 0), (1, 0))
    assert r.equal


@pytest.mark.parametrize("s1,s2", [((1, 1), (1, 1)), ((1, 1), (2, 0)), ((2, 0), (1, 1)), ((2, 0), (2, 0))])
def test_mackey_u4(s1, s2):
    r = mackey_check("U", 3, 2, s1, s2)
    assert r.equal, r.discrepancies()[:3]


def test_u4_universe():
    ent = ambient_orbits("U", 2, 3)
    assert len(ent) == 105
    # the non-cuspidal orbits; cuspidal ones make up the rest of u(4, F_9)
    assert sum(s for _, s, _ in ent) == 31849281 < 3**16
