from fractions import Fraction
from itertools import product
import pytest

from hlmackey.fields import field, skew_elements
from hlmackey.hermitian import (
    adapted_basis, gl_order, hform, isotropic_subspaces, subspaces, unitary_group, unitary_order,
)
from hlmackey.matrices import J, Matrix, in_u_raw, jordan_type, mul, star_raw
from hlmackey.orbits import (
    InfeasibleError, OrbitLabel, classify, count_K, count_K_all, count_L, count_L_all, enumerate_orbits,
    gl_nilpotent_rep, gl_orbit_size, k_border, L_closed_form, u_nilpotent_orbit_size, u_nilpotent_rep,
)
from hlmackey.partitions import Partition, covers, double_covers, partitions


# -- Hermitian forms ----------------------------------------------------------

@pytest.mark.parametrize("m", [1, 2])
def test_unitary_order_brute_force(m):
    assert len(unitary_group(m, 3)) == unitary_order(m, 3)


def test_adapted_basis():
    F = field(9)
    for m in (2, 3, 4):
        Jm = J(m)
        C = adapted_basis(F, Jm)
        assert mul(F, mul(F, star_raw(F, C), Jm), C) == Jm
    # with a prescribed isotropic first column
    v = (1, 0, 0, 0)
    C = adapted_basis(F, J(4), [v])
    assert tuple(r[0] for r in C) == v


def test_isotropic_subspace_counts():
    F = field(9)
    # isotropic lines in F_9^2 with J: q + 1; in F_9^4: (q^3+1)(q+1)
    assert len(isotropic_subspaces(F, 2, 1)) == 4
    n1 = len(isotropic_subspaces(F, 4, 1))
    n2 = len(isotropic_subspaces(F, 4, 2))
    assert n1 == (3**3 + 1) * (3**2 + 1)
    assert n2 == (3**3 + 1) * (3 + 1)
    assert len(subspaces(field(3), 3, 1)) == 13


def test_hform_sesquilinear():
    F = field(9)
    H = J(2)
    u, v = (3, 1), (2, 5)
    assert hform(F, H, u, v) == F.pow(hform(F, H, v, u), 3)


# -- enumeration -----------------------------------------------------------------

@pytest.mark.parametrize("n,q", [(1, 3), (2, 2), (2, 3), (3, 2)])
def test_gl_exhaustive_matches_types(n, q):
    ex = enumerate_orbits("GL", n, q, "exhaustive")
    ty = enumerate_orbits("GL", n, q, "types")
    assert {l: s for l, s, _ in ex.entries} == {l: s for l, s, _ in ty.entries}
    assert ex.total() == q ** (n * n)


def test_gl_counts():
    assert len(enumerate_orbits("GL", 1, 3, "types").entries) == 3
    # classes of 2x2 matrices over F_q: q^2 + q
    assert len(enumerate_orbits("GL", 2, 3, "types").entries) == 12
    assert len(enumerate_orbits("GL", 2, 9, "types").entries) == 90


def test_u2_exhaustive():
    T = enumerate_orbits("U", 1, 3, "exhaustive")
    assert T.total() == 81
    assert len(T.entries) == 12
    for lab, size, rep in T.entries:
        assert in_u_raw(field(9), rep)
        assert classify(Matrix.of(9, rep), "U") == lab


def test_u_nilpotent_sizes():
    # nilpotent elements of u(m) number q^{m(m-1)}
    for m in (2, 3, 4):
        tot = sum(u_nilpotent_orbit_size(lam, 3) for lam in partitions(m))
        assert tot == 3 ** (m * (m - 1))
    T = enumerate_orbits("U", 1, 3, "exhaustive")
    sizes = {l.partition: s for l, s, _ in T.entries if l.is_nilpotent}
    assert sizes == {Partition(l): u_nilpotent_orbit_size(l, 3) for l in partitions(2)}


def test_gl_nilpotent_sizes():
    # q^{n(n-1)} nilpotent matrices in gl(n, F_q)
    for n in range(1, 5):
        tot = sum(gl_orbit_size((((0, 1), tuple(l)),), 2) for l in partitions(n))
        assert tot == 2 ** (n * (n - 1))


def test_u_nilpotent_reps():
    F = field(9)
    for m in (2, 3, 4):
        for lam in partitions(m):
            X = u_nilpotent_rep(tuple(lam), 3)
            assert in_u_raw(F, X)
            assert Partition(jordan_type(F, X)) == lam


def test_infeasible():
    with pytest.raises(InfeasibleError):
        enumerate_orbits("U", 3, 3, "exhaustive")
    with pytest.raises(InfeasibleError):
        enumerate_orbits("GL", 4, 3, "exhaustive")


def test_label_roundtrip():
    for lab, _, _ in enumerate_orbits("GL", 2, 3, "types").entries:
        assert OrbitLabel.parse("GL", str(lab)) == lab


# -- L and K counts -----------------------------------------------------------------

@pytest.mark.parametrize("q", [2, 3])
def test_count_L_closed_form(q):
    for n in range(4):
        for mu in partitions(n):
            row = count_L_all(tuple(mu), q)
            assert sum(row.values()) == q**n
            for lam in partitions(n + 1):
                assert row.get(lam, 0) == L_closed_form(lam, mu, q)
                assert (row.get(lam, 0) != 0) == covers(mu, lam)


def test_count_L_rep_independent():
    # any representative of the orbit gives the same count
    F = field(3)
    X = gl_nilpotent_rep((2, 1))
    g = ((1, 1, 0), (0, 1, 2), (1, 0, 2))
    from hlmackey.matrices import inverse
    Y = mul(F, mul(F, g, X), inverse(F, g))
    for lam in partitions(4):
        assert count_L(lam, (2, 1), 3, rep=Y) == count_L(lam, (2, 1), 3)


def test_count_K_small():
    assert count_K((1, 1), (), 3) == 1
    assert count_K((2,), (), 3) == 2
    row = count_K_all((1, 1), 3)
    assert sum(row.values()) == 3 ** (4 * 1 + 1)
    for lam in partitions(4):
        assert (row.get(lam, 0) != 0) == double_covers((1, 1), lam)


def test_k_border_in_u():
    F = field(9)
    X = u_nilpotent_rep((2,), 3)
    for x in product(range(9), repeat=2):
        for y in skew_elements(F):
            assert in_u_raw(F, k_border(F, X, x, y))


def test_orders():
    assert gl_order(2, 3) == 48
    assert unitary_order(2, 3) == 96
    assert Fraction(unitary_order(4, 3)) > 0
