from fractions import Fraction
from itertools import permutations

import pytest
import sympy

from hlmackey.partitions import (
    Partition, covers, double_covers, down_covers, partitions, psi_coeff, up_covers, up_double_covers,
)
from hlmackey.symfunc import (
    T_SYM, b_lambda, dump_expansion, expand_in_Q, hl_Q, hl_Q_monomial, hl_Qtilde, m_to_p, mul_pk_m, p_to_m,
    pieri_p1, pieri_q1, xi_coeff, xi_support_ok,
)


def test_partition_counts():
    for n in range(10):
        assert len(partitions(n)) == sympy.partition(n)


def test_partition_basics():
    lam = Partition((3, 1, 1))
    assert lam.conjugate() == (3, 1, 1)
    assert Partition((4, 2)).conjugate() == (2, 2, 1, 1)
    assert lam.n() == 0 * 3 + 1 + 2
    assert lam.mult(1) == 2
    assert lam.label() == "[3,1,1]"


def test_cover_relations():
    assert covers((1,), (2,)) and covers((1,), (1, 1))
    assert not covers((2,), (1, 1, 1))
    for n in range(6):
        for mu in partitions(n):
            for lam in up_covers(mu):
                assert mu in down_covers(lam)
    # double covers: two added boxes in one column or in adjacent columns
    assert double_covers((), (2,)) and double_covers((), (1, 1))
    assert double_covers((1,), (2, 1))
    assert not double_covers((2,), (3, 1))  # columns 3 and 1
    assert set(up_double_covers((1, 1))) == {Partition(p) for p in [(2, 2), (2, 1, 1), (1, 1, 1, 1), (3, 1)]}


def test_psi_values():
    t = Fraction(1, 3)
    assert psi_coeff((2,), (1,), t) == Fraction(2, 3)
    assert psi_coeff((1, 1), (1,), t) == 1
    assert psi_coeff((2, 2), (2, 1), t) == Fraction(2, 3)
    assert psi_coeff((3, 1), (2, 1), t) == Fraction(2, 3)
    assert psi_coeff((2, 2), (1, 1), t) == 0


# -- independent oracle: symmetrization in finitely many variables -------------

def _hl_P_oracle(lam, nvars):
    t = sympy.Symbol("t")
    xs = sympy.symbols(f"x0:{nvars}")
    lam = list(lam) + [0] * (nvars - len(lam))
    total = 0
    for w in permutations(range(nvars)):
        y = [xs[i] for i in w]
        term = sympy.Mul(*[y[i] ** lam[i] for i in range(nvars)])
        for i in range(nvars):
            for j in range(i + 1, nvars):
                term *= (y[i] - t * y[j]) / (y[i] - y[j])
        total += term
    v = 1
    for part in set(lam):
        m = lam.count(part)
        for j in range(1, m + 1):
            v *= (1 - t**j) / (1 - t)
    return sympy.Poly(sympy.factor(sympy.together(total / v)), *xs), t, xs


@pytest.mark.parametrize("lam", [(1,), (2,), (1, 1), (3,), (2, 1), (1, 1, 1), (2, 2), (3, 1)])
def test_hl_Q_against_symmetrization(lam):
    n = sum(lam)
    P, t, xs = _hl_P_oracle(lam, n)
    ours = hl_Q_monomial(lam, T_SYM)
    blam = b_lambda(Partition(lam), t)
    for mu in partitions(n):
        exps = tuple(mu) + (0,) * (n - len(mu))
        ref = sympy.simplify(blam * P.coeff_monomial(exps))
        got = sympy.sympify(ours[mu].as_expr() if mu in ours else 0)
        assert sympy.simplify(got - ref) == 0, (lam, mu)


def test_q_one_is_one_minus_t_p_one():
    q1 = hl_Q((1,), "t", basis="power-sum").coeffs
    assert q1 == {Partition((1,)): 1 - T_SYM}


def test_hl_Q_at_t_zero_is_schur_leading():
    # at t=0 Q_lambda is the Schur function; s_(2) = m_(2) + m_(1,1)
    assert hl_Q_monomial((2,), Fraction(0)) == {Partition((2,)): 1, Partition((1, 1)): 1}


def test_nvars_guard():
    with pytest.raises(ValueError):
        hl_Q((2, 1), "t", nvars=2)


def test_basis_changes_roundtrip():
    for n in range(1, 6):
        for lam in partitions(n):
            f = hl_Q_monomial(lam, Fraction(1, 3))
            assert p_to_m(m_to_p(f, n)) == {k: v for k, v in f.items() if v}
            assert expand_in_Q(f, n, Fraction(1, 3)) == {lam: 1}


def test_mul_pk_m_small():
    # p_1 * m_(1) = m_(2) + 2 m_(1,1)
    assert mul_pk_m(1, {Partition((1,)): 1}) == {Partition((2,)): 1, Partition((1, 1)): 2}


def test_pieri_q1_matches_psi_symbolic_small():
    for n in range(4):
        for mu in partitions(n):
            for lam in partitions(n + 1):
                assert pieri_q1(lam, mu, "t") == psi_coeff(lam, mu, T_SYM)


def test_pieri_p1_carries_one_over_one_minus_t():
    # p_1 * Q_() = Q_(1) / (1-t)
    assert pieri_p1((1,), (), "t") == 1 / (1 - T_SYM)


def test_xi_examples():
    t = Fraction(1, 3)
    assert xi_coeff((1, 1), (), t) == 1
    assert xi_coeff((2,), (), t) == 1 - t
    for mu in partitions(2):
        for lam in partitions(4):
            assert xi_support_ok(lam, mu, t)


def test_qtilde_definition():
    got = hl_Qtilde((1, 1), "t").coeffs
    ref = hl_Q((1, 1), -T_SYM).coeffs
    assert got == {k: -v for k, v in ref.items()}


def test_dump_expansion_is_json():
    import json
    doc = json.loads(dump_expansion((2, 1), "1/3"))
    assert doc["lambda"] == [2, 1]
