from fractions import Fraction

import pytest

from hlmackey.bimodule import (
    act, basis_A, basis_B, check_bialgebra, check_twisted, chi, counit, delta, delta_tilde, mult, nabla,
    nabla_tilde, odot, omega_twist, triple_coproduct, unit_A, unit_B,
)
from hlmackey.orbits import gl_types
from hlmackey.partitions import partitions

X1 = chi("GL", (1,))
ONE = {unit_A(): Fraction(1)}


def v(*labs):
    return {lab: Fraction(1) for lab in labs}


def test_product_example():
    q = 3
    assert nabla({(X1, X1): 1}, q) == {chi("GL", (1, 1)): q + 1, chi("GL", (2,)): 1}


def test_unit_and_counit():
    for a in basis_A(3, 2):
        assert mult(ONE, v(a), 3) == v(a)
    d = delta(v(X1), 3)
    assert d == {(unit_A(), X1): 1, (X1, unit_A()): 1}
    assert counit(v(X1)) == 0 and counit(ONE) == 1


def test_dimensions():
    for q in (2, 3):
        for n in range(4):
            labs = basis_A(q, n)
            assert len(labs) == len(gl_types(n, q))
            assert sum(1 for l in labs if l.is_nilpotent) == len(partitions(n))


def test_module_examples():
    q = 3
    got = nabla_tilde({(X1, unit_B()): 1}, q)
    assert got == {chi("U", (1, 1)): q + 1, chi("U", (2,)): 1}
    d = delta_tilde(v(chi("U", (1, 1))), q)
    assert d == {(unit_A(), chi("U", (1, 1))): 1, (X1, unit_B()): Fraction(1, q)}


def test_omega():
    # fixes nilpotent indicators, involutive, i -> i on gl(1, F_9)
    for n in (1, 2):
        for a in basis_A(9, n):
            w = omega_twist(v(a), 9)
            assert omega_twist(w, 9) == v(a)
            if a.is_nilpotent:
                assert w == v(a)
    # a = i is the root of x - i; its code is 3, so x - i = (neg 3, 1) = (6, 1)
    lab_i = [a for a in basis_A(9, 1) if not a.is_nilpotent and a.cls[1][0][0] == (6, 1)][0]
    assert omega_twist(v(lab_i), 9) == v(lab_i)
    moved = [a for a in basis_A(9, 1) if omega_twist(v(a), 9) != v(a)]
    assert moved  # omega is not the identity on A_9


def test_odot_examples():
    q = 3
    x = {(unit_A(), unit_B()): Fraction(1)}
    assert odot(ONE, x, q) == x
    # three Sweedler terms for chi_(1)
    assert triple_coproduct(v(X1), 9) == {
        (X1, unit_A(), unit_A()): 1, (unit_A(), X1, unit_A()): 1, (unit_A(), unit_A(), X1): 1}
    got = odot(v(X1), x, q)
    ref = {(X1, unit_B()): Fraction(2)}
    for b, c in act(v(X1), v(unit_B()), q).items():
        ref[(unit_A(), b)] = ref.get((unit_A(), b), 0) + c
    assert got == ref


def test_diagram_example():
    q = 3
    lhs = delta_tilde(act(v(X1), v(unit_B()), q), q)
    assert lhs == odot(v(X1), delta_tilde(v(unit_B()), q), q)


def test_bound_errors():
    with pytest.raises(ValueError):
        nabla({(chi("GL", (1, 1, 1)), chi("GL", (1, 1))): 1}, 2)
    with pytest.raises(ValueError):
        check_twisted(3, 3)


def test_bialgebra_small():
    r = check_bialgebra(2, 3)
    assert r.ok, r.failures[:3]
    assert r.to_json()["check"] == "bialgebra"


def test_twisted_degree_one_and_untwisted_failure():
    r = check_twisted(3, 1)
    assert r.ok, r.failures[:3]
    # without the twist the diagram breaks already at degree one
    assert r.notes["untwisted_counterexample_count"] > 0
    assert "nilp:[1](x)nilp:[]" in r.notes["untwisted_counterexamples"]


def test_basis_B_levels():
    assert len(basis_B(3, 0)) == 1
    assert len(basis_B(3, 1)) == 12
