import random

import pytest
import sympy

from helpers import h0_oracle, rand_exponents, rand_gauge, z
from sl2p1.bundles import (
    SplittingType,
    birkhoff_factorize,
    bundle_ops,
    cokernel_splitting,
    dual,
    equivariant_model,
    h0_twisted,
    splitting_type,
    twist,
    validate_transition,
    veronese_inclusion,
)
from sl2p1.errors import BadDegree, NotInvertibleOnOverlap
from sl2p1.laurent import LaurentMatrix, LaurentPoly

diag = LaurentMatrix.diag_monomials
T_UP = LaurentMatrix([[z(1), 1], [0, z(-1)]])  # [[z, 1], [0, 1/z]]
T_DOWN = LaurentMatrix([[z(-1), 1], [0, z(1)]])  # [[1/z, 1], [0, z]]
T_B = LaurentMatrix([[z(1), z(2)], [1, z(1) + z(-1)]])


def gauged(rng, a, maxdeg=2):
    r = len(a)
    return rand_gauge(rng, r, 1, maxdeg) @ diag(a) @ rand_gauge(rng, r, -1, maxdeg)


def test_validate_transition_examples():
    assert validate_transition(diag([2, -1])) == (1, 1)
    assert validate_transition(T_UP) == (1, 0)
    with pytest.raises(NotInvertibleOnOverlap):
        validate_transition(LaurentMatrix([[1, 0], [0, z(1) - 1]]))
    with pytest.raises(NotInvertibleOnOverlap):
        validate_transition(LaurentMatrix([[1, 1], [1, 1]]))


def test_h0_examples():
    assert h0_twisted(diag([2, -1]), 0) == 3
    assert h0_twisted(LaurentMatrix([[1]]), 3) == 4
    assert h0_twisted(T_UP, -1) == 1
    assert h0_twisted(T_UP, 0) == 2
    assert h0_twisted(T_DOWN, -1) == 0 and h0_twisted(T_DOWN, 0) == 2


@pytest.mark.parametrize("T", [T_UP, T_DOWN, T_B], ids=["up", "down", "b"])
def test_h0_against_symbolic_oracle(T):
    for n in range(-4, 4):
        assert h0_twisted(T, n) == h0_oracle(T, n, n + 8)


def test_h0_random_against_symbolic_oracle():
    rng = random.Random(21)
    for _ in range(6):
        r = rng.randint(1, 3)
        T = gauged(rng, rand_exponents(rng, r, -2, 2), maxdeg=1)
        for n in (-2, 0, 1):
            assert h0_twisted(T, n) == h0_oracle(T, n, n + 12)


def test_h0_bounds_agree():
    rng = random.Random(4)
    T = gauged(rng, [2, 0, -3])
    for n in range(-3, 4):
        h = h0_twisted(T, n)
        assert h == h0_twisted(T, n, bound="wide") == h0_twisted(T, n, recheck=True)
        assert h == SplittingType([2, 0, -3]).h0(n)


def test_splitting_type_examples():
    assert splitting_type(diag([-1, 3, 0])).exponents == (3, 0, -1)
    assert splitting_type(T_UP).exponents == (1, -1)
    assert splitting_type(T_DOWN).exponents == (0, 0)
    assert splitting_type(T_B).exponents == (0, 0)
    assert splitting_type(T_UP, window="wide") == splitting_type(T_UP)


def test_splitting_type_of_gauge_transforms():
    rng = random.Random(17)
    for _ in range(15):
        a = rand_exponents(rng, rng.randint(1, 3))
        assert splitting_type(gauged(rng, a)).exponents == tuple(sorted(a, reverse=True))


def _assert_factors(f, T):
    assert f.product() == T
    assert f.T_plus.is_polynomial() and f.T_minus.is_antipolynomial()
    for M in (f.T_plus, f.T_minus):
        d = M.det()
        assert d.is_monomial() and d.min_exp == 0
    assert all(ok for _, ok in f.checks)


def test_birkhoff_examples():
    f = birkhoff_factorize(diag([3, -2]))
    assert f.T_plus == LaurentMatrix.identity(2) == f.T_minus
    assert f.D.exponents == (3, -2)
    for T in (T_UP, T_DOWN, T_B):
        f = birkhoff_factorize(T)
        _assert_factors(f, T)
        assert f.D == splitting_type(T)


def test_birkhoff_minus_plus_order():
    f = birkhoff_factorize(T_B, order="minus-plus")
    _assert_factors(f, T_B)
    assert f.D.exponents == (1, -1)
    # the factorization obtained by multiplying known factors
    known = LaurentMatrix([[1, 0], [z(-1), 1]]) @ diag([1, -1]) @ LaurentMatrix([[1, z(1)], [0, 1]])
    assert known == T_B
    assert f.D == splitting_type(T_B.T)


def test_birkhoff_random():
    rng = random.Random(33)
    for _ in range(15):
        a = rand_exponents(rng, rng.randint(1, 4))
        T = gauged(rng, a)
        f = birkhoff_factorize(T)
        _assert_factors(f, T)
        assert list(f.D) == sorted(a, reverse=True)


def test_bundle_ops_examples():
    assert bundle_ops(diag([3]), None, "dual") == diag([-3])
    assert bundle_ops(diag([2]), diag([-5]), "tensor") == diag([-3])
    assert bundle_ops(diag([1]), diag([-1]), "direct_sum") == diag([1, -1])
    with pytest.raises(ValueError):
        bundle_ops(diag([1]), None, "tensor")
    with pytest.raises(NotInvertibleOnOverlap):
        bundle_ops(LaurentMatrix([[z(1) + 1]]), None, "dual")


def test_invariants_on_random_corpus():
    rng = random.Random(99)
    for _ in range(8):
        a = rand_exponents(rng, rng.randint(1, 3))
        b = rand_exponents(rng, rng.randint(1, 2))
        T1, T2 = gauged(rng, a, 1), gauged(rng, b, 1)
        s1, s2 = splitting_type(T1), splitting_type(T2)
        m = rng.randint(-3, 3)
        assert splitting_type(twist(T1, m)).exponents == tuple(x + m for x in s1)
        assert splitting_type(dual(T1)).exponents == tuple(-x for x in reversed(s1.exponents))
        assert splitting_type(bundle_ops(T1, T2, "direct_sum")).exponents == tuple(
            sorted(s1.exponents + s2.exponents, reverse=True)
        )
        hs = [h0_twisted(T1, n) for n in range(-6, 6)]
        diffs = [y - x for x, y in zip(hs, hs[1:])]
        assert all(d >= 0 for d in diffs)
        assert all(x <= y for x, y in zip(diffs, diffs[1:])) and max(diffs) <= len(a)
        assert s1.degree == validate_transition(T1)[1]


def test_tensor_splitting():
    # O(a) ⊗ (O(b) ⊕ O(c)) = O(a+b) ⊕ O(a+c)
    rng = random.Random(5)
    T = gauged(rng, [2, -1], 1)
    assert splitting_type(bundle_ops(diag([3]), T, "tensor")).exponents == (5, 2)


def test_veronese_inclusion_examples():
    I0, Iinf = veronese_inclusion(2)
    assert I0 == LaurentMatrix([[1, 0], [z(1), 1], [0, z(1)]])
    assert I0.submatrix([0, 1], [0, 1]).det() == LaurentPoly.const(1)
    I0, _ = veronese_inclusion(3)
    assert I0.col(0) == (LaurentPoly.const(1), z(1, 2), z(2), LaurentPoly())
    assert I0.col(1) == (LaurentPoly(), LaurentPoly.const(1), z(1, 2), z(2))
    with pytest.raises(BadDegree):
        veronese_inclusion(1)


@pytest.mark.parametrize("n", range(2, 9))
def test_veronese_inclusion_binomial_oracle(n):
    x, y, zz = sympy.symbols("x y z")
    I0, Iinf = veronese_inclusion(n)
    for col, extra in enumerate((x, y)):
        form = sympy.Poly(sympy.expand((x + zz * y) ** (n - 1) * extra), x, y)
        for k in range(n + 1):
            coeff = sympy.expand(form.coeff_monomial(x ** (n - k) * y**k))
            entry = sum((int(c) * zz**e for e, c in I0[k, col].terms()), sympy.Integer(0))
            assert sympy.expand(coeff - entry) == 0
    assert Iinf.inverted().shift(n) == I0.shift(1)
    assert Iinf.is_polynomial()


def test_cokernel_splitting_examples():
    assert cokernel_splitting(2).exponents == (4,)
    assert cokernel_splitting(3).exponents == (5, 5)
    assert cokernel_splitting(6).exponents == (8,) * 5
    with pytest.raises(BadDegree):
        cokernel_splitting(1)


def test_equivariant_model_examples():
    assert equivariant_model(SplittingType([1, -1])) == diag([1, -1])
    assert equivariant_model(SplittingType([0, 0, 0])) == LaurentMatrix.identity(3)
    assert equivariant_model(SplittingType([5, 5])) == diag([5, 5])


def test_equivariant_model_is_gauge_equivalent():
    rng = random.Random(12)
    T = gauged(rng, [3, 1, 1], 1)
    f = birkhoff_factorize(T)
    model = equivariant_model(f.D)
    assert f.T_plus.inverse() @ T @ f.T_minus.inverse() == model
