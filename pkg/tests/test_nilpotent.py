import random
from fractions import Fraction

import pytest

from helpers import jordan_nilpotent, rand_nilpotent, to_sympy
from sl2p1.errors import LengthMismatch, NotComplementary, NotNilpotent, ZeroVector
from sl2p1.linalg import Flag, QMatrix, span
from sl2p1.nilpotent import (
    check_complementary_flags,
    conjugate_partition,
    flag_refinement,
    jordan_basis,
    nilpotency_degree,
    nilpotent_profile,
    orbit_curve,
)

J3 = QMatrix([[0, 1, 0], [0, 0, 1], [0, 0, 0]])


def test_profile_examples():
    p = nilpotent_profile(J3)
    assert (p.degree, p.ker_dims, p.im_dims, p.partition) == (3, (1, 2, 3), (2, 1), (3,))
    z = nilpotent_profile(QMatrix.zeros(2, 2))
    assert (z.degree, z.ker_dims, z.partition) == (1, (2,), (1, 1))
    with pytest.raises(NotNilpotent):
        nilpotent_profile(QMatrix([[1, 0], [0, 0]]))


def test_profile_recovers_constructed_partition():
    rng = random.Random(11)
    for _ in range(40):
        A, parts = rand_nilpotent(rng, rng.randint(1, 9))
        p = nilpotent_profile(A)
        assert list(p.partition) == parts
        assert p.degree == parts[0]
        # oracle: sympy's Jordan form block sizes
        _, J = to_sympy(A).jordan_form()
        blocks, run = [], 1
        for i in range(J.rows - 1):
            if J[i, i + 1] == 1:
                run += 1
            else:
                blocks.append(run)
                run = 1
        blocks.append(run)
        assert sorted(blocks, reverse=True) == parts


def test_conjugate_partition():
    assert conjugate_partition([3, 1]) == (2, 1, 1)
    assert conjugate_partition([2, 2, 1]) == (3, 2)
    assert conjugate_partition([]) == ()


def test_jordan_basis_chains():
    rng = random.Random(5)
    for _ in range(30):
        A, parts = rand_nilpotent(rng, rng.randint(1, 8))
        chains = jordan_basis(A)
        assert [len(c) for c in chains] == parts
        vecs = [v for c in chains for v in c]
        assert span(vecs, A.rows).dim == A.rows
        for c in chains:
            for a, b in zip(c, c[1:]):
                assert A @ a == b
            assert not any(A @ c[-1])


def test_jordan_basis_is_deterministic_on_blocks():
    assert jordan_basis(J3) == [[(0, 0, 1), (0, 1, 0), (1, 0, 0)]]


def test_orbit_curve_examples():
    oc = orbit_curve(J3, [0, 0, 1])
    assert oc.degree == 2
    assert oc.coefficient_vectors == ((0, 0, 1), (0, 1, 0), (Fraction(1, 2), 0, 0))
    assert orbit_curve(J3, [1, 0, 0]).degree == 0
    with pytest.raises(ZeroVector):
        orbit_curve(J3, [0, 0, 0])
    with pytest.raises(NotNilpotent):
        orbit_curve(QMatrix.identity(2), [1, 0])


def _coordinate_flags(n, cuts):
    """U_j = span(e_0..e_{c_j - 1}), V_j = span(e_{c_j}..e_{n-1})."""
    U = Flag("ascending", [span([[int(i == k) for i in range(n)] for k in range(c)], n) for c in cuts], n)
    V = Flag("descending", [span([[int(i == k) for i in range(n)] for k in range(c, n)], n) for c in cuts], n)
    return U, V


def test_flag_refinement_coordinate_case():
    U, V = _coordinate_flags(4, [1, 3])
    assert check_complementary_flags(U, V)
    (D,) = flag_refinement(U, V)
    assert D == span([[0, 1, 0, 0], [0, 0, 1, 0]])


def test_flag_errors():
    U, V = _coordinate_flags(3, [1, 2])
    with pytest.raises(LengthMismatch):
        check_complementary_flags(U, Flag("descending", [V[0]], 3))
    bad_V = Flag("descending", [span([[1, 0, 0], [0, 1, 0]]), span([[1, 0, 0]])], 3)
    assert not check_complementary_flags(U, bad_V)
    with pytest.raises(NotComplementary):
        flag_refinement(U, bad_V)


def test_nilpotency_degree_of_blocks():
    assert nilpotency_degree(jordan_nilpotent([4, 2, 1])) == 4
