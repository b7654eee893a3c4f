import random
from itertools import product

import pytest

from helpers import rand_unimodular
from sl2p1.errors import IrrationalSpectrum, NotInAlgebra
from sl2p1.lie import (
    LieBasis,
    centralizer_dimension,
    commutant_dimension,
    find_nilpotent,
    killing_form,
    lie_closure,
    linear_field_zeros,
    structure_report,
)
from sl2p1.linalg import QMatrix, Subspace, span
from sl2p1.sl2 import irrep_matrices

E = QMatrix([[0, 1], [0, 0]])
F = QMatrix([[0, 0], [1, 0]])
H = QMatrix([[1, 0], [0, -1]])


def _unit(n, i, j):
    return QMatrix([[int((a, b) == (i, j)) for b in range(n)] for a in range(n)])


def test_closure_examples():
    L = lie_closure([E, F])
    assert L.dim == 3 and not L.was_closed
    assert L.solver().contains(H.flatten())
    assert lie_closure([H]).dim == 1
    assert lie_closure([E]).dim == 1 and lie_closure([E]).was_closed


def test_killing_sl2_values():
    L = lie_closure([E, H, F])
    rep = structure_report(L)
    g = rep.killing_gram
    assert (g[1, 1], g[0, 2], g[0, 0], g[0, 1]) == (8, 4, 0, 0)
    assert rep.is_killing_nondegenerate and not rep.is_abelian
    assert rep.derived.dim == 3 and rep.center_dim == 0


def test_killing_sl3_trace_form_oracle():
    # on sl(n) the Killing form is 2n tr(xy)
    n = 3
    gens = [_unit(n, i, j) for i, j in product(range(n), repeat=2) if i != j]
    gens += [_unit(n, 0, 0) - _unit(n, 1, 1), _unit(n, 1, 1) - _unit(n, 2, 2)]
    L = lie_closure(gens)
    assert L.dim == 8
    g = killing_form(L)
    for i, x in enumerate(L.generators):
        for j, y in enumerate(L.generators):
            assert g[i, j] == 2 * n * (x @ y).trace()


def test_killing_congruence_invariance():
    rng = random.Random(1)
    L = lie_closure([E, H, F])
    P = rand_unimodular(rng, 3)
    new = [L.element([P[k, i] for k in range(3)]) for i in range(3)]
    L2 = lie_closure(new)
    assert killing_form(L2) == P.T @ killing_form(L) @ P


def test_abelian_and_borel_reports():
    D = lie_closure([QMatrix.diag([1, 0]), QMatrix.diag([0, 1])])
    rep = structure_report(D)
    assert rep.is_abelian and rep.derived.dim == 0 and rep.killing_gram.is_zero()
    B = lie_closure([E, H])
    rep = structure_report(B)
    assert rep.derived.generators == (E,)
    assert not rep.is_killing_nondegenerate


@pytest.mark.parametrize("n", range(1, 7))
def test_irreps_are_irreducible(n):
    A, Hn, Bn = irrep_matrices(n)
    L = lie_closure([A, Hn, Bn])
    c = commutant_dimension(L)
    assert c.dim == 1 and c.verdict == "irreducible"
    assert centralizer_dimension(L, Hn) == 1
    assert structure_report(L).is_killing_nondegenerate


def test_commutant_reducible_and_zero_algebra():
    blk = lambda X: QMatrix.block_diag(X, X)  # noqa: E731
    L = lie_closure([blk(E), blk(F)])
    c = commutant_dimension(L)
    assert c.dim == 4 and c.verdict == "reducible"
    assert c.witness is not None and 0 < c.witness.dim < 4
    assert all(c.witness.is_invariant(g) for g in L.generators)
    Z = lie_closure([], ambient_dim=3)
    assert commutant_dimension(Z).dim == 9


def test_commutant_inconclusive_over_q():
    # rotation generator commutes with itself; its spectrum is not rational
    R = QMatrix([[0, -1], [1, 0]])
    c = commutant_dimension(lie_closure([R]))
    assert c.dim == 2 and c.verdict == "inconclusive"


def test_centralizer_examples():
    L = lie_closure([E, H, F])
    assert centralizer_dimension(L, H) == 1
    assert centralizer_dimension(L, QMatrix.zeros(2, 2)) == 3
    A = lie_closure([QMatrix.diag([1, 2, 3]), QMatrix.diag([0, 1, 0])])
    assert centralizer_dimension(A, QMatrix.diag([1, 3, 3])) == 2
    with pytest.raises(NotInAlgebra):
        centralizer_dimension(L, QMatrix.identity(2))


def test_find_nilpotent_cases():
    assert find_nilpotent(lie_closure([E, H, F])) == E
    assert find_nilpotent(lie_closure([E, H])) == E
    assert find_nilpotent(lie_closure([QMatrix.diag([1, 0, 2]), QMatrix.diag([0, 1, 1])])) is None


def test_find_nilpotent_needs_random_search():
    L = lie_closure([H + E, H + F])
    assert all(not (g @ g).is_zero() for g in L.generators)
    N1 = find_nilpotent(L, seed=3)
    N2 = find_nilpotent(L, seed=3)
    assert N1 is not None and N1 == N2
    assert not N1.is_zero() and (N1 @ N1).is_zero()
    assert L.solver().contains(N1.flatten())


def test_field_zeros():
    J3 = QMatrix([[0, 1, 0], [0, 0, 1], [0, 0, 0]])
    assert linear_field_zeros(J3) == [(0, span([[1, 0, 0]]))]
    zs = linear_field_zeros(QMatrix.diag([2, 0, -2]))
    assert [S for _, S in zs] == [Subspace.coordinate(3, [i]) for i in range(3)]
    assert len(linear_field_zeros(QMatrix.diag([2, 0, -2]), avoid=Subspace.coordinate(3, [0, 1]))) == 1
    with pytest.raises(IrrationalSpectrum):
        linear_field_zeros(QMatrix([[0, -1], [1, 0]]))


def test_field_zeros_of_h_are_weight_lines():
    A, Hn, Bn = irrep_matrices(3)
    zs = linear_field_zeros(Hn)
    assert [int(lam) for lam, _ in zs] == [3, 1, -1, -3]
    # the lowest-weight line is the image of B^k
    assert zs[-1][1] == span([[0, 0, 0, 1]])


def test_lie_basis_json():
    L = lie_closure([E, F])
    L2 = LieBasis.from_json(L.to_json())
    assert L2.generators == L.generators
    with pytest.raises(ValueError):
        LieBasis.from_json({"ambient_dim": 3, "generators": [E.to_json()]})
