"""Either a matrix Lie algebra contains a nonzero nilpotent, or it is abelian
and diagonalizable-looking.  Then the sl(2) irreducibility certificates used
for the rationality argument: commutant, regular element, zero set."""
from sl2p1 import QMatrix, commutant_dimension, find_nilpotent, lie_closure, structure_report
from sl2p1.linalg import image
from sl2p1.lie import centralizer_dimension, linear_field_zeros
from sl2p1.sl2 import irrep_matrices

E = QMatrix([[0, 1], [0, 0]])
F = QMatrix([[0, 0], [1, 0]])
H = QMatrix([[1, 0], [0, -1]])

print("Generated by H + E and H + F (neither is nilpotent):")
L = lie_closure([H + E, H + F])
rep = structure_report(L)
print(f"  dim {L.dim}, abelian {rep.is_abelian}, Killing nondegenerate {rep.is_killing_nondegenerate}")
N = find_nilpotent(L, seed=1)
print("  nilpotent element found by the seeded search:", [[str(x) for x in row] for row in N.tolist()])

print("\nA diagonal algebra:")
D = lie_closure([QMatrix.diag([1, 2, 0]), QMatrix.diag([0, 1, 1])])
print(f"  abelian {structure_report(D).is_abelian}, nilpotent search -> {find_nilpotent(D)}")

print("\nsl(2) acting on U_n:")
for n in range(1, 7):
    A, Hn, B = irrep_matrices(n)
    L = lie_closure([A, Hn, B])
    c = commutant_dimension(L)
    print(f"  n={n}: commutant dim {c.dim} ({c.verdict}), centralizer of H has dim "
          f"{centralizer_dimension(L, Hn)}")

A, H4, B = irrep_matrices(4)
print("\nZeros of the field induced by H on P(U_4) are the weight lines:")
for lam, S in linear_field_zeros(H4):
    print(f"  weight {lam}: {[str(x) for x in S.vectors()[0]]}")
print("The lowest one is P(im B^4):", linear_field_zeros(H4)[-1][1] == image(B ** 4))
