"""From a nilpotent endomorphism to complementary flags and a projection.

A nilpotent A gives the kernel filtration ker A ⊂ ker A^2 ⊂ ...; completing
A to an sl(2)-triple (A, H, B) gives a second filtration by images of B.
The two are complementary, every space in them is H-stable, and the
projection onto im B^k along ker A^k is a multiple of B^k A^k.
"""
from fractions import Fraction

from sl2p1 import QMatrix, jacobson_morozov, nilpotent_profile, orbit_curve, sl2_flags_and_projection
from sl2p1.nilpotent import flag_refinement, jordan_basis


def fmt(M):
    return [[str(x) for x in row] for row in M.tolist()]


# A nilpotent with Jordan blocks 3 and 1, in a disguised basis.
J = QMatrix([[0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 0], [0, 0, 0, 0]])
P = QMatrix([[1, 1, 0, 0], [0, 1, 2, 0], [0, 0, 1, 0], [1, 0, 0, 1]])
A = P @ J @ P.inverse()
print("A =", fmt(A))

prof = nilpotent_profile(A)
print(f"\nNilpotency degree {prof.degree}; dim ker A^j = {prof.ker_dims}; "
      f"dim im A^j = {prof.im_dims}; Jordan type {prof.partition}")
for chain in jordan_basis(A):
    print("  Jordan chain:", [[str(x) for x in v] for v in chain])

print("\nOrbit curves t -> exp(tA)u have degree = the last j with A^j u != 0:")
for i in range(4):
    u = [int(i == j) for j in range(4)]
    print(f"  u = e{i}: degree {orbit_curve(A, u).degree}")

t = jacobson_morozov(A)
print("\nsl(2) completion: H =", fmt(t.H))
B = t.B * Fraction(3)  # any nonzero multiple of the lowering operator works
proj = sl2_flags_and_projection(A, B)
print(f"With B rescaled by 3 the code recovers the rescaling factor {proj.scale}.")
print("U flag dims:", [S.dim for S in proj.U], " V flag dims:", [S.dim for S in proj.V])
print(f"P = {proj.c} · B^{proj.k} A^{proj.k} =", fmt(proj.P))
for name, ok in proj.checks:
    print(f"  {'ok ' if ok else 'BAD'} {name}")

print("\nRefinement U_j = U_(j-1) ⊕ (U_j ∩ V_(j-1)):")
for j, D in enumerate(flag_refinement(proj.U, proj.V), start=2):
    print(f"  D_{j} has dimension {D.dim}")
