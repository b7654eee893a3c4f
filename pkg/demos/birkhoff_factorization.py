"""Splitting vector bundles on the projective line.

A rank-r bundle is glued from two trivial charts by an invertible Laurent
matrix T(z).  Here a section of E(n) is a pair of polynomial vectors with
s_0(z) = z^n T(z) s_inf(1/z), so O(a) has transition z^a.  Grothendieck's
theorem says E ≅ ⊕ O(a_i); the exponents are read off h0(E(n)), and a
Birkhoff factorization T = T_plus(z) · diag(z^a_i) · T_minus(1/z) exhibits
the isomorphism.
"""
from sl2p1 import LaurentMatrix, LaurentPoly, birkhoff_factorize, h0_twisted, splitting_type


def z(e):
    return LaurentPoly({e: 1})


def show(name, M):
    print(f"  {name} =", [[str(p) for p in row] for row in M.tolist()])


T1 = LaurentMatrix([[z(1), 1], [0, z(-1)]])
T2 = LaurentMatrix([[z(-1), 1], [0, z(1)]])
for label, T in (("[[z, 1], [0, 1/z]]", T1), ("[[1/z, 1], [0, z]]", T2)):
    print(f"T = {label}")
    print("  h0(E(n)) for n = -2..2:", [h0_twisted(T, n) for n in range(-2, 3)])
    s = splitting_type(T)
    print("  splitting type:", s.exponents)
    f = birkhoff_factorize(T)
    show("T_plus ", f.T_plus)
    show("T_minus", f.T_minus)
    print("  T_plus · D · T_minus == T:", f.product() == T, "\n")

print("Both look like extensions of O(-1) by O(1); only the first one is.")
print("The second is trivial: its off-diagonal entry can be absorbed.\n")

T = LaurentMatrix([[z(1), z(2)], [1, z(1) + z(-1)]])
print("T = [[z, z^2], [1, z + 1/z]]")
f = birkhoff_factorize(T)
print("  frame-change order T_plus · D · T_minus gives D =", f.D.exponents)
g = birkhoff_factorize(T, order="minus-plus")
print("  the opposite order T_minus · D · T_plus gives D =", g.D.exponents)
show("T_minus", g.T_minus)
show("T_plus ", g.T_plus)
print("  The two orders describe the bundle and the one glued by the transpose;")
print("  they can split differently, as this example shows.")
