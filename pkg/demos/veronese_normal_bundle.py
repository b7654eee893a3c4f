"""The normal bundle of the rational normal curve, computed two ways.

The degree-n curve t -> (1 : t : ... : t^n) is the SL(2)-orbit of a highest
weight line in U_n.  Its normal bundle N sits in

    0 -> U_1 ⊗ O(1) -> U_n ⊗ O(n) -> N -> 0.

Route 1 subtracts weights: the sub and the middle term are homogeneous, so
the weights of N at the fixed point are those of U_n(n) minus those of U_1(1).
Route 2 never looks at weights: it counts sections of N^*(t) as sections of
the dual of the middle term that vanish on the subbundle, and reads the
splitting type off the growth of that count.
"""
from sl2p1 import cokernel_splitting, veronese_inclusion, veronese_weights
from sl2p1.sl2 import twisted_irrep_weights

n = 4
print(f"Rational normal curve of degree {n}\n")

print("Route 1: weights at the fixed point")
print("  U_n ⊗ O(n) :", twisted_irrep_weights(n, n).as_list())
print("  U_1 ⊗ O(1) :", twisted_irrep_weights(1, 1).as_list())
quotient, (m, k) = veronese_weights(n)
print("  quotient   :", quotient.as_list())
print(f"  this is U_{k} twisted by {m}, so N = U_{k} ⊗ O({m})\n")

print("Route 2: sections of the dual of the quotient")
I0, Iinf = veronese_inclusion(n)
print("  chart-0 inclusion matrix (columns are (x+zy)^(n-1)·x and (x+zy)^(n-1)·y):")
for row in I0.tolist():
    print("     ", "  ".join(f"{str(p):>8}" for p in row))
s = cokernel_splitting(n)
print("  splitting type of N:", s.exponents)
assert s.exponents == (m,) * (k + 1)
print(f"\nBoth routes agree: N splits as O({m})^{k + 1}.")

print("\nThe pattern for n = 2..8:")
for n in range(2, 9):
    q, ident = veronese_weights(n)
    print(f"  n={n}: weights {q.as_list()}, identification {ident}, "
          f"cokernel {cokernel_splitting(n).exponents}")
