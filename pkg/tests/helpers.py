"""Random instances with known answers, shared by the unit and acceptance tests."""
from __future__ import annotations

import random
from fractions import Fraction

import sympy

from sl2p1.laurent import LaurentMatrix, LaurentPoly
from sl2p1.linalg import QMatrix


def to_sympy(M: QMatrix) -> sympy.Matrix:
    return sympy.Matrix(M.rows, M.cols, lambda i, j: sympy.Rational(M[i, j].numerator, M[i, j].denominator))


def from_sympy_vec(v) -> tuple[Fraction, ...]:
    return tuple(Fraction(int(sympy.fraction(x)[0]), int(sympy.fraction(x)[1])) for x in v)


def rand_rational(rng: random.Random, lo=-4, hi=4) -> Fraction:
    return Fraction(rng.randint(lo, hi), rng.choice([1, 1, 1, 2, 3]))


def rand_matrix(rng: random.Random, rows: int, cols: int, lo=-3, hi=3) -> QMatrix:
    return QMatrix([[rand_rational(rng, lo, hi) for _ in range(cols)] for _ in range(rows)], cols=cols)


def rand_unimodular(rng: random.Random, n: int, steps: int | None = None) -> QMatrix:
    """Product of random integer elementary matrices (determinant +-1)."""
    M = [[int(i == j) for j in range(n)] for i in range(n)]
    for _ in range(steps if steps is not None else 3 * n):
        if n < 2:
            break
        i, j = rng.sample(range(n), 2)
        c = rng.choice([-2, -1, 1, 2])
        for k in range(n):
            M[i][k] += c * M[j][k]
    if n > 1 and rng.random() < 0.5:
        i, j = rng.sample(range(n), 2)
        M[i], M[j] = M[j], M[i]
    return QMatrix(M)


def rand_partition(rng: random.Random, n: int, largest: int | None = None) -> list[int]:
    """Random partition of ``n``; with ``largest`` given its first part is exactly that."""
    parts = []
    rest = n
    if largest is not None:
        parts.append(largest)
        rest -= largest
    cap = largest if largest is not None else n
    while rest > 0:
        p = rng.randint(1, min(cap, rest))
        parts.append(p)
        rest -= p
    return sorted(parts, reverse=True)


def jordan_nilpotent(parts: list[int]) -> QMatrix:
    n = sum(parts)
    M = [[0] * n for _ in range(n)]
    start = 0
    for p in parts:
        for i in range(start, start + p - 1):
            M[i][i + 1] = 1
        start += p
    return QMatrix(M, cols=n)


def rand_nilpotent(rng: random.Random, n: int, largest: int | None = None) -> tuple[QMatrix, list[int]]:
    """A conjugate of a Jordan nilpotent of known type."""
    parts = rand_partition(rng, n, largest)
    J = jordan_nilpotent(parts)
    P = rand_unimodular(rng, n)
    return P @ J @ P.inverse(), parts


# -- Laurent matrices ---------------------------------------------------------

def z(e: int, c=1) -> LaurentPoly:
    return LaurentPoly({e: c})


def rand_poly(rng: random.Random, sign: int, maxdeg: int = 2) -> LaurentPoly:
    """Random polynomial in ``z`` (sign=+1) or ``1/z`` (sign=-1)."""
    return LaurentPoly({sign * k: rng.randint(-3, 3) for k in range(maxdeg + 1)})


def unipotent(rng: random.Random, r: int, sign: int, upper: bool, maxdeg: int = 2) -> LaurentMatrix:
    one, zero = LaurentPoly.const(1), LaurentPoly()
    return LaurentMatrix(
        [
            [one if i == j else (rand_poly(rng, sign, maxdeg) if (j > i) == upper else zero) for j in range(r)]
            for i in range(r)
        ]
    )


def rand_gauge(rng: random.Random, r: int, sign: int, maxdeg: int = 2) -> LaurentMatrix:
    """Random element of GL_r over Q[z] (sign=+1) or Q[1/z] (sign=-1) with constant determinant."""
    return unipotent(rng, r, sign, True, maxdeg) @ unipotent(rng, r, sign, False, maxdeg)


def rand_exponents(rng: random.Random, r: int, lo=-4, hi=4) -> list[int]:
    return [rng.randint(lo, hi) for _ in range(r)]


def sympy_det(T: LaurentMatrix) -> sympy.Expr:
    zs = sympy.Symbol("z")
    M = sympy.Matrix(
        T.rows,
        T.cols,
        lambda i, j: sum(
            (sympy.Rational(c.numerator, c.denominator) * zs**e for e, c in T[i, j].terms()), sympy.Integer(0)
        ),
    )
    return sympy.expand(M.det(method="berkowitz"))


def h0_oracle(T: LaurentMatrix, n: int, degree_bound: int) -> int:
    """``h0(E_T(n))`` by symbolic elimination: unknown polynomial ``s_inf`` of
    the given degree bound, ``z^n T(z) s_inf(1/z)`` forced to be polynomial."""
    if degree_bound < 0:
        return 0
    zs = sympy.Symbol("z")
    r = T.rows
    unknowns = sympy.symbols(f"c0:{r * (degree_bound + 1)}")
    s = [sum(unknowns[j * r + i] * zs**-j for j in range(degree_bound + 1)) for i in range(r)]
    eqs = []
    for i in range(r):
        entry = sum(
            (sympy.Rational(c.numerator, c.denominator) * zs ** (e + n) * s[k] for k in range(r) for e, c in T[i, k].terms()),
            sympy.Integer(0),
        )
        expanded = sympy.expand(entry)
        low = min((t.as_coeff_exponent(zs)[1] for t in sympy.Add.make_args(expanded)), default=0)
        if low >= 0:
            continue
        shifted = sympy.Poly(sympy.expand(expanded * zs ** (-low)), zs)
        for p in range(-low):  # coefficients of z^(low + p) < 0
            eqs.append(shifted.coeff_monomial(zs**p))
    eqs = [e for e in eqs if e != 0]
    if not eqs:
        return len(unknowns)
    A, _ = sympy.linear_eq_to_matrix(eqs, unknowns)
    return len(unknowns) - A.rank()


# acceptance lines, printed by the terminal-summary hook in conftest.py
ACCEPTANCE: list[tuple[str, bool, str]] = []


def record(label: str, ok: bool, detail: str) -> None:
    ACCEPTANCE.append((label, ok, detail))
