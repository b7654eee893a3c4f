"""Nilpotent endomorphisms: power filtrations, Jordan chains, orbit curves,
and complementary flags."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Sequence

from .errors import (
    AmbientMismatch,
    LengthMismatch,
    NotComplementary,
    NotNilpotent,
    ZeroVector,
)
from .linalg import Flag, QMatrix, Subspace, as_rat, image, intersect, is_direct_sum, kernel

__all__ = [
    "NilpotentProfile",
    "OrbitCurve",
    "nilpotency_degree",
    "nilpotent_profile",
    "jordan_basis",
    "orbit_curve",
    "check_complementary_flags",
    "flag_refinement",
    "conjugate_partition",
]


@dataclass(frozen=True)
class NilpotentProfile:
    degree: int
    ker_dims: tuple[int, ...]
    im_dims: tuple[int, ...]
    partition: tuple[int, ...]


@dataclass(frozen=True)
class OrbitCurve:
    """Coefficients of ``t -> exp(tA) u``: the i-th vector is ``A^i u / i!``."""

    degree: int
    coefficient_vectors: tuple[tuple[Fraction, ...], ...]


def conjugate_partition(parts: Sequence[int]) -> tuple[int, ...]:
    parts = [p for p in parts if p > 0]
    if not parts:
        return ()
    return tuple(sum(1 for p in parts if p > i) for i in range(max(parts)))


def _powers(A: QMatrix):
    """Yield A^1, A^2, ... until the zero matrix (inclusive); raise if A is not nilpotent."""
    if not A.is_square:
        raise ValueError("nilpotency is defined for square matrices")
    n = A.rows
    P = A
    for _ in range(n + 1):
        yield P
        if P.is_zero():
            return
        P = P @ A
    raise NotNilpotent(f"A^{n} is nonzero")


def nilpotency_degree(A: QMatrix) -> int:
    """Least m with A^m = 0 (0 for the empty matrix)."""
    if A.rows == 0:
        return 0
    for m, P in enumerate(_powers(A), start=1):
        if P.is_zero():
            return m
    raise AssertionError("unreachable")


def nilpotent_profile(A: QMatrix) -> NilpotentProfile:
    """Dimensions of the kernel and image filtrations and the Jordan type of ``A``.

    The partition is read off the kernel filtration: ``dim ker A^j - dim ker A^(j-1)``
    counts the Jordan blocks of size at least ``j``.
    """
    pw = list(_powers(A))
    n = A.rows
    degree = len(pw) if n else 0
    ranks = [P.rank() for P in pw]
    ker_dims = tuple(n - r for r in ranks)
    im_dims = tuple(ranks[:-1])
    diffs = [b - a for a, b in zip((0,) + ker_dims, ker_dims)]
    partition = conjugate_partition(diffs) if n else ()
    return NilpotentProfile(degree, ker_dims if n else (), im_dims if n else (), partition)


def jordan_basis(A: QMatrix) -> list[list[tuple[Fraction, ...]]]:
    """Jordan chains ``(v, Av, ..., A^(l-1) v)`` whose union is a basis.

    Heads are picked top-down through the kernel filtration, completing
    ``ker A^(j-1) + (images of longer chains)`` inside ``ker A^j``; standard
    basis vectors are tried first, in index order, so the output is
    deterministic.  Chains come longest first.
    """
    pw = list(_powers(A))
    n = A.rows
    if n == 0:
        return []
    kers = [Subspace.zero(n)] + [kernel(P) for P in pw]
    std = [tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n)]
    carried: list[tuple] = []
    heads: list[tuple[int, tuple]] = []
    for j in range(len(pw), 0, -1):
        target = kers[j]
        cur = Subspace(n, kers[j - 1].rows + tuple(carried))
        for cand in std + list(target.rows):
            if cur.dim == target.dim:
                break
            if target.contains(cand) and not cur.contains(cand):
                heads.append((j, cand))
                carried.append(cand)
                cur = Subspace(n, cur.rows + (cand,))
        carried = [A @ v for v in carried]
    chains = []
    for length, v in heads:
        chain = [v]
        for _ in range(length - 1):
            chain.append(A @ chain[-1])
        chains.append(chain)
    return chains


def orbit_curve(A: QMatrix, u: Sequence) -> OrbitCurve:
    """Degree and coefficient vectors of the orbit ``t -> exp(tA) u``.

    The projectivized closure is a rational normal curve of the returned
    degree, the largest ``j`` with ``A^j u != 0``.
    """
    u = tuple(as_rat(x) for x in u)
    if len(u) != A.cols:
        raise AmbientMismatch("vector length differs from matrix size")
    nilpotency_degree(A)
    if not any(u):
        raise ZeroVector("orbit of the zero vector is a point")
    vecs = [u]
    while True:
        nxt = A @ vecs[-1]
        if not any(nxt):
            break
        vecs.append(nxt)
    coeffs = tuple(tuple(x / factorial(i) for x in v) for i, v in enumerate(vecs))
    return OrbitCurve(len(vecs) - 1, coeffs)


def _check_pair(Uflag: Flag, Vflag: Flag) -> None:
    if Uflag.direction != "ascending" or Vflag.direction != "descending":
        raise ValueError("expected an ascending and a descending flag")
    if len(Uflag) != len(Vflag):
        raise LengthMismatch(f"flag lengths {len(Uflag)} and {len(Vflag)} differ")
    if Uflag.ambient_dim != Vflag.ambient_dim:
        raise AmbientMismatch("flags live in different ambient spaces")


def check_complementary_flags(Uflag: Flag, Vflag: Flag) -> bool:
    """True iff ``U_j ⊕ V_j = E`` for every j."""
    _check_pair(Uflag, Vflag)
    return all(is_direct_sum(U, V) for U, V in zip(Uflag, Vflag))


def flag_refinement(Uflag: Flag, Vflag: Flag) -> list[Subspace]:
    """The pieces ``D_j = U_j ∩ V_(j-1)``, j = 2..k, each verified to satisfy
    ``U_j = U_(j-1) ⊕ D_j``."""
    if not check_complementary_flags(Uflag, Vflag):
        raise NotComplementary("flags are not complementary")
    out = []
    for j in range(1, len(Uflag)):
        D = intersect(Uflag[j], Vflag[j - 1])
        if not is_direct_sum(Uflag[j - 1], D, whole=Uflag[j]):
            raise AssertionError("refinement identity failed")
        out.append(D)
    return out


def standard_flag_pair(A: QMatrix, B: QMatrix, k: int) -> tuple[Flag, Flag]:
    """``(ker A^j)_j`` ascending and ``(im B^j)_j`` descending, j = 1..k."""
    n = A.rows
    U = [kernel(A**j) for j in range(1, k + 1)]
    V = [image(B**j) for j in range(1, k + 1)]
    return Flag("ascending", U, n), Flag("descending", V, n)
