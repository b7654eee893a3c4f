"""sl(2)-triples and weight bookkeeping.

Conventions: on the irreducible module ``U_n`` (dimension n+1) the basis is
ordered by descending weight, ``H = diag(n, n-2, ..., -n)``, the raising
operator ``A`` shifts ``e_(i+1) -> e_i`` with coefficient 1, and the lowering
operator ``B`` sends ``e_j -> j(n+1-j) e_(j+1)`` (1-based), which makes all
three matrices integral.  Twisting by a character of weight ``m`` adds ``m``
to every weight.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .errors import (
    BadDegree,
    DegreeMismatch,
    IrrationalSpectrum,
    NonIntegerSpectrum,
    NotDiagonalizable,
    NotSl2,
    ZeroMatrix,
)
from .linalg import Flag, QMatrix, image, is_direct_sum, kernel, rational_eigenvalues
from .nilpotent import jordan_basis, nilpotency_degree, standard_flag_pair

__all__ = [
    "Sl2Triple",
    "WeightMultiset",
    "irrep_matrices",
    "jacobson_morozov",
    "Sl2Projection",
    "sl2_flags_and_projection",
    "weight_multiset",
    "twisted_irrep_weights",
    "clebsch_gordan",
    "identify_twisted_irrep",
    "veronese_weights",
]


@dataclass(frozen=True)
class Sl2Triple:
    A: QMatrix
    H: QMatrix
    B: QMatrix

    def __post_init__(self):
        if not self.satisfies_relations():
            raise NotSl2("matrices do not satisfy the sl(2) bracket relations")

    def satisfies_relations(self) -> bool:
        A, H, B = self.A, self.H, self.B
        return A.bracket(B) == H and H.bracket(A) == A * 2 and H.bracket(B) == B * -2

    @property
    def dim(self) -> int:
        return self.A.rows


@dataclass(frozen=True)
class WeightMultiset:
    """Integer weights with multiplicities, stored largest weight first."""

    weights: tuple[tuple[int, int], ...]

    @classmethod
    def from_list(cls, ws: Iterable[int]) -> "WeightMultiset":
        c = Counter(int(w) for w in ws)
        return cls(tuple(sorted(c.items(), reverse=True)))

    def as_list(self) -> list[int]:
        return [w for w, m in self.weights for _ in range(m)]

    @property
    def dim(self) -> int:
        return sum(m for _, m in self.weights)

    def shifted(self, m: int) -> "WeightMultiset":
        return WeightMultiset(tuple((w + m, k) for w, k in self.weights))

    def __sub__(self, other: "WeightMultiset") -> "WeightMultiset":
        c = Counter(dict(self.weights))
        c.subtract(dict(other.weights))
        if any(v < 0 for v in c.values()):
            raise ValueError("not a sub-multiset")
        return WeightMultiset(tuple(sorted(((w, k) for w, k in c.items() if k), reverse=True)))

    def __add__(self, other: "WeightMultiset") -> "WeightMultiset":
        c = Counter(dict(self.weights)) + Counter(dict(other.weights))
        return WeightMultiset(tuple(sorted(c.items(), reverse=True)))


def _irrep_blocks(n: int) -> tuple[list[list[int]], list[list[int]], list[int]]:
    size = n + 1
    A = [[1 if j == i + 1 else 0 for j in range(size)] for i in range(size)]
    B = [[0] * size for _ in range(size)]
    for j in range(1, size):
        B[j][j - 1] = j * (size - j)
    return A, B, [n - 2 * i for i in range(size)]


def irrep_matrices(n: int) -> tuple[QMatrix, QMatrix, QMatrix]:
    """``(A, H, B)`` acting on ``U_n``."""
    if n < 0:
        raise ValueError("n must be non-negative")
    A, B, w = _irrep_blocks(n)
    return QMatrix(A), QMatrix.diag(w), QMatrix(B)


def twisted_irrep_weights(n: int, m: int = 0) -> WeightMultiset:
    """Weights of ``U_n`` twisted by ``m``: m+n, m+n-2, ..., m-n."""
    return WeightMultiset.from_list(m + n - 2 * i for i in range(n + 1))


def jacobson_morozov(A: QMatrix) -> Sl2Triple:
    """Complete a nonzero nilpotent ``A`` to an sl(2)-triple.

    Built blockwise on a Jordan basis: a chain of length ``l`` carries the
    standard ``U_(l-1)`` triple, then everything is conjugated back.
    """
    nilpotency_degree(A)
    if A.is_zero():
        raise ZeroMatrix("the zero matrix has no sl(2) completion")
    chains = jordan_basis(A)
    cols = []
    Bb, Hb = [], []
    for chain in chains:
        cols.extend(reversed(chain))
        _, b, w = _irrep_blocks(len(chain) - 1)
        Bb.append(QMatrix(b))
        Hb.append(QMatrix.diag(w))
    P = QMatrix.from_columns(cols)
    Pinv = P.inverse()
    B = P @ QMatrix.block_diag(*Bb) @ Pinv
    H = P @ QMatrix.block_diag(*Hb) @ Pinv
    return Sl2Triple(A, H, B)


@dataclass(frozen=True)
class Sl2Projection:
    """Output of :func:`sl2_flags_and_projection`.

    ``P = c * B^k A^k`` with the *input* ``B``; ``scale`` is the factor that
    turned ``B`` into the lowering element of ``triple``.
    """

    U: Flag
    V: Flag
    P: QMatrix
    c: Fraction
    k: int
    scale: Fraction
    triple: Sl2Triple
    checks: tuple[tuple[str, bool], ...]


def _solve_scale(lhs: QMatrix, rhs: QMatrix) -> Fraction | None:
    """The ``s`` with ``s * lhs == rhs``, if any."""
    for a, b in zip(lhs.flatten(), rhs.flatten()):
        if a:
            s = b / a
            return s if lhs * s == rhs else None
    return None


def sl2_flags_and_projection(A: QMatrix, B: QMatrix) -> Sl2Projection:
    """Complementary flags and the projection attached to a pair of nilpotents.

    ``A`` and ``B`` must generate sl(2) after rescaling ``B``.  Returns the
    ascending flag ``ker A^j``, the descending flag ``im B^j`` (j = 1..k,
    ``k+1`` the common nilpotency degree) and the projection onto
    ``im B^k`` along ``ker A^k``, which is a multiple of ``B^k A^k``.
    """
    if A.shape != B.shape or not A.is_square:
        raise ValueError("A and B must be square of the same size")
    da, db = nilpotency_degree(A), nilpotency_degree(B)
    if da != db:
        raise DegreeMismatch(f"nilpotency degrees {da} and {db} differ")
    k = da - 1
    if k < 1:
        raise NotSl2("zero matrices do not generate sl(2)")
    s = _solve_scale(A.bracket(B).bracket(A), A * 2)
    if s is None or s == 0:
        raise NotSl2("no rescaling of B gives [[A,B],A] = 2A")
    Bs = B * s
    H = A.bracket(Bs)
    if H.bracket(Bs) != Bs * -2:
        raise NotSl2("[H,B] != -2B after rescaling")
    triple = Sl2Triple(A, H, Bs)

    U, V = standard_flag_pair(A, B, k)
    Ak, Bk = A**k, B**k
    M = Bk @ Ak
    lam = _solve_scale(M, M @ M)
    if lam is None or lam == 0:
        raise NotSl2("B^k A^k is not a nonzero multiple of an idempotent")
    c = 1 / lam
    P = M * c
    n = A.rows
    checks = (
        ("complementary_flags", all(is_direct_sum(u, v) for u, v in zip(U, V))),
        ("P_idempotent", P @ P == P),
        ("im_P_is_im_Bk", image(P) == image(Bk)),
        ("ker_P_is_ker_Ak", kernel(P) == kernel(Ak)),
        ("flags_H_invariant", all(S.is_invariant(H) for S in (*U, *V))),
        ("H_A_powers", all(H.bracket(A**j) == (A**j) * (2 * j) for j in range(1, k + 1))),
        ("H_B_powers", all(H.bracket(Bs**j) == (Bs**j) * (-2 * j) for j in range(1, k + 1))),
        ("H_BA_powers", all(H.bracket((Bs**j) @ (A**j)).is_zero() for j in range(1, k + 1))),
        ("rank_P", P.rank() == image(Bk).dim and n - P.rank() == kernel(Ak).dim),
    )
    failed = [name for name, ok in checks if not ok]
    if failed:
        raise NotSl2("postconditions failed: " + ", ".join(failed))
    return Sl2Projection(U, V, P, c, k, s, triple, checks)


def weight_multiset(H: QMatrix) -> WeightMultiset:
    """Integer eigenvalues of a diagonalizable ``H`` with multiplicities."""
    try:
        eig = rational_eigenvalues(H)
    except IrrationalSpectrum as exc:
        raise NonIntegerSpectrum(str(exc)) from exc
    if any(lam.denominator != 1 for lam, _ in eig):
        raise NonIntegerSpectrum("eigenvalues " + ", ".join(str(l) for l, _ in eig))
    n = H.rows
    eye = QMatrix.identity(n)
    prod = eye
    for lam, _ in eig:
        prod = prod @ (H - eye * lam)
    if not prod.is_zero():
        raise NotDiagonalizable("minimal polynomial has a repeated root")
    return WeightMultiset(tuple((int(lam), m) for lam, m in eig))


def clebsch_gordan(m: int, n: int) -> list[int]:
    """Highest weights of the irreducible summands of ``U_m ⊗ U_n``.

    Found by peeling: repeatedly remove the string ``w, w-2, ..., -w`` below
    the current top weight ``w`` of the product weight multiset.
    """
    if m < 0 or n < 0:
        raise ValueError("m and n must be non-negative")
    c = Counter((m - 2 * i) + (n - 2 * j) for i in range(m + 1) for j in range(n + 1))
    out = []
    while c:
        top = max(c)
        out.append(top)
        for w in range(top, -top - 1, -2):
            c[w] -= 1
            if c[w] == 0:
                del c[w]
            elif c[w] < 0:
                raise AssertionError("weight multiset is not an sl(2) character")
    return out


def identify_twisted_irrep(w: WeightMultiset) -> tuple[int, int] | None:
    """``(m, n)`` if ``w`` is exactly the weight set of ``U_n`` twisted by ``m``."""
    if not w.weights or any(k != 1 for _, k in w.weights):
        return None
    ws = [x for x, _ in w.weights]
    if any(a - b != 2 for a, b in zip(ws, ws[1:])):
        return None
    hi, lo = ws[0], ws[-1]
    return (hi + lo) // 2, (hi - lo) // 2


def veronese_weights(n: int) -> tuple[WeightMultiset, tuple[int, int]]:
    """Weights of the normal bundle of the degree-n rational normal curve.

    Computed as ``weights(U_n twisted by n) - weights(U_1 twisted by 1)``.
    """
    if n < 2:
        raise BadDegree("the Veronese curve needs n >= 2")
    quotient = twisted_irrep_weights(n, n) - twisted_irrep_weights(1, 1)
    ident = identify_twisted_irrep(quotient)
    if ident is None:
        raise AssertionError("quotient weights are not a twisted irreducible")
    return quotient, ident
