"""Vector bundles on the projective line given by Laurent transition matrices.

Chart convention: a section of ``E_T ⊗ O(n)`` is a pair ``(s_0, s_inf)`` of
polynomial vectors, ``s_0`` in ``z`` and ``s_inf`` in ``w = 1/z``, with
``s_0(z) = z^n T(z) s_inf(1/z)``.  So ``O(a)`` has transition ``z^a``,
``h0(O(a)) = a + 1`` for ``a >= 0``, and the degree of ``E_T`` is the
exponent of ``det T``.

Changing frames on the two charts replaces ``T`` by ``P(z)^-1 T Q(1/z)``
with ``P``, ``Q`` polynomial with constant determinant.  The Birkhoff
factorization is therefore ``T = T_plus(z) · diag(z^a_i) · T_minus(1/z)``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .errors import BadDegree, BoundUnstable, InconsistentWindow, NotInvertibleOnOverlap
from .laurent import LaurentMatrix, LaurentPoly, complete_unimodular, poly_gcd

__all__ = [
    "SplittingType",
    "BirkhoffFactors",
    "validate_transition",
    "h0_twisted",
    "h0_profile",
    "splitting_type",
    "birkhoff_factorize",
    "bundle_ops",
    "direct_sum",
    "tensor",
    "dual",
    "twist",
    "veronese_inclusion",
    "cokernel_splitting",
    "equivariant_model",
]


@dataclass(frozen=True)
class SplittingType:
    """Exponents ``a_1 >= ... >= a_r`` of ``E = ⊕ O(a_i)``."""

    exponents: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "exponents", tuple(sorted((int(a) for a in self.exponents), reverse=True)))

    @property
    def rank(self) -> int:
        return len(self.exponents)

    @property
    def degree(self) -> int:
        return sum(self.exponents)

    def h0(self, n: int) -> int:
        return sum(max(0, a + n + 1) for a in self.exponents)

    def __iter__(self):
        return iter(self.exponents)


@dataclass(frozen=True)
class BirkhoffFactors:
    """``T_plus`` is polynomial in ``z``, ``T_minus`` polynomial in ``1/z``,
    both with nonzero constant determinant.

    ``order == "plus-minus"``: ``T = T_plus · D · T_minus`` (the frame-change
    form, where ``D`` is the splitting type of ``T``).
    ``order == "minus-plus"``: ``T = T_minus · D · T_plus``, where ``D`` is the
    splitting type of the transpose of ``T``.
    """

    T_minus: LaurentMatrix
    D: SplittingType
    T_plus: LaurentMatrix
    order: str = "plus-minus"
    checks: tuple[tuple[str, bool], ...] = ()

    def product(self) -> LaurentMatrix:
        Dm = equivariant_model(self.D)
        if self.order == "plus-minus":
            return self.T_plus @ Dm @ self.T_minus
        return self.T_minus @ Dm @ self.T_plus


def validate_transition(T: LaurentMatrix) -> tuple[Fraction, int]:
    """``(c, d)`` with ``det T = c z^d``."""
    if T.rows != T.cols:
        raise NotInvertibleOnOverlap("transition matrix must be square")
    det = T.det()
    if det.is_zero():
        raise NotInvertibleOnOverlap("determinant is zero")
    if not det.is_monomial():
        raise NotInvertibleOnOverlap(f"determinant {det} vanishes somewhere on the overlap")
    (d, c), = det.terms()
    return c, d


# -- sparse exact elimination -------------------------------------------------

class _Eliminator:
    """Semi-echelon form of sparse rational rows (dicts column -> value)."""

    def __init__(self):
        self.pivots: dict[int, dict[int, Fraction]] = {}

    def add(self, row: dict[int, Fraction]) -> bool:
        row = {c: v for c, v in row.items() if v}
        while row:
            p = min(row)
            prow = self.pivots.get(p)
            if prow is None:
                inv = 1 / row[p]
                self.pivots[p] = {c: v * inv for c, v in row.items()}
                return True
            f = row[p]
            for c, v in prow.items():
                nv = row.get(c, 0) - f * v
                if nv:
                    row[c] = nv
                else:
                    row.pop(c, None)
        return False

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def kernel_vector(self, ncols: int) -> list[Fraction] | None:
        """The kernel vector whose free coordinates are ``e_f`` for the first free column ``f``."""
        free = [c for c in range(ncols) if c not in self.pivots]
        if not free:
            return None
        x = [Fraction(0)] * ncols
        x[free[0]] = Fraction(1)
        for p in sorted(self.pivots, reverse=True):
            row = self.pivots[p]
            x[p] = -sum((v * x[c] for c, v in row.items() if c != p), Fraction(0))
        return x


@dataclass(frozen=True)
class _Data:
    r: int
    d: int
    coeffs: dict  # exponent -> QMatrix
    emin: int
    emax: int
    inv_min: int  # min exponent of T^-1
    inv_max: int
    W: int


def _analyze(T: LaurentMatrix) -> _Data:
    _, d = validate_transition(T)
    r = T.rows
    if r == 0:
        return _Data(0, 0, {}, 0, 0, 0, 0, 0)
    emin, emax = T.exponent_range()
    imin, imax = T.inverse().exponent_range()
    W = max(abs(emin), abs(emax), abs(imin), abs(imax))
    return _Data(r, d, T.coefficient_matrices(), emin, emax, imin, imax, W)


def _section_system(data: _Data, n: int, B: int) -> tuple[_Eliminator, int]:
    """Eliminate the conditions on ``s_inf = sum_{j<=B} c_j w^j`` making
    ``z^n T s_inf(1/z)`` polynomial; unknown ``c_j[i]`` sits in column ``j*r + i``."""
    r = data.r
    nvars = r * (B + 1)
    el = _Eliminator()
    for m in range(n + data.emin - B, 0):
        # coefficient of z^m: sum over j of T_(m - n + j) c_j
        rows = [dict() for _ in range(r)]
        for j in range(B + 1):
            Te = data.coeffs.get(m - n + j)
            if Te is None:
                continue
            for a in range(r):
                ra = rows[a]
                for b in range(r):
                    v = Te[a, b]
                    if v:
                        ra[j * r + b] = v
        for row in rows:
            if row:
                el.add(row)
    return el, nvars


def _tight_bound(data: _Data, n: int) -> int:
    # deg_w s_inf <= n - minexp(T^-1) since s_inf = w^n T^-1(1/w) s_0(1/w)
    return n - data.inv_min


def _h0(data: _Data, n: int, B: int) -> int:
    if data.r == 0 or B < 0:
        return 0
    el, nvars = _section_system(data, n, B)
    return nvars - el.rank


def h0_twisted(T: LaurentMatrix, n: int, *, bound: str = "tight", recheck: bool = False) -> int:
    """``dim H^0(E_T ⊗ O(n))``.

    ``bound="tight"`` uses the degree bound ``n - minexp(T^-1)``, which every
    section satisfies; ``bound="wide"`` uses ``n + r W``.  With ``recheck``
    the count is repeated with ``W + 1`` extra degrees and must agree.
    """
    data = _analyze(T)
    B = _tight_bound(data, n) if bound == "tight" else n + data.r * data.W
    h = _h0(data, n, B)
    if recheck:
        h2 = _h0(data, n, B + data.W + 1)
        if h2 != h:
            raise BoundUnstable(f"h0 changed from {h} to {h2} when the degree bound was raised")
    return h


def h0_profile(T: LaurentMatrix, lo: int, hi: int) -> dict[int, int]:
    data = _analyze(T)
    return {n: _h0(data, n, _tight_bound(data, n)) for n in range(lo, hi + 1)}


def _exponents_from_h0(h: dict[int, int], lo: int, hi: int) -> list[int] | None:
    """Invert ``h(n) = sum max(0, a_i + n + 1)`` given ``h(lo) = 0``."""
    if h[lo] != 0:
        return None
    counts = {lo: 0}  # counts[n] = #{a_i >= -n}
    for n in range(lo + 1, hi + 1):
        counts[n] = h[n] - h[n - 1]
    out = []
    for n in range(lo + 1, hi + 1):
        k = counts[n] - counts[n - 1]
        if k < 0:
            return None
        out.extend([-n] * k)
    return out


def splitting_type(T: LaurentMatrix, *, window: str = "tight") -> SplittingType:
    """Grothendieck exponents of ``E_T`` from the growth of ``h0(E_T(n))``.

    The tight window ``[-maxexp(T) - 1, maxexp(T^-1)]`` contains every jump:
    no section survives below it and all summands are globally generated
    above it.  If the recovered exponents miss the count ``r`` or the degree
    ``d``, the wide window ``[-rW - 1, rW + 1]`` is tried before giving up.
    """
    data = _analyze(T)
    if data.r == 0:
        return SplittingType(())
    windows = [
        (-data.emax - 1, max(data.inv_max, -data.emax), "tight"),
        (-data.r * data.W - 1, data.r * data.W + 1, "wide"),
    ]
    if window == "wide":
        windows = windows[1:]
    for lo, hi, kind in windows:
        if kind == "tight":
            h = {n: _h0(data, n, _tight_bound(data, n)) for n in range(lo, hi + 1)}
        else:
            h = {n: _h0(data, n, n + data.r * data.W) for n in range(lo, hi + 1)}
        a = _exponents_from_h0(h, lo, hi)
        if a is None or len(a) != data.r or sum(a) != data.d:
            continue
        s = SplittingType(a)
        if all(h[n] == s.h0(n) for n in h):
            return s
    raise InconsistentWindow("exponents recovered from h0 fail the rank/degree checks")


# -- Birkhoff factorization ----------------------------------------------------

def _top_exponent(data: _Data, T: LaurentMatrix) -> tuple[int, list[Fraction]]:
    """Largest ``a`` with ``h0(E(-a)) > 0`` and a section ``s_inf`` of ``E(-a)``."""
    for n in range(-data.emax, data.inv_max + 1):
        B = _tight_bound(data, n)
        if B < 0:
            continue
        el, nvars = _section_system(data, n, B)
        v = el.kernel_vector(nvars)
        if v is not None:
            return -n, v
    raise InconsistentWindow("no section found in the tight window")


def _peel(T: LaurentMatrix) -> tuple[LaurentMatrix, list[int], LaurentMatrix]:
    """``(L, a, R)`` with ``T = L diag(z^a) R``, ``L`` in z, ``R`` in 1/z."""
    r = T.rows
    if r == 1:
        c, d = validate_transition(T)
        return LaurentMatrix([[c]]), [d], LaurentMatrix([[1]])
    data = _analyze(T)
    a1, v = _top_exponent(data, T)
    B = len(v) // r - 1
    # s_inf(w) = sum_j c_j w^j, kept as a polynomial vector in w
    s_inf = [LaurentPoly({j: v[j * r + i] for j in range(B + 1)}) for i in range(r)]
    s_0 = [p.shift(-a1) for p in T @ [p.inverted() for p in s_inf]]
    R1w, R1w_inv = complete_unimodular(s_inf)
    L1, L1_inv = complete_unimodular(s_0)
    R1, R1_inv = R1w.inverted(), R1w_inv.inverted()
    Tp = L1_inv @ T @ R1
    if Tp[0, 0] != LaurentPoly.monomial(1, a1) or any(Tp[i, 0] for i in range(1, r)):
        raise AssertionError("peeled column is not z^a1 e1")
    rest = list(range(1, r))
    L2, a_rest, R2 = _peel(Tp.submatrix(rest, rest))
    R2_inv = R2.inverse()
    # top row after gauging the lower block
    u = [sum((Tp[0, k] * R2_inv[k - 1, j - 1] for k in rest), LaurentPoly()) for j in rest]
    Pm = [[LaurentPoly.const(int(i == j)) for j in range(r)] for i in range(r)]
    Qm = [[LaurentPoly.const(int(i == j)) for j in range(r)] for i in range(r)]
    for j, uj in zip(rest, u):
        lo, hi = uj.split(a1)
        Pm[0][j] = hi.shift(-a_rest[j - 1])
        Qm[0][j] = lo.shift(-a1)
    one = LaurentMatrix([[1]])
    L = L1 @ LaurentMatrix.block_diag(one, L2) @ LaurentMatrix(Pm)
    R = LaurentMatrix(Qm) @ LaurentMatrix.block_diag(one, R2) @ R1_inv
    return L, [a1] + a_rest, R


def _constant_det(M: LaurentMatrix) -> bool:
    d = M.det()
    return d.is_monomial() and d.min_exp == 0


def birkhoff_factorize(T: LaurentMatrix, order: str = "plus-minus") -> BirkhoffFactors:
    """Factor ``T`` through its diagonal model, verified by exact multiplication.

    The peeling step takes a section of ``E(-a_1)`` for the largest exponent
    ``a_1`` (it vanishes nowhere), completes both of its chart
    representatives to polynomial frames, and recurses on the quotient block;
    the leftover top row is cleared by elementary operations on each chart.
    ``order="minus-plus"`` factors the transpose and transposes back.
    """
    if order not in ("plus-minus", "minus-plus"):
        raise ValueError("order must be 'plus-minus' or 'minus-plus'")
    validate_transition(T)
    if T.rows == 0:
        e = LaurentMatrix.identity(0)
        return BirkhoffFactors(e, SplittingType(()), e, order, (("product", True),))
    src = T if order == "plus-minus" else T.T
    L, a, R = _peel(src)
    if order == "plus-minus":
        T_plus, T_minus = L, R
    else:
        T_plus, T_minus = L.T, R.T
    D = SplittingType(a)
    checks = (
        ("T_plus_polynomial_in_z", T_plus.is_polynomial()),
        ("T_plus_constant_det", _constant_det(T_plus)),
        ("T_minus_polynomial_in_inverse_z", T_minus.is_antipolynomial()),
        ("T_minus_constant_det", _constant_det(T_minus)),
        ("exponents_sorted", list(a) == list(D.exponents)),
    )
    f = BirkhoffFactors(T_minus, D, T_plus, order)
    checks = checks + (("product", f.product() == T),)
    failed = [name for name, ok in checks if not ok]
    if failed:
        raise AssertionError("factorization checks failed: " + ", ".join(failed))
    return BirkhoffFactors(T_minus, D, T_plus, order, checks)


# -- operations on bundles -----------------------------------------------------

def direct_sum(T1: LaurentMatrix, T2: LaurentMatrix) -> LaurentMatrix:
    return LaurentMatrix.block_diag(T1, T2)


def tensor(T1: LaurentMatrix, T2: LaurentMatrix) -> LaurentMatrix:
    return T1.kron(T2)


def dual(T: LaurentMatrix) -> LaurentMatrix:
    validate_transition(T)
    return T.inverse().T


def twist(T: LaurentMatrix, m: int) -> LaurentMatrix:
    """Transition of ``E ⊗ O(m)``."""
    return T.shift(m)


def bundle_ops(T1: LaurentMatrix, T2: LaurentMatrix | None, mode: str) -> LaurentMatrix:
    validate_transition(T1)
    if mode == "dual":
        return dual(T1)
    if T2 is None:
        raise ValueError(f"{mode} needs two transition matrices")
    validate_transition(T2)
    if mode == "direct_sum":
        return direct_sum(T1, T2)
    if mode == "tensor":
        return tensor(T1, T2)
    raise ValueError(f"unknown mode {mode!r}")


def equivariant_model(s: SplittingType) -> LaurentMatrix:
    return LaurentMatrix.diag_monomials(s.exponents)


# -- the rational normal curve ------------------------------------------------

def veronese_inclusion(n: int) -> tuple[LaurentMatrix, LaurentMatrix]:
    """Chart matrices of ``U_1 ⊗ O(1) -> U_n ⊗ O(n)`` for the degree-n curve.

    Column 0 of ``I_0(z)`` holds the coefficients of ``(x + z y)^(n-1) x``
    in the basis ``x^n, x^(n-1) y, ..., y^n``, column 1 those of
    ``(x + z y)^(n-1) y``.  ``I_inf(w) = w^(n-1) I_0(1/w)``.
    """
    if n < 2:
        raise BadDegree("the Veronese curve needs n >= 2")
    zero = LaurentPoly()
    I0 = [[zero, zero] for _ in range(n + 1)]
    for k in range(n):
        c = comb(n - 1, k)
        I0[k][0] = LaurentPoly.monomial(c, k)
        I0[k + 1][1] = LaurentPoly.monomial(c, k)
    I_0 = LaurentMatrix(I0)
    I_inf = I_0.inverted().shift(n - 1)
    if I_inf.inverted().shift(n) != I_0.shift(1):
        raise AssertionError("intertwining identity failed")
    return I_0, I_inf


def _minors_coprime(I_0: LaurentMatrix) -> bool:
    g = LaurentPoly()
    for i in range(I_0.rows):
        for j in range(i + 1, I_0.rows):
            g = poly_gcd(g, I_0.submatrix([i, j], [0, 1]).det())
    return not g.is_zero() and g.degree == 0


def _dual_kernel_dim(I_0: LaurentMatrix, n: int, t: int) -> int:
    """``dim {phi : phi · I_0 = 0}`` for rows ``phi`` of polynomials of degree <= t - n.

    These are the sections of ``(U_n ⊗ O(n))^* ⊗ O(t)`` killed by
    precomposition with the inclusion.
    """
    deg = t - n
    if deg < 0:
        return 0
    N = I_0.rows
    nvars = N * (deg + 1)  # phi_i = sum_k x[k*N + i] z^k
    el = _Eliminator()
    for col in range(I_0.cols):
        out: dict[int, dict[int, Fraction]] = {}
        for i in range(N):
            for e, c in I_0[i, col].terms():
                for k in range(deg + 1):
                    out.setdefault(k + e, {})[k * N + i] = c
        for row in out.values():
            el.add(row)
    return nvars - el.rank


def cokernel_splitting(n: int) -> SplittingType:
    """Splitting type of the normal bundle ``N`` of the degree-n rational normal curve.

    ``N`` is the quotient of ``U_1 ⊗ O(1) -> U_n ⊗ O(n)``.  Sections of
    ``N^*(t)`` are the sections of ``(U_n ⊗ O(n))^*(t)`` that vanish on the
    subbundle, so ``g(t) = h0(N^*(t))`` is a kernel dimension and
    ``g(t) - g(t-1) = #{a_i <= t}``.
    """
    if n < 2:
        raise BadDegree("the Veronese curve needs n >= 2")
    I_0, _ = veronese_inclusion(n)
    if not _minors_coprime(I_0):
        raise AssertionError("inclusion is not fiberwise injective")
    rank, degree = n - 1, (n + 1) * n - 2
    # N is a quotient of O(n)^(n+1), so every a_i >= n; with the degree fixed
    # that forces a_i <= 3n - 2.  The second window is a safety margin.
    for lo, hi in ((n - 1, 3 * n - 2), (-1, 5 * n)):
        g = {t: _dual_kernel_dim(I_0, n, t) for t in range(lo - 1, hi + 1)}
        if g[lo - 1] != 0:
            continue
        a = []
        prev = 0
        for t in range(lo, hi + 1):
            cnt = g[t] - g[t - 1]
            if cnt < prev:
                break
            a.extend([t] * (cnt - prev))
            prev = cnt
        if len(a) == rank and sum(a) == degree:
            s = SplittingType(a)
            if all(g[t] == sum(max(0, t - x + 1) for x in a) for t in g):
                return s
    raise InconsistentWindow("cokernel exponents fail the rank/degree checks")
