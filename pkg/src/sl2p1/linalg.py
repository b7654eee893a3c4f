"""Exact rational linear algebra.

Scalars are :class:`fractions.Fraction`; matrices are immutable dense
:class:`QMatrix` objects.  Subspaces are stored in a canonical form (the
reduced row-echelon form of a spanning set, i.e. a reduced column-echelon
basis) so that equality of subspaces is equality of stored data.
"""
from __future__ import annotations

import json
from math import lcm
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Sequence

from .errors import AmbientMismatch, IrrationalSpectrum, NotAFlag

__all__ = [
    "Rat",
    "as_rat",
    "QMatrix",
    "rref",
    "rref_canonical",
    "kernel_basis",
    "image_basis",
    "kernel",
    "image",
    "span",
    "Subspace",
    "Flag",
    "subspace_sum",
    "intersect",
    "is_direct_sum",
    "subspace_combine",
    "charpoly",
    "rational_eigenvalues",
    "eigenspaces",
]

Rat = Fraction
Vector = tuple


def as_rat(x) -> Fraction:
    """Coerce ``x`` to a Fraction; floats are refused."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot use {type(x).__name__} as an exact rational")


class QMatrix:
    """Immutable dense matrix over the rationals."""

    __slots__ = ("rows", "cols", "_e")

    def __init__(self, data: Iterable[Iterable], cols: int | None = None):
        e = tuple(tuple(as_rat(x) for x in row) for row in data)
        if cols is None:
            cols = len(e[0]) if e else 0
        if any(len(row) != cols for row in e):
            raise ValueError("ragged matrix rows")
        self.rows = len(e)
        self.cols = cols
        self._e = e

    @classmethod
    def _raw(cls, e: tuple, cols: int) -> "QMatrix":
        m = cls.__new__(cls)
        m.rows, m.cols, m._e = len(e), cols, e
        return m

    # constructors
    @classmethod
    def zeros(cls, rows: int, cols: int) -> "QMatrix":
        z = Fraction(0)
        return cls._raw(tuple((z,) * cols for _ in range(rows)), cols)

    @classmethod
    def identity(cls, n: int) -> "QMatrix":
        return cls.diag([1] * n)

    @classmethod
    def diag(cls, values: Sequence) -> "QMatrix":
        n = len(values)
        vals = [as_rat(v) for v in values]
        z = Fraction(0)
        return cls._raw(
            tuple(tuple(vals[i] if i == j else z for j in range(n)) for i in range(n)), n
        )

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], rows: int | None = None) -> "QMatrix":
        columns = [tuple(as_rat(x) for x in c) for c in columns]
        if rows is None:
            if not columns:
                raise ValueError("row count needed for an empty column list")
            rows = len(columns[0])
        return cls([[c[i] for c in columns] for i in range(rows)], cols=len(columns))

    @classmethod
    def unit(cls, rows: int, cols: int, i: int, j: int) -> "QMatrix":
        """Matrix unit with a single 1 at (i, j)."""
        return cls([[1 if (a, b) == (i, j) else 0 for b in range(cols)] for a in range(rows)], cols)

    @classmethod
    def block_diag(cls, *blocks: "QMatrix") -> "QMatrix":
        r = sum(b.rows for b in blocks)
        c = sum(b.cols for b in blocks)
        out = [[Fraction(0)] * c for _ in range(r)]
        i0 = j0 = 0
        for b in blocks:
            for i in range(b.rows):
                out[i0 + i][j0 : j0 + b.cols] = b._e[i]
            i0 += b.rows
            j0 += b.cols
        return cls._raw(tuple(map(tuple, out)), c)

    # access
    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def __getitem__(self, idx):
        i, j = idx
        return self._e[i][j]

    def row(self, i: int) -> tuple:
        return self._e[i]

    def col(self, j: int) -> tuple:
        return tuple(r[j] for r in self._e)

    def columns(self) -> list[tuple]:
        return [self.col(j) for j in range(self.cols)]

    def tolist(self) -> list[list[Fraction]]:
        return [list(r) for r in self._e]

    # arithmetic
    def _check_shape(self, other: "QMatrix") -> None:
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")

    def __add__(self, other: "QMatrix") -> "QMatrix":
        self._check_shape(other)
        return QMatrix._raw(
            tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self._e, other._e)), self.cols
        )

    def __sub__(self, other: "QMatrix") -> "QMatrix":
        self._check_shape(other)
        return QMatrix._raw(
            tuple(tuple(a - b for a, b in zip(r, s)) for r, s in zip(self._e, other._e)), self.cols
        )

    def __neg__(self) -> "QMatrix":
        return QMatrix._raw(tuple(tuple(-a for a in r) for r in self._e), self.cols)

    def __mul__(self, scalar) -> "QMatrix":
        if isinstance(scalar, QMatrix):
            raise TypeError("use @ for matrix products")
        s = as_rat(scalar)
        return QMatrix._raw(tuple(tuple(s * a for a in r) for r in self._e), self.cols)

    __rmul__ = __mul__

    def __matmul__(self, other):
        if isinstance(other, QMatrix):
            if self.cols != other.rows:
                raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
            # integer products over a common denominator: far fewer gcds than Fraction sums
            a, da = _integral(self._e)
            b, db = _integral(tuple(zip(*other._e)) if other.rows else ((),) * other.cols)
            den = da * db
            zero = Fraction(0)
            return QMatrix._raw(
                tuple(
                    tuple(Fraction(s, den) if (s := _idot(r, c)) else zero for c in b) for r in a
                ),
                other.cols,
            )
        v = tuple(other)
        if len(v) != self.cols:
            raise ValueError("vector length mismatch")
        return tuple(_dot(r, v) for r in self._e)

    def __pow__(self, k: int) -> "QMatrix":
        if not self.is_square or k < 0:
            raise ValueError("powers need a square matrix and k >= 0")
        result = QMatrix.identity(self.rows)
        base = self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    @property
    def T(self) -> "QMatrix":
        if not (self.rows and self.cols):
            return QMatrix.zeros(self.cols, self.rows)
        return QMatrix._raw(tuple(zip(*self._e)), self.rows)

    def bracket(self, other: "QMatrix") -> "QMatrix":
        """Commutator ``self @ other - other @ self``."""
        return self @ other - other @ self

    def trace(self) -> Fraction:
        return sum((self._e[i][i] for i in range(min(self.rows, self.cols))), Fraction(0))

    def is_zero(self) -> bool:
        return all(a == 0 for r in self._e for a in r)

    def is_scalar(self) -> bool:
        if not self.is_square:
            return False
        c = self._e[0][0] if self.rows else Fraction(0)
        return self == QMatrix.identity(self.rows) * c

    def rank(self) -> int:
        return rref(self)[2]

    def det(self) -> Fraction:
        if not self.is_square:
            raise ValueError("determinant of a non-square matrix")
        a = self.tolist()
        n = self.rows
        det = Fraction(1)
        for c in range(n):
            p = next((r for r in range(c, n) if a[r][c] != 0), None)
            if p is None:
                return Fraction(0)
            if p != c:
                a[c], a[p] = a[p], a[c]
                det = -det
            piv = a[c][c]
            det *= piv
            for r in range(c + 1, n):
                f = a[r][c]
                if f:
                    f /= piv
                    a[r] = [x - f * y for x, y in zip(a[r], a[c])]
        return det

    def inverse(self) -> "QMatrix":
        if not self.is_square:
            raise ValueError("inverse of a non-square matrix")
        n = self.rows
        aug = QMatrix.hstack(self, QMatrix.identity(n))
        r, piv, rank = rref(aug)
        if rank < n or piv[n - 1] != n - 1:
            raise ZeroDivisionError("matrix is singular")
        return QMatrix._raw(tuple(row[n:] for row in r._e[:n]), n)

    def kron(self, other: "QMatrix") -> "QMatrix":
        return QMatrix(
            [
                [a * b for a in ra for b in rb]
                for ra in self._e
                for rb in other._e
            ],
            cols=self.cols * other.cols,
        )

    @staticmethod
    def hstack(*ms: "QMatrix") -> "QMatrix":
        rows = ms[0].rows
        if any(m.rows != rows for m in ms):
            raise ValueError("hstack needs equal row counts")
        return QMatrix._raw(
            tuple(sum((m._e[i] for m in ms), ()) for i in range(rows)), sum(m.cols for m in ms)
        )

    @staticmethod
    def vstack(*ms: "QMatrix") -> "QMatrix":
        cols = ms[0].cols
        if any(m.cols != cols for m in ms):
            raise ValueError("vstack needs equal column counts")
        return QMatrix._raw(sum((m._e for m in ms), ()), cols)

    def flatten(self) -> tuple:
        return sum(self._e, ())

    # comparison / display
    def __eq__(self, other) -> bool:
        return isinstance(other, QMatrix) and self.cols == other.cols and self._e == other._e

    def __hash__(self) -> int:
        return hash((self.cols, self._e))

    def __repr__(self) -> str:
        body = ", ".join("[" + ", ".join(str(a) for a in r) + "]" for r in self._e)
        return f"QMatrix([{body}])"

    # serialization
    def to_json(self) -> dict:
        return {
            "rows": self.rows,
            "cols": self.cols,
            "entries": [[str(a) for a in r] for r in self._e],
        }

    @classmethod
    def from_json(cls, obj) -> "QMatrix":
        if isinstance(obj, str):
            obj = json.loads(obj)
        if not isinstance(obj, dict) or not {"rows", "cols", "entries"} <= obj.keys():
            raise ValueError("matrix JSON needs rows, cols and entries")
        rows, cols, entries = obj["rows"], obj["cols"], obj["entries"]
        if not isinstance(rows, int) or not isinstance(cols, int) or rows < 0 or cols < 0:
            raise ValueError("rows/cols must be non-negative integers")
        if not isinstance(entries, list) or len(entries) != rows:
            raise ValueError("entries must list exactly `rows` rows")
        parsed = []
        for r in entries:
            if not isinstance(r, list) or len(r) != cols:
                raise ValueError("each row must hold exactly `cols` entries")
            parsed.append([_parse_entry(x) for x in r])
        return cls(parsed, cols=cols)


def _parse_entry(x) -> Fraction:
    if isinstance(x, bool) or not isinstance(x, (str, int)):
        raise ValueError(f"bad rational entry {x!r}")
    try:
        return Fraction(x.strip()) if isinstance(x, str) else Fraction(x)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"bad rational entry {x!r}") from exc


def _integral(rows) -> tuple[list[list[int]], int]:
    """Integer rows and a common denominator representing ``rows``."""
    den = lcm(*(x.denominator for r in rows for x in r)) if rows else 1
    return [[x.numerator * (den // x.denominator) for x in r] for r in rows], den


def _idot(u, v) -> int:
    return sum(a * b for a, b in zip(u, v) if a and b)


def _dot(u, v) -> Fraction:
    s = Fraction(0)
    for a, b in zip(u, v):
        if a and b:
            s += a * b
    return s


# --- row reduction ---------------------------------------------------------


def _rref_rows(rows: list[list[Fraction]], ncols: int) -> tuple[list[list[Fraction]], list[int]]:
    """In-place Gauss-Jordan elimination; returns (nonzero rows, pivot columns)."""
    a = rows
    pivots: list[int] = []
    pr = 0
    nrows = len(a)
    for c in range(ncols):
        if pr == nrows:
            break
        p = next((r for r in range(pr, nrows) if a[r][c] != 0), None)
        if p is None:
            continue
        a[pr], a[p] = a[p], a[pr]
        piv = a[pr][c]
        if piv != 1:
            inv = 1 / piv
            a[pr] = [x * inv for x in a[pr]]
        prow = a[pr]
        nz = [j for j in range(c, ncols) if prow[j]]
        for r in range(nrows):
            if r != pr:
                f = a[r][c]
                if f:
                    row = a[r]
                    for j in nz:
                        row[j] -= f * prow[j]
        pivots.append(c)
        pr += 1
    return a[:pr], pivots


def rref(M: QMatrix) -> tuple[QMatrix, tuple[int, ...], int]:
    """Reduced row-echelon form of ``M``.

    Returns ``(R, pivot_columns, rank)`` where ``R`` has the same shape as
    ``M`` (zero rows at the bottom).
    """
    rows, piv = _rref_rows(M.tolist(), M.cols)
    zero = (Fraction(0),) * M.cols
    e = tuple(tuple(r) for r in rows) + (zero,) * (M.rows - len(rows))
    return QMatrix._raw(e, M.cols), tuple(piv), len(piv)


def _nullspace_vectors(rows: list[list[Fraction]], ncols: int) -> list[tuple]:
    red, piv = _rref_rows(rows, ncols)
    pivset = set(piv)
    basis = []
    for f in range(ncols):
        if f in pivset:
            continue
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for r, p in zip(red, piv):
            v[p] = -r[f]
        basis.append(tuple(v))
    return basis


# --- subspaces -----------------------------------------------------------


class Subspace:
    """A linear subspace of Q^n in canonical form.

    ``rows`` holds the reduced row-echelon form of any spanning set, so two
    subspaces are equal exactly when their stored rows are identical.  The
    ``basis`` property exposes the same data as columns (a reduced
    column-echelon basis matrix).
    """

    __slots__ = ("ambient_dim", "rows", "pivots")

    def __init__(self, ambient_dim: int, vectors: Iterable[Sequence] = ()):
        vecs = [[as_rat(x) for x in v] for v in vectors]
        if any(len(v) != ambient_dim for v in vecs):
            raise AmbientMismatch("vector length differs from ambient dimension")
        red, piv = _rref_rows(vecs, ambient_dim)
        self.ambient_dim = ambient_dim
        self.rows = tuple(tuple(r) for r in red)
        self.pivots = tuple(piv)

    @classmethod
    def zero(cls, n: int) -> "Subspace":
        return cls(n)

    @classmethod
    def full(cls, n: int) -> "Subspace":
        return cls(n, QMatrix.identity(n)._e)

    @classmethod
    def coordinate(cls, n: int, indices: Iterable[int]) -> "Subspace":
        """Span of standard basis vectors ``e_i`` (0-based indices)."""
        return cls(n, [[1 if j == i else 0 for j in range(n)] for i in indices])

    @property
    def dim(self) -> int:
        return len(self.rows)

    @property
    def basis(self) -> QMatrix:
        return QMatrix.from_columns(self.rows, rows=self.ambient_dim)

    def vectors(self) -> list[tuple]:
        return list(self.rows)

    def contains(self, v: Sequence) -> bool:
        v = [as_rat(x) for x in v]
        if len(v) != self.ambient_dim:
            raise AmbientMismatch("vector length differs from ambient dimension")
        for r, p in zip(self.rows, self.pivots):
            f = v[p]
            if f:
                v = [a - f * b for a, b in zip(v, r)]
        return not any(v)

    def __contains__(self, v) -> bool:
        return self.contains(v)

    def __le__(self, other: "Subspace") -> bool:
        _same_ambient(self, other)
        return all(other.contains(r) for r in self.rows)

    def __lt__(self, other: "Subspace") -> bool:
        return self <= other and self.dim < other.dim

    def __ge__(self, other: "Subspace") -> bool:
        return other <= self

    def __gt__(self, other: "Subspace") -> bool:
        return other < self

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Subspace)
            and self.ambient_dim == other.ambient_dim
            and self.rows == other.rows
        )

    def __hash__(self) -> int:
        return hash((self.ambient_dim, self.rows))

    def __add__(self, other: "Subspace") -> "Subspace":
        return subspace_sum(self, other)

    def __and__(self, other: "Subspace") -> "Subspace":
        return intersect(self, other)

    def image_under(self, M: QMatrix) -> "Subspace":
        if M.cols != self.ambient_dim:
            raise AmbientMismatch("matrix does not act on this space")
        return Subspace(M.rows, [M @ r for r in self.rows])

    def is_invariant(self, M: QMatrix) -> bool:
        return all(self.contains(M @ r) for r in self.rows)

    def __repr__(self) -> str:
        vecs = ", ".join("(" + ", ".join(str(x) for x in r) + ")" for r in self.rows)
        return f"Subspace(dim={self.dim} in Q^{self.ambient_dim}: [{vecs}])"


def span(vectors: Iterable[Sequence], ambient_dim: int | None = None) -> Subspace:
    vectors = [tuple(v) for v in vectors]
    if ambient_dim is None:
        if not vectors:
            raise ValueError("ambient dimension needed for an empty spanning set")
        ambient_dim = len(vectors[0])
    return Subspace(ambient_dim, vectors)


def kernel(M: QMatrix) -> Subspace:
    """Null space ``{v : M v = 0}``."""
    return Subspace(M.cols, _nullspace_vectors(M.tolist(), M.cols))


def image(M: QMatrix) -> Subspace:
    """Column space of ``M``."""
    return Subspace(M.rows, M.columns())


def _same_ambient(U: Subspace, V: Subspace) -> None:
    if U.ambient_dim != V.ambient_dim:
        raise AmbientMismatch(f"ambient dimensions {U.ambient_dim} and {V.ambient_dim} differ")


def subspace_sum(U: Subspace, V: Subspace) -> Subspace:
    _same_ambient(U, V)
    return Subspace(U.ambient_dim, U.rows + V.rows)


def intersect(U: Subspace, V: Subspace) -> Subspace:
    """``U ∩ V`` from the kernel of the stacked system ``[U | -V]``."""
    _same_ambient(U, V)
    n = U.ambient_dim
    if U.dim == 0 or V.dim == 0:
        return Subspace.zero(n)
    stacked = QMatrix.hstack(U.basis, -V.basis)
    coeffs = kernel(stacked)
    ub = U.basis
    return Subspace(n, [ub @ c[: U.dim] for c in coeffs.rows])


def is_direct_sum(U: Subspace, V: Subspace, whole: Subspace | None = None) -> bool:
    """True iff ``U ⊕ V == whole`` (default: the ambient space)."""
    _same_ambient(U, V)
    if whole is None:
        target = U.ambient_dim
        total = subspace_sum(U, V)
        return U.dim + V.dim == total.dim == target
    _same_ambient(U, whole)
    total = subspace_sum(U, V)
    return U.dim + V.dim == total.dim and total == whole


def subspace_combine(U: Subspace, V: Subspace, mode: str):
    """Dispatch on ``mode`` in {"sum", "intersect", "direct_sum_check"}."""
    if mode == "sum":
        return subspace_sum(U, V)
    if mode == "intersect":
        return intersect(U, V)
    if mode == "direct_sum_check":
        return is_direct_sum(U, V)
    raise ValueError(f"unknown mode {mode!r}")


class Flag:
    """Strictly monotone chain of subspaces of a common ambient space."""

    __slots__ = ("direction", "spaces", "ambient_dim")

    def __init__(self, direction: str, spaces: Sequence[Subspace], ambient_dim: int | None = None):
        if direction not in ("ascending", "descending"):
            raise ValueError("direction must be 'ascending' or 'descending'")
        spaces = tuple(spaces)
        if ambient_dim is None:
            if not spaces:
                raise ValueError("ambient dimension needed for an empty flag")
            ambient_dim = spaces[0].ambient_dim
        if any(s.ambient_dim != ambient_dim for s in spaces):
            raise AmbientMismatch("flag members live in different ambient spaces")
        for a, b in zip(spaces, spaces[1:]):
            ok = a < b if direction == "ascending" else b < a
            if not ok:
                raise NotAFlag(f"{direction} flag is not strictly monotone")
        self.direction = direction
        self.spaces = spaces
        self.ambient_dim = ambient_dim

    def __len__(self) -> int:
        return len(self.spaces)

    def __getitem__(self, j: int) -> Subspace:
        return self.spaces[j]

    def __iter__(self):
        return iter(self.spaces)

    def dims(self) -> list[int]:
        return [s.dim for s in self.spaces]

    def __repr__(self) -> str:
        return f"Flag({self.direction}, dims={self.dims()}, ambient={self.ambient_dim})"


# --- spectra ---------------------------------------------------------------


def charpoly(M: QMatrix) -> list[Fraction]:
    """Characteristic polynomial ``det(tI - M)``, coefficients low to high.

    Faddeev-LeVerrier recursion; exact over Q.
    """
    if not M.is_square:
        raise ValueError("characteristic polynomial of a non-square matrix")
    n = M.rows
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    N = QMatrix.zeros(n, n)
    eye = QMatrix.identity(n)
    for k in range(1, n + 1):
        N = M @ N + eye * coeffs[n - k + 1]
        coeffs[n - k] = -(M @ N).trace() / k
    return coeffs


def _factor_over_q(coeffs: Sequence[Fraction]):
    """Irreducible factorization over Q: list of (coefficients low->high, multiplicity)."""
    import sympy

    t = sympy.Symbol("t")
    poly = sympy.Poly([sympy.Rational(c.numerator, c.denominator) for c in reversed(coeffs)], t, domain="QQ")
    _, factors = poly.factor_list()
    out = []
    for f, mult in factors:
        monic = f.monic()
        cs = [Fraction(int(c.p), int(c.q)) for c in reversed(monic.all_coeffs())]
        out.append((cs, mult))
    return out


def _format_poly(coeffs: Sequence[Fraction], var: str = "t") -> str:
    terms = []
    for e in range(len(coeffs) - 1, -1, -1):
        c = coeffs[e]
        if not c:
            continue
        mono = "" if e == 0 else (var if e == 1 else f"{var}^{e}")
        if mono and c in (1, -1):
            terms.append(("-" if c < 0 else "+") + mono)
        else:
            terms.append(f"{'+' if c > 0 else '-'}{abs(c)}{mono}")
    s = "".join(terms).lstrip("+")
    return s or "0"


def rational_eigenvalues(M: QMatrix, strict: bool = True) -> list[tuple[Fraction, int]]:
    """Eigenvalues with algebraic multiplicity, largest first.

    Raises :class:`IrrationalSpectrum` when the characteristic polynomial has
    an irreducible factor of degree > 1 over Q, unless ``strict`` is False,
    in which case only the rational part of the spectrum is returned.
    """
    factors = _factor_over_q(charpoly(M))
    roots = []
    bad = []
    for cs, mult in factors:
        if len(cs) == 2:
            roots.append((-cs[0], mult))
        else:
            bad.append(_format_poly(cs))
    if bad and strict:
        raise IrrationalSpectrum(
            "characteristic polynomial has irreducible factor(s) " + ", ".join(bad), bad
        )
    return sorted(roots, key=lambda r: r[0], reverse=True)


def eigenspaces(M: QMatrix) -> list[tuple[Fraction, Subspace]]:
    """``(eigenvalue, ker(M - λI))`` pairs for a rational spectrum, largest first."""
    n = M.rows
    eye = QMatrix.identity(n)
    return [(lam, kernel(M - eye * lam)) for lam, _ in rational_eigenvalues(M)]


rref_canonical = rref
kernel_basis = kernel
image_basis = image
