"""Laurent polynomials in one variable ``z`` over Q, and matrices of them."""
from __future__ import annotations

import json
from fractions import Fraction
from typing import Iterable, Mapping

from .linalg import QMatrix, as_rat

__all__ = ["LaurentPoly", "LaurentMatrix", "poly_divmod", "poly_gcd", "complete_unimodular"]


class LaurentPoly:
    """Finite sum ``sum c_e z^e`` with integer (possibly negative) exponents.

    Immutable; zero coefficients are never stored.
    """

    __slots__ = ("_c",)

    def __init__(self, coeffs: Mapping[int, object] | Iterable[tuple[int, object]] = ()):
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        c: dict[int, Fraction] = {}
        for e, v in items:
            v = as_rat(v)
            if v:
                e = int(e)
                c[e] = c.get(e, Fraction(0)) + v
                if not c[e]:
                    del c[e]
        self._c = c

    @classmethod
    def _raw(cls, c: dict) -> "LaurentPoly":
        p = cls.__new__(cls)
        p._c = c
        return p

    @classmethod
    def monomial(cls, coeff=1, exp: int = 0) -> "LaurentPoly":
        return cls({exp: coeff})

    @classmethod
    def const(cls, c) -> "LaurentPoly":
        return cls({0: c})

    @classmethod
    def coerce(cls, x) -> "LaurentPoly":
        if isinstance(x, LaurentPoly):
            return x
        if isinstance(x, Mapping):
            return cls(x)
        return cls({0: x})

    # inspection
    def terms(self) -> list[tuple[int, Fraction]]:
        return sorted(self._c.items())

    def coeff(self, e: int) -> Fraction:
        return self._c.get(e, Fraction(0))

    def is_zero(self) -> bool:
        return not self._c

    def __bool__(self) -> bool:
        return bool(self._c)

    @property
    def min_exp(self) -> int:
        return min(self._c)

    @property
    def max_exp(self) -> int:
        return max(self._c)

    def is_monomial(self) -> bool:
        return len(self._c) == 1

    def is_polynomial(self) -> bool:
        """Only non-negative exponents (holomorphic at z = 0)."""
        return all(e >= 0 for e in self._c)

    def is_antipolynomial(self) -> bool:
        """Only non-positive exponents (holomorphic at z = infinity)."""
        return all(e <= 0 for e in self._c)

    @property
    def degree(self) -> int:
        """Top exponent; -1 for zero (polynomial convention)."""
        return max(self._c) if self._c else -1

    def lead(self) -> Fraction:
        return self._c[max(self._c)]

    # arithmetic
    def __add__(self, other) -> "LaurentPoly":
        other = LaurentPoly.coerce(other)
        c = dict(self._c)
        for e, v in other._c.items():
            s = c.get(e, 0) + v
            if s:
                c[e] = s
            else:
                c.pop(e, None)
        return LaurentPoly._raw(c)

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly._raw({e: -v for e, v in self._c.items()})

    def __sub__(self, other) -> "LaurentPoly":
        return self + (-LaurentPoly.coerce(other))

    def __rsub__(self, other) -> "LaurentPoly":
        return LaurentPoly.coerce(other) - self

    def __mul__(self, other) -> "LaurentPoly":
        if not isinstance(other, LaurentPoly):
            s = as_rat(other)
            if not s:
                return LaurentPoly._raw({})
            return LaurentPoly._raw({e: v * s for e, v in self._c.items()})
        c: dict[int, Fraction] = {}
        for e1, v1 in self._c.items():
            for e2, v2 in other._c.items():
                e = e1 + e2
                c[e] = c.get(e, 0) + v1 * v2
        return LaurentPoly._raw({e: v for e, v in c.items() if v})

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "LaurentPoly":
        if k < 0:
            if not self.is_monomial():
                raise ValueError("only monomials have Laurent inverses")
            (e, v), = self._c.items()
            return LaurentPoly._raw({e * k: v**k})
        out = LaurentPoly.const(1)
        for _ in range(k):
            out = out * self
        return out

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by ``z^k``."""
        return LaurentPoly._raw({e + k: v for e, v in self._c.items()})

    def inverted(self) -> "LaurentPoly":
        """Substitute ``z -> 1/z``."""
        return LaurentPoly._raw({-e: v for e, v in self._c.items()})

    def split(self, at: int) -> tuple["LaurentPoly", "LaurentPoly"]:
        """``(terms with exponent <= at, terms with exponent > at)``."""
        lo = {e: v for e, v in self._c.items() if e <= at}
        hi = {e: v for e, v in self._c.items() if e > at}
        return LaurentPoly._raw(lo), LaurentPoly._raw(hi)

    def __call__(self, x):
        x = as_rat(x)
        return sum((v * x**e for e, v in self._c.items()), Fraction(0))

    # comparison / display
    def __eq__(self, other) -> bool:
        if not isinstance(other, LaurentPoly):
            try:
                other = LaurentPoly.coerce(other)
            except TypeError:
                return NotImplemented
        return self._c == other._c

    def __hash__(self) -> int:
        return hash(frozenset(self._c.items()))

    def __repr__(self) -> str:
        return f"LaurentPoly({self})"

    def __str__(self) -> str:
        if not self._c:
            return "0"
        parts = []
        for e, v in sorted(self._c.items(), reverse=True):
            mono = "" if e == 0 else ("z" if e == 1 else f"z^{e}")
            if mono and v in (1, -1):
                s = ("-" if v < 0 else "+") + mono
            else:
                s = f"{'+' if v > 0 else '-'}{abs(v)}" + (f"*{mono}" if mono else "")
            parts.append(s)
        return "".join(parts).lstrip("+")

    def to_json(self) -> list:
        return [[e, str(v)] for e, v in self.terms()]

    @classmethod
    def from_json(cls, obj) -> "LaurentPoly":
        if not isinstance(obj, list):
            raise ValueError("a Laurent entry is a list of [exponent, coefficient] pairs")
        items = []
        for pair in obj:
            if not (isinstance(pair, list) and len(pair) == 2):
                raise ValueError(f"bad Laurent term {pair!r}")
            e, v = pair
            if isinstance(e, bool) or not isinstance(e, int):
                raise ValueError(f"exponent must be an integer, got {e!r}")
            if isinstance(v, bool) or not isinstance(v, (int, str)):
                raise ValueError(f"bad coefficient {v!r}")
            try:
                items.append((e, Fraction(v)))
            except (ValueError, ZeroDivisionError) as exc:
                raise ValueError(f"bad coefficient {v!r}") from exc
        return cls(items)


Z = LaurentPoly.monomial(1, 1)


def poly_divmod(a: LaurentPoly, b: LaurentPoly) -> tuple[LaurentPoly, LaurentPoly]:
    """Euclidean division of polynomials (non-negative exponents only)."""
    if b.is_zero():
        raise ZeroDivisionError("polynomial division by zero")
    if not (a.is_polynomial() and b.is_polynomial()):
        raise ValueError("poly_divmod needs ordinary polynomials")
    q: dict[int, Fraction] = {}
    r = a
    db, lb = b.degree, b.lead()
    while not r.is_zero() and r.degree >= db:
        e = r.degree - db
        c = r.lead() / lb
        q[e] = c
        r = r - b.shift(e) * c
    return LaurentPoly._raw(q), r


def poly_gcd(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    """Monic gcd of two polynomials (zero if both are zero)."""
    while not b.is_zero():
        a, b = b, poly_divmod(a, b)[1]
    if a.is_zero():
        return a
    return a * (1 / a.lead())


class LaurentMatrix:
    """Matrix with Laurent-polynomial entries (immutable)."""

    __slots__ = ("rows", "cols", "_e")

    def __init__(self, data: Iterable[Iterable], cols: int | None = None):
        e = tuple(tuple(LaurentPoly.coerce(x) for x in row) for row in data)
        if cols is None:
            cols = len(e[0]) if e else 0
        if any(len(row) != cols for row in e):
            raise ValueError("ragged matrix rows")
        self.rows, self.cols, self._e = len(e), cols, e

    @classmethod
    def _raw(cls, e: tuple, cols: int) -> "LaurentMatrix":
        m = cls.__new__(cls)
        m.rows, m.cols, m._e = len(e), cols, e
        return m

    @classmethod
    def identity(cls, n: int) -> "LaurentMatrix":
        return cls.diag_monomials([0] * n)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "LaurentMatrix":
        z = LaurentPoly()
        return cls._raw(tuple((z,) * cols for _ in range(rows)), cols)

    @classmethod
    def diag(cls, entries) -> "LaurentMatrix":
        entries = [LaurentPoly.coerce(x) for x in entries]
        n = len(entries)
        z = LaurentPoly()
        return cls._raw(tuple(tuple(entries[i] if i == j else z for j in range(n)) for i in range(n)), n)

    @classmethod
    def diag_monomials(cls, exps) -> "LaurentMatrix":
        return cls.diag([LaurentPoly.monomial(1, a) for a in exps])

    @classmethod
    def from_qmatrix(cls, M: QMatrix) -> "LaurentMatrix":
        return cls(M.tolist(), cols=M.cols)

    @classmethod
    def block_diag(cls, *blocks: "LaurentMatrix") -> "LaurentMatrix":
        r = sum(b.rows for b in blocks)
        c = sum(b.cols for b in blocks)
        z = LaurentPoly()
        out = [[z] * c for _ in range(r)]
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
    def size(self) -> int:
        if self.rows != self.cols:
            raise ValueError("size is defined for square matrices")
        return self.rows

    def __getitem__(self, idx) -> LaurentPoly:
        i, j = idx
        return self._e[i][j]

    def row(self, i: int) -> tuple:
        return self._e[i]

    def col(self, j: int) -> tuple:
        return tuple(r[j] for r in self._e)

    def submatrix(self, rows, cols) -> "LaurentMatrix":
        rows, cols = list(rows), list(cols)
        return LaurentMatrix._raw(tuple(tuple(self._e[i][j] for j in cols) for i in rows), len(cols))

    def entries(self) -> Iterable[LaurentPoly]:
        for r in self._e:
            yield from r

    def exponent_range(self) -> tuple[int, int] | None:
        """(min, max) exponent over all nonzero entries, None for the zero matrix."""
        nz = [p for p in self.entries() if p]
        if not nz:
            return None
        return min(p.min_exp for p in nz), max(p.max_exp for p in nz)

    def coefficient_matrices(self) -> dict[int, QMatrix]:
        """``{e: T_e}`` with ``T = sum_e T_e z^e``."""
        exps = sorted({e for p in self.entries() for e in p._c})
        return {
            e: QMatrix([[p.coeff(e) for p in r] for r in self._e], cols=self.cols) for e in exps
        }

    def is_polynomial(self) -> bool:
        return all(p.is_polynomial() for p in self.entries())

    def is_antipolynomial(self) -> bool:
        return all(p.is_antipolynomial() for p in self.entries())

    # arithmetic
    def __add__(self, other: "LaurentMatrix") -> "LaurentMatrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return LaurentMatrix._raw(
            tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self._e, other._e)), self.cols
        )

    def __neg__(self) -> "LaurentMatrix":
        return LaurentMatrix._raw(tuple(tuple(-a for a in r) for r in self._e), self.cols)

    def __sub__(self, other: "LaurentMatrix") -> "LaurentMatrix":
        return self + (-other)

    def __mul__(self, s) -> "LaurentMatrix":
        """Scalar or Laurent-polynomial multiple."""
        s = s if isinstance(s, LaurentPoly) else as_rat(s)
        return LaurentMatrix._raw(tuple(tuple(a * s for a in r) for r in self._e), self.cols)

    __rmul__ = __mul__

    def __matmul__(self, other):
        if isinstance(other, LaurentMatrix):
            if self.cols != other.rows:
                raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
            ocols = [other.col(j) for j in range(other.cols)]
            return LaurentMatrix._raw(
                tuple(tuple(_ldot(r, c) for c in ocols) for r in self._e), other.cols
            )
        v = [LaurentPoly.coerce(x) for x in other]
        if len(v) != self.cols:
            raise ValueError("vector length mismatch")
        return tuple(_ldot(r, v) for r in self._e)

    def shift(self, k: int) -> "LaurentMatrix":
        """Multiply every entry by ``z^k``."""
        return LaurentMatrix._raw(tuple(tuple(a.shift(k) for a in r) for r in self._e), self.cols)

    def inverted(self) -> "LaurentMatrix":
        """Substitute ``z -> 1/z`` entrywise."""
        return LaurentMatrix._raw(tuple(tuple(a.inverted() for a in r) for r in self._e), self.cols)

    @property
    def T(self) -> "LaurentMatrix":
        if not (self.rows and self.cols):
            return LaurentMatrix.zeros(self.cols, self.rows)
        return LaurentMatrix._raw(tuple(zip(*self._e)), self.rows)

    def kron(self, other: "LaurentMatrix") -> "LaurentMatrix":
        return LaurentMatrix(
            [[a * b for a in ra for b in rb] for ra in self._e for rb in other._e],
            cols=self.cols * other.cols,
        )

    def det(self) -> LaurentPoly:
        """Determinant by Laplace expansion over column subsets (O(r 2^r))."""
        n = self.size
        dp = {0: LaurentPoly.const(1)}
        for i in range(n):
            nxt: dict[int, LaurentPoly] = {}
            row = self._e[i]
            for mask, val in dp.items():
                if not val:
                    continue
                higher = 0
                for c in range(n - 1, -1, -1):
                    bit = 1 << c
                    if mask & bit:
                        higher += 1
                        continue
                    a = row[c]
                    if a:
                        term = a * val
                        if higher & 1:
                            term = -term
                        nm = mask | bit
                        nxt[nm] = nxt[nm] + term if nm in nxt else term
            dp = nxt
        return dp.get((1 << n) - 1, LaurentPoly())

    def adjugate(self) -> "LaurentMatrix":
        n = self.size
        if n == 1:
            return LaurentMatrix([[1]])
        cof = [
            [
                self.submatrix([a for a in range(n) if a != i], [b for b in range(n) if b != j]).det()
                * (-1 if (i + j) & 1 else 1)
                for j in range(n)
            ]
            for i in range(n)
        ]
        return LaurentMatrix(cof).T

    def inverse(self) -> "LaurentMatrix":
        """Inverse over the Laurent ring; the determinant must be a monomial."""
        d = self.det()
        if not d.is_monomial():
            raise ZeroDivisionError("determinant is not a unit of the Laurent ring")
        return self.adjugate() * d**-1

    # comparison / display
    def __eq__(self, other) -> bool:
        return isinstance(other, LaurentMatrix) and self.cols == other.cols and self._e == other._e

    def __hash__(self) -> int:
        return hash((self.cols, self._e))

    def __repr__(self) -> str:
        body = ", ".join("[" + ", ".join(str(a) for a in r) + "]" for r in self._e)
        return f"LaurentMatrix([{body}])"

    def tolist(self) -> list[list[LaurentPoly]]:
        return [list(r) for r in self._e]

    def to_json(self) -> dict:
        out = {"entries": [[p.to_json() for p in r] for r in self._e]}
        if self.rows == self.cols:
            return {"size": self.rows, **out}
        return {"rows": self.rows, "cols": self.cols, **out}

    @classmethod
    def from_json(cls, obj) -> "LaurentMatrix":
        """Parse ``{"size": r, "entries": [[[[e, "p/q"], ...], ...], ...]}``."""
        if isinstance(obj, str):
            obj = json.loads(obj)
        if not isinstance(obj, dict) or "entries" not in obj:
            raise ValueError("Laurent matrix JSON needs entries")
        if "size" in obj:
            rows = cols = obj["size"]
        else:
            rows, cols = obj.get("rows"), obj.get("cols")
        if not all(isinstance(x, int) and not isinstance(x, bool) and x >= 0 for x in (rows, cols)):
            raise ValueError("size must be a non-negative integer")
        entries = obj["entries"]
        if not isinstance(entries, list) or len(entries) != rows:
            raise ValueError("entries must list exactly `size` rows")
        parsed = []
        for r in entries:
            if not isinstance(r, list) or len(r) != cols:
                raise ValueError("each row must hold exactly `size` entries")
            parsed.append([LaurentPoly.from_json(p) for p in r])
        return cls(parsed, cols=cols)


def _ldot(u, v) -> LaurentPoly:
    c: dict[int, Fraction] = {}
    for a, b in zip(u, v):
        if a and b:
            for e1, v1 in a._c.items():
                for e2, v2 in b._c.items():
                    e = e1 + e2
                    c[e] = c.get(e, 0) + v1 * v2
    return LaurentPoly._raw({e: x for e, x in c.items() if x})


def complete_unimodular(v) -> tuple[LaurentMatrix, LaurentMatrix]:
    """Extend a unimodular polynomial column ``v`` to an invertible matrix.

    Returns ``(U, U_inv)``, both with polynomial entries and constant
    determinant, such that the first column of ``U`` is ``v``.  Works by the
    Euclidean algorithm on the entries, recording each elementary row
    operation (on ``U_inv``) and its inverse column operation (on ``U``).
    Raises ValueError if the entries have a nontrivial common factor.
    """
    v = [LaurentPoly.coerce(x) for x in v]
    if not all(p.is_polynomial() for p in v):
        raise ValueError("complete_unimodular needs polynomial entries")
    r = len(v)
    U = [[LaurentPoly.const(int(i == j)) for j in range(r)] for i in range(r)]
    Ui = [[LaurentPoly.const(int(i == j)) for j in range(r)] for i in range(r)]

    def row_sub(i, p, q):  # R_i -= q R_p on v and Ui; C_p += q C_i on U
        v[i] = v[i] - q * v[p]
        Ui[i] = [a - q * b for a, b in zip(Ui[i], Ui[p])]
        for row in U:
            row[p] = row[p] + q * row[i]

    while True:
        nz = [i for i in range(r) if v[i]]
        if not nz:
            raise ValueError("zero vector is not unimodular")
        if len(nz) == 1:
            break
        p = min(nz, key=lambda i: (v[i].degree, i))
        for i in nz:
            if i != p:
                q, _ = poly_divmod(v[i], v[p])
                row_sub(i, p, q)
    p = nz[0]
    if v[p].degree != 0:
        raise ValueError("entries share a nonconstant common factor")
    if p != 0:
        v[0], v[p] = v[p], v[0]
        Ui[0], Ui[p] = Ui[p], Ui[0]
        for row in U:
            row[0], row[p] = row[p], row[0]
    c = v[0].coeff(0)
    Ui[0] = [a * (1 / c) for a in Ui[0]]
    for row in U:
        row[0] = row[0] * c
    return LaurentMatrix(U), LaurentMatrix(Ui)
