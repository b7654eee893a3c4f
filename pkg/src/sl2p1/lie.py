"""Structure analysis of Lie algebras of rational matrices.

Everything is computed from structure constants in a chosen basis: Killing
form, center, derived algebra, centralizers.  The commutant test gives a
Schur-type irreducibility certificate, and ``find_nilpotent`` is a bounded
search, not a decision procedure.
"""
from __future__ import annotations

import json
import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .errors import NotInAlgebra
from .linalg import QMatrix, Subspace, _nullspace_vectors, eigenspaces, kernel, rational_eigenvalues

__all__ = [
    "LieBasis",
    "SpanSolver",
    "lie_closure",
    "StructureReport",
    "structure_report",
    "CommutantResult",
    "commutant_dimension",
    "centralizer_dimension",
    "find_nilpotent",
    "linear_field_zeros",
]


class SpanSolver:
    """Incremental membership / coordinate solver for a span of vectors.

    Keeps a semi-echelon form together with the combination of original
    vectors producing each echelon row.
    """

    def __init__(self, length: int):
        self.length = length
        self._rows: list[tuple[int, list[Fraction], list[Fraction]]] = []
        self.count = 0

    def _reduce(self, v):
        v = list(v)
        combo: dict[int, Fraction] = {}
        for p, row, rc in self._rows:
            f = v[p]
            if f:
                v = [a - f * b for a, b in zip(v, row)]
                for i, c in enumerate(rc):
                    if c:
                        combo[i] = combo.get(i, Fraction(0)) + f * c
        return v, combo

    def add(self, v) -> bool:
        """Append ``v`` if independent of what is stored; report whether it was."""
        res, combo = self._reduce(v)
        p = next((i for i, a in enumerate(res) if a), None)
        if p is None:
            return False
        inv = 1 / res[p]
        idx = self.count
        rc = [Fraction(0)] * (idx + 1)
        for i, c in combo.items():
            rc[i] = -c * inv
        rc[idx] = inv
        self._rows = [(q, row, r + [Fraction(0)]) for q, row, r in self._rows]
        self._rows.append((p, [a * inv for a in res], rc))
        self.count += 1
        return True

    def coordinates(self, v) -> list[Fraction] | None:
        """Coefficients of ``v`` on the stored vectors, or None if outside the span."""
        res, combo = self._reduce(v)
        if any(res):
            return None
        return [combo.get(i, Fraction(0)) for i in range(self.count)]

    def contains(self, v) -> bool:
        return not any(self._reduce(v)[0])


@dataclass(frozen=True)
class LieBasis:
    """Basis of a matrix Lie algebra with ``[g_i, g_j] = sum_k c[i][j][k] g_k``."""

    ambient_dim: int
    generators: tuple[QMatrix, ...]
    structure_constants: tuple
    was_closed: bool = True

    @property
    def dim(self) -> int:
        return len(self.generators)

    def solver(self) -> SpanSolver:
        s = SpanSolver(self.ambient_dim**2)
        for g in self.generators:
            s.add(g.flatten())
        return s

    def coordinates(self, X: QMatrix) -> list[Fraction]:
        c = self.solver().coordinates(X.flatten())
        if c is None:
            raise NotInAlgebra("matrix is not in the span of the basis")
        return c

    def element(self, coeffs: Sequence) -> QMatrix:
        out = QMatrix.zeros(self.ambient_dim, self.ambient_dim)
        for c, g in zip(coeffs, self.generators):
            if c:
                out = out + g * c
        return out

    def ad(self, i: int) -> QMatrix:
        """Adjoint matrix of the i-th basis element: column j holds [g_i, g_j]."""
        d = self.dim
        c = self.structure_constants
        return QMatrix([[c[i][j][k] for j in range(d)] for k in range(d)], cols=d)

    def to_json(self) -> dict:
        return {"ambient_dim": self.ambient_dim, "generators": [g.to_json() for g in self.generators]}

    @classmethod
    def from_json(cls, obj) -> "LieBasis":
        """Parse ``{"ambient_dim": d, "generators": [...]}`` and close under brackets."""
        if isinstance(obj, str):
            obj = json.loads(obj)
        if not isinstance(obj, dict) or "generators" not in obj or "ambient_dim" not in obj:
            raise ValueError("Lie basis JSON needs ambient_dim and generators")
        d = obj["ambient_dim"]
        if not isinstance(d, int) or d < 0 or not isinstance(obj["generators"], list):
            raise ValueError("bad ambient_dim or generators")
        gens = [QMatrix.from_json(g) for g in obj["generators"]]
        if any(g.shape != (d, d) for g in gens):
            raise ValueError("generators must be ambient_dim x ambient_dim")
        return lie_closure(gens, ambient_dim=d)


def _structure_constants(gens: Sequence[QMatrix], solver: SpanSolver):
    d = len(gens)
    zero = (Fraction(0),) * d
    table = [[zero] * d for _ in range(d)]
    for i, j in combinations(range(d), 2):
        c = solver.coordinates(gens[i].bracket(gens[j]).flatten())
        if c is None:
            raise NotInAlgebra("basis is not closed under brackets")
        table[i][j] = tuple(c)
        table[j][i] = tuple(-x for x in c)
    return tuple(tuple(row) for row in table)


def lie_closure(mats: Sequence[QMatrix], ambient_dim: int | None = None) -> LieBasis:
    """Lie algebra generated by ``mats``: an independent spanning set plus constants.

    Independent inputs are kept in their given order; brackets that leave the
    current span are appended until nothing new appears.
    """
    mats = list(mats)
    if ambient_dim is None:
        if not mats:
            raise ValueError("ambient dimension needed for an empty generating set")
        ambient_dim = mats[0].rows
    if any(m.shape != (ambient_dim, ambient_dim) for m in mats):
        raise ValueError("generators must be square of equal size")
    solver = SpanSolver(ambient_dim**2)
    gens = [m for m in mats if solver.add(m.flatten())]
    n_input = len(gens)
    i = 0
    while i < len(gens):
        for j in range(i):
            b = gens[j].bracket(gens[i])
            if solver.add(b.flatten()):
                gens.append(b)
        i += 1
    consts = _structure_constants(gens, solver)
    return LieBasis(ambient_dim, tuple(gens), consts, was_closed=len(gens) == n_input)


@dataclass(frozen=True)
class StructureReport:
    is_abelian: bool
    derived: LieBasis
    center_dim: int
    killing_gram: QMatrix
    is_killing_nondegenerate: bool


def derived_algebra(L: LieBasis) -> LieBasis:
    """``[L, L]``, preferring basis elements of ``L`` that already lie in it."""
    brackets = [L.element(L.structure_constants[i][j]) for i, j in combinations(range(L.dim), 2)]
    full = SpanSolver(L.ambient_dim**2)
    for b in brackets:
        full.add(b.flatten())
    picked = SpanSolver(L.ambient_dim**2)
    chosen = []
    for g in list(L.generators) + brackets:
        if full.contains(g.flatten()) and picked.add(g.flatten()):
            chosen.append(g)
    return lie_closure(chosen, ambient_dim=L.ambient_dim)


def killing_form(L: LieBasis) -> QMatrix:
    """Gram matrix ``trace(ad g_i ad g_j)``."""
    ads = [L.ad(i) for i in range(L.dim)]
    return QMatrix([[(a @ b).trace() for b in ads] for a in ads], cols=L.dim)


def structure_report(L: LieBasis) -> StructureReport:
    d = L.dim
    c = L.structure_constants
    abelian = all(x == 0 for row in c for vec in row for x in vec)
    # x in center iff sum_i x_i c[i][j][k] = 0 for all j, k
    eqs = [[c[i][j][k] for i in range(d)] for j in range(d) for k in range(d)]
    center_dim = len(_nullspace_vectors(eqs, d)) if eqs else d
    gram = killing_form(L)
    return StructureReport(
        is_abelian=abelian,
        derived=derived_algebra(L),
        center_dim=center_dim,
        killing_gram=gram,
        is_killing_nondegenerate=gram.rank() == d,
    )


@dataclass(frozen=True)
class CommutantResult:
    """``verdict`` is "irreducible", "reducible" or "inconclusive" (over Q)."""

    dim: int
    basis: tuple[QMatrix, ...]
    verdict: str
    witness: Subspace | None = None


def commutant_dimension(L: LieBasis) -> CommutantResult:
    """Solve ``X g = g X`` for every basis element ``g``.

    Dimension 1 means only scalars commute, which certifies irreducibility.
    A non-scalar commuting ``X`` with a rational eigenvalue ``λ`` certifies
    reducibility via the invariant subspace ``ker(X - λ)``; otherwise the
    answer over Q is left open.
    """
    n = L.ambient_dim
    idx = lambda a, b: a * n + b  # noqa: E731
    eqs = []
    for g in L.generators:
        for i in range(n):
            for j in range(n):
                # (Xg - gX)[i][j] = sum_l X[i][l] g[l][j] - sum_l g[i][l] X[l][j]
                row = [Fraction(0)] * (n * n)
                for l in range(n):
                    row[idx(i, l)] += g[l, j]
                    row[idx(l, j)] -= g[i, l]
                eqs.append(row)
    if eqs:
        sols = _nullspace_vectors(eqs, n * n)
    else:
        sols = [tuple(Fraction(int(a == b)) for b in range(n * n)) for a in range(n * n)]
    basis = tuple(QMatrix([s[i * n : (i + 1) * n] for i in range(n)], cols=n) for s in sols)
    if len(basis) <= 1:
        return CommutantResult(len(basis), basis, "irreducible" if n else "inconclusive")
    for X in basis:
        if X.is_scalar():
            continue
        eig = rational_eigenvalues(X, strict=False)
        if eig:
            space = kernel(X - QMatrix.identity(n) * eig[0][0])
            return CommutantResult(len(basis), basis, "reducible", space)
    return CommutantResult(len(basis), basis, "inconclusive")


def centralizer_dimension(L: LieBasis, X: QMatrix) -> int:
    """``dim {Y in L : [X, Y] = 0}``; raises NotInAlgebra if ``X`` is outside ``L``."""
    x = L.coordinates(X)
    d = L.dim
    if d == 0:
        return 0
    ad = QMatrix.zeros(d, d)
    for i, xi in enumerate(x):
        if xi:
            ad = ad + L.ad(i) * xi
    return d - ad.rank()


def _is_nilpotent(N: QMatrix) -> bool:
    return (N ** N.rows).is_zero()


def find_nilpotent(L: LieBasis, seed: int = 0, budget: int = 200, coeff_range: int = 3) -> QMatrix | None:
    """A nonzero nilpotent element of ``L``, or None when the search gives up.

    Order of attempts: basis elements of ``L``, basis elements of the derived
    algebra, then ``budget`` random integer combinations (coefficients in
    ``[-coeff_range, coeff_range]``) of the derived basis.
    """
    for g in L.generators:
        if not g.is_zero() and _is_nilpotent(g):
            return g
    D = derived_algebra(L)
    for g in D.generators:
        if _is_nilpotent(g):
            return g
    if D.dim == 0:
        return None
    rng = random.Random(seed)
    for _ in range(budget):
        coeffs = [rng.randint(-coeff_range, coeff_range) for _ in range(D.dim)]
        if not any(coeffs):
            continue
        N = D.element(coeffs)
        if _is_nilpotent(N):
            return N
    return None


def linear_field_zeros(A: QMatrix, avoid: Subspace | None = None) -> list[tuple[Fraction, Subspace]]:
    """Eigenspaces of ``A``: their projectivizations are the zeros of the
    vector field ``A`` induces on projective space.

    With ``avoid`` given, only eigenspaces not contained in it are returned
    (the zeros lying off the projectivization of ``avoid``).
    Raises IrrationalSpectrum, naming the offending factor, if the spectrum
    is not rational.
    """
    out = eigenspaces(A)
    if avoid is not None:
        out = [(lam, S) for lam, S in out if not S <= avoid]
    return out
