"""Exact rational linear algebra.

Vectors are tuples of Fraction, matrices are tuples of row tuples.  Every
routine here is exact: there is no floating point anywhere, so results can
be compared with ``==``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import DimensionMismatch, NoSolution, NotSymmetric

Vec = tuple[Fraction, ...]
Mat = tuple[Vec, ...]

ZERO = Fraction(0)
ONE = Fraction(1)


def qvec(values: Iterable) -> Vec:
    return tuple(Fraction(v) for v in values)


def qmat(rows: Iterable[Iterable]) -> Mat:
    mat = tuple(qvec(row) for row in rows)
    if mat and any(len(row) != len(mat[0]) for row in mat):
        raise DimensionMismatch("ragged matrix")
    return mat


def zeros(n: int) -> Vec:
    return (ZERO,) * n


def vec_add(a: Vec, b: Vec) -> Vec:
    if len(a) != len(b):
        raise DimensionMismatch(f"vector lengths {len(a)} != {len(b)}")
    return tuple(x + y for x, y in zip(a, b))


def vec_sub(a: Vec, b: Vec) -> Vec:
    if len(a) != len(b):
        raise DimensionMismatch(f"vector lengths {len(a)} != {len(b)}")
    return tuple(x - y for x, y in zip(a, b))


def vec_scale(c: Fraction, a: Vec) -> Vec:
    return tuple(c * x for x in a)


def dot(a: Vec, b: Vec) -> Fraction:
    if len(a) != len(b):
        raise DimensionMismatch(f"vector lengths {len(a)} != {len(b)}")
    return sum((x * y for x, y in zip(a, b)), ZERO)


def mat_vec(m: Mat, v: Vec) -> Vec:
    return tuple(dot(row, v) for row in m)


def mat_mul(a: Mat, b: Mat) -> Mat:
    if a and b and len(a[0]) != len(b):
        raise DimensionMismatch("incompatible shapes")
    bt = transpose(b)
    return tuple(tuple(dot(row, col) for col in bt) for row in a)


def transpose(m: Mat) -> Mat:
    return tuple(zip(*m)) if m else ()


def identity(n: int) -> Mat:
    return tuple(tuple(ONE if i == j else ZERO for j in range(n)) for i in range(n))


@dataclass(frozen=True)
class Solution:
    """Particular solution of A x = b plus a basis of the nullspace of A.

    ``nullspace`` is empty exactly when the solution is unique.
    """

    x: Vec
    nullspace: tuple[Vec, ...]

    @property
    def unique(self) -> bool:
        return not self.nullspace


def _eliminate(rows: list[list[Fraction]], ncols: int, col_order: Sequence[int]):
    """Forward elimination in the given column order; returns pivot list.

    Each pivot is a (row index, column index) pair; after the call ``rows``
    is in reduced echelon form with respect to ``col_order``.
    """
    pivots: list[tuple[int, int]] = []
    r = 0
    for c in col_order:
        pivot_row = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if pivot_row is None:
            continue
        rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
        inv = ONE / rows[r][c]
        rows[r] = [inv * v for v in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [v - f * w for v, w in zip(rows[i], rows[r])]
        pivots.append((r, c))
        r += 1
        if r == len(rows):
            break
    return pivots


def solve(a: Mat, b: Vec, col_order: Sequence[int] | None = None) -> Solution:
    """Solve A x = b exactly.

    Returns a particular solution together with a nullspace basis when the
    system is underdetermined.  Raises :class:`NoSolution` when inconsistent.
    ``col_order`` controls which columns are preferred as pivots, which pins
    down the particular solution deterministically (free coordinates in
    non-pivot columns are set to zero).
    """
    m = len(a)
    n = len(a[0]) if a else 0
    if len(b) != m:
        raise DimensionMismatch(f"matrix has {m} rows, rhs has {len(b)}")
    if col_order is None:
        col_order = range(n)
    rows = [list(row) + [rhs] for row, rhs in zip(a, b)]
    if not rows:
        return Solution(zeros(n), tuple(identity(n)))
    pivots = _eliminate(rows, n, col_order)
    pivot_rows = len(pivots)
    for i in range(pivot_rows, m):
        if rows[i][n] != 0:
            raise NoSolution("inconsistent linear system")
    pivot_cols = {c: r for r, c in pivots}
    x = list(zeros(n))
    for r, c in pivots:
        x[c] = rows[r][n]
    free_cols = [c for c in range(n) if c not in pivot_cols]
    basis = []
    for fc in free_cols:
        v = list(zeros(n))
        v[fc] = ONE
        for r, c in pivots:
            v[c] = -rows[r][fc]
        basis.append(tuple(v))
    return Solution(tuple(x), tuple(basis))


def solve_unique(a: Mat, b: Vec) -> Vec:
    sol = solve(a, b)
    if not sol.unique:
        raise NoSolution("system is underdetermined")
    return sol.x


def rank(a: Mat) -> int:
    if not a:
        return 0
    rows = [list(row) for row in a]
    return len(_eliminate(rows, len(a[0]), range(len(a[0]))))


def inverse(a: Mat) -> Mat:
    n = len(a)
    if any(len(row) != n for row in a):
        raise DimensionMismatch("inverse needs a square matrix")
    rows = [list(row) + list(ident_row) for row, ident_row in zip(a, identity(n))]
    pivots = _eliminate(rows, n, range(n))
    if len(pivots) < n:
        raise NoSolution("matrix is singular")
    return tuple(tuple(rows[r][n:]) for r in range(n))


def det(a: Mat) -> Fraction:
    n = len(a)
    rows = [list(row) for row in a]
    result = ONE
    for c in range(n):
        pivot = next((i for i in range(c, n) if rows[i][c] != 0), None)
        if pivot is None:
            return ZERO
        if pivot != c:
            rows[c], rows[pivot] = rows[pivot], rows[c]
            result = -result
        result *= rows[c][c]
        inv = ONE / rows[c][c]
        for i in range(c + 1, n):
            if rows[i][c] != 0:
                f = rows[i][c] * inv
                rows[i] = [v - f * w for v, w in zip(rows[i], rows[c])]
    return result


@dataclass(frozen=True)
class Signature:
    """Inertia of a symmetric matrix: eigenvalue sign counts."""

    n_plus: int
    n_minus: int
    n_zero: int

    def __iter__(self):
        return iter((self.n_plus, self.n_minus, self.n_zero))


def signature(s: Mat) -> Signature:
    """Inertia of a symmetric rational matrix by exact congruence elimination.

    Uses 1x1 diagonal pivots when available; when the remaining diagonal is
    all zero but some off-diagonal entry is not, a 2x2 hyperbolic pivot
    contributes one positive and one negative eigenvalue (Sylvester's law
    makes the counts congruence-invariant, so Schur complements preserve
    them).
    """
    n = len(s)
    for i in range(n):
        if len(s[i]) != n:
            raise NotSymmetric("matrix is not square")
        for j in range(i):
            if s[i][j] != s[j][i]:
                raise NotSymmetric(f"entries ({i},{j}) and ({j},{i}) differ")
    work = {(i, j): s[i][j] for i in range(n) for j in range(n)}
    active = list(range(n))
    n_plus = n_minus = 0
    while active:
        piv = next((i for i in active if work[(i, i)] != 0), None)
        if piv is not None:
            p = work[(piv, piv)]
            if p > 0:
                n_plus += 1
            else:
                n_minus += 1
            active.remove(piv)
            col = {k: work[(k, piv)] for k in active}
            for k in active:
                if col[k] == 0:
                    continue
                for l in active:
                    work[(k, l)] -= col[k] * col[l] / p
            continue
        off = next(
            ((i, j) for idx, i in enumerate(active) for j in active[idx + 1 :] if work[(i, j)] != 0),
            None,
        )
        if off is None:
            return Signature(n_plus, n_minus, len(active))
        i, j = off
        a = work[(i, j)]
        n_plus += 1
        n_minus += 1
        active.remove(i)
        active.remove(j)
        ci = {k: work[(k, i)] for k in active}
        cj = {k: work[(k, j)] for k in active}
        for k in active:
            for l in active:
                work[(k, l)] -= (ci[k] * cj[l] + cj[k] * ci[l]) / a
    return Signature(n_plus, n_minus, n - n_plus - n_minus)
