"""Exact linear programming by the textbook two-phase simplex method.

Bland's rule is used throughout, so the solver never cycles.  Everything is
rational and desk-scale: constraint counts in the hundreds at most.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import Infeasible, Unbounded
from .linalg import Vec, ZERO, ONE, qvec


def _pivot(tableau: list[list[Fraction]], basis: list[int], row: int, col: int) -> None:
    inv = ONE / tableau[row][col]
    tableau[row] = [inv * v for v in tableau[row]]
    for i, trow in enumerate(tableau):
        if i != row and trow[col] != 0:
            f = trow[col]
            tableau[i] = [v - f * w for v, w in zip(trow, tableau[row])]
    basis[row] = col


def _run_simplex(tableau: list[list[Fraction]], basis: list[int], ncols: int) -> None:
    """Iterate on a tableau whose last row is the (maximization) objective."""
    obj = tableau[-1]
    while True:
        col = next((j for j in range(ncols) if obj[j] > 0), None)  # Bland: first improving
        if col is None:
            return
        best_row = None
        best_ratio = None
        for i in range(len(tableau) - 1):
            if tableau[i][col] > 0:
                ratio = tableau[i][ncols] / tableau[i][col]
                if (
                    best_ratio is None
                    or ratio < best_ratio
                    or (ratio == best_ratio and basis[i] < basis[best_row])
                ):
                    best_row, best_ratio = i, ratio
        if best_row is None:
            raise Unbounded("objective unbounded above")
        _pivot(tableau, basis, best_row, col)
        obj = tableau[-1]


def simplex_max(a: Sequence[Vec], b: Vec, c: Vec) -> tuple[Vec, Fraction]:
    """Maximize c.x subject to A x = b, x >= 0.

    Returns (optimal x, optimal value).  Raises Infeasible or Unbounded.
    """
    m, n = len(a), len(c)
    rows = [list(row) for row in a]
    rhs = list(b)
    for i in range(m):
        if rhs[i] < 0:
            rows[i] = [-v for v in rows[i]]
            rhs[i] = -rhs[i]

    # Phase 1: artificial variables, maximize -(sum of artificials).
    width = n + m
    tableau = [rows[i] + [ONE if j == i else ZERO for j in range(m)] + [rhs[i]] for i in range(m)]
    basis = [n + i for i in range(m)]
    phase1_obj = [sum(tableau[i][j] for i in range(m)) for j in range(width + 1)]
    for j in range(n, width):
        phase1_obj[j] = ZERO  # reduced cost of a basic artificial is zero
    tableau.append(phase1_obj)
    _run_simplex(tableau, basis, width)
    if tableau[-1][width] != 0:
        raise Infeasible("phase 1 optimum is nonzero")
    # Drive artificials out of the basis where possible.
    for i in range(m):
        if basis[i] >= n:
            col = next((j for j in range(n) if tableau[i][j] != 0), None)
            if col is not None:
                _pivot(tableau, basis, i, col)
    # Drop rows whose basic variable is still artificial (redundant constraints).
    keep = [i for i in range(m) if basis[i] < n]
    tableau = [[tableau[i][j] for j in range(n)] + [tableau[i][width]] for i in keep]
    basis = [basis[i] for i in keep]

    # Phase 2.
    objective = list(c) + [ZERO]
    for i, bi in enumerate(basis):
        if objective[bi] != 0:
            f = objective[bi]
            objective = [v - f * w for v, w in zip(objective, tableau[i])]
    tableau.append(objective)
    _run_simplex(tableau, basis, n)
    x = [ZERO] * n
    for i, bi in enumerate(basis):
        x[bi] = tableau[i][n]
    return tuple(x), -tableau[-1][n]


def feasible_nonneg(a: Sequence[Vec], b: Vec) -> Vec | None:
    """Return some x >= 0 with A x = b, or None when no such x exists."""
    n = len(a[0]) if a else 0
    try:
        x, _ = simplex_max(a, b, (ZERO,) * n)
    except Infeasible:
        return None
    return x


@dataclass(frozen=True)
class SlackSolution:
    z: Vec
    slack: Fraction


def max_min_slack(
    rows: Sequence[tuple[Vec, Fraction]], normalizer: Vec
) -> SlackSolution:
    """Maximize t subject to row.z + const >= t for every row and normalizer.z = 1.

    The normalizer equality makes the feasible section bounded for well-posed
    inputs; an unbounded objective signals a bad normalizer and raises
    :class:`Unbounded`.  A nonpositive optimal slack is returned as-is (the
    caller decides what an empty interior means); :class:`Infeasible` is
    raised only when the normalizer equality itself cannot be met.
    """
    nz = len(normalizer)
    m = len(rows)
    # Columns: p (nz), q (nz), t+ , t-, slacks (m).
    ncols = 2 * nz + 2 + m
    a: list[Vec] = []
    b: list[Fraction] = []
    for k, (coeffs, const) in enumerate(rows):
        row = [ZERO] * ncols
        for i, v in enumerate(coeffs):
            row[i] = v
            row[nz + i] = -v
        row[2 * nz] = -ONE
        row[2 * nz + 1] = ONE
        row[2 * nz + 2 + k] = -ONE
        a.append(tuple(row))
        b.append(-const)
    norm_row = [ZERO] * ncols
    for i, v in enumerate(normalizer):
        norm_row[i] = v
        norm_row[nz + i] = -v
    a.append(tuple(norm_row))
    b.append(ONE)
    c = [ZERO] * ncols
    c[2 * nz] = ONE
    c[2 * nz + 1] = -ONE
    x, value = simplex_max(a, qvec(b), qvec(c))
    z = tuple(x[i] - x[nz + i] for i in range(nz))
    return SlackSolution(z, value)
