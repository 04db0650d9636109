"""Dense primal simplex for small box-constrained linear programs.

Solves ``max c.x subject to A x = b, 0 <= x <= u`` starting from the
all-zeros vertex, which must be feasible (in this package ``b`` is always
the zero vector). Bland's smallest-index rule makes every run finite and
deterministic; problem sizes here are a handful of rows by at most a few
dozen columns, so each iteration factorizes the basis afresh.
"""

from __future__ import annotations

import numpy as np

from .errors import SpectrasetError

AT_LOWER = 0
AT_UPPER = 1
BASIC = 2


class SimplexError(SpectrasetError):
    """Simplex could not produce a solution."""


class InfeasibleStartError(SimplexError):
    """The all-zeros point does not satisfy the equality constraints."""


def _independent_rows(a: np.ndarray, b: np.ndarray, tol: float) -> tuple[np.ndarray, np.ndarray]:
    """Drop linearly dependent rows, checking the dropped ones stay consistent."""
    m, _ = a.shape
    work = np.hstack([a.astype(float), b.reshape(-1, 1).astype(float)])
    kept: list[int] = []
    used_cols: list[int] = []
    for r in range(m):
        row = work[r].copy()
        for i, col in zip(kept, used_cols):
            factor = row[col] / work[i, col]
            row -= factor * work[i]
        pivot_candidates = np.abs(row[:-1])
        col = int(np.argmax(pivot_candidates))
        if pivot_candidates[col] > tol:
            work[r] = row
            kept.append(r)
            used_cols.append(col)
        elif abs(row[-1]) > tol:
            raise SimplexError("equality constraints are inconsistent")
    return a[kept], b[kept]


def _initial_basis(a: np.ndarray, tol: float) -> list[int]:
    """Column indices forming a nonsingular square submatrix, by pivoted elimination."""
    m, n = a.shape
    work = a.astype(float).copy()
    basis: list[int] = []
    for r in range(m):
        sub = np.abs(work[r:, :])
        sub[:, basis] = 0.0
        flat = int(np.argmax(sub))
        row_off, col = divmod(flat, n)
        if sub[row_off, col] <= tol:
            raise SimplexError("constraint matrix lost rank during basis selection")
        row = r + row_off
        work[[r, row]] = work[[row, r]]
        basis.append(col)
        work[r] /= work[r, col]
        others = [i for i in range(m) if i != r]
        work[others] -= np.outer(work[others, col], work[r])
    return basis


def maximize_box_lp(
    objective: np.ndarray,
    a_eq: np.ndarray,
    b_eq: np.ndarray,
    upper: np.ndarray | float = 1.0,
    tol: float = 1e-9,
    max_iter: int | None = None,
) -> np.ndarray:
    """Maximize ``objective . x`` over ``a_eq x = b_eq``, ``0 <= x <= upper``.

    ``b_eq`` must equal ``a_eq @ 0`` (i.e. be zero within ``tol``) so the
    origin is a feasible vertex. Returns an optimal ``x``.
    """
    c = np.asarray(objective, dtype=float)
    a = np.atleast_2d(np.asarray(a_eq, dtype=float))
    n = len(c)
    if a.size == 0:
        a = np.zeros((0, n))
    b = np.zeros(a.shape[0]) if b_eq is None else np.asarray(b_eq, dtype=float).reshape(-1)
    u = np.full(n, float(upper)) if np.isscalar(upper) else np.asarray(upper, dtype=float)
    if a.shape[1] != n or len(b) != a.shape[0] or len(u) != n:
        raise ValueError("inconsistent problem dimensions")
    if np.any(u < 0) or not np.all(np.isfinite(u)):
        raise ValueError("upper bounds must be finite and non-negative")
    if np.any(np.abs(b) > tol):
        raise InfeasibleStartError("origin violates the equality constraints")

    a, b = _independent_rows(a, b, tol=1e-11)
    m = a.shape[0]
    if m == 0:
        return np.where(c > tol, u, 0.0)

    basis = _initial_basis(a, tol=1e-11)
    status = np.full(n, AT_LOWER, dtype=np.int8)
    status[basis] = BASIC
    x_basic = np.zeros(m)

    if max_iter is None:
        max_iter = 200 * (n + m + 1)

    for _ in range(max_iter):
        a_b = a[:, basis]
        duals = np.linalg.solve(a_b.T, c[basis])
        reduced = c - duals @ a

        entering = -1
        for j in range(n):
            if status[j] == AT_LOWER and reduced[j] > tol:
                entering = j
                break
            if status[j] == AT_UPPER and reduced[j] < -tol:
                entering = j
                break
        if entering < 0:
            x = np.zeros(n)
            x[status == AT_UPPER] = u[status == AT_UPPER]
            x[basis] = np.clip(x_basic, 0.0, u[basis])
            return x

        rising = status[entering] == AT_LOWER
        delta = np.linalg.solve(a_b, a[:, entering])
        step_basic = -delta if rising else delta

        # Own-bound flip is always a candidate blocking "variable".
        best_t = u[entering]
        blocker = entering
        blocker_row = -1
        for i in range(m):
            if step_basic[i] > tol:
                t = (u[basis[i]] - x_basic[i]) / step_basic[i]
            elif step_basic[i] < -tol:
                t = x_basic[i] / -step_basic[i]
            else:
                continue
            t = max(t, 0.0)
            if t < best_t - 1e-12 or (abs(t - best_t) <= 1e-12 and basis[i] < blocker):
                best_t = t
                blocker = basis[i]
                blocker_row = i

        x_basic = x_basic + best_t * step_basic
        if blocker == entering:
            status[entering] = AT_UPPER if rising else AT_LOWER
        else:
            hit_upper = step_basic[blocker_row] > 0
            status[blocker] = AT_UPPER if hit_upper else AT_LOWER
            status[entering] = BASIC
            entering_value = best_t if rising else u[entering] - best_t
            basis[blocker_row] = entering
            x_basic[blocker_row] = entering_value

    raise SimplexError("iteration limit exceeded")
