"""Phase-1 simplex: decide whether {x >= 0 : G x <= h} is nonempty.

Artificial variables are introduced for rows violated at the origin and
their sum is driven to zero.  Pivoting is deterministic: the entering
column takes the most negative reduced cost (lowest index on ties), and
after a long run of degenerate pivots the rule degrades to Bland's
smallest-index rule, which cannot cycle, so termination is guaranteed
without giving up practical speed.  Identical constraint systems produce
identical answers and witnesses, so callers can compare solve traces
exactly.
"""

from __future__ import annotations

import numpy as np

DEFAULT_MAX_ITER = 10 ** 6
PIVOT_TOL = 1e-9
FEAS_TOL = 1e-10
STALL_LIMIT = 60  # degenerate pivots tolerated before switching to Bland


class SimplexIterationLimit(RuntimeError):
    """The pivot cap was hit before optimality; not an infeasibility verdict."""


def phase_one(G, h, max_iter: int = DEFAULT_MAX_ITER):
    """Return a feasible x >= 0 with G x <= h, or None when none exists.

    G is (m, n); rows with a negative right-hand side get an artificial
    variable, rows satisfied at the origin keep their slack basic.  The
    system is declared feasible when the artificial sum reaches (numerical)
    zero; the witness is read off the final basis.
    """
    G = np.asarray(G, dtype=float)
    h = np.asarray(h, dtype=float)
    m, n = G.shape if G.ndim == 2 else (0, 0)
    if m == 0:
        return np.zeros(n)

    neg = h < 0
    n_art = int(np.count_nonzero(neg))
    n_cols = n + m + n_art

    T = np.zeros((m, n_cols + 1))
    T[:, :n] = G
    T[:, n:n + m] = np.eye(m)
    T[:, -1] = h
    sign = np.where(neg, -1.0, 1.0)
    T *= sign[:, None]

    art_cols = {}
    k = n + m
    for r in np.flatnonzero(neg):
        T[r, k] = 1.0
        art_cols[r] = k
        k += 1

    basis = np.array([art_cols.get(r, n + r) for r in range(m)], dtype=int)

    # Reduced-cost row for min(sum of artificials); artificials are basic in
    # exactly the negated rows, so subtract those rows from the cost vector.
    z = np.zeros(n_cols + 1)
    z[n + m:n_cols] = 1.0
    for r in np.flatnonzero(neg):
        z -= T[r]

    stalled = 0
    bland = False
    for _ in range(max_iter):
        costs = z[:n_cols]
        if bland:
            candidates = np.flatnonzero(costs < -PIVOT_TOL)
            if candidates.size == 0:
                break
            entering = int(candidates[0])
        else:
            entering = int(np.argmin(costs))
            if costs[entering] >= -PIVOT_TOL:
                break
        col = T[:, entering]
        rows = np.flatnonzero(col > PIVOT_TOL)
        if rows.size == 0:
            # Unbounded in a minimization of a sum bounded below: numerically
            # degenerate; treat the current (nonzero) objective as infeasible.
            break
        ratios = T[rows, -1] / col[rows]
        best = ratios.min()
        tied = rows[ratios <= best + 1e-12]
        leaving = int(tied[np.argmin(basis[tied])])
        _pivot(T, z, leaving, entering)
        basis[leaving] = entering
        if best <= 1e-12:
            stalled += 1
            if stalled >= STALL_LIMIT:
                bland = True
        else:
            stalled = 0
            bland = False
    else:
        raise SimplexIterationLimit(
            f"phase-1 simplex did not converge within {max_iter} pivots")

    objective = -z[-1]
    if objective > FEAS_TOL:
        return None
    x = np.zeros(n)
    for r, j in enumerate(basis):
        if j < n:
            x[j] = max(T[r, -1], 0.0)
    return x


def _pivot(T, z, row, col):
    T[row] /= T[row, col]
    factors = T[:, col].copy()
    factors[row] = 0.0
    T -= np.outer(factors, T[row])
    z -= z[col] * T[row]
