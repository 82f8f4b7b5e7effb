"""Linear feasibility oracle and bisection for the graph LP values.

For a graph ``g``, matrices ``A_1..A_M`` and a rate ``gamma``, feasibility
asks for strictly positive node vectors satisfying every edge decrease
inequality (see :mod:`pclyap.copositive` for the two flavors).  Strict
positivity is replaced, without loss of generality, by ``v_s >= 1``
componentwise: the constraints are invariant under global positive
scaling, so any positive solution scales into the normalized polytope.
The bisection then exploits monotonicity of feasibility in ``gamma``.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .copositive import DUAL, PRIMAL, Certificate, MatrixSet
from .graphs import LabeledGraph, is_path_complete
from .simplex import DEFAULT_MAX_ITER, phase_one

DEFAULT_BISECTION_TOL = 1e-6


def _constraint_rows(g: LabeledGraph, mats: MatrixSet, flavor: str, gamma: float):
    """Rows of ``G u <= h`` over shifted variables ``u = v - 1 >= 0``.

    A dual edge (a, b, i) contributes ``A_i v_a - gamma v_b <= 0``; primal
    swaps to ``A_i^T v_b - gamma v_a <= 0``.  Rows are sorted by content so
    identical constraint systems solve identically however the graph was
    oriented or ordered.
    """
    if flavor not in (PRIMAL, DUAL):
        raise ValueError(f"unknown flavor {flavor!r}")
    if mats.size != g.alphabet_size:
        raise ValueError("alphabet size of graph and matrix set differ")
    n = mats.n
    idx = g.node_index()
    nv = len(g.nodes) * n
    rows = []
    for a, b, i in g.edges:
        A = mats.matrix(i) if flavor == DUAL else mats.matrix(i).T
        src, dst = (a, b) if flavor == DUAL else (b, a)
        isrc, idst = idx[src], idx[dst]
        for r in range(n):
            row = np.zeros(nv)
            row[isrc * n:(isrc + 1) * n] += A[r]
            row[idst * n + r] -= gamma
            rows.append((row, gamma - float(A[r].sum())))
    rows.sort(key=lambda rw: (rw[1], rw[0].tobytes()))
    G = np.array([r for r, _ in rows]) if rows else np.zeros((0, nv))
    h = np.array([b for _, b in rows])
    return G, h


def feasible(g: LabeledGraph, mats: MatrixSet, flavor: str, gamma: float,
             max_iter: int = DEFAULT_MAX_ITER):
    """Witness :class:`Certificate` at rate ``gamma``, or None if infeasible.

    Decided by a phase-1 simplex with Bland's rule; a hit pivot cap raises
    rather than being folded into an infeasible verdict.
    """
    if gamma < 0:
        raise ValueError("gamma must be nonnegative")
    G, h = _constraint_rows(g, mats, flavor, gamma)
    u = phase_one(G, h, max_iter=max_iter)
    if u is None:
        return None
    n = mats.n
    vectors = {s: 1.0 + u[k * n:(k + 1) * n] for k, s in enumerate(g.nodes)}
    return Certificate(flavor, gamma, vectors)


def gamma_upper_bound(mats: MatrixSet, flavor: str) -> float:
    """A rate at which the all-ones vectors are feasible on any graph."""
    if flavor == DUAL:
        return max(float(m.sum(axis=1).max()) for m in mats.matrices)
    return max(float(m.sum(axis=0).max()) for m in mats.matrices)


@dataclass(frozen=True)
class RhoBound:
    """Bisection output: optimal rate estimate, witness, and probe trace."""

    gamma: float
    certificate: Certificate
    trace: tuple  # ((gamma, feasible?), ...) in probe order

    def __iter__(self):  # allows gamma, cert = rho_bound(...)
        return iter((self.gamma, self.certificate))


def rho_bound(g: LabeledGraph, mats: MatrixSet, flavor: str,
              tol: float = DEFAULT_BISECTION_TOL,
              max_iter: int = DEFAULT_MAX_ITER) -> RhoBound:
    """Best decay rate achievable on ``g`` for the chosen norm flavor.

    Bisection over ``[0, gamma_hi]`` where ``gamma_hi`` makes the all-ones
    assignment feasible regardless of the graph.  Returns the midpoint of
    the final bracket (width <= tol) and the witness found at its feasible
    endpoint.  Graphs that are not path-complete only earn a warning: the
    LP value is still well defined, it just certifies nothing about
    arbitrary switching.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    if not is_path_complete(g):
        warnings.warn("graph is not path-complete; the computed value does "
                      "not bound the joint spectral radius")
    trace = []

    def probe(gamma):
        cert = feasible(g, mats, flavor, gamma, max_iter=max_iter)
        trace.append((gamma, cert is not None))
        return cert

    cert0 = probe(0.0)
    if cert0 is not None:
        return RhoBound(0.0, cert0, tuple(trace))
    hi = gamma_upper_bound(mats, flavor)
    best = probe(hi)
    if best is None:
        raise RuntimeError("internal error: upper bracket endpoint infeasible")
    lo = 0.0
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        cert = probe(mid)
        if cert is not None:
            hi, best = mid, cert
        else:
            lo = mid
    return RhoBound(0.5 * (lo + hi), best, tuple(trace))
