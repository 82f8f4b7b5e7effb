"""Primal and dual copositive linear norms and their certificates.

A strictly positive vector ``v`` induces two norms on the nonnegative
orthant: the primal one ``x -> v.x`` and its dual ``x -> max_i x_i/v_i``.
A certificate attaches one such vector to every node of a path-complete
graph, together with a decay rate ``gamma``; the edge predicate below is
the vector translation of the per-edge decrease inequality

    (value at b)(A_i x) <= gamma * (value at a)(x)   for all x >= 0,

for an edge ``(a, b, i)``.  In vector form this reads:

    primal:  A_i^T v_b <= gamma * v_a      (componentwise)
    dual:    A_i   v_a <= gamma * v_b      (componentwise)

The dual case puts the source vector on the left because the weighted
max-norm inequality transposes the roles of the two weight vectors.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from types import MappingProxyType

import numpy as np

from .graphs import LabeledGraph

PRIMAL = "primal"
DUAL = "dual"

POSITIVITY_FLOOR = 1e-12
DEFAULT_TOL = 1e-9


class TransportError(ValueError):
    """A transported certificate failed verification on the lifted graph."""


def as_positive_vector(v) -> np.ndarray:
    arr = np.asarray(v, dtype=float)
    if arr.ndim != 1 or arr.size < 1:
        raise ValueError("expected a 1-D vector of dimension >= 1")
    if not np.all(arr > 0):
        raise ValueError("vector entries must be strictly positive")
    arr = arr.copy()
    arr.setflags(write=False)
    return arr


def _as_nonnegative_vector(x, dim):
    arr = np.asarray(x, dtype=float)
    if arr.shape != (dim,):
        raise ValueError(f"dimension mismatch: expected {dim}, got {arr.shape}")
    if np.any(arr < 0):
        raise ValueError("vector must be componentwise nonnegative")
    return arr


@dataclass(frozen=True, eq=False)
class MatrixSet:
    """A switching system given by M nonnegative n-by-n matrices."""

    matrices: tuple

    @staticmethod
    def from_matrices(mats) -> "MatrixSet":
        arrs = []
        for m in mats:
            a = np.asarray(m, dtype=float)
            if a.ndim != 2 or a.shape[0] != a.shape[1]:
                raise ValueError("matrices must be square")
            if np.any(a < 0) or not np.all(np.isfinite(a)):
                raise ValueError("matrix entries must be finite and nonnegative")
            a = a.copy()
            a.setflags(write=False)
            arrs.append(a)
        if not arrs:
            raise ValueError("need at least one matrix")
        if len({a.shape for a in arrs}) != 1:
            raise ValueError("all matrices must share one size")
        return MatrixSet(tuple(arrs))

    @property
    def n(self) -> int:
        return self.matrices[0].shape[0]

    @property
    def size(self) -> int:
        return len(self.matrices)

    def matrix(self, label: int) -> np.ndarray:
        """Matrix for a 1-based mode label."""
        if not 1 <= label <= self.size:
            raise ValueError(f"mode label {label} outside 1..{self.size}")
        return self.matrices[label - 1]

    def transposed(self) -> "MatrixSet":
        return MatrixSet.from_matrices([m.T for m in self.matrices])


def primal_eval(v, x) -> float:
    """Primal norm v.x of a nonnegative point."""
    v = as_positive_vector(v)
    x = _as_nonnegative_vector(x, v.size)
    return float(v @ x)


def dual_eval(v, x) -> float:
    """Dual norm max_i x_i / v_i of a nonnegative point."""
    v = as_positive_vector(v)
    x = _as_nonnegative_vector(x, v.size)
    return float(np.max(x / v))


def vee(v, w) -> np.ndarray:
    """Componentwise minimum; the weight vector of max of dual norms and of
    infimal convolution of primal norms."""
    v = as_positive_vector(v)
    w = as_positive_vector(w)
    if v.size != w.size:
        raise ValueError("dimension mismatch")
    return as_positive_vector(np.minimum(v, w))


def edge_holds(flavor, A, v_a, v_b, gamma, tol=DEFAULT_TOL) -> bool:
    """Decrease predicate of the edge (a, b, i) with mode matrix ``A``.

    Primal: ``A^T v_b <= gamma v_a + tol``;  dual: ``A v_a <= gamma v_b + tol``,
    both componentwise.
    """
    if gamma < 0 or tol < 0:
        raise ValueError("gamma and tol must be nonnegative")
    A = np.asarray(A, dtype=float)
    v_a = as_positive_vector(v_a)
    v_b = as_positive_vector(v_b)
    if A.shape != (v_a.size, v_a.size) or v_a.size != v_b.size:
        raise ValueError("dimension mismatch")
    if flavor == PRIMAL:
        return bool(np.all(A.T @ v_b <= gamma * v_a + tol))
    if flavor == DUAL:
        return bool(np.all(A @ v_a <= gamma * v_b + tol))
    raise ValueError(f"unknown flavor {flavor!r}")


def _edge_residual(flavor, A, v_a, v_b, gamma):
    if flavor == PRIMAL:
        return float(np.max(A.T @ v_b - gamma * v_a))
    return float(np.max(A @ v_a - gamma * v_b))


@dataclass(frozen=True, eq=False)
class Certificate:
    """One strictly positive vector per graph node, plus a decay rate.

    ``gamma`` travels inside the certificate: the vectors are meaningless
    without the rate they were found at.
    """

    flavor: str
    gamma: float
    vectors: dict = field(hash=False)

    def __post_init__(self):
        if self.flavor not in (PRIMAL, DUAL):
            raise ValueError(f"flavor must be {PRIMAL!r} or {DUAL!r}")
        if self.gamma < 0:
            raise ValueError("gamma must be nonnegative")
        fixed = {}
        dim = None
        for node, vec in self.vectors.items():
            arr = as_positive_vector(vec)
            if dim is None:
                dim = arr.size
            elif arr.size != dim:
                raise ValueError("certificate vectors must share one dimension")
            fixed[node] = arr
        if not fixed:
            raise ValueError("certificate needs at least one node vector")
        object.__setattr__(self, "vectors", MappingProxyType(fixed))

    @property
    def dim(self) -> int:
        return next(iter(self.vectors.values())).size


@dataclass(frozen=True)
class VerificationReport:
    ok: bool
    violations: tuple  # ((src, dst, label), residual) per failing edge

    def __bool__(self):
        return self.ok


def verify_certificate(g: LabeledGraph, mats: MatrixSet, cert: Certificate,
                       tol=DEFAULT_TOL) -> VerificationReport:
    """Check the decrease predicate on every edge of ``g``.

    Requires a vector for every node, matching dimensions, and a matrix
    set whose size equals the graph alphabet.
    """
    if mats.size != g.alphabet_size:
        raise ValueError("alphabet size of graph and matrix set differ")
    if cert.dim != mats.n:
        raise ValueError("certificate dimension does not match matrices")
    missing = [s for s in g.nodes if s not in cert.vectors]
    if missing:
        raise ValueError(f"certificate lacks vectors for nodes: {missing}")
    violations = []
    for a, b, i in g.edges:
        A = mats.matrix(i)
        if not edge_holds(cert.flavor, A, cert.vectors[a], cert.vectors[b],
                          cert.gamma, tol):
            violations.append(((a, b, i),
                               _edge_residual(cert.flavor, A,
                                              cert.vectors[a], cert.vectors[b],
                                              cert.gamma)))
    return VerificationReport(not violations, tuple(violations))


def _parse_lift_kind(kind: str):
    if kind.startswith("sum:"):
        T = int(kind.split(":", 1)[1])
        if T < 1:
            raise ValueError("sum lift needs T >= 1")
        return "sum", T
    if kind in ("max", "min", "comp", "backcomp"):
        return kind, None
    raise ValueError(f"unknown lift kind {kind!r} "
                     "(expected sum:T, max, min, comp or backcomp)")


_SUPPORTED_TRANSPORTS = {
    ("sum", PRIMAL), ("sum", DUAL),
    ("max", DUAL),
    ("min", PRIMAL),
    ("comp", PRIMAL),
    ("backcomp", PRIMAL),
}


def transport_certificate(cert: Certificate, kind: str, g: LabeledGraph,
                          mats: MatrixSet, tol=DEFAULT_TOL) -> Certificate:
    """Carry a certificate of ``g`` to the lifted graph, at the same gamma.

    Node vectors on the lift:

    * ``sum:T`` (both flavors): a multiset node gets the sum of its
      members' vectors.
    * ``max`` (dual only) and ``min`` (primal only): a subset node gets the
      componentwise minimum of its members' vectors.
    * ``comp`` (primal only): node ``s∘i`` gets ``A_i^T v_s``.
    * ``backcomp`` (primal only): node ``s∘i`` gets ``A_i^{-T} v_s``; every
      mode matrix must be invertible.  The construction is only guaranteed
      when the inverses are again nonnegative maps of the orthant, so the
      result is re-verified and a :class:`TransportError` raised otherwise.

    Transported vectors must stay strictly positive (entries above 1e-12);
    the returned certificate passes :func:`verify_certificate` on the lift.
    """
    from . import lifts  # deferred: lifts imports graphs only, no cycle at runtime

    base, T = _parse_lift_kind(kind)
    if (base, cert.flavor) not in _SUPPORTED_TRANSPORTS:
        raise ValueError(f"transport of a {cert.flavor} certificate along "
                         f"{base!r} is not supported")
    report = verify_certificate(g, mats, cert, tol)
    if not report.ok:
        raise ValueError("certificate does not verify on the source graph")

    vectors = {}
    if base == "sum":
        lifted = lifts.sum_lift(g, T)
        for node in lifted.nodes:
            vectors[node] = np.sum([cert.vectors[c] for c in node.value], axis=0)
    elif base in ("max", "min"):
        lifted = lifts.max_lift(g) if base == "max" else lifts.min_lift(g)
        for node in lifted.nodes:
            vectors[node] = np.min([cert.vectors[c] for c in node.value], axis=0)
    elif base == "comp":
        lifted = lifts.composition_lift(g)
        for node in lifted.nodes:
            s, i = node.value
            vec = mats.matrix(i).T @ cert.vectors[s]
            _require_positive(vec, node)
            vectors[node] = vec
    else:  # backcomp
        lifted = lifts.backward_composition_lift(g)
        inverses = []
        for k, A in enumerate(mats.matrices, start=1):
            try:
                inverses.append(np.linalg.inv(A).T)
            except np.linalg.LinAlgError as exc:
                raise ValueError(f"mode matrix {k} is singular") from exc
        for node in lifted.nodes:
            s, i = node.value
            vec = inverses[i - 1] @ cert.vectors[s]
            _require_positive(vec, node)
            vectors[node] = vec

    out = Certificate(cert.flavor, cert.gamma, vectors)
    check = verify_certificate(lifted, mats, out, tol)
    if not check.ok:
        raise TransportError(
            f"transported certificate violates {len(check.violations)} lifted "
            f"edge(s); worst residual {max(r for _, r in check.violations):.3e}")
    return out


def _require_positive(vec, node):
    if np.any(vec < POSITIVITY_FLOOR):
        raise ValueError(
            f"transported vector at node {node} has an entry below {POSITIVITY_FLOOR}")
