"""Two-polar decomposition and invariant-measure weights.

phi = L diag(Q) R^T with L, R special-orthogonal and Q the positive
deformation invariants sorted descending (the canonical ordered-chamber
representative; coincident invariants leave L, R non-unique and any valid
pair is returned).  The group-invariant weight on positive-determinant
matrices is det(phi)^(-n), and the radial densities are

    P_lambda(q) = prod_{i != j} |sinh(q^i - q^j)|,
    P_l(Q)      = prod_{i != j} |(Q^i - Q^j)(Q^i + Q^j)|,

with q = log Q componentwise.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = ["TwoPolar", "two_polar", "haar_weight", "p_lambda", "p_l"]


@dataclass(frozen=True, eq=False)
class TwoPolar:
    L: np.ndarray
    Q: np.ndarray
    R: np.ndarray

    @property
    def q(self) -> np.ndarray:
        """Logarithmic deformation invariants."""
        return np.log(self.Q)

    def reconstruct(self) -> np.ndarray:
        return self.L @ np.diag(self.Q) @ self.R.T


def two_polar(phi) -> TwoPolar:
    """Decompose a positive-determinant square matrix as L diag(Q) R^T.

    Q comes out sorted descending and strictly positive; both orthogonal
    factors carry determinant +1 (sign flips are absorbed pairwise, which
    leaves the product unchanged).
    """
    phi = np.asarray(phi, dtype=float)
    if phi.ndim != 2 or phi.shape[0] != phi.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {phi.shape}")
    det = np.linalg.det(phi)
    if not np.isfinite(det) or det <= 0.0:
        raise ValueError(f"two-polar decomposition needs det > 0, got det = {det}")
    u, sing, vt = np.linalg.svd(phi)
    if np.any(sing <= 0.0):
        raise ValueError("matrix is numerically singular")
    if np.linalg.det(u) < 0.0:
        # det(u) = det(v) = -1 here since det(phi) > 0; flip the last column
        # of both, which cancels in the product u diag Q v^T.
        u = u.copy()
        vt = vt.copy()
        u[:, -1] *= -1.0
        vt[-1, :] *= -1.0
    return TwoPolar(L=u, Q=sing.copy(), R=vt.T)


def haar_weight(phi, n: int | None = None) -> float:
    """Density det(phi)^(-n) of the invariant measure against the flat one."""
    phi = np.asarray(phi, dtype=float)
    if phi.ndim != 2 or phi.shape[0] != phi.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {phi.shape}")
    if n is None:
        n = phi.shape[0]
    det = np.linalg.det(phi)
    if det <= 0.0:
        raise ValueError(f"weight defined for det > 0 only, got det = {det}")
    return float(det ** (-n))


def p_lambda(q) -> float:
    """Radial density of the group-invariant measure in logarithmic invariants."""
    q = np.asarray(q, dtype=float)
    diffs = q[:, None] - q[None, :]
    off = ~np.eye(len(q), dtype=bool)
    return float(np.prod(np.abs(np.sinh(diffs[off])))) if len(q) > 1 else 1.0


def p_l(Q) -> float:
    """Radial density of the flat (Lebesgue) measure in the invariants Q."""
    Q = np.asarray(Q, dtype=float)
    diffs = Q[:, None] - Q[None, :]
    sums = Q[:, None] + Q[None, :]
    off = ~np.eye(len(Q), dtype=bool)
    return float(np.prod(np.abs(diffs[off] * sums[off]))) if len(Q) > 1 else 1.0
