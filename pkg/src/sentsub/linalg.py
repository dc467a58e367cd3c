"""Numerical core: SVD, truncated principal-component bases, energy
fractions, and principal-angle cosines between subspaces."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Tuple

import numpy as np

from .errors import DimensionMismatchError, NumericalError

# Relative singular-value cutoff below which directions count as noise.
RANK_RTOL = 1e-10
# Singular values of a product of orthonormal matrices may exceed 1 by
# roundoff; anything above this margin is a real error.
COSINE_SLACK = 1e-8


@dataclass(frozen=True)
class OrthonormalBasis:
    """Orthonormal columns spanning a subspace of R^dim, with the squared
    singular value (energy) carried by each component, descending."""

    dim: int
    rank: int
    columns: np.ndarray  # shape (dim, rank)
    component_energy: np.ndarray  # shape (rank,), descending, >= 0

    def __post_init__(self):
        self.columns.setflags(write=False)
        self.component_energy.setflags(write=False)


def _validated(a) -> np.ndarray:
    a = np.asarray(a, dtype=np.float64)
    if a.ndim != 2 or a.shape[0] < 1 or a.shape[1] < 1:
        raise NumericalError(f"expected a nonempty 2-D matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise NumericalError("matrix contains NaN or Inf entries")
    return a


def svd(a) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Thin SVD A = U diag(sigma) V^T with sigma descending and U, V
    having orthonormal columns."""
    a = _validated(a)
    u, s, vt = np.linalg.svd(a, full_matrices=False)
    return u, s, vt.T


def _canonical_signs(u: np.ndarray) -> np.ndarray:
    """Flip each column so its largest-magnitude entry is positive (first
    index wins ties), making the basis deterministic across runs."""
    u = u.copy()
    for j in range(u.shape[1]):
        i = int(np.argmax(np.abs(u[:, j])))
        if u[i, j] < 0:
            u[:, j] = -u[:, j]
    return u


def numerical_rank(sigma: np.ndarray) -> int:
    if sigma.size == 0 or sigma[0] <= 0:
        return 0
    return int(np.count_nonzero(sigma > RANK_RTOL * sigma[0]))


def top_components(a, n: int, center: bool = False) -> OrthonormalBasis:
    """Return the top min(n, numerical rank) left singular vectors of `a`.

    Uncentered by default: components are principal directions of the raw
    stacked matrix, so a single column yields its own normalized direction.
    `center=True` subtracts the column mean first.
    """
    if n < 1:
        raise NumericalError(f"rank must be >= 1, got {n}")
    a = _validated(a)
    if center:
        a = a - a.mean(axis=1, keepdims=True)
    u, s, _ = np.linalg.svd(a, full_matrices=False)
    n_eff = min(n, numerical_rank(s))
    if n_eff == 0:
        raise NumericalError("matrix is numerically zero; no principal directions")
    return OrthonormalBasis(
        dim=a.shape[0],
        rank=n_eff,
        columns=_canonical_signs(u[:, :n_eff]),
        component_energy=s[:n_eff] ** 2,
    )


def singular_values(a, center: bool = False) -> np.ndarray:
    a = _validated(a)
    if center:
        a = a - a.mean(axis=1, keepdims=True)
    return np.linalg.svd(a, compute_uv=False)


def energy_fraction(a, n: int, center: bool = False) -> float:
    """Fraction of squared Frobenius mass captured by the top n singular
    directions: sum of the top n sigma^2 over the total."""
    if n < 1:
        raise NumericalError(f"rank must be >= 1, got {n}")
    s2 = singular_values(a, center=center) ** 2
    total = float(s2.sum())
    if total <= 0.0:
        raise NumericalError("all-zero matrix has no energy to apportion")
    return min(float(s2[:n].sum()) / total, 1.0)


def principal_angle_cosines(b1: OrthonormalBasis, b2: OrthonormalBasis) -> np.ndarray:
    """Singular values of B1^T B2: cosines of the principal angles between
    the two subspaces, descending, clamped to [0, 1]."""
    if b1.dim != b2.dim:
        raise DimensionMismatchError(
            f"subspaces live in different spaces: dim {b1.dim} vs {b2.dim}")
    s = np.linalg.svd(b1.columns.T @ b2.columns, compute_uv=False)
    if s.size and s[0] > 1.0 + COSINE_SLACK:
        raise NumericalError(
            f"principal-angle cosine {s[0]} exceeds 1 beyond roundoff; "
            "inputs are not orthonormal")
    return np.clip(s, 0.0, 1.0)
