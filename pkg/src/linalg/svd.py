"""
Singular Value Decomposition for svdc
Deterministic one-sided Jacobi SVD, rank-k truncation and reconstruction
"""

import logging
import math
from dataclasses import dataclass

import numpy as np
from pydantic import BaseModel, Field

from config.settings import SVD_CONFIG
from core.exceptions import InvalidFactors, NoConvergence, RankOutOfRange
from linalg.jacobi import column_norms, jacobi_sweeps
from linalg.matrix import Matrix

logger = logging.getLogger(__name__)


class SvdOptions(BaseModel):
    """Convergence controls for the Jacobi sweeps."""
    tolerance: float = Field(default=SVD_CONFIG["tolerance"], gt=0.0, lt=1.0)
    max_sweeps: int = Field(default=SVD_CONFIG["max_sweeps"], ge=1)
    rank_tolerance: float = Field(default=SVD_CONFIG["rank_tolerance"], ge=0.0, lt=1.0)


@dataclass(frozen=True, eq=False)
class SvdFactors:
    """
    Thin factorization input = u @ diag(sigma) @ v.T with p = min(m, n).
    u is m x p, sigma has p entries sorted non-increasing, v is n x p.
    """
    u: Matrix
    sigma: np.ndarray
    v: Matrix
    rank: int

    @property
    def rows(self) -> int:
        return self.u.rows

    @property
    def cols(self) -> int:
        return self.v.rows

    @property
    def max_rank(self) -> int:
        return len(self.sigma)

    def total_energy(self) -> float:
        """Sum of all squared singular values, smallest first."""
        return math.fsum((self.sigma[::-1] ** 2).tolist())


@dataclass(frozen=True, eq=False)
class TruncatedSvd:
    """
    Rank-k slice of a factorization.
    total_energy is the energy of the FULL factorization so the energy
    ratio stays computable once the discarded singular values are gone.
    """
    k: int
    u_k: Matrix
    sigma_k: np.ndarray
    v_k: Matrix
    source_rows: int
    source_cols: int
    total_energy: float

    def __post_init__(self):
        p = min(self.source_rows, self.source_cols)
        if not 1 <= self.k <= p:
            raise RankOutOfRange(self.k, p)
        if self.u_k.shape != (self.source_rows, self.k) or self.v_k.shape != (self.source_cols, self.k):
            raise InvalidFactors(
                f"factor shapes {self.u_k.shape}, {self.v_k.shape} do not match "
                f"{self.source_rows}x{self.source_cols} at k={self.k}"
            )
        if len(self.sigma_k) != self.k:
            raise InvalidFactors(f"expected {self.k} singular values, got {len(self.sigma_k)}")
        if np.any(self.sigma_k < 0.0):
            raise InvalidFactors("negative singular value")
        # float32 storage may round the retained energy slightly past the stored total
        retained = float(np.sum(np.asarray(self.sigma_k, dtype=np.float64) ** 2))
        if self.total_energy < retained * (1.0 - 1e-6):
            raise InvalidFactors(f"total energy {self.total_energy!r} below retained energy {retained!r}")


def _complete_basis(u: np.ndarray, start: int) -> None:
    """
    Replace columns start.. of u with an orthonormal completion of u[:, :start].
    Each new column is the standard basis vector with the largest component
    outside the current span, so the result is deterministic.
    """
    m, p = u.shape
    outside = np.eye(m) - u[:, :start] @ u[:, :start].T
    for col in range(start, p):
        weights = np.einsum("ij,ij->j", outside, outside)
        vector = outside[:, int(np.argmax(weights))].copy()
        for _ in range(2):
            vector -= u[:, :col] @ (u[:, :col].T @ vector)
        vector /= np.linalg.norm(vector)
        u[:, col] = vector
        outside -= np.outer(vector, vector @ outside)


def svd(input: Matrix, opts: SvdOptions = None) -> SvdFactors:
    """
    Factor input = U diag(sigma) V^T with one-sided Jacobi rotations.
    Wide inputs are factored through their transpose.
    """
    opts = opts or SvdOptions()
    a = input.data
    m, n = a.shape
    transposed = m < n
    if transposed:
        a = a.T
        m, n = n, m

    # rows of `columns` are the columns of a
    columns = np.ascontiguousarray(a.T, dtype=np.float64).copy()
    v_columns = np.eye(n)

    sweeps, residual, converged = jacobi_sweeps(columns, v_columns, opts.tolerance, opts.max_sweeps)
    if not converged:
        logger.error("no convergence after %d sweeps, residual %.3e", sweeps, residual)
        raise NoConvergence(sweeps, residual)
    logger.debug("jacobi converged in %d sweeps on %dx%d (residual %.3e)", sweeps, m, n, residual)

    norms = column_norms(columns)
    order = np.argsort(-norms, kind="stable")
    sigma = norms[order]
    sigma.setflags(write=False)
    columns = columns[order]
    v = v_columns[order].T.copy()

    sigma_max = sigma[0] if len(sigma) else 0.0
    threshold = opts.rank_tolerance * sigma_max
    rank = int(np.count_nonzero(sigma > threshold)) if sigma_max > 0.0 else 0

    u = np.zeros((m, n))
    for i in range(rank):
        u[:, i] = columns[i] / sigma[i]
    if rank < n:
        _complete_basis(u, rank)

    if transposed:
        u, v = v, u
    return SvdFactors(u=Matrix(u), sigma=sigma, v=Matrix(v), rank=rank)


def truncate(factors: SvdFactors, k: int) -> TruncatedSvd:
    """Keep the first k singular triplets."""
    if not 1 <= k <= factors.max_rank:
        raise RankOutOfRange(k, factors.max_rank)
    return TruncatedSvd(
        k=k,
        u_k=Matrix(factors.u.data[:, :k]),
        sigma_k=factors.sigma[:k].copy(),
        v_k=Matrix(factors.v.data[:, :k]),
        source_rows=factors.rows,
        source_cols=factors.cols,
        total_energy=factors.total_energy()
    )


def reconstruct(t: TruncatedSvd) -> Matrix:
    """
    Sum of sigma_i u_i v_i^T for i <= k, as real values.
    No clamping or rounding here; pixel quantization belongs to the codec.
    """
    u = np.ascontiguousarray(t.u_k.data)
    v = np.ascontiguousarray(t.v_k.data)
    sigma = np.ascontiguousarray(t.sigma_k, dtype=np.float64)
    return Matrix((u * sigma) @ v.T)
