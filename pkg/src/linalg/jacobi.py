"""
One-sided Jacobi kernel for svdc
Cyclic-by-rows Hestenes rotations over the columns of a working matrix.

The working matrix is stored transposed (one column per row) so every
column access is contiguous. Loops are explicit so the result is
bit-identical from run to run.
"""

import math

import numba as nb
import numpy as np

@nb.njit(cache=True)
def _dot(x, y):
    total = 0.0
    for t in range(x.shape[0]):
        total += x[t] * y[t]
    return total

@nb.njit(cache=True)
def _rotate(x, y, c, s):
    for t in range(x.shape[0]):
        xt = x[t]
        yt = y[t]
        x[t] = c * xt - s * yt
        y[t] = s * xt + c * yt

@nb.njit(cache=True)
def jacobi_sweeps(columns, v_columns, tolerance, max_sweeps):
    """
    Orthogonalise the rows of `columns` (n x m) in place, accumulating the
    rotations into `v_columns` (n x n, starts as identity).

    A pair counts as orthogonal when its cosine is within tolerance, or when
    either column is negligible (norm <= tolerance * largest column norm).

    Returns (sweeps_used, last_residual, converged). The residual is the
    largest |a_i . a_j| / (|a_i| |a_j|) over non-negligible pairs in the
    final sweep.
    """
    n = columns.shape[0]
    residual = 0.0
    for sweep in range(1, max_sweeps + 1):
        rotations = 0
        residual = 0.0
        largest = 0.0
        for i in range(n):
            norm_sq = _dot(columns[i], columns[i])
            if norm_sq > largest:
                largest = norm_sq
        negligible = tolerance * tolerance * largest
        for i in range(n - 1):
            for j in range(i + 1, n):
                alpha = _dot(columns[i], columns[i])
                beta = _dot(columns[j], columns[j])
                if min(alpha, beta) <= negligible:
                    continue
                gamma = _dot(columns[i], columns[j])
                scale = math.sqrt(alpha) * math.sqrt(beta)
                off = abs(gamma) / scale
                if off > residual:
                    residual = off
                if off <= tolerance:
                    continue
                zeta = (beta - alpha) / (2.0 * gamma)
                sign = 1.0 if zeta >= 0.0 else -1.0
                t = sign / (abs(zeta) + math.sqrt(1.0 + zeta * zeta))
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = c * t
                _rotate(columns[i], columns[j], c, s)
                _rotate(v_columns[i], v_columns[j], c, s)
                rotations += 1
        if rotations == 0:
            return sweep, residual, True
    return max_sweeps, residual, False


@nb.njit(cache=True)
def column_norms(columns):
    n = columns.shape[0]
    norms = np.empty(n)
    for i in range(n):
        norms[i] = math.sqrt(_dot(columns[i], columns[i]))
    return norms
