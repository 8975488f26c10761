"""
Dense Matrix for svdc
Real m x n matrix in double precision, the working representation of an image
"""

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from core.exceptions import DimensionMismatch, InputError, NonFiniteInput


@dataclass(frozen=True)
class Matrix:
    """
    Immutable dense matrix.
    data is a read-only float64 C-contiguous array; every entry is finite.
    """
    data: np.ndarray

    def __post_init__(self):
        array = np.array(self.data, dtype=np.float64, order="C", copy=True)
        if array.ndim != 2 or array.shape[0] < 1 or array.shape[1] < 1:
            raise InputError(f"matrix must be 2-D with positive dimensions, got shape {array.shape}")
        if not np.all(np.isfinite(array)):
            raise NonFiniteInput("matrix contains NaN or Inf entries")
        array.setflags(write=False)
        object.__setattr__(self, "data", array)

    @property
    def rows(self) -> int:
        return self.data.shape[0]

    @property
    def cols(self) -> int:
        return self.data.shape[1]

    @property
    def shape(self):
        return self.data.shape

    def to_array(self) -> np.ndarray:
        """Writable copy of the entries."""
        return self.data.copy()

    def transpose(self) -> "Matrix":
        return Matrix(self.data.T)

    def __sub__(self, other: "Matrix") -> "Matrix":
        if self.shape != other.shape:
            raise DimensionMismatch(self.shape, other.shape)
        return Matrix(self.data - other.data)

    def __mul__(self, scalar: float) -> "Matrix":
        return Matrix(self.data * float(scalar))

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and bool(np.array_equal(self.data, other.data))

    def __hash__(self):
        return hash((self.shape, self.data.tobytes()))

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence[float]]) -> "Matrix":
        return cls(np.array([list(r) for r in rows], dtype=np.float64))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "Matrix":
        return cls(np.zeros((rows, cols)))

    @classmethod
    def identity(cls, size: int) -> "Matrix":
        return cls(np.eye(size))


def frobenius_sq(m: Matrix) -> float:
    """Energy of the matrix: the sum of its squared entries."""
    return math.fsum((m.data * m.data).ravel().tolist())
