"""
Exceptions for svdc
Error hierarchy shared by the library and the CLI; exit codes live on the classes
"""

from typing import Optional


class SvdcError(Exception):
    """Base class for all svdc errors."""
    exit_code = 1


class InputError(SvdcError, ValueError):
    """Bad arguments, bad files, bad dimensions. CLI exit code 2."""
    exit_code = 2


class NumericError(SvdcError, ArithmeticError):
    """Numerical failure or degenerate data. CLI exit code 3."""
    exit_code = 3


# Input family

class DimensionMismatch(InputError):
    def __init__(self, left_shape, right_shape):
        self.left_shape = tuple(left_shape)
        self.right_shape = tuple(right_shape)
        super().__init__(f"dimension mismatch: {self.left_shape} vs {self.right_shape}")


class RankOutOfRange(InputError):
    def __init__(self, k: int, max_rank: int):
        self.k = k
        self.max_rank = max_rank
        super().__init__(f"rank out of range: k={k}, expected 1 <= k <= {max_rank}")


class OutOfRange(InputError):
    """A scalar argument lies outside its admissible interval."""


class ImageTooSmall(InputError):
    def __init__(self, shape, window_size: int):
        self.shape = tuple(shape)
        self.window_size = window_size
        super().__init__(f"image too small: {self.shape} for a {window_size}x{window_size} window")


class InvalidFactors(InputError):
    """Truncated factors inconsistent with their source dimensions."""


class InvalidRange(InputError):
    """A --ks list or range could not be parsed or is out of bounds."""


class ContainerError(InputError):
    """Base for SVDC container failures."""


class BadMagic(ContainerError):
    def __init__(self, found: bytes, expected: bytes = b"SVDC"):
        self.found = found
        super().__init__(f"bad magic: expected {expected!r}, got {found!r}")


class UnsupportedVersion(ContainerError):
    def __init__(self, version: int):
        self.version = version
        super().__init__(f"unsupported container version {version}")


class CorruptContainer(ContainerError):
    """Length or invariant violation inside a container."""


class PgmError(InputError):
    """Base for PGM/PNM parsing failures."""


class BadSignature(PgmError):
    pass


class MaxvalUnsupported(PgmError):
    def __init__(self, maxval: int):
        self.maxval = maxval
        super().__init__(f"maxval {maxval} unsupported (must be <= 255)")


class TruncatedPixelData(PgmError):
    def __init__(self, expected: int, found: int):
        self.expected = expected
        self.found = found
        super().__init__(f"truncated pixel data: expected {expected} bytes, got {found}")


class MalformedHeader(PgmError):
    pass


# Numeric family

class NonFiniteInput(NumericError):
    """NaN or Inf found where finite reals are required."""


class NoConvergence(NumericError):
    def __init__(self, sweeps: int, residual: float, message: Optional[str] = None):
        self.sweeps = sweeps
        self.residual = residual
        super().__init__(message or f"svd did not converge after {sweeps} sweeps (residual {residual:.3e})")


class ZeroEnergy(NumericError):
    """Energy ratio requested for an all-zero image (0/0)."""


class ZeroPeak(NumericError):
    """PSNR requested against an original whose peak value is zero."""
