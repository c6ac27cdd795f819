"""Exception hierarchy shared across the package.

The CLI maps these onto process exit codes: usage errors exit 2 (argparse),
:class:`DataError` and subclasses exit 3, :class:`NumericError` exits 4.
"""


class TensorGPError(Exception):
    """Base class for all errors raised by this package."""


class ShapeError(TensorGPError):
    """Incompatible tensor/matrix dimensions."""


class IndexRangeError(TensorGPError):
    """A multi-index or index set lies outside the tensor shape."""


class ConfigError(TensorGPError):
    """Invalid or inconsistent configuration values."""


class DataError(TensorGPError):
    """Malformed input data (files or in-memory)."""


class NumericError(TensorGPError):
    """A numeric computation produced non-finite or invalid results."""


class UndefinedMetricError(TensorGPError):
    """A metric is undefined for the given inputs (e.g. single-class AUC)."""
