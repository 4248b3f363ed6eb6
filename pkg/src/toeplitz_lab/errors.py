"""Exception taxonomy shared across the package.

The CLI maps these onto its exit-status contract: parse failures exit 2,
symbol-level rejections (non-invertibility on the manifold) exit 3, and
numerical failures (unstabilized truncations, bad quadrature) exit 4.
"""


class ToeplitzLabError(Exception):
    """Base class for all package errors."""


class ParseError(ToeplitzLabError):
    """A symbol file or option set could not be parsed."""


class SymbolError(ToeplitzLabError):
    """The symbol violates a mathematical precondition (not invertible on the manifold)."""


class NumericsError(ToeplitzLabError):
    """A numerical procedure could not certify its result."""


class UnstabilizedError(NumericsError):
    """Kernel dimensions disagree across truncation sizes."""


class ResidualFailureError(NumericsError):
    """Kernel candidates fail exact-operator residual validation (truncation artifacts)."""


class UndersampledError(NumericsError):
    """Winding grid still undersampled after the retry budget."""


class NonIntegralChernError(NumericsError):
    """Chern quadrature did not land on an integer within tolerance."""
