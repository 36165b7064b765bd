"""Package-wide exception types."""


class NumericalDegeneracyError(RuntimeError):
    """Raised when a computation hits a numerically degenerate input.

    Examples: a Gram matrix that fails positive semidefiniteness beyond
    tolerance, or correlator cells more negative than rounding can explain.
    The CLI maps this to exit code 3.
    """
