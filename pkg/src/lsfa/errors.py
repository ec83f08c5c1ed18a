"""Exception types shared across the solver stack."""


class ConfigError(ValueError):
    """A parameter or configuration value violates its documented range."""


class DataError(ValueError):
    """Input data cannot define a well-posed problem (e.g. a singular sample covariance)."""


class InfeasiblePointError(ValueError):
    """An operation required a strictly positive-definite iterate and did not get one."""


class NumericalBreakdownError(RuntimeError):
    """A factorization that is guaranteed to exist by the problem structure failed.

    Raised when the reduced Newton system, which is a principal submatrix of a
    positive-definite Hessian, cannot be factorized; this signals an assembly
    bug or catastrophic conditioning rather than a user error.
    """
