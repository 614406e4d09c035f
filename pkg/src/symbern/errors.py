"""Error taxonomy shared by the library and the command-line front end.

Every error carries a machine-readable ``code`` and the process ``exit_code``
the CLI uses when the error escapes a command.
"""

from __future__ import annotations

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_INFEASIBLE = 3
EXIT_IO = 4


class SymBernError(Exception):
    code = "error"
    exit_code = EXIT_INFEASIBLE

    def __init__(self, message: str, **details):
        super().__init__(message)
        self.details = details

    def to_dict(self) -> dict:
        return {"code": self.code, "message": str(self), **{k: _plain(v) for k, v in self.details.items()}}


def _plain(v):
    if isinstance(v, (int, str, bool)) or v is None:
        return v
    return str(v)


# validation failures
class NotAPmf(SymBernError):
    """Negative mass, wrong total mass or wrong vector length."""

    code = "not_a_pmf"
    exit_code = EXIT_VALIDATION


class NotSymmetricMarginals(SymBernError):
    """Some one-dimensional marginal mean differs from 1/2."""

    code = "not_symmetric_marginals"
    exit_code = EXIT_VALIDATION


class ZeroPolynomial(SymBernError):
    code = "zero_polynomial"
    exit_code = EXIT_VALIDATION


class NotInIdeal(SymBernError):
    code = "not_in_ideal"
    exit_code = EXIT_VALIDATION


class KernelNotPalindromic(SymBernError):
    code = "kernel_not_palindromic"
    exit_code = EXIT_VALIDATION


class NotMinCx(SymBernError):
    """Coefficient vector violates one of the minimal-sum polynomial conditions."""

    code = "not_mincx"
    exit_code = EXIT_VALIDATION


class NotKernelStar(SymBernError):
    code = "not_kernel_star"
    exit_code = EXIT_VALIDATION


class InputOutOfRange(SymBernError):
    code = "input_out_of_range"
    exit_code = EXIT_VALIDATION


# infeasible requests
class DimensionOutOfRange(SymBernError):
    code = "dimension_out_of_range"


class DimensionMismatch(SymBernError):
    code = "dimension_mismatch"


class DimensionTooLarge(SymBernError):
    code = "dimension_too_large"


class InvalidLambda(SymBernError):
    code = "invalid_lambda"


class ZeroCombination(SymBernError):
    code = "zero_combination"


class KernelElementNotStar(SymBernError):
    code = "kernel_element_not_star"


class IndexOutOfRange(SymBernError):
    code = "index_out_of_range"


# I/O
class MalformedInput(SymBernError):
    code = "malformed_input"
    exit_code = EXIT_IO
