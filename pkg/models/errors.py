"""
Exception hierarchy for mpdecode
"""


class MPDecodeError(Exception):
    """Base class for all errors raised by the library."""


class ComputationBudgetError(MPDecodeError):
    """A computation exceeded its configured budget (instance too hard at desk scale)."""


# GF(2) linear algebra

class PivotOnZeroError(MPDecodeError):
    "Raised when a Gaussian pivot is requested on a zero entry."


# Codes

class ZeroMatrixError(MPDecodeError):
    "Raised when a code is constructed from an all-zero parity-check matrix."


class LengthMismatchError(MPDecodeError):
    "Raised when a vector does not have the length the operation expects."


class TooLargeError(ComputationBudgetError):
    "Raised when exhaustive enumeration would exceed the enumeration limit."


class PermutationMismatchError(MPDecodeError):
    "Raised when graph-cover permutations do not match the base factor graph."


class NotCoverCodewordError(MPDecodeError):
    "Raised when a vector is not a codeword of the cover code."


# Simplex

class InfeasibleStartError(MPDecodeError):
    "Raised when primal simplex is started from a primal-infeasible basis."


class DualInfeasibleStartError(MPDecodeError):
    "Raised when dual simplex is started from a dual-infeasible basis."


class NotOptimalError(MPDecodeError):
    "Raised when a duality witness is requested for a non-optimal solution."


class SimplexStalledError(ComputationBudgetError):
    "Raised when the simplex iteration cap is hit where a solution is required."


# LP decoding

class RowTooDenseError(MPDecodeError):
    "Raised when a check row is too dense for the explicit polytope description."


class IterationCapError(ComputationBudgetError):
    "Raised when adaptive LP decoding exceeds its LP-solve cap."


class NoFractionalEntryError(MPDecodeError):
    "Raised when RPC cut search is run on an integral point."


# Branch-and-bound

class NodeBudgetExceededError(ComputationBudgetError):
    "Raised when branch-and-bound explores more nodes than allowed."


class NoIntegralPointError(MPDecodeError):
    "Raised when branch-and-bound ends without an acceptable integral point."


# Polytope analysis

class ZeroVectorError(MPDecodeError):
    "Raised when the pseudoweight of the zero vector is requested."


# Trellis / turbo

class NotTerminatedError(MPDecodeError):
    "Raised when an information word does not drive the encoder back to state zero."


class InvalidFsmError(MPDecodeError):
    "Raised when a finite state machine description is incomplete or ambiguous."


# Harness

class AlistParseError(MPDecodeError):
    "Raised when an alist file has malformed counts."


class InconsistentAlistError(MPDecodeError):
    "Raised when the column and row index lists of an alist file disagree."


class NonFiniteLlrError(MPDecodeError):
    "Raised when an LLR vector contains NaN or infinite entries."


class IncompatibleDecoderError(MPDecodeError):
    "Raised when the selected decoder cannot run on the configured code type."
