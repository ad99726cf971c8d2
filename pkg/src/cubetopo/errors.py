"""Exception hierarchy.

Two families, matching the CLI exit-code contract: ``UsageError`` covers
malformed inputs and IO problems (exit code 2), ``ComputationError`` covers
failures inside an otherwise well-posed computation (exit code 1).
"""


class CubetopoError(Exception):
    pass


class UsageError(CubetopoError):
    pass


class ComputationError(CubetopoError):
    pass


# --- tensor container ---

class MalformedHeader(UsageError):
    pass


class UnsupportedDtype(UsageError):
    pass


class TruncatedPayload(UsageError):
    pass


# --- grids ---

class BadChannelIndex(UsageError):
    pass


class NonFiniteGridValue(UsageError):
    pass


# --- manifests ---

class SchemaViolation(UsageError):
    pass


class MissingTensorFile(UsageError):
    pass


class NonMonotoneLayerIndex(UsageError):
    pass


# --- complexes and reduction ---

class GridTooLarge(ComputationError):
    pass


class ReductionOverflow(ComputationError):
    pass


class OracleTooLarge(ComputationError):
    pass


# --- metrics ---

class EmptyGrid(UsageError):
    pass


class NoValidThreshold(ComputationError):
    pass


# --- ranking ---

class InsufficientLayers(ComputationError):
    pass


class DegenerateFit(ComputationError):
    pass


class ZeroVariance(ComputationError):
    pass


class LengthMismatch(UsageError):
    pass


class RowNotNormalized(UsageError):
    pass
