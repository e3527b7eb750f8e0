"""Exception hierarchy shared by the engine, the DSL and the CLI."""


class DiracError(Exception):
    """Base class for every engine error.

    ``position`` is a ``(line, column)`` pair once the DSL evaluator has
    attached the source location of the offending node.
    """

    def __init__(self, message="", position=None):
        super().__init__(message)
        self.message = message
        self.position = position

    def __str__(self):
        if self.position is None:
            return self.message
        line, col = self.position
        return f"{line}:{col}: {self.message}"


class ArityMismatch(DiracError):
    pass


class DegreeOverflow(DiracError):
    pass


class DependentDeltas(DiracError):
    pass


class SingularSubstitution(DiracError):
    pass


class UnboundedExponent(DiracError):
    """Imaginary part of the quadratic form is not positive semidefinite."""


class NotNormalizable(DiracError):
    pass


class ZeroState(DiracError):
    pass


class DivergentIntegral(DiracError):
    pass


class DeltaDerivativeUnsupported(DiracError):
    pass


class NonpositiveWidth(DiracError):
    pass


class UnsupportedArity(DiracError):
    pass


class NotFinite(DiracError):
    pass


class ProbabilityOutOfRange(DiracError):
    pass


# discrete model
class AmbiguousDelta(DiracError):
    pass


class DimensionMismatch(DiracError):
    pass


class IncommensurateParameter(DiracError):
    pass


class NotHermitian(DiracError):
    pass


class NotNormalized(DiracError):
    pass


# oracle
class NoConvergence(DiracError):
    pass


class InsufficientPoints(DiracError):
    pass


class IncomparableDelta(DiracError):
    pass


# dsl
class ScriptError(DiracError):
    """Lexing/parsing failures; always carry a position."""


class LexError(ScriptError):
    pass


class ParseError(ScriptError):
    def __init__(self, message="", position=None, expected=()):
        super().__init__(message, position)
        self.expected = tuple(expected)


class NameResolutionError(ScriptError):
    pass


class KindError(ScriptError):
    """A value of the wrong kind (state, amplitude, real) or a bad argument list."""
