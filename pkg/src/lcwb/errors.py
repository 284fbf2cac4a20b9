"""Exception hierarchy for the workbench."""


class LcwbError(Exception):
    """Base class for all engine errors."""

    code = "Error"


class NonHomogeneousInput(LcwbError):
    code = "NonHomogeneousInput"


class NonMonomialDenominator(LcwbError):
    code = "NonMonomialDenominator"


class SearchExhausted(LcwbError):
    code = "SearchExhausted"


class ZeroModule(LcwbError):
    code = "ZeroModule"


class AssIncomplete(LcwbError):
    code = "AssIncomplete"


class NotPrime(LcwbError):
    code = "NotPrime"


class CapExceeded(LcwbError):
    code = "CapExceeded"


class NotIntoIdealTimesModule(LcwbError):
    code = "NotIntoIdealTimesModule"


class PreconditionFailed(LcwbError):
    code = "PreconditionFailed"


class UnsupportedPrime(LcwbError):
    code = "UnsupportedPrime"


class UnsupportedLocalization(LcwbError):
    code = "UnsupportedLocalization"


class Unstabilized(LcwbError):
    code = "Unstabilized"


class HypothesisUnverifiable(LcwbError):
    code = "HypothesisUnverifiable"


class NonFunctorialTransitions(LcwbError):
    code = "NonFunctorialTransitions"


class PluginWithoutBicomplex(LcwbError):
    code = "PluginWithoutBicomplex"


class UnknownSuite(LcwbError):
    code = "UnknownSuite"


class InvalidSubobject(LcwbError):
    """Inclusion matrix is not stable under the algebra action."""

    code = "InvalidSubobject"


class ScriptError(LcwbError):
    """DSL error carrying a source position."""

    code = "ScriptError"

    def __init__(self, message, line=None, col=None):
        self.message = message
        self.line = line
        self.col = col
        where = f" at line {line}, column {col}" if line is not None else ""
        super().__init__(f"{message}{where}")


class ScriptSyntaxError(ScriptError):
    code = "SyntaxError"


class ScriptNameError(ScriptError):
    code = "NameError"


class TypeMismatch(ScriptError):
    code = "TypeMismatch"
