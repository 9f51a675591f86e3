"""Exception hierarchy. Every error carries a short machine-readable ``code``."""


class PolystabError(Exception):
    code = "error"


class DimensionMismatch(PolystabError, ValueError):
    code = "dimension-mismatch"


class SchemaError(PolystabError, ValueError):
    code = "schema"


class ImproperFunctionError(PolystabError, ValueError):
    code = "improper-function"


class PreconditionError(PolystabError, ValueError):
    code = "precondition"


class HypothesisViolation(PolystabError, ValueError):
    """The standing assumption ``mu(x_bar)`` finite does not hold."""

    code = "hypothesis-violation"


class NoSolutionError(PolystabError, ValueError):
    code = "no-solution"


class ResourceLimitError(PolystabError, RuntimeError):
    code = "resource"


class GenerationError(PolystabError, RuntimeError):
    code = "generation-failure"
