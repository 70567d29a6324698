"""Exception hierarchy.

Every error carries the name of the module that raised it and a stable code,
so the command line front-end can report ``module.Code`` without guessing.
"""


class AbhyankarError(Exception):
    module = "abhyankar"

    @property
    def code(self) -> str:
        return type(self).__name__

    def __str__(self) -> str:
        msg = super().__str__()
        return f"[{self.module}.{self.code}] {msg}" if msg else f"[{self.module}.{self.code}]"


# ordgroup
class DimensionMismatch(AbhyankarError, ValueError):
    module = "ordgroup"


class LayoutMismatch(AbhyankarError, ValueError):
    module = "ordgroup"


class SingularSystem(AbhyankarError, ValueError):
    module = "ordgroup"


# funfield
class ContextMismatch(AbhyankarError, ValueError):
    module = "funfield"


class ZeroDivision(AbhyankarError, ZeroDivisionError):
    module = "funfield"


class FractionalExponentOnNonMonomial(AbhyankarError, ValueError):
    module = "funfield"


class MissingImage(AbhyankarError, KeyError):
    module = "funfield"

    def __str__(self) -> str:
        return AbhyankarError.__str__(self)


class SizeMismatch(AbhyankarError, ValueError):
    module = "funfield"


# valuation
class NonAdaptedWeights(AbhyankarError, ValueError):
    module = "valuation"


class ZeroPolynomial(AbhyankarError, ValueError):
    module = "valuation"


class ZeroFunction(AbhyankarError, ValueError):
    module = "valuation"


class NonzeroValue(AbhyankarError, ValueError):
    module = "valuation"


# forms
class DegenerateBasis(AbhyankarError, ValueError):
    module = "forms"


class NonzeroFormValue(AbhyankarError, ValueError):
    module = "forms"


# logpair
class RankNotOne(AbhyankarError, ValueError):
    module = "logpair"


class NonpositiveHValue(AbhyankarError, ValueError):
    module = "logpair"


class InconsistentSpan(AbhyankarError, ValueError):
    module = "logpair"


class NotLcPlace(AbhyankarError, ValueError):
    module = "logpair"


class NonzeroBoundaryValue(AbhyankarError, ValueError):
    module = "logpair"


# genseries
class ZeroSeries(AbhyankarError, ValueError):
    module = "genseries"


class GroupMismatch(AbhyankarError, ValueError):
    module = "genseries"


class FrameMismatch(AbhyankarError, ValueError):
    module = "genseries"


class NotInValuationRing(AbhyankarError, ValueError):
    module = "genseries"


# cli
class ParseError(AbhyankarError, ValueError):
    module = "cli"

    def __init__(self, message: str, line: int = 1, column: int = 1):
        super().__init__(f"{message} at line {line}, column {column}")
        self.line = line
        self.column = column


class UnknownVariable(AbhyankarError, ValueError):
    module = "cli"


class SpecFileError(AbhyankarError, ValueError):
    module = "cli"
