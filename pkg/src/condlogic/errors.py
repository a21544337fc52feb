"""Exception types shared across the package."""


class ClcError(Exception):
    """Base class for all errors raised by condlogic."""


class ParseError(ClcError):
    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} (at position {pos})")
        self.pos = pos


class LanguageError(ClcError):
    """A connective is used outside its language, or languages are mixed."""


class FrameFormatError(ClcError):
    """A frame, valuation or algebra file violates its schema or invariants."""


class NotAdmissibleError(ClcError):
    """An upset without a relation entry was used where one is required."""


class BudgetExceededError(ClcError):
    def __init__(self, required: int, budget: int):
        super().__init__(
            f"exhaustive check needs {required} (valuation, world) steps, budget is {budget}"
        )
        self.required = required
        self.budget = budget


class CapExceededError(ClcError):
    """A documented size cap (worlds, algebra carrier) was exceeded."""


class SqueezePreconditionError(ClcError):
    def __init__(self, witness):
        super().__init__(f"squeeze fill-in precondition violated, witness {witness}")
        self.witness = witness


class SqueezeAmbiguityError(ClcError):
    """Two admissible squeezers disagree; signals a precondition-check bug."""


class MissingCorrespondentError(ClcError):
    """The axiom has no registered frame correspondent."""


class DualityError(ClcError):
    """A duality construction was applied outside its precondition."""


class GenerationBudgetError(ClcError):
    """Random generation failed to produce enough admissible samples."""


class InfeasibleEnumerationError(ClcError):
    """Exhaustive frame enumeration requested beyond the feasible size."""
