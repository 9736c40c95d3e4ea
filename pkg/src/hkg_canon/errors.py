"""Exception types shared across the package."""


class HKGError(Exception):
    """Base class for all errors raised by hkg_canon."""


class TowerError(HKGError, ValueError):
    """A tower description violates a validation rule.

    ``rule`` is a short machine-readable identifier (for example
    ``"p-not-prime"``) and ``step`` the 1-based step index, if any.
    """

    def __init__(self, rule: str, message: str, step: int | None = None):
        self.rule = rule
        self.step = step
        where = f"step {step}: " if step is not None else ""
        super().__init__(f"[{rule}] {where}{message}")


class InvariantError(HKGError, RuntimeError):
    """An internal invariant failed; indicates an invalid tower or a bug."""


class AmbiguousInitialTerm(HKGError, ValueError):
    pass


class PetriPreconditionError(HKGError, ValueError):
    pass


class PhiBijectionError(InvariantError):
    pass
