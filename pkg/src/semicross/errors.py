"""Exception hierarchy shared by every layer."""


class SemicrossError(Exception):
    """Base class; the CLI maps every subclass to exit code 2 unless noted."""


class ValidationError(SemicrossError):
    pass


class DanglingLimitRef(ValidationError):
    pass


class OrphanLimit(ValidationError):
    pass


class DuplicatePoint(ValidationError):
    pass


class ForeignPoint(SemicrossError):
    pass


class SystemMismatch(SemicrossError):
    pass


class Discontinuous(ValidationError):
    def __init__(self, chain: str, end: str, expected, found):
        self.chain, self.end, self.expected, self.found = chain, end, expected, found
        super().__init__(
            f"chain {chain!r} {end} tail is {found} but the limit value is {expected}"
        )


class VanishingViolation(ValidationError):
    def __init__(self, chain: str, end: str, found):
        self.chain, self.end, self.found = chain, end, found
        super().__init__(f"chain {chain!r} {end} tail escapes to infinity with value {found}")


class NotIsolated(SemicrossError):
    pass


class NotCompact(SemicrossError):
    pass


class NoFailure(SemicrossError):
    pass


class HorizonTooSmall(SemicrossError):
    pass


class NoConvergence(SemicrossError):
    """Power iteration hit its iteration cap (CLI exit code 3)."""
