"""Exception hierarchy shared by every module."""


class DivisorLabError(Exception):
    """Base class for input and capacity errors."""


class NotAGroup(DivisorLabError):
    def __init__(self, reason, detail=""):
        self.reason = reason
        super().__init__(f"not a group ({reason}){': ' + detail if detail else ''}")


class BadNames(DivisorLabError):
    pass


class SizeCapExceeded(DivisorLabError):
    pass


class SearchSpaceTooLarge(SizeCapExceeded):
    pass


class NotNormal(DivisorLabError):
    pass


class WordSyntaxError(DivisorLabError):
    def __init__(self, message, position):
        self.position = position
        super().__init__(f"{message} at position {position}")


class UnboundName(DivisorLabError):
    pass


class ArityExceeded(DivisorLabError):
    pass


class PreconditionViolated(DivisorLabError):
    pass


class DegreeMismatch(DivisorLabError):
    pass


class InvalidAction(DivisorLabError):
    pass


class TheoremViolation(AssertionError):
    """A divisibility or lemma the theory guarantees did not hold.

    This always signals a bug in the toolkit, never bad input.
    """
