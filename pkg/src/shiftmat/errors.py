"""Exception hierarchy shared by every module."""


class ShiftmatError(Exception):
    pass


class InvalidArgumentError(ShiftmatError, ValueError):
    """Malformed input: wrong length, out-of-range letter, mismatched ground set."""


class DegenerateInputError(ShiftmatError, ValueError):
    pass


class ResourceLimitError(ShiftmatError):
    """An exhaustive computation would exceed its configured cap."""


class NotAMatroidError(ShiftmatError, ValueError):
    def __init__(self, b1, b2, element):
        self.b1, self.b2, self.element = b1, b2, element
        super().__init__(
            f"basis exchange fails: B1={sorted(b1, key=str)}, "
            f"B2={sorted(b2, key=str)}, b1={element!r}"
        )


class ContractViolationError(ShiftmatError):
    """An operation was called outside its precondition (e.g. weights for a non-threshold T)."""


class InvariantViolationError(ShiftmatError, AssertionError):
    """Internal construction produced an invalid object. Always a bug."""


class VerificationFailedError(ShiftmatError):
    pass


class UnsupportedError(ShiftmatError):
    pass
