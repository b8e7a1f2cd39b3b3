"""Exception types shared across the package."""


class InputMismatchError(ValueError):
    """Objects or maps that are supposed to line up do not."""


class MembershipError(ValueError):
    """A map or element fails a membership condition (indexing system,
    pullback-pair membership, hom compatibility)."""


class CapabilityError(ValueError):
    """An operation requires a norm but the functor is merely Green."""


class ExprError(ValueError):
    """Problem with an input expression; carries a byte offset."""

    def __init__(self, message, offset=None):
        self.offset = offset
        if offset is not None:
            message = f"{message} (at byte {offset})"
        super().__init__(message)


class LevelError(ExprError):
    """An operator was applied to a subexpression of the wrong level."""
