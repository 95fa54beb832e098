"""
Exception hierarchy for braidbook.
Library code raises these; the command line maps them to exit codes.
"""

from typing import Optional


class BraidbookError(Exception):
    """Base class for every error raised by braidbook."""
    exit_code: int = 1


class UsageError(BraidbookError):
    """Malformed input or out-of-range option."""
    exit_code = 2


class BraidSyntaxError(UsageError):
    """Braid expression does not follow the grammar."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class GeneratorIndexError(UsageError):
    """A generator index does not fit the declared strand count."""

    def __init__(self, index: int, strands: int, position: Optional[int] = None):
        where = f" (at position {position})" if position is not None else ""
        super().__init__(
            f"generator index {index} in s{index} exceeds n-1={strands - 1}{where}"
            if index >= 1 else f"generator index {index} in s{index} must be at least 1{where}"
        )
        self.index = index
        self.strands = strands
        self.position = position


class PreconditionError(BraidbookError):
    """A computation was asked for outside its domain."""
    exit_code = 3


class StrandMismatchError(PreconditionError):
    """Two braid words with different strand counts were combined."""

    def __init__(self, left: int, right: int):
        super().__init__(f"strand-count mismatch: {left} vs {right}")
        self.left = left
        self.right = right


class RingMismatchError(PreconditionError):
    """Matrices over different scalar rings or of incompatible shape."""


class NotAKnotError(PreconditionError):
    """The closure of the braid has more than one component."""

    def __init__(self, components: int):
        super().__init__(f"closure is not a knot: it has {components} components")
        self.components = components


class StepLimitExceeded(PreconditionError):
    """Handle reduction ran out of its step budget."""

    def __init__(self, step_limit: int, length: int):
        super().__init__(
            f"handle reduction exceeded step limit {step_limit} "
            f"(current word length {length})"
        )
        self.step_limit = step_limit
        self.length = length


class InvariantBreach(BraidbookError):
    """An internal mathematical invariant failed; indicates a bug upstream."""
    exit_code = 4


class NotDivisibleError(InvariantBreach):
    """Exact division of Laurent polynomials had a remainder."""


class NotSymmetrizableError(InvariantBreach):
    """No unit multiple of the polynomial is symmetric under t -> 1/t."""


__all__ = [
    'BraidbookError', 'UsageError', 'BraidSyntaxError', 'GeneratorIndexError',
    'PreconditionError', 'StrandMismatchError', 'RingMismatchError',
    'NotAKnotError', 'StepLimitExceeded', 'InvariantBreach',
    'NotDivisibleError', 'NotSymmetrizableError',
]
