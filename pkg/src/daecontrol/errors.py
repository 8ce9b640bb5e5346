"""Exception taxonomy shared across the package.

``ParseError`` maps to CLI exit code 2, ``DomainError`` (and subclasses) to
exit code 3.  Negative verdicts (not controllable, not a solution, gluing
incompatible) are ordinary return values, not exceptions.
"""


class ParseError(ValueError):
    """Malformed input text (expression, matrix, trajectory, form)."""


class DomainError(Exception):
    """Input is well-formed but outside the operation's domain."""


class PieceDomainError(DomainError):
    """A piece expression is singular or kinked inside its open interval."""


class UnrepresentablePoleError(DomainError):
    """A coefficient pole at an irrational point falls strictly inside a
    piece; exact rational breakpoints cannot represent the split."""


class JetDivergenceError(DomainError):
    """A one-sided derivative limit diverges: no jet at this order."""

    def __init__(self, point, side, order, message=None):
        self.point = point
        self.side = side
        self.order = order
        super().__init__(
            message
            or f"no jet at order {order} at t = {point} ({'left' if side < 0 else 'right'} side)"
        )


class GlueIncompatibleError(DomainError):
    """Trajectories fail the compatibility check demanded by the gluing."""


class ContinuationError(DomainError):
    """No continuation is computable for this expression class/geometry."""


class SynthesisError(DomainError):
    """Steering construction failed (geometry, singular set, or residual)."""


class MergeEnumerationError(DomainError):
    """The normal-form merge step exhausted its candidate enumeration."""
