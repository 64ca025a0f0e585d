"""Exception hierarchy.

Input errors (bad triangles, bad flags) map to CLI exit code 1, internal
invariant violations to exit code 2, exhausted search budgets to exit code 3.
"""


class ReesLabError(Exception):
    """Base class for all errors raised by this package."""


class InputError(ReesLabError):
    """Base class for errors caused by invalid input."""


class ShapeError(InputError):
    """Triangle vertices are not in normalized position."""


class SlopeError(InputError):
    """Edge slopes violate the chain -inf <= tbar <= -1 <= ubar <= 0 <= sbar <= inf."""


class WidthError(InputError):
    """Triangle width is out of range for the requested operation."""


class RangeError(InputError):
    """A scan parameter is outside its admissible interval."""


class TriangleFileError(InputError):
    """Triangle input file is malformed."""


class LevelError(InputError):
    """A basis index or truncation level is out of range."""


class ContextMismatch(InputError):
    """Two algebra elements belong to different contexts or levels."""


class ContextError(InputError):
    """An operation was invoked in a context it does not support."""


class NotAUnit(InputError):
    """Inversion was requested for a non-unit element."""


class InternalError(ReesLabError):
    """Base class for violated internal invariants (likely a bug or an input
    outside theorem hypotheses)."""


class NotInF(InternalError):
    """A residual failed membership in the section algebra (defensive)."""


class DegenerateError(InternalError):
    """Toric data turned out degenerate for a supposedly valid triangle."""


class ClaimViolation(InternalError):
    """An overlap point outside the expected lattice was found."""


class InconsistencyError(InternalError):
    """Euler-characteristic cross-check failed in the cohomology engine."""


class TheoremViolation(InternalError):
    """Two provably equivalent criteria disagreed at runtime."""


class BudgetExceeded(ReesLabError):
    """A bounded search ran out of budget before reaching a conclusion."""
