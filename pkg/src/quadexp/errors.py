"""Exception hierarchy.

Everything derives from :class:`QuadExpError` (itself a ``ValueError``) so
callers can catch domain problems without also swallowing programming bugs.
"""


class QuadExpError(ValueError):
    """Base class for domain and precondition failures."""


class PreconditionError(QuadExpError):
    """An operation was called outside its documented preconditions."""


class DegenerateError(PreconditionError):
    """|A| is too small for the operation (|A| = 0, or a collapsed interval)."""


class DomainError(QuadExpError):
    """A real-valued input lies outside the domain of a formula."""


class DuplicateAbsAError(QuadExpError):
    """Two combos in a family share the same |A|, so the order is ambiguous."""


class RangeError(QuadExpError):
    """A target value is not bracketed by the derivative values at the ends."""
