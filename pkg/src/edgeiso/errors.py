"""Error types shared across the toolkit.

Only three kinds of failure are distinguished: malformed input, work
that would exceed a hard capacity cap, and operations that need a
nested-solution order the graph does not have.
"""


class InputError(ValueError):
    """Malformed graph data, expression, or argument."""


class CapacityError(RuntimeError):
    """The requested computation exceeds a hard size cap."""


class NsRequiredError(RuntimeError):
    """The operation needs a nested-solution order and none exists."""
