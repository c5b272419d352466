"""Exception hierarchy shared across the toolkit.

The CLI maps these onto process exit codes: input errors exit 2, capacity
errors exit 3 and internal-consistency errors exit 4.
"""


class MotifkitError(Exception):
    """Base class for all toolkit errors."""


class InputError(MotifkitError):
    """Malformed or contract-violating input."""

    exit_code = 2


class CapacityError(MotifkitError):
    """A configured desk-scale cap was exceeded; never silently approximated."""

    exit_code = 3


class InternalConsistencyError(MotifkitError):
    """An exact identity that must hold failed; signals a bug, not bad input."""

    exit_code = 4
