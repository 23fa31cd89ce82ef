"""Exception types and exit codes shared by the core layer and the CLI."""

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_CAP = 3
EXIT_VERIFY = 4


class InvalidInputError(ValueError):
    """Malformed files, bad construction parameters or violated preconditions."""


class CapExceededError(RuntimeError):
    """A configured size or enumeration cap would be exceeded."""
