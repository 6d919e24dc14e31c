"""Exceptions raised by krecon and the CLI exit codes they map to."""


class ReconError(Exception):
    """
    Base class for all expected krecon failures.
    Carries the process exit code used by the command-line interface.
    """

    exit_code: int = 1
    error_type: str = "error"

    def __init__(self, message: str, error_type: str | None = None, exit_code: int | None = None):
        super().__init__(message)
        self.message = message
        if error_type is not None:
            self.error_type = error_type
        if exit_code is not None:
            self.exit_code = exit_code

    def __str__(self) -> str:
        return self.message


class InputError(ReconError):
    """Malformed input: dataset files, strings, windows, instances, configurations."""

    exit_code = 2
    error_type = "input_error"


class DecodeError(InputError):
    """A padded instance could not be decoded back to its padding string."""

    error_type = "decode_error"


class ResourceGuardError(ReconError):
    """An exhaustive enumeration would exceed the configured desk-scale limit."""

    exit_code = 3
    error_type = "resource_guard"

    def __init__(self, what: str, size: int, limit: int):
        super().__init__(
            f"{what} would enumerate {size} candidates, above the limit of {limit} "
            f"(raise 'enumeration_limit' in the configuration to allow it)"
        )
        self.size = size
        self.limit = limit


class UnsupportedError(ReconError):
    """The requested algorithm is not available for the given parameters."""

    exit_code = 4
    error_type = "unsupported"


def check_guard(what: str, size: int, limit: int) -> None:
    """Raises ResourceGuardError if size exceeds limit."""
    if size > limit:
        raise ResourceGuardError(what, size, limit)
