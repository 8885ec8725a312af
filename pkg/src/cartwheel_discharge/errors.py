"""Error taxonomy shared by the library and the CLI.

The CLI maps these onto process exit codes: bad input files exit 2,
verification failures exit 1, internal invariant breaches exit 3.
"""

from __future__ import annotations


class CartwheelError(Exception):
    """Base class for every error this package raises deliberately."""


class InputError(CartwheelError):
    """A rules / configuration / presentation file is malformed.

    Carries an optional 1-based line number and path so the CLI can
    point at the offending line.
    """

    def __init__(self, message: str, line: int | None = None, path: str | None = None):
        self.message = message
        self.line = line
        self.path = path
        super().__init__(message)

    def __str__(self) -> str:
        where = ""
        if self.path is not None:
            where += self.path
        if self.line is not None:
            where += f":{self.line}"
        if where:
            return f"{where}: {self.message}"
        return self.message


class VerificationFailure(CartwheelError):
    """The inputs parsed fine but the proof does not check out."""

    def __init__(self, message: str, line: int | None = None):
        self.message = message
        self.line = line
        super().__init__(message)

    def __str__(self) -> str:
        if self.line is not None:
            return f"line {self.line}: {self.message}"
        return self.message


class ReducibilityFailure(VerificationFailure):
    """No good configuration appears well-positioned in some refinement.

    `axle` is the refinement that defeated the search and `trail` the
    stack of (position, lowered upper bound) choices that led there.
    """

    def __init__(self, message: str, axle, trail, line: int | None = None):
        super().__init__(message, line)
        self.axle = axle
        self.trail = trail


class InternalInvariantError(CartwheelError):
    """A self-check that should be unreachable fired; the run is void."""
