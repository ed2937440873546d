"""Exception types shared across the package."""


class InputError(ValueError):
    """Malformed or inconsistent user input (files, paths, functional data)."""


class WindowError(InputError):
    """An element or path falls outside the basis window of a functional."""


class NotFlatError(ValueError):
    """Range containment Ran(C) <= Ran(A) fails, so no flat completion exists."""


class ExtensionObstructed(ValueError):
    """The one-step extension system is inconsistent; no extension is produced."""


class InternalInvariantError(AssertionError):
    """A cross-checked mathematical invariant failed; this is a hard failure."""
