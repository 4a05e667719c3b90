"""Exception hierarchy shared by the library and the CLI."""


class InpaintError(Exception):
    """Base class for all inpainting failures."""


class InputError(InpaintError, ValueError):
    """Malformed input: bad dimensions, bad parameter values, bad files."""


class UnprocessableError(InpaintError):
    """Well-formed input that offers no source material to repair from."""


class NoCandidateError(InpaintError):
    """No source patch satisfies the matcher's eligibility rules."""


class InvariantError(InpaintError, RuntimeError):
    """An internal invariant was breached; indicates a bug."""
