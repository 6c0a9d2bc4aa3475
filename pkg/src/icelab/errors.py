from __future__ import annotations


class IcelabError(Exception):
    """Base class for every error raised by icelab."""


class AlgebraError(IcelabError, ValueError):
    """The algebra description is well-formed text but not a valid bound quiver."""


class AlgebraSyntaxError(AlgebraError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class ModuleError(IcelabError, ValueError):
    """Invalid representation, morphism, or mismatched algebras."""


class CapExceeded(IcelabError):
    """An exhaustive enumeration would exceed the configured cap; raise the cap."""


class CertificateError(IcelabError):
    """The catalog failed its completeness certificate."""

    def __init__(self, message: str, transcript: list[str] | None = None):
        super().__init__(message)
        self.transcript = list(transcript or [])


class PreconditionError(IcelabError, ValueError):
    """An operation was called outside its domain (e.g. a non-rigid module)."""


class VerificationError(IcelabError):
    """A checked postcondition failed; this indicates a bug or a false statement."""
