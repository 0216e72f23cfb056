"""Typed exception hierarchy for dctnet failures.

Each exception maps to a specific failure mode, enabling callers to catch
and handle distinct scenarios independently. All dctnet exceptions inherit
from DctNetError, which can be used as a catch-all.

Context fields are rendered into ``str(exc)`` as ``key=value`` parts so
that a CommandResult error list stays self-describing.
"""

from __future__ import annotations


class DctNetError(Exception):
    """Base exception for all dctnet failures."""

    def __init__(self, message: str = "dctnet operation failed") -> None:
        self.message = message
        super().__init__(message)

    def __str__(self) -> str:
        return self.message


class ParameterError(DctNetError, ValueError):
    """Raised when a numeric parameter violates an operation's precondition.

    Covers filter sizes, basis indices, filter counts, block sizes and the
    like. Also a ``ValueError`` so generic callers can catch it as one.
    """

    def __init__(self, message: str = "Invalid parameter", *, name: str | None = None) -> None:
        self.name = name
        super().__init__(message)

    def __str__(self) -> str:
        if self.name:
            return f"{self.message} | parameter={self.name}"
        return self.message


class SingularModelError(ParameterError):
    """Raised for a Markov model with r = 1.

    The correlation matrix is then all ones and its eigenvectors are not
    unique.
    """

    def __init__(
        self,
        message: str = "Markov correlation r = 1 gives a singular model with non-unique eigenvectors",
    ) -> None:
        super().__init__(message, name="r")


class RootCountError(DctNetError):
    """Raised when the frequency-equation scan does not bracket exactly N roots."""

    def __init__(
        self,
        message: str = "Frequency equation root count mismatch",
        *,
        expected: int = 0,
        found: int = 0,
        brackets: list[tuple[float, float]] | None = None,
    ) -> None:
        self.expected = expected
        self.found = found
        self.brackets = brackets or []
        super().__init__(message)

    def __str__(self) -> str:
        parts = [self.message, f"expected={self.expected}", f"found={self.found}"]
        if self.brackets:
            shown = ", ".join(f"({a:.6g}, {b:.6g})" for a, b in self.brackets[:8])
            if len(self.brackets) > 8:
                shown += ", ..."
            parts.append(f"brackets=[{shown}]")
        return " | ".join(parts)


class RankDeficientError(DctNetError):
    """Raised when more components are requested than the data's numeric rank."""

    def __init__(
        self,
        message: str = "Requested more components than the numeric rank",
        *,
        rank: int = 0,
        requested: int = 0,
    ) -> None:
        self.rank = rank
        self.requested = requested
        super().__init__(message)

    def __str__(self) -> str:
        return f"{self.message} | usable_rank={self.rank} | requested={self.requested}"


class DimensionMismatchError(DctNetError):
    """Raised when two vectors or a vector and a model disagree in length."""

    def __init__(
        self,
        message: str = "Dimension mismatch",
        *,
        expected: int = 0,
        got: int = 0,
    ) -> None:
        self.expected = expected
        self.got = got
        super().__init__(message)

    def __str__(self) -> str:
        return f"{self.message} | expected={self.expected} | got={self.got}"


class ZeroVectorError(DctNetError):
    """Raised when a cosine distance is requested between all-zero vectors."""

    def __init__(self, message: str = "Cosine distance is undefined for all-zero vectors") -> None:
        super().__init__(message)


class _FileFormatError(DctNetError):
    def __init__(self, message: str, *, path: str | None = None) -> None:
        self.path = path
        super().__init__(message)

    def __str__(self) -> str:
        if self.path:
            return f"{self.message} | path={self.path}"
        return self.message


class BankFormatError(_FileFormatError):
    """Raised when a filter-bank file is malformed or has the wrong magic."""

    def __init__(self, message: str = "Malformed filter-bank file", *, path: str | None = None) -> None:
        super().__init__(message, path=path)


class FeatureStoreFormatError(_FileFormatError):
    """Raised when a feature-store file is malformed or has the wrong magic."""

    def __init__(self, message: str = "Malformed feature-store file", *, path: str | None = None) -> None:
        super().__init__(message, path=path)


class ConfigError(_FileFormatError):
    """Raised when a pipeline config file cannot be parsed or validated."""

    def __init__(self, message: str = "Invalid pipeline config", *, path: str | None = None) -> None:
        super().__init__(message, path=path)


class ManifestError(DctNetError):
    """Raised when a dataset manifest violates its format or invariants."""

    def __init__(
        self,
        message: str = "Invalid dataset manifest",
        *,
        path: str | None = None,
        line: int | None = None,
    ) -> None:
        self.path = path
        self.line = line
        super().__init__(message)

    def __str__(self) -> str:
        parts = [self.message]
        if self.path:
            parts.append(f"path={self.path}")
        if self.line is not None:
            parts.append(f"line={self.line}")
        return " | ".join(parts)


class ImageLoadError(DctNetError):
    """Raised when an image file cannot be read or decoded."""

    def __init__(
        self,
        message: str = "Failed to load image",
        *,
        path: str | None = None,
        reason: str | None = None,
    ) -> None:
        self.path = path
        self.reason = reason
        super().__init__(message)

    def __str__(self) -> str:
        parts = [self.message]
        if self.path:
            parts.append(f"path={self.path}")
        if self.reason:
            parts.append(f"reason={self.reason}")
        return " | ".join(parts)


class UnsupportedImageError(ImageLoadError):
    """Raised for images whose mode or bit depth is not 8-bit gray/color."""

    def __init__(
        self,
        message: str = "Unsupported image bit depth or mode",
        *,
        path: str | None = None,
        mode: str | None = None,
    ) -> None:
        self.mode = mode
        super().__init__(message, path=path, reason=f"mode={mode}" if mode else None)
