"""Exception hierarchy shared by every module."""


class WpclError(Exception):
    """Base class for all engine errors."""


class UsageError(WpclError, ValueError):
    """Bad arguments to an operation (empty val list, unknown monoid, ...)."""


class DomainError(WpclError, ValueError):
    """An object lies outside the domain an operation is defined on."""


class ConfigurationError(WpclError, ValueError):
    """A fixture or declarative input is inconsistent."""


class ResourceLimitError(WpclError):
    """An enumeration would exceed a configured limit."""

    def __init__(self, what, size, limit, option=None):
        self.what = what
        self.size = size
        self.limit = limit
        self.option = option
        hint = f" (raise with {option})" if option else ""
        super().__init__(f"{what}: {size} exceeds limit {limit}{hint}")


class HypothesisError(WpclError):
    """The monoid lacks an algebraic property an operation relies on."""

    def __init__(self, monoid, missing):
        self.monoid = monoid
        self.missing = tuple(missing)
        super().__init__(
            f"monoid {monoid!r} does not declare required flag(s): {', '.join(self.missing)}"
        )


class ParseError(WpclError, ValueError):
    def __init__(self, message, span=None, text=None):
        self.message = message
        self.span = span
        self.text = text
        super().__init__(self._render())

    def _render(self):
        if self.span is None:
            return self.message
        out = f"{self.message} at {self.span.start}..{self.span.end}"
        if self.text is not None and "\n" not in self.text:
            out += f"\n  {self.text}\n  {' ' * self.span.start}^"
        return out
