"""Exception hierarchy shared by every layer of the package."""


class ElastocapError(Exception):
    """Base class for all errors raised by elastocap."""


class DefinitenessError(ElastocapError, ValueError):
    """A metric or tensor that must be positive definite is not."""


class DomainError(ElastocapError, ValueError):
    """An argument lies outside the domain of a formula."""


class ChartError(ElastocapError, ValueError):
    """The coordinate chart cannot support the requested operation."""


class IncompressibilityError(ElastocapError, ValueError):
    """An incompressible model was evaluated at a volume-changing state."""


class NormalizationError(ElastocapError, ValueError):
    """A direction expected to be unit length in a metric is not."""


class UnsupportedModelError(ElastocapError, TypeError):
    """The material model cannot be used on this code path."""


class BracketingError(ElastocapError, RuntimeError):
    """No sign change of the equilibrium residual was found.

    The pre-scan is attached so the caller can see where the residual lives.
    """

    def __init__(self, message, scan_x=None, scan_g=None):
        super().__init__(message)
        self.scan_x = scan_x
        self.scan_g = scan_g

    def scan_table(self, max_rows=25):
        if self.scan_x is None:
            return ""
        n = len(self.scan_x)
        step = max(1, n // max_rows)
        lines = ["x, g(x)"]
        for i in range(0, n, step):
            lines.append(f"{self.scan_x[i]:.6e}, {self.scan_g[i]:.6e}")
        return "\n".join(lines)


class ConfigError(ElastocapError, ValueError):
    """A scenario configuration is malformed."""
