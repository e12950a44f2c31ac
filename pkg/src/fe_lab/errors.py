"""Exception hierarchy shared by every module."""


class FeLabError(Exception):
    """Base class for all errors raised by fe_lab."""


class TierError(FeLabError, TypeError):
    """An operation received a set whose tier it cannot handle exactly."""


class ComplementOfGeneratorTier(TierError):
    pass


class ExprSyntaxError(FeLabError, ValueError):
    def __init__(self, position: int, expected, text: str = ""):
        self.position = position
        self.expected = tuple(expected)
        self.text = text
        shown = ", ".join(self.expected) if self.expected else "end of input"
        super().__init__(f"syntax error at position {position}: expected {shown}")


class EvalError(FeLabError, ValueError):
    pass


class WitnessExhausted(FeLabError):
    """No admissible shift was found below the cap; ``partial`` holds the work done so far."""

    def __init__(self, n: int, k_cap: int, partial=None):
        self.n = n
        self.k_cap = k_cap
        self.partial = partial
        super().__init__(f"no admissible shift for prefix n={n} below k_cap={k_cap}")


class FipViolation(FeLabError, ValueError):
    pass
