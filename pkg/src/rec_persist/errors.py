"""Exceptions shared across the library."""


class ParameterError(ValueError):
    """A parameter is outside its documented domain or violates a precondition."""


class SizeLimitError(ValueError):
    """An exact enumeration was requested above its guarded size bound."""


class QuadratureError(RuntimeError):
    """Adaptive quadrature stopped short of the requested tolerance."""

    def __init__(self, achieved: float, requested: float):
        self.achieved = achieved
        self.requested = requested
        super().__init__(
            "quadrature reached relative tolerance %.3e, requested %.3e"
            % (achieved, requested)
        )
