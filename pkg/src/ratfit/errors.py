"""Exception types shared across the package."""


class RatfitError(Exception):
    """Base class for all errors raised by ratfit."""


class PoleEvaluationError(RatfitError):
    """The barycentric denominator vanished exactly at a non-node point."""

    def __init__(self, z):
        self.z = complex(z)
        super().__init__(f"evaluated at pole: denominator is exactly zero at z={self.z}")


class RealPartPoleError(RatfitError):
    """Both denominator sums of the real-part form vanished at a real point."""

    def __init__(self, x):
        self.x = float(x)
        super().__init__(f"real pole of real-part form at x={self.x}")


class ZeroWeightNodeError(RatfitError):
    """A node-local quantity was requested at a node whose weight is zero."""


class DerivativesRequiredError(RatfitError):
    """The budget driver was requested on data without derivative values."""

    def __init__(self, msg="budget variant requires derivative data ('df' entries)"):
        super().__init__(msg)


class DataExhaustedError(RatfitError):
    """No sample points remain to select from."""


class UnknownProblemError(RatfitError):
    """A problem name is not in the registry."""

    def __init__(self, name, known=()):
        self.name = name
        hint = f"; known: {', '.join(sorted(known))}" if known else ""
        super().__init__(f"unknown problem {name!r}{hint}")
