"""Exception types shared across the package."""


class RuledLieError(Exception):
    """Base class for all errors raised by ruledlie."""


class UnknownAlgebraError(RuledLieError, KeyError):
    def __init__(self, name, available):
        self.name = name
        self.available = tuple(available)
        super().__init__(f"unknown algebra {name!r}; available: {', '.join(self.available)}")

    def __str__(self):
        return self.args[0]


class DomainError(RuledLieError, ValueError):
    """A stencil or evaluation point left the declared parameter domain."""


class CurvatureDegenerateError(RuledLieError):
    """Curvature fell to or below the degeneracy threshold; no Frenet frame exists."""

    def __init__(self, s, kappa):
        self.s = s
        self.kappa = kappa
        super().__init__(f"curvature {kappa:.3g} at s={s:.17g} is below the degeneracy threshold")


class SingularPointError(RuledLieError):
    """The surface is not regular at (s, v): phi_s x phi_v vanishes."""

    def __init__(self, s, v, area):
        self.s = s
        self.v = v
        self.area = area
        super().__init__(f"singular point at s={s:.17g}, v={v:.17g} (|phi_s x phi_v| = {area:.3g})")


class DegenerateRulingError(RuledLieError):
    """D_T X vanishes, so the striction point is undefined (cylindrical ruling)."""


class FamilySingularityError(RuledLieError):
    """A closed-form expression has a vanishing denominator at this point."""

    def __init__(self, family, denominator, s, v):
        self.family = family
        self.denominator = denominator
        self.s = s
        self.v = v
        super().__init__(f"{family}: {denominator} vanishes at s={s:.17g}, v={v:.17g}")


class ConfigError(RuledLieError, ValueError):
    """Malformed or inconsistent scenario configuration."""
