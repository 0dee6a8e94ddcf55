"""Derivatives of scalar and vector functions of arc length, up to order 3.

A function is either *analytic* (derivative callbacks supplied) or
*finite-difference*.  Finite differences use central stencils: 2 points for
order 1, 3 points for order 2 and 5 points for order 3.  With ``richardson``
enabled the stencil is evaluated at ``h`` and ``h/2`` and combined to cancel
the leading ``h**2`` error term; that mode is used for fields that are
themselves computed from other derivatives, where round-off in the values
dominates and a larger step is needed.
"""

from __future__ import annotations

import math
from collections.abc import Callable, Sequence
from dataclasses import dataclass

import numpy as np

from .errors import DomainError

EPS = np.finfo(float).eps
# Step for differentiating derived fields (frame scalars, normals, ...).
DERIVED_STEP = 1e-3

Domain = tuple[float, float]
FULL_LINE: Domain = (-math.inf, math.inf)


def default_step(s: float, order: int, base: float | None = None) -> float:
    """Truncation/round-off balanced step for a central stencil.

    ``base`` is the order-1 step (``eps**(1/3)`` by default); order ``n``
    uses ``base**(3/(n+2))`` so the default gives ``eps**(1/4)`` for order 2
    and ``eps**(1/5)`` for order 3.
    """
    h1 = EPS ** (1.0 / 3.0) if base is None else base
    return h1 ** (3.0 / (order + 2)) * max(1.0, abs(s))


def _stencil(f, s, order, h):
    if order == 1:
        return (f(s + h) - f(s - h)) / (2.0 * h)
    if order == 2:
        return (f(s + h) - 2.0 * f(s) + f(s - h)) / (h * h)
    if order == 3:
        return (f(s + 2 * h) - 2.0 * f(s + h) + 2.0 * f(s - h) - f(s - 2 * h)) / (2.0 * h ** 3)
    raise ValueError(f"derivative order must be 1, 2 or 3, got {order}")


def central_difference(f, s: float, order: int, h: float, richardson: bool = False):
    """Central-difference estimate of the ``order``-th derivative of ``f`` at ``s``.

    Works for scalar- and array-valued ``f``.
    """
    d = _stencil(f, s, order, h)
    if richardson:
        d = (4.0 * _stencil(f, s, order, h / 2.0) - d) / 3.0
    return d


def _check_domain(domain: Domain, s: float, reach: float = 0.0):
    lo, hi = domain
    if s - reach < lo or s + reach > hi:
        raise DomainError(f"evaluation at s={s:.17g} (stencil reach {reach:.3g}) leaves domain [{lo}, {hi}]")


@dataclass(frozen=True)
class SmoothFn:
    """Scalar function of arc length with derivatives of order 1 to 3.

    Analytic mode: ``derivs`` holds the three derivative callbacks.
    Finite-difference mode: ``derivs`` is None and ``step`` (order-1 step,
    None for the default heuristic) controls the stencils.
    """

    f: Callable[[float], float]
    derivs: tuple[Callable[[float], float], ...] | None = None
    step: float | None = None
    richardson: bool = False
    domain: Domain = FULL_LINE

    def __post_init__(self):
        if self.derivs is not None and len(self.derivs) != 3:
            raise ValueError("analytic mode needs exactly three derivative callbacks")
        if self.step is not None and not self.step > 0:
            raise ValueError("finite-difference step must be positive")

    @property
    def analytic(self) -> bool:
        return self.derivs is not None

    def __call__(self, s: float):
        _check_domain(self.domain, s)
        return self.f(s)

    def step_for(self, s: float, order: int) -> float:
        if self.richardson:
            base = DERIVED_STEP if self.step is None else self.step
            return base * max(1.0, abs(s))
        return default_step(s, order, self.step)

    def deriv(self, s: float, order: int = 1):
        if order not in (1, 2, 3):
            raise ValueError(f"derivative order must be 1, 2 or 3, got {order}")
        if self.derivs is not None:
            _check_domain(self.domain, s)
            return self.derivs[order - 1](s)
        h = self.step_for(s, order)
        _check_domain(self.domain, s, (2 if order == 3 else 1) * h)
        return central_difference(self.f, s, order, h, self.richardson)


def deriv(f: SmoothFn, s: float, order: int = 1):
    return f.deriv(s, order)


def constant(value: float) -> SmoothFn:
    zero = lambda s: 0.0
    return SmoothFn(lambda s: value, (zero, zero, zero))


def fd(f: Callable[[float], float], step: float | None = None, domain: Domain = FULL_LINE) -> SmoothFn:
    return SmoothFn(f, None, step, False, domain)


def derived(f: Callable, domain: Domain = FULL_LINE) -> SmoothFn:
    """Wrap a computed field (itself built from derivatives) for differentiation."""
    return SmoothFn(f, None, None, True, domain)


class SmoothVec3Fn(SmoothFn):
    """Vector-valued variant: ``f(s)`` and the callbacks return shape-(3,) arrays."""

    def __call__(self, s: float) -> np.ndarray:
        return np.asarray(super().__call__(s), dtype=float)

    def deriv(self, s: float, order: int = 1) -> np.ndarray:
        return np.asarray(super().deriv(s, order), dtype=float)

    def component(self, i: int) -> SmoothFn:
        derivs = None
        if self.derivs is not None:
            derivs = tuple((lambda s, d=d: d(s)[i]) for d in self.derivs)
        return SmoothFn(lambda s: self.f(s)[i], derivs, self.step, self.richardson, self.domain)

    @classmethod
    def from_components(cls, comps: Sequence[SmoothFn]) -> SmoothVec3Fn:
        if len(comps) != 3:
            raise ValueError("need three components")
        f = lambda s: np.array([c.f(s) for c in comps])
        derivs = None
        if all(c.analytic for c in comps):
            derivs = tuple(
                (lambda s, k=k: np.array([c.derivs[k](s) for c in comps])) for k in range(3)
            )
        lo = max(c.domain[0] for c in comps)
        hi = min(c.domain[1] for c in comps)
        steps = {c.step for c in comps}
        step = steps.pop() if len(steps) == 1 else None
        return cls(f, derivs, step, any(c.richardson for c in comps), (lo, hi))


def deriv_vec(f: SmoothVec3Fn, s: float, order: int = 1) -> np.ndarray:
    return f.deriv(s, order)


def derived_vec(f: Callable, domain: Domain = FULL_LINE) -> SmoothVec3Fn:
    return SmoothVec3Fn(f, None, None, True, domain)
