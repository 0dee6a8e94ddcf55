"""Unit-speed curves, their Frenet apparatus, and the group torsion term.

Along a curve with tangent T the covariant derivative of a field W is
``D_T W = W' + [T, W]/2``.  The frame is completed as ``N = T'/kappa`` and
``B = T x N``; the group term is ``tau_G = <[T, N], B>/2`` and the torsion is
the signed value ``tau = <D_T N, B> - tau_G``.
"""

from __future__ import annotations

import math
from collections.abc import Sequence
from dataclasses import dataclass, field

import numpy as np

from . import calculus
from .algebra import LieAlgebra3, cross, inner, norm
from .calculus import FULL_LINE, SmoothFn, SmoothVec3Fn
from .errors import ConfigError, CurvatureDegenerateError

KAPPA_MIN = 1e-8
UNIT_SPEED_TOL = 1e-6


@dataclass(frozen=True, eq=False)
class Curve:
    position: SmoothVec3Fn
    name: str = "curve"
    params: dict = field(default_factory=dict)

    @property
    def domain(self):
        return self.position.domain

    def sample_grid(self, n: int = 11) -> np.ndarray:
        lo, hi = self.domain
        lo = -math.pi if math.isinf(lo) else lo
        hi = math.pi if math.isinf(hi) else hi
        # keep stencils inside finite domains
        pad = 1e-2 * (hi - lo)
        return np.linspace(lo + pad, hi - pad, n)

    def speed_defect(self, grid=None) -> float:
        grid = self.sample_grid() if grid is None else grid
        return max(abs(norm(self.position.deriv(s, 1)) - 1.0) for s in grid)

    def check_unit_speed(self, grid=None, tol: float = UNIT_SPEED_TOL) -> Curve:
        defect = self.speed_defect(grid)
        if defect > tol:
            raise ConfigError(f"curve {self.name!r} is not unit speed (max | |alpha'| - 1 | = {defect:.3g})")
        return self


def circle(mode: str = "analytic", step: float | None = None) -> Curve:
    """The unit circle ``(cos t, sin t, 0)``."""
    f = lambda t: np.array([math.cos(t), math.sin(t), 0.0])
    derivs = (
        lambda t: np.array([-math.sin(t), math.cos(t), 0.0]),
        lambda t: np.array([-math.cos(t), -math.sin(t), 0.0]),
        lambda t: np.array([math.sin(t), -math.cos(t), 0.0]),
    )
    return Curve(_make_position(f, derivs, mode, step, FULL_LINE), "circle", {})


def helix(a: float, b: float, mode: str = "analytic", step: float | None = None) -> Curve:
    """Circular helix ``(a cos t, a sin t, b t)``; unit speed needs ``a**2 + b**2 = 1``."""
    if abs(a * a + b * b - 1.0) > 1e-12:
        raise ConfigError(f"helix needs a^2 + b^2 = 1, got a={a}, b={b}")
    if abs(a) <= KAPPA_MIN:
        raise ConfigError("helix with a = 0 is a straight line (zero curvature)")
    f = lambda t: np.array([a * math.cos(t), a * math.sin(t), b * t])
    derivs = (
        lambda t: np.array([-a * math.sin(t), a * math.cos(t), b]),
        lambda t: np.array([-a * math.cos(t), -a * math.sin(t), 0.0]),
        lambda t: np.array([a * math.sin(t), -a * math.cos(t), 0.0]),
    )
    return Curve(_make_position(f, derivs, mode, step, FULL_LINE), "helix", {"a": a, "b": b})


def tabulated(s: Sequence[float], points, mode: str = "analytic", step: float | None = None) -> Curve:
    """Curve through tabulated samples, interpolated by a cubic spline per component.

    ``analytic`` mode differentiates the spline exactly; ``fd`` mode applies
    the central stencils to the interpolant.
    """
    from scipy.interpolate import CubicSpline

    s = np.asarray(s, dtype=float)
    pts = np.asarray(points, dtype=float)
    if pts.ndim != 2 or pts.shape[1] != 3 or pts.shape[0] != s.size or s.size < 4:
        raise ConfigError("tabulated curve needs >= 4 samples with matching s and (n, 3) points")
    if np.any(np.diff(s) <= 0):
        raise ConfigError("tabulated s values must be strictly increasing")
    spline = CubicSpline(s, pts, axis=0)
    derivs = tuple((lambda t, k=k: spline(t, k)) for k in (1, 2, 3))
    pos = _make_position(lambda t: spline(t), derivs, mode, step, (float(s[0]), float(s[-1])))
    return Curve(pos, "tabulated", {"n": int(s.size)})


def _make_position(f, derivs, mode, step, domain) -> SmoothVec3Fn:
    if mode == "analytic":
        return SmoothVec3Fn(f, derivs, None, False, domain)
    if mode == "fd":
        return SmoothVec3Fn(f, None, step, False, domain)
    raise ConfigError(f"unknown derivative mode {mode!r} (expected 'analytic' or 'fd')")


@dataclass(frozen=True, eq=False)
class FrenetData:
    s: float
    T: np.ndarray
    N: np.ndarray
    B: np.ndarray
    kappa: float
    tau: float
    tau_G: float

    @property
    def sigma(self) -> float:
        """Total torsion ``tau + tau_G`` appearing in the Frenet formulas."""
        return self.tau + self.tau_G

    def to_dict(self) -> dict:
        return {
            "s": self.s, "T": self.T.tolist(), "N": self.N.tolist(), "B": self.B.tolist(),
            "kappa": self.kappa, "tau": self.tau, "tau_G": self.tau_G,
        }


def covariant_derivative(alg: LieAlgebra3, T, W, Wdot) -> np.ndarray:
    """``D_T W = W' + [T, W]/2``."""
    return np.asarray(Wdot, dtype=float) + 0.5 * alg.bracket(T, W)


def tau_G(alg: LieAlgebra3, T, N, B) -> float:
    return 0.5 * inner(alg.bracket(T, N), B)


def frenet_at(alg: LieAlgebra3, curve: Curve, s: float) -> FrenetData:
    """Frenet apparatus of ``curve`` at ``s``.

    ``<N', B>`` is taken from the third derivative of the position,
    ``<T'', B>/kappa``, which is exact for analytic curves.
    """
    pos = curve.position
    T = pos.deriv(s, 1)
    Td = pos.deriv(s, 2)
    kappa = norm(Td)
    if kappa <= KAPPA_MIN:
        raise CurvatureDegenerateError(s, kappa)
    N = Td / kappa
    B = cross(T, N)
    tg = tau_G(alg, T, N, B)
    Tdd = pos.deriv(s, 3)
    # N' = T''/kappa - kappa' T'/kappa^2; the second term has no B component
    dN_B = inner(Tdd, B) / kappa
    # <D_T N, B> = <N', B> + tau_G, so tau = <N', B>
    return FrenetData(float(s), T, N, B, kappa, dN_B, tg)


class FrameField:
    """Frenet data along a curve, cached by parameter value.

    The scalar and vector fields (``kappa``, ``tau``, ``T`` ...) are wrapped
    as finite-difference functions so their derivatives are available
    without user-supplied formulas.
    """

    def __init__(self, alg: LieAlgebra3, curve: Curve):
        self.alg = alg
        self.curve = curve
        self._cache: dict[float, FrenetData] = {}
        dom = curve.domain
        self.kappa = calculus.derived(lambda s: self.at(s).kappa, dom)
        self.tau = calculus.derived(lambda s: self.at(s).tau, dom)
        self.tau_G = calculus.derived(lambda s: self.at(s).tau_G, dom)
        self.sigma = calculus.derived(lambda s: self.at(s).sigma, dom)
        self.T = calculus.derived_vec(lambda s: self.at(s).T, dom)
        self.N = calculus.derived_vec(lambda s: self.at(s).N, dom)
        self.B = calculus.derived_vec(lambda s: self.at(s).B, dom)

    def at(self, s: float) -> FrenetData:
        s = float(s)
        fr = self._cache.get(s)
        if fr is None:
            fr = frenet_at(self.alg, self.curve, s)
            self._cache[s] = fr
        return fr

    def records(self, grid) -> list[FrenetData]:
        grid = np.asarray(grid, dtype=float).ravel()
        if grid.size > 1 and np.any(np.diff(grid) <= 0):
            raise ValueError("frame grid must be strictly increasing")
        return [self.at(s) for s in grid]

    def scalar(self, fn) -> SmoothFn:
        """Derived scalar field ``s -> fn(frame_at(s))``."""
        return calculus.derived(lambda s: fn(self.at(s)), self.curve.domain)


def frame_field(alg: LieAlgebra3, curve: Curve, grid) -> tuple[list[FrenetData], FrameField]:
    ff = FrameField(alg, curve)
    return ff.records(grid), ff
