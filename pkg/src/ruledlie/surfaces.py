"""Ruled surfaces ``phi(s, v) = base(s) + v X(s)`` and their fundamental forms.

Chart coordinates are treated additively.  The s-partial is the covariant
one: ``phi_s = base' + v D_T X`` and ``phi_ss = D_T phi_s``, where the
director derivative is ``[T, X]/2`` for a left-invariant director and the
Frenet expansion for a director given as a combination of ``T, N, B``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from . import calculus
from .algebra import LieAlgebra3, cross, inner, norm
from .calculus import SmoothFn
from .errors import ConfigError, SingularPointError
from .frenet import Curve, FrameField, FrenetData

SINGULAR_AREA = 1e-10


class Family(str, enum.Enum):
    GENERAL = "general"
    TANGENT_DEVELOPABLE = "tangent-developable"
    NORMAL = "normal"
    BINORMAL = "binormal"
    DARBOUX_DEVELOPABLE = "darboux-developable"
    RECTIFYING = "rectifying"


@dataclass(frozen=True, eq=False)
class LeftInvariant:
    X: np.ndarray

    def __post_init__(self):
        X = np.asarray(self.X, dtype=float).reshape(3)
        if abs(norm(X) - 1.0) > 1e-10:
            raise ConfigError(f"left-invariant director must be a unit vector, |X| = {norm(X)!r}")
        object.__setattr__(self, "X", X)


@dataclass(frozen=True, eq=False)
class FrenetCombo:
    """Director ``a(s) T + b(s) N + c(s) B``."""

    a: SmoothFn
    b: SmoothFn
    c: SmoothFn


class Partials(NamedTuple):
    phi_s: np.ndarray
    phi_v: np.ndarray
    phi_ss: np.ndarray
    phi_sv: np.ndarray
    phi_vv: np.ndarray


@dataclass(frozen=True, eq=False)
class FundamentalForms:
    E: float
    F: float
    G: float
    e: float
    f: float
    g: float
    U: np.ndarray
    A: float

    def as_dict(self) -> dict:
        return {k: getattr(self, k) for k in ("E", "F", "G", "e", "f", "g", "A")}


class RuledSurface:
    """A base curve plus a director in a given algebra, tagged with its family."""

    def __init__(self, alg: LieAlgebra3, curve: Curve, director, family: Family = Family.GENERAL,
                 frames: FrameField | None = None):
        self.alg = alg
        self.curve = curve
        self.director = director
        self.family = Family(family)
        self.frames = frames if frames is not None else FrameField(alg, curve)
        if self.family is Family.GENERAL and not isinstance(director, LeftInvariant):
            raise ConfigError("general family requires a left-invariant director")

    def __repr__(self):
        return f"RuledSurface({self.alg.name}, {self.curve.name}, {self.family.value})"

    def frame(self, s: float) -> FrenetData:
        return self.frames.at(s)

    def X(self, s: float) -> np.ndarray:
        d = self.director
        if isinstance(d, LeftInvariant):
            return d.X
        fr = self.frame(s)
        return d.a(s) * fr.T + d.b(s) * fr.N + d.c(s) * fr.B

    def DTX(self, s: float) -> np.ndarray:
        """Covariant derivative of the director along the base curve."""
        fr = self.frame(s)
        d = self.director
        if isinstance(d, LeftInvariant):
            return 0.5 * self.alg.bracket(fr.T, d.X)
        a, b, c = d.a(s), d.b(s), d.c(s)
        da, db, dc = d.a.deriv(s), d.b.deriv(s), d.c.deriv(s)
        k, sig = fr.kappa, fr.sigma
        return ((da - b * k) * fr.T
                + (db + a * k - c * sig) * fr.N
                + (dc + b * sig) * fr.B)

    def base(self, s: float) -> np.ndarray:
        if self.family is Family.DARBOUX_DEVELOPABLE:
            return self.frame(s).B
        return self.curve.position(s)

    def base_derivative(self, s: float) -> np.ndarray:
        fr = self.frame(s)
        if self.family is Family.DARBOUX_DEVELOPABLE:
            return -fr.sigma * fr.N  # D_T B
        return fr.T

    def evaluate(self, s: float, v: float) -> np.ndarray:
        return self.base(s) + v * self.X(s)

    def phi_s(self, s: float, v: float) -> np.ndarray:
        return self.base_derivative(s) + v * self.DTX(s)

    def partials(self, s: float, v: float) -> Partials:
        phi_s = self.phi_s(s, v)
        field = calculus.derived_vec(lambda t: self.phi_s(t, v), self.curve.domain)
        T = self.frame(s).T
        phi_ss = field.deriv(s, 1) + 0.5 * self.alg.bracket(T, phi_s)
        return Partials(phi_s, self.X(s), phi_ss, self.DTX(s), np.zeros(3))

    def normal(self, s: float, v: float) -> tuple[np.ndarray, float]:
        n = cross(self.phi_s(s, v), self.X(s))
        A = norm(n)
        if A <= SINGULAR_AREA:
            raise SingularPointError(s, v, A)
        return n / A, A

    def normal_field(self, v: float):
        """``s -> U(s, v)`` as a differentiable derived field."""
        return calculus.derived_vec(lambda t: self.normal(t, v)[0], self.curve.domain)

    def fundamental_forms(self, s: float, v: float) -> FundamentalForms:
        U, A = self.normal(s, v)
        p = self.partials(s, v)
        return FundamentalForms(
            E=inner(p.phi_s, p.phi_s),
            F=inner(p.phi_s, p.phi_v),
            G=inner(p.phi_v, p.phi_v),
            e=inner(p.phi_ss, U),
            f=inner(p.phi_sv, U),
            g=inner(p.phi_vv, U),
            U=U,
            A=A,
        )

    def director_defect(self, grid) -> float:
        """Max | |X(s)| - 1 | over ``grid``."""
        return max(abs(norm(self.X(s)) - 1.0) for s in grid)


# Module-level forms of the surface operations.

def evaluate(spec: RuledSurface, s: float, v: float) -> np.ndarray:
    return spec.evaluate(s, v)


def partials(spec: RuledSurface, s: float, v: float) -> Partials:
    return spec.partials(s, v)


def normal(spec: RuledSurface, s: float, v: float) -> tuple[np.ndarray, float]:
    return spec.normal(s, v)


def fundamental_forms(spec: RuledSurface, s: float, v: float) -> FundamentalForms:
    return spec.fundamental_forms(s, v)


# Constructors for each family.

def ruled_surface(alg: LieAlgebra3, curve: Curve, X) -> RuledSurface:
    return RuledSurface(alg, curve, LeftInvariant(np.asarray(X, dtype=float)), Family.GENERAL)


def _combo(alg, curve, coeffs, family) -> RuledSurface:
    one, zero = calculus.constant(1.0), calculus.constant(0.0)
    a, b, c = (one if x else zero for x in coeffs)
    return RuledSurface(alg, curve, FrenetCombo(a, b, c), family)


def tangent_developable(alg: LieAlgebra3, curve: Curve) -> RuledSurface:
    return _combo(alg, curve, (1, 0, 0), Family.TANGENT_DEVELOPABLE)


def normal_surface(alg: LieAlgebra3, curve: Curve) -> RuledSurface:
    return _combo(alg, curve, (0, 1, 0), Family.NORMAL)


def binormal_surface(alg: LieAlgebra3, curve: Curve) -> RuledSurface:
    return _combo(alg, curve, (0, 0, 1), Family.BINORMAL)


def darboux_developable(alg: LieAlgebra3, curve: Curve) -> RuledSurface:
    return _combo(alg, curve, (1, 0, 0), Family.DARBOUX_DEVELOPABLE)


def rectifying_surface(alg: LieAlgebra3, curve: Curve) -> RuledSurface:
    """Director ``W = c (tau T + kappa B)`` with ``c = 1/sqrt(kappa^2 + tau^2)``."""
    frames = FrameField(alg, curve)

    def c_of(fr):
        return 1.0 / math.hypot(fr.kappa, fr.tau)

    a = frames.scalar(lambda fr: c_of(fr) * fr.tau)
    c = frames.scalar(lambda fr: c_of(fr) * fr.kappa)
    return RuledSurface(alg, curve, FrenetCombo(a, calculus.constant(0.0), c), Family.RECTIFYING, frames)


_FAMILY_BUILDERS = {
    Family.TANGENT_DEVELOPABLE: tangent_developable,
    Family.NORMAL: normal_surface,
    Family.BINORMAL: binormal_surface,
    Family.DARBOUX_DEVELOPABLE: darboux_developable,
    Family.RECTIFYING: rectifying_surface,
}


def make_surface(alg: LieAlgebra3, curve: Curve, family, director=None) -> RuledSurface:
    family = Family(family)
    if family is Family.GENERAL:
        if director is None:
            raise ConfigError("general family needs a director triple")
        return ruled_surface(alg, curve, director)
    if director is not None:
        raise ConfigError(f"family {family.value!r} fixes its own director; drop 'director'")
    return _FAMILY_BUILDERS[family](alg, curve)
