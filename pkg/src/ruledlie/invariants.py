"""Distribution parameter, striction curve, curvatures and classification.

Two independent routes are provided.  The *definitional* route builds
everything from the fundamental forms and the unit normal of
:mod:`ruledlie.surfaces`.  The *closed-form* route evaluates the published
per-family formulas verbatim, from Frenet scalars and brackets only, so the
two can be compared point by point.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Literal

import numpy as np

from . import calculus
from .algebra import cross, det3, inner, norm
from .errors import (
    DegenerateRulingError,
    FamilySingularityError,
    SingularPointError,
)
from .surfaces import Family, FundamentalForms, RuledSurface

DEGENERATE_DTX = 1e-10
DEFAULT_TOL = 1e-8
SINGULAR_DENOM = 1e-10
# One-sided offset used when the reference ruling v_ref is singular.  Closer
# offsets let round-off in U (~eps/A) dominate the differenced normal.
LIMIT_OFFSET = 1e-4

Pipeline = Literal["definitional", "closed_form"]
QUANTITIES = ("lambda", "K", "H", "kappa_g", "kappa_n", "tau_g")


# --- definitional route -----------------------------------------------------

def distribution_parameter(spec: RuledSurface, s: float) -> float | None:
    """``det(T, X, D_T X) / |D_T X|^2``; None when ``D_T X`` vanishes (cylindrical ruling)."""
    dtx = spec.DTX(s)
    n = norm(dtx)
    if n <= DEGENERATE_DTX:
        return None
    return det3(spec.frame(s).T, spec.X(s), dtx) / (n * n)


def striction_offset(spec: RuledSurface, s: float) -> float:
    """Coefficient ``<base', D_T X>/|D_T X|^2`` of X removed from the base point."""
    dtx = spec.DTX(s)
    n = norm(dtx)
    if n <= DEGENERATE_DTX:
        raise DegenerateRulingError(f"D_T X vanishes at s={s:.17g}; striction point undefined")
    return inner(spec.base_derivative(s), dtx) / (n * n)


def striction_point(spec: RuledSurface, s: float) -> np.ndarray:
    return spec.base(s) - striction_offset(spec, s) * spec.X(s)


def gauss_mean_definitional(spec: RuledSurface, s: float, v: float,
                            forms: FundamentalForms | None = None) -> tuple[float, float]:
    ff = spec.fundamental_forms(s, v) if forms is None else forms
    W = ff.E * ff.G - ff.F ** 2
    K = (ff.e * ff.g - ff.f ** 2) / W
    H = (ff.E * ff.g + ff.G * ff.e - 2.0 * ff.F * ff.f) / (2.0 * W)
    return K, H


def curve_invariants_definitional(spec: RuledSurface, s: float, v: float) -> tuple[float, float, float]:
    """Geodesic curvature, normal curvature and geodesic torsion of the base curve."""
    fr = spec.frame(s)
    dtt = fr.kappa * fr.N
    U, _ = spec.normal(s, v)
    dtu = spec.normal_field(v).deriv(s, 1) + 0.5 * spec.alg.bracket(fr.T, U)
    return (
        inner(cross(U, fr.T), dtt),
        inner(dtt, U),
        inner(cross(U, dtu), dtt),
    )


# --- closed-form route ------------------------------------------------------

def _require(value: float, family: Family, what: str, s: float, v: float) -> float:
    if abs(value) <= SINGULAR_DENOM:
        raise FamilySingularityError(family.value, what, s, v)
    return value


def _general_terms(spec: RuledSurface, s: float, v: float, A: float | None):
    fr = spec.frame(s)
    alg = spec.alg
    X = spec.director.X
    T = fr.T
    TX = cross(T, X)
    bTX = alg.bracket(T, X)
    if A is None:
        A = norm(TX + 0.5 * v * cross(bTX, X))
    return fr, X, TX, bTX, A


def distribution_parameter_closed_form(spec: RuledSurface, s: float) -> float | None:
    fam = spec.family
    fr = spec.frame(s)
    k, sig, tg = fr.kappa, fr.sigma, fr.tau_G
    if fam is Family.GENERAL:
        _, _, TX, bTX, _ = _general_terms(spec, s, 0.0, 1.0)
        nb = norm(bTX)
        if 0.5 * nb <= DEGENERATE_DTX:
            return None
        return 2.0 * inner(TX, bTX) / (nb * nb)
    if fam in (Family.TANGENT_DEVELOPABLE, Family.DARBOUX_DEVELOPABLE):
        return 0.0
    if fam is Family.NORMAL:
        return sig / (k * k + sig * sig)
    if fam is Family.BINORMAL:
        return 1.0 / _require(sig, fam, "tau + tau_G", s, 0.0)
    r = _rectifying_scalars(spec, s)
    denom = r["dctau"] ** 2 + r["dckap"] ** 2 + (r["c"] * k) ** 2 * tg ** 2
    if math.sqrt(denom) <= DEGENERATE_DTX:
        return None
    return r["c"] ** 2 * k * k * tg / denom


def gauss_mean_closed_form(spec: RuledSurface, s: float, v: float,
                           A: float | None = None) -> tuple[float, float]:
    """Published K and H for the surface's family.

    ``A`` overrides ``|phi_s x phi_v|`` in the general-family formulas.
    """
    fam = spec.family
    fr = spec.frame(s)
    k, sig = fr.kappa, fr.sigma
    if fam is Family.GENERAL:
        fr, X, TX, bTX, A = _general_terms(spec, s, v, A)
        alg = spec.alg
        N, B, T = fr.N, fr.B, fr.T
        D = 1.0 + 0.25 * v * v * inner(bTX, bTX) - inner(T, X) ** 2
        _require(A, fam, "A", s, v)
        _require(D, fam, "EG - F^2", s, v)
        q = inner(TX, bTX)
        K = -q * q / (4.0 * A * A * D)
        NX = alg.bracket(N, X)
        TTX = alg.bracket(T, bTX)
        bTXxX = cross(bTX, X)
        bracket = (-k * inner(B, X)
                   - 0.5 * v * k * inner(cross(N, X), bTX)
                   + 0.5 * v * k * inner(NX, TX)
                   + 0.25 * v * v * k * inner(NX, bTXxX)
                   + 0.5 * inner(TTX, TX)
                   + 0.25 * v * inner(TTX, bTXxX))
        H = (bracket / A - inner(T, X) * q / A) / (2.0 * D)
        return K, H
    if fam is Family.TANGENT_DEVELOPABLE:
        _require(v * v * k, fam, "v^2 kappa", s, v)
        return 0.0, -sig / (2.0 * v * v * k)
    if fam is Family.NORMAL:
        A = _require(math.sqrt(v * v * sig * sig + (1.0 - v * k) ** 2), fam, "A", s, v)
        dk = spec.frames.kappa.deriv(s)
        return -(sig / A ** 2) ** 2, -v * sig * (1.0 - v * k + v * dk) / (2.0 * A ** 3)
    if fam is Family.BINORMAL:
        A = math.sqrt(1.0 + v * v * sig * sig)
        dtau = spec.frames.tau.deriv(s)
        return -(sig / A ** 2) ** 2, -(-v * v * k * sig + v * dtau - k) / (2.0 * A ** 3)
    if fam is Family.DARBOUX_DEVELOPABLE:
        return 0.0, 1.0 / (2.0 * _require(sig - v * k, fam, "tau + tau_G - v kappa", s, v))
    t = rectifying_terms(spec, s, v)
    W = _require(t["E"] - t["F"] ** 2, fam, "E - F^2", s, v)
    A = _require(t["A"], fam, "A", s, v)
    K = -(1.0 / A ** 2) * t["f"] ** 2 / W
    H = (1.0 / A) * (t["e"] - 2.0 * t["F"] * t["f"]) / (2.0 * W)
    return K, H


def curve_invariants_closed_form(spec: RuledSurface, s: float, v: float,
                                 A: float | None = None) -> tuple[float, float, float]:
    """Published geodesic curvature, normal curvature and geodesic torsion."""
    fam = spec.family
    fr = spec.frame(s)
    k, tg, sig = fr.kappa, fr.tau_G, fr.sigma
    if fam is Family.GENERAL:
        fr, X, TX, bTX, A = _general_terms(spec, s, v, A)
        _require(A, fam, "A", s, v)
        alg = spec.alg
        T, N, B = fr.T, fr.N, fr.B
        XN, XB = inner(X, N), inner(X, B)
        kg = k / A * (XN + v * tg * XB)
        kn = k / A * (-XB + 0.5 * v * inner(bTX, cross(X, N)))
        L = k * alg.bracket(X, N) + 0.5 * alg.bracket(T, bTX)
        LX = cross(L, X)
        bXT = alg.bracket(bTX, T)
        A2 = A * A
        tg_ = (XN * (k / A2 * (k * XB + 0.5 * v * inner(T, LX))
                     + v * k / (2 * A2) * (k * inner(bTX, cross(N, X)) + 0.5 * v * inner(bTX, LX))
                     + 1.0 / (2 * A2) * (0.5 * v * k * inner(bXT, TX)
                                         + 0.25 * v * v * k * inner(bXT, cross(bTX, X))))
               - v * k * tg / A2 * inner(bTX, TX) * XB)
        return kg, kn, tg_
    if fam is Family.TANGENT_DEVELOPABLE:
        return -k, 0.0, 0.0
    if fam is Family.NORMAL:
        A = _require(math.sqrt(v * v * sig * sig + (1.0 - v * k) ** 2), fam, "A", s, v)

        def p_q(fr_):
            a_ = math.sqrt(v * v * fr_.sigma ** 2 + (1.0 - v * fr_.kappa) ** 2)
            return np.array([v * fr_.sigma / a_, (1.0 - v * fr_.kappa) / a_])

        pq = calculus.derived(lambda t: p_q(spec.frame(t)), spec.curve.domain)
        p, q = pq(s)
        dp, dq = pq.deriv(s)
        return k * (1.0 - v * k) / A, 0.0, k * (p * dq - q * dp)
    if fam is Family.BINORMAL:
        A = math.sqrt(1.0 + v * v * sig * sig)
        return k / A, -k / A, v * k * sig * (A * sig - tg) / A ** 2
    if fam is Family.DARBOUX_DEVELOPABLE:
        return k, 0.0, 0.0
    return _rectifying_curve_invariants(spec, s, v)


# Rectifying family: c = 1/sqrt(kappa^2 + tau^2), director c (tau T + kappa B).
# The printed K and H have unbalanced parentheses; they are evaluated with
# K = -(1/A^2) f^2 / (E - F^2) and H = (1/A)(e - 2 F f) / (2 (E - F^2)),
# E, F, e, f being the expressions listed alongside them.

def _rectifying_scalars(spec: RuledSurface, s: float) -> dict:
    fr = spec.frame(s)
    d = spec.director
    return {
        "c": 1.0 / math.hypot(fr.kappa, fr.tau),
        "dckap": d.c.deriv(s, 1),
        "ddckap": d.c.deriv(s, 2),
        "dctau": d.a.deriv(s, 1),
    }


def _rectifying_A(fr, c, dckap, v) -> float:
    k, tau, tg = fr.kappa, fr.tau, fr.tau_G
    return math.sqrt(v * v * c ** 4 * k * k * tg * tg * (k * k + tau * tau)
                     + (v * c * dckap * (tau - k) - c * k) ** 2)


def rectifying_terms(spec: RuledSurface, s: float, v: float) -> dict:
    """Intermediate closed-form terms for the rectifying family (A, E, F, e, f, lambda)."""
    fr = spec.frame(s)
    k, tau, tg = fr.kappa, fr.tau, fr.tau_G
    r = _rectifying_scalars(spec, s)
    c, d1, d2, dt = r["c"], r["dckap"], r["ddckap"], r["dctau"]
    E = (1 + v * d1) ** 2 + (v * d1) ** 2 + (v * c * k * tg) ** 2
    F = c * tau + v * c * d1 * (k + tau)
    e = (-v * v * c * c * k * tg * d2 * (k + tau)
         - v * v * c * (k - tau) ** 2 * d1 ** 2
         - 2 * v * v * c * tg * d1 ** 2 * (k + tau)
         + 2 * v * c * k * d1 * (tau - k - tg)
         - c * k * k
         + v * v * c ** 3 * k * k * tg * tg * (tau * tau - k * k + tau * tg))
    f = c * c * k * k * tg * (1 + v * (d1 - dt))
    return {"A": _rectifying_A(fr, c, d1, v), "E": E, "F": F, "e": e, "f": f,
            "lambda": distribution_parameter_closed_form(spec, s)}


def _rectifying_curve_invariants(spec, s, v):
    fam = spec.family

    def parts(t):
        fr = spec.frame(t)
        r = _rectifying_scalars(spec, t)
        c, d1 = r["c"], r["dckap"]
        k, tau, tg = fr.kappa, fr.tau, fr.tau_G
        A = _rectifying_A(fr, c, d1, v)
        return np.array([A, -v * c * c * k * k * tg / A, v * c * c * k * tau * tg / A])

    fr = spec.frame(s)
    k, tau, tg = fr.kappa, fr.tau, fr.tau_G
    r = _rectifying_scalars(spec, s)
    c, d1 = r["c"], r["dckap"]
    A = _require(_rectifying_A(fr, c, d1, v), fam, "A", s, v)
    field_ = calculus.derived(parts, spec.curve.domain)
    _, d_first, d_second = field_.deriv(s)
    kg = v * c * c * k * k * tau * tg / A
    kn = k * (v * c * d1 * (tau - k) - c * k) / A
    tgeo = (k / A) * (
        v * c * c * k * tau * tg * (d_first - (v * c * k * d1 * (tau - k) - c * k * k) / A)
        - v * c * c * k * k * tg * ((v * c * d1 * (tau - k) - c * k) * (tau + 2 * tg) / A + d_second)
    )
    return kg, kn, tgeo


# --- records and grids ------------------------------------------------------

@dataclass
class InvariantRecord:
    s: float
    v: float
    pipeline: str
    lam: float | None = None  # None: degenerate (cylindrical ruling)
    K: float = math.nan
    H: float = math.nan
    kappa_g: float = math.nan
    kappa_n: float = math.nan
    tau_g: float = math.nan
    forms: FundamentalForms | None = None
    singular: bool = False
    reason: str = ""

    @property
    def lambda_degenerate(self) -> bool:
        return self.lam is None

    def value(self, name: str) -> float | None:
        return self.lam if name == "lambda" else getattr(self, name)

    def point_type(self, tol: float = DEFAULT_TOL) -> str:
        return point_type(self.K, tol) if not self.singular else "singular"


def point_type(K: float, tol: float = DEFAULT_TOL) -> str:
    if K < -tol:
        return "hyperbolic"
    if K > tol:
        return "elliptic"
    return "parabolic"


def evaluate_point(spec: RuledSurface, s: float, v: float, pipeline: Pipeline = "definitional") -> InvariantRecord:
    rec = InvariantRecord(float(s), float(v), pipeline)
    try:
        if pipeline == "definitional":
            rec.lam = distribution_parameter(spec, s)
            rec.forms = spec.fundamental_forms(s, v)
            rec.K, rec.H = gauss_mean_definitional(spec, s, v, rec.forms)
            rec.kappa_g, rec.kappa_n, rec.tau_g = curve_invariants_definitional(spec, s, v)
        elif pipeline == "closed_form":
            rec.lam = distribution_parameter_closed_form(spec, s)
            rec.K, rec.H = gauss_mean_closed_form(spec, s, v)
            rec.kappa_g, rec.kappa_n, rec.tau_g = curve_invariants_closed_form(spec, s, v)
        else:
            raise ValueError(f"unknown pipeline {pipeline!r}")
    except (SingularPointError, FamilySingularityError) as exc:
        rec.singular = True
        rec.reason = str(exc)
    return rec


def evaluate_grid(spec: RuledSurface, s_grid, v_grid, pipeline: Pipeline = "definitional",
                  jobs: int = 1) -> list[InvariantRecord]:
    """Records for every (s, v) cell, ordered by s index then v index."""
    cells = [(float(s), float(v)) for s in s_grid for v in v_grid]
    if jobs <= 1:
        return [evaluate_point(spec, s, v, pipeline) for s, v in cells]
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(lambda c: evaluate_point(spec, c[0], c[1], pipeline), cells))


# --- classification ---------------------------------------------------------

@dataclass
class Classification:
    developable: bool
    lambda_degenerate: bool
    lambda_max: float
    minimal: bool
    minimal_locus: list[tuple[float, float]]
    point_types: list[list[str]]
    geodesic: bool
    asymptotic: bool
    principal: bool
    base_curve_max: dict[str, float]
    per_v: list[dict]
    v_ref: float
    tol: float
    singular_cells: int = 0
    singular_rulings: list[float] = field(default_factory=list)

    @property
    def point_type_set(self) -> set[str]:
        return {t for row in self.point_types for t in row if t != "singular"}

    def to_dict(self) -> dict:
        return {
            "developable": self.developable,
            "lambda_degenerate": self.lambda_degenerate,
            "lambda_max": self.lambda_max,
            "minimal": self.minimal,
            "minimal_locus": [list(p) for p in self.minimal_locus],
            "point_types": sorted(self.point_type_set),
            "base_curve": {
                "geodesic": self.geodesic,
                "asymptotic": self.asymptotic,
                "principal": self.principal,
                "max_abs": self.base_curve_max,
                "v_ref": self.v_ref,
                "per_v": self.per_v,
            },
            "singular_cells": self.singular_cells,
            "singular_rulings": self.singular_rulings,
            "tol": self.tol,
        }


def _regular_v(spec: RuledSurface, s: float, v_ref: float, towards: float) -> float:
    try:
        spec.normal(s, v_ref)
        return v_ref
    except SingularPointError:
        # one-sided limit, approached from the side the grid lies on
        return v_ref + math.copysign(LIMIT_OFFSET, towards - v_ref if towards != v_ref else 1.0)


def classify(spec: RuledSurface, s_grid, v_grid, tol: float = DEFAULT_TOL, v_ref: float = 0.0,
             records: list[InvariantRecord] | None = None) -> Classification:
    s_grid = [float(s) for s in s_grid]
    v_grid = [float(v) for v in v_grid]
    if not s_grid or not v_grid:
        raise ValueError("classification grid must be nonempty")
    if records is None:
        records = evaluate_grid(spec, s_grid, v_grid)
    towards = float(np.mean(v_grid))

    lam_max = 0.0
    degenerate = False
    developable = True
    v_used = v_ref
    base_vals = {"kappa_g": 0.0, "kappa_n": 0.0, "tau_g": 0.0}
    singular_rulings: list[float] = []
    for s in s_grid:
        lam = distribution_parameter(spec, s)
        v_used = _regular_v(spec, s, v_ref, towards)
        if lam is None:
            degenerate = True
            # 0/0 in lambda: fall back on the second-form coefficient f
            developable &= _degenerate_f(spec, s, v_ref, towards) <= tol
        else:
            lam_max = max(lam_max, abs(lam))
            developable &= abs(lam) <= tol
        try:
            vals = curve_invariants_definitional(spec, s, v_used)
        except SingularPointError:
            singular_rulings.append(s)
            continue
        for name, val in zip(base_vals, vals):
            base_vals[name] = max(base_vals[name], abs(val))

    nv = len(v_grid)
    point_types = []
    minimal_locus = []
    minimal = True
    singular = 0
    per_v = [{"v": v, "kappa_g": 0.0, "kappa_n": 0.0, "tau_g": 0.0} for v in v_grid]
    for i, _ in enumerate(s_grid):
        row = []
        for j in range(nv):
            rec = records[i * nv + j]
            row.append(rec.point_type(tol))
            if rec.singular:
                singular += 1
                continue
            if abs(rec.H) <= tol:
                minimal_locus.append((rec.s, rec.v))
            else:
                minimal = False
            for name in ("kappa_g", "kappa_n", "tau_g"):
                per_v[j][name] = max(per_v[j][name], abs(getattr(rec, name)))
        point_types.append(row)

    return Classification(
        developable=developable,
        lambda_degenerate=degenerate,
        lambda_max=lam_max,
        minimal=minimal and singular < len(records),
        minimal_locus=minimal_locus,
        point_types=point_types,
        geodesic=base_vals["kappa_g"] <= tol,
        asymptotic=base_vals["kappa_n"] <= tol,
        principal=base_vals["tau_g"] <= tol,
        base_curve_max=base_vals,
        per_v=per_v,
        v_ref=v_used,
        tol=tol,
        singular_cells=singular,
        singular_rulings=singular_rulings,
    )


def developable_at(spec: RuledSurface, s: float, tol: float = DEFAULT_TOL, v_ref: float = 0.0) -> bool:
    """Pointwise developability: ``|lambda| <= tol``, or ``|f| <= tol`` where lambda is 0/0."""
    lam = distribution_parameter(spec, s)
    if lam is not None:
        return abs(lam) <= tol
    return _degenerate_f(spec, s, v_ref, v_ref + 1.0) <= tol


def _degenerate_f(spec: RuledSurface, s: float, v_ref: float, towards: float) -> float:
    """``|f| = |<D_T X, U>|`` where lambda is 0/0.

    If the whole ruling is singular the bound ``|f| <= |D_T X|`` is used.
    """
    try:
        v = _regular_v(spec, s, v_ref, towards)
        return abs(inner(spec.DTX(s), spec.normal(s, v)[0]))
    except SingularPointError:
        return norm(spec.DTX(s))
