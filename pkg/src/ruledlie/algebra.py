"""Three-dimensional Lie algebras with a bi-invariant inner product.

Elements are plain ``numpy`` arrays of shape ``(3,)`` holding coefficients in a
fixed orthonormal, right-handed basis ``{X1, X2, X3}``.  The inner product is
the Euclidean one on those coefficients.  The bracket is given by structure
constants ``c[i, j, k]`` with ``[Xi, Xj] = sum_k c[i, j, k] Xk`` (0-based in
code, 1-based in configuration files).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import UnknownAlgebraError

DEFAULT_TOL = 1e-10

E1 = np.array([1.0, 0.0, 0.0])
E2 = np.array([0.0, 1.0, 0.0])
E3 = np.array([0.0, 0.0, 1.0])


def vec3(c1, c2=None, c3=None) -> np.ndarray:
    """Build a coefficient triple, rejecting non-finite entries."""
    if c2 is None and c3 is None:
        out = np.asarray(c1, dtype=float).reshape(3).copy()
    else:
        out = np.array([c1, c2, c3], dtype=float)
    if not np.all(np.isfinite(out)):
        raise ValueError(f"non-finite algebra coefficients: {out}")
    return out


def inner(x, y) -> float:
    return float(x[0] * y[0] + x[1] * y[1] + x[2] * y[2])


def norm(x) -> float:
    return math.sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2])


def cross(x, y) -> np.ndarray:
    """Right-handed cross product of coefficient triples."""
    return np.array([
        x[1] * y[2] - x[2] * y[1],
        x[2] * y[0] - x[0] * y[2],
        x[0] * y[1] - x[1] * y[0],
    ])


def det3(x, y, z) -> float:
    """Determinant of the matrix with rows x, y, z; equals <x cross y, z>."""
    return inner(cross(x, y), z)


def levi_civita() -> np.ndarray:
    eps = np.zeros((3, 3, 3))
    for i, j, k in ((0, 1, 2), (1, 2, 0), (2, 0, 1)):
        eps[i, j, k] = 1.0
        eps[j, i, k] = -1.0
    return eps


@dataclass(frozen=True)
class ValidationReport:
    name: str
    antisymmetry: float
    jacobi: float
    bi_invariance: float
    tol: float

    @property
    def max_violation(self) -> float:
        return max(self.antisymmetry, self.jacobi, self.bi_invariance)

    @property
    def passed(self) -> bool:
        return self.max_violation <= self.tol

    def violations(self) -> list[str]:
        names = []
        for label in ("antisymmetry", "jacobi", "bi_invariance"):
            if getattr(self, label) > self.tol:
                names.append(label)
        return names

    def to_dict(self) -> dict:
        return {
            "algebra": self.name,
            "antisymmetry": self.antisymmetry,
            "jacobi": self.jacobi,
            "bi_invariance": self.bi_invariance,
            "max_violation": self.max_violation,
            "tol": self.tol,
            "passed": self.passed,
            "violations": self.violations(),
        }


@dataclass(frozen=True, eq=False)
class LieAlgebra3:
    """Structure constants of a 3D Lie algebra over an orthonormal basis.

    ``constants[i, j, k]`` is the ``Xk`` coefficient of ``[Xi, Xj]``.  The
    array is copied and frozen on construction.
    """

    constants: np.ndarray
    name: str = "custom"
    _flat: np.ndarray = field(init=False, repr=False)
    _cross_scale: float | None = field(init=False, repr=False)

    def __post_init__(self):
        c = np.array(self.constants, dtype=float)
        if c.shape != (3, 3, 3):
            raise ValueError(f"structure constants must have shape (3, 3, 3), got {c.shape}")
        if not np.all(np.isfinite(c)):
            raise ValueError("structure constants must be finite")
        c.setflags(write=False)
        object.__setattr__(self, "constants", c)
        object.__setattr__(self, "_flat", c.reshape(9, 3))
        # Exact multiples of epsilon get the cheap cross-product path.
        k = c[0, 1, 2]
        scale = k if np.array_equal(c, k * levi_civita()) else None
        object.__setattr__(self, "_cross_scale", scale)

    def bracket(self, x, y) -> np.ndarray:
        if self._cross_scale is not None:
            if self._cross_scale == 0.0:
                return np.zeros(3)
            return self._cross_scale * cross(x, y)
        return np.outer(x, y).ravel() @ self._flat

    def validate(self, tol: float = DEFAULT_TOL) -> ValidationReport:
        return validate(self, tol)


def bracket(alg: LieAlgebra3, x, y) -> np.ndarray:
    """Lie bracket ``sum_ij x_i y_j [Xi, Xj]``."""
    return alg.bracket(x, y)


def validate(alg: LieAlgebra3, tol: float = DEFAULT_TOL) -> ValidationReport:
    """Measure how far the constants are from a bi-invariant Lie algebra.

    Antisymmetry is ``c_ijk = -c_jik``, Jacobi is checked on every basis
    triple, and bi-invariance ``<[Xi,Xj],Xk> = <Xi,[Xj,Xk]>`` reduces to the
    cyclic symmetry ``c_ijk = c_jki`` in an orthonormal basis.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    c = alg.constants
    antisym = float(np.max(np.abs(c + c.transpose(1, 0, 2))))
    # [Xa, [Xb, Xc]] has Xk-coefficient sum_m c[b,c,m] c[a,m,k]
    double = np.einsum("bcm,amk->abck", c, c)
    jac = double + double.transpose(2, 0, 1, 3) + double.transpose(1, 2, 0, 3)
    jacobi = float(np.max(np.abs(jac)))
    bi_inv = float(np.max(np.abs(c - c.transpose(1, 2, 0))))
    return ValidationReport(alg.name, antisym, jacobi, bi_inv, tol)


def _so3_scaled(k: float, name: str) -> LieAlgebra3:
    return LieAlgebra3(k * levi_civita(), name)


_BUILTINS = {
    "abelian": lambda: LieAlgebra3(np.zeros((3, 3, 3)), "abelian"),
    "so3": lambda: _so3_scaled(1.0, "so3"),
    "so3-scaled-2": lambda: _so3_scaled(2.0, "so3-scaled-2"),
}


def available() -> list[str]:
    return list(_BUILTINS)


def builtin(name: str) -> LieAlgebra3:
    """Return one of the catalogued algebras (``abelian``, ``so3``, ``so3-scaled-2``)."""
    try:
        alg = _BUILTINS[name]()
    except KeyError:
        raise UnknownAlgebraError(name, _BUILTINS) from None
    assert validate(alg).passed
    return alg


def from_constants(constants, name: str = "custom") -> LieAlgebra3:
    """Build an algebra from a nested 3x3x3 list (first index = 1st bracket slot)."""
    return LieAlgebra3(np.asarray(constants, dtype=float), name)
