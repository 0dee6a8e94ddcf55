"""Scenario files: one JSON document per scenario.

Schema (all keys except ``algebra`` and ``curve`` optional)::

    {
      "name": "cylinder-so3",
      "algebra": "so3",                         # or {"structure_constants": c}
      "curve": {"name": "helix", "a": 0.8, "b": 0.6},
      "derivatives": {"mode": "analytic", "step": null},
      "surface": {"family": "general", "director": [0, 0, 1]},
      "grid": {"s": [0.0, 6.0, 21], "v": [0.1, 2.0, 21]},
      "tolerances": {"classify": 1e-8, "compare": 1e-5, ...},
      "outputs": {"surface_csv": "surface.csv", ...},
      "seed": 42,
      "verify": {"n_cases": 100}
    }

``structure_constants`` is a 3x3x3 nested list with ``c[i][j][k]`` the
coefficient of ``e_k`` in ``[e_i, e_j]``.  Indices are 1-based in prose
(``c_ij^k`` for i, j, k in 1..3) and 0-based in the JSON arrays.

Curves: ``circle``; ``helix`` with ``a``, ``b`` (``a^2 + b^2 = 1``);
``tabulated`` with ``s`` (increasing) and ``points`` (n x 3), which only
supports ``"mode": "fd"``.
"""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, field
from pathlib import Path

import numpy as np

from . import algebra, frenet, surfaces
from .errors import ConfigError, UnknownAlgebraError

DEFAULT_TOLERANCES = {
    "classify": 1e-8,     # |K|, |lambda|, |H|, base-curve invariants
    "compare": 1e-5,      # closed form vs definitional, relative
    "algebra": 1e-10,     # antisymmetry / Jacobi / bi-invariance
    "frenet": 1e-4,       # D_T relations with differenced frame fields
    "bracket": 1e-6,      # [T,N] = 2 tau_G B, [T,B] = -2 tau_G N
    "alt_tau_G": 1e-4,
    "K_sign": 1e-12,
}

DEFAULT_OUTPUTS = {
    "surface_csv": "surface.csv",
    "summary": "summary.json",
    "scenario": "scenario.json",
    "frenet_csv": "frenet.csv",
    "mesh": "mesh.obj",
    "verify": "verify.json",
    "pipelines": ["definitional", "closed_form"],
}

_TOP_KEYS = {"name", "algebra", "curve", "derivatives", "surface", "grid",
             "tolerances", "outputs", "seed", "verify"}


@dataclass
class AlgebraConfig:
    name: str | None = "so3"
    structure_constants: list | None = None

    def build(self) -> algebra.LieAlgebra3:
        if self.structure_constants is not None:
            try:
                c = np.asarray(self.structure_constants, dtype=float)
            except (TypeError, ValueError) as exc:
                raise ConfigError(f"structure_constants must be numeric: {exc}") from exc
            if c.shape != (3, 3, 3):
                raise ConfigError(f"structure_constants must be 3x3x3, got shape {c.shape}")
            try:
                return algebra.from_constants(c, self.name or "custom")
            except ValueError as exc:
                raise ConfigError(str(exc)) from exc
        try:
            return algebra.builtin(self.name)
        except UnknownAlgebraError as exc:
            raise ConfigError(str(exc)) from exc

    def to_json(self):
        if self.structure_constants is None:
            return self.name
        out = {"structure_constants": self.structure_constants}
        if self.name:
            out["name"] = self.name
        return out


@dataclass
class CurveConfig:
    name: str = "circle"
    a: float | None = None
    b: float | None = None
    s: list[float] | None = None
    points: list[list[float]] | None = None

    def build(self, mode: str, step: float | None) -> frenet.Curve:
        if self.name == "circle":
            return frenet.circle(mode, step)
        if self.name == "helix":
            if self.a is None or self.b is None:
                raise ConfigError("helix needs 'a' and 'b'")
            return frenet.helix(self.a, self.b, mode, step)
        if self.name == "tabulated":
            if mode != "fd":
                raise ConfigError("tabulated curves support only derivatives.mode = 'fd'")
            if self.s is None or self.points is None:
                raise ConfigError("tabulated curve needs 's' and 'points'")
            return frenet.tabulated(self.s, self.points, mode, step)
        raise ConfigError(f"unknown curve {self.name!r} (expected circle, helix or tabulated)")

    def to_json(self) -> dict:
        return {k: v for k, v in asdict(self).items() if v is not None}


@dataclass
class DerivativeConfig:
    mode: str = "analytic"
    step: float | None = None

    def __post_init__(self):
        if self.mode not in ("analytic", "fd"):
            raise ConfigError(f"derivatives.mode must be 'analytic' or 'fd', got {self.mode!r}")
        if self.step is not None and not (self.step > 0 and math.isfinite(self.step)):
            raise ConfigError(f"derivatives.step must be positive, got {self.step!r}")


@dataclass
class SurfaceConfig:
    family: str = "general"
    director: list[float] | None = None

    def __post_init__(self):
        try:
            surfaces.Family(self.family)
        except ValueError:
            names = ", ".join(f.value for f in surfaces.Family)
            raise ConfigError(f"unknown surface family {self.family!r} (expected one of {names})") from None
        if self.family == "general" and self.director is None:
            raise ConfigError("surface.director is required for the general family")
        if self.director is not None and len(self.director) != 3:
            raise ConfigError("surface.director must be a triple")


@dataclass
class Axis:
    lo: float
    hi: float
    n: int

    @classmethod
    def parse(cls, raw, key: str) -> Axis:
        if not isinstance(raw, (list, tuple)) or len(raw) != 3:
            raise ConfigError(f"grid.{key} must be [min, max, n]")
        lo, hi, n = raw
        if not isinstance(n, int) or isinstance(n, bool) or n < 1:
            raise ConfigError(f"grid.{key} count must be an integer >= 1, got {n!r}")
        lo, hi = float(lo), float(hi)
        if not (math.isfinite(lo) and math.isfinite(hi)) or hi < lo:
            raise ConfigError(f"grid.{key} needs finite min <= max")
        return cls(lo, hi, n)

    def values(self) -> np.ndarray:
        return np.linspace(self.lo, self.hi, self.n)

    def to_json(self) -> list:
        return [self.lo, self.hi, self.n]


@dataclass
class GridConfig:
    s: Axis = field(default_factory=lambda: Axis(0.0, 2 * math.pi, 21))
    v: Axis = field(default_factory=lambda: Axis(-1.0, 1.0, 11))


@dataclass
class ScenarioConfig:
    algebra: AlgebraConfig
    curve: CurveConfig
    derivatives: DerivativeConfig = field(default_factory=DerivativeConfig)
    surface: SurfaceConfig = field(default_factory=lambda: SurfaceConfig("general", [0.0, 0.0, 1.0]))
    grid: GridConfig = field(default_factory=GridConfig)
    tolerances: dict = field(default_factory=lambda: dict(DEFAULT_TOLERANCES))
    outputs: dict = field(default_factory=lambda: dict(DEFAULT_OUTPUTS))
    seed: int = 42
    verify: dict = field(default_factory=lambda: {"n_cases": 100})
    name: str = "scenario"

    # -- builders ---------------------------------------------------------

    def build_algebra(self) -> algebra.LieAlgebra3:
        return self.algebra.build()

    def build_curve(self) -> frenet.Curve:
        return self.curve.build(self.derivatives.mode, self.derivatives.step)

    def build_surface(self, alg=None, curve=None) -> surfaces.RuledSurface:
        alg = self.build_algebra() if alg is None else alg
        curve = self.build_curve() if curve is None else curve
        director = self.surface.director
        if director is not None:
            director = np.asarray(director, dtype=float)
        return surfaces.make_surface(alg, curve, self.surface.family, director)

    def s_grid(self) -> np.ndarray:
        return self.grid.s.values()

    def v_grid(self) -> np.ndarray:
        return self.grid.v.values()

    def tol(self, key: str) -> float:
        return float(self.tolerances[key])

    # -- (de)serialisation ------------------------------------------------

    def to_dict(self) -> dict:
        out = {
            "name": self.name,
            "algebra": self.algebra.to_json(),
            "curve": self.curve.to_json(),
            "derivatives": {"mode": self.derivatives.mode, "step": self.derivatives.step},
            "surface": {"family": self.surface.family},
            "grid": {"s": self.grid.s.to_json(), "v": self.grid.v.to_json()},
            "tolerances": dict(self.tolerances),
            "outputs": dict(self.outputs),
            "seed": self.seed,
            "verify": dict(self.verify),
        }
        if self.surface.director is not None:
            out["surface"]["director"] = list(self.surface.director)
        return out

    @classmethod
    def from_dict(cls, raw: dict) -> ScenarioConfig:
        if not isinstance(raw, dict):
            raise ConfigError("scenario must be a JSON object")
        unknown = set(raw) - _TOP_KEYS
        if unknown:
            raise ConfigError(f"unknown scenario keys: {sorted(unknown)}")
        if "algebra" not in raw or "curve" not in raw:
            raise ConfigError("scenario needs 'algebra' and 'curve'")

        alg = raw["algebra"]
        if isinstance(alg, str):
            alg_cfg = AlgebraConfig(alg)
        elif isinstance(alg, dict) and "structure_constants" in alg:
            alg_cfg = AlgebraConfig(alg.get("name"), alg["structure_constants"])
        else:
            raise ConfigError("algebra must be a builtin name or {'structure_constants': ...}")

        curve = raw["curve"]
        if isinstance(curve, str):
            curve = {"name": curve}
        try:
            curve_cfg = CurveConfig(**curve)
            deriv_cfg = DerivativeConfig(**raw.get("derivatives", {}))
            surf_raw = raw.get("surface", {"family": "general", "director": [0.0, 0.0, 1.0]})
            surf_cfg = SurfaceConfig(**surf_raw)
        except TypeError as exc:
            raise ConfigError(f"bad scenario field: {exc}") from exc

        g = raw.get("grid", {})
        default = GridConfig()
        grid = GridConfig(
            Axis.parse(g["s"], "s") if "s" in g else default.s,
            Axis.parse(g["v"], "v") if "v" in g else default.v,
        )
        tolerances = dict(DEFAULT_TOLERANCES)
        for k, v in raw.get("tolerances", {}).items():
            if k not in DEFAULT_TOLERANCES:
                raise ConfigError(f"unknown tolerance {k!r}")
            tolerances[k] = float(v)
        outputs = dict(DEFAULT_OUTPUTS)
        outputs.update(raw.get("outputs", {}))
        seed = raw.get("seed", 42)
        if not isinstance(seed, int) or isinstance(seed, bool):
            raise ConfigError(f"seed must be an integer, got {seed!r}")
        verify = {"n_cases": 100, **raw.get("verify", {})}
        return cls(alg_cfg, curve_cfg, deriv_cfg, surf_cfg, grid, tolerances, outputs, seed,
                   verify, str(raw.get("name", "scenario")))

    def validate(self) -> ScenarioConfig:
        """Build every component once so bad references fail early."""
        alg = self.build_algebra()
        curve = self.build_curve()
        self.build_surface(alg, curve)
        return self


def load(path) -> ScenarioConfig:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config {path} is not valid JSON: {exc}") from exc
    return ScenarioConfig.from_dict(raw)


def loads(text: str) -> ScenarioConfig:
    try:
        return ScenarioConfig.from_dict(json.loads(text))
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config is not valid JSON: {exc}") from exc
