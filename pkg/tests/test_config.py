import json

import pytest

from ruledlie import config
from ruledlie.errors import ConfigError

BASE = {"algebra": "so3", "curve": {"name": "helix", "a": 0.8, "b": 0.6},
        "surface": {"family": "normal"}, "grid": {"s": [-1, 1, 5], "v": [0.1, 1, 3]}}


def test_round_trip(configs_dir):
    for path in sorted(configs_dir.glob("*.json")):
        sc = config.load(path)
        again = config.loads(json.dumps(sc.to_dict()))
        assert again == sc, path.name
        assert again.to_dict() == sc.to_dict()


def test_defaults_and_builders():
    sc = config.ScenarioConfig.from_dict(BASE).validate()
    assert sc.seed == 42 and sc.tol("compare") == 1e-5
    assert list(sc.s_grid()) == [-1.0, -0.5, 0.0, 0.5, 1.0]
    assert sc.build_surface().family.value == "normal"


def test_structure_constants_algebra(configs_dir):
    sc = config.load(configs_dir / "custom_constants.json")
    assert sc.build_algebra().bracket([1, 0, 0], [0, 1, 0]).tolist() == [0, 0, 1]


@pytest.mark.parametrize("patch", [
    {"algebra": "sl2"},
    {"algebra": {"structure_constants": [[0, 0], [0, 0]]}},
    {"algebra": {"structure_constants": "abc"}},
    {"algebra": 3},
    {"curve": {"name": "spiral"}},
    {"curve": {"name": "helix", "a": 0.8}},
    {"curve": {"name": "helix", "a": 0.8, "b": 0.8}},
    {"curve": {"name": "helix", "a": 0.8, "b": 0.6, "c": 1}},
    {"curve": {"name": "tabulated", "s": [0, 1, 2, 3], "points": [[0, 0, 0]] * 4}},
    {"derivatives": {"mode": "symbolic"}},
    {"derivatives": {"mode": "fd", "step": -1}},
    {"surface": {"family": "conoid"}},
    {"surface": {"family": "general"}},
    {"surface": {"family": "general", "director": [1, 1, 0]}},
    {"surface": {"family": "general", "director": [1, 0]}},
    {"grid": {"s": [0, 1, 0]}},
    {"grid": {"s": [1, 0, 3]}},
    {"grid": {"v": [0, 1]}},
    {"tolerances": {"bogus": 1}},
    {"seed": "x"},
    {"colour": "red"},
])
def test_bad_configs(patch):
    with pytest.raises(ConfigError):
        config.ScenarioConfig.from_dict({**BASE, **patch}).validate()


def test_missing_required_and_bad_json(tmp_path):
    with pytest.raises(ConfigError):
        config.ScenarioConfig.from_dict({"algebra": "so3"})
    with pytest.raises(ConfigError):
        config.loads("{nope")
    with pytest.raises(ConfigError):
        config.load(tmp_path / "missing.json")


def test_tabulated_fd_curve():
    raw = {**BASE, "curve": {"name": "tabulated", "s": [0, 1, 2, 3, 4],
                             "points": [[0, 0, 0], [1, 0, 0], [2, 0.1, 0], [3, 0.3, 0], [4, 0.6, 0]]},
           "derivatives": {"mode": "fd"}}
    sc = config.ScenarioConfig.from_dict(raw)
    assert sc.build_curve().name == "tabulated"
