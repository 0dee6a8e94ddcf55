import json
import math

import numpy as np
from hypothesis import given
from hypothesis import strategies as st

from ruledlie import report


def test_seventeen_digits():
    assert report.fmt_float(0.1) == "0.10000000000000001"
    assert report.fmt_float(2.0) == "2"
    assert report.fmt_float(math.nan) == "NaN"
    assert report.fmt_float(-math.inf) == "-Infinity"


def test_dumps_structure_and_numpy():
    obj = {"a": np.float64(0.5), "b": [1, 2.5, np.int64(3)], "c": {"d": None, "e": True}, "f": (1.0,)}
    back = json.loads(report.dumps(obj))
    assert back == {"a": 0.5, "b": [1, 2.5, 3], "c": {"d": None, "e": True}, "f": [1]}


@given(st.floats(allow_nan=False, allow_infinity=False))
def test_float_round_trip(x):
    assert float(report.fmt_float(x)) == x
    assert json.loads(report.dumps({"x": x}))["x"] == x


def test_csv(tmp_path):
    p = report.write_csv(tmp_path / "t.csv", ["a", "b", "c"], [[0.1, None, True], [1.0, "x", False]])
    assert p.read_text() == "a,b,c\n0.10000000000000001,,true\n1,x,false\n"
