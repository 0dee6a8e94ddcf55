import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from ruledlie import algebra
from ruledlie.algebra import E1, E2, E3, inner, levi_civita
from ruledlie.errors import UnknownAlgebraError

finite = st.floats(-10, 10, allow_nan=False)
vectors = st.tuples(finite, finite, finite).map(np.array)


@pytest.mark.parametrize("name", ["abelian", "so3", "so3-scaled-2"])
def test_builtins_validate(name):
    rep = algebra.validate(algebra.builtin(name))
    assert rep.passed
    assert rep.max_violation == 0.0
    assert rep.violations() == []


@pytest.mark.parametrize("x, y, expected", [
    (E1, E2, E3),
    (E2, E3, E1),
    (E3, E1, E2),
    (E2, E1, -E3),
])
def test_so3_basis_brackets(x, y, expected):
    np.testing.assert_array_equal(algebra.builtin("so3").bracket(x, y), expected)


def test_scaled_and_abelian_brackets():
    np.testing.assert_array_equal(algebra.builtin("so3-scaled-2").bracket(E1, E2), 2 * E3)
    np.testing.assert_array_equal(algebra.builtin("abelian").bracket(E1, E2), np.zeros(3))


def test_unknown_algebra_lists_available():
    with pytest.raises(UnknownAlgebraError) as exc:
        algebra.builtin("sl2")
    assert exc.value.name == "sl2"
    assert "so3" in exc.value.available
    assert isinstance(exc.value, KeyError)


def test_not_antisymmetric_is_named():
    c = levi_civita()
    c[0, 0, 2] = 1.0
    rep = algebra.validate(algebra.from_constants(c, "broken"))
    assert not rep.passed
    assert "antisymmetry" in rep.violations()
    assert rep.antisymmetry == 2.0  # |c_113 + c_113|


def test_jacobi_violation_detected():
    # [e1,e2] = e3, [e2,e3] = e3, [e3,e1] = e1: antisymmetric, Jacobi sum = e3
    c = np.zeros((3, 3, 3))
    for (i, j, k) in [(0, 1, 2), (1, 2, 2), (2, 0, 0)]:
        c[i, j, k], c[j, i, k] = 1.0, -1.0
    rep = algebra.validate(algebra.from_constants(c))
    assert rep.antisymmetry == 0.0
    assert rep.jacobi == 1.0
    assert "jacobi" in rep.violations()


def test_lie_but_not_bi_invariant():
    # [e1, e2] = e2: a genuine Lie algebra without an ad-invariant metric
    c = np.zeros((3, 3, 3))
    c[0, 1, 1], c[1, 0, 1] = 1.0, -1.0
    rep = algebra.validate(algebra.from_constants(c, "aff"))
    assert rep.antisymmetry == 0.0 and rep.jacobi == 0.0
    assert rep.violations() == ["bi_invariance"]


def test_constants_are_frozen_copies():
    c = levi_civita()
    alg = algebra.from_constants(c)
    c[0, 1, 2] = 99.0
    assert alg.constants[0, 1, 2] == 1.0
    with pytest.raises(ValueError):
        alg.constants[0, 1, 2] = 5.0


def test_bad_shape_and_tol():
    with pytest.raises(ValueError):
        algebra.from_constants(np.zeros((3, 3)))
    with pytest.raises(ValueError):
        algebra.validate(algebra.builtin("so3"), tol=0.0)


@given(vectors, vectors, st.integers(0, 2**32 - 1))
def test_general_bracket_is_bilinear_contraction(x, y, seed):
    c = np.random.default_rng(seed).standard_normal((3, 3, 3))
    alg = algebra.from_constants(c)
    assert alg._cross_scale is None
    np.testing.assert_allclose(alg.bracket(x, y), np.einsum("i,j,ijk->k", x, y, c), atol=1e-9)


def test_contraction_path_agrees_with_cross_path():
    alg = algebra.builtin("so3")
    slow = algebra.builtin("so3")
    object.__setattr__(slow, "_cross_scale", None)
    x, y = np.array([0.3, -1.2, 2.0]), np.array([1.5, 0.1, -0.7])
    np.testing.assert_allclose(slow.bracket(x, y), alg.bracket(x, y), rtol=0, atol=1e-15)


@given(vectors, vectors)
def test_so3_bracket_is_cross(x, y):
    np.testing.assert_allclose(algebra.builtin("so3").bracket(x, y), np.cross(x, y), atol=1e-12)


@given(vectors, vectors, vectors, st.sampled_from(["abelian", "so3", "so3-scaled-2"]))
def test_bracket_identities(x, y, z, name):
    alg = algebra.builtin(name)
    scale = 1.0 + np.linalg.norm(x) * np.linalg.norm(y) * np.linalg.norm(z)
    assert np.allclose(alg.bracket(x, y), -alg.bracket(y, x), atol=1e-12)
    assert math.isclose(inner(alg.bracket(x, y), z), inner(x, alg.bracket(y, z)), abs_tol=1e-12 * scale)
    jac = (alg.bracket(x, alg.bracket(y, z)) + alg.bracket(y, alg.bracket(z, x))
           + alg.bracket(z, alg.bracket(x, y)))
    assert np.linalg.norm(jac) <= 1e-10 * scale


@given(st.floats(-5, 5, allow_nan=False))
def test_every_multiple_of_epsilon_is_bi_invariant(k):
    assert algebra.validate(algebra.from_constants(k * levi_civita())).passed
