import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from ppqc.errors import NormalizationError, ParameterError, SizeError, StateError
from ppqc.linalg import SubsystemSplit, min_eigenvalue, partial_trace, partial_transpose
from ppqc.states import (
    PHI_PLUS,
    DensityMatrix,
    PureState,
    WernerParameters,
    expectation,
    maximally_mixed,
    pseudo_pure,
    pure_expectation,
    werner,
)

from conftest import random_state_vector, random_traceless_hermitian

Z = np.diag([1.0, -1.0])


def test_maximally_mixed():
    m = maximally_mixed(2).matrix
    assert np.array_equal(m, np.diag([0.25] * 4))
    assert np.trace(maximally_mixed(5).matrix) == 1
    assert np.array_equal(partial_trace(m, SubsystemSplit(2, 2)), maximally_mixed(1).matrix)


@pytest.mark.parametrize("n", [0, 13])
def test_maximally_mixed_range(n):
    with pytest.raises(SizeError):
        maximally_mixed(n)


def test_pseudo_pure_endpoints(rng):
    psi = random_state_vector(8, rng)
    assert np.allclose(pseudo_pure(0, psi).materialize().matrix, np.eye(8) / 8, atol=1e-15)
    assert np.allclose(pseudo_pure(1, psi).materialize().matrix, np.outer(psi, psi.conj()), atol=1e-15)


def test_pseudo_pure_half_ground():
    m = pseudo_pure(0.5, PureState.ground(2)).materialize().matrix
    assert np.allclose(m, np.diag([0.625, 0.125, 0.125, 0.125]), atol=1e-15)


def test_pseudo_pure_validation():
    with pytest.raises(ParameterError):
        pseudo_pure(1.5, PureState.ground(1))
    with pytest.raises(ParameterError):
        pseudo_pure(-0.1, PureState.ground(1))
    with pytest.raises(NormalizationError):
        pseudo_pure(0.5, [1, 1])


def test_density_matrix_validation():
    with pytest.raises(StateError):
        DensityMatrix(np.diag([0.5, 0.6]))
    with pytest.raises(StateError):
        DensityMatrix(np.diag([1.5, -0.5]))
    with pytest.raises(StateError):
        DensityMatrix(np.array([[0.5, 0.1], [0.0, 0.5]]))


def test_materialize_entrywise(rng):
    psi = random_state_vector(16, rng)
    s = pseudo_pure(0.37, psi)
    expected = 0.63 * np.eye(16) / 16 + 0.37 * np.outer(psi, psi.conj())
    assert np.max(np.abs(s.materialize().matrix - expected)) < 1e-12
    assert np.allclose(s.diagonal(), np.diag(s.materialize().matrix).real, atol=1e-15)


def test_expectation_examples(rng):
    assert expectation(Z, pseudo_pure(0.3, PureState.ground(1))) == pytest.approx(0.3, abs=1e-15)
    s = pseudo_pure(0.4, random_state_vector(4, rng))
    assert expectation(np.eye(4), s) == pytest.approx(1, abs=1e-14)


def test_expectation_traceless_identity(rng):
    a = random_traceless_hermitian(8, rng)
    psi = PureState(random_state_vector(8, rng))
    lhs = expectation(a, pseudo_pure(0.7, psi))
    assert abs(lhs - 0.7 * pure_expectation(a, psi)) < 1e-12


def test_werner_endpoints():
    assert np.allclose(werner(0).matrix, np.eye(4) / 4)
    assert np.allclose(werner(1).matrix, PHI_PLUS.projector())
    with pytest.raises(ParameterError):
        WernerParameters(1.2)


@pytest.mark.parametrize("delta", [0.2, 1 / 3, 0.4])
def test_werner_pt_min_eigenvalue(delta):
    pt = partial_transpose(werner(WernerParameters(delta)).matrix, SubsystemSplit(2, 2))
    assert abs(min_eigenvalue(pt) - (1 - 3 * delta) / 4) < 1e-12


def test_werner_grid_sign_change():
    grid = np.arange(101) / 100
    mins = [min_eigenvalue(partial_transpose(werner(d).matrix, SubsystemSplit(2, 2))) for d in grid]
    assert np.max(np.abs(np.array(mins) - (1 - 3 * grid) / 4)) < 1e-12
    negative = [d for d, m in zip(grid, mins) if m < -1e-10]
    assert negative[0] == 0.34 and max(d for d, m in zip(grid, mins) if m >= -1e-10) == 0.33


@settings(max_examples=40, deadline=None)
@given(st.floats(0, 1), st.integers(1, 5), st.integers(0, 2**32 - 1))
def test_materialization_is_valid_density(eps, n, seed):
    rng = np.random.default_rng(seed)
    s = pseudo_pure(eps, random_state_vector(2**n, rng))
    DensityMatrix(s.materialize().matrix)  # validates Hermitian, trace, PSD
