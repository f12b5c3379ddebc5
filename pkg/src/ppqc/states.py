"""Pure, maximally mixed, pseudo-pure and Werner-form states."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ppqc.errors import DimensionError, NormalizationError, ParameterError, SizeError, StateError
from ppqc.linalg import HERMITIAN_TOL, as_matrix, eigvalsh, hermitian_deviation

MAX_QUBITS = 12
NORM_TOL = 1e-10


def _num_qubits_for(dim: int) -> int:
    n = dim.bit_length() - 1
    if dim < 2 or 2**n != dim:
        raise DimensionError(f"dimension {dim} is not a power of two >= 2")
    return n


def _check_qubits(n: int) -> None:
    if not 1 <= n <= MAX_QUBITS:
        raise SizeError(f"number of qubits must be in [1, {MAX_QUBITS}], got {n}")


@dataclass(frozen=True, eq=False)
class PureState:
    amplitudes: np.ndarray

    def __post_init__(self):
        amps = np.array(self.amplitudes, dtype=complex).reshape(-1)
        _check_qubits(_num_qubits_for(amps.size))
        norm2 = float(np.vdot(amps, amps).real)
        if abs(norm2 - 1) > NORM_TOL:
            raise NormalizationError(f"squared norm is {norm2!r}, expected 1")
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)

    @property
    def num_qubits(self) -> int:
        return self.amplitudes.size.bit_length() - 1

    @property
    def dim(self) -> int:
        return self.amplitudes.size

    def projector(self) -> np.ndarray:
        return np.outer(self.amplitudes, self.amplitudes.conj())

    @classmethod
    def basis(cls, index: int, num_qubits: int) -> "PureState":
        if not 0 <= index < 2**num_qubits:
            raise ParameterError(f"basis index {index} out of range for {num_qubits} qubits")
        amps = np.zeros(2**num_qubits, dtype=complex)
        amps[index] = 1
        return cls(amps)

    @classmethod
    def ground(cls, num_qubits: int) -> "PureState":
        return cls.basis(0, num_qubits)


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """Trace-one Hermitian PSD matrix; ``check=False`` skips validation for
    matrices that are valid by construction."""

    matrix: np.ndarray
    check: bool = True

    def __post_init__(self):
        m = as_matrix(self.matrix).copy()
        if m.shape[0] != m.shape[1]:
            raise DimensionError(f"density matrix must be square, got {m.shape}")
        _check_qubits(_num_qubits_for(m.shape[0]))
        if self.check:
            dev = hermitian_deviation(m)
            if dev > HERMITIAN_TOL:
                raise StateError(f"not Hermitian (deviation {dev:.3g})")
            tr = np.trace(m)
            if abs(tr - 1) > NORM_TOL:
                raise StateError(f"trace is {tr}, expected 1")
            lo = float(eigvalsh(m)[0])
            if lo < -NORM_TOL:
                raise StateError(f"not positive semidefinite (min eigenvalue {lo:.3g})")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    @property
    def num_qubits(self) -> int:
        return self.matrix.shape[0].bit_length() - 1

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def eigenvalues(self) -> np.ndarray:
        return eigvalsh(self.matrix)


def maximally_mixed(num_qubits: int) -> DensityMatrix:
    _check_qubits(num_qubits)
    dim = 2**num_qubits
    return DensityMatrix(np.eye(dim, dtype=complex) / dim, check=False)


@dataclass(frozen=True, eq=False)
class PseudoPureState:
    """(1 - epsilon) M + epsilon |psi><psi|, kept as the pair (epsilon, psi)."""

    epsilon: float
    pure: PureState

    def __post_init__(self):
        eps = float(self.epsilon)
        if not 0.0 <= eps <= 1.0:
            raise ParameterError(f"epsilon must lie in [0, 1], got {eps!r}")
        object.__setattr__(self, "epsilon", eps)

    @property
    def num_qubits(self) -> int:
        return self.pure.num_qubits

    @property
    def dim(self) -> int:
        return self.pure.dim

    def materialize(self) -> DensityMatrix:
        dim = self.dim
        m = self.epsilon * self.pure.projector()
        m[np.diag_indices(dim)] += (1 - self.epsilon) / dim
        return DensityMatrix(m, check=False)

    def diagonal(self) -> np.ndarray:
        """Diagonal of the materialized matrix without forming it."""
        return (1 - self.epsilon) / self.dim + self.epsilon * np.abs(self.pure.amplitudes) ** 2


def pseudo_pure(epsilon: float, psi) -> PseudoPureState:
    if not isinstance(psi, PureState):
        psi = PureState(psi)
    return PseudoPureState(epsilon, psi)


def expectation(a, state: PseudoPureState) -> complex:
    """Tr(A rho) on the materialized state.

    For traceless A this equals ``epsilon * <psi|A|psi>``; the identity is
    not enforced, so non-traceless observables get the true trace.
    """
    a = as_matrix(a)
    if a.shape != (state.dim, state.dim):
        raise DimensionError(f"observable of shape {a.shape} on a {state.dim}-dim state")
    rho = state.materialize().matrix
    return complex(np.einsum("ij,ji->", a, rho))


def pure_expectation(a, psi: PureState) -> complex:
    a = as_matrix(a)
    if a.shape != (psi.dim, psi.dim):
        raise DimensionError(f"observable of shape {a.shape} on a {psi.dim}-dim state")
    return complex(np.vdot(psi.amplitudes, a @ psi.amplitudes))


@dataclass(frozen=True)
class WernerParameters:
    delta: float

    def __post_init__(self):
        if not 0.0 <= float(self.delta) <= 1.0:
            raise ParameterError(f"delta must lie in [0, 1], got {self.delta!r}")


PHI_PLUS = PureState(np.array([1, 0, 0, 1], dtype=complex) / np.sqrt(2))


def werner(params: WernerParameters | float) -> DensityMatrix:
    """(1 - delta) M_4 + delta |Phi+><Phi+| on two effective qubits."""
    if not isinstance(params, WernerParameters):
        params = WernerParameters(params)
    return pseudo_pure(params.delta, PHI_PLUS).materialize()
