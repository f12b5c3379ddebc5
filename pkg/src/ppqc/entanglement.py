"""Separability analysis of the post-oracle pseudo-pure state.

Local projection of the input register onto span{|x1>, |x2>} and of the
output register onto span{|f(x1)>, |f(x2)>} leaves a two-qubit Werner-form
state with weight ``epsilon_prime``. Local operations cannot create
entanglement, so a PPT violation of that 4x4 state witnesses entanglement
of the full state.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ppqc.errors import ConstantFunctionError, OracleError, ParameterError, ProjectionError, StateError
from ppqc.linalg import SubsystemSplit, min_eigenvalue, partial_transpose
from ppqc.oracles import OracleFunction
from ppqc.protocols import build_protocol, ground_state
from ppqc.states import DensityMatrix, PseudoPureState

PPT_TOL = 1e-10
BISECTION_MAX_ITER = 60


@dataclass(frozen=True)
class WitnessPair:
    n1: int
    n2: int
    x1: int
    x2: int
    f_x1: int
    f_x2: int

    def __post_init__(self):
        if self.f_x1 == self.f_x2:
            raise ConstantFunctionError(f"f({self.x1}) == f({self.x2}); the pair witnesses nothing")

    def basis_indices(self) -> tuple[int, int, int, int]:
        """Full-space indices of |1>|1>, |1>|2>, |2>|1>, |2>|2>."""
        return tuple(
            (x << self.n2) | y for x in (self.x1, self.x2) for y in (self.f_x1, self.f_x2)
        )

    def bits(self) -> tuple[str, str, str, str]:
        return (
            format(self.x1, f"0{self.n1}b"),
            format(self.x2, f"0{self.n1}b"),
            format(self.f_x1, f"0{self.n2}b"),
            format(self.f_x2, f"0{self.n2}b"),
        )


@dataclass(frozen=True)
class EntanglementVerdict:
    entangled: bool
    min_pt_eigenvalue: float
    tolerance_used: float


def find_witness_pair(f: OracleFunction) -> WitnessPair:
    """x1 = 0 and x2 the smallest input with f(x2) != f(0)."""
    x1 = 0
    for x2 in range(1, 2**f.n1):
        if f(x2) != f(x1):
            return WitnessPair(f.n1, f.n2, x1, x2, f(x1), f(x2))
    raise ConstantFunctionError(f"oracle {f.name!r} is constant")


def projection_normalization(epsilon: float, n1: int, n2: int) -> float:
    """A = 4(1-eps)/2^(n1+n2) + 2 eps/2^n1, the weight surviving the projection."""
    return 4 * (1 - epsilon) / 2 ** (n1 + n2) + 2 * epsilon / 2**n1


def projected_weight(state: PseudoPureState, pair: WitnessPair) -> float:
    """Trace of P rho P, computed from the full matrix."""
    idx = list(pair.basis_indices())
    rho = state.materialize().matrix
    return float(np.trace(rho[np.ix_(idx, idx)]).real)


def _check_post_oracle(state: PseudoPureState, pair: WitnessPair) -> None:
    if state.num_qubits != pair.n1 + pair.n2:
        raise OracleError(
            f"{state.num_qubits}-qubit state does not match pair registers n1={pair.n1}, n2={pair.n2}"
        )
    amp = state.pure.amplitudes
    expected = 2 ** (-pair.n1 / 2)
    i11, i12, i21, i22 = pair.basis_indices()
    ok = (
        abs(amp[i11] - expected) < 1e-10
        and abs(amp[i22] - expected) < 1e-10
        and abs(amp[i12]) < 1e-10
        and abs(amp[i21]) < 1e-10
    )
    if not ok:
        raise OracleError("state is not the post-oracle state of the oracle the pair came from")


def project_to_effective_qubits(state: PseudoPureState, pair: WitnessPair) -> DensityMatrix:
    """P rho P / Tr(P rho P) restricted to the four surviving basis states."""
    _check_post_oracle(state, pair)
    keep_in = np.zeros(2**pair.n1)
    keep_in[[pair.x1, pair.x2]] = 1
    keep_out = np.zeros(2**pair.n2)
    keep_out[[pair.f_x1, pair.f_x2]] = 1
    mask = np.kron(keep_in, keep_out)
    rho = state.materialize().matrix
    # P rho P for the diagonal projector P = diag(mask)
    projected = rho * np.outer(mask, mask)
    weight = np.trace(projected).real
    if weight <= 0:
        raise ProjectionError("projection has zero weight")
    idx = list(pair.basis_indices())
    small = projected[np.ix_(idx, idx)] / weight
    return DensityMatrix(small, check=False)


def epsilon_prime(epsilon: float, n2: int) -> float:
    """eps' = eps / ((1 - eps) 2^(1 - n2) + eps); independent of n1."""
    if not 0.0 <= epsilon <= 1.0:
        raise ParameterError(f"epsilon must lie in [0, 1], got {epsilon!r}")
    if n2 < 1:
        raise ParameterError(f"n2 must be >= 1, got {n2}")
    if epsilon == 0:
        return 0.0
    return epsilon / ((1 - epsilon) * 2.0 ** (1 - n2) + epsilon)


def ppt_check(rho, tol: float = PPT_TOL) -> EntanglementVerdict:
    """Peres-Horodecki test on a two-qubit state (exact for 2x2)."""
    if not isinstance(rho, DensityMatrix):
        try:
            rho = DensityMatrix(rho)
        except Exception as exc:
            raise StateError(f"invalid density matrix: {exc}") from exc
    if rho.dim != 4:
        raise StateError(f"ppt_check needs a 4x4 two-qubit state, got {rho.dim}x{rho.dim}")
    lo = min_eigenvalue(partial_transpose(rho.matrix, SubsystemSplit(2, 2), "B"))
    return EntanglementVerdict(lo < -tol, lo, tol)


def separability_bound(n2: int) -> float:
    if n2 < 1:
        raise ParameterError(f"n2 must be >= 1, got {n2}")
    return 1.0 / (1 + 2**n2)


def projected_verdict(f: OracleFunction, epsilon: float, tol: float = PPT_TOL) -> EntanglementVerdict:
    """Full pipeline at one epsilon: protocol, projection, PPT test."""
    pair = find_witness_pair(f)
    circuit = build_protocol(f)
    state = circuit.run(PseudoPureState(epsilon, ground_state(circuit.num_qubits)))
    return ppt_check(project_to_effective_qubits(state, pair), tol)


def empirical_threshold(f: OracleFunction, n1: int, n2: int, tol: float = 1e-9) -> float:
    """Bisect epsilon in [0, 1] for the separable -> entangled transition of the projected state."""
    if (f.n1, f.n2) != (n1, n2):
        raise OracleError(f"oracle is n1={f.n1}, n2={f.n2}; asked for n1={n1}, n2={n2}")
    if tol <= 0:
        raise ParameterError(f"tol must be positive, got {tol!r}")
    find_witness_pair(f)
    lo, hi = 0.0, 1.0
    for _ in range(BISECTION_MAX_ITER):
        if hi - lo <= tol:
            break
        mid = (lo + hi) / 2
        if projected_verdict(f, mid).entangled:
            hi = mid
        else:
            lo = mid
    return (lo + hi) / 2
