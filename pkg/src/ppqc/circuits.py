"""Gates, circuits and unitary evolution of density matrices and pseudo-pure states.

Every gate can be materialized as a full ``2^n x 2^n`` unitary. Circuits are
run on statevectors through a factorized path (local tensor contraction or
index permutation) that the test suite checks against materialization.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import reduce

import numpy as np

from ppqc.errors import DimensionError, OracleError, SizeError
from ppqc.linalg import as_matrix, check_unitary
from ppqc.oracles import OracleFunction
from ppqc.states import MAX_QUBITS, DensityMatrix, PseudoPureState, PureState

H = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)
X = np.array([[0, 1], [1, 0]], dtype=complex)


def apply_unitary(rho: DensityMatrix, u) -> DensityMatrix:
    u = as_matrix(u)
    if u.shape != (rho.dim, rho.dim):
        raise DimensionError(f"unitary of shape {u.shape} on a {rho.dim}-dim state")
    check_unitary(u)
    return DensityMatrix(u @ rho.matrix @ u.conj().T, check=False)


def evolve_pseudo_pure(state: PseudoPureState, u) -> PseudoPureState:
    """U rho U^dagger on the structured form: only the pure part moves."""
    u = as_matrix(u)
    if u.shape != (state.dim, state.dim):
        raise DimensionError(f"unitary of shape {u.shape} on a {state.dim}-dim state")
    check_unitary(u)
    return PseudoPureState(state.epsilon, PureState(u @ state.pure.amplitudes))


def hadamard_layer(n1: int, total_qubits: int) -> np.ndarray:
    """H on each of the first ``n1`` qubits, identity on the rest."""
    if not 1 <= n1 <= total_qubits <= MAX_QUBITS:
        raise SizeError(f"need 1 <= n1 <= total_qubits <= {MAX_QUBITS}, got n1={n1}, total={total_qubits}")
    hn = reduce(np.kron, [H] * n1)
    return np.kron(hn, np.eye(2 ** (total_qubits - n1), dtype=complex))


def oracle_permutation(f: OracleFunction) -> np.ndarray:
    """Index map i -> perm[i] of |x>|y> -> |x>|y XOR f(x)>."""
    idx = np.arange(2**f.num_qubits)
    x, y = idx >> f.n2, idx & (2**f.n2 - 1)
    return (x << f.n2) | (y ^ f.to_array()[x])


def oracle_unitary(f: OracleFunction) -> np.ndarray:
    if not isinstance(f, OracleFunction):
        raise OracleError(f"expected an OracleFunction, got {type(f).__name__}")
    dim = 2**f.num_qubits
    u = np.zeros((dim, dim), dtype=complex)
    u[oracle_permutation(f), np.arange(dim)] = 1
    return u


def qft_matrix(num_qubits: int, inverse: bool = False) -> np.ndarray:
    dim = 2**num_qubits
    j = np.arange(dim)
    sign = -1 if inverse else 1
    return np.exp(sign * 2j * np.pi * np.outer(j, j) / dim) / np.sqrt(dim)


def _embed(local: np.ndarray, targets: tuple[int, ...], num_qubits: int) -> np.ndarray:
    """Full matrix of ``local`` acting on ``targets`` (in that order)."""
    rest = [q for q in range(num_qubits) if q not in targets]
    full = np.kron(local, np.eye(2 ** len(rest), dtype=complex))
    # full is ordered (targets..., rest...); permute tensor axes back to 0..n-1
    order = list(targets) + rest
    t = full.reshape((2,) * (2 * num_qubits))
    inv = np.argsort(order)
    t = t.transpose(list(inv) + [num_qubits + i for i in inv])
    return t.reshape(2**num_qubits, 2**num_qubits)


def _apply_local(local: np.ndarray, targets: tuple[int, ...], psi: np.ndarray, num_qubits: int) -> np.ndarray:
    k = len(targets)
    t = psi.reshape((2,) * num_qubits)
    t = np.tensordot(local.reshape((2,) * (2 * k)), t, axes=(list(range(k, 2 * k)), list(targets)))
    # contracted axes come out first, in target order
    t = np.moveaxis(t, list(range(k)), list(targets))
    return t.reshape(-1)


@dataclass(frozen=True, eq=False)
class Gate:
    """One circuit step.

    ``kind`` is one of ``hadamard``, ``hadamard_layer``, ``oracle``, ``qft``
    or ``custom``; register gates keep their qubits in ``targets``.
    """

    kind: str
    targets: tuple[int, ...] = ()
    label: str = ""
    local: np.ndarray | None = field(default=None, repr=False)
    oracle: OracleFunction | None = None

    def _check_range(self, num_qubits: int) -> None:
        if self.kind == "oracle":
            if self.oracle.num_qubits != num_qubits:
                raise DimensionError(
                    f"oracle acts on {self.oracle.num_qubits} qubits, circuit has {num_qubits}"
                )
        elif any(not 0 <= q < num_qubits for q in self.targets):
            raise SizeError(f"gate {self.label!r} targets {self.targets} outside {num_qubits} qubits")

    def matrix(self, num_qubits: int) -> np.ndarray:
        self._check_range(num_qubits)
        if self.kind == "oracle":
            return oracle_unitary(self.oracle)
        return _embed(self.local, self.targets, num_qubits)

    def apply(self, psi: np.ndarray, num_qubits: int) -> np.ndarray:
        self._check_range(num_qubits)
        if self.kind == "oracle":
            out = np.empty_like(psi)
            out[oracle_permutation(self.oracle)] = psi
            return out
        if self.kind == "hadamard_layer":
            for q in self.targets:
                psi = _apply_local(H, (q,), psi, num_qubits)
            return psi
        return _apply_local(self.local, self.targets, psi, num_qubits)


def hadamard(qubit: int) -> Gate:
    return Gate("hadamard", (qubit,), f"H[{qubit}]", local=H)


def hadamard_on(qubits) -> Gate:
    qubits = tuple(qubits)
    local = reduce(np.kron, [H] * len(qubits))
    return Gate("hadamard_layer", qubits, f"H^{len(qubits)}{list(qubits)}", local=local)


def oracle_gate(f: OracleFunction) -> Gate:
    return Gate("oracle", label=f"U_f({f.name})", oracle=f)


def qft_gate(qubits, inverse: bool = False) -> Gate:
    qubits = tuple(qubits)
    name = "QFT^-1" if inverse else "QFT"
    return Gate("qft", qubits, f"{name}{list(qubits)}", local=qft_matrix(len(qubits), inverse))


def custom_gate(u, targets, label: str = "U") -> Gate:
    targets = tuple(targets)
    u = check_unitary(u)
    if u.shape != (2 ** len(targets),) * 2:
        raise DimensionError(f"unitary of shape {u.shape} on {len(targets)} target qubits")
    if len(set(targets)) != len(targets):
        raise SizeError(f"repeated target qubits {targets}")
    return Gate("custom", targets, label, local=u)


def x_gate(qubit: int) -> Gate:
    return Gate("custom", (qubit,), f"X[{qubit}]", local=X)


@dataclass(frozen=True)
class Circuit:
    """Gates applied left to right on ``n1`` input qubits followed by ``n2`` output qubits."""

    n1: int
    n2: int
    gates: tuple[Gate, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "gates", tuple(self.gates))
        if self.n1 < 0 or self.n2 < 0 or not 1 <= self.num_qubits <= MAX_QUBITS:
            raise SizeError(f"bad register sizes n1={self.n1}, n2={self.n2}")
        for g in self.gates:
            g._check_range(self.num_qubits)

    @property
    def num_qubits(self) -> int:
        return self.n1 + self.n2

    def then(self, *gates: Gate) -> "Circuit":
        return Circuit(self.n1, self.n2, self.gates + gates)

    def unitary(self) -> np.ndarray:
        u = np.eye(2**self.num_qubits, dtype=complex)
        for g in self.gates:
            u = g.matrix(self.num_qubits) @ u
        return u

    def run_pure(self, psi: PureState) -> PureState:
        if psi.num_qubits != self.num_qubits:
            raise DimensionError(f"{psi.num_qubits}-qubit state on a {self.num_qubits}-qubit circuit")
        amps = psi.amplitudes.copy()
        for g in self.gates:
            amps = g.apply(amps, self.num_qubits)
        return PureState(amps)

    def run(self, state: PseudoPureState) -> PseudoPureState:
        return PseudoPureState(state.epsilon, self.run_pure(state.pure))

    def run_density(self, rho: DensityMatrix) -> DensityMatrix:
        """Gate-by-gate conjugation of a full density matrix."""
        for g in self.gates:
            rho = apply_unitary(rho, g.matrix(self.num_qubits))
        return rho
