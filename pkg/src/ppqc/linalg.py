"""Dense complex linear algebra on bipartite Hilbert spaces.

Matrices are plain ``numpy`` complex arrays. Qubit 0 is the most significant
bit of a basis index, so for a split ``(dim_a, dim_b)`` the index of
``|i>_A |j>_B`` is ``i * dim_b + j``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal

import numpy as np

from ppqc.errors import DimensionError, NotHermitianError, NotUnitaryError

HERMITIAN_TOL = 1e-10
UNITARY_TOL = 1e-10

Subsystem = Literal["A", "B"]


@dataclass(frozen=True)
class SubsystemSplit:
    dim_a: int
    dim_b: int

    def __post_init__(self):
        if self.dim_a < 1 or self.dim_b < 1:
            raise DimensionError(f"subsystem dimensions must be positive, got {self.dim_a}x{self.dim_b}")

    @property
    def dim(self) -> int:
        return self.dim_a * self.dim_b

    @classmethod
    def qubits(cls, n_a: int, n_b: int) -> "SubsystemSplit":
        return cls(2**n_a, 2**n_b)


def as_matrix(a) -> np.ndarray:
    m = np.asarray(a, dtype=complex)
    if m.ndim != 2:
        raise DimensionError(f"expected a 2-d matrix, got shape {m.shape}")
    return m


def _check_split(rho: np.ndarray, split: SubsystemSplit) -> None:
    if rho.shape != (split.dim, split.dim):
        raise DimensionError(
            f"matrix of shape {rho.shape} does not match split {split.dim_a}x{split.dim_b}"
        )


def tensor_product(a, b) -> np.ndarray:
    return np.kron(as_matrix(a), as_matrix(b))


def partial_trace(rho, split: SubsystemSplit, keep: Subsystem = "A") -> np.ndarray:
    """Reduced matrix on subsystem ``keep`` after tracing out the other one."""
    rho = as_matrix(rho)
    _check_split(rho, split)
    t = rho.reshape(split.dim_a, split.dim_b, split.dim_a, split.dim_b)
    if keep == "A":
        return np.einsum("ijkj->ik", t)
    if keep == "B":
        return np.einsum("ijil->jl", t)
    raise ValueError(f"keep must be 'A' or 'B', got {keep!r}")


def partial_transpose(rho, split: SubsystemSplit, which: Subsystem = "B") -> np.ndarray:
    rho = as_matrix(rho)
    _check_split(rho, split)
    t = rho.reshape(split.dim_a, split.dim_b, split.dim_a, split.dim_b)
    if which == "B":
        t = t.transpose(0, 3, 2, 1)
    elif which == "A":
        t = t.transpose(2, 1, 0, 3)
    else:
        raise ValueError(f"which must be 'A' or 'B', got {which!r}")
    return t.reshape(split.dim, split.dim)


def hermitian_deviation(h) -> float:
    h = as_matrix(h)
    if h.shape[0] != h.shape[1]:
        raise DimensionError(f"expected a square matrix, got shape {h.shape}")
    return float(np.max(np.abs(h - h.conj().T))) if h.size else 0.0


def is_hermitian(h, tol: float = HERMITIAN_TOL) -> bool:
    return hermitian_deviation(h) <= tol


def unitary_deviation(u) -> float:
    u = as_matrix(u)
    if u.shape[0] != u.shape[1]:
        raise DimensionError(f"expected a square matrix, got shape {u.shape}")
    return float(np.max(np.abs(u @ u.conj().T - np.eye(u.shape[0]))))


def check_unitary(u, tol: float = UNITARY_TOL) -> np.ndarray:
    u = as_matrix(u)
    dev = unitary_deviation(u)
    if dev > tol:
        raise NotUnitaryError(f"U U^dagger deviates from identity by {dev:.3g}")
    return u


def eigvalsh(h, tol: float = HERMITIAN_TOL) -> np.ndarray:
    """Ascending eigenvalues of a Hermitian matrix (symmetrized before solving)."""
    h = as_matrix(h)
    dev = hermitian_deviation(h)
    if dev > tol:
        raise NotHermitianError(f"matrix deviates from Hermitian by {dev:.3g}")
    # LAPACK heevd is deterministic for a fixed input and thread count.
    return np.linalg.eigvalsh((h + h.conj().T) / 2)


def min_eigenvalue(h, tol: float = HERMITIAN_TOL) -> float:
    return float(eigvalsh(h, tol)[0])
