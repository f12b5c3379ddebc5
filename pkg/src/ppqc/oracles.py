"""Truth-table oracles f: {0,1}^n1 -> {0,1}^n2 and a few named builtins."""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from pathlib import Path

import numpy as np

from ppqc.errors import IoError, OracleError, ParameterError


@dataclass(frozen=True)
class OracleFunction:
    """Explicit truth table; ``table[x]`` is the integer value of f(x)."""

    n1: int
    n2: int
    table: tuple[int, ...]
    name: str = "custom"

    def __post_init__(self):
        if self.n1 < 1 or self.n2 < 1:
            raise OracleError(f"register sizes must be positive, got n1={self.n1}, n2={self.n2}")
        table = tuple(int(v) for v in self.table)
        object.__setattr__(self, "table", table)
        if len(table) != 2**self.n1:
            raise OracleError(f"truth table has {len(table)} entries, expected 2^{self.n1}")
        bad = [v for v in table if not 0 <= v < 2**self.n2]
        if bad:
            raise OracleError(f"value {bad[0]} does not fit in {self.n2} output bits")

    def __call__(self, x: int) -> int:
        return self.table[x]

    @property
    def num_qubits(self) -> int:
        return self.n1 + self.n2

    def is_constant(self) -> bool:
        return len(set(self.table)) == 1

    def is_balanced(self) -> bool:
        """Single-output-bit case only: exactly half the inputs map to 1."""
        return self.n2 == 1 and sum(self.table) * 2 == len(self.table)

    def to_array(self) -> np.ndarray:
        return np.asarray(self.table, dtype=np.int64)


def constant_oracle(n1: int, n2: int, value: int = 0) -> OracleFunction:
    return OracleFunction(n1, n2, (value,) * 2**n1, name=f"constant:{value}")


def parity_oracle(n1: int, n2: int = 1) -> OracleFunction:
    return OracleFunction(n1, n2, tuple(bin(x).count("1") % 2 for x in range(2**n1)), name="parity")


def identity_oracle(n1: int, n2: int | None = None) -> OracleFunction:
    """f(x) = x mod 2^n2; injective when n2 >= n1."""
    n2 = n1 if n2 is None else n2
    return OracleFunction(n1, n2, tuple(x % 2**n2 for x in range(2**n1)), name="identity")


def modexp_oracle(a: int, modulus: int, n1: int, n2: int) -> OracleFunction:
    if modulus < 2:
        raise ParameterError(f"modulus must be at least 2, got {modulus}")
    if gcd(a, modulus) != 1:
        raise ParameterError(f"gcd({a}, {modulus}) != 1")
    if modulus > 2**n2:
        raise OracleError(f"modulus {modulus} does not fit in {n2} output bits")
    return OracleFunction(
        n1, n2, tuple(pow(a, x, modulus) for x in range(2**n1)), name=f"modexp:{a}:{modulus}"
    )


def read_truth_table(path) -> OracleFunction:
    """Parse the ``n1=<int> n2=<int>`` header followed by one value per line."""
    path = Path(path)
    try:
        lines = path.read_text().splitlines()
    except OSError as exc:
        raise IoError(path, exc.strerror or str(exc)) from exc
    lines = [ln.strip() for ln in lines if ln.strip()]
    if not lines:
        raise OracleError(f"{path}: empty truth-table file")
    header = dict(tok.split("=", 1) for tok in lines[0].split() if "=" in tok)
    try:
        n1, n2 = int(header["n1"]), int(header["n2"])
        values = tuple(int(v) for v in lines[1:])
    except (KeyError, ValueError) as exc:
        raise OracleError(f"{path}: malformed truth-table file ({exc})") from exc
    return OracleFunction(n1, n2, values, name=str(path))


def write_truth_table(f: OracleFunction, path) -> None:
    text = f"n1={f.n1} n2={f.n2}\n" + "".join(f"{v}\n" for v in f.table)
    Path(path).write_text(text)


def parse_oracle(spec: str, n1: int, n2: int) -> OracleFunction:
    """Resolve a named builtin (``parity``, ``constant:<v>``, ``identity``,
    ``modexp:<a>:<N>``) or a truth-table file path."""
    if spec == "parity":
        return parity_oracle(n1, n2)
    if spec == "identity":
        return identity_oracle(n1, n2)
    if spec.startswith("constant:"):
        try:
            value = int(spec.split(":", 1)[1])
        except ValueError:
            raise OracleError(f"bad constant oracle spec {spec!r}") from None
        return constant_oracle(n1, n2, value)
    if spec.startswith("modexp:"):
        parts = spec.split(":")
        try:
            a, modulus = int(parts[1]), int(parts[2])
        except (IndexError, ValueError):
            raise OracleError(f"bad modexp oracle spec {spec!r}") from None
        return modexp_oracle(a, modulus, n1, n2)
    path = Path(spec)
    if path.suffix or path.exists() or "/" in spec:
        f = read_truth_table(path)
        if (f.n1, f.n2) != (n1, n2):
            raise OracleError(f"{path}: table is n1={f.n1} n2={f.n2}, expected n1={n1} n2={n2}")
        return f
    raise OracleError(f"unknown oracle {spec!r}")
