"""Protocol instances of the Hadamard-then-oracle template, measurement and answer checking."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Callable, Iterator

import numpy as np

from ppqc.circuits import Circuit, Gate, hadamard, hadamard_on, oracle_gate, qft_gate, x_gate
from ppqc.errors import OracleError, ParameterError, SizeError
from ppqc.oracles import OracleFunction, modexp_oracle
from ppqc.states import MAX_QUBITS, PseudoPureState, PureState

MAX_ORDER_FINDING_N = 21


@dataclass(frozen=True, eq=False)
class ProtocolRun:
    circuit: Circuit
    initial: PseudoPureState
    final: PseudoPureState
    outcome_distribution: np.ndarray

    @property
    def epsilon(self) -> float:
        return self.initial.epsilon


@dataclass(frozen=True, eq=False)
class AnswerChecker:
    """Maps a measured basis index to correct (True) or incorrect (False)."""

    predicate: Callable[[int], bool]
    description: str = ""

    def __call__(self, outcome: int) -> bool:
        return bool(self.predicate(int(outcome)))

    def accept_mask(self, dim: int) -> np.ndarray:
        return np.fromiter((self(i) for i in range(dim)), dtype=bool, count=dim)

    def noise_acceptance(self, dim: int) -> float:
        """k / 2^n: probability that a uniformly random outcome is accepted."""
        return float(self.accept_mask(dim).sum()) / dim


ACCEPT_ALL = AnswerChecker(lambda i: True, "accept everything")
ACCEPT_NONE = AnswerChecker(lambda i: False, "accept nothing")


def build_protocol(f: OracleFunction, extra_gates=(), prep_gates=()) -> Circuit:
    """Hadamard layer on the input register, then U_f, then ``extra_gates``.

    ``prep_gates`` run first; the plain template leaves it empty.
    """
    if not isinstance(f, OracleFunction):
        raise OracleError(f"expected an OracleFunction, got {type(f).__name__}")
    if f.num_qubits > MAX_QUBITS:
        raise SizeError(f"{f.num_qubits} qubits exceeds the {MAX_QUBITS}-qubit budget")
    gates: list[Gate] = list(prep_gates)
    gates += [hadamard_on(range(f.n1)), oracle_gate(f)]
    gates += list(extra_gates)
    return Circuit(f.n1, f.n2, tuple(gates))


def ground_state(num_qubits: int) -> PureState:
    return PureState.ground(num_qubits)


def measurement_distribution(state: PseudoPureState) -> np.ndarray:
    """Computational-basis outcome probabilities, (1-eps)/2^n + eps |<i|psi>|^2."""
    p = np.clip(state.diagonal(), 0.0, None)
    return p


def execute(circuit: Circuit, epsilon: float) -> ProtocolRun:
    initial = PseudoPureState(epsilon, ground_state(circuit.num_qubits))
    final = circuit.run(initial)
    return ProtocolRun(circuit, initial, final, measurement_distribution(final))


def success_probability(run: ProtocolRun, checker: AnswerChecker) -> float:
    dist = run.outcome_distribution
    # summation roundoff can overshoot 1 by a few ulp
    return min(1.0, float(dist[checker.accept_mask(dist.size)].sum()))


# Deutsch-Jozsa


@dataclass(frozen=True, eq=False)
class DeutschJozsaResult:
    run: ProtocolRun
    checker: AnswerChecker
    constant: bool
    success_probability: float


def deutsch_jozsa_circuit(f: OracleFunction) -> Circuit:
    out = f.n1
    return build_protocol(
        f, prep_gates=(x_gate(out), hadamard(out)), extra_gates=(hadamard_on(range(f.n1)),)
    )


def deutsch_jozsa_checker(f: OracleFunction, constant: bool) -> AnswerChecker:
    # input register all zeros <=> declare constant
    def correct(i: int) -> bool:
        return ((i >> f.n2) == 0) == constant

    kind = "constant" if constant else "balanced"
    return AnswerChecker(correct, f"DJ verdict matches {kind}")


def run_deutsch_jozsa(n1: int, f: OracleFunction, epsilon: float) -> DeutschJozsaResult:
    if f.n1 != n1 or f.n2 != 1:
        raise OracleError(f"Deutsch-Jozsa needs an n1={n1}, n2=1 oracle, got n1={f.n1}, n2={f.n2}")
    if f.is_constant():
        constant = True
    elif f.is_balanced():
        constant = False
    else:
        raise OracleError(f"oracle {f.name!r} is neither constant nor balanced")
    run = execute(deutsch_jozsa_circuit(f), epsilon)
    checker = deutsch_jozsa_checker(f, constant)
    return DeutschJozsaResult(run, checker, constant, success_probability(run, checker))


# Order finding


def multiplicative_order(a: int, modulus: int) -> int:
    """Brute-force smallest r >= 1 with a^r = 1 (mod modulus)."""
    if gcd(a, modulus) != 1:
        raise ParameterError(f"gcd({a}, {modulus}) != 1")
    r, v = 1, a % modulus
    while v != 1 % modulus:
        v = v * a % modulus
        r += 1
    return r


def convergents(x: Fraction) -> Iterator[Fraction]:
    """Continued-fraction convergents of x, in order."""
    h0, h1, k0, k1 = 0, 1, 1, 0
    num, den = x.numerator, x.denominator
    while den:
        q, rem = divmod(num, den)
        h0, h1 = h1, q * h1 + h0
        k0, k1 = k1, q * k1 + k0
        yield Fraction(h1, k1)
        num, den = den, rem


def extract_period(y: int, n1: int, a: int, modulus: int) -> int | None:
    """Candidate order from a measured input-register value, or None.

    Convergent denominators below ``modulus`` are tried in increasing order;
    the first one with a^r = 1 (mod N) is reduced to its smallest divisor
    that still passes.
    """
    seen = set()
    for c in convergents(Fraction(int(y), 2**n1)):
        r = c.denominator
        if r >= modulus:
            break
        if r in seen:
            continue
        seen.add(r)
        if pow(a, r, modulus) == 1:
            for d in range(1, r + 1):
                if r % d == 0 and pow(a, d, modulus) == 1:
                    return d
    return None


def order_finding_registers(modulus: int) -> tuple[int, int]:
    """(n1, n2) with 2^n2 >= N and 2^n1 >= N^2, relaxed to 2^n1 >= N when over budget."""
    n2 = max(1, (modulus - 1).bit_length())
    n1 = max(1, (modulus**2 - 1).bit_length())
    if n1 + n2 > MAX_QUBITS:
        n1 = max(1, (modulus - 1).bit_length())
    return n1, n2


@dataclass(frozen=True, eq=False)
class OrderFindingResult:
    run: ProtocolRun
    checker: AnswerChecker
    modulus: int
    base: int
    true_order: int
    period: int | None
    samples: tuple[int, ...]
    success_probability: float


def order_finding_checker(a: int, modulus: int, n1: int, n2: int) -> AnswerChecker:
    def correct(i: int) -> bool:
        return extract_period(i >> n2, n1, a, modulus) is not None

    return AnswerChecker(correct, f"continued fractions then {a}^r = 1 mod {modulus}")


def run_order_finding(
    modulus: int, a: int, epsilon: float, shots: int = 10, seed: int = 0
) -> OrderFindingResult:
    """Simulate order finding for a mod N, sample ``shots`` outcomes and
    return the first period that passes the checker."""
    if modulus > MAX_ORDER_FINDING_N:
        raise SizeError(f"N={modulus} exceeds the desk-scale cap {MAX_ORDER_FINDING_N}")
    if modulus < 2:
        raise ParameterError(f"N must be at least 2, got {modulus}")
    if gcd(a, modulus) != 1:
        raise ParameterError(f"gcd({a}, {modulus}) != 1")
    n1, n2 = order_finding_registers(modulus)
    f = modexp_oracle(a % modulus, modulus, n1, n2)
    circuit = build_protocol(f, extra_gates=(qft_gate(range(n1), inverse=True),))
    run = execute(circuit, epsilon)
    checker = order_finding_checker(a, modulus, n1, n2)

    dist = run.outcome_distribution
    rng = np.random.default_rng(seed)
    samples = tuple(int(i) for i in rng.choice(dist.size, size=shots, p=dist / dist.sum()))
    period = None
    for i in samples:
        period = extract_period(i >> n2, n1, a, modulus)
        if period is not None:
            break
    return OrderFindingResult(
        run=run,
        checker=checker,
        modulus=modulus,
        base=a,
        true_order=multiplicative_order(a, modulus),
        period=period,
        samples=samples,
        success_probability=success_probability(run, checker),
    )
