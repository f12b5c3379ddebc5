"""Repetition counts: the 1/p law, its Monte Carlo check, and NMR sample-size scaling."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from ppqc.entanglement import separability_bound
from ppqc.errors import ParameterError

MAX_DRAWS_PER_TRIAL = 10**7
ORDER_ONE_CONFIDENCE = 0.99
_PHILOX_BLOCK = 1 << 20


def _check_p(p: float) -> float:
    p = float(p)
    if not 0.0 < p <= 1.0:
        raise ParameterError(f"success probability must lie in (0, 1], got {p!r}")
    return p


def _check_seed(seed: int) -> int:
    if not 0 <= int(seed) < 2**64:
        raise ParameterError(f"seed must be an unsigned 64-bit integer, got {seed!r}")
    return int(seed)


def expected_repetitions(p: float) -> float:
    return 1.0 / _check_p(p)


def repetitions_for_confidence(p: float, confidence: float = ORDER_ONE_CONFIDENCE) -> int:
    """Smallest r with 1 - (1 - p)^r >= confidence."""
    p = _check_p(p)
    if p == 1.0:
        return 1
    r = math.ceil(math.log1p(-confidence) / math.log1p(-p))
    # guard the ceiling against roundoff in either direction
    while r > 1 and 1 - (1 - p) ** (r - 1) >= confidence:
        r -= 1
    while 1 - (1 - p) ** r < confidence:
        r += 1
    return r


@dataclass(frozen=True)
class RepetitionEstimate:
    p: float
    expected_repetitions: float
    monte_carlo_mean: float
    trials: int
    seed: int
    stderr: float
    cap_hits: int = 0

    @property
    def z_score(self) -> float:
        if self.stderr == 0:
            return 0.0 if self.monte_carlo_mean == self.expected_repetitions else math.inf
        return (self.monte_carlo_mean - self.expected_repetitions) / self.stderr


def trial_uniforms(seed: int, start: int, count: int) -> np.ndarray:
    """Uniforms for trials ``start .. start+count-1`` of the Philox stream keyed by ``seed``.

    Draw ``i`` depends only on ``(seed, i)``, so any chunking of the trial
    range reproduces the same values.
    """
    bg = np.random.Philox(key=_check_seed(seed))
    # Philox4x64 yields 4 doubles per counter step
    q, r = divmod(start, 4)
    bg.advance(q)
    u = np.random.Generator(bg).random(count + r)
    return u[r:]


def geometric_counts(p: float, u: np.ndarray) -> np.ndarray:
    """Trials until first success by inversion: smallest k with P(K <= k) >= 1 - u."""
    if p == 1.0:
        return np.ones(u.shape, dtype=np.int64)
    k = np.ceil(np.log1p(-u) / math.log1p(-p))
    return np.maximum(k, 1).astype(np.int64)


def monte_carlo_repetitions(p: float, trials: int, seed: int = 0) -> RepetitionEstimate:
    """Simulate ``trials`` repeat-until-success runs and average the counts."""
    p = _check_p(p)
    seed = _check_seed(seed)
    if trials < 1:
        raise ParameterError(f"trials must be >= 1, got {trials}")
    total = 0
    cap_hits = 0
    for start in range(0, trials, _PHILOX_BLOCK):
        counts = geometric_counts(p, trial_uniforms(seed, start, min(_PHILOX_BLOCK, trials - start)))
        over = counts > MAX_DRAWS_PER_TRIAL
        cap_hits += int(over.sum())
        total += int(np.minimum(counts, MAX_DRAWS_PER_TRIAL).sum())
    return RepetitionEstimate(
        p=p,
        expected_repetitions=1.0 / p,
        monte_carlo_mean=total / trials,
        trials=trials,
        seed=seed,
        stderr=math.sqrt((1 - p) / p**2 / trials),
        cap_hits=cap_hits,
    )


@dataclass(frozen=True)
class NmrScalingRow:
    n: int
    epsilon: float
    sample_lower_bound: float

    @property
    def epsilon_exact(self) -> Fraction:
        return Fraction(self.n, 2**self.n)

    @property
    def bound_exact(self) -> Fraction:
        return Fraction(2**self.n, self.n)


def nmr_scaling_table(max_n: int) -> list[NmrScalingRow]:
    """Rows n = 1..max_n with epsilon = n / 2^n (unit constant) and bound 1/epsilon."""
    if not 1 <= max_n <= 64:
        raise ParameterError(f"max_n must lie in [1, 64], got {max_n}")
    return [NmrScalingRow(n, n / 2**n, 2**n / n) for n in range(1, max_n + 1)]


@dataclass(frozen=True)
class ThresholdRow:
    n2: int
    epsilon: float
    bound: float
    repetitions_at_bound: float
    entangled: bool


def threshold_repetition_curve(n2_range, epsilons) -> list[ThresholdRow]:
    """For each (n2, epsilon): the bound, 1/bound = 1 + 2^n2, and whether epsilon
    lies above the bound (projected state necessarily entangled)."""
    rows = []
    for n2 in n2_range:
        bound = separability_bound(n2)
        reps = expected_repetitions(bound)
        for eps in epsilons:
            rows.append(ThresholdRow(n2, float(eps), bound, reps, float(eps) > bound))
    return rows
