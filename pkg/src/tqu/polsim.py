"""Monte Carlo model of the neutron polarimeter.

Each prepared state is analyzed with four ideal projectors, ``P_A^+``,
``P_A^-``, ``P_B^+`` and ``P_B^-``. The count behind projector ``P`` is
Poisson distributed with mean ``N0 * Tr(rho P) + background``.

Randomness: setting ``i`` of a run draws its four counts, in the order
``A+, A-, B+, B-``, from ``numpy.random.default_rng(SeedSequence([seed, i]))``
(``seed`` reduced modulo 2**64). Counts of one setting therefore do not
depend on how many other settings are simulated or in which order.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Dict, List, Sequence, Tuple

import numpy as np

from tqu.errors import ConfigError, ZeroCounts
from tqu.qmath import (
    BlochVector,
    PauliAxis,
    PreparationSetting,
    shannon_entropy,
    state_from_setting,
    std_dev,
)
from tqu.relations import ObservablePair

#: expectation values are clamped to this magnitude before differentiating
EDGE_CLAMP = 1.0 - 1e-9

_SEED_MASK = (1 << 64) - 1


class Sign(str, enum.Enum):
    PLUS = "+"
    MINUS = "-"


@dataclass(frozen=True)
class AnalyzerSetting:
    axis: PauliAxis
    sign: Sign


COUNT_KEYS: Tuple[Tuple[str, Sign], ...] = (
    ("A", Sign.PLUS),
    ("A", Sign.MINUS),
    ("B", Sign.PLUS),
    ("B", Sign.MINUS),
)


@dataclass(frozen=True)
class ExperimentConfig:
    pair: ObservablePair
    r: float
    settings: Sequence[PreparationSetting]
    counts_per_projector: float
    seed: int = 0
    background: float = 0.0

    def __post_init__(self):
        if not 0.0 <= self.r <= 1.0:
            raise ConfigError(f"r = {self.r} outside [0, 1]")
        if not self.counts_per_projector >= 1:
            raise ConfigError("counts_per_projector must be >= 1")
        if self.background < 0:
            raise ConfigError("background must be non-negative")
        for s in self.settings:
            if abs(s.r - self.r) > 1e-12:
                raise ConfigError(f"setting r = {s.r} does not match config r = {self.r}")
        object.__setattr__(self, "settings", tuple(self.settings))

    def analyzers(self) -> Dict[Tuple[str, Sign], AnalyzerSetting]:
        axes = {"A": self.pair.a, "B": self.pair.b}
        return {(label, sign): AnalyzerSetting(axes[label], sign) for label, sign in COUNT_KEYS}


@dataclass(frozen=True)
class CountRecord:
    setting: PreparationSetting
    counts: Dict[Tuple[str, Sign], int]

    def __post_init__(self):
        if any(c < 0 for c in self.counts.values()):
            raise ValueError("counts must be non-negative")

    def pair_counts(self, label: str) -> Tuple[int, int]:
        return self.counts[(label, Sign.PLUS)], self.counts[(label, Sign.MINUS)]


@dataclass(frozen=True)
class EstimatedPoint:
    """Estimated uncertainty point with one-sigma errors."""

    exp_a: float
    exp_b: float
    sd_a: float
    sd_b: float
    h_a: float
    h_b: float
    r: float
    theta: float
    phi: float
    err_exp_a: float
    err_exp_b: float
    err_sd_a: float
    err_sd_b: float
    err_h_a: float
    err_h_b: float
    # True when an expectation estimate hit |e| = 1 within EDGE_CLAMP
    boundary_estimate: bool = field(default=False)


def intensity(state: BlochVector, analyzer: AnalyzerSetting) -> float:
    """``Tr(rho P) = (1 +/- n.axis)/2``."""
    proj = float(np.dot(state.n, analyzer.axis.a))
    value = 0.5 * (1.0 + proj) if analyzer.sign is Sign.PLUS else 0.5 * (1.0 - proj)
    return min(1.0, max(0.0, value))


def setting_rng(seed: int, index: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence([int(seed) & _SEED_MASK, int(index)]))


def simulate_counts(config: ExperimentConfig) -> List[CountRecord]:
    analyzers = config.analyzers()
    records = []
    for index, setting in enumerate(config.settings):
        state = state_from_setting(setting)
        means = np.array(
            [
                config.counts_per_projector * intensity(state, analyzers[key]) + config.background
                for key in COUNT_KEYS
            ]
        )
        draws = setting_rng(config.seed, index).poisson(means)
        counts = {key: int(c) for key, c in zip(COUNT_KEYS, draws)}
        records.append(CountRecord(setting, counts))
    return records


def asymmetry(n_plus: int, n_minus: int) -> Tuple[float, float]:
    """Count asymmetry and its Poisson error ``2 sqrt(N+ N- / N**3)``."""
    total = n_plus + n_minus
    if total <= 0:
        raise ZeroCounts("no counts for this observable")
    exp = (n_plus - n_minus) / total
    err = 2.0 * math.sqrt(n_plus * n_minus / total**3)
    return exp, err


def _propagate(exp: float, err: float) -> Tuple[float, float, bool]:
    clamped = abs(exp) > EDGE_CLAMP
    e = max(-EDGE_CLAMP, min(EDGE_CLAMP, exp))
    d_sd = abs(e) / math.sqrt(1.0 - e * e)
    d_h = abs(0.5 * math.log2((1.0 - e) / (1.0 + e)))
    return d_sd * err, d_h * err, clamped


def estimate_point(rec: CountRecord) -> EstimatedPoint:
    """Plug-in estimates from the count asymmetries, first-order errors."""
    exp_a, err_a = asymmetry(*rec.pair_counts("A"))
    exp_b, err_b = asymmetry(*rec.pair_counts("B"))
    err_sd_a, err_h_a, edge_a = _propagate(exp_a, err_a)
    err_sd_b, err_h_b, edge_b = _propagate(exp_b, err_b)
    s = rec.setting
    return EstimatedPoint(
        exp_a=exp_a,
        exp_b=exp_b,
        sd_a=std_dev(exp_a),
        sd_b=std_dev(exp_b),
        h_a=shannon_entropy(exp_a),
        h_b=shannon_entropy(exp_b),
        r=s.r,
        theta=s.theta,
        phi=s.phi,
        err_exp_a=err_a,
        err_exp_b=err_b,
        err_sd_a=err_sd_a,
        err_sd_b=err_sd_b,
        err_h_a=err_h_a,
        err_h_b=err_h_b,
        boundary_estimate=edge_a or edge_b,
    )


def run_experiment(config: ExperimentConfig) -> List[EstimatedPoint]:
    return [estimate_point(rec) for rec in simulate_counts(config)]
