"""Figure datasets: boundary curves plus optional simulated points as CSV.

One CSV per ``(figure, r, family)`` named ``<figure>_r<r>_<family>.csv``.
Columns, in order::

    family, r, theta_rad, phi_rad, exp_a, exp_b, sd_a, sd_b, h_a, h_b
    [, est_exp_a, err_exp_a, est_exp_b, err_exp_b, est_sd_a, err_sd_a,
       est_sd_b, err_sd_b, est_h_a, err_h_a, est_h_b, err_h_b]

Floats are written with 12 significant digits and ``\\n`` line endings.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np

from tqu.boundary import (
    BoundaryFamily,
    great_circle_family,
    saturating_great_circle_range,
    sd_outline,
)
from tqu.polsim import EstimatedPoint, ExperimentConfig, run_experiment
from tqu.qmath import shannon_entropy, std_dev
from tqu.relations import ObservablePair

DEFAULT_R_LIST = (0.83, 0.94, 0.99)
DEFAULT_POINTS = 360

BASE_COLUMNS = ("family", "r", "theta_rad", "phi_rad", "exp_a", "exp_b", "sd_a", "sd_b", "h_a", "h_b")
SIM_COLUMNS = (
    "est_exp_a", "err_exp_a", "est_exp_b", "err_exp_b",
    "est_sd_a", "err_sd_a", "est_sd_b", "err_sd_b",
    "est_h_a", "err_h_a", "est_h_b", "err_h_b",
)  # fmt: skip

# figure id -> (a.b, measure, pure-state figure)
_FIGURES = {
    "Fig3a": (0.0, "ev", True),
    "Fig3b": (0.0, "sd", True),
    "Fig3c": (0.0, "entropy", True),
    "Fig4a": (0.5, "ev", True),
    "Fig4b": (0.5, "sd", True),
    "Fig4c": (0.5, "entropy", True),
    "Fig6a": (0.0, "ev", False),
    "Fig6b": (0.5, "ev", False),
    "Fig7a": (0.0, "sd", False),
    "Fig7b": (0.5, "sd", False),
    "Fig8a": (0.0, "entropy", False),
    "Fig8b": (0.5, "entropy", False),
}
FIGURE_IDS = tuple(_FIGURES)


@dataclass(frozen=True)
class FigureSpec:
    figure_id: str
    config: ObservablePair
    r_list: Tuple[float, ...]
    num_points: int
    measure: str

    @classmethod
    def for_figure(
        cls, figure_id: str, r_list: Optional[Sequence[float]] = None, num_points: int = DEFAULT_POINTS
    ) -> "FigureSpec":
        """The figure id fixes the observable pair; ``r_list`` defaults per figure."""
        if figure_id not in _FIGURES:
            raise ValueError(f"unknown figure {figure_id!r}; choose from {', '.join(FIGURE_IDS)}")
        dot_ab, measure, pure = _FIGURES[figure_id]
        if r_list is None:
            r_list = (1.0,) if pure else DEFAULT_R_LIST
        return cls(figure_id, ObservablePair.from_dot(dot_ab), tuple(float(r) for r in r_list), num_points, measure)

    @property
    def outline(self) -> bool:
        """Figs. 3/4 (b, c) close the SD/entropy region; the others draw single curves."""
        return self.measure != "ev" and _FIGURES[self.figure_id][2]

    def families(self, r: float) -> List[BoundaryFamily]:
        if self.measure == "ev":
            return [great_circle_family(self.config, r, self.num_points)]
        if self.outline:
            return sd_outline(self.config, r, self.num_points)
        arc = saturating_great_circle_range(self.config)
        return [great_circle_family(self.config, r, self.num_points, theta_range=arc)]


def fmt(x: float) -> str:
    # + 0.0 folds -0.0 into 0.0
    return format(float(x) + 0.0, ".12g")


def theory_rows(family: BoundaryFamily) -> List[List[str]]:
    exp_a, exp_b = family.expectations()
    exp_a = np.clip(exp_a, -1.0, 1.0)
    exp_b = np.clip(exp_b, -1.0, 1.0)
    sd_a, sd_b = std_dev(exp_a), std_dev(exp_b)
    h_a, h_b = shannon_entropy(exp_a), shannon_entropy(exp_b)
    rows = []
    for i, s in enumerate(family.settings):
        rows.append(
            [family.name.value, fmt(family.r), fmt(s.theta), fmt(s.phi)]
            + [fmt(v[i]) for v in (exp_a, exp_b, sd_a, sd_b, h_a, h_b)]
        )
    return rows


def estimate_columns(p: EstimatedPoint) -> List[str]:
    values = (
        p.exp_a, p.err_exp_a, p.exp_b, p.err_exp_b,
        p.sd_a, p.err_sd_a, p.sd_b, p.err_sd_b,
        p.h_a, p.err_h_a, p.h_b, p.err_h_b,
    )  # fmt: skip
    return [fmt(v) for v in values]


def family_csv(family: BoundaryFamily, estimates: Optional[Sequence[EstimatedPoint]] = None) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    header = list(BASE_COLUMNS) + (list(SIM_COLUMNS) if estimates is not None else [])
    writer.writerow(header)
    rows = theory_rows(family)
    if estimates is not None:
        rows = [row + estimate_columns(p) for row, p in zip(rows, estimates)]
    writer.writerows(rows)
    return buf.getvalue()


def derived_seed(seed: int, *path: int) -> int:
    """Independent 63-bit seed for one output file."""
    state = np.random.SeedSequence([int(seed) & ((1 << 64) - 1), *path]).generate_state(1, np.uint64)
    return int(state[0] >> np.uint64(1))


def simulate_family(family: BoundaryFamily, n0: float, seed: int) -> List[EstimatedPoint]:
    return run_experiment(ExperimentConfig(family.config, family.r, family.settings, n0, seed))


def csv_name(figure_id: str, r: float, family: BoundaryFamily) -> str:
    return f"{figure_id}_r{r:.2f}_{family.name.value}.csv"


def write_figure(
    spec: FigureSpec,
    out_dir: Path,
    simulate: Optional[float] = None,
    seed: int = 0,
) -> List[Path]:
    """Write every CSV of ``spec`` into ``out_dir``; returns the paths in write order."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    fig_index = FIGURE_IDS.index(spec.figure_id)
    paths = []
    for r_index, r in enumerate(spec.r_list):
        for fam_index, family in enumerate(spec.families(r)):
            estimates = None
            if simulate is not None:
                estimates = simulate_family(family, simulate, derived_seed(seed, fig_index, r_index, fam_index))
            path = out_dir / csv_name(spec.figure_id, r, family)
            with open(path, "w", newline="") as fh:
                fh.write(family_csv(family, estimates))
            paths.append(path)
    return paths


def read_csv(path) -> List[dict]:
    """Rows of a figure CSV with numeric columns converted to float."""
    with open(path, newline="") as fh:
        rows = list(csv.DictReader(fh))
    for row in rows:
        for key, value in row.items():
            if key != "family":
                row[key] = float(value)
    return rows


def parse_figure_ids(items: Iterable[str]) -> List[str]:
    """Expand ``all`` and bare figure numbers (``3`` -> Fig3a..Fig3c)."""
    out: List[str] = []
    for item in items:
        key = item.strip()
        if key.lower() == "all":
            out.extend(FIGURE_IDS)
            continue
        if not key.startswith("Fig"):
            key = "Fig" + key
        if key in _FIGURES:
            out.append(key)
            continue
        matches = [f for f in FIGURE_IDS if f[:-1] == key]
        if not matches:
            raise ValueError(f"unknown figure {item!r}")
        out.extend(matches)
    seen = set()
    return [f for f in out if not (f in seen or seen.add(f))]


def consistent_row(row: dict, tol: float = 1e-9) -> bool:
    """exp, sd and entropy columns describe the same point."""
    ok = True
    for x in ("a", "b"):
        e, sd, h = row[f"exp_{x}"], row[f"sd_{x}"], row[f"h_{x}"]
        ok &= abs(sd * sd + e * e - 1.0) <= tol
        ok &= abs(h - shannon_entropy(max(-1.0, min(1.0, e)))) <= tol
        ok &= math.isfinite(e) and abs(e) <= 1.0 + tol
    return bool(ok)
