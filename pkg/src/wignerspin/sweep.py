"""Parameter sweeps over (alpha, theta) and the figure-data presets.

Rows are produced one alpha at a time (theta vectorized), so memory use does
not grow with the number of alpha steps.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from enum import Enum
from typing import IO, Iterable, Iterator, NamedTuple, Sequence

import numpy as np

from .entropy import shannon, vn_indistinguishable, von_neumann
from .errors import DomainError
from .states import PairWeights, reduced_dm_distinguishable
from .wigner import GeometryParams, pair_coeffs

#: Probe speed for the near-light-speed end of every figure preset.
SUPERREL_SPEED = 0.999
FIGURE_LOWER_BOUND = 0.1
DEFAULT_FIGURE_STEPS = 100
FLOAT_FORMAT = "%.12g"


class EntropyKind(str, Enum):
    VN_DISTINGUISHABLE = "vn_distinguishable"
    SHANNON = "shannon"
    VN_INDISTINGUISHABLE = "vn_indistinguishable"


#: Short names accepted on the command line.
KIND_ALIASES = {
    "vn": EntropyKind.VN_DISTINGUISHABLE,
    "shannon": EntropyKind.SHANNON,
    "vn-indist": EntropyKind.VN_INDISTINGUISHABLE,
}


@dataclass(frozen=True)
class GridRange:
    """Inclusive uniform grid ``lo .. hi`` with ``steps`` points (``steps = 1`` gives ``[lo]``)."""

    lo: float
    hi: float
    steps: int

    def __post_init__(self):
        if not (np.isfinite(self.lo) and np.isfinite(self.hi)):
            raise DomainError("grid bounds must be finite")
        if self.lo > self.hi:
            raise DomainError(f"grid lower bound {self.lo} exceeds upper bound {self.hi}")
        if int(self.steps) != self.steps or self.steps < 1:
            raise DomainError(f"grid steps must be a positive integer, got {self.steps}")

    @classmethod
    def parse(cls, text: str) -> "GridRange":
        """Parse ``"lo:hi:steps"``."""
        parts = text.split(":")
        if len(parts) != 3:
            raise DomainError(f"expected lo:hi:steps, got {text!r}")
        try:
            lo, hi, steps = float(parts[0]), float(parts[1]), int(parts[2])
        except ValueError as exc:
            raise DomainError(f"bad grid {text!r}: {exc}") from None
        return cls(lo, hi, steps)

    def values(self) -> np.ndarray:
        if self.steps == 1:
            return np.array([float(self.lo)])
        return np.linspace(self.lo, self.hi, int(self.steps))


@dataclass(frozen=True)
class SweepConfig:
    entropy_kind: EntropyKind
    p1: float
    phi: float
    alpha_range: GridRange
    theta_range: GridRange
    renormalize_shannon: bool = False

    def __post_init__(self):
        object.__setattr__(self, "entropy_kind", EntropyKind(self.entropy_kind))
        if not 0.0 <= self.p1 <= 1.0:
            raise DomainError(f"p1 must lie in [0, 1], got {self.p1}")
        if not (np.isfinite(self.phi) and self.phi >= 0.0):
            raise DomainError(f"phi must be a finite rapidity >= 0, got {self.phi}")
        if self.alpha_range.lo < 0.0:
            raise DomainError("alpha grid must be non-negative")

    @property
    def weights(self) -> PairWeights:
        return PairWeights.from_p1(self.p1)


class SweepRow(NamedTuple):
    """One grid point.  ``det`` is the determinant of the Bell-basis state behind
    ``entropy``: the distinguishable state for ``vn_distinguishable`` and
    ``shannon``, the diagonal antisymmetrized state for ``vn_indistinguishable``."""

    alpha: float
    theta: float
    entropy: float
    a0: float
    b0: float
    a_theta: float
    b_theta: float
    det: float


def evaluate(config: SweepConfig, alpha: float, thetas: np.ndarray):
    """Entropy, coefficients and determinant at one ``alpha`` across ``thetas``."""
    thetas = np.asarray(thetas, dtype=float)
    w0 = pair_coeffs(GeometryParams(config.phi, alpha, np.zeros_like(thetas)))
    wt = pair_coeffs(GeometryParams(config.phi, alpha, thetas))
    weights = config.weights
    kind = config.entropy_kind
    if kind is EntropyKind.VN_INDISTINGUISHABLE:
        entropy = vn_indistinguishable(weights, w0, wt)
        det = (weights.p1 * w0.a**2 + weights.p2 * wt.a**2) * (weights.p1 * w0.b**2 + weights.p2 * wt.b**2)
    else:
        rho = reduced_dm_distinguishable(weights, w0, wt)
        det = rho.det()
        if kind is EntropyKind.VN_DISTINGUISHABLE:
            entropy = von_neumann(rho)
        else:
            entropy = shannon(weights, w0, wt)
            if config.renormalize_shannon:
                entropy = entropy - 1.0
    return np.broadcast_to(entropy, thetas.shape), w0, wt, np.broadcast_to(det, thetas.shape)


def run_sweep(config: SweepConfig) -> Iterator[SweepRow]:
    """Yield rows in row-major order: alpha outer, theta inner."""
    thetas = config.theta_range.values()
    for alpha in config.alpha_range.values():
        entropy, w0, wt, det = evaluate(config, float(alpha), thetas)
        for j, theta in enumerate(thetas):
            yield SweepRow(
                float(alpha),
                float(theta),
                float(entropy[j]),
                float(w0.a[j]),
                float(w0.b[j]),
                float(wt.a[j]),
                float(wt.b[j]),
                float(det[j]),
            )


# figure id -> (entropy kind, p1)
FIGURES = {
    "fig2": (EntropyKind.VN_DISTINGUISHABLE, 0.5),
    "fig3": (EntropyKind.VN_DISTINGUISHABLE, 0.25),
    "fig4": (EntropyKind.SHANNON, 0.75),
    "fig5": (EntropyKind.SHANNON, 0.25),
    "fig6": (EntropyKind.SHANNON, 0.5),
    "fig7": (EntropyKind.VN_INDISTINGUISHABLE, 0.75),
    "fig8": (EntropyKind.VN_INDISTINGUISHABLE, 0.25),
    "fig9": (EntropyKind.VN_INDISTINGUISHABLE, 0.5),
}

_KIND_TITLES = {
    EntropyKind.VN_DISTINGUISHABLE: "von Neumann entropy, distinguishable pairs",
    EntropyKind.SHANNON: "Shannon entropy of z-spin outcomes",
    EntropyKind.VN_INDISTINGUISHABLE: "von Neumann entropy, indistinguishable pairs",
}


def figure_config(
    figure_id: str,
    grid_steps: int = DEFAULT_FIGURE_STEPS,
    speed: float = SUPERREL_SPEED,
    renormalize_shannon: bool = False,
) -> SweepConfig:
    """Preset: ``phi = atanh(speed)``, ``0.1 <= alpha <= atanh(speed)``, ``0.1 <= theta <= pi``."""
    if figure_id not in FIGURES:
        raise DomainError(f"unknown figure {figure_id!r}; choose from {', '.join(FIGURES)}")
    if not 0.0 < speed < 1.0:
        raise DomainError(f"speed must lie in (0, 1), got {speed}")
    kind, p1 = FIGURES[figure_id]
    top = float(np.arctanh(speed))
    return SweepConfig(
        entropy_kind=kind,
        p1=p1,
        phi=top,
        alpha_range=GridRange(FIGURE_LOWER_BOUND, top, grid_steps),
        theta_range=GridRange(FIGURE_LOWER_BOUND, float(np.pi), grid_steps),
        renormalize_shannon=renormalize_shannon,
    )


def _fmt(x: float) -> str:
    return FLOAT_FORMAT % x


def write_rows(
    rows: Iterable[SweepRow], stream: IO[str], fmt: str = "csv", columns: Sequence[str] = SweepRow._fields
) -> int:
    """Stream rows as CSV (header + ``%.12g``, LF) or JSON lines; returns the row count."""
    if fmt not in ("csv", "jsonl"):
        raise DomainError(f"unknown output format {fmt!r}")
    idx = [SweepRow._fields.index(c) for c in columns]
    n = 0
    if fmt == "csv":
        writer = csv.writer(stream, lineterminator="\n")
        writer.writerow(columns)
        for row in rows:
            writer.writerow([_fmt(row[i]) for i in idx])
            n += 1
    else:
        for row in rows:
            # round-trip through the CSV formatting so both outputs carry the same numbers
            record = {c: float(_fmt(row[i])) for c, i in zip(columns, idx)}
            stream.write(json.dumps(record) + "\n")
            n += 1
    return n


@dataclass(frozen=True)
class FigureData:
    figure_id: str
    config: SweepConfig
    csv: str
    plot_script: str


FIGURE_COLUMNS = ("alpha", "theta", "entropy")


def plot_script(figure_id: str, config: SweepConfig, data_path: str) -> str:
    """A gnuplot script drawing the surface stored in ``data_path``."""
    steps = config.theta_range.steps
    title = f"{_KIND_TITLES[config.entropy_kind]}, p1 = {config.p1:g}, p2 = {1 - config.p1:g}"
    return "\n".join(
        [
            f"# {figure_id}: {title}",
            "set datafile separator ','",
            f"set title '{title}'",
            "set xlabel 'alpha'",
            "set ylabel 'theta'",
            "set zlabel 'entropy [bits]'",
            "set hidden3d",
            f"set dgrid3d {steps},{steps}",
            f"splot '{data_path}' using 1:2:3 every ::1 with lines notitle",
            "",
        ]
    )


def emit_figure_data(
    figure_id: str,
    grid_steps: int = DEFAULT_FIGURE_STEPS,
    speed: float = SUPERREL_SPEED,
    data_path: str = "figure.csv",
    renormalize_shannon: bool = False,
) -> FigureData:
    """CSV (``alpha,theta,entropy``) for one figure preset plus its gnuplot script."""
    config = figure_config(figure_id, grid_steps, speed, renormalize_shannon)
    buf = io.StringIO()
    write_rows(run_sweep(config), buf, "csv", FIGURE_COLUMNS)
    return FigureData(figure_id, config, buf.getvalue(), plot_script(figure_id, config, data_path))
