"""Dynamics validation (bifurcation sweeps, Lyapunov exponents, phase
points) and cipher-quality metrics (MSE, PSNR, histogram, chi-square
uniformity, adjacent-pixel correlation), plus their CSV serializers.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, replace
from typing import Callable, Iterable

import numpy as np

from .cipher import PlainImage
from .errors import DimensionError, DivergenceError
from .maps import MapParams, generate_sequence, step

PEAK = 255.0
CHI2_BINS = 256

# chi-square critical value, df=255, alpha=0.05 (frozen from the inverse CDF)
CHI2_CRIT_DF255_P05 = 293.25


@dataclass(frozen=True)
class BifurcationPoint:
    r: float
    x: float
    diverged: bool = False


@dataclass(frozen=True)
class QualityReport:
    mse: float
    psnr: float
    chi_square: float
    histogram: np.ndarray


def mse(img_a: PlainImage, img_b: PlainImage) -> float:
    """Mean squared byte difference over all D*H*W positions."""
    if img_a.dims != img_b.dims:
        raise DimensionError(f"dims differ: {img_a.dims} vs {img_b.dims}")
    da = img_a.pixels.astype(np.float64)
    db = img_b.pixels.astype(np.float64)
    return float(np.mean((da - db) ** 2))


def psnr(mse_value: float) -> float:
    """10*log10(255^2 / MSE); returns +inf for MSE = 0."""
    if mse_value < 0:
        raise ValueError("MSE must be non-negative")
    if mse_value == 0:
        return math.inf
    return 10.0 * math.log10(PEAK * PEAK / mse_value)


def histogram(img: PlainImage) -> np.ndarray:
    """256 intensity bins; bins sum to the pixel count."""
    return np.bincount(img.pixels.reshape(-1), minlength=256)


def chi_square_uniformity(hist) -> float:
    """Chi-square statistic of a 256-bin histogram against the uniform law."""
    hist = np.asarray(hist, dtype=np.float64)
    n = hist.sum()
    if n <= 0:
        raise ValueError("zero-count histogram")
    expected = n / CHI2_BINS
    return float(((hist - expected) ** 2 / expected).sum())


def adjacent_correlation(img: PlainImage, direction: str) -> float:
    """Pearson correlation over adjacent pixel pairs, per direction."""
    px = img.pixels.astype(np.float64)
    if direction == "horizontal":
        if img.dims.width < 2:
            raise DimensionError("need >= 2 pixels horizontally")
        a, b = px[:, :, :-1], px[:, :, 1:]
    elif direction == "vertical":
        if img.dims.height < 2:
            raise DimensionError("need >= 2 pixels vertically")
        a, b = px[:, :-1, :], px[:, 1:, :]
    else:
        raise ValueError(f"unknown direction {direction!r}")
    a = a.reshape(-1)
    b = b.reshape(-1)
    if a.std() == 0 or b.std() == 0:
        raise ValueError("correlation undefined: zero variance in pair coordinates")
    return float(np.corrcoef(a, b)[0, 1])


def quality_report(plain: PlainImage, cipher: PlainImage) -> QualityReport:
    hist = histogram(cipher)
    m = mse(plain, cipher)
    return QualityReport(
        mse=m, psnr=psnr(m), chi_square=chi_square_uniformity(hist), histogram=hist
    )


def _r_grid(r_min: float, r_max: float, r_step: float) -> list[float]:
    if r_min > r_max:
        raise ValueError("r_min must be <= r_max")
    if r_step <= 0:
        raise ValueError("r_step must be positive")
    count = int(math.floor((r_max - r_min) / r_step + 1e-9)) + 1
    return [r_min + k * r_step for k in range(count)]


def bifurcation_sweep(
    params: MapParams,
    r_min: float,
    r_max: float,
    r_step: float,
    transient: int,
    samples: int,
) -> list[BifurcationPoint]:
    """Post-transient x samples for each r on the grid.

    Output stays rectangular: a divergent r contributes `samples` flagged
    rows with x = NaN instead of aborting the sweep.
    """
    if samples < 1:
        raise ValueError("samples must be >= 1")
    points: list[BifurcationPoint] = []
    for r in _r_grid(r_min, r_max, r_step):
        p = replace(params, r=r, transient=transient)
        try:
            seq = generate_sequence(p, samples)
        except DivergenceError:
            points.extend(
                BifurcationPoint(r=r, x=math.nan, diverged=True)
                for _ in range(samples)
            )
            continue
        points.extend(BifurcationPoint(r=r, x=float(x)) for x in seq.xs)
    return points


StepFn = Callable[[float, float], tuple[float, float]]


def lyapunov_from_step(
    step_fn: StepFn,
    state0: tuple[float, float],
    steps: int,
    transient: int = 0,
    d0: float = 1e-8,
) -> float:
    """Largest Lyapunov exponent by two-trajectory renormalization.

    A companion trajectory offset by d0 is advanced alongside the reference
    and rescaled back to distance d0 after every step; the estimate is the
    mean of ln(d1/d0).
    """
    if steps < 1:
        raise ValueError("steps must be >= 1")
    x, y = state0
    for _ in range(transient):
        x, y = step_fn(x, y)
    cx, cy = x + d0, y
    acc = 0.0
    for i in range(steps):
        x, y = step_fn(x, y)
        cx, cy = step_fn(cx, cy)
        if not (math.isfinite(x) and math.isfinite(y)):
            raise DivergenceError(i)
        d1 = math.hypot(cx - x, cy - y)
        acc += math.log(d1 / d0)
        scale = d0 / d1
        cx = x + (cx - x) * scale
        cy = y + (cy - y) * scale
    return acc / steps


def lyapunov_exponent(params: MapParams, steps: int) -> float:
    """Lyapunov estimate for one of the two built-in maps."""
    if steps < 1000:
        raise ValueError("steps must be >= 1000")
    return lyapunov_from_step(
        lambda x, y: step((x, y), params),
        (params.x0, params.y0),
        steps,
        transient=params.transient,
    )


def phase_points(params: MapParams, count: int) -> np.ndarray:
    """Post-transient (x, y) iterate pairs for scatter plotting; shape (count, 2)."""
    seq = generate_sequence(params, count)
    return np.column_stack([seq.xs, seq.ys])


def _fmt(v: float) -> str:
    return f"{v:.12g}"


def _write_rows(path, header: list[str], rows: Iterable[list[str]]) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        writer.writerows(rows)


def write_bifurcation_csv(path, points: list[BifurcationPoint]) -> None:
    _write_rows(path, ["r", "x"], ([_fmt(p.r), _fmt(p.x)] for p in points))


def write_phase_csv(path, points: np.ndarray) -> None:
    _write_rows(path, ["x", "y"], ([_fmt(x), _fmt(y)] for x, y in points))


def write_lyapunov_csv(path, rows: list[tuple[float, float]]) -> None:
    _write_rows(path, ["r", "lambda"], ([_fmt(r), _fmt(lam)] for r, lam in rows))


def write_histogram_csv(path, hist) -> None:
    _write_rows(
        path, ["value", "count"], ([str(v), str(int(c))] for v, c in enumerate(hist))
    )
