"""Two 2D chaotic maps, sequence generation, byte quantization and
argsort-derived permutation vectors.

Map 1:  x' = sin(x) + cos(y),  y' = y - r*tanh(x)
Map 2:  x' = x + y^2 - a*r,    y' = b*x^2   (then wrapped into [-pi, pi))

Both maps update simultaneously: every right-hand side uses the previous
state. Map 2 diverges rapidly without bounding, so each raw update is
reduced modulo 2*pi into [-pi, pi); Map 1 needs no reduction (x is bounded
by construction and y enters only through the 2*pi-periodic cosine).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import DivergenceError, InvalidStateError

TWO_PI = 2.0 * math.pi


class MapId(enum.Enum):
    MAP1 = 1
    MAP2 = 2


@dataclass(frozen=True)
class MapParams:
    """Control parameters and seed of one chaotic map.

    `a` and `b` are Map 2 parameters and are ignored by Map 1.
    `transient` is the number of burn-in iterations discarded before any
    output is drawn.
    """

    map_id: MapId
    r: float
    a: float = 0.0
    b: float = 0.0
    x0: float = 0.1
    y0: float = 0.1
    transient: int = 1000

    def __post_init__(self):
        if self.transient < 0:
            raise ValueError("transient must be non-negative")
        for name in ("r", "a", "b", "x0", "y0"):
            if not math.isfinite(getattr(self, name)):
                raise ValueError(f"parameter {name} must be finite")


def default_map1() -> MapParams:
    return MapParams(map_id=MapId.MAP1, r=17.0)


def default_map2() -> MapParams:
    return MapParams(map_id=MapId.MAP2, r=2.35, a=0.5, b=0.3)


@dataclass(frozen=True)
class ChaoticSequence:
    xs: np.ndarray
    ys: np.ndarray

    def __post_init__(self):
        if len(self.xs) != len(self.ys):
            raise ValueError("xs and ys must have equal length")

    def __len__(self) -> int:
        return len(self.xs)


def wrap_angle(v: float) -> float:
    """Reduce v into [-pi, pi) modulo 2*pi."""
    return (v + math.pi) % TWO_PI - math.pi


def _check_state(x: float, y: float) -> None:
    if not (math.isfinite(x) and math.isfinite(y)):
        raise InvalidStateError(f"non-finite state ({x}, {y})")


def step_map1(state: tuple[float, float], params: MapParams) -> tuple[float, float]:
    """One simultaneous update of Map 1."""
    x, y = state
    _check_state(x, y)
    return math.sin(x) + math.cos(y), y - params.r * math.tanh(x)


def step_map2(state: tuple[float, float], params: MapParams) -> tuple[float, float]:
    """One simultaneous update of Map 2, with the [-pi, pi) reduction."""
    x, y = state
    _check_state(x, y)
    return wrap_angle(x + y * y - params.a * params.r), wrap_angle(params.b * x * x)


def step(state: tuple[float, float], params: MapParams) -> tuple[float, float]:
    if params.map_id is MapId.MAP1:
        return step_map1(state, params)
    return step_map2(state, params)


def generate_sequence(params: MapParams, length: int) -> ChaoticSequence:
    """Iterate the selected map from (x0, y0), discard `transient` states,
    record the next `length` states.

    Deterministic for fixed params. Raises DivergenceError naming the
    iteration index if the state ever becomes non-finite (unreachable for
    Map 2 given the wrap, possible for pathological Map 1 parameters).
    """
    if length < 1:
        raise ValueError("length must be >= 1")
    xs = np.empty(length)
    ys = np.empty(length)
    x, y = params.x0, params.y0
    transient = params.transient
    total = transient + length
    # hot loop: bind everything locally
    sin, cos, tanh, isfinite = math.sin, math.cos, math.tanh, math.isfinite
    if params.map_id is MapId.MAP1:
        r = params.r
        for i in range(total):
            x, y = sin(x) + cos(y), y - r * tanh(x)
            if not (isfinite(x) and isfinite(y)):
                raise DivergenceError(i)
            if i >= transient:
                xs[i - transient] = x
                ys[i - transient] = y
    else:
        ar = params.a * params.r
        b = params.b
        pi = math.pi
        for i in range(total):
            x, y = (x + y * y - ar + pi) % TWO_PI - pi, (b * x * x + pi) % TWO_PI - pi
            if not (isfinite(x) and isfinite(y)):
                raise DivergenceError(i)
            if i >= transient:
                xs[i - transient] = x
                ys[i - transient] = y
    return ChaoticSequence(xs=xs, ys=ys)


def quantize_to_bytes(values) -> np.ndarray:
    """Map reals to bytes: mod(round(1e12 * v), 256).

    Round is half-away-from-zero and the modulo is mathematical (result in
    [0, 256)), so e.g. -1e-12 quantizes to 255.
    """
    arr = np.asarray(values, dtype=float)
    if not np.all(np.isfinite(arr)):
        raise InvalidStateError("non-finite value in quantizer input")
    scaled = arr * 1e12
    rounded = np.sign(scaled) * np.floor(np.abs(scaled) + 0.5)
    return (rounded % 256.0).astype(np.uint8)


def permutation_from_sequence(values) -> np.ndarray:
    """Index permutation that sorts `values` ascending, ties kept stable."""
    arr = np.asarray(values, dtype=float)
    if arr.size == 0:
        raise ValueError("empty input")
    if not np.all(np.isfinite(arr)):
        raise InvalidStateError("non-finite value in permutation input")
    return np.argsort(arr, kind="stable")
