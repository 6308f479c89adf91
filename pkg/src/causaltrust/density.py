"""Discrete probability densities on a uniform grid over [0, 1].

A grid with M cells stores nonnegative heights v_i at midpoints
x_i = (i + 0.5) / M with cell width dx = 1/M. A normalized grid satisfies
sum(v_i) * dx = 1, so the heights approximate a probability density function
and entropy / Kullback-Leibler integrals reduce to midpoint-rule sums:

    entropy(v) = -sum_i v_i * ln(v_i) * dx          (0 * ln 0 := 0)
    kl(p, q)   =  sum_{i: p_i > 0} p_i * ln(p_i / q_i) * dx

Both use the natural logarithm. Entropy is differential entropy, so sharp
densities go negative; the uniform density has entropy exactly 0. KL smooths
only its second argument with a small floor so the ratio stays finite.

The heavy sums run in a compiled kernel when available (see
causaltrust._kernels); grids themselves are immutable value objects, safe to
share across threads.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.special import betaln

from causaltrust import _kernels
from causaltrust.errors import DensityError, GridMismatchError

DEFAULT_M = 1000
EPS_SMOOTH = 1e-9
MASS_TOL = 1e-9


@dataclass(frozen=True)
class DensityGrid:
    """Normalized density heights on the uniform midpoint grid."""

    values: np.ndarray = field(repr=False)

    def __post_init__(self) -> None:
        arr = np.asarray(self.values, dtype=np.float64)
        if arr.ndim != 1:
            raise DensityError(f"grid values must be 1-D, got shape {arr.shape}")
        if arr.shape[0] < 2:
            raise DensityError(f"grid needs at least 2 cells, got {arr.shape[0]}")
        if not np.all(np.isfinite(arr)):
            raise DensityError("grid values must be finite")
        if np.any(arr < 0.0):
            raise DensityError("grid values must be nonnegative")
        mass = arr.sum() / arr.shape[0]
        if abs(mass - 1.0) > MASS_TOL:
            raise DensityError(
                f"grid mass must be 1 within {MASS_TOL:g}, got {mass!r}"
            )
        arr = arr.copy()
        arr.setflags(write=False)
        object.__setattr__(self, "values", arr)

    @property
    def m(self) -> int:
        return int(self.values.shape[0])

    @property
    def dx(self) -> float:
        return 1.0 / self.values.shape[0]

    def midpoints(self) -> np.ndarray:
        m = self.values.shape[0]
        return (np.arange(m) + 0.5) / m

    def mean(self) -> float:
        """First moment sum(v_i * x_i) * dx of the density."""
        return float((self.values * self.midpoints()).sum() / self.m)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, DensityGrid):
            return NotImplemented
        return self.values.shape == other.values.shape and bool(
            np.array_equal(self.values, other.values)
        )

    def __hash__(self) -> int:  # frozen dataclass with array payload
        return hash((self.values.shape[0], self.values.tobytes()))


def _require_same_grid(p: DensityGrid, q: DensityGrid) -> None:
    if p.m != q.m:
        raise GridMismatchError(f"grid sizes differ: {p.m} != {q.m}")


def uniform(m: int = DEFAULT_M) -> DensityGrid:
    """The uniform density: every height 1.0. Its entropy is exactly 0."""
    if m < 2:
        raise DensityError(f"grid needs at least 2 cells, got {m}")
    return DensityGrid(np.ones(m))


def normalize(values: np.ndarray | DensityGrid) -> DensityGrid:
    """Scale raw nonnegative heights to unit mass.

    Raises DensityError for a degenerate input (zero or negative mass).
    """
    arr = values.values if isinstance(values, DensityGrid) else np.asarray(
        values, dtype=np.float64
    )
    if arr.ndim != 1 or arr.shape[0] < 2:
        raise DensityError("normalize expects a 1-D grid with at least 2 cells")
    if not np.all(np.isfinite(arr)) or np.any(arr < 0.0):
        raise DensityError("normalize expects finite nonnegative heights")
    if arr.sum() <= 0.0:
        raise DensityError("degenerate density: mass is zero")
    return DensityGrid(_kernels.normalize(np.ascontiguousarray(arr)))


def smooth(g: DensityGrid, eps: float = EPS_SMOOTH) -> DensityGrid:
    """Floor every cell at eps, then renormalize. Repairs empty support."""
    if eps <= 0.0:
        raise DensityError(f"smoothing floor must be positive, got {eps!r}")
    return DensityGrid(_kernels.smooth(g.values, eps))


def entropy(g: DensityGrid) -> float:
    """Differential entropy -sum(v * ln v) * dx; negative for sharp grids."""
    return _kernels.entropy(g.values)


def kl(p: DensityGrid, q: DensityGrid, eps: float = EPS_SMOOTH) -> float:
    """KL divergence of p from q over p's support, natural log.

    q is floored at eps and renormalized internally; p is used as given.
    The result is nonnegative up to roundoff (Gibbs' inequality).
    """
    _require_same_grid(p, q)
    if eps <= 0.0:
        raise DensityError(f"smoothing floor must be positive, got {eps!r}")
    return _kernels.kl(p.values, q.values, eps)


def fuse(p: DensityGrid, q: DensityGrid, eps: float = EPS_SMOOTH) -> DensityGrid:
    """Logarithmic opinion pool: normalized pointwise product, smoothed.

    The uniform grid is the neutral element. Fusing two Beta-shaped grids
    multiplies their kernels, e.g. Beta(2,2) with itself gives Beta(3,3).
    A zero-mass product (extreme conflict) is repaired by the smoothing
    floor instead of raising.
    """
    _require_same_grid(p, q)
    if eps <= 0.0:
        raise DensityError(f"smoothing floor must be positive, got {eps!r}")
    return DensityGrid(_kernels.fuse(p.values, q.values, eps))


def beta_pdf_grid(a: float, b: float, m: int = DEFAULT_M) -> DensityGrid:
    """Beta(a, b) sampled at the cell midpoints and renormalized.

    Midpoints never touch 0 or 1, so the heights stay finite for any
    positive shapes. Raises DensityError unless a > 0 and b > 0.
    """
    if not (a > 0.0 and b > 0.0) or not (math.isfinite(a) and math.isfinite(b)):
        raise DensityError(f"Beta shapes must be positive finite, got a={a!r} b={b!r}")
    if m < 2:
        raise DensityError(f"grid needs at least 2 cells, got {m}")
    x = (np.arange(m) + 0.5) / m
    logpdf = (a - 1.0) * np.log(x) + (b - 1.0) * np.log1p(-x) - betaln(a, b)
    # exp underflows to 0 in far tails of very sharp shapes; that is fine,
    # the midpoint mass is dominated by the peak and renormalization fixes it
    return normalize(np.exp(logpdf))


def squash_kl(d: float) -> float:
    """Map a divergence in [0, inf) to [0, 1) via 1 - exp(-d).

    Strictly increasing; 0 maps to 0. Raises DensityError for negative d
    beyond roundoff (true KL never is); tiny negative roundoff clamps to 0.
    """
    if not math.isfinite(d) or d < -1e-9:
        raise DensityError(f"divergence must be nonnegative, got {d!r}")
    return max(0.0, 1.0 - math.exp(-d))


def normalize_entropy(h: float, h_min: float, h_max: float) -> float:
    """Affinely rescale h into [0, 1] using the lexicon entropy range.

    Values outside [h_min, h_max] clamp to the boundary: a posterior sharper
    than every adverb prior maps to 0, flatter than all of them maps to 1.
    Raises DensityError when the range is degenerate (h_min >= h_max).
    """
    if not (h_min < h_max):
        raise DensityError(
            f"degenerate entropy range: h_min={h_min!r} h_max={h_max!r}"
        )
    t = (h - h_min) / (h_max - h_min)
    return min(1.0, max(0.0, t))
