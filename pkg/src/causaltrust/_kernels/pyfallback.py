"""NumPy implementation of the grid kernels.

Used when the compiled extension is unavailable (or forced via
CAUSALTRUST_KERNELS=python). Both backends implement the same contract:
inputs are 1-D float64 arrays of cell heights on a uniform grid over [0, 1],
cell width dx = 1/len(values). Validation lives in causaltrust.density;
kernels assume well-formed input.
"""

from __future__ import annotations

import numpy as np


def normalize(values: np.ndarray) -> np.ndarray:
    """Scale heights so the midpoint-rule mass sum(v) * dx equals 1."""
    m = values.shape[0]
    mass = values.sum() / m
    return values / mass


def smooth(values: np.ndarray, eps: float) -> np.ndarray:
    """Raise every cell to at least eps, then renormalize to unit mass."""
    return normalize(np.maximum(values, eps))


def entropy(values: np.ndarray) -> float:
    """Differential entropy via the midpoint rule: -sum(v * ln v) * dx.

    Cells with v = 0 contribute 0 (the v*ln(v) -> 0 limit).
    """
    m = values.shape[0]
    pos = values[values > 0.0]
    return float(-(pos * np.log(pos)).sum() / m)


def kl(p: np.ndarray, q: np.ndarray, eps: float) -> float:
    """KL divergence sum(p * ln(p/q')) * dx with q smoothed to q' first.

    Only p's support contributes; q is floored at eps and renormalized.
    Computed as ln(p) - ln(q') rather than ln(p/q'): the ratio of a denormal
    p-cell to a large q-cell underflows to 0 and would poison the sum with
    -inf, while both logs stay finite.
    """
    m = p.shape[0]
    qs = smooth(q, eps)
    mask = p > 0.0
    pp = p[mask]
    return float((pp * (np.log(pp) - np.log(qs[mask]))).sum() / m)


def fuse(p: np.ndarray, q: np.ndarray, eps: float) -> np.ndarray:
    """Normalized pointwise product of two grids, smoothed with eps.

    The raw product is normalized before smoothing; otherwise a high-conflict
    product (whose raw peak can sit far below eps) would be flattened into the
    floor. A zero-mass product is repaired by the smoothing floor alone.
    """
    m = p.shape[0]
    prod = p * q
    mass = prod.sum() / m
    if mass > 0.0:
        prod = prod / mass
    return smooth(prod, eps)
