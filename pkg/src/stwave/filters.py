"""Interpolating filter banks and one-dimensional wavelet transforms.

The transforms are the interpolating ("midpoint prediction") kind: coarse
coefficients are the even-indexed samples, details are the odd samples minus
an order-p Lagrange prediction from neighboring even samples.  One-sided
stencils of the same order cover the boundary region, so no accuracy is lost
at the edges.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .stencils import (
    SUPPORTED_ORDERS,
    StencilError,
    lagrange_cardinal_values,
    midpoint_prediction_weights,
    one_sided_prediction_weights,
)


class TransformError(ValueError):
    """Raised for inputs a transform cannot accept."""


@dataclass(frozen=True)
class FilterBank:
    """Prediction stencils for one basis order.

    ``prediction_weights`` is the centered midpoint stencil (length p).
    ``boundary_weights`` holds one row per one-sided odd point near the left
    edge (p/2 - 1 rows of length p, on the p left-most coarse nodes); the
    right edge uses these rows mirrored.
    """

    order: int
    prediction_weights: np.ndarray
    boundary_weights: np.ndarray = field(repr=False)

    def __post_init__(self):
        self.prediction_weights.setflags(write=False)
        self.boundary_weights.setflags(write=False)


@lru_cache(maxsize=None)
def build_filter_bank(p: int) -> FilterBank:
    """Construct the order-p interpolating filter bank.

    Supported orders are 4, 6 and 8.  Weights are derived in exact rational
    arithmetic and converted to float once.
    """
    if p not in SUPPORTED_ORDERS:
        raise StencilError(f"unsupported basis order p={p}; supported: {SUPPORTED_ORDERS}")
    interior = np.array([float(w) for w in midpoint_prediction_weights(p)])
    boundary = np.array(
        [[float(w) for w in one_sided_prediction_weights(p, i)] for i in range(p // 2 - 1)]
    )
    return FilterBank(order=p, prediction_weights=interior, boundary_weights=boundary)


@lru_cache(maxsize=None)
def _fallback_rows(p: int, n_coarse: int) -> np.ndarray:
    """Prediction rows when fewer than p coarse nodes exist (tiny inputs).

    Uses all n_coarse nodes, one full row per odd point.  Only reachable for
    inputs below the level-1 grid size; order degrades to n_coarse there.
    """
    rows = []
    nodes = list(range(n_coarse))
    for i in range(n_coarse - 1):
        rows.append([float(w) for w in lagrange_cardinal_values(nodes, i + 0.5)])
    return np.array(rows)


def _predict(coarse: np.ndarray, bank: FilterBank) -> np.ndarray:
    """Predict the odd (midpoint) samples from coarse samples along axis 0."""
    p = bank.order
    n_coarse = coarse.shape[0]
    m = n_coarse - 1  # number of odd points
    if n_coarse < p:
        return _fallback_rows(p, n_coarse) @ coarse

    out_shape = (m,) + coarse.shape[1:]
    pred = np.empty(out_shape, dtype=coarse.dtype)
    nb = p // 2 - 1  # one-sided rows per edge

    # Interior odd point i uses coarse[i - p/2 + 1 : i + p/2 + 1]; for the
    # k-th interior point (i = nb + k) the stencil starts at coarse[k].
    w = bank.prediction_weights
    interior = np.zeros((m - 2 * nb,) + coarse.shape[1:], dtype=coarse.dtype)
    for s in range(p):
        interior += w[s] * coarse[s : s + m - 2 * nb]
    pred[nb : m - nb] = interior

    if nb:
        pred[:nb] = bank.boundary_weights @ coarse[:p]
        # Mirrored rows act on the p right-most nodes in reversed order.
        pred[m - nb :] = bank.boundary_weights[::-1, ::-1] @ coarse[-p:]
    return pred


def _check_analysis_length(n: int, p: int) -> None:
    if n % 2 == 0:
        raise TransformError(f"analysis needs an odd number of samples, got {n}")
    if n < p + 1:
        raise TransformError(f"need at least p + 1 = {p + 1} samples, got {n}")


def fwt_1d(samples, bank: FilterBank):
    """One analysis step: (coarse, details).

    Coarse coefficients are the even samples; detail k is the odd sample
    2k + 1 minus its prediction from the coarse samples.
    """
    samples = np.asarray(samples, dtype=float)
    _check_analysis_length(samples.shape[0], bank.order)
    coarse = samples[::2].copy()
    details = samples[1::2] - _predict(coarse, bank)
    return coarse, details


def bwt_1d(coarse, details, bank: FilterBank):
    """One synthesis step, the exact inverse of :func:`fwt_1d`."""
    coarse = np.asarray(coarse, dtype=float)
    details = np.asarray(details, dtype=float)
    if details.shape[0] != coarse.shape[0] - 1:
        raise TransformError(
            f"need len(details) == len(coarse) - 1, got {details.shape[0]} and {coarse.shape[0]}"
        )
    n = 2 * coarse.shape[0] - 1
    out = np.empty((n,) + coarse.shape[1:], dtype=float)
    out[::2] = coarse
    out[1::2] = _predict(coarse, bank) + details
    return out
