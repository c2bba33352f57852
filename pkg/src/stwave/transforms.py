"""Two-dimensional (space x time) wavelet transforms on dense fields.

A dense level-j field holds 2^j * p + 1 collocation values per direction;
because the analysis side of the interpolating family is point evaluation,
those values double as the scaling coefficients.  The 2D transforms are
tensor products of the 1D passes: along x for every time column, along t for
every spatial row.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .filters import FilterBank, TransformError, build_filter_bank, bwt_1d, fwt_1d, _predict


def _nodes(level: int, p: int) -> int:
    return (1 << level) * p + 1


@dataclass
class FieldGrid2D:
    """Dense field samples f(x_k, t_n) at one resolution level.

    ``values`` is (N_x, N_t) with the spatial index first;
    N_q = 2^level * p_q + 1 in each direction.
    """

    values: np.ndarray
    level: int
    p_x: int
    p_t: int

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=float)
        if self.level < 1:
            raise TransformError(f"level must be >= 1, got {self.level}")
        expected = (_nodes(self.level, self.p_x), _nodes(self.level, self.p_t))
        if self.values.shape != expected:
            raise TransformError(
                f"values shape {self.values.shape} does not match level {self.level} "
                f"grid {expected}"
            )

    @property
    def nx(self) -> int:
        return self.values.shape[0]

    @property
    def nt(self) -> int:
        return self.values.shape[1]

    def check_finite(self) -> "FieldGrid2D":
        if not np.all(np.isfinite(self.values)):
            raise FloatingPointError("field contains non-finite values")
        return self


@dataclass
class DetailField:
    """One analysis step of a level-j field.

    ``coarse`` lives at level j - 1; the three detail subbands are indexed by
    type: detail in x only, in t only, and in both directions.
    """

    coarse: FieldGrid2D
    detail_x: np.ndarray
    detail_t: np.ndarray
    detail_xt: np.ndarray

    def subbands(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        return self.detail_x, self.detail_t, self.detail_xt

    def coefficient_count(self) -> int:
        return (
            self.coarse.values.size
            + self.detail_x.size
            + self.detail_t.size
            + self.detail_xt.size
        )


def _banks(field: FieldGrid2D) -> tuple[FilterBank, FilterBank]:
    return build_filter_bank(field.p_x), build_filter_bank(field.p_t)


def fwt_2d(field: FieldGrid2D) -> DetailField:
    """Analyze one level: split into a coarse field and three detail subbands."""
    if field.level < 2:
        raise TransformError("2D analysis needs level >= 2 so the coarse grid stays valid")
    bank_x, bank_t = _banks(field)
    v = field.values
    # Pass along x (axis 0) for every time column.
    coarse_x = v[::2, :]
    det_x = v[1::2, :] - _predict(coarse_x, bank_x)
    # Pass along t (axis 1) on both pieces.
    cc = coarse_x[:, ::2]
    ct = coarse_x[:, 1::2] - _predict(cc.T, bank_t).T
    dc = det_x[:, ::2]
    dd = det_x[:, 1::2] - _predict(dc.T, bank_t).T
    coarse = FieldGrid2D(np.ascontiguousarray(cc), field.level - 1, field.p_x, field.p_t)
    return DetailField(coarse=coarse, detail_x=np.ascontiguousarray(dc),
                       detail_t=np.ascontiguousarray(ct), detail_xt=np.ascontiguousarray(dd))


def bwt_2d(d: DetailField) -> FieldGrid2D:
    """Synthesize one level; exact inverse of :func:`fwt_2d`."""
    c = d.coarse
    bank_x, bank_t = _banks(c)
    # Undo the t pass on the two x pieces.
    cc = c.values
    coarse_x = np.empty((cc.shape[0], 2 * cc.shape[1] - 1))
    coarse_x[:, ::2] = cc
    coarse_x[:, 1::2] = (_predict(cc.T, bank_t).T + d.detail_t)
    det_x = np.empty((d.detail_xt.shape[0], coarse_x.shape[1]))
    det_x[:, ::2] = d.detail_x
    det_x[:, 1::2] = _predict(d.detail_x.T, bank_t).T + d.detail_xt
    # Undo the x pass.
    out = np.empty((2 * coarse_x.shape[0] - 1, coarse_x.shape[1]))
    out[::2, :] = coarse_x
    out[1::2, :] = _predict(coarse_x, bank_x) + det_x
    return FieldGrid2D(out, c.level + 1, c.p_x, c.p_t)


def prolongate(field: FieldGrid2D) -> FieldGrid2D:
    """Lift a field one level up by synthesis with zero details.

    Values at coincident (even) nodes are preserved exactly; new nodes carry
    the order-p interpolated values.
    """
    bank_x, bank_t = _banks(field)
    v = field.values
    fine_x = np.empty((2 * v.shape[0] - 1, v.shape[1]))
    fine_x[::2, :] = v
    fine_x[1::2, :] = _predict(v, bank_x)
    out = np.empty((fine_x.shape[0], 2 * v.shape[1] - 1))
    out[:, ::2] = fine_x
    out[:, 1::2] = _predict(fine_x.T, bank_t).T
    return FieldGrid2D(out, field.level + 1, field.p_x, field.p_t)


def estimate_error(field: FieldGrid2D) -> float:
    """Relative detail-coefficient error estimate.

    Max-norm of the detail subbands of one analysis step, normalized by the
    max-norm of the field.  Scales like the interpolation error of the
    representation, so halving the grid spacing divides it by about 2^p.
    """
    fmax = float(np.max(np.abs(field.values)))
    if fmax == 0.0:
        return 0.0
    d = fwt_2d(field)
    dmax = max(float(np.max(np.abs(s))) if s.size else 0.0 for s in d.subbands())
    return dmax / fmax
