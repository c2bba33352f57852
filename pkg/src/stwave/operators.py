"""Banded differentiation operators built from connection coefficients.

An operator is a sparse n x n matrix: translation-invariant interior rows
from the eigenvector-derived stencil, one-sided polynomial rows near either
end, all scaled by spacing^-alpha.  Spatial operators contract with the
first field index, temporal operators with the second.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field

import numpy as np
import scipy.sparse as sp

from .stencils import (
    StencilError,
    boundary_closures,
    interior_connection_coefficients,
)
from .transforms import FieldGrid2D


@dataclass
class DerivativeOperator:
    alpha: int
    direction: str  # "x" or "t"
    n: int
    spacing: float
    interior_stencil: np.ndarray  # scaled, offsets -(p-2) .. (p-2)
    boundary_rows: np.ndarray  # scaled left-edge rows, shape (p-2, p)
    matrix: sp.csr_matrix = field(repr=False)

    @property
    def half_width(self) -> int:
        return (len(self.interior_stencil) - 1) // 2

    def as_dense(self) -> np.ndarray:
        return self.matrix.toarray()


def build_operator(p: int, alpha: int, n: int, spacing: float,
                   direction: str = "x") -> DerivativeOperator:
    """Assemble the order-p, derivative-alpha operator on n nodes."""
    if alpha not in (1, 2):
        raise StencilError(f"only first and second derivatives are supported, got alpha={alpha}")
    if direction not in ("x", "t"):
        raise StencilError(f"direction must be 'x' or 't', got {direction!r}")
    if n < 2 * (p - 1) + 1:
        raise StencilError(f"need n >= {2 * (p - 1) + 1} nodes for p={p}, got {n}")
    if spacing <= 0.0:
        raise StencilError(f"spacing must be positive, got {spacing}")

    scale = spacing ** (-alpha)
    # Interior weights: row entry at column offset o is r[-o] for the
    # eigenvector r_m = phi^(alpha)(m).
    r = interior_connection_coefficients(p, alpha)
    stencil = r[::-1] * scale
    closures = boundary_closures(p, alpha) * scale
    half = (len(stencil) - 1) // 2

    mat = sp.lil_matrix((n, n))
    for i in range(half):
        mat[i, :p] = closures[i]
        mat[n - 1 - i, n - p:] = closures[i][::-1] * (-1.0) ** alpha
    offsets = np.arange(-half, half + 1)
    for i in range(half, n - half):
        mat[i, i + offsets] = stencil
    return DerivativeOperator(
        alpha=alpha,
        direction=direction,
        n=n,
        spacing=spacing,
        interior_stencil=stencil,
        boundary_rows=closures,
        matrix=mat.tocsr(),
    )


def apply_operator(op: DerivativeOperator, field_values):
    """Differentiate a 2D field (or a 1D sample vector along its own axis).

    Accepts a FieldGrid2D or a plain array and returns the same kind.
    """
    if isinstance(field_values, FieldGrid2D):
        out = apply_operator(op, field_values.values)
        return FieldGrid2D(out, field_values.level, field_values.p_x, field_values.p_t)
    v = np.asarray(field_values, dtype=float)
    if v.ndim == 1:
        if v.shape[0] != op.n:
            raise StencilError(f"operator size {op.n} does not match samples {v.shape[0]}")
        return op.matrix @ v
    axis = 0 if op.direction == "x" else 1
    if v.shape[axis] != op.n:
        raise StencilError(
            f"operator size {op.n} does not match field extent {v.shape[axis]} "
            f"in direction {op.direction!r}"
        )
    if op.direction == "x":
        return op.matrix @ v
    return v @ op.matrix.T


def export_stencils_csv(op: DerivativeOperator, path) -> None:
    """Debug dump: one line per row with offsets and weights."""
    mat = op.matrix.tocsr()
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["row", "offsets", "weights"])
        for i in range(op.n):
            cols = mat.indices[mat.indptr[i]:mat.indptr[i + 1]]
            vals = mat.data[mat.indptr[i]:mat.indptr[i + 1]]
            writer.writerow([
                i,
                " ".join(str(c - i) for c in cols),
                " ".join(repr(v) for v in vals),
            ])


@dataclass
class OperatorSet:
    """The three operators a 1D+time second-order PDE needs."""

    dx: DerivativeOperator
    dxx: DerivativeOperator
    dt: DerivativeOperator


def build_operator_set(p_x: int, p_t: int, nx: int, nt: int,
                       dx: float, dt: float) -> OperatorSet:
    return OperatorSet(
        dx=build_operator(p_x, 1, nx, dx, direction="x"),
        dxx=build_operator(p_x, 2, nx, dx, direction="x"),
        dt=build_operator(p_t, 1, nt, dt, direction="t"),
    )
