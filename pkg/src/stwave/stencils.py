"""Exact rational derivation of interpolation and differentiation stencils.

Everything here is computed with ``fractions.Fraction`` and converted to
floating point exactly once, by the callers that assemble operators.  This
keeps round-off out of the stencil weights themselves, so polynomial
exactness tests probe the algorithm and not the eigensolver.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

import numpy as np

SUPPORTED_ORDERS = (4, 6, 8)

# Highest derivative each basis order can represent, limited by the
# continuity class of the underlying interpolating scaling function.
MAX_DERIVATIVE = {4: 1, 6: 2, 8: 3}


class StencilError(ValueError):
    """Raised for unsupported (order, derivative) requests."""


def _check_order(p: int) -> None:
    if p not in SUPPORTED_ORDERS:
        raise StencilError(f"unsupported basis order p={p}; supported: {SUPPORTED_ORDERS}")


def _check_order_alpha(p: int, alpha: int) -> None:
    _check_order(p)
    if alpha < 1:
        raise StencilError(f"derivative order must be >= 1, got alpha={alpha}")
    if alpha > MAX_DERIVATIVE[p]:
        raise StencilError(
            f"basis order p={p} is only C^{MAX_DERIVATIVE[p]}; cannot build alpha={alpha}"
        )


# ---------------------------------------------------------------------------
# Lagrange machinery over Fractions
# ---------------------------------------------------------------------------

def _poly_mul(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        for j, bj in enumerate(b):
            out[i + j] += ai * bj
    return out


def _poly_derivative(c: list[Fraction], order: int) -> list[Fraction]:
    for _ in range(order):
        c = [Fraction(k) * c[k] for k in range(1, len(c))]
        if not c:
            c = [Fraction(0)]
    return c


def _poly_eval(c: list[Fraction], x: Fraction) -> Fraction:
    acc = Fraction(0)
    for ck in reversed(c):
        acc = acc * x + ck
    return acc


def _cardinal_poly(nodes: list[Fraction], i: int) -> list[Fraction]:
    """Coefficients (ascending) of the i-th Lagrange cardinal polynomial."""
    c = [Fraction(1)]
    for s, xs in enumerate(nodes):
        if s == i:
            continue
        denom = nodes[i] - xs
        c = _poly_mul(c, [-xs / denom, Fraction(1) / denom])
    return c


def lagrange_cardinal_values(nodes, x) -> list[Fraction]:
    """Values of the Lagrange cardinal polynomials through ``nodes`` at ``x``."""
    nodes = [Fraction(n) for n in nodes]
    x = Fraction(x)
    return [_poly_eval(_cardinal_poly(nodes, i), x) for i in range(len(nodes))]


def lagrange_cardinal_derivatives(nodes, x, order: int) -> list[Fraction]:
    """Order-th derivative of each cardinal polynomial, evaluated at ``x``."""
    nodes = [Fraction(n) for n in nodes]
    x = Fraction(x)
    return [
        _poly_eval(_poly_derivative(_cardinal_poly(nodes, i), order), x)
        for i in range(len(nodes))
    ]


# ---------------------------------------------------------------------------
# Interpolating midpoint prediction
# ---------------------------------------------------------------------------

def midpoint_prediction_weights(p: int) -> list[Fraction]:
    """Centered midpoint interpolation weights on p equispaced points.

    The nodes sit at odd offsets -(p-1), ..., -1, 1, ..., (p-1) from the
    midpoint (coarse spacing 2); the weights are the cardinal values at 0.
    """
    if p % 2 != 0 or p < 2:
        raise StencilError(f"prediction order must be a positive even integer, got {p}")
    nodes = [Fraction(2 * s - (p - 1)) for s in range(p)]
    return lagrange_cardinal_values(nodes, Fraction(0))


def one_sided_prediction_weights(p: int, i: int, n_nodes: int | None = None) -> list[Fraction]:
    """Weights predicting the midpoint between coarse nodes i and i+1.

    Uses the ``n_nodes`` left-most coarse points (default p).  Positions in
    coarse units: nodes 0..n_nodes-1, evaluation at i + 1/2.
    """
    w = p if n_nodes is None else n_nodes
    nodes = [Fraction(s) for s in range(w)]
    return lagrange_cardinal_values(nodes, Fraction(2 * i + 1, 2))


@lru_cache(maxsize=None)
def refinement_filter(p: int) -> dict[int, Fraction]:
    """Two-scale filter h of the order-p interpolating family: h_k = phi(k/2)."""
    _check_order(p)
    w = midpoint_prediction_weights(p)
    h = {0: Fraction(1)}
    # phi(m + 1/2) equals the prediction weight of node 0 in the stencil
    # centered between m and m+1, i.e. w[p//2 - 1 - m] for valid m.
    for m in range(-(p // 2), p // 2):
        h[2 * m + 1] = w[p // 2 - 1 - m]
    return h


# ---------------------------------------------------------------------------
# Connection coefficients (interior differentiation stencils)
# ---------------------------------------------------------------------------

def _solve_rational(rows: list[list[Fraction]], rhs: list[Fraction], n: int) -> list[Fraction]:
    """Solve an overdetermined consistent rational system by elimination."""
    aug = [row[:] + [b] for row, b in zip(rows, rhs)]
    pivots: list[tuple[int, int]] = []
    r = 0
    for col in range(n):
        pivot = next((k for k in range(r, len(aug)) if aug[k][col] != 0), None)
        if pivot is None:
            continue
        aug[r], aug[pivot] = aug[pivot], aug[r]
        pv = aug[r][col]
        aug[r] = [v / pv for v in aug[r]]
        for k in range(len(aug)):
            if k != r and aug[k][col] != 0:
                f = aug[k][col]
                aug[k] = [vk - f * vr for vk, vr in zip(aug[k], aug[r])]
        pivots.append((r, col))
        r += 1
    if r < n:
        raise StencilError("stencil system is rank deficient; eigensolve did not pin a stencil")
    for k in range(r, len(aug)):
        if aug[k][n] != 0:
            raise StencilError("stencil system is inconsistent; eigensolve failed")
    x = [Fraction(0)] * n
    for row, col in pivots:
        x[col] = aug[row][n]
    return x


@lru_cache(maxsize=None)
def interior_connection_coefficients_exact(p: int, alpha: int) -> tuple[Fraction, ...]:
    """Translation-invariant differentiation weights r_m = phi^(alpha)(m).

    r is the eigenvector, at eigenvalue 2^-alpha, of the two-scale operator
    A[m, n] = h[2m - n] built from the refinement filter, normalized by the
    moment condition sum_m m^alpha r_m = (-1)^alpha alpha!.  Entries are
    indexed m = -(p-2) .. (p-2).
    """
    _check_order_alpha(p, alpha)
    h = refinement_filter(p)
    half = p - 2
    idx = list(range(-half, half + 1))
    n = len(idx)
    lam = Fraction(1, 2 ** alpha)

    rows = []
    rhs = []
    # (A - 2^-alpha I) r = 0 over the compact support.
    for m in idx:
        row = []
        for nn in idx:
            a = h.get(2 * m - nn, Fraction(0))
            if nn == m:
                a -= lam
            row.append(a)
        rows.append(row)
        rhs.append(Fraction(0))
    # Moment conditions: annihilate monomials below alpha, scale at alpha.
    fact = 1
    for k in range(1, alpha + 1):
        fact *= k
    for k in range(alpha + 1):
        rows.append([Fraction(m) ** k for m in idx])
        rhs.append(Fraction((-1) ** alpha * fact) if k == alpha else Fraction(0))

    sol = _solve_rational(rows, rhs, n)
    return tuple(sol)


def interior_connection_coefficients(p: int, alpha: int) -> np.ndarray:
    """Float64 interior stencil, offsets -(p-2) .. (p-2)."""
    exact = interior_connection_coefficients_exact(p, alpha)
    return np.array([float(v) for v in exact])


@lru_cache(maxsize=None)
def boundary_closures_exact(p: int, alpha: int) -> tuple[tuple[Fraction, ...], ...]:
    """One-sided differentiation rows for the first p-2 grid points.

    Row i holds the alpha-th derivative at node i of the degree-(p-1)
    Lagrange interpolant through nodes 0..p-1 (unit spacing).  Rows at the
    far end are these rows reversed with sign (-1)^alpha.
    """
    _check_order_alpha(p, alpha)
    half = p - 2
    nodes = list(range(p))
    return tuple(
        tuple(lagrange_cardinal_derivatives(nodes, Fraction(i), alpha)) for i in range(half)
    )


def boundary_closures(p: int, alpha: int) -> np.ndarray:
    """Float64 one-sided rows, shape (p-2, p), for the left boundary."""
    exact = boundary_closures_exact(p, alpha)
    return np.array([[float(v) for v in row] for row in exact])
