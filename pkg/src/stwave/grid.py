"""Spacetime grid description and degree-of-freedom bookkeeping.

Nodes are flattened column-stacked with the spatial index fastest:
flat = k_x + N_x * k_t (``ravel(order="F")`` on an (N_x, N_t) array).  The
partition splits flat indices into unknown interior U, spatial boundary
columns B (k_x in {0, N_x-1}, k_t >= 1) and the initial-time row I (k_t = 0);
the t = 0 corners belong to I.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np


class GridError(ValueError):
    """Raised for invalid grid construction requests."""


@dataclass(frozen=True)
class GridSpec:
    x_lo: float
    x_hi: float
    t_final: float
    level: int
    p_x: int
    p_t: int

    def __post_init__(self):
        if self.x_hi <= self.x_lo:
            raise GridError(f"degenerate spatial domain [{self.x_lo}, {self.x_hi}]")
        if self.t_final <= 0.0:
            raise GridError(f"time horizon must be positive, got {self.t_final}")
        if self.level < 1:
            raise GridError(f"level must be >= 1, got {self.level}")

    @property
    def nx(self) -> int:
        return (1 << self.level) * self.p_x + 1

    @property
    def nt(self) -> int:
        return (1 << self.level) * self.p_t + 1

    @property
    def n_nodes(self) -> int:
        return self.nx * self.nt

    @property
    def dx(self) -> float:
        return (self.x_hi - self.x_lo) / ((1 << self.level) * self.p_x)

    @property
    def dt(self) -> float:
        return self.t_final / ((1 << self.level) * self.p_t)

    @property
    def x(self) -> np.ndarray:
        return self.x_lo + self.dx * np.arange(self.nx)

    @property
    def t(self) -> np.ndarray:
        return self.dt * np.arange(self.nt)

    def at_level(self, level: int) -> "GridSpec":
        return GridSpec(self.x_lo, self.x_hi, self.t_final, level, self.p_x, self.p_t)


def build_grid(x_domain, t_final: float, level: int, p_x: int, p_t: int) -> GridSpec:
    x_lo, x_hi = map(float, x_domain)
    return GridSpec(x_lo, x_hi, float(t_final), level, p_x, p_t)


@dataclass(frozen=True)
class DofPartition:
    """Disjoint, exhaustive index sets over flat = k_x + N_x * k_t."""

    nx: int
    nt: int
    unknown: np.ndarray = field(repr=False)
    boundary: np.ndarray = field(repr=False)
    initial: np.ndarray = field(repr=False)

    def __post_init__(self):
        n = self.nx * self.nt
        sizes = len(self.unknown) + len(self.boundary) + len(self.initial)
        if sizes != n:
            raise GridError("partition does not cover the grid")
        combined = np.concatenate([self.unknown, self.boundary, self.initial])
        if len(np.unique(combined)) != n:
            raise GridError("partition sets overlap or miss indices")

    def for_fields(self, n_fields: int) -> "DofPartition":
        """Global partition for a stacked multi-field state.

        Field f occupies flat indices [f * N, (f+1) * N); every field shares
        the single-field split.
        """
        if n_fields == 1:
            return self
        n = self.nx * self.nt
        offs = np.arange(n_fields) * n

        def tile(idx: np.ndarray) -> np.ndarray:
            return (idx[None, :] + offs[:, None]).ravel()

        return DofPartition(
            nx=self.nx,
            nt=self.nt,
            unknown=tile(self.unknown),
            boundary=tile(self.boundary),
            initial=tile(self.initial),
        )


def classify_dofs(grid: GridSpec) -> DofPartition:
    """Build the U/B/I split for one grid, ascending flat order in each set."""
    nx, nt = grid.nx, grid.nt
    kx = np.arange(nx)[:, None] + np.zeros((1, nt), dtype=int)
    kt = np.zeros((nx, 1), dtype=int) + np.arange(nt)[None, :]
    flat_kx = kx.ravel(order="F")
    flat_kt = kt.ravel(order="F")

    initial = flat_kt == 0
    boundary = ((flat_kx == 0) | (flat_kx == nx - 1)) & ~initial
    unknown = ~initial & ~boundary
    idx = np.arange(nx * nt)
    return DofPartition(
        nx=nx,
        nt=nt,
        unknown=idx[unknown],
        boundary=idx[boundary],
        initial=idx[initial],
    )


def gather(state: np.ndarray, indices: np.ndarray) -> np.ndarray:
    """Extract one partition set from a flat state vector."""
    return np.asarray(state)[indices]


def scatter(state: np.ndarray, indices: np.ndarray, values: np.ndarray) -> np.ndarray:
    """Write values into one partition set of a flat state vector, in place."""
    state[indices] = values
    return state
