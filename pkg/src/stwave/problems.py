"""Problem definitions: three Burgers variants and the viscous shock tube.

Each problem bundles its physical parameters, initial/boundary condition
evaluators (with optional relaxation weights used by the recursive solver),
reference solutions, and hooks to the residual/tangent assembly.  States are
arrays of shape (n_fields, N_x, N_t).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import assembly
from .grid import GridSpec, build_grid
from .operators import OperatorSet, build_operator_set


class ProblemError(ValueError):
    """Raised for invalid problem parameters or condition requests."""


class QuadratureError(RuntimeError):
    """Raised when the reference quadrature fails to reach tolerance."""

    def __init__(self, message: str, achieved: float):
        super().__init__(f"{message} (achieved relative change {achieved:.3e})")
        self.achieved = achieved


# ---------------------------------------------------------------------------
# Burgers
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BurgersSpec:
    """Parameters of f_t + (f + c(t)) f_x - nu f_xx = 0."""

    nu: float = 0.01
    x0: float = -0.5
    advection: str = "constant"  # "constant" | "sinusoidal" | "none"
    c0: float = 1.0
    tau: float = 1e-2

    def __post_init__(self):
        if self.nu <= 0.0:
            raise ProblemError(f"diffusion coefficient must be positive, got {self.nu}")
        if self.advection not in ("constant", "sinusoidal", "none"):
            raise ProblemError(f"unknown advection mode {self.advection!r}")
        if self.advection == "sinusoidal" and self.tau <= 0.0:
            raise ProblemError(f"advection timescale must be positive, got {self.tau}")

    def advection_values(self, t):
        t = np.asarray(t, dtype=float)
        if self.advection == "constant":
            return np.full_like(t, self.c0)
        if self.advection == "sinusoidal":
            return np.sin(t / self.tau)
        return np.zeros_like(t)

    def advection_rate(self, t):
        """d c / d t, needed by the manufactured forcing."""
        t = np.asarray(t, dtype=float)
        if self.advection == "sinusoidal":
            return np.cos(t / self.tau) / self.tau
        return np.zeros_like(t)


def _tanh_profile(x, t, spec: BurgersSpec, width_scale: float = 1.0):
    c = spec.advection_values(t)
    theta = (np.asarray(x, dtype=float) - spec.x0 - np.asarray(t) * c) / (
        2.0 * spec.nu * width_scale
    )
    return -np.tanh(theta), theta


def burgers_exact(x, t, spec: BurgersSpec):
    """Traveling-wave solution -tanh((x - x0 - t c0) / (2 nu))."""
    if spec.advection != "constant":
        raise ProblemError("closed-form traveling wave needs constant advection")
    out, _ = _tanh_profile(x, t, spec)
    return out


def mms_exact(x, t, spec: BurgersSpec):
    """Manufactured solution: the tanh profile driven by c(t) = sin(t/tau)."""
    if spec.advection != "sinusoidal":
        raise ProblemError("manufactured solution needs sinusoidal advection")
    out, _ = _tanh_profile(x, t, spec)
    return out


def mms_forcing(x, t, spec: BurgersSpec):
    """Forcing g = f*_t + (f* + c) f*_x - nu f*_xx of the manufactured profile.

    In closed form the advective and diffusive pieces cancel, leaving
    g = sech^2(theta) * t * c'(t) / (2 nu).
    """
    if spec.advection != "sinusoidal":
        raise ProblemError("manufactured forcing needs sinusoidal advection")
    f, _ = _tanh_profile(x, t, spec)
    sech2 = 1.0 - f * f
    return sech2 * np.asarray(t) * spec.advection_rate(t) / (2.0 * spec.nu)


def burgers_exact_derivatives(x, t, spec: BurgersSpec) -> dict[str, np.ndarray]:
    """Closed-form f, f_t, f_x, f_xx of the tanh profile (constant or MMS)."""
    if spec.advection not in ("constant", "sinusoidal"):
        raise ProblemError("closed-form derivatives exist only for the tanh profiles")
    f, _ = _tanh_profile(x, t, spec)
    sech2 = 1.0 - f * f
    c = spec.advection_values(t)
    cdot = spec.advection_rate(t)
    two_nu = 2.0 * spec.nu
    return {
        "f": f,
        "f_t": sech2 * (c + np.asarray(t) * cdot) / two_nu,
        "f_x": -sech2 / two_nu,
        "f_xx": -f * sech2 / (two_nu * spec.nu),
    }


# ---------------------------------------------------------------------------
# Shock-evolution reference solution (Cole-Hopf quotient by quadrature)
# ---------------------------------------------------------------------------

_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(16)


def _cole_hopf_integrals(x: float, t: float, nu: float, radius: float, n_panels: int):
    edges = np.linspace(-radius, radius, n_panels + 1)
    mid = 0.5 * (edges[:-1] + edges[1:])
    half = 0.5 * (edges[1] - edges[0])
    eta = (mid[:, None] + half * _GL_NODES[None, :]).ravel()
    w = np.tile(half * _GL_WEIGHTS, n_panels)
    phase = np.pi * (x - eta)
    # Shared exponent, shifted by its max to avoid overflow.
    expo = -np.cos(phase) / (2.0 * np.pi * nu) - eta * eta / (4.0 * nu * t)
    expo -= expo.max()
    common = np.exp(expo)
    num = float(np.sum(w * np.sin(phase) * common))
    den = float(np.sum(w * common))
    return num, den


def steepening_exact(x: float, t: float, nu: float, rtol: float = 1e-10,
                     x_extent: float = 2.0) -> float:
    """Shock-evolution solution via adaptive quadrature of the Cole-Hopf form.

    The infinite integrals are truncated at a radius where the heat kernel is
    below 1e-18 and integrated with composite 16-point Gauss-Legendre panels,
    doubling the panel count until both integrals change by less than rtol.
    """
    if t <= 0.0:
        raise ProblemError(f"reference solution needs t > 0, got {t}")
    radius = x_extent + 10.0 * np.sqrt(4.0 * nu * t)

    n_panels = 64
    prev = _cole_hopf_integrals(x, t, nu, radius, n_panels)
    for _ in range(14):
        n_panels *= 2
        cur = _cole_hopf_integrals(x, t, nu, radius, n_panels)
        change = max(
            abs(cur[0] - prev[0]) / max(abs(cur[1]), abs(cur[0]), 1e-300),
            abs(cur[1] - prev[1]) / max(abs(cur[1]), 1e-300),
        )
        if change <= rtol:
            return -cur[0] / cur[1]
        prev = cur
    raise QuadratureError("shock-evolution quadrature did not converge", change)


# ---------------------------------------------------------------------------
# Sod shock tube
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SodSpec:
    """Viscous shock-tube parameters (dry air, CGS-consistent values)."""

    gamma: float = 7.0 / 5.0
    kappa: float = 2.55e-2
    c_v: float = 7.18e2
    mu: float = 1.9e-5
    delta: float = 0.01
    x0: float = 0.5
    rho_amp: tuple[float, float] = (9.0 / 16.0, -7.0 / 16.0)
    p_amp: tuple[float, float] = (0.55, -0.45)
    left: tuple[float, float, float] = (1.0, 0.0, 1.0)  # rho, v, p
    right: tuple[float, float, float] = (0.125, 0.0, 0.1)

    def __post_init__(self):
        if self.gamma <= 1.0:
            raise ProblemError(f"gamma must exceed 1, got {self.gamma}")
        if self.delta <= 0.0:
            raise ProblemError(f"shock steepness must be positive, got {self.delta}")
        for rho, _, p in (self.left, self.right):
            if rho <= 0.0 or p <= 0.0:
                raise ProblemError("boundary densities and pressures must be positive")

    def energy(self, rho, p):
        return np.asarray(p) / ((self.gamma - 1.0) * np.asarray(rho))


def sod_initial(x, delta_g: float, spec: SodSpec):
    """Initial (rho, v, e) profiles with steepness delta_g.

    Density and pressure carry the same tanh shape between the Table values;
    the velocity starts at rest and e follows from the ideal-gas relation.
    """
    if delta_g <= 0.0:
        raise ProblemError(f"steepness weight must be positive, got {delta_g}")
    s = np.tanh((np.asarray(x, dtype=float) - spec.x0) / delta_g)
    rho = spec.rho_amp[0] + spec.rho_amp[1] * s
    p = spec.p_amp[0] + spec.p_amp[1] * s
    v = np.zeros_like(rho)
    return rho, v, spec.energy(rho, p)


def sod_boundary(spec: SodSpec, side: str):
    """Dirichlet (rho, v, e) values on one spatial boundary."""
    if side not in ("left", "right"):
        raise ProblemError(f"side must be 'left' or 'right', got {side!r}")
    rho, v, p = spec.left if side == "left" else spec.right
    return rho, v, float(spec.energy(rho, p))


# ---------------------------------------------------------------------------
# Condition schedules
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ConditionSchedule:
    """Per-level initial/boundary relaxation weights for the recursive solver.

    Entry g steers the conditions installed at level j_start + g; the final
    entries describe the true problem.
    """

    delta: tuple[float, ...]
    chi: tuple[float, ...]

    def __post_init__(self):
        if len(self.delta) != len(self.chi):
            raise ProblemError("delta and chi schedules must have equal length")
        if not self.delta:
            raise ProblemError("schedules must have at least one entry")
        if any(d <= 0.0 for d in self.delta) or any(c <= 0.0 for c in self.chi):
            raise ProblemError("schedule weights must be positive")

    def __len__(self) -> int:
        return len(self.delta)

    @classmethod
    def unmodified(cls, length: int) -> "ConditionSchedule":
        return cls(delta=(1.0,) * length, chi=(1.0,) * length)


# ---------------------------------------------------------------------------
# Solver-facing problem objects
# ---------------------------------------------------------------------------

@dataclass
class BurgersProblem:
    """Single-field spacetime Burgers problem on [x_lo, x_hi] x [0, T]."""

    spec: BurgersSpec = field(default_factory=BurgersSpec)
    x_domain: tuple[float, float] = (-1.0, 1.0)
    t_final: float = 0.5
    p_x: int = 6
    p_t: int = 4

    n_fields = 1
    field_names = ("f",)

    def grid(self, level: int) -> GridSpec:
        return build_grid(self.x_domain, self.t_final, level, self.p_x, self.p_t)

    def operators(self, grid: GridSpec) -> OperatorSet:
        return build_operator_set(grid.p_x, grid.p_t, grid.nx, grid.nt, grid.dx, grid.dt)

    def residual(self, state, grid, ops):
        return assembly.residual_burgers(state[0], self.spec, grid, ops)[None, ...]

    def tangent(self, state, grid, ops):
        return assembly.tangent_burgers(state[0], self.spec, grid, ops)

    def initial_values(self, x, delta_g: float = 1.0):
        f, _ = _tanh_profile(x, 0.0, self.spec, width_scale=delta_g)
        return (f,)

    def boundary_values(self, t, side: str, chi_g: float = 1.0):
        xb = self.x_domain[0] if side == "left" else self.x_domain[1]
        f, _ = _tanh_profile(xb, t, self.spec, width_scale=chi_g)
        return (f,)

    def apply_conditions(self, state, grid: GridSpec,
                         delta_g: float = 1.0, chi_g: float = 1.0):
        """Install the (possibly relaxed) initial row and boundary columns."""
        for k, ic in enumerate(self.initial_values(grid.x, delta_g)):
            state[k, :, 0] = ic
        t_rest = grid.t[1:]
        for k, bc in enumerate(self.boundary_values(t_rest, "left", chi_g)):
            state[k, 0, 1:] = bc
        for k, bc in enumerate(self.boundary_values(t_rest, "right", chi_g)):
            state[k, -1, 1:] = bc
        return state

    def exact_solution(self, grid: GridSpec):
        X, T = np.meshgrid(grid.x, grid.t, indexing="ij")
        if self.spec.advection == "constant":
            return burgers_exact(X, T, self.spec)[None, ...]
        if self.spec.advection == "sinusoidal":
            return mms_exact(X, T, self.spec)[None, ...]
        return None

    def exact_derivatives(self, grid: GridSpec):
        X, T = np.meshgrid(grid.x, grid.t, indexing="ij")
        return burgers_exact_derivatives(X, T, self.spec)


def walking_burgers(nu: float = 0.01, c0: float = 1.0, x0: float = -0.5,
                    p_x: int = 6, p_t: int = 4) -> BurgersProblem:
    """Shock-advection problem with constant advection speed."""
    return BurgersProblem(spec=BurgersSpec(nu=nu, x0=x0, advection="constant", c0=c0),
                          p_x=p_x, p_t=p_t)


def mms_burgers(nu: float = 0.01, tau: float = 1e-2, x0: float = -0.5,
                p_x: int = 6, p_t: int = 6) -> BurgersProblem:
    """Shock advection with sinusoidal speed and manufactured forcing."""
    return BurgersProblem(spec=BurgersSpec(nu=nu, x0=x0, advection="sinusoidal", tau=tau),
                          p_x=p_x, p_t=p_t)


class SteepeningBurgersProblem(BurgersProblem):
    """Shock-evolution problem: c = 0, sine initial data that steepens."""

    def __init__(self, nu: float = 0.01, p_x: int = 6, p_t: int = 4):
        super().__init__(spec=BurgersSpec(nu=nu, x0=0.0, advection="none"),
                         p_x=p_x, p_t=p_t)

    def initial_values(self, x, delta_g: float = 1.0):
        if delta_g != 1.0:
            raise ProblemError("shock-evolution conditions cannot be relaxed")
        return (-np.sin(np.pi * np.asarray(x, dtype=float)),)

    def boundary_values(self, t, side: str, chi_g: float = 1.0):
        if chi_g != 1.0:
            raise ProblemError("shock-evolution conditions cannot be relaxed")
        return (np.zeros_like(np.asarray(t, dtype=float)),)

    def exact_solution(self, grid: GridSpec):
        return None

    def exact_derivatives(self, grid: GridSpec):
        return None

    def exact_at(self, x: float, t: float, rtol: float = 1e-10) -> float:
        if t == 0.0:
            return float(-np.sin(np.pi * x))
        extent = self.x_domain[1] - self.x_domain[0]
        return steepening_exact(x, t, self.spec.nu, rtol=rtol, x_extent=extent)


def steepening_burgers(nu: float = 0.01, p_x: int = 6, p_t: int = 4) -> SteepeningBurgersProblem:
    return SteepeningBurgersProblem(nu=nu, p_x=p_x, p_t=p_t)


@dataclass
class SodProblem:
    """Three-field viscous shock tube on [0, 1] cm x [0, 0.2] s."""

    spec: SodSpec = field(default_factory=SodSpec)
    x_domain: tuple[float, float] = (0.0, 1.0)
    t_final: float = 0.2
    p_x: int = 6
    p_t: int = 6

    n_fields = 3
    field_names = ("rho", "v", "e")

    def grid(self, level: int) -> GridSpec:
        return build_grid(self.x_domain, self.t_final, level, self.p_x, self.p_t)

    def operators(self, grid: GridSpec) -> OperatorSet:
        return build_operator_set(grid.p_x, grid.p_t, grid.nx, grid.nt, grid.dx, grid.dt)

    def residual(self, state, grid, ops):
        return assembly.residual_sod(state, self.spec, ops)

    def tangent(self, state, grid, ops):
        return assembly.tangent_sod(state, self.spec, ops)

    def initial_values(self, x, delta_g: float | None = None):
        delta = self.spec.delta if delta_g is None else delta_g
        return sod_initial(x, delta, self.spec)

    def boundary_values(self, t, side: str, chi_g: float = 1.0):
        t = np.asarray(t, dtype=float)
        return tuple(np.full_like(t, val) for val in sod_boundary(self.spec, side))

    def apply_conditions(self, state, grid: GridSpec,
                         delta_g: float | None = None, chi_g: float = 1.0):
        for k, ic in enumerate(self.initial_values(grid.x, delta_g)):
            state[k, :, 0] = ic
        t_rest = grid.t[1:]
        for k, bc in enumerate(self.boundary_values(t_rest, "left", chi_g)):
            state[k, 0, 1:] = bc
        for k, bc in enumerate(self.boundary_values(t_rest, "right", chi_g)):
            state[k, -1, 1:] = bc
        return state

    def exact_solution(self, grid: GridSpec):
        return None

    def exact_derivatives(self, grid: GridSpec):
        return None


def sod_shock_tube(delta: float = 0.01, p_x: int = 6, p_t: int = 6) -> SodProblem:
    return SodProblem(spec=SodSpec(delta=delta), p_x=p_x, p_t=p_t)
