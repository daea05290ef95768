"""Classical affine-body dynamics used as cross-checks for the quantum models.

Velocities in the laboratory and co-moving forms, the four kinetic-energy
functionals, closed-form geodesics where the invariance structure provides
them (one-parameter subgroup translates for the bi-invariant model, straight
lines for the flat one), and a fixed-step RK4 integrator with conservation
monitors.  The mixed-invariance models integrate through a generic
Euler-Lagrange right-hand side evaluated by central differences, so the
kinetic forms are never transcribed twice.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.linalg import expm

from .reduced import AffineModel, ModelKind, Potential

__all__ = [
    "AffineState",
    "Trajectory",
    "IntegrationError",
    "velocities",
    "kinetic_energy",
    "geodesic",
    "integrate",
]

_FD_STEP = float(np.cbrt(np.finfo(float).eps))


class IntegrationError(RuntimeError):
    """Raised when a trajectory violates its conservation monitor."""


@dataclass(frozen=True)
class AffineState:
    """Configuration and velocity of the affine body (no translations)."""

    phi: np.ndarray
    phidot: np.ndarray

    def __post_init__(self):
        phi = np.asarray(self.phi, dtype=float)
        phidot = np.asarray(self.phidot, dtype=float)
        if phi.ndim != 2 or phi.shape[0] != phi.shape[1]:
            raise ValueError(f"phi must be square, got shape {phi.shape}")
        if phidot.shape != phi.shape:
            raise ValueError("phi and phidot must have matching shapes")
        if np.linalg.det(phi) <= 0.0:
            raise ValueError("configuration must have positive determinant")
        phi.setflags(write=False)
        phidot.setflags(write=False)
        object.__setattr__(self, "phi", phi)
        object.__setattr__(self, "phidot", phidot)

    @property
    def n(self) -> int:
        return self.phi.shape[0]


def velocities(state: AffineState) -> tuple[np.ndarray, np.ndarray]:
    """Laboratory and co-moving velocities Omega = phidot phi^-1, OmegaHat = phi^-1 phidot."""
    inv = np.linalg.inv(state.phi)
    return state.phidot @ inv, inv @ state.phidot


def _dilatation(phi: np.ndarray) -> float:
    """Mean logarithmic deformation invariant, (1/n) log det(phi)."""
    sign, logdet = np.linalg.slogdet(phi)
    if sign <= 0.0:
        raise ValueError("configuration left the positive-determinant component")
    return logdet / phi.shape[0]


def kinetic_energy(model: AffineModel, state: AffineState) -> float:
    """Evaluate the selected kinetic functional at the given state."""
    if model.kind is ModelKind.DALEMBERT:
        return 0.5 * model.I * float(np.trace(state.phidot.T @ state.phidot))
    omega, omega_hat = velocities(state)
    if model.kind is ModelKind.AFF_AFF:
        return 0.5 * model.A * float(np.trace(omega @ omega)) + 0.5 * model.B * float(
            np.trace(omega)
        ) ** 2
    if model.kind is ModelKind.MET_AFF:
        w = omega
    else:  # AFF_MET
        w = omega_hat
    return (
        0.5 * model.I * float(np.trace(w.T @ w))
        + 0.5 * model.A * float(np.trace(w @ w))
        + 0.5 * model.B * float(np.trace(w)) ** 2
    )


def _potential_energy(model: AffineModel, potential: Potential | None, phi: np.ndarray) -> float:
    if potential is None or potential.kind == "none":
        return 0.0
    if potential.kind != "harmonic":
        raise ValueError("classical trajectories support only the harmonic dilatation potential")
    qbar = _dilatation(phi)
    return 0.5 * potential.kappa * qbar**2


def geodesic(model: AffineModel, state0: AffineState, t: float) -> AffineState:
    """Analytic geodesic where the metric structure forces one.

    Bi-invariance makes the aff-aff geodesics one-parameter subgroup
    translates phi0 exp(t OmegaHat0); the flat dalembert metric gives straight
    lines.  The mixed models have no closed form here; integrate them.
    """
    if model.kind is ModelKind.AFF_AFF:
        _, omega_hat = velocities(state0)
        flow = expm(t * omega_hat)
        phi = state0.phi @ flow
        return AffineState(phi=phi, phidot=phi @ omega_hat)
    if model.kind is ModelKind.DALEMBERT:
        return AffineState(phi=state0.phi + t * state0.phidot, phidot=state0.phidot)
    raise ValueError(f"no analytic geodesic for {model.kind.value}; use integrate")


# ---------------------------------------------------------------------------
# Equations of motion.

def _accel_aff_aff(phi: np.ndarray, phidot: np.ndarray) -> np.ndarray:
    # d/dt (phi^-1 phidot) = 0 re-expressed as a second-order equation.
    return phidot @ np.linalg.solve(phi, phidot)


def _accel_dalembert(
    model: AffineModel, potential: Potential | None, phi: np.ndarray, phidot: np.ndarray
) -> np.ndarray:
    if potential is None or potential.kind == "none":
        return np.zeros_like(phi)
    # V depends on phi through qbar = (1/n) log det phi, so
    # dV/dphi = V'(qbar) (1/n) phi^-T.
    qbar = _dilatation(phi)
    dv = potential.kappa * qbar
    n = phi.shape[0]
    return -(dv / (model.I * n)) * np.linalg.inv(phi).T


def _lagrangian(model: AffineModel, potential: Potential | None, x: np.ndarray, v: np.ndarray) -> float:
    n = model.n
    state_phi = x.reshape(n, n)
    state_v = v.reshape(n, n)
    kind = model.kind
    if kind is ModelKind.DALEMBERT:
        t = 0.5 * model.I * float(np.trace(state_v.T @ state_v))
    else:
        inv = np.linalg.inv(state_phi)
        if kind is ModelKind.AFF_AFF:
            w = state_v @ inv
            t = 0.5 * model.A * float(np.trace(w @ w)) + 0.5 * model.B * float(np.trace(w)) ** 2
        else:
            w = state_v @ inv if kind is ModelKind.MET_AFF else inv @ state_v
            t = (
                0.5 * model.I * float(np.trace(w.T @ w))
                + 0.5 * model.A * float(np.trace(w @ w))
                + 0.5 * model.B * float(np.trace(w)) ** 2
            )
    return t - _potential_energy(model, potential, state_phi)


def _accel_euler_lagrange(
    model: AffineModel, potential: Potential | None, phi: np.ndarray, phidot: np.ndarray
) -> np.ndarray:
    """Generic variational right-hand side via central differences.

    Solves M qddot = dL/dq - (dp/dq) qdot with p = dL/dqdot and M = dp/dqdot,
    all evaluated numerically with the cube-root-of-epsilon step.
    """
    x = phi.ravel().astype(float)
    v = phidot.ravel().astype(float)
    d = x.size

    def lagr(xx, vv):
        return _lagrangian(model, potential, xx, vv)

    def momentum(xx, vv):
        p = np.zeros(d)
        for i in range(d):
            h = _FD_STEP * max(1.0, abs(vv[i]))
            up = vv.copy()
            dn = vv.copy()
            up[i] += h
            dn[i] -= h
            p[i] = (lagr(xx, up) - lagr(xx, dn)) / (2.0 * h)
        return p

    mass = np.zeros((d, d))
    dp_dx = np.zeros((d, d))
    for j in range(d):
        hv = _FD_STEP * max(1.0, abs(v[j]))
        up = v.copy()
        dn = v.copy()
        up[j] += hv
        dn[j] -= hv
        mass[:, j] = (momentum(x, up) - momentum(x, dn)) / (2.0 * hv)
        hx = _FD_STEP * max(1.0, abs(x[j]))
        xup = x.copy()
        xdn = x.copy()
        xup[j] += hx
        xdn[j] -= hx
        dp_dx[:, j] = (momentum(xup, v) - momentum(xdn, v)) / (2.0 * hx)

    grad_x = np.zeros(d)
    for i in range(d):
        h = _FD_STEP * max(1.0, abs(x[i]))
        up = x.copy()
        dn = x.copy()
        up[i] += h
        dn[i] -= h
        grad_x[i] = (lagr(up, v) - lagr(dn, v)) / (2.0 * h)

    mass = 0.5 * (mass + mass.T)
    accel = np.linalg.solve(mass, grad_x - dp_dx @ v)
    return accel.reshape(phi.shape)


@dataclass(frozen=True, eq=False)
class Trajectory:
    """Fixed-step trajectory with conservation monitors."""

    times: np.ndarray
    phi: np.ndarray  # (steps+1, n, n)
    phidot: np.ndarray
    energy: np.ndarray
    energy_drift: np.ndarray  # relative to the initial energy
    omega_hat_deviation: np.ndarray | None  # aff-aff only: ||OmegaHat(t) - OmegaHat(0)||

    def final_state(self) -> AffineState:
        return AffineState(phi=self.phi[-1], phidot=self.phidot[-1])


def integrate(
    model: AffineModel,
    state0: AffineState,
    t_end: float,
    dt: float,
    potential: Potential | None = None,
    energy_tol: float = 1e-3,
) -> Trajectory:
    """Classical RK4 integration of the selected model.

    aff-aff (free) and dalembert use their explicit equations of motion; the
    mixed-invariance models (or any model with a potential) go through the
    numeric Euler-Lagrange right-hand side.  Aborts with IntegrationError if
    the relative energy drift exceeds energy_tol.
    """
    if dt <= 0.0:
        raise ValueError("dt must be positive")
    if t_end <= 0.0:
        raise ValueError("t_end must be positive")
    has_potential = potential is not None and potential.kind != "none"
    if model.kind is ModelKind.AFF_AFF and not has_potential:
        accel = lambda p, pd: _accel_aff_aff(p, pd)
    elif model.kind is ModelKind.DALEMBERT:
        accel = lambda p, pd: _accel_dalembert(model, potential, p, pd)
    else:
        accel = lambda p, pd: _accel_euler_lagrange(model, potential, p, pd)

    steps = int(round(t_end / dt))
    n = state0.n
    times = np.zeros(steps + 1)
    phis = np.zeros((steps + 1, n, n))
    phidots = np.zeros((steps + 1, n, n))
    energies = np.zeros(steps + 1)
    phis[0] = state0.phi
    phidots[0] = state0.phidot

    track_omega = model.kind is ModelKind.AFF_AFF
    omega_dev = np.zeros(steps + 1) if track_omega else None
    omega_hat0 = velocities(state0)[1] if track_omega else None

    def energy(p, pd):
        return kinetic_energy(model, AffineState(p, pd)) + _potential_energy(model, potential, p)

    energies[0] = energy(phis[0], phidots[0])
    e0 = energies[0]
    e_scale = max(abs(e0), 1e-300)

    p, pd = state0.phi.copy(), state0.phidot.copy()
    for step in range(1, steps + 1):
        k1p, k1v = pd, accel(p, pd)
        k2p, k2v = pd + 0.5 * dt * k1v, accel(p + 0.5 * dt * k1p, pd + 0.5 * dt * k1v)
        k3p, k3v = pd + 0.5 * dt * k2v, accel(p + 0.5 * dt * k2p, pd + 0.5 * dt * k2v)
        k4p, k4v = pd + dt * k3v, accel(p + dt * k3p, pd + dt * k3v)
        p = p + (dt / 6.0) * (k1p + 2.0 * k2p + 2.0 * k3p + k4p)
        pd = pd + (dt / 6.0) * (k1v + 2.0 * k2v + 2.0 * k3v + k4v)
        times[step] = step * dt
        phis[step] = p
        phidots[step] = pd
        energies[step] = energy(p, pd)
        drift = abs(energies[step] - e0) / e_scale
        if not np.isfinite(drift) or drift > energy_tol:
            raise IntegrationError(
                f"energy drift {drift:.3e} exceeded {energy_tol:.3e} at t = {times[step]:.6g}; "
                "reduce dt"
            )
        if track_omega:
            omega_dev[step] = np.linalg.norm(velocities(AffineState(p, pd))[1] - omega_hat0)

    energy_drift = np.abs(energies - e0) / e_scale
    return Trajectory(
        times=times,
        phi=phis,
        phidot=phidots,
        energy=energies,
        energy_drift=energy_drift,
        omega_hat_deviation=omega_dev,
    )
