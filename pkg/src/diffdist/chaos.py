"""Chaotic-system trajectory generators.

Three systems are built in, each integrated with a fixed-step classical
fourth-order Runge-Kutta scheme so that the sampling period equals the
integration step and runs are bitwise deterministic:

* ``lorenz``: the classic three-variable convection system.
* ``duffing``: the forced-damped double-well oscillator
  ``x'' + delta x' + alpha x + beta x^3 = gamma cos(omega t)``, carried as
  three states (position, velocity, forcing phase) so the phase is exact
  at every substep.
* ``chua``: the dimensionless double-scroll circuit with a piecewise
  linear diode characteristic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Dict, Optional, Tuple

import numpy as np

from .differencing import Series

__all__ = ["ChaosSpec", "default_spec", "simulate", "CANONICAL_PARAMS"]

SYSTEMS = ("lorenz", "duffing", "chua")

#: Canonical chaotic parameterizations, overridable per run.
CANONICAL_PARAMS: Dict[str, Dict[str, float]] = {
    "lorenz": {"sigma": 10.0, "rho": 28.0, "beta": 8.0 / 3.0},
    "duffing": {"delta": 0.3, "alpha": -1.0, "beta": 1.0, "gamma": 0.5, "omega": 1.2},
    "chua": {"alpha": 15.6, "beta": 28.0, "m0": -8.0 / 7.0, "m1": -5.0 / 7.0},
}

_DEFAULT_DT = {"lorenz": 0.002, "duffing": 0.02, "chua": 0.002}
_DEFAULT_STEPS = {"lorenz": 600_000, "duffing": 300_000, "chua": 600_000}
_DEFAULT_STATE = {
    "lorenz": (1.0, 1.0, 1.0),
    "duffing": (1.0, 0.0, 0.0),
    "chua": (0.7, 0.0, 0.0),
}
_COMPONENT_NAMES = {
    "lorenz": ("x", "y", "z"),
    "duffing": ("x", "v", "phase"),
    "chua": ("x", "y", "z"),
}


@dataclass(frozen=True)
class ChaosSpec:
    """Full description of one simulation run.

    ``initial_state`` has three components: (x, y, z) for lorenz and chua,
    (position, velocity, forcing phase) for duffing. ``seed_perturbation``,
    when given, is added to the first state component before integration.
    ``discard`` initial steps are dropped so statistics reflect the
    attractor rather than the transient.
    """

    system: str
    params: Dict[str, float]
    initial_state: Tuple[float, float, float]
    dt: float
    steps: int
    discard: int = 0
    seed_perturbation: Optional[float] = None

    def __post_init__(self) -> None:
        if self.system not in SYSTEMS:
            raise ValueError(f"unknown system {self.system!r}, expected one of {SYSTEMS}")
        expected = CANONICAL_PARAMS[self.system].keys()
        if set(self.params) != set(expected):
            raise ValueError(
                f"{self.system} parameters must be exactly {sorted(expected)}, "
                f"got {sorted(self.params)}"
            )
        for name, v in self.params.items():
            if not math.isfinite(float(v)):
                raise ValueError(f"parameter {name} must be finite, got {v}")
        state = tuple(float(v) for v in self.initial_state)
        if len(state) != 3 or not all(math.isfinite(v) for v in state):
            raise ValueError(f"initial_state must be 3 finite numbers, got {self.initial_state}")
        object.__setattr__(self, "initial_state", state)
        if not (math.isfinite(float(self.dt)) and self.dt > 0):
            raise ValueError(f"dt must be strictly positive, got {self.dt}")
        if self.steps <= self.discard or self.discard < 0:
            raise ValueError(
                f"need steps > discard >= 0, got steps={self.steps}, discard={self.discard}"
            )
        if self.seed_perturbation is not None and not math.isfinite(float(self.seed_perturbation)):
            raise ValueError("seed_perturbation must be finite")


def default_spec(system: str) -> ChaosSpec:
    """Canonical spec for a system: standard chaotic parameters, the usual
    sampling step, and step counts covering well over 100 characteristic
    cycles with a 10 percent transient discard (at least 5000 steps)."""
    if system not in SYSTEMS:
        raise ValueError(f"unknown system {system!r}, expected one of {SYSTEMS}")
    steps = _DEFAULT_STEPS[system]
    return ChaosSpec(
        system=system,
        params=dict(CANONICAL_PARAMS[system]),
        initial_state=_DEFAULT_STATE[system],
        dt=_DEFAULT_DT[system],
        steps=steps,
        discard=max(5000, steps // 10),
    )


def simulate(spec: ChaosSpec) -> Tuple[Series, Series, Series]:
    """Integrate the system and return its three state components.

    Each returned series has length ``spec.steps - spec.discard`` and
    carries ``spec.dt``. Integration is deterministic for a fixed spec.
    Raises ``RuntimeError`` naming the step at which the state stops being
    finite if the trajectory diverges.
    """
    x0, y0, z0 = spec.initial_state
    if spec.seed_perturbation is not None:
        x0 += spec.seed_perturbation
    stepper = {"lorenz": _run_lorenz, "duffing": _run_duffing, "chua": _run_chua}[spec.system]
    try:
        out = stepper(spec.steps, spec.dt, spec.params, x0, y0, z0)
    except (OverflowError, ValueError) as exc:
        raise RuntimeError(str(exc)) from None
    kept = out[spec.discard :]
    names = _COMPONENT_NAMES[spec.system]
    return tuple(
        Series(kept[:, j], dt=spec.dt, label=f"{spec.system} {names[j]}") for j in range(3)
    )


def _check_finite(x: float, y: float, z: float, step: int) -> None:
    if not (math.isfinite(x) and math.isfinite(y) and math.isfinite(z)):
        raise ValueError(f"trajectory diverged at step {step}")


def _run_lorenz(
    n: int, dt: float, p: Dict[str, float], x: float, y: float, z: float
) -> np.ndarray:
    sigma, rho, beta = p["sigma"], p["rho"], p["beta"]
    out = np.empty((n, 3))
    h = dt
    h2 = 0.5 * dt
    h6 = dt / 6.0
    for i in range(n):
        k1x = sigma * (y - x); k1y = x * (rho - z) - y; k1z = x * y - beta * z
        x2 = x + h2 * k1x; y2 = y + h2 * k1y; z2 = z + h2 * k1z
        k2x = sigma * (y2 - x2); k2y = x2 * (rho - z2) - y2; k2z = x2 * y2 - beta * z2
        x3 = x + h2 * k2x; y3 = y + h2 * k2y; z3 = z + h2 * k2z
        k3x = sigma * (y3 - x3); k3y = x3 * (rho - z3) - y3; k3z = x3 * y3 - beta * z3
        x4 = x + h * k3x; y4 = y + h * k3y; z4 = z + h * k3z
        k4x = sigma * (y4 - x4); k4y = x4 * (rho - z4) - y4; k4z = x4 * y4 - beta * z4
        x += h6 * (k1x + 2 * k2x + 2 * k3x + k4x)
        y += h6 * (k1y + 2 * k2y + 2 * k3y + k4y)
        z += h6 * (k1z + 2 * k2z + 2 * k3z + k4z)
        _check_finite(x, y, z, i + 1)
        out[i, 0] = x; out[i, 1] = y; out[i, 2] = z
    return out


def _run_duffing(
    n: int, dt: float, p: Dict[str, float], x: float, v: float, ph: float
) -> np.ndarray:
    delta, alpha, beta = p["delta"], p["alpha"], p["beta"]
    gamma, omega = p["gamma"], p["omega"]
    out = np.empty((n, 3))
    h = dt
    h2 = 0.5 * dt
    h6 = dt / 6.0
    cos = math.cos
    for i in range(n):
        k1x = v; k1v = -delta * v - alpha * x - beta * x**3 + gamma * cos(ph)
        x2 = x + h2 * k1x; v2 = v + h2 * k1v; p2 = ph + h2 * omega
        k2x = v2; k2v = -delta * v2 - alpha * x2 - beta * x2**3 + gamma * cos(p2)
        x3 = x + h2 * k2x; v3 = v + h2 * k2v; p3 = ph + h2 * omega
        k3x = v3; k3v = -delta * v3 - alpha * x3 - beta * x3**3 + gamma * cos(p3)
        x4 = x + h * k3x; v4 = v + h * k3v; p4 = ph + h * omega
        k4x = v4; k4v = -delta * v4 - alpha * x4 - beta * x4**3 + gamma * cos(p4)
        x += h6 * (k1x + 2 * k2x + 2 * k3x + k4x)
        v += h6 * (k1v + 2 * k2v + 2 * k3v + k4v)
        ph += h6 * (omega + 2 * omega + 2 * omega + omega)
        _check_finite(x, v, ph, i + 1)
        out[i, 0] = x; out[i, 1] = v; out[i, 2] = ph
    return out


def _run_chua(
    n: int, dt: float, p: Dict[str, float], x: float, y: float, z: float
) -> np.ndarray:
    alpha, beta = p["alpha"], p["beta"]
    m0, m1 = p["m0"], p["m1"]
    dm = 0.5 * (m0 - m1)
    out = np.empty((n, 3))
    h = dt
    h2 = 0.5 * dt
    h6 = dt / 6.0
    for i in range(n):
        hx = m1 * x + dm * (abs(x + 1.0) - abs(x - 1.0))
        k1x = alpha * (y - x - hx); k1y = x - y + z; k1z = -beta * y
        x2 = x + h2 * k1x; y2 = y + h2 * k1y; z2 = z + h2 * k1z
        hx = m1 * x2 + dm * (abs(x2 + 1.0) - abs(x2 - 1.0))
        k2x = alpha * (y2 - x2 - hx); k2y = x2 - y2 + z2; k2z = -beta * y2
        x3 = x + h2 * k2x; y3 = y + h2 * k2y; z3 = z + h2 * k2z
        hx = m1 * x3 + dm * (abs(x3 + 1.0) - abs(x3 - 1.0))
        k3x = alpha * (y3 - x3 - hx); k3y = x3 - y3 + z3; k3z = -beta * y3
        x4 = x + h * k3x; y4 = y + h * k3y; z4 = z + h * k3z
        hx = m1 * x4 + dm * (abs(x4 + 1.0) - abs(x4 - 1.0))
        k4x = alpha * (y4 - x4 - hx); k4y = x4 - y4 + z4; k4z = -beta * y4
        x += h6 * (k1x + 2 * k2x + 2 * k3x + k4x)
        y += h6 * (k1y + 2 * k2y + 2 * k3y + k4y)
        z += h6 * (k1z + 2 * k2z + 2 * k3z + k4z)
        _check_finite(x, y, z, i + 1)
        out[i, 0] = x; out[i, 1] = y; out[i, 2] = z
    return out
