"""Fixed-step classical Runge-Kutta for states made of several numpy arrays."""

from typing import Callable, Tuple

import numpy as np

ArrayState = Tuple[np.ndarray, ...]
RateFunction = Callable[[ArrayState], ArrayState]


def check_step(dt: float, max_dt: float = 0.1) -> None:
    """Reject step sizes outside (0, max_dt]."""
    if not (0.0 < dt <= max_dt):
        raise ValueError(f"Step size must lie in (0, {max_dt}], got {dt}")


def rk4_step(rates: RateFunction, state: ArrayState, dt: float) -> ArrayState:
    """Advance ``state`` by one RK4 step of an autonomous vector field.

    Inputs the vector field depends on are held constant by the caller for the
    whole step. Matrix components are integrated in the ambient space; callers
    project back onto their manifold afterwards.
    """
    k1 = rates(state)
    k2 = rates(tuple(x + 0.5 * dt * k for x, k in zip(state, k1)))
    k3 = rates(tuple(x + 0.5 * dt * k for x, k in zip(state, k2)))
    k4 = rates(tuple(x + dt * k for x, k in zip(state, k3)))
    return tuple(
        x + (dt / 6.0) * (a + 2.0 * b + 2.0 * c + d)
        for x, a, b, c, d in zip(state, k1, k2, k3, k4)
    )
