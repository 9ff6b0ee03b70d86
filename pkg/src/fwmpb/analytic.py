"""Closed-form companions to the master-equation solver.

Two ingredients of the blockade are tracked analytically: the spectrum of
the two-quantum manifold spanned by |200> and |011>, and the weak-drive
steady amplitudes of the lowest four basis states under the non-Hermitian
Hamiltonian. Both are cheap enough to scan densely.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .model import SystemParams

# beyond this drive the four-state ansatz stops being a small perturbation
WEAK_DRIVE_LIMIT = 0.05


class DegenerateParametersError(RuntimeError):
    """Raised when the amplitude equations are singular."""


class InvalidRangeError(ValueError):
    """Raised for an empty or ill-formed scan range."""


@dataclass(frozen=True)
class AmplitudeVector:
    """Steady amplitudes of |000>, |100>, |200>, |011>, with c000 = 1."""

    c000: complex
    c100: complex
    c200: complex
    c011: complex


def manifold_matrix(params: SystemParams) -> np.ndarray:
    """Hamiltonian restricted to the two-quantum pair {|200>, |011>}."""
    root2_g = math.sqrt(2.0) * params.g
    return np.array([
        [2.0 * params.delta_a, root2_g],
        [root2_g, params.delta_b + params.delta_c],
    ])


def manifold_eigenfrequencies(params: SystemParams) -> tuple[float, float]:
    """Eigenvalues of the two-quantum block, ascending.

    Computed in closed form so the symmetric point (delta_a = 0,
    delta_b + delta_c = 0) lands exactly on +/- sqrt(2) g.
    """
    m = manifold_matrix(params)
    center = 0.5 * (m[0, 0] + m[1, 1])
    radius = math.hypot(0.5 * (m[0, 0] - m[1, 1]), m[0, 1])
    return (center - radius, center + radius)


def steady_amplitudes(params: SystemParams) -> AmplitudeVector:
    """Stationary amplitudes of the driven non-Hermitian Hamiltonian.

    With c000 pinned to 1, projecting the stationarity condition onto
    <100|, <200| and <011| leaves a 3x3 linear system for the rest.
    """
    if params.f_a <= 0:
        raise ValueError("steady amplitudes require a positive drive f_a")
    f = params.f_a
    root2 = math.sqrt(2.0)
    d1 = params.delta_a - 0.5j * params.kappa_a
    d2 = 2.0 * params.delta_a - 1.0j * params.kappa_a
    d3 = (params.delta_b + params.delta_c) - 0.5j * (params.kappa_b + params.kappa_c)
    system = np.array([
        [d1, root2 * f, 0.0],
        [root2 * f, d2, root2 * params.g],
        [0.0, root2 * params.g, d3],
    ], dtype=np.complex128)
    rhs = np.array([-f, 0.0, 0.0], dtype=np.complex128)
    try:
        c100, c200, c011 = np.linalg.solve(system, rhs)
    except np.linalg.LinAlgError as exc:
        raise DegenerateParametersError(f"amplitude equations are singular: {exc}") from exc
    if not np.all(np.isfinite([c100, c200, c011])):
        raise DegenerateParametersError("amplitude equations produced nonfinite values")
    return AmplitudeVector(c000=1.0 + 0.0j, c100=complex(c100),
                           c200=complex(c200), c011=complex(c011))


def weak_drive_g2(params: SystemParams) -> float:
    """Zero-delay correlation of mode a estimated as 2|c200|^2 / |c100|^4.

    At delta_a = 0, delta_b = -delta_c and equal kappas this collapses to
    kappa^4 / (kappa^2 + 2 g^2)^2.
    """
    if params.f_a > WEAK_DRIVE_LIMIT * params.kappa_a:
        raise ValueError(
            f"weak-drive estimate needs f_a <= {WEAK_DRIVE_LIMIT} kappa_a, got f_a = {params.f_a}")
    amps = steady_amplitudes(params)
    one = abs(amps.c100) ** 2
    if one == 0.0:
        raise DegenerateParametersError("single-quantum amplitude vanished")
    return 2.0 * abs(amps.c200) ** 2 / one ** 2


def optimal_detuning_scan(params: SystemParams, start: float, stop: float,
                          step: float) -> float:
    """Drive detuning minimizing the weak-drive correlation over a grid.

    The grid runs from start in increments of step up to stop. The first
    grid point attaining the minimum wins ties, which keeps the reduction
    deterministic however the evaluations are scheduled.
    """
    if abs(params.delta_b + params.delta_c) > 1e-12:
        raise ValueError("scan assumes the pair condition delta_b = -delta_c")
    if step <= 0:
        raise InvalidRangeError(f"step must be positive, got {step}")
    if stop < start:
        raise InvalidRangeError(f"empty range [{start}, {stop}]")
    count = int(math.floor((stop - start) / step + 1e-9)) + 1
    best_x = start
    best_value = math.inf
    for k in range(count):
        x = start + k * step
        value = weak_drive_g2(replace(params, delta_a=x))
        if value < best_value:
            best_value = value
            best_x = x
    return best_x
