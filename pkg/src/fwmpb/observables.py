"""Steady-state expectation values and the equal-time second-order correlation."""

from __future__ import annotations

import warnings

import numpy as np

from .fock import FockSpace, lowering_op
from .model import DensityMatrix

# a 0/0 correlation below this squared-occupation floor is meaningless
DENOMINATOR_FLOOR = 1e-14
TOP_LEVEL_POPULATION_LIMIT = 1e-6
_IMAG_TOL = 1e-10
_NEGATIVE_FLOOR = -1e-12


class UndefinedCorrelationError(ValueError):
    """Raised when the occupation is too small to normalize g2."""


class TruncationWarning(UserWarning):
    """Population is leaking into the highest retained Fock level."""


def _checked_real(value: complex, label: str) -> float:
    if abs(value.imag) > _IMAG_TOL:
        raise ValueError(f"{label} has imaginary part {value.imag:.3e}")
    return float(value.real)


def mean_occupation(rho: DensityMatrix, space: FockSpace, mode: str) -> float:
    """Expectation of the mode's number operator."""
    if rho.dim != space.dim:
        raise ValueError("state dimension does not match space")
    occ = space.occupation_array(mode)
    value = complex(np.dot(occ, np.diagonal(rho.entries)))
    return _checked_real(value, f"<n_{mode}>")


def g2_zero(rho: DensityMatrix, space: FockSpace, mode: str = "a") -> float:
    """Normalized second-order correlation <o+ o+ o o> / <o+ o>^2 at zero delay.

    Warns when the top retained Fock level of the mode carries weight, since
    the ratio is then truncation-limited.
    """
    if rho.dim != space.dim:
        raise ValueError("state dimension does not match space")
    occ = space.occupation_array(mode)
    diag = np.diagonal(rho.entries)
    top = space.truncation.levels[("a", "b", "c").index(mode)]
    top_population = _checked_real(complex(diag[occ == top].sum()), "top-level population")
    if top_population > TOP_LEVEL_POPULATION_LIMIT:
        warnings.warn(
            f"mode {mode} top Fock level holds {top_population:.2e} of the population; "
            f"raise the truncation", TruncationWarning, stacklevel=2)
    n_mean = mean_occupation(rho, space, mode)
    denominator = n_mean * n_mean
    if denominator < DENOMINATOR_FLOOR:
        raise UndefinedCorrelationError(
            f"<n_{mode}>^2 = {denominator:.3e} is below {DENOMINATOR_FLOOR:.1e}")
    two = lowering_op(space, mode).entries
    two = two @ two
    numerator = _checked_real(complex(np.einsum("ij,ji->", rho.entries, two.conj().T @ two)),
                              "pair moment")
    if numerator < 0.0:
        # roundoff can push a vanishing moment slightly negative
        if numerator < _NEGATIVE_FLOOR:
            raise ValueError(f"pair moment {numerator:.3e} is negative beyond roundoff")
        numerator = 0.0
    return numerator / denominator


def mode_marginal(rho: DensityMatrix, space: FockSpace, mode: str) -> np.ndarray:
    """Reduced density matrix of one mode, tracing out the other two."""
    if rho.dim != space.dim:
        raise ValueError("state dimension does not match space")
    shaped = rho.entries.reshape(space.shape + space.shape)
    pattern = {"a": "imn jmn -> ij", "b": "min mjn -> ij", "c": "mni mnj -> ij"}
    try:
        subscript = pattern[mode]
    except KeyError:
        raise ValueError(f"mode must be one of ('a', 'b', 'c'), got {mode!r}") from None
    return np.einsum(subscript, shaped)
