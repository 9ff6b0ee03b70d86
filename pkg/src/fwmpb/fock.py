"""Truncated three-mode Fock space and bosonic mode operators.

Basis states |m n p> hold m quanta in mode a, n in mode b, p in mode c.
Mode a varies slowest in the flattened index, mode c fastest.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

MODES = ("a", "b", "c")


class InvalidTruncationError(ValueError):
    """Raised for Fock ceilings that cannot host the model dynamics."""


@dataclass(frozen=True)
class FockTruncation:
    """Highest retained Fock level per mode."""

    n_a_max: int
    n_b_max: int
    n_c_max: int

    def __post_init__(self) -> None:
        for mode, n_max in zip(MODES, self.levels):
            if not isinstance(n_max, int) or isinstance(n_max, bool):
                raise InvalidTruncationError(f"mode {mode} ceiling must be an integer, got {n_max!r}")
            if n_max < 1:
                raise InvalidTruncationError(f"mode {mode} ceiling must be at least 1, got {n_max}")

    @property
    def levels(self) -> tuple[int, int, int]:
        return (self.n_a_max, self.n_b_max, self.n_c_max)


DEFAULT_TRUNCATION = FockTruncation(5, 2, 2)


class FockSpace:
    """Index bookkeeping for the tensor-product basis.

    Attributes
    ----------
    truncation : FockTruncation
    dim : int
        Total number of basis states, prod(n_max + 1).
    """

    def __init__(self, truncation: FockTruncation):
        self.truncation = truncation
        self.shape = tuple(n + 1 for n in truncation.levels)
        self.dim = int(np.prod(self.shape))
        # occupation of each mode for every flattened basis index
        grids = np.indices(self.shape).reshape(3, self.dim)
        self._occupations = {mode: grids[k].copy() for k, mode in enumerate(MODES)}

    def index_of(self, m: int, n: int, p: int) -> int:
        """Flattened index of |m n p>."""
        occ = (m, n, p)
        for mode, q, top in zip(MODES, occ, self.truncation.levels):
            if not 0 <= q <= top:
                raise IndexError(f"occupation {q} outside mode {mode} range [0, {top}]")
        return int(np.ravel_multi_index(occ, self.shape))

    def occupations(self, index: int) -> tuple[int, int, int]:
        """Inverse of index_of."""
        if not 0 <= index < self.dim:
            raise IndexError(f"basis index {index} outside [0, {self.dim})")
        m, n, p = np.unravel_index(index, self.shape)
        return int(m), int(n), int(p)

    def occupation_array(self, mode: str) -> np.ndarray:
        """Occupation of `mode` at every basis index."""
        _check_mode(mode)
        return self._occupations[mode]


def _check_mode(mode: str) -> None:
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}, got {mode!r}")


@dataclass(frozen=True, eq=False)
class Operator:
    """Dense matrix acting on a FockSpace."""

    dim: int
    entries: np.ndarray

    def __post_init__(self) -> None:
        if self.entries.shape != (self.dim, self.dim):
            raise ValueError(f"entries shape {self.entries.shape} does not match dim {self.dim}")

    def dag(self) -> "Operator":
        return Operator(self.dim, self.entries.conj().T.copy())


def build_space(truncation: FockTruncation) -> FockSpace:
    return FockSpace(truncation)


def lowering_op(space: FockSpace, mode: str) -> Operator:
    """Annihilation operator: a|m> = sqrt(m)|m-1>, zero at the floor."""
    _check_mode(mode)
    occ = space.occupation_array(mode)
    stride = {
        "a": space.shape[1] * space.shape[2],
        "b": space.shape[2],
        "c": 1,
    }[mode]
    entries = np.zeros((space.dim, space.dim), dtype=np.complex128)
    cols = np.nonzero(occ >= 1)[0]
    entries[cols - stride, cols] = np.sqrt(occ[cols])
    return Operator(space.dim, entries)


def number_op(space: FockSpace, mode: str) -> Operator:
    """Occupation operator, diagonal in the Fock basis."""
    _check_mode(mode)
    entries = np.diag(space.occupation_array(mode).astype(np.complex128))
    return Operator(space.dim, entries)
