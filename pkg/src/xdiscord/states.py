"""Bell-diagonal and z-axis X states in the Pauli parameterisation.

An X state here is

    rho = 1/4 (I.I + r Z.I + s I.Z + c1 X.X + c2 Y.Y + c3 Z.Z)

with the local Bloch vectors of both qubits along z. ``r = s = 0`` gives the
Bell-diagonal family.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import PhysicalityError, StructureError
from .linalg import I2, NEGATIVE_EIG_TOL, PAULIS, SIGMA_Z, as_operator, tensor

STRUCTURE_TOL = 1e-10
_FIELDS = ("r", "s", "c1", "c2", "c3")

# Pauli operators whose expectation values are (r, s, c1, c2, c3)
_OBSERVABLES = np.stack([tensor(SIGMA_Z, I2), tensor(I2, SIGMA_Z)] + [tensor(p, p) for p in PAULIS])
_OFF_X = ~(np.eye(4, dtype=bool) | np.fliplr(np.eye(4, dtype=bool)))


def _block_eigenvalues(r, s, c1, c2, c3):
    outer = math.hypot(r + s, c1 - c2)
    inner = math.hypot(r - s, c1 + c2)
    return (
        0.25 * (1 + c3 + outer),
        0.25 * (1 + c3 - outer),
        0.25 * (1 - c3 + inner),
        0.25 * (1 - c3 - inner),
    )


@dataclass(frozen=True)
class XStateParams:
    """Five real parameters of a z-axis X state; validated on construction."""

    r: float
    s: float
    c1: float
    c2: float
    c3: float

    def __post_init__(self):
        for name in _FIELDS:
            value = float(getattr(self, name))
            if not math.isfinite(value) or abs(value) > 1 + 1e-12:
                raise PhysicalityError(f"{name}={value!r} outside [-1, 1]")
            object.__setattr__(self, name, value)
        eigs = _block_eigenvalues(*self.as_tuple())
        if min(eigs) < -NEGATIVE_EIG_TOL or max(eigs) > 1 + NEGATIVE_EIG_TOL:
            raise PhysicalityError(
                f"unphysical X state {self.as_tuple()}: eigenvalues {np.round(eigs, 12)}"
            )

    @property
    def correlations(self) -> tuple[float, float, float]:
        return (self.c1, self.c2, self.c3)

    @property
    def is_bell_diagonal(self) -> bool:
        return self.r == 0.0 and self.s == 0.0

    def as_tuple(self) -> tuple[float, float, float, float, float]:
        return (self.r, self.s, self.c1, self.c2, self.c3)

    @classmethod
    def bell_diagonal(cls, c1: float, c2: float, c3: float) -> XStateParams:
        return cls(0.0, 0.0, c1, c2, c3)


@dataclass(frozen=True)
class BellDiagonalParams:
    """Correlation coefficients of a Bell-diagonal state."""

    c1: float
    c2: float
    c3: float

    def __post_init__(self):
        # delegate validation to the X-state family it belongs to
        self.as_x()

    def as_x(self) -> XStateParams:
        return XStateParams.bell_diagonal(self.c1, self.c2, self.c3)


def as_x_params(p) -> XStateParams:
    """Accept either parameter type (or a plain 3/5-tuple) and return X params."""
    if isinstance(p, XStateParams):
        return p
    if isinstance(p, BellDiagonalParams):
        return p.as_x()
    values = tuple(p)
    if len(values) == 3:
        return XStateParams.bell_diagonal(*values)
    if len(values) == 5:
        return XStateParams(*values)
    raise ValueError(f"expected 3 or 5 parameters, got {len(values)}")


def to_density_matrix(p) -> np.ndarray:
    """Build the 4x4 density matrix for ``p``.

    Entries are filled directly so that everything off the diagonal and
    anti-diagonal is exactly zero.
    """
    r, s, c1, c2, c3 = as_x_params(p).as_tuple()
    m = np.zeros((4, 4), dtype=complex)
    m[0, 0] = 1 + r + s + c3
    m[1, 1] = 1 + r - s - c3
    m[2, 2] = 1 - r + s - c3
    m[3, 3] = 1 - r - s + c3
    m[0, 3] = m[3, 0] = c1 - c2
    m[1, 2] = m[2, 1] = c1 + c2
    return 0.25 * m


def from_density_matrix(m) -> XStateParams:
    """Recover (r, s, c1, c2, c3) from an X-shaped density matrix."""
    m = as_operator(m, {(4, 4)})
    if np.max(np.abs(m - m.conj().T)) > STRUCTURE_TOL:
        raise StructureError("matrix is not Hermitian")
    if np.max(np.abs(m[_OFF_X])) > STRUCTURE_TOL:
        raise StructureError("matrix has entries outside the X pattern")
    anti = np.array([m[0, 3], m[1, 2]])
    if np.max(np.abs(anti.imag)) > STRUCTURE_TOL:
        # imaginary anti-diagonal parts are X.Y / Y.X correlations
        raise StructureError("anti-diagonal has imaginary parts (off-axis correlations)")
    if abs(np.trace(m).real - 1.0) > STRUCTURE_TOL:
        raise PhysicalityError("trace deviates from 1")

    # Tr(m O) for each observable at once
    values = np.einsum("kij,ji->k", _OBSERVABLES, m).real
    return XStateParams(*values.tolist())


def closed_form_eigenvalues(p) -> np.ndarray:
    """Spectrum of the X state from its two 2x2 blocks, sorted descending."""
    return np.array(sorted(_block_eigenvalues(*as_x_params(p).as_tuple()), reverse=True))
