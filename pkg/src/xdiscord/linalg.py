"""Small dense complex-matrix helpers for one- and two-qubit operators.

Matrices are plain ``numpy`` arrays of dtype ``complex128``. Only 2x2 and
4x4 shapes are accepted. All entropies are in bits.
"""

from __future__ import annotations

import numpy as np

from .errors import NotHermitianError, PhysicalityError, ShapeError

HERMITIAN_TOL = 1e-10
TRACE_TOL = 1e-9
NEGATIVE_EIG_TOL = 1e-10

_ALLOWED_SHAPES = {(2, 2), (4, 4)}

I2 = np.eye(2, dtype=complex)
I4 = np.eye(4, dtype=complex)
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
PAULIS = (SIGMA_X, SIGMA_Y, SIGMA_Z)


def as_operator(m, shapes=_ALLOWED_SHAPES) -> np.ndarray:
    """Coerce ``m`` to a complex array and check it is 2x2 or 4x4."""
    a = np.asarray(m, dtype=complex)
    if a.shape not in shapes:
        raise ShapeError(f"expected one of {sorted(shapes)}, got shape {a.shape}")
    return a


def tensor(a, b) -> np.ndarray:
    """Kronecker product of two square operators."""
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    for m in (a, b):
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ShapeError(f"tensor needs square matrices, got {m.shape}")
    out = np.kron(a, b)
    if out.shape not in _ALLOWED_SHAPES:
        raise ShapeError(f"product shape {out.shape} is not 2x2 or 4x4")
    return out


def partial_trace(m, keep: str = "A") -> np.ndarray:
    """Reduce a two-qubit operator to qubit ``keep`` ("A" = first factor)."""
    m = as_operator(m, {(4, 4)})
    t = m.reshape(2, 2, 2, 2)  # [a, b, a', b']
    if keep == "A":
        return np.einsum("ijkj->ik", t)
    if keep == "B":
        return np.einsum("ijik->jk", t)
    raise ValueError(f"keep must be 'A' or 'B', got {keep!r}")


def is_hermitian(m, tol: float = HERMITIAN_TOL) -> bool:
    m = np.asarray(m)
    return bool(np.max(np.abs(m - m.conj().T)) < tol)


def hermitian_eigenvalues(m) -> np.ndarray:
    """Real eigenvalues of a Hermitian operator, sorted descending."""
    m = as_operator(m)
    if not is_hermitian(m):
        raise NotHermitianError("matrix is not Hermitian within 1e-10")
    # symmetrise so LAPACK sees an exactly Hermitian input
    h = 0.5 * (m + m.conj().T)
    eigs = np.linalg.eigvalsh(h)[::-1]
    if abs(eigs.sum() - np.trace(h).real) > TRACE_TOL:
        raise ArithmeticError("eigenvalue sum does not reproduce the trace")
    return eigs


def clip_probabilities(eigs) -> np.ndarray:
    """Clip round-off negatives in a density-matrix spectrum.

    Values in ``[-1e-10, 0)`` become 0 (no renormalisation); anything
    more negative raises :class:`PhysicalityError`.
    """
    eigs = np.asarray(eigs, dtype=float)
    if np.any(eigs < -NEGATIVE_EIG_TOL):
        raise PhysicalityError(f"negative eigenvalue {eigs.min():.3e} below -1e-10")
    if np.any(eigs > 1 + NEGATIVE_EIG_TOL):
        raise PhysicalityError(f"eigenvalue {eigs.max():.3e} exceeds 1")
    return np.clip(eigs, 0.0, None)


def density_spectrum(m) -> np.ndarray:
    """Validated, clipped spectrum of a density matrix (descending)."""
    eigs = hermitian_eigenvalues(m)
    tr = eigs.sum()
    if abs(tr - 1.0) > TRACE_TOL:
        raise PhysicalityError(f"trace {tr:.12g} deviates from 1")
    return clip_probabilities(eigs)


def shannon_bits(probs) -> float:
    """-sum p log2 p with the 0 log 0 = 0 convention."""
    p = np.asarray(probs, dtype=float)
    p = p[p > 0]
    return float(-np.sum(p * np.log2(p))) + 0.0


def von_neumann_entropy(m) -> float:
    """Von Neumann entropy of a density matrix, in bits."""
    return shannon_bits(density_spectrum(m))
