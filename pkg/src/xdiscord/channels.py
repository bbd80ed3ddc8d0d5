"""Single-qubit noise channels acting on qubit A of a two-qubit X state."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import ChannelError, ShapeError
from .linalg import I2, SIGMA_X, SIGMA_Y, SIGMA_Z, as_operator
from .states import XStateParams, as_x_params

COMPLETENESS_TOL = 1e-10


class NoiseKind(str, enum.Enum):
    AMPLITUDE = "amplitude"
    PHASE = "phase"
    DEPOLARIZING = "depolarizing"

    @classmethod
    def parse(cls, name) -> NoiseKind:
        if isinstance(name, cls):
            return name
        try:
            return cls(str(name).strip().lower())
        except ValueError:
            choices = ", ".join(k.value for k in cls)
            raise ValueError(f"unknown channel {name!r}; choose from {choices}") from None


@dataclass(frozen=True)
class ChannelAtTime:
    """A noise channel with decay rate ``tau`` evaluated at time ``t``.

    Only the product ``tau * t`` enters the Kraus operators.
    """

    kind: NoiseKind
    tau: float = 1.0
    t: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "kind", NoiseKind.parse(self.kind))
        if not (self.tau > 0 and math.isfinite(self.tau)):
            raise ValueError(f"decay rate must be positive, got {self.tau}")
        if not (self.t >= 0 and math.isfinite(self.t)):
            raise ValueError(f"time must be finite and >= 0, got {self.t}")

    @classmethod
    def at_scaled_time(cls, kind, tau_t: float, tau: float = 1.0) -> ChannelAtTime:
        return cls(kind, tau, tau_t / tau)

    @classmethod
    def from_control(cls, kind, value: float, tau: float = 1.0) -> ChannelAtTime:
        """Channel whose control parameter (eta, gamma or p) equals ``value``."""
        kind = NoiseKind.parse(kind)
        if kind is NoiseKind.DEPOLARIZING:
            if not 0 <= value < 1:
                raise ValueError("p must lie in [0, 1)")
            tau_t = -math.log1p(-value)
        else:
            if not 0 < value <= 1:
                raise ValueError("eta/gamma must lie in (0, 1]")
            tau_t = -2.0 * math.log(value)
        return cls(kind, tau, tau_t / tau)

    @property
    def tau_t(self) -> float:
        return self.tau * self.t

    @property
    def eta(self) -> float:
        return math.exp(-self.tau_t / 2)

    gamma = eta

    @property
    def p(self) -> float:
        return -math.expm1(-self.tau_t)

    @property
    def control(self) -> float:
        """eta, gamma or p depending on the channel kind."""
        return self.p if self.kind is NoiseKind.DEPOLARIZING else self.eta


def kraus_single_qubit(ch: ChannelAtTime) -> list[np.ndarray]:
    """Kraus operators of the single-qubit channel at its current time."""
    if ch.kind is NoiseKind.AMPLITUDE:
        eta = ch.eta
        e0 = np.array([[eta, 0], [0, 1]], dtype=complex)
        e1 = np.array([[0, 0], [math.sqrt(1 - eta**2), 0]], dtype=complex)
        return [e0, e1]
    if ch.kind is NoiseKind.PHASE:
        g = ch.gamma
        k0 = np.array([[1, 0], [0, g]], dtype=complex)
        k1 = np.array([[0, 0], [0, math.sqrt(1 - g**2)]], dtype=complex)
        return [k0, k1]
    p = ch.p
    a, b = math.sqrt(1 - p), math.sqrt(p / 3)
    return [a * I2, b * SIGMA_X, b * SIGMA_Y, b * SIGMA_Z]


def completeness_defect(ks) -> float:
    """max |sum K^dag K - I| over entries."""
    ks = np.asarray(ks, dtype=complex)
    total = np.einsum("kji,kjl->il", ks.conj(), ks)
    return float(np.max(np.abs(total - np.eye(total.shape[0]))))


def lift_to_qubit_A(ks) -> list[np.ndarray]:
    """Embed single-qubit Kraus operators as K (x) I on the two-qubit space."""
    return [np.kron(as_operator(k, {(2, 2)}), I2) for k in ks]


def apply(ks, rho) -> np.ndarray:
    """rho -> sum_i K_i rho K_i^dag for a complete 4x4 Kraus set."""
    if len(ks) == 0:
        raise ChannelError("empty Kraus set")
    ks = np.asarray(ks, dtype=complex)
    if ks.shape[1:] != (4, 4):
        raise ShapeError(f"Kraus operators must be 4x4, got {ks.shape[1:]}")
    rho = as_operator(rho, {(4, 4)})
    defect = completeness_defect(ks)
    if defect > COMPLETENESS_TOL:
        raise ChannelError(f"Kraus set is not trace preserving (defect {defect:.2e})")
    return np.einsum("kij,jl,kml->im", ks, rho, ks.conj())


def evolve_params(p0, ch: ChannelAtTime) -> XStateParams:
    """Closed-form parameters of the state after ``ch`` acts on qubit A.

    Amplitude and phase noise are defined for Bell-diagonal inputs only;
    depolarizing noise also accepts general X states.
    """
    p0 = as_x_params(p0)
    r, s, c1, c2, c3 = p0.as_tuple()
    if ch.kind is NoiseKind.DEPOLARIZING:
        k = 1 - 4 * ch.p / 3
        return XStateParams(k * r, s, k * c1, k * c2, k * c3)
    if not p0.is_bell_diagonal:
        raise ChannelError(
            f"{ch.kind.value} noise is only supported on Bell-diagonal inputs (r = s = 0)"
        )
    if ch.kind is NoiseKind.AMPLITUDE:
        eta = ch.eta
        return XStateParams(eta**2 - 1, 0.0, eta * c1, eta * c2, eta**2 * c3)
    g = ch.gamma
    return XStateParams(0.0, 0.0, g * c1, g * c2, c3)


def evolve_density_matrix(rho, ch: ChannelAtTime) -> np.ndarray:
    """Explicit Kraus path: lift the single-qubit operators and conjugate."""
    return apply(lift_to_qubit_A(kraus_single_qubit(ch)), rho)
