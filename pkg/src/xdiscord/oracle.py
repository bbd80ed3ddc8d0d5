"""Brute-force minimisation of the measured conditional entropy.

Independent of the closed forms in :mod:`xdiscord.discord`: the oracle
works only from the raw 4x4 density matrix, scanning rank-1 projective
measurements of qubit B over the Bloch sphere, then refining the best grid
point by repeatedly shrinking a local grid around it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .discord import CorrelationBreakdown, argmin_branch, branch_entropies
from .linalg import I2, PAULIS, as_operator, density_spectrum, partial_trace, shannon_bits
from .states import to_density_matrix

PROB_FLOOR = 1e-14
DEFAULT_THETA_POINTS = 181
DEFAULT_PHI_POINTS = 360
DEFAULT_ROUNDS = 3
LOCAL_POINTS = 11
SHRINK = 3.0
VALUE_TOL = 1e-10
MAX_ROUNDS = 60


@dataclass(frozen=True)
class MeasurementDirection:
    theta: float
    phi: float

    @property
    def vector(self) -> np.ndarray:
        st = math.sin(self.theta)
        return np.array([st * math.cos(self.phi), st * math.sin(self.phi), math.cos(self.theta)])

    def projectors(self) -> tuple[np.ndarray, np.ndarray]:
        n_sigma = sum(n * s for n, s in zip(self.vector, PAULIS))
        return 0.5 * (I2 + n_sigma), 0.5 * (I2 - n_sigma)

    def angle_to(self, axis) -> float:
        """Angle between measurement axes, ignoring orientation (n ~ -n)."""
        axis = np.asarray(axis, dtype=float)
        cos = abs(float(self.vector @ axis)) / float(np.linalg.norm(axis))
        return math.acos(min(1.0, cos))


Z_AXIS = MeasurementDirection(0.0, 0.0)
X_AXIS = MeasurementDirection(math.pi / 2, 0.0)
Y_AXIS = MeasurementDirection(math.pi / 2, math.pi / 2)


@dataclass(frozen=True)
class OracleSettings:
    theta_points: int = DEFAULT_THETA_POINTS
    phi_points: int = DEFAULT_PHI_POINTS
    rounds: int = DEFAULT_ROUNDS
    value_tol: float = VALUE_TOL

    def __post_init__(self):
        if self.theta_points < 2 or self.phi_points < 1 or self.rounds < 0:
            raise ValueError("oracle grid needs >= 2 theta points, >= 1 phi point, rounds >= 0")


def _conditional_entropies(rho: np.ndarray, theta: np.ndarray, phi: np.ndarray) -> np.ndarray:
    """Vectorised sum_i p_i S(rho_A^i) for measurement directions (theta, phi)."""
    st = np.sin(theta)
    n = np.stack([st * np.cos(phi), st * np.sin(phi), np.cos(theta)], axis=-1)
    n_sigma = np.einsum("...k,kij->...ij", n, np.stack(PAULIS))
    t = rho.reshape(2, 2, 2, 2)  # [a, b, a', b']
    total = 0.0
    for sign in (1.0, -1.0):
        proj = 0.5 * (I2 + sign * n_sigma)
        # unnormalised conditional state of A: Tr_B[(I x P) rho]
        block = np.einsum("ajck,...kj->...ac", t, proj)
        prob = np.real(block[..., 0, 0] + block[..., 1, 1])
        a, d = np.real(block[..., 0, 0]), np.real(block[..., 1, 1])
        off = np.abs(block[..., 0, 1])
        gap = np.sqrt((a - d) ** 2 + 4 * off**2)
        safe = np.where(prob > PROB_FLOOR, prob, 1.0)
        lam_hi = np.clip((prob + gap) / (2 * safe), 0.0, 1.0)
        lam_lo = np.clip((prob - gap) / (2 * safe), 0.0, 1.0)
        with np.errstate(divide="ignore", invalid="ignore"):
            h = -(np.where(lam_hi > 0, lam_hi * np.log2(lam_hi), 0.0)
                  + np.where(lam_lo > 0, lam_lo * np.log2(lam_lo), 0.0))
        total = total + np.where(prob > PROB_FLOOR, prob * h, 0.0)
    return total


def _validated(rho) -> np.ndarray:
    rho = as_operator(rho, {(4, 4)})
    density_spectrum(rho)
    return rho


def conditional_entropy(rho, direction: MeasurementDirection) -> float:
    """Average entropy of A after measuring B along ``direction`` (bits)."""
    rho = _validated(rho)
    value = _conditional_entropies(rho, np.array(direction.theta), np.array(direction.phi))
    return float(value)


def _best(values, theta, phi):
    # exact ties resolved by (value, theta, phi) so the result is schedule independent
    order = np.lexsort((phi.ravel(), theta.ravel(), values.ravel()))
    i = order[0]
    return float(values.ravel()[i]), float(theta.ravel()[i]), float(phi.ravel()[i])


def min_conditional_entropy(rho, settings: OracleSettings | None = None):
    """Minimum conditional entropy over projective measurements on B.

    Returns ``(value, MeasurementDirection)``.
    """
    settings = settings or OracleSettings()
    rho = _validated(rho)
    thetas = np.linspace(0.0, math.pi, settings.theta_points)
    phis = 2 * math.pi * np.arange(settings.phi_points) / settings.phi_points
    theta, phi = np.meshgrid(thetas, phis, indexing="ij")
    best, bt, bp = _best(_conditional_entropies(rho, theta, phi), theta, phi)

    dt = thetas[1] - thetas[0]
    dp = 2 * math.pi / settings.phi_points
    offsets = np.linspace(-1.0, 1.0, LOCAL_POINTS)
    rounds = 0
    while rounds < MAX_ROUNDS:
        lt = np.clip(bt + dt * offsets, 0.0, math.pi)
        lp = np.mod(bp + dp * offsets, 2 * math.pi)
        theta, phi = np.meshgrid(lt, lp, indexing="ij")
        value, t_new, p_new = _best(_conditional_entropies(rho, theta, phi), theta, phi)
        improvement = best - value
        if value < best:
            best, bt, bp = value, t_new, p_new
        rounds += 1
        dt /= SHRINK
        dp /= SHRINK
        if rounds >= settings.rounds and improvement < settings.value_tol:
            break
    return best, MeasurementDirection(bt, bp)


def oracle_correlations(rho, settings: OracleSettings | None = None) -> CorrelationBreakdown:
    """Mutual information, classical correlation and discord by brute force.

    The branch fields hold the conditional entropies for measurements along
    the fixed z, x and y axes.
    """
    rho = _validated(rho)
    s_ab = shannon_bits(density_spectrum(rho))
    s_a = shannon_bits(density_spectrum(partial_trace(rho, "A")))
    s_b = shannon_bits(density_spectrum(partial_trace(rho, "B")))
    mutual_info = s_a + s_b - s_ab
    min_value, _ = min_conditional_entropy(rho, settings)
    classical = s_a - min_value
    branches = tuple(conditional_entropy(rho, d) for d in (Z_AXIS, X_AXIS, Y_AXIS))
    return CorrelationBreakdown(
        mutual_info=mutual_info,
        classical=classical,
        discord=mutual_info - classical,
        s1=branches[0],
        s2=branches[1],
        s3=branches[2],
        argmin_branch=argmin_branch(branches),
    )


@dataclass(frozen=True)
class OracleComparison:
    analytic_min: float
    oracle_min: float
    direction: MeasurementDirection

    @property
    def deviation(self) -> float:
        return abs(self.analytic_min - self.oracle_min)

    @property
    def diverged(self) -> bool:
        return self.deviation > 1e-6


def compare_with_oracle(p, settings: OracleSettings | None = None) -> OracleComparison:
    """Check min(S1, S2, S3) of an X state against the brute-force minimum."""
    value, direction = min_conditional_entropy(to_density_matrix(p), settings)
    return OracleComparison(min(branch_entropies(p)), value, direction)
