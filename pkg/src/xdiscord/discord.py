"""Closed-form mutual information, classical correlation and discord.

Measurements are projective and act on qubit B; the three branch
entropies S1, S2, S3 are the conditional entropies of A after measuring B
along z, x and y respectively. Everything is in bits.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .channels import ChannelAtTime, NoiseKind, evolve_params
from .errors import ChannelError, PhysicalityError
from .linalg import clip_probabilities, shannon_bits
from .states import BellDiagonalParams, XStateParams, as_x_params, closed_form_eigenvalues

CLIP_TOL = 1e-10
_LN2 = math.log(2.0)
_SERIES_CUTOFF = 1e-3


class Branch(str, enum.Enum):
    S1 = "S1"
    S2 = "S2"
    S3 = "S3"

    @property
    def index(self) -> int:
        return int(self.value[1]) - 1


BRANCHES = (Branch.S1, Branch.S2, Branch.S3)


@dataclass(frozen=True)
class CorrelationBreakdown:
    """Correlation content of one state.

    ``discord_clipped`` records that a round-off negative discord (or
    classical correlation) in ``[-1e-10, 0)`` was set to zero.
    """

    mutual_info: float
    classical: float
    discord: float
    s1: float
    s2: float
    s3: float
    argmin_branch: Branch
    discord_clipped: bool = False

    @property
    def branch_values(self) -> tuple[float, float, float]:
        return (self.s1, self.s2, self.s3)

    @property
    def min_branch_entropy(self) -> float:
        return min(self.s1, self.s2, self.s3)


def f(t: float) -> float:
    """Shifted binary entropy: a qubit of Bloch length t has entropy 1 + f(t)."""
    t = float(t)
    a = abs(t)
    if a > 1 + 1e-12:
        raise ValueError(f"f(t) needs |t| <= 1, got {t!r}")
    if a >= 1.0:
        return -1.0
    if a < _SERIES_CUTOFF:
        # -(1/ln2) * sum_k t^(2k) / (2k (2k-1)); avoids cancellation near 0
        t2 = a * a
        return -(t2 / 2 + t2**2 / 12 + t2**3 / 30 + t2**4 / 56) / _LN2
    return -((1 + a) * math.log1p(a) + (1 - a) * math.log1p(-a)) / (2 * _LN2)


def argmin_branch(values) -> Branch:
    """Index of the smallest branch entropy; ties go to the lowest index."""
    return BRANCHES[int(np.argmin(values))]


def branch_entropies(p) -> tuple[float, float, float]:
    """(S1, S2, S3) for an X state, measuring qubit B along z, x, y."""
    r, s, c1, c2, c3 = as_x_params(p).as_tuple()
    s1 = 1.0
    for sign in (1.0, -1.0):
        weight = 1 + sign * s
        if weight < 1e-12:
            # outcome never occurs; physical states force r + sign*c3 = 0 here
            if abs(r + sign * c3) > 1e-9:
                raise PhysicalityError(f"degenerate s={s} with c3={c3}, r={r}")
            continue
        s1 += 0.5 * weight * f(min(1.0, max(-1.0, (r + sign * c3) / weight)))
    s2 = 1.0 + f(min(1.0, math.hypot(r, c1)))
    s3 = 1.0 + f(min(1.0, math.hypot(r, c2)))
    return (s1, s2, s3)


def _finish(mutual_info, s_a, branches, min_entropy=None) -> CorrelationBreakdown:
    if min_entropy is None:
        min_entropy = min(branches)
    classical = s_a - min_entropy
    clipped = False
    if classical < 0:
        if classical < -CLIP_TOL:
            raise ArithmeticError(f"classical correlation {classical:.3e} is negative")
        classical, clipped = 0.0, True
    discord = mutual_info - classical
    if discord < 0:
        if discord < -CLIP_TOL:
            raise ArithmeticError(f"discord {discord:.3e} is negative")
        discord, clipped = 0.0, True
    return CorrelationBreakdown(
        mutual_info=mutual_info,
        classical=classical,
        discord=discord,
        s1=branches[0],
        s2=branches[1],
        s3=branches[2],
        argmin_branch=argmin_branch(branches),
        discord_clipped=clipped,
    )


def correlations(p) -> CorrelationBreakdown:
    """I, C, Q and the branch entropies of an X state."""
    p = as_x_params(p)
    s_a = 1.0 + f(p.r)
    s_b = 1.0 + f(p.s)
    s_ab = shannon_bits(clip_probabilities(closed_form_eigenvalues(p)))
    return _finish(s_a + s_b - s_ab, s_a, branch_entropies(p))


def phase_noise_correlations(p0, ch: ChannelAtTime) -> CorrelationBreakdown:
    """Correlations of a Bell-diagonal state after phase noise on qubit A.

    Uses the chi = max(|gamma c1|, |gamma c2|, |c3|) form directly.
    """
    if ch.kind is not NoiseKind.PHASE:
        raise ChannelError(f"expected phase noise, got {ch.kind.value}")
    if isinstance(p0, XStateParams) and not p0.is_bell_diagonal:
        raise ChannelError("phase-noise closed form needs a Bell-diagonal state")
    if not isinstance(p0, (BellDiagonalParams, XStateParams)):
        p0 = BellDiagonalParams(*p0)
    c1, c2, c3 = p0.c1, p0.c2, p0.c3
    g = ch.gamma
    a1, a2 = g * c1, g * c2
    # Bell-diagonal eigenvalues 1/4 (1 -+ ...) in the evolved coefficients
    lam = 0.25 * np.array([
        1 - a1 - a2 - c3,
        1 - a1 + a2 + c3,
        1 + a1 - a2 + c3,
        1 + a1 + a2 - c3,
    ])
    mutual_info = 2.0 - shannon_bits(clip_probabilities(lam))
    branches = (1.0 + f(c3), 1.0 + f(a1), 1.0 + f(a2))
    chi = max(abs(a1), abs(a2), abs(c3))
    return _finish(mutual_info, 1.0, branches, min_entropy=1.0 + f(chi))


def phase_transition_time(p0) -> float:
    """Scaled time tau*t at which gamma*max(|c1|,|c2|) drops to |c3|.

    Raises ``ValueError`` if no such crossing exists for t > 0.
    """
    c1, c2, c3 = as_x_params(p0).correlations
    lead = max(abs(c1), abs(c2))
    if c3 == 0 or lead <= abs(c3):
        raise ValueError("no chi branch crossing for this state")
    return -2.0 * math.log(abs(c3) / lead)


def evolved_correlations(p0, ch: ChannelAtTime) -> CorrelationBreakdown:
    return correlations(evolve_params(p0, ch))
