"""Random state samplers shared by the test modules."""

import numpy as np

from xdiscord.channels import ChannelAtTime, NoiseKind, evolve_params
from xdiscord.errors import PhysicalityError
from xdiscord.states import XStateParams


def bell_from_weights(w):
    """Bell-diagonal coefficients from the four Bell-basis populations."""
    la, lb, lc, ld = w
    return (lc + ld - la - lb, lb + ld - la - lc, lb + lc - la - ld)


def random_bell_diagonal(rng, n):
    """n physical Bell-diagonal states, uniform over the tetrahedron."""
    return [XStateParams.bell_diagonal(*bell_from_weights(w)) for w in rng.dirichlet(np.ones(4), n)]


def random_x_state(rng):
    while True:
        v = rng.uniform(-1, 1, 5)
        try:
            return XStateParams(*v)
        except PhysicalityError:
            continue


def random_evolved(rng, n, max_tau_t=5.0):
    """n (initial, channel, evolved) triples spread over the three channels."""
    kinds = list(NoiseKind)
    out = []
    for i, p0 in enumerate(random_bell_diagonal(rng, n)):
        ch = ChannelAtTime.at_scaled_time(kinds[i % 3], rng.uniform(0, max_tau_t))
        out.append((p0, ch, evolve_params(p0, ch)))
    return out
