import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st
from numpy.testing import assert_allclose

from helpers import random_bell_diagonal, random_x_state
from xdiscord.channels import ChannelAtTime, evolve_params
from xdiscord.errors import PhysicalityError, StructureError
from xdiscord.linalg import hermitian_eigenvalues
from xdiscord.states import (
    BellDiagonalParams,
    XStateParams,
    closed_form_eigenvalues,
    from_density_matrix,
    to_density_matrix,
)

unit = st.floats(-1, 1, allow_nan=False)


def physical_or_none(*v):
    try:
        return XStateParams(*v)
    except PhysicalityError:
        return None


class TestConstruction:
    def test_rejects_unphysical(self):
        with pytest.raises(PhysicalityError):
            XStateParams.bell_diagonal(1, 1, 1)

    def test_rejects_out_of_range(self):
        with pytest.raises(PhysicalityError):
            XStateParams(1.5, 0, 0, 0, 0)

    def test_bell_diagonal_type(self):
        p = BellDiagonalParams(0.1, 0.4, 0.5)
        assert p.as_x() == XStateParams(0, 0, 0.1, 0.4, 0.5)
        with pytest.raises(PhysicalityError):
            BellDiagonalParams(1, 1, 1)

    def test_boundary_states_allowed(self):
        XStateParams.bell_diagonal(1, -1, 1)
        XStateParams(1, 1, 0, 0, 1)  # |00><00|


class TestToDensityMatrix:
    def test_zero_params(self):
        assert_allclose(to_density_matrix(XStateParams(0, 0, 0, 0, 0)), np.eye(4) / 4)

    def test_bell_projector(self):
        rho = to_density_matrix(XStateParams.bell_diagonal(1, -1, 1))
        psi = np.array([1, 0, 0, 1]) / np.sqrt(2)
        assert_allclose(rho, np.outer(psi, psi), atol=1e-15)

    def test_hand_expansion(self):
        r, s, c1, c2, c3 = 0.1, 0.01, 0.1, 0.4, 0.3
        rho = to_density_matrix(XStateParams(r, s, c1, c2, c3))
        assert_allclose(
            np.diag(rho).real,
            [(1 + r + s + c3) / 4, (1 + r - s - c3) / 4, (1 - r + s - c3) / 4, (1 - r - s + c3) / 4],
        )
        assert rho[0, 3] == rho[3, 0] == pytest.approx((c1 - c2) / 4)
        assert rho[1, 2] == rho[2, 1] == pytest.approx((c1 + c2) / 4)

    def test_x_shape_exact(self, rng):
        for _ in range(20):
            rho = to_density_matrix(random_x_state(rng))
            mask = ~(np.eye(4, dtype=bool) | np.fliplr(np.eye(4, dtype=bool)))
            assert np.all(rho[mask] == 0)
            assert np.trace(rho).real == pytest.approx(1.0, abs=1e-15)
            assert np.array_equal(rho, rho.conj().T)


class TestFromDensityMatrix:
    def test_maximally_mixed(self):
        assert from_density_matrix(np.eye(4) / 4).as_tuple() == (0, 0, 0, 0, 0)

    def test_amplitude_evolved(self):
        from xdiscord.channels import evolve_density_matrix

        ch = ChannelAtTime.from_control("amplitude", 0.5)
        rho = evolve_density_matrix(to_density_matrix(XStateParams.bell_diagonal(0.1, 0.4, 0.5)), ch)
        assert_allclose(from_density_matrix(rho).as_tuple(), (-0.75, 0, 0.05, 0.2, 0.125), atol=1e-12)

    def test_round_trip(self, rng):
        for _ in range(50):
            p = random_x_state(rng)
            assert_allclose(from_density_matrix(to_density_matrix(p)).as_tuple(), p.as_tuple(), atol=1e-12)

    def test_rejects_off_x_entries(self):
        rho = np.eye(4, dtype=complex) / 4
        rho[0, 1] = rho[1, 0] = 0.1
        with pytest.raises(StructureError):
            from_density_matrix(rho)

    def test_rejects_transverse_correlations(self):
        rho = np.eye(4, dtype=complex) / 4
        rho[0, 3], rho[3, 0] = 0.1j, -0.1j
        with pytest.raises(StructureError):
            from_density_matrix(rho)


class TestClosedFormEigenvalues:
    def test_flat(self):
        assert_allclose(closed_form_eigenvalues(XStateParams(0, 0, 0, 0, 0)), [0.25] * 4)

    @pytest.mark.parametrize(
        "params",
        [
            (0, 0, 0.5, 0.5, -0.5),  # Werner-type
            (0.1, -0.01, 0.1, 0.3, 0.4),
            (0.1, 0.01, 0.1, 0.4, 0.3),
            (0, 0, 0.1, 0.4, 0.5),
        ],
    )
    def test_matches_numeric_diagonalisation(self, params):
        p = XStateParams(*params)
        assert_allclose(closed_form_eigenvalues(p), hermitian_eigenvalues(to_density_matrix(p)), atol=1e-10)

    def test_werner_pattern(self):
        c = 0.5
        expected = sorted([(1 - c - c + c) / 4, (1 - c + c - c) / 4, (1 + c - c - c) / 4, (1 + c + c + c) / 4], reverse=True)
        assert_allclose(closed_form_eigenvalues(XStateParams.bell_diagonal(c, c, -c)), expected, atol=1e-15)

    @settings(max_examples=200, deadline=None)
    @given(unit, unit, unit, unit, unit)
    def test_agrees_with_numeric_on_random(self, r, s, c1, c2, c3):
        p = physical_or_none(r, s, c1, c2, c3)
        assume(p is not None)
        assert_allclose(closed_form_eigenvalues(p), hermitian_eigenvalues(to_density_matrix(p)), atol=1e-10)


class TestChannelClosure:
    @pytest.mark.parametrize("kind", ["amplitude", "phase", "depolarizing"])
    def test_evolved_states_stay_physical_x_states(self, kind, rng):
        from xdiscord.channels import evolve_density_matrix

        for p0 in random_bell_diagonal(rng, 30):
            for tau_t in np.linspace(0, 10, 11):
                ch = ChannelAtTime.at_scaled_time(kind, tau_t)
                rho = evolve_density_matrix(to_density_matrix(p0), ch)
                back = from_density_matrix(rho)  # raises on broken X shape or physicality
                assert_allclose(back.as_tuple(), evolve_params(p0, ch).as_tuple(), atol=1e-10)
