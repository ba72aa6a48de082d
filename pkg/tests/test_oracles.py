import numpy as np
import pytest

from qtelsim import (
    QuadratureSpec,
    average_over_sphere,
    dephased_bell_channel,
    f_case_a_iso,
    f_case_a_x,
    f_case_a_z,
    f_case_b,
    favg,
    horodecki_optimal,
    singlet_fraction,
)

# frozen evaluation of 1 - (1 - e^-3)/2, shared by the z-noise forms at
# exponent 3 and theta = pi/2
F_AT_EXPONENT_3 = 0.5248935341839320


class TestPointwiseForms:
    def test_z_noise_pole_is_perfect(self):
        for kt in (0.0, 0.4, 3.0):
            assert f_case_a_z(0.0, 0.0, kt) == pytest.approx(1.0)

    def test_z_noise_strong_limit(self):
        theta = np.linspace(0, np.pi, 7)
        got = f_case_a_z(theta, 0.0, 50.0)
        np.testing.assert_allclose(got, 0.5 * (1 + np.cos(theta) ** 2), atol=1e-12)

    def test_z_noise_frozen_value(self):
        assert f_case_a_z(np.pi / 2, 1.1, 1.5) == pytest.approx(F_AT_EXPONENT_3, abs=1e-12)

    def test_z_noise_phi_independent(self):
        assert f_case_a_z(0.7, 0.3, 0.9) == f_case_a_z(0.7, 5.1, 0.9)

    def test_x_noise_protected_state(self):
        for kt in (0.0, 0.7, 10.0):
            assert f_case_a_x(np.pi / 2, 0.0, kt) == pytest.approx(1.0)

    def test_x_noise_strong_limit(self):
        theta, phi = 1.1, 0.6
        got = f_case_a_x(theta, phi, 60.0)
        assert got == pytest.approx(0.5 * (1 + np.sin(theta) ** 2 * np.cos(phi) ** 2))

    def test_x_noise_periodic_in_phi(self):
        assert f_case_a_x(0.9, 0.4, 0.8) == pytest.approx(f_case_a_x(0.9, 0.4 + np.pi, 0.8))

    def test_no_noise_is_perfect(self):
        rng = np.random.default_rng(0)
        th = rng.uniform(0, np.pi, 5)
        ph = rng.uniform(0, 2 * np.pi, 5)
        np.testing.assert_allclose(f_case_a_x(th, ph, 0.0), 1.0, atol=1e-15)
        np.testing.assert_allclose(f_case_b("z", th, ph, 0.0), 1.0, atol=1e-15)

    def test_channel_noise_doubles_exponent(self):
        # same functional form, exponent 4*kt instead of 2*kt
        assert f_case_b("z", np.pi / 2, 0.0, 0.75) == pytest.approx(F_AT_EXPONENT_3, abs=1e-12)
        th, ph = 0.8, 1.9
        assert f_case_b("x", th, ph, 0.6) == pytest.approx(f_case_a_x(th, ph, 1.2), abs=1e-14)

    def test_unknown_axis(self):
        with pytest.raises(ValueError):
            f_case_b("y", 0.3, 0.1, 0.5)

    def test_outputs_within_bounds(self):
        rng = np.random.default_rng(1)
        for _ in range(50):
            th = rng.uniform(0, np.pi)
            ph = rng.uniform(0, 2 * np.pi)
            kt = rng.uniform(0, 6)
            for val in (
                f_case_a_z(th, ph, kt),
                f_case_a_x(th, ph, kt),
                f_case_a_iso(th, ph, kt),
                f_case_b("z", th, ph, kt),
                f_case_b("x", th, ph, kt),
            ):
                assert 0.5 - 1e-12 <= val <= 1.0


class TestAverages:
    def test_all_tags_start_at_one(self):
        for tag in ("A1z", "A1x", "A2iso", "B1z", "B1x", "B2iso", "CDfit"):
            assert favg(tag, 0.0) == pytest.approx(1.0)

    def test_single_axis_asymptote(self):
        assert favg("A1z", 60.0) == pytest.approx(2.0 / 3.0)
        assert favg("B1x", 60.0) == pytest.approx(2.0 / 3.0)

    def test_isotropic_asymptote(self):
        assert favg("A2iso", 60.0) == pytest.approx(0.5)
        assert favg("B2iso", 60.0) == pytest.approx(0.5)

    def test_unknown_tag(self):
        with pytest.raises(ValueError):
            favg("Q7", 1.0)

    def test_quadrature_closes_the_loop(self):
        # sphere-averaging the pointwise forms reproduces the closed-form averages
        spec = QuadratureSpec(32, 32)
        cases = [
            (lambda t, p: f_case_a_z(t, p, 0.5), favg("A1z", 0.5)),
            (lambda t, p: f_case_a_x(t, p, 0.8), favg("A1x", 0.8)),
            (lambda t, p: f_case_b("z", t, p, 0.4), favg("B1z", 0.4)),
            (lambda t, p: f_case_b("x", t, p, 1.1), favg("B1x", 1.1)),
            (lambda t, p: f_case_a_iso(t, p, 0.3) * np.ones_like(t), favg("A2iso", 0.3)),
        ]
        for f, expected in cases:
            assert average_over_sphere(f, spec) == pytest.approx(expected, abs=1e-8)


class TestHorodecki:
    def test_perfect_channel(self):
        assert horodecki_optimal(1.0) == pytest.approx(1.0)

    def test_separable_boundary(self):
        assert horodecki_optimal(0.5) == pytest.approx(2.0 / 3.0)

    def test_range_validation(self):
        with pytest.raises(ValueError):
            horodecki_optimal(1.5)

    def test_consistent_with_dephased_channel_average(self):
        # optimal fidelity from the dephased pair's singlet fraction equals the
        # closed-form single-axis channel average, pointwise in the exposure
        for kt in np.linspace(0.0, 2.0, 9):
            f_ab = (1.0 + np.exp(-4.0 * kt)) / 2.0
            assert horodecki_optimal(f_ab) == pytest.approx(favg("B1z", kt), abs=1e-12)

    def test_consistent_via_simulated_singlet_fraction(self):
        for kt in (0.25, 1.0):
            f_ab = singlet_fraction(dephased_bell_channel(4.0 * kt))
            assert horodecki_optimal(f_ab) == pytest.approx(favg("B1z", kt), abs=1e-12)
