import math

import numpy as np
import pytest

from repeatersim import (
    DegenerateStateError,
    WernerForm,
    bell_phi_plus,
    decay_factor,
    depolarize,
    fidelity_phi_plus,
    maximally_mixed,
    swap_links,
    to_werner_form,
    validate_state,
    werner,
)


class TestStates:
    def test_bell_state_is_valid(self):
        rho = bell_phi_plus()
        validate_state(rho)
        assert fidelity_phi_plus(rho) == pytest.approx(1.0, abs=1e-15)

    def test_maximally_mixed_fidelity(self):
        assert fidelity_phi_plus(maximally_mixed()) == pytest.approx(0.25, abs=1e-15)

    @pytest.mark.parametrize("omega", [0.0, 0.3, 0.7, 1.0])
    def test_werner_fidelity_formula(self, omega):
        rho = werner(omega)
        validate_state(rho)
        assert fidelity_phi_plus(rho) == pytest.approx((3 * omega + 1) / 4, abs=1e-14)

    @pytest.mark.parametrize("omega", [-0.1, 1.1])
    def test_werner_rejects_bad_weight(self, omega):
        with pytest.raises(ValueError):
            werner(omega)

    def test_validate_rejects_non_hermitian(self):
        rho = bell_phi_plus()
        rho[0, 1] = 0.5
        with pytest.raises(ValueError):
            validate_state(rho)

    def test_validate_rejects_wrong_trace(self):
        with pytest.raises(ValueError):
            validate_state(2.0 * bell_phi_plus())

    def test_validate_rejects_negative_eigenvalue(self):
        rho = np.diag([0.6, 0.5, -0.1, 0.0]).astype(complex)
        with pytest.raises(ValueError):
            validate_state(rho)


class TestDepolarize:
    def test_zero_time_is_identity(self):
        rho = werner(0.8)
        np.testing.assert_allclose(depolarize(rho, 0.0, 10.0), rho, atol=1e-15)

    def test_infinite_lifetime_is_identity(self):
        rho = werner(0.8)
        np.testing.assert_allclose(depolarize(rho, 5.0, math.inf), rho, atol=1e-15)

    def test_long_time_limit_is_maximally_mixed(self):
        rho = depolarize(bell_phi_plus(), 1e6, 1.0)
        np.testing.assert_allclose(rho, maximally_mixed(), atol=1e-12)

    def test_fidelity_decay_closed_form(self):
        t, t_depol = 0.7, 3.0
        f0 = fidelity_phi_plus(werner(0.9))
        f1 = fidelity_phi_plus(depolarize(werner(0.9), t, t_depol))
        lam = math.exp(-t / t_depol)
        assert f1 == pytest.approx(lam * f0 + (1 - lam) / 4, abs=1e-14)

    def test_composition_adds_times(self):
        rho = werner(0.95)
        once = depolarize(rho, 1.3, 5.0)
        twice = depolarize(depolarize(rho, 0.8, 5.0), 0.5, 5.0)
        np.testing.assert_allclose(once, twice, atol=1e-14)

    def test_negative_time_rejected(self):
        with pytest.raises(ValueError):
            depolarize(bell_phi_plus(), -1.0, 5.0)

    def test_decay_factor_inf(self):
        assert decay_factor(123.0, math.inf) == 1.0


class TestWernerForm:
    def test_round_trip(self):
        w = WernerForm.from_fidelity(0.85)
        assert fidelity_phi_plus(w.to_matrix()) == pytest.approx(0.85, abs=1e-14)

    def test_from_omega(self):
        w = WernerForm.from_omega(0.6)
        assert w.fidelity == pytest.approx(0.7, abs=1e-15)

    def test_inconsistent_pair_rejected(self):
        with pytest.raises(ValueError):
            WernerForm(0.5, 0.9)

    def test_to_werner_form_matches(self):
        rho = werner(0.42)
        assert to_werner_form(rho).omega == pytest.approx(0.42, abs=1e-12)


class TestSwap:
    def test_perfect_swap_preserves_bell(self):
        out = swap_links(bell_phi_plus(), bell_phi_plus())
        validate_state(out)
        assert fidelity_phi_plus(out) == pytest.approx(1.0, abs=1e-12)

    @pytest.mark.parametrize("w1,w2", [(0.9, 0.9), (1.0, 0.5), (0.3, 0.8)])
    def test_werner_closed_form(self, w1, w2):
        out = swap_links(werner(w1), werner(w2))
        validate_state(out)
        assert fidelity_phi_plus(out) == pytest.approx((1 + 3 * w1 * w2) / 4, abs=1e-12)

    def test_swap_output_is_werner(self):
        out = swap_links(werner(0.7), werner(0.85))
        np.testing.assert_allclose(out, to_werner_form(out).to_matrix(), atol=1e-12)

    def test_symmetric_in_arguments(self):
        a = swap_links(werner(0.3), werner(0.9))
        b = swap_links(werner(0.9), werner(0.3))
        np.testing.assert_allclose(a, b, atol=1e-12)

    def test_degenerate_projection_raises(self):
        # |01><01| x |10><10| has zero overlap with the middle-pair projector
        ket01 = np.zeros(4, dtype=complex)
        ket01[1] = 1.0
        ket10 = np.zeros(4, dtype=complex)
        ket10[2] = 1.0
        rho01 = np.outer(ket01, ket01)
        rho10 = np.outer(ket10, ket10)
        with pytest.raises(DegenerateStateError):
            swap_links(rho01, rho01)
        # sanity: a swappable product state does not raise
        swap_links(rho01, rho10)
