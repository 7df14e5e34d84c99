import sys
import os
import pytest
from unittest.mock import patch

# Add the parent directory to the path to import from the main module
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from models.path_model import Layer
from models.series import LaurentSeries, TruncatedSeries
from services.dp_service import dp_counts, dp_series, open_total
from services.kernel_service import (
    KernelError,
    air_A1_C1,
    air_ak,
    air_bk,
    air_ck,
    air_dk,
    air_open_total,
    build_air_kernel,
    build_kernel_basis,
    cata_F1_G1,
    cata_f0,
    cata_fk,
    cata_g0,
    cata_gk,
    cata_open_total,
    closed_form,
    kernel_cancellation_check,
    rtl_closed,
    t_lagrange,
)

F0_COEFFS = [1, 0, 0, 1, 0, 1, 3, 1, 7, 13, 11, 43, 70, 89, 264, 424, 650, 1657]
G0_COEFFS = [0, 1, 0, 0, 2, 0, 2, 7, 2, 15, 32, 23, 96, 174, 192, 604, 1048, 1434]
RHO_COEFFS = [
    1, 0, 0, -2, 0, -2, -1, -2, -6, -4, -15, -22, -33, -86, -115, -256, -486, -804,
    -1783, -3074, -6049, -12104, -21902, -44918, -85235, -165124, -331137, -631740, -1261785, -2477694,
]
K_COEFFS = [0, 0, -2, 0, 0, -2, -1, -2, -6, -4, -15, -22, -33, -86, -115, -256, -486]
L_COEFFS = [0, 0, 1, 0, 0, 2, 0, 2, 5, 2, 14, 16, 27, 74, 86, 222, 395]


def level_sum(model, layer, first_level, order):
    table = dp_counts(model, order)
    return [sum(table.counts[layer][n][first_level:]) for n in range(order + 1)]


class TestCatastropheBasis:
    """Test cases for t, u1 and the bad quadratic"""

    def test_t_lagrange(self):
        """Test t = z^3 + 2z^6 + 7z^9 + 30z^12"""
        assert list(t_lagrange(12).coeffs) == [0, 0, 0, 1, 0, 0, 2, 0, 0, 7, 0, 0, 30]

    def test_basis_fields(self):
        """Test that u1 = z/t starts at z^-2 and the bad quadratic is monic"""
        basis = build_kernel_basis(12)
        assert basis.working_order > basis.order
        assert basis.u1.valuation == -2
        assert basis.bad_quadratic.degree == 2
        assert basis.bad_quadratic.leading[0] == 1

    def test_order_too_small(self):
        """Test that the basis needs order at least 3"""
        with pytest.raises(KernelError, match="needs order >= 3"):
            build_kernel_basis(2)

    def test_invalid_guard_order(self):
        """Test that a guard order below the minimum is reported as KernelError"""
        with patch.dict(os.environ, {"SMOTZKIN_GUARD_ORDER": "2"}):
            with pytest.raises(KernelError, match="SMOTZKIN_GUARD_ORDER"):
                build_kernel_basis(10)


class TestCatastropheClosedForms:
    """Test cases for the catastrophe closed forms"""

    def test_f0_printed_values(self):
        """Test f_0 against the printed expansion"""
        assert list(cata_f0(17).coeffs) == F0_COEFFS

    def test_g0_printed_values(self):
        """Test g_0 against the printed expansion"""
        assert list(cata_g0(17).coeffs) == G0_COEFFS

    def test_open_total_printed_values(self):
        """Test the open total against the printed expansion"""
        assert list(cata_open_total(11).coeffs) == [1, 1, 1, 2, 3, 5, 10, 16, 30, 58, 98, 189]

    @pytest.mark.parametrize("k", [0, 2, 5])
    def test_level_coefficients_match_dp(self, k):
        """Test [u^k]F and [u^k]G against the states at level k + 1"""
        assert cata_fk(24, k).coeffs == dp_series("cata", Layer.F, k + 1, 24).coeffs
        assert cata_gk(24, k).coeffs == dp_series("cata", Layer.G, k + 1, 24).coeffs

    def test_level_totals_match_dp(self):
        """Test F(1) and G(1) against level sums"""
        totals = cata_F1_G1(20)
        assert list(totals.first.coeffs) == level_sum("cata", Layer.F, 1, 20)
        assert list(totals.second.coeffs) == level_sum("cata", Layer.G, 1, 20)

    def test_negative_level(self):
        """Test that a negative level index is rejected"""
        with pytest.raises(KernelError, match="Level index must be non-negative"):
            cata_fk(10, -1)

    def test_small_orders(self):
        """Test that orders below 3 still give exact series"""
        assert list(cata_f0(0).coeffs) == [1]
        assert list(cata_g0(2).coeffs) == [0, 1, 0]


class TestRightToLeftClosedForms:
    """Test cases for the right-to-left catastrophe closed forms"""

    def test_closed_forms_match_dp(self):
        """Test a_0, a_1, b_0, b_1 against the recursions"""
        forms = rtl_closed(20)
        assert forms.a0.coeffs == dp_series("cata-rtl", Layer.A, 0, 20).coeffs
        assert forms.a1.coeffs == dp_series("cata-rtl", Layer.A, 1, 20).coeffs
        assert forms.b0.coeffs == dp_series("cata-rtl", Layer.B, 0, 20).coeffs
        assert forms.b1.coeffs == dp_series("cata-rtl", Layer.B, 1, 20).coeffs

    def test_origin_equals_left_to_right(self):
        """Test a_0 = f_0"""
        assert rtl_closed(17).a0.coeffs == cata_f0(17).coeffs


class TestAirPocketClosedForms:
    """Test cases for the air pocket kernel and closed forms"""

    def test_rho_printed_values(self):
        """Test rho from z^-2 to z^27 against the printed expansion"""
        rho = closed_form("air.rho", 27)
        assert isinstance(rho, LaurentSeries)
        assert rho.valuation == -2
        assert rho.precision == 27
        assert [c for _, c in rho.terms()] == RHO_COEFFS

    def test_K_and_L_printed_values(self):
        """Test K and L against the printed expansions"""
        assert list(closed_form("air.K", 16).coeffs) == K_COEFFS
        assert list(closed_form("air.L", 16).coeffs) == L_COEFFS

    def test_kernel_bad_quadratic_is_monic(self):
        """Test the monic quadratic u^2 + (K/z^2)u + L/z^2"""
        kernel = build_air_kernel(10)
        assert kernel.bad_quadratic.coeffs[2][0] == 1
        assert kernel.bad_quadratic.coeffs[1][0] == -2
        assert kernel.bad_quadratic.coeffs[0][0] == 1

    @pytest.mark.parametrize("k", [0, 1, 4])
    def test_level_series_match_dp(self, k):
        """Test a_k, b_k, c_k, d_k against the recursions"""
        assert air_ak(20, k).coeffs == dp_series("air", Layer.A, k, 20).coeffs
        assert air_bk(20, k).coeffs == dp_series("air", Layer.B, k, 20).coeffs
        assert air_ck(20, k).coeffs == dp_series("air", Layer.C, k, 20).coeffs
        assert air_dk(20, k).coeffs == dp_series("air", Layer.D, k, 20).coeffs

    def test_a_k_valuation(self):
        """Test that a_k starts at z^2k"""
        assert air_ak(12, 3).valuation() == 6

    def test_totals_match_dp(self):
        """Test A(1), C(1) and the open total against the recursions"""
        totals = air_A1_C1(18)
        assert list(totals.first.coeffs) == level_sum("air", Layer.A, 0, 18)
        assert list(totals.second.coeffs) == level_sum("air", Layer.C, 0, 18)
        assert air_open_total(18).coeffs == open_total("air", 18).coeffs


class TestKernelCancellationCheck:
    """Test cases for the kernel cancellation identities"""

    def test_all_identities_hold(self):
        """Test that every identity vanishes to the requested order"""
        report = kernel_cancellation_check(24)
        assert report.passed
        assert report.verified_order >= 24
        names = {check.name for check in report.checks}
        assert "cata.F_numerator_mod_bad_quadratic" in names
        assert "rtl.reciprocal_root_quadratic" in names
        assert "air.rho_identity" in names

    def test_perturbed_g1_is_detected(self):
        """Test the negative control on g_1"""
        report = kernel_cancellation_check(20, perturb="cata.g1")
        assert not report.passed
        failed = {check.name for check in report.checks if not check.passed}
        assert "cata.G_numerator_mod_bad_quadratic" in failed
        assert not any(name.startswith("air.") for name in failed)

    def test_perturbed_a1_is_detected(self):
        """Test the negative control on the right-to-left a_1"""
        report = kernel_cancellation_check(20, perturb="rtl.a1")
        failed = [check for check in report.checks if not check.passed]
        assert "rtl.A_numerator_at_t_over_z" in {check.name for check in failed}
        assert all(check.first_divergence is not None for check in failed)

    def test_unknown_perturbation(self):
        """Test that an unknown perturbation target is rejected"""
        with pytest.raises(KernelError, match="Unknown perturbation target"):
            kernel_cancellation_check(10, perturb="cata.f7")


class TestClosedFormKeys:
    """Test cases for closed_form key lookup"""

    def test_indexed_key(self):
        """Test that cata.fk:2 is f_3"""
        assert closed_form("cata.fk:2", 15).coeffs == cata_fk(15, 2).coeffs

    def test_t_key(self):
        """Test that t has coefficients 1, 2, 7, 30 at multiples of 3"""
        t = closed_form("t", 12)
        assert [t[3], t[6], t[9], t[12]] == [1, 2, 7, 30]

    def test_unknown_key(self):
        """Test that an unknown key raises KernelError"""
        with pytest.raises(KernelError, match="Unknown closed-form key"):
            closed_form("cata.h0", 5)

    def test_indexed_key_without_level(self):
        """Test that indexed keys need a level"""
        with pytest.raises(KernelError, match="needs a level"):
            closed_form("air.ak", 5)

    def test_negative_order(self):
        """Test that a negative order is rejected"""
        with pytest.raises(KernelError, match="non-negative"):
            closed_form("cata.f0", -1)

    def test_every_power_series_key_is_integral(self):
        """Test that counting series have integer coefficients"""
        for key in ("cata.open", "rtl.b1", "air.A1", "air.open", "air.dk:1"):
            series = closed_form(key, 15)
            assert isinstance(series, TruncatedSeries)
            assert series.is_integral()
