import sys
import os
import pytest
import json
from fractions import Fraction
from unittest.mock import patch, mock_open

# Add the parent directory to the path to import from the main module
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from models.series import LaurentSeries, TruncatedSeries
from models.verification import CheckResult, VerificationReport
from services.asymptotics_service import asymptotic_report
from services.dp_service import dp_counts
from services.export_service import (
    ExportError,
    format_fraction,
    render_asymptotics,
    render_series,
    render_table,
    render_verification,
    series_to_human,
    write_output,
)


def sample_report(passed=True):
    checks = (
        CheckResult("golden.cata.f0", True, verified_order=17),
        CheckResult("closed_vs_dp.rtl.a1", passed, first_divergence=None if passed else 3, detail="" if passed else "first difference at z^3"),
    )
    return VerificationReport(order=17, brute_cap=8, sections=(("golden", checks[:1]), ("closed_vs_dp", checks[1:])))


class TestSeriesFormatting:
    """Test cases for series rendering"""

    def test_format_fraction(self):
        """Test lossless p and p/q strings"""
        assert format_fraction(Fraction(6, 3)) == "2"
        assert format_fraction(Fraction(-1, 3)) == "-1/3"

    def test_human_style(self):
        """Test the 1+z³+z⁵+3z⁶+... style"""
        series = TruncatedSeries.from_coeffs([1, 0, 0, 1, 0, 1, 3], 6)
        assert series_to_human(series) == "1+z³+z⁵+3z⁶+..."

    def test_human_negative_exponents(self):
        """Test that a Laurent series prints its negative powers"""
        rho = LaurentSeries.from_parts(-2, TruncatedSeries.from_coeffs([1, 0, 0, -2], 3))
        assert series_to_human(rho) == "z⁻²-2z+..."

    def test_human_zero_series(self):
        """Test that a zero series prints as 0"""
        assert series_to_human(TruncatedSeries.zero(3)) == "0+..."

    def test_json_uses_decimal_strings(self):
        """Test that big coefficients survive JSON as strings"""
        big = 2 ** 70
        payload = json.loads(render_series(TruncatedSeries.from_coeffs([1, big], 1), "json", key="x"))
        assert payload["coefficients"] == ["1", str(big)]
        assert payload["key"] == "x"
        assert payload["order"] == 1

    def test_json_is_deterministic(self):
        """Test that keys are sorted"""
        text = render_series(TruncatedSeries.one(2), "json", key="x", model="cata")
        assert text == json.dumps(json.loads(text), sort_keys=True, indent=2)

    def test_csv_rows(self):
        """Test the n,coefficient layout"""
        text = render_series(TruncatedSeries.from_coeffs([1, 0, 2], 2), "csv")
        assert text.splitlines() == ["n,coefficient", "0,1", "1,0", "2,2"]

    def test_csv_laurent_exponents(self):
        """Test that CSV rows start at the valuation"""
        rho = LaurentSeries.from_parts(-2, TruncatedSeries.from_coeffs([1, 0], 1))
        assert render_series(rho, "csv").splitlines()[1] == "-2,1"

    def test_unknown_format(self):
        """Test that an unknown format raises ExportError"""
        with pytest.raises(ExportError, match="Unknown output format"):
            render_series(TruncatedSeries.one(1), "xml")


class TestTableFormatting:
    """Test cases for count table rendering"""

    def test_csv_header_and_first_row(self):
        """Test the model,n,layer,level,count rows"""
        lines = render_table(dp_counts("plain", 2), "csv").splitlines()
        assert lines[0] == "model,n,layer,level,count"
        assert lines[1] == "plain,0,F,0,1"

    def test_json_layers(self):
        """Test that JSON lists counts per layer as strings"""
        payload = json.loads(render_table(dp_counts("air", 2), "json"))
        assert set(payload["counts"]) == {"A", "B", "C", "D"}
        assert payload["counts"]["A"][0][0] == "1"


class TestVerificationFormatting:
    """Test cases for verification report rendering"""

    def test_human_summary(self):
        """Test that the human report ends with the verdict"""
        text = render_verification(sample_report(), "human")
        assert text.splitlines()[-1] == "all checks passed"

    def test_human_names_failure(self):
        """Test that a failed check is named with its divergence"""
        text = render_verification(sample_report(passed=False), "human")
        assert "FAIL closed_vs_dp.rtl.a1 (first difference at z^3)" in text
        assert text.splitlines()[-1] == "1 check(s) failed"

    def test_json_report(self):
        """Test the JSON report structure"""
        payload = json.loads(render_verification(sample_report(passed=False), "json"))
        assert payload["passed"] is False
        assert payload["sections"]["closed_vs_dp"][0]["first_divergence"] == 3

    def test_csv_report(self):
        """Test one CSV row per check"""
        lines = render_verification(sample_report(), "csv").splitlines()
        assert lines[0] == "section,check,passed,first_divergence,detail"
        assert len(lines) == 3


class TestAsymptoticFormatting:
    """Test cases for asymptotic report rendering"""

    def test_human_report_contains_printed_constants(self):
        """Test that growth constants and the note are printed"""
        text = render_asymptotics(asymptotic_report(include_empirical=False), "human")
        assert "zSing = 0.529133683" in text
        assert "zbar = 0.524888598" in text
        assert "note:" in text

    def test_json_report_has_both_conventions(self):
        """Test that both amplitude conventions are in the JSON"""
        payload = json.loads(render_asymptotics(asymptotic_report(include_empirical=False), "json"))
        assert set(payload["amplitudes"]["f0"]) >= {"residue", "printed_convention"}
        assert "empirical" not in payload


class TestWriteOutput:
    """Test cases for write_output function"""

    def test_stdout(self, capsys):
        """Test that output goes to stdout without a path"""
        write_output("hello\n")
        assert capsys.readouterr().out == "hello\n"

    def test_file(self):
        """Test that output is written to the given file"""
        m = mock_open()
        with patch("builtins.open", m):
            write_output("data", "out.txt")
        m.assert_called_once_with("out.txt", 'w', encoding='utf-8')
        m().write.assert_called_once_with("data")

    def test_unwritable_file(self):
        """Test that an OS error becomes ExportError"""
        with patch("builtins.open", side_effect=OSError("read-only")):
            with pytest.raises(ExportError, match="Cannot write output file"):
                write_output("data", "/readonly/out.txt")
