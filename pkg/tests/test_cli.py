import sys
import os
import io
import json
from unittest.mock import patch, mock_open

# Add the parent directory to the path to import from the main module
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from smotzkin_cli import EXIT_OK, EXIT_USAGE, EXIT_VERIFICATION_FAILED, main


class TestCoeffsCommand:
    """Test cases for the coeffs subcommand"""

    def test_f0_table(self, capsys):
        """Test that the f0 table ends with 1657"""
        assert main(["coeffs", "--model", "cata", "--layer", "F", "--level", "0", "--n", "17", "--format", "csv"]) == EXIT_OK
        lines = capsys.readouterr().out.splitlines()
        assert lines[0] == "n,coefficient"
        assert lines[-1] == "17,1657"

    def test_air_origin(self, capsys):
        """Test that A0 only holds the empty word"""
        assert main(["coeffs", "--model", "air", "--layer", "A", "--n", "5", "--format", "json"]) == EXIT_OK
        assert json.loads(capsys.readouterr().out)["coefficients"] == ["1", "0", "0", "0", "0", "0"]

    def test_plain_short_paths(self, capsys):
        """Test that no nonempty closed plain path is shorter than 3"""
        assert main(["coeffs", "--model", "plain", "--layer", "F", "--n", "2", "--format", "csv"]) == EXIT_OK
        assert capsys.readouterr().out.splitlines()[1:] == ["0,1", "1,0", "2,0"]

    def test_invalid_layer(self, capsys):
        """Test that an invalid state exits 2 with a diagnostic"""
        assert main(["coeffs", "--model", "cata", "--layer", "C", "--n", "3"]) == EXIT_USAGE
        assert "not part of model cata" in capsys.readouterr().err

    def test_default_order_from_environment(self, capsys):
        """Test that SMOTZKIN_ORDER sets the default N"""
        with patch.dict(os.environ, {"SMOTZKIN_ORDER": "4"}):
            assert main(["coeffs", "--layer", "F", "--format", "csv"]) == EXIT_OK
        assert capsys.readouterr().out.splitlines()[-1] == "4,0"


class TestClosedCommand:
    """Test cases for the closed subcommand"""

    def test_t_series(self, capsys):
        """Test the human rendering of t"""
        assert main(["closed", "--key", "t", "--n", "12"]) == EXIT_OK
        assert capsys.readouterr().out == "t = z³+2z⁶+7z⁹+30z¹²+...\n"

    def test_open_total(self, capsys):
        """Test that the open total ends with 189"""
        assert main(["closed", "--key", "cata.open", "--n", "11", "--format", "csv"]) == EXIT_OK
        assert capsys.readouterr().out.splitlines()[-1] == "11,189"

    def test_rho_starts_at_minus_two(self, capsys):
        """Test that rho is written from z^-2"""
        assert main(["closed", "--key", "air.rho", "--n", "27", "--format", "json"]) == EXIT_OK
        payload = json.loads(capsys.readouterr().out)
        assert payload["first_exponent"] == -2
        assert payload["order"] == 27
        assert payload["coefficients"][-1] == "-2477694"

    def test_unknown_key(self, capsys):
        """Test that an unknown key exits 2"""
        assert main(["closed", "--key", "nope", "--n", "3"]) == EXIT_USAGE
        assert "Unknown closed-form key" in capsys.readouterr().err

    def test_out_file(self):
        """Test that --out writes to a file"""
        m = mock_open()
        with patch("builtins.open", m):
            assert main(["closed", "--key", "cata.f0", "--n", "5", "--format", "csv", "--out", "f0.csv"]) == EXIT_OK
        m().write.assert_called_once_with("n,coefficient\n0,1\n1,0\n2,0\n3,1\n4,0\n5,1\n")


class TestTableCommand:
    """Test cases for the table subcommand"""

    def test_brute_and_dp_tables_agree(self, capsys):
        """Test that both methods give the same CSV"""
        assert main(["table", "--model", "cata-rtl", "--n", "6", "--method", "brute", "--format", "csv"]) == EXIT_OK
        brute = capsys.readouterr().out
        assert main(["table", "--model", "cata-rtl", "--n", "6", "--method", "dp", "--format", "csv"]) == EXIT_OK
        assert capsys.readouterr().out == brute

    def test_brute_cap_bound(self, capsys):
        """Test that a brute-force cap above 16 is a usage error"""
        assert main(["table", "--n", "5", "--brute-cap", "20"]) == EXIT_USAGE
        assert "Brute-force cap" in capsys.readouterr().err


class TestRecognizeCommand:
    """Test cases for the recognize subcommand"""

    def test_words_from_stdin(self, capsys):
        """Test end states and rejections"""
        with patch("sys.stdin", io.StringIO("L,U,D\nD\n\nL,U,L,U,C\n")):
            assert main(["recognize", "--model", "cata"]) == EXIT_OK
        assert capsys.readouterr().out.splitlines() == ["L,U,D\tF0", "D\trejected", "L,U,L,U,C\tF0"]

    def test_words_from_file(self, capsys):
        """Test reading words from a file"""
        with patch("builtins.open", mock_open(read_data="C3,D\n")):
            assert main(["recognize", "--model", "cata-rtl", "words.txt"]) == EXIT_OK
        assert capsys.readouterr().out == "C3,D\tB2\n"

    def test_malformed_word(self, capsys):
        """Test that a malformed symbol exits 2"""
        with patch("sys.stdin", io.StringIO("L,X\n")):
            assert main(["recognize"]) == EXIT_USAGE
        assert "Malformed step symbol" in capsys.readouterr().err


class TestVerifyCommand:
    """Test cases for the verify subcommand"""

    def test_small_run_passes(self, capsys):
        """Test that a small verification exits 0"""
        assert main(["verify", "--n", "10", "--brute-cap", "5", "--no-asymptotics"]) == EXIT_OK
        assert capsys.readouterr().out.splitlines()[-1] == "all checks passed"

    def test_perturbation_exits_1(self, capsys):
        """Test that the negative control exits 1 naming the failed identity"""
        assert main(["verify", "--n", "10", "--brute-cap", "5", "--no-asymptotics", "--perturb", "rtl.a1"]) == EXIT_VERIFICATION_FAILED
        assert "rtl.A_numerator_at_t_over_z" in capsys.readouterr().err

    def test_json_report(self, capsys):
        """Test that the JSON report is parseable"""
        assert main(["verify", "--n", "8", "--brute-cap", "4", "--no-asymptotics", "--format", "json"]) == EXIT_OK
        assert json.loads(capsys.readouterr().out)["passed"] is True


class TestAsympCommand:
    """Test cases for the asymp subcommand"""

    def test_report_without_study(self, capsys):
        """Test that the report carries the convention note"""
        assert main(["asymp", "--no-empirical"]) == EXIT_OK
        out = capsys.readouterr().out
        assert "note:" in out
        assert "printed convention" in out

    def test_json_with_short_study(self, capsys):
        """Test the empirical section on a shorter series"""
        assert main(["asymp", "--n", "120", "--format", "json"]) == EXIT_OK
        payload = json.loads(capsys.readouterr().out)
        assert set(payload["verdicts"]) == {"f0", "g0"}
        assert payload["empirical"]["f0"]["window"] == [50, 120]


class TestUsage:
    """Test cases for argument handling"""

    def test_missing_command(self):
        """Test that a missing subcommand exits 2"""
        assert main([]) == EXIT_USAGE

    def test_unknown_model(self):
        """Test that an unknown model exits 2"""
        assert main(["coeffs", "--model", "bogus", "--layer", "F"]) == EXIT_USAGE
