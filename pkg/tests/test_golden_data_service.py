import sys
import os
import pytest
from unittest.mock import patch, mock_open
import json

# Add the parent directory to the path to import from the main module
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from services.golden_data_service import create_golden_series, load_golden_data
from models.golden import GoldenSeries
from models.series import LaurentSeries, TruncatedSeries


class TestLoadGoldenData:
    """Test cases for load_golden_data function"""

    def test_default_file_is_bundled(self):
        """Test that the bundled golden file loads without configuration"""
        with patch.dict(os.environ, {}, clear=True):
            data = load_golden_data()
            assert any(row["key"] == "cata.f0" for row in data)

    def test_file_not_found(self):
        """Test that FileNotFoundError is raised when the golden file doesn't exist"""
        with patch.dict(os.environ, {"GOLDEN_DATA_PATH": "/nonexistent/path.json"}):
            with pytest.raises(FileNotFoundError, match="Golden data file not found at path"):
                load_golden_data()

    def test_invalid_json(self):
        """Test that ValueError is raised for invalid JSON"""
        mock_data = "invalid json content"
        with patch.dict(os.environ, {"GOLDEN_DATA_PATH": "test.json"}):
            with patch("builtins.open", mock_open(read_data=mock_data)):
                with patch("os.path.exists", return_value=True):
                    with pytest.raises(ValueError, match="Invalid JSON in golden data file"):
                        load_golden_data()

    def test_non_list_data(self):
        """Test that ValueError is raised when data is not a list"""
        mock_data = json.dumps({"not": "a list"})
        with patch("builtins.open", mock_open(read_data=mock_data)):
            with patch("os.path.exists", return_value=True):
                with pytest.raises(ValueError, match="Golden data file must contain a list of series"):
                    load_golden_data("test.json")

    def test_read_error(self):
        """Test that other read failures become RuntimeError"""
        with patch("builtins.open", side_effect=PermissionError("denied")):
            with patch("os.path.exists", return_value=True):
                with pytest.raises(RuntimeError, match="Error reading golden data file"):
                    load_golden_data("test.json")

    def test_explicit_path_wins(self):
        """Test that an explicit path overrides the environment"""
        mock_data = json.dumps([{"key": "t", "coefficients": [0, 0, 0, 1]}])
        with patch.dict(os.environ, {"GOLDEN_DATA_PATH": "/nonexistent/path.json"}):
            with patch("builtins.open", mock_open(read_data=mock_data)):
                with patch("os.path.exists", return_value=True):
                    assert load_golden_data("other.json") == [{"key": "t", "coefficients": [0, 0, 0, 1]}]


class TestCreateGoldenSeries:
    """Test cases for create_golden_series function"""

    def test_empty_data(self):
        """Test create_golden_series with empty data"""
        with patch('services.golden_data_service.load_golden_data', return_value=[]):
            assert create_golden_series() == []

    def test_valid_entry(self):
        """Test that a well-formed entry becomes a GoldenSeries"""
        mock_data = [{"key": "t", "valuation": 0, "order": 6, "coefficients": [0, 0, 0, 1, 0, 0, 2], "description": "t"}]
        with patch('services.golden_data_service.load_golden_data', return_value=mock_data):
            golden = create_golden_series()
            assert golden == [GoldenSeries(key="t", valuation=0, order=6, coefficients=(0, 0, 0, 1, 0, 0, 2), description="t")]

    def test_order_defaults_to_length(self):
        """Test that a missing order is derived from the coefficient count"""
        mock_data = [{"key": "cata.open", "coefficients": [1, 1, 1, 2]}]
        with patch('services.golden_data_service.load_golden_data', return_value=mock_data):
            assert create_golden_series()[0].order == 3

    def test_skips_malformed_rows(self):
        """Test that rows without key, with non-integer or mis-sized coefficients are skipped"""
        mock_data = [
            {"coefficients": [1, 2]},
            "not a dict",
            {"key": "cata.f0", "coefficients": [1, "x"]},
            {"key": "cata.g0", "order": 5, "coefficients": [0, 1]},
            {"key": "t", "coefficients": [0, 0, 0, 1]},
        ]
        with patch('services.golden_data_service.load_golden_data', return_value=mock_data):
            golden = create_golden_series()
            assert [g.key for g in golden] == ["t"]

    def test_bundled_keys(self):
        """Test that the bundled file carries every printed expansion"""
        keys = {g.key for g in create_golden_series()}
        assert {"cata.f0", "cata.g0", "cata.open", "t", "air.rho", "air.K", "air.L"} <= keys


class TestGoldenSeries:
    """Test cases for GoldenSeries.to_series"""

    def test_power_series(self):
        """Test that a non-negative valuation gives a TruncatedSeries"""
        series = GoldenSeries(key="x", valuation=2, order=4, coefficients=(1, 2, 3)).to_series()
        assert isinstance(series, TruncatedSeries)
        assert list(series.coeffs) == [0, 0, 1, 2, 3]

    def test_laurent_series(self):
        """Test that a negative valuation gives a LaurentSeries"""
        series = GoldenSeries(key="air.rho", valuation=-2, order=1, coefficients=(1, 0, 0, -2)).to_series()
        assert isinstance(series, LaurentSeries)
        assert series.valuation == -2
        assert series.precision == 1
        assert series.coefficient(1) == -2
