import json

import pytest

from surfplan import SweepConfig, generate_dataset
from surfplan.dataio import (
    DataFormatError,
    read_calibration,
    read_dataset_csv,
    write_dataset_csv,
)


@pytest.fixture(scope="module")
def records():
    return generate_dataset(SweepConfig(profiles_per_run=2, seed=8))


class TestDatasetCsv:
    def test_round_trip_exact(self, records, tmp_path):
        path = tmp_path / "data.csv"
        count = write_dataset_csv(records, path)
        assert count == len(records)
        assert read_dataset_csv(path) == records

    def test_header_and_formatting(self, records, tmp_path):
        path = tmp_path / "data.csv"
        write_dataset_csv(records[:3], path)
        lines = path.read_text().splitlines()
        assert lines[0] == ("depolarizing,gate,reset,readout,distance,rounds,"
                            "logical_error_rate")
        first = lines[1].split(",")
        assert "e" in first[0]  # scientific notation
        assert first[4].isdigit() and first[5].isdigit()

    def test_byte_identical_rewrites(self, records, tmp_path):
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        write_dataset_csv(records, a)
        write_dataset_csv(records, b)
        assert a.read_bytes() == b.read_bytes()

    def test_bad_header_rejected(self, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text("a,b,c\n1,2,3\n")
        with pytest.raises(DataFormatError, match="header"):
            read_dataset_csv(path)

    def test_malformed_cell_reports_row_and_column(self, records, tmp_path):
        path = tmp_path / "bad.csv"
        lines = ["depolarizing,gate,reset,readout,distance,rounds,logical_error_rate",
                 "1e-4,2e-3,1e-4,3e-3,3,1,1e-3",
                 "1e-4,not_a_number,1e-4,3e-3,3,2,1e-3"]
        path.write_text("\n".join(lines) + "\n")
        with pytest.raises(DataFormatError, match="row 3.*gate"):
            read_dataset_csv(path)

    def test_wrong_field_count_reported(self, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text("depolarizing,gate,reset,readout,distance,rounds,"
                        "logical_error_rate\n1,2,3\n")
        with pytest.raises(DataFormatError, match="row 2"):
            read_dataset_csv(path)

    def test_invalid_domain_value_reported(self, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text("depolarizing,gate,reset,readout,distance,rounds,"
                        "logical_error_rate\n1e-4,2e-3,1e-4,3e-3,4,1,1e-3\n")
        with pytest.raises(DataFormatError, match="row 2.*odd"):
            read_dataset_csv(path)


class TestCalibration:
    def test_reads_valid_snapshot(self, tmp_path):
        path = tmp_path / "snap.json"
        path.write_text(json.dumps({
            "device": "backend_a", "timestamp": "2026-08-01T00:00:00Z",
            "depolarizing": 2.4e-4, "gate": 1.7e-3, "reset": 1e-3,
            "readout": 2.5e-3}))
        snapshot = read_calibration(path)
        assert snapshot.device == "backend_a"
        assert snapshot.profile.gate == pytest.approx(1.7e-3)

    def test_missing_key_rejected(self, tmp_path):
        path = tmp_path / "snap.json"
        path.write_text(json.dumps({"device": "x", "timestamp": "t",
                                    "depolarizing": 1e-4, "gate": 1e-3,
                                    "reset": 1e-4}))
        with pytest.raises(DataFormatError, match="readout"):
            read_calibration(path)

    def test_unknown_key_rejected(self, tmp_path):
        path = tmp_path / "snap.json"
        path.write_text(json.dumps({"device": "x", "timestamp": "t",
                                    "depolarizing": 1e-4, "gate": 1e-3,
                                    "reset": 1e-4, "readout": 1e-3,
                                    "extra": 1}))
        with pytest.raises(DataFormatError, match="extra"):
            read_calibration(path)

    def test_invalid_json_rejected(self, tmp_path):
        path = tmp_path / "snap.json"
        path.write_text("{not json")
        with pytest.raises(DataFormatError):
            read_calibration(path)
