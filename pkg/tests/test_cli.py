import json
import math

import pytest

from repeatersim.cli import (
    CSV_COLUMNS,
    ConfigError,
    config_from_mapping,
    main,
    result_row,
)
from repeatersim.chain import run_chain


BASE_CONFIG = {
    "total_length": 200.0,
    "n_nodes": 6,
    "t_depol": 10.0,
    "f_target": 0.9,
}


def write_json(path, data):
    path.write_text(json.dumps(data))
    return str(path)


class TestConfigLoading:
    def test_minimal_config(self):
        cfg = config_from_mapping(dict(BASE_CONFIG))
        assert cfg.n_segments == 7
        assert cfg.attempt_mode == "expected"

    def test_unknown_field_rejected_by_name(self):
        bad = dict(BASE_CONFIG, fidelity_goal=0.9)
        with pytest.raises(ConfigError, match="fidelity_goal"):
            config_from_mapping(bad)

    def test_missing_field_rejected_by_name(self):
        bad = dict(BASE_CONFIG)
        del bad["t_depol"]
        with pytest.raises(ConfigError, match="t_depol"):
            config_from_mapping(bad)

    def test_inf_string_accepted(self):
        cfg = config_from_mapping(dict(BASE_CONFIG, t_depol="inf"))
        assert math.isinf(cfg.t_depol)

    def test_other_string_rejected(self):
        with pytest.raises(ConfigError):
            config_from_mapping(dict(BASE_CONFIG, t_depol="huge"))

    def test_validation_errors_surface(self):
        with pytest.raises(ConfigError, match="f_target must exceed 0.25"):
            config_from_mapping(dict(BASE_CONFIG, f_target=0.1))


class TestResultRow:
    def test_row_covers_all_columns(self):
        cfg = config_from_mapping(dict(BASE_CONFIG, t_depol=1000.0))
        row = result_row(cfg, run_chain(cfg))
        assert set(row) == set(CSV_COLUMNS)
        assert row["feasible"] is True
        assert row["layer_costs"] == "7;4;2;1"


class TestRunCommand:
    def test_run_prints_csv_and_summary(self, tmp_path, capsys):
        path = write_json(tmp_path / "cfg.json", dict(BASE_CONFIG, t_depol=1000.0))
        assert main(["run", path]) == 0
        out = capsys.readouterr().out
        header, data = out.splitlines()[:2]
        assert header.split(",")[:2] == ["total_length", "n_nodes"]
        assert "final fidelity" in out

    def test_strict_infeasible_exit_code(self, tmp_path):
        path = write_json(tmp_path / "cfg.json", dict(BASE_CONFIG, t_depol=1.0))
        assert main(["--strict", "run", path]) == 2

    def test_missing_file_is_usage_error(self, capsys):
        assert main(["run", "/nonexistent/cfg.json"]) == 1
        assert "error:" in capsys.readouterr().err

    def test_bad_json_is_usage_error(self, tmp_path, capsys):
        path = tmp_path / "cfg.json"
        path.write_text("{not json")
        assert main(["run", str(path)]) == 1

    def test_global_overrides_apply(self, tmp_path, capsys):
        path = write_json(tmp_path / "cfg.json", dict(BASE_CONFIG, t_depol=1000.0))
        assert main(["--seed", "5", "--mode", "sampled", "run", path]) == 0
        row = capsys.readouterr().out.splitlines()[1].split(",")
        header = CSV_COLUMNS
        assert row[header.index("seed")] == "5"
        assert row[header.index("attempt_mode")] == "sampled"


class TestSweepCommand:
    def sweep_spec(self, tmp_path, **kwargs):
        spec = {
            "base": dict(BASE_CONFIG),
            "axis": "t_depol",
            "values": [2.0, 4.0, 8.0],
            "repetitions": 1,
        }
        spec.update(kwargs)
        return write_json(tmp_path / "sweep.json", spec)

    def test_sweep_writes_rows(self, tmp_path):
        out = tmp_path / "out.csv"
        assert main(["sweep", self.sweep_spec(tmp_path), str(out)]) == 0
        lines = out.read_text().split("\n")
        assert lines[0] == ",".join(CSV_COLUMNS)
        assert len([l for l in lines if l]) == 4

    def test_sweep_byte_identical_reruns(self, tmp_path):
        spec = self.sweep_spec(tmp_path)
        out1, out2 = tmp_path / "a.csv", tmp_path / "b.csv"
        assert main(["sweep", spec, str(out1)]) == 0
        assert main(["sweep", spec, str(out2)]) == 0
        assert out1.read_bytes() == out2.read_bytes()

    def test_repetitions_shift_seed(self, tmp_path):
        spec = self.sweep_spec(
            tmp_path,
            base=dict(BASE_CONFIG, attempt_mode="sampled"),
            values=[8.0],
            repetitions=3,
        )
        out = tmp_path / "out.csv"
        assert main(["sweep", spec, str(out)]) == 0
        lines = [l for l in out.read_text().split("\n") if l][1:]
        seeds = {l.split(",")[CSV_COLUMNS.index("seed")] for l in lines}
        assert seeds == {"0", "1", "2"}

    def test_non_monotone_values_rejected(self, tmp_path, capsys):
        spec = self.sweep_spec(tmp_path, values=[2.0, 8.0, 4.0])
        assert main(["sweep", spec, str(tmp_path / "out.csv")]) == 1
        assert "monotone" in capsys.readouterr().err

    def test_bad_axis_rejected(self, tmp_path):
        spec = self.sweep_spec(tmp_path, axis="op_latency")
        assert main(["sweep", spec, str(tmp_path / "out.csv")]) == 1


class TestPlanCommand:
    def test_plan_output(self, capsys):
        assert main(["plan", "0.9", "6"]) == 0
        out = capsys.readouterr().out
        assert "swap layers K: 3" in out
        assert "0.986704" in out
        assert "product form" in out and "sum-of-partial-products" in out

    def test_plan_infeasible_target(self, capsys):
        # K = ceil(log2(3_000_001)) = 22 swap layers puts the deepest
        # threshold beyond purification's reach
        assert main(["plan", "0.999", "3000000"]) == 1
        assert "infeasible" in capsys.readouterr().err


class TestBoundaryCommand:
    def test_boundary_found(self, tmp_path, capsys):
        path = write_json(tmp_path / "cfg.json", dict(BASE_CONFIG))
        assert main(["boundary", path, "2", "3", "4", "5", "6", "8"]) == 0
        out = capsys.readouterr().out
        assert "noise-tolerance boundary:" in out

    def test_boundary_not_found(self, tmp_path, capsys):
        path = write_json(tmp_path / "cfg.json", dict(BASE_CONFIG))
        assert main(["boundary", path, "0.5", "1"]) == 2
        assert "no feasible point" in capsys.readouterr().out


class TestPlotCommand:
    def make_csv(self, tmp_path):
        spec = write_json(
            tmp_path / "sweep.json",
            {"base": dict(BASE_CONFIG), "axis": "t_depol", "values": [2.0, 4.0, 8.0, 16.0]},
        )
        out = tmp_path / "data.csv"
        assert main(["sweep", spec, str(out)]) == 0
        return str(out)

    def test_plot_writes_svg(self, tmp_path):
        csv_path = self.make_csv(tmp_path)
        svg = tmp_path / "chart.svg"
        assert main(["plot", csv_path, "t_depol", "final_fidelity", str(svg)]) == 0
        text = svg.read_text()
        assert text.startswith("<?xml")
        assert "<polyline" in text and "http://www.w3.org/2000/svg" in text

    def test_plot_log_scale_ticks(self, tmp_path):
        csv_path = self.make_csv(tmp_path)
        svg = tmp_path / "chart.svg"
        assert main(["plot", "--log-y", csv_path, "t_depol", "cost_sum_total", str(svg)]) == 0
        assert "1e" in svg.read_text()

    def test_plot_unknown_column(self, tmp_path, capsys):
        csv_path = self.make_csv(tmp_path)
        assert main(["plot", csv_path, "t_depol", "bogus", str(tmp_path / "c.svg")]) == 1
        assert "unknown column" in capsys.readouterr().err

    def test_plot_empty_csv(self, tmp_path, capsys):
        empty = tmp_path / "empty.csv"
        empty.write_text("")
        assert main(["plot", str(empty), "t_depol", "final_fidelity", str(tmp_path / "c.svg")]) == 1
        assert "no data rows" in capsys.readouterr().err
