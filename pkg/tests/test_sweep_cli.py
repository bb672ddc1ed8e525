import io
import json
import subprocess
import sys

import numpy as np
import pytest

from wignerspin.checks import oracle_deviation, self_check
from wignerspin.cli import main
from wignerspin.errors import DomainError
from wignerspin.sweep import (
    FIGURES,
    EntropyKind,
    GridRange,
    SweepConfig,
    emit_figure_data,
    figure_config,
    run_sweep,
    write_rows,
)

R06 = float(np.arctanh(0.6))


def spot_config(kind=EntropyKind.VN_DISTINGUISHABLE, **kw):
    return SweepConfig(kind, 0.5, R06, GridRange(R06, R06, 1), GridRange(np.pi, np.pi, 1), **kw)


def load_csv(text):
    return np.loadtxt(io.StringIO(text), delimiter=",", skiprows=1, ndmin=2)


class TestGridRange:
    def test_parse(self):
        g = GridRange.parse("0:1:5")
        assert np.allclose(g.values(), [0, 0.25, 0.5, 0.75, 1])

    def test_single_point(self):
        assert GridRange.parse("0.3:0.3:1").values().tolist() == [0.3]

    @pytest.mark.parametrize("text", ["0:1", "a:1:3", "1:0:3", "0:1:0", "0:inf:3", "0:1:2.5"])
    def test_rejects(self, text):
        with pytest.raises(DomainError):
            GridRange.parse(text)


class TestSweep:
    def test_spot_row(self):
        (row,) = list(run_sweep(spot_config()))
        assert row.entropy == pytest.approx(0.278638956367, abs=1e-12)
        assert (row.a0, row.b0) == pytest.approx((40 / 41, 9 / 41), abs=1e-15)
        assert (row.a_theta, row.b_theta) == pytest.approx((40 / 41, -9 / 41), abs=1e-15)
        assert row.det == pytest.approx(129600 / 2825761, abs=1e-15)

    def test_shannon_renormalized(self):
        (plain,) = list(run_sweep(spot_config(EntropyKind.SHANNON)))
        (renorm,) = list(run_sweep(spot_config(EntropyKind.SHANNON, renormalize_shannon=True)))
        assert plain.entropy == pytest.approx(1.278638956367, abs=1e-12)
        assert renorm.entropy == pytest.approx(plain.entropy - 1, abs=1e-15)

    def test_row_order(self):
        cfg = SweepConfig("vn_distinguishable", 0.5, 1.0, GridRange(0.1, 0.3, 3), GridRange(0.0, 1.0, 2))
        rows = list(run_sweep(cfg))
        assert [(round(r.alpha, 6), r.theta) for r in rows] == [
            (0.1, 0.0), (0.1, 1.0), (0.2, 0.0), (0.2, 1.0), (0.3, 0.0), (0.3, 1.0)
        ]

    def test_indistinguishable_det_column(self):
        cfg = spot_config(EntropyKind.VN_INDISTINGUISHABLE)
        (row,) = list(run_sweep(cfg))
        assert row.det == pytest.approx((1600 / 1681) * (81 / 1681), abs=1e-15)

    def test_config_validation(self):
        with pytest.raises(DomainError):
            SweepConfig("vn_distinguishable", 1.5, 1.0, GridRange(0, 1, 2), GridRange(0, 1, 2))
        with pytest.raises(DomainError):
            SweepConfig("vn_distinguishable", 0.5, -1.0, GridRange(0, 1, 2), GridRange(0, 1, 2))
        with pytest.raises(DomainError):
            SweepConfig("vn_distinguishable", 0.5, 1.0, GridRange(-1, 1, 2), GridRange(0, 1, 2))
        with pytest.raises(ValueError):
            SweepConfig("nope", 0.5, 1.0, GridRange(0, 1, 2), GridRange(0, 1, 2))


class TestOutput:
    def test_csv_format(self):
        buf = io.StringIO()
        n = write_rows(run_sweep(spot_config()), buf)
        lines = buf.getvalue().split("\n")
        assert n == 1
        assert lines[0] == "alpha,theta,entropy,a0,b0,a_theta,b_theta,det"
        assert lines[1].split(",")[2] == "0.278638956367"
        assert lines[2] == "" and "\r" not in buf.getvalue()

    def test_jsonl_mirrors_csv(self):
        cfg = SweepConfig("shannon", 0.25, 2.0, GridRange(0.1, 2, 4), GridRange(0.1, 3, 5))
        c, j = io.StringIO(), io.StringIO()
        write_rows(run_sweep(cfg), c, "csv")
        write_rows(run_sweep(cfg), j, "jsonl")
        table = load_csv(c.getvalue())
        records = [json.loads(line) for line in j.getvalue().splitlines()]
        assert len(records) == len(table) == 20
        assert np.array_equal(table[:, 2], [r["entropy"] for r in records])

    def test_unknown_format(self):
        with pytest.raises(DomainError):
            write_rows([], io.StringIO(), "xml")


class TestFigures:
    def test_presets(self):
        assert sorted(FIGURES) == [f"fig{i}" for i in range(2, 10)]
        cfg = figure_config("fig3")
        assert cfg.p1 == 0.25 and cfg.entropy_kind is EntropyKind.VN_DISTINGUISHABLE
        assert cfg.phi == pytest.approx(np.arctanh(0.999))
        assert cfg.alpha_range.hi == cfg.phi and cfg.theta_range.hi == np.pi
        assert cfg.alpha_range.lo == cfg.theta_range.lo == 0.1
        with pytest.raises(DomainError):
            figure_config("fig1")

    def test_fig2_bounds_and_size(self):
        data = emit_figure_data("fig2", grid_steps=50)
        assert data.csv.startswith("alpha,theta,entropy\n")
        table = load_csv(data.csv)
        assert table.shape == (2500, 3)
        assert table[:, 2].min() >= 0.0 and table[:, 2].max() <= 1.0 + 1e-12

    def test_fig3_bounded_by_mixing_entropy(self):
        table = load_csv(emit_figure_data("fig3", grid_steps=60).csv)
        assert table[:, 2].max() <= 0.8112781244591328 + 1e-6

    def test_fig5_mirror_symmetric(self):
        # the theta grid starts at 0.1, so compare against directly evaluated mirrored angles
        cfg = figure_config("fig5", grid_steps=30)
        mirrored = SweepConfig(
            cfg.entropy_kind, cfg.p1, cfg.phi, cfg.alpha_range,
            GridRange(0.0, np.pi - 0.1, 30), cfg.renormalize_shannon,
        )
        a = np.array([r.entropy for r in run_sweep(cfg)]).reshape(30, 30)
        b = np.array([r.entropy for r in run_sweep(mirrored)]).reshape(30, 30)
        assert np.max(np.abs(a - b[:, ::-1])) < 1e-9

    def test_plot_script(self):
        data = emit_figure_data("fig6", grid_steps=5, data_path="fig6.csv")
        assert "splot 'fig6.csv'" in data.plot_script
        assert "p1 = 0.5" in data.plot_script

    def test_deterministic(self):
        assert emit_figure_data("fig7", 20).csv == emit_figure_data("fig7", 20).csv


class TestCli:
    def test_sweep_stdout(self, capsys):
        code = main(["sweep", "--kind", "vn", "--phi-v", "0.6", "--alpha", f"{R06!r}:{R06!r}:1",
                     "--theta", f"{np.pi!r}:{np.pi!r}:1"])
        out = capsys.readouterr().out.splitlines()
        assert code == 0
        assert out[1].split(",")[2] == "0.278638956367"

    def test_config_file_and_override(self, tmp_path, capsys):
        cfg = tmp_path / "run.cfg"
        cfg.write_text(f"kind = shannon\np1 = 0.5\nphi = {R06!r}\nalpha = {R06!r}:{R06!r}:1\n"
                       f"theta = {np.pi!r}:{np.pi!r}:1\nformat = jsonl\n")
        assert main(["sweep", "--config", str(cfg)]) == 0
        rec = json.loads(capsys.readouterr().out)
        assert rec["entropy"] == pytest.approx(1.278638956367, abs=1e-11)  # 12 significant digits
        out = tmp_path / "o.csv"
        assert main(["sweep", "--config", str(cfg), "--kind", "vn", "--format", "csv", "--out", str(out)]) == 0
        assert out.read_text().splitlines()[1].split(",")[2] == "0.278638956367"

    def test_figure_writes_script(self, tmp_path):
        out = tmp_path / "fig4.csv"
        assert main(["figure", "fig4", "--steps", "10", "--out", str(out)]) == 0
        assert len(out.read_text().splitlines()) == 101
        assert "splot 'fig4.csv'" in (tmp_path / "fig4.gp").read_text()

    @pytest.mark.parametrize(
        "argv",
        [
            ["sweep", "--alpha", "1:0:3"],
            ["sweep", "--phi-v", "1.5"],
            ["sweep", "--p1", "2"],
            ["sweep", "--config", "/nonexistent/file.cfg"],
            ["figure", "fig2", "--steps", "0"],
            ["figure", "fig2", "--superrel-v", "1.0"],
        ],
    )
    def test_usage_errors(self, argv, capsys):
        assert main(argv) == 2
        assert "error" in capsys.readouterr().err

    def test_argparse_errors_exit_2(self):
        with pytest.raises(SystemExit) as exc:
            main(["figure", "fig99"])
        assert exc.value.code == 2

    def test_check_exit_codes(self, capsys):
        assert main(["check"]) == 0
        assert "14/14 checks passed" in capsys.readouterr().out
        assert main(["check", "--corrupt-b-sign"]) == 1

    def test_module_entry_point(self):
        proc = subprocess.run([sys.executable, "-m", "wignerspin", "figure", "fig9", "--steps", "3"],
                              capture_output=True, text=True, check=True)
        assert proc.stdout.startswith("alpha,theta,entropy\n")


class TestSelfCheck:
    def test_all_pass(self):
        results = self_check()
        assert all(r.passed for r in results), [r.line() for r in results if not r.passed]
        assert sum(r.seconds for r in results) < 60

    def test_negative_control(self):
        failed = {r.name for r in self_check(corrupt_b_sign=True) if not r.passed}
        assert failed == {"oracle: closed form vs matrix W"}
        assert oracle_deviation(10, corrupt_b_sign=True) > 0.1
