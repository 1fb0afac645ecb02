"""CLI tests for render_all / render, plus the end-to-end regeneration check
against real simulator run directories (reduced resolution)."""

import subprocess
import sys
from pathlib import Path

import pytest

from figures.cli import main

from figutil import EPS_LIST, MONTAGE_TIMES

CONFIGS = Path(__file__).resolve().parents[2] / "configs"

EXPECTED_CURVES = {1: 2, 2: len(EPS_LIST), 3: len(MONTAGE_TIMES), 4: len(EPS_LIST), 5: 1, 6: 1, 7: 1}


def _run(args):
    return main([str(a) for a in args])


class TestCLI:
    def test_version(self, capsys):
        with pytest.raises(SystemExit) as exc_info:
            _run(["--version"])
        assert exc_info.value.code == 0
        assert "echowave-figures" in capsys.readouterr().out

    def test_render_all(self, run_root, tmp_path, capsys):
        out = tmp_path / "out"
        assert _run(["render_all", run_root, out]) == 0
        assert len(list(out.glob("*.png"))) == 7
        lines = capsys.readouterr().out.strip().splitlines()
        assert len(lines) == 7
        for fid, line in enumerate(lines, start=1):
            assert line.startswith(f"figure {fid}:")
            assert f"({EXPECTED_CURVES[fid]} curves)" in line

    def test_render_single_figure(self, run_root, tmp_path):
        out = tmp_path / "out"
        assert _run(["render", run_root, out, "--figure", "3"]) == 0
        assert [p.name for p in out.glob("*.png")] == ["fig3_splitting_montage.png"]

    def test_missing_figure_exits_1(self, run_root, tmp_path, capsys):
        (run_root / "run_dash" / "coefficient.csv").unlink()
        assert _run(["render_all", run_root, tmp_path / "out"]) == 1
        assert "figure(s) 1" in capsys.readouterr().err

    def test_malformed_csv_exits_1_naming_file_and_column(self, run_root, tmp_path, capsys):
        bad = run_root / "run_sim" / "snap_t6_eps0.01.csv"
        bad.write_text("x,p\n0.0,1.0\n")
        assert _run(["render", run_root, tmp_path / "out", "--figure", "3"]) == 1
        err = capsys.readouterr().err
        assert "snap_t6_eps0.01.csv" in err and "'u'" in err

    def test_unavailable_figure_number(self, run_root, tmp_path, capsys):
        (run_root / "run_dash" / "coefficient.csv").unlink()
        assert _run(["render", run_root, tmp_path / "out", "--figure", "1"]) == 1
        assert "figure 1" in capsys.readouterr().err

    def test_console_script_installed(self):
        proc = subprocess.run(
            [sys.executable, "-m", "figures.cli", "--version"],
            capture_output=True,
            text=True,
        )
        assert proc.returncode == 0
        assert "echowave-figures" in proc.stdout


@pytest.fixture(scope="module")
def paper_run_root(tmp_path_factory):
    """The seven study run directories, generated by the simulator CLI at
    reduced (--ci) resolution."""
    from echowave.cli import main as echowave_main

    root = tmp_path_factory.mktemp("paper_runs")
    commands = [
        ("dashboard", "dashboard.cfg"),
        ("sweep", "sweep.cfg"),
        ("simulate", "paper_gaussian.cfg"),
        ("decay", "decay.cfg"),
        ("echo", "paper_delta_e005.cfg"),
        ("echo", "paper_delta_e003.cfg"),
        ("echo", "paper_delta_e001.cfg"),
    ]
    for command, config in commands:
        code = echowave_main([command, "--config", str(CONFIGS / config), "--out", str(root), "--ci"])
        assert code == 0, f"{command} {config} failed"
    return root


def test_regeneration_from_simulator_output(paper_run_root, tmp_path, capsys):
    """Acceptance: render_all over the study's run directories yields seven
    images with the documented curve counts."""
    out = tmp_path / "figures"
    assert _run(["render_all", paper_run_root, out]) == 0
    images = sorted(out.glob("*.png"))
    assert len(images) == 7
    lines = capsys.readouterr().out.strip().splitlines()
    counts = {}
    for line in lines:
        fid = int(line.split(":")[0].split()[1])
        counts[fid] = int(line.rsplit("(", 1)[1].split()[0])
    assert counts == EXPECTED_CURVES
    print(
        "PASS figure regeneration: 7 images rendered, curve counts "
        + ", ".join(f"fig{fid}={n}" for fid, n in sorted(counts.items()))
    )
