"""Renderer and discovery tests against synthetic run directories."""

import numpy as np
import pytest

from figures import FigureError, FigureSpec, build_specs, render
from figures.discover import OUTPUT_NAMES, require_all
from figures.spec import read_columns

from figutil import EPS_LIST, MONTAGE_TIMES, write_csv

PNG_MAGIC = b"\x89PNG\r\n\x1a\n"

EXPECTED_CURVES = {1: 2, 2: len(EPS_LIST), 3: len(MONTAGE_TIMES), 4: len(EPS_LIST), 5: 1, 6: 1, 7: 1}


class TestReadColumns:
    def test_reads_named_columns(self, tmp_path):
        path = tmp_path / "a.csv"
        write_csv(path, ["x", "p", "u"], [[0.0, 1.0, 2.0], [1.0, 3.0, 4.0]])
        x, u = read_columns(path, ("x", "u"))
        np.testing.assert_array_equal(x, [0.0, 1.0])
        np.testing.assert_array_equal(u, [2.0, 4.0])

    def test_missing_column_names_file_and_column(self, tmp_path):
        path = tmp_path / "a.csv"
        write_csv(path, ["x", "p"], [[0.0, 1.0]])
        with pytest.raises(FigureError) as exc_info:
            read_columns(path, ("x", "u"))
        msg = str(exc_info.value)
        assert "a.csv" in msg and "'u'" in msg

    def test_empty_csv_names_file(self, tmp_path):
        path = tmp_path / "empty.csv"
        path.write_text("")
        with pytest.raises(FigureError, match="empty.csv"):
            read_columns(path, ("x",))

    def test_header_only_is_an_error(self, tmp_path):
        path = tmp_path / "h.csv"
        path.write_text("x,u\n")
        with pytest.raises(FigureError, match="no data rows"):
            read_columns(path, ("x", "u"))

    def test_bad_value_reports_line(self, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text("x,u\n1.0,oops\n")
        with pytest.raises(FigureError, match="line 2"):
            read_columns(path, ("x", "u"))

    def test_missing_file(self, tmp_path):
        with pytest.raises(FigureError, match="nope.csv"):
            read_columns(tmp_path / "nope.csv", ("x",))


class TestDiscovery:
    def test_finds_all_seven(self, run_root, tmp_path):
        specs = build_specs(run_root, tmp_path / "out")
        assert sorted(specs) == list(range(1, 8))
        for fid, spec in specs.items():
            assert spec.out_path.endswith(OUTPUT_NAMES[fid])
        assert len(specs[3].csv_paths) == len(MONTAGE_TIMES)
        assert specs[2].labels[0] == "eps=0.2"
        # the near-delta figures plot the latest snapshot only
        assert specs[7].csv_paths[0].endswith("snap_t8_eps0.01.csv")

    def test_missing_run_reported_by_figure_number(self, run_root, tmp_path):
        (run_root / "run_dash" / "coefficient.csv").unlink()
        specs = build_specs(run_root, tmp_path / "out")
        with pytest.raises(FigureError, match="figure\\(s\\) 1"):
            require_all(specs, run_root)

    def test_missing_root(self, tmp_path):
        with pytest.raises(FigureError, match="does not exist"):
            build_specs(tmp_path / "nowhere", tmp_path / "out")


class TestRender:
    def test_each_figure_curve_count(self, run_root, tmp_path):
        out = tmp_path / "out"
        out.mkdir()
        specs = build_specs(run_root, out)
        for fid in range(1, 8):
            result = render(specs[fid])
            assert result.curve_count == EXPECTED_CURVES[fid]
            with open(result.out_path, "rb") as fh:
                assert fh.read(8) == PNG_MAGIC

    def test_render_is_read_only(self, run_root, tmp_path):
        out = tmp_path / "out"
        out.mkdir()
        specs = build_specs(run_root, out)
        before = {p: p.read_bytes() for p in run_root.rglob("*.csv")}
        for spec in specs.values():
            render(spec)
        assert {p: p.read_bytes() for p in run_root.rglob("*.csv")} == before

    def test_render_deterministic(self, run_root, tmp_path):
        out = tmp_path / "out"
        out.mkdir()
        spec = build_specs(run_root, out)[3]
        render(spec)
        first = open(spec.out_path, "rb").read()
        render(spec)
        assert open(spec.out_path, "rb").read() == first

    def test_unknown_figure_id(self, tmp_path):
        with pytest.raises(FigureError, match="unknown figure id"):
            render(FigureSpec(9, ("x.csv",), str(tmp_path / "o.png")))

    def test_no_inputs(self, tmp_path):
        with pytest.raises(FigureError, match="no input CSVs"):
            render(FigureSpec(3, (), str(tmp_path / "o.png")))

    def test_axis_ranges_respected(self, run_root, tmp_path):
        out = tmp_path / "out"
        out.mkdir()
        base = build_specs(run_root, out)[5]
        clipped = FigureSpec(5, base.csv_paths, str(out / "clip.png"), labels=base.labels, xlim=(0.0, 5.0), ylim=(-1.0, 2.0))
        result = render(clipped)
        assert result.curve_count == 1
