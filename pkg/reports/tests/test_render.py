import os

import pytest

from plot_reports import ReportError, build_figure, read_trace, render_convergence
from plot_reports.cli import main

DATA = os.path.join(os.path.dirname(__file__), "data")
GRID3 = os.path.join(DATA, "grid3x3_seed1.csv")
GRID4 = os.path.join(DATA, "grid4x4_seed0.csv")


def test_one_trace_one_baseline_structure():
    fig = build_figure([read_trace(GRID4)], [("dg-det", 11.0)])
    ax = fig.axes[0]
    labels = [ln.get_label() for ln in ax.lines]
    assert len(ax.lines) == 3  # dual + primal + baseline
    assert any("dual" in l for l in labels)
    assert any("primal" in l for l in labels)
    assert any(l.startswith("dg-det") for l in labels)


def test_two_traces_four_curves():
    frames = [read_trace(GRID4), read_trace(GRID3)]
    fig = build_figure(frames)
    assert len(fig.axes[0].lines) == 4


def test_build_needs_frames():
    with pytest.raises(ReportError):
        build_figure([])


def test_render_writes_file(tmp_path, capsys):
    out = tmp_path / "fig.png"
    frames = render_convergence([GRID4], [("dg-det", 11.0)], out)
    assert out.exists() and out.stat().st_size > 0
    assert len(frames) == 1
    assert "final gap" in capsys.readouterr().out


def test_render_unsupported_format(tmp_path):
    with pytest.raises(ReportError) as exc:
        render_convergence([GRID4], [], tmp_path / "fig.pdf")
    assert "pdf" in str(exc.value)


def test_render_propagates_trace_errors(tmp_path):
    bad = tmp_path / "bad.csv"
    bad.write_text("iter,best_primal\n1,2.0\n")
    with pytest.raises(ReportError) as exc:
        render_convergence([bad], [], tmp_path / "fig.png")
    assert "dual_bound" in str(exc.value)


@pytest.mark.parametrize("fmt", ["png", "svg"])
def test_deterministic_bytes(tmp_path, fmt, capsys):
    a = tmp_path / f"a.{fmt}"
    b = tmp_path / f"b.{fmt}"
    render_convergence([GRID4, GRID3], [("dg-det", 5.604036765134054)], a)
    render_convergence([GRID4, GRID3], [("dg-det", 5.604036765134054)], b)
    capsys.readouterr()
    assert a.read_bytes() == b.read_bytes()
    assert a.stat().st_size > 0


def test_cli_end_to_end(tmp_path, capsys):
    out = tmp_path / "fig.png"
    code = main(["--trace", GRID4, "--trace", GRID3,
                 "--baseline", "dg-det=5.604036765134054",
                 "-o", str(out)])
    cap = capsys.readouterr()
    assert code == 0
    assert out.exists() and out.stat().st_size > 0
    assert f"wrote {out}" in cap.out
    assert "final gap" in cap.out


def test_cli_errors(tmp_path, capsys):
    code = main(["--trace", str(tmp_path / "missing.csv"),
                 "-o", str(tmp_path / "f.png")])
    cap = capsys.readouterr()
    assert code == 1
    assert "error:" in cap.err

    code = main(["--trace", GRID4, "--baseline", "oops",
                 "-o", str(tmp_path / "f.png")])
    cap = capsys.readouterr()
    assert code == 1
    assert "oops" in cap.err

    code = main(["-o", str(tmp_path / "f.png")])  # --trace required
    assert code == 2
