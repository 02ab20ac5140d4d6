import numpy as np
import pytest

from submax import (CoverageInstance, CutInstance, EntropyInstance,
                    ModularInstance, gen_entropy, gen_instance)
from submax.extensions import DifferenceInstance
from submax.io import (ParseError, TRACE_COLUMNS, read_instance, read_trace,
                       write_instance, write_trace)
from submax.solver import TraceRow


def roundtrip(tmp_path, inst, name="inst.json"):
    p = tmp_path / name
    write_instance(inst, p)
    return read_instance(p)


def test_cut_roundtrip(tmp_path):
    inst = gen_instance("grid", {"rows": 3, "cols": 3}, seed=1)
    back = roundtrip(tmp_path, inst)
    assert isinstance(back, CutInstance)
    assert back.n == inst.n
    assert back.edges == inst.edges
    assert back.meta == inst.meta


def test_coverage_roundtrip(tmp_path):
    inst = CoverageInstance(2, 3, [1.0, 2.0, 4.0], [[0, 1], [1, 2]])
    back = roundtrip(tmp_path, inst)
    assert isinstance(back, CoverageInstance)
    for mask in range(4):
        assert back.evaluate(mask) == inst.evaluate(mask)


def test_modular_roundtrip(tmp_path):
    inst = ModularInstance(4, [0.5, -1.5, 2.0, 0.0])
    back = roundtrip(tmp_path, inst)
    assert isinstance(back, ModularInstance)
    assert list(back.weights) == list(inst.weights)


def test_entropy_roundtrip(tmp_path):
    inst = gen_entropy(3, seed=2)
    back = roundtrip(tmp_path, inst)
    assert isinstance(back, EntropyInstance)
    for mask in range(8):
        assert back.evaluate(mask) == pytest.approx(inst.evaluate(mask),
                                                    abs=1e-15)


def test_difference_roundtrip(tmp_path):
    f = gen_instance("tree", {"n": 4}, seed=3)
    h = ModularInstance(4, [0.1, 0.2, 0.3, 0.4])
    di = DifferenceInstance(f, h)
    back = roundtrip(tmp_path, di)
    assert isinstance(back, DifferenceInstance)
    for mask in range(16):
        assert back.value(mask) == pytest.approx(di.value(mask), abs=1e-15)


def test_read_missing_file(tmp_path):
    with pytest.raises(ParseError) as exc:
        read_instance(tmp_path / "nope.json")
    assert "nope.json" in str(exc.value)


def test_read_bad_json(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text('{"type": "cut",\n  "n": }')
    with pytest.raises(ParseError) as exc:
        read_instance(p)
    assert "bad.json:2" in str(exc.value)


def test_read_unknown_type(tmp_path):
    p = tmp_path / "odd.json"
    p.write_text('{"type": "matroid", "n": 3}')
    with pytest.raises(ParseError) as exc:
        read_instance(p)
    assert "matroid" in str(exc.value)


def test_read_missing_field(tmp_path):
    p = tmp_path / "cut.json"
    p.write_text('{"type": "cut", "n": 3}')
    with pytest.raises(ParseError) as exc:
        read_instance(p)
    assert "edges" in str(exc.value)


def test_read_bad_value_reports_context(tmp_path):
    p = tmp_path / "cut.json"
    p.write_text('{"type": "cut", "n": 3, "edges": [[0, 0, 1.0]]}')
    with pytest.raises(ParseError):
        read_instance(p)


def test_difference_nested_error(tmp_path):
    p = tmp_path / "diff.json"
    p.write_text('{"type": "difference", "f": {"type": "cut", "n": 2}, '
                 '"h": {"type": "modular", "n": 2, "weights": [0, 0]}}')
    with pytest.raises(ParseError) as exc:
        read_instance(p)
    assert "edges" in str(exc.value)


def test_trace_roundtrip(tmp_path):
    rows = [TraceRow(1, 12.5, 10.0, 9.0, 8.0, 1, 500),
            TraceRow(2, 30.25, 9.5, 9.25, 8.5, 2, 500)]
    p = tmp_path / "t.csv"
    write_trace(rows, p)
    back = read_trace(p)
    assert [r.astuple() for r in back] == [r.astuple() for r in rows]


def test_trace_float_precision(tmp_path):
    v = 5.604036765134054
    rows = [TraceRow(1, 0.0, v, v, v, 1, 1)]
    p = tmp_path / "t.csv"
    write_trace(rows, p)
    assert read_trace(p)[0].dual_bound == v  # repr round-trips exactly


def test_trace_header_enforced(tmp_path):
    p = tmp_path / "t.csv"
    p.write_text("iter,time\n1,2\n")
    with pytest.raises(ParseError) as exc:
        read_trace(p)
    assert "header" in str(exc.value)


def test_trace_empty_file(tmp_path):
    p = tmp_path / "t.csv"
    p.write_text("")
    with pytest.raises(ParseError):
        read_trace(p)


def test_trace_short_row(tmp_path):
    p = tmp_path / "t.csv"
    p.write_text(",".join(TRACE_COLUMNS) + "\n1,2.0,3.0\n")
    with pytest.raises(ParseError) as exc:
        read_trace(p)
    assert "2" in str(exc.value)  # line number in the message


def test_trace_bad_int(tmp_path):
    p = tmp_path / "t.csv"
    p.write_text(",".join(TRACE_COLUMNS) + "\nx,2.0,3.0,4.0,5.0,1,7\n")
    with pytest.raises(ParseError):
        read_trace(p)
