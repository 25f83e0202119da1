import csv
import dataclasses
import io
import json

import numpy as np
import pytest

from ncring import formats
from ncring.cli import run
from ncring.errors import MalformedTable
from ncring.families import matrix_ring, row_ring, zero_ring
from ncring.graph import build_graph


def spec_file(tmp_path, R, name="r.ring", full_table=False):
    p = tmp_path / name
    formats.write_ring(R, p, full_table=full_table)
    return str(p)


@pytest.mark.parametrize("full_table", [False, True])
def test_round_trip(row2, m2z2, full_table):
    for R in (row2, m2z2, zero_ring([2, 3])):
        S = formats.loads_ring(formats.dumps_ring(R, full_table=full_table))
        assert np.array_equal(S.mul_table, R.mul_table)
        assert S.shape == R.shape and S.unity == R.unity and S.name == R.name


def test_dumps_is_deterministic(m2z2):
    assert formats.dumps_ring(m2z2) == formats.dumps_ring(matrix_ring(2, 2))
    d = json.loads(formats.dumps_ring(m2z2))
    assert d["format"] == formats.FORMAT and d["unity"] == [1, 0, 0, 1]


@pytest.mark.parametrize("text", [
    "not json",
    "[1, 2]",
    '{"format": "other", "shape": [2]}',
    '{"format": "ncg-ring/1", "structure_constants": [[[1]]]}',
    '{"format": "ncg-ring/1", "shape": [2]}',
    '{"format": "ncg-ring/1", "shape": [2], "structure_constants": [[[1]]], "full_table": [[0,0],[0,1]]}',
])
def test_rejects_bad_specs(text):
    with pytest.raises(MalformedTable):
        formats.loads_ring(text)


def test_dot_export(row2):
    dot = formats.to_dot(build_graph(row2))
    lines = dot.splitlines()
    assert lines[0].startswith("graph ") and lines[-1] == "}"
    assert sum(" -- " in l for l in lines) == 3
    assert sum("[label=" in l for l in lines) == 3
    empty = formats.to_dot(build_graph(zero_ring([2, 2])))
    assert "--" not in empty and "[label=" not in empty


def test_invariant_csv(m2z2):
    G = build_graph(m2z2)
    text = formats.rows_to_csv([formats.invariant_row(m2z2, G)], formats.INVARIANT_COLUMNS)
    (row,) = csv.DictReader(io.StringIO(text))
    assert row["vertices"] == "14" and row["edges"] == "84" and row["diameter"] == "2"
    assert row["complete"] == "False" and row["connected"] == "True"


def test_cli_ring_build_and_validate(tmp_path, capsys):
    out = tmp_path / "m.ring"
    assert run(["ring", "build", "--family", "matrix", "--n", "2", "--m", "2", "--out", str(out)]) == 0
    assert formats.read_ring(out).order == 16
    assert run(["ring", "validate", str(out)]) == 0
    assert "non-commutative" in capsys.readouterr().out


def test_cli_build_product_and_opposite(tmp_path):
    a = spec_file(tmp_path, row_ring(2), "a.ring")
    out = tmp_path / "p.ring"
    assert run(["ring", "build", "--family", "direct_product", "--operand", a, "--operand", a,
                "--opposite", "--out", str(out)]) == 0
    assert formats.read_ring(out).order == 16


def test_cli_exit_codes(tmp_path, capsys):
    bad = tmp_path / "bad.ring"
    bad.write_text('{"format": "ncg-ring/1", "shape": [2], "full_table": [[0, 1], [1, 0]]}')
    assert run(["ring", "validate", str(bad)]) == 1
    assert "error" in capsys.readouterr().err
    assert run(["ring", "validate", str(tmp_path / "missing.ring")]) == 1
    assert run(["no-such-command"]) == 2
    assert run(["ring", "build", "--family", "nope"]) == 2
    assert run(["verify"]) == 2
    assert run(["enumerate", "--out", str(tmp_path / "e")]) == 2


def test_cli_graph_commands(tmp_path, capsys, row2):
    p = spec_file(tmp_path, row2)
    assert run(["graph", "analyze", p]) == 0
    assert "complete" in capsys.readouterr().out
    dot = tmp_path / "g.dot"
    assert run(["graph", "export-dot", p, "--out", str(dot)]) == 0
    assert dot.read_text() == formats.to_dot(build_graph(row2))


def test_cli_verify_single(tmp_path, capsys, ut2):
    p = spec_file(tmp_path, ut2)
    rep = tmp_path / "rep.json"
    assert run(["verify", p, "--report", str(rep)]) == 0
    out = capsys.readouterr().out
    assert "pass" in out and "equality witness" in out
    data = json.loads(rep.read_text())
    assert data["summary"]["failures"] == 0
    assert "B3" in data["summary"]["boundary_equalities"][ut2.name]


def test_cli_verify_reports_failure(tmp_path, monkeypatch, row2):
    import ncring.report as report
    real = report.verify_edge_identity

    def broken(*a, **k):
        return dataclasses.replace(real(*a, **k), holds=False)

    monkeypatch.setattr(report, "verify_edge_identity", broken)
    assert run(["verify", spec_file(tmp_path, row2)]) == 1


def test_cli_enumerate_verify_isoclinic(tmp_path, capsys):
    d = tmp_path / "c4"
    assert run(["enumerate", "--max-order", "4", "--noncommutative", "--dedupe", "--out", str(d)]) == 0
    files = formats.ring_files(d)
    assert len(files) == 2
    rows = list(csv.DictReader(io.StringIO((d / "summary.csv").read_text())))
    # the two non-commutative rings of order 4 are each other's opposite
    assert [r["opposite_index"] for r in rows] == ["1", "0"]
    capsys.readouterr()
    r1, r2 = tmp_path / "r1.json", tmp_path / "r2.json"
    assert run(["verify", "--census", str(d), "--report", str(r1)]) == 0
    assert run(["verify", "--census", str(d), "--report", str(r2)]) == 0
    assert r1.read_bytes() == r2.read_bytes()
    assert json.loads(r1.read_text())["summary"]["trivial_center_scan"]["matches"] == []
    assert run(["isoclinic", "--census", str(d)]) == 0
    assert "failures 0" in capsys.readouterr().out
    assert run(["isoclinic", str(files[0]), str(files[1])]) == 0
    assert "Z-isoclinic" in capsys.readouterr().out


def test_cli_isoclinic_negative(tmp_path, capsys, row2, m2z2):
    a, b = spec_file(tmp_path, row2, "a.ring"), spec_file(tmp_path, m2z2, "b.ring")
    assert run(["isoclinic", a, b]) == 0
    assert "not Z-isoclinic" in capsys.readouterr().out
    assert run(["isoclinic", a]) == 2
