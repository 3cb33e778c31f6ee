import json
from fractions import Fraction as F

import pytest

from slashpow import serialization as ser
from slashpow.cli import EXIT_CAP, EXIT_INPUT, EXIT_IO, EXIT_OK, main
from slashpow.constructions import MeasuredGraph


@pytest.fixture()
def diamond_file(tmp_path):
    path = tmp_path / "diamond.json"
    assert main(["build", "--laakso", "0,2,2,0", "--uniform-weights",
                 "--out", str(path)]) == EXIT_OK
    return path


def test_build_path(capsys):
    assert main(["build", "--path", "1,2,1"]) == EXIT_OK
    doc = json.loads(capsys.readouterr().out)
    assert doc["measure"] == ["1/4", "1/2", "1/4"]


def test_build_cycle_und_laakso(tmp_path):
    out = tmp_path / "c.json"
    assert main(["build", "--cycle", "1,1;1,1", "--out", str(out)]) == EXIT_OK
    mg = ser.loads(out.read_text())
    assert isinstance(mg, MeasuredGraph)
    assert set(mg.nu) == {F(1, 4)}

    out2 = tmp_path / "l.json"
    assert main(["build", "--laakso", "0,2,3,0",
                 "--weights", ";1/2,1/2;1/3,1/3,1/3;",
                 "--out", str(out2)]) == EXIT_OK
    mg2 = ser.loads(out2.read_text())
    assert sum(mg2.nu) == 1


def test_build_argument_errors():
    assert main(["build", "--path", "1", "--cycle", "1;1"]) == EXIT_INPUT
    assert main(["build", "--laakso", "0,2,2,0"]) == EXIT_INPUT
    assert main(["build", "--cycle", "1;2"]) == EXIT_INPUT  # unbalanced arcs
    assert main(["build", "--path", "0"]) == EXIT_INPUT


def test_power_roundtrip(tmp_path, diamond_file):
    out = tmp_path / "p2.json"
    assert main(["power", "--base", str(diamond_file), "--n", "2",
                 "--out", str(out)]) == EXIT_OK
    doc = json.loads(out.read_text())
    assert len(doc["edges"]) == 16
    assert len(doc["vertices"]) == 12
    assert len(doc["edge_labels"]) == 16
    assert doc["edge_labels"][0].count("/") == 1
    back = ser.measured_from_dict(doc)
    assert sum(back.nu) == 1


def test_power_cap_exit(tmp_path, diamond_file, monkeypatch):
    monkeypatch.setenv("SLASHPOW_MAX_EDGES", "10")
    assert main(["power", "--base", str(diamond_file), "--n", "2"]) == EXIT_CAP


def test_count_cycles(capsys):
    assert main(["count-cycles", "--params", "1,2,2,1", "--n", "2"]) == EXIT_OK
    assert capsys.readouterr().out.strip() == "16"
    assert main(["count-cycles", "--params", "0,2,2,0", "--n", "3",
                 "--json"]) == EXIT_OK
    doc = json.loads(capsys.readouterr().out)
    assert doc == {"count": "4096", "cycle_edges": 16}
    assert main(["count-cycles", "--params", "0,2,3,0", "--n", "2"]) == EXIT_INPUT


def test_find_balanced(capsys):
    assert main(["find-balanced", "--params", "0,2,3,0"]) == EXIT_OK
    doc = json.loads(capsys.readouterr().out)
    assert doc["n0"] == 3 and doc["i"] == 0
    assert doc["params"] == [0, 12, 12, 0]
    assert len(doc["subgraph"]["edges"]) == 24


def test_pipeline_command(capsys, diamond_file):
    assert main(["pipeline", "--graph", str(diamond_file)]) == EXIT_OK
    doc = json.loads(capsys.readouterr().out)
    assert doc["n"] == 1 and doc["c0"] == "2/1"


def test_oracle_command(capsys, diamond_file):
    assert main(["oracle", "--graph", str(diamond_file), "--json"]) == EXIT_OK
    doc = json.loads(capsys.readouterr().out)
    assert doc["steiner_free"] == "3/2"
    assert doc["general"] == "3/16"


def test_embed_frt_reports_are_byte_identical(tmp_path, diamond_file):
    r1, r2 = tmp_path / "a.csv", tmp_path / "b.csv"
    for r in (r1, r2):
        assert main(["embed-frt", "--graph", str(diamond_file),
                     "--seed", "42", "--samples", "8",
                     "--report", str(r)]) == EXIT_OK
    assert r1.read_bytes() == r2.read_bytes()
    header = r1.read_text().splitlines()[0]
    assert header == "pair,d_X,E_dT,stretch,stretch_decimal"


def test_export_dot(capsys, diamond_file):
    assert main(["export-dot", "--graph", str(diamond_file)]) == EXIT_OK
    out = capsys.readouterr().out
    assert out.count("->") == 4


def test_exit_codes_for_bad_inputs(tmp_path):
    missing = tmp_path / "absent.json"
    assert main(["oracle", "--graph", str(missing)]) == EXIT_IO

    bad = tmp_path / "bad.json"
    bad.write_text("{broken")
    assert main(["oracle", "--graph", str(bad)]) == EXIT_INPUT

    nomeasure = tmp_path / "plain.json"
    nomeasure.write_text(
        '{"vertices": ["a", "b"], "edges": [["a", "b", "1/1"]],'
        ' "s": "a", "t": "b", "orientation": [["a", "b"]]}')
    assert main(["oracle", "--graph", str(nomeasure)]) == EXIT_INPUT
    # The same file is fine for commands that ignore the measure.
    assert main(["export-dot", "--graph", str(nomeasure)]) == EXIT_OK


def test_verify_cor42(capsys):
    assert main(["verify", "--suite", "cor42", "--json"]) == EXIT_OK
    doc = json.loads(capsys.readouterr().out)
    assert doc["ok"] is True
    assert len(doc["rows"]) == 4
