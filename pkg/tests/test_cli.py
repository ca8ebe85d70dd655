import csv
import json

import pytest

from conftest import c5_witness, pair7_instance
from ich.cli import main
from ich.instance import Disk, GeometricLayout, dump_instance, dump_layout, make_network


@pytest.fixture
def pair7_file(tmp_path):
    path = tmp_path / "pair7.json"
    dump_instance(pair7_instance(), path)
    return path


def test_gen_then_reduce(tmp_path, capsys):
    raw = tmp_path / "raw.json"
    assert main(["gen", "--library", "100", "--zipf", "0.5", "--helpers", "3",
                 "--users-per-helper", "4", "--cache", "20", "--seed", "1", "-o", str(raw)]) == 0
    out = tmp_path / "canon.json"
    assert main(["reduce", "-i", str(raw), "-o", str(out)]) == 0
    assert json.loads(out.read_text())["n"] == 12
    assert "virtual helpers" in capsys.readouterr().out


def test_reduce_rejects_cache_hit(tmp_path):
    bad = tmp_path / "bad.json"
    dump_instance(make_network(2, [({0}, {0}), ({0}, {1})]), bad)
    assert main(["reduce", "-i", str(bad), "-o", str(tmp_path / "x.json")]) == 2


def test_graph_summary(pair7_file, tmp_path, capsys):
    dump = tmp_path / "edges.txt"
    assert main(["graph", "-i", str(pair7_file), "--dump", str(dump), "--categories"]) == 0
    out = capsys.readouterr().out
    assert "g2_vertices=4" in out and "out=3" in out
    assert dump.read_text().strip()


@pytest.mark.parametrize("method", ["auto", "k2", "bnb", "brute"])
def test_color_and_verify(pair7_file, tmp_path, capsys, method):
    code = tmp_path / "code.json"
    assert main(["color", "-i", str(pair7_file), "-o", str(code), "--method", method]) == 0
    assert "t=5" in capsys.readouterr().out
    assert main(["verify", "-i", str(pair7_file), "-c", str(code), "--payload-trials", "20"]) == 0


def test_verify_rejects_broken_code(pair7_file, tmp_path):
    code = tmp_path / "code.json"
    code.write_text(json.dumps({"t": 1, "transmissions": [[0, 1, 2, 3, 4, 5, 6]]}))
    assert main(["verify", "-i", str(pair7_file), "-c", str(code)]) == 1


def test_fraccolor_c5(tmp_path, capsys):
    inst = tmp_path / "c5.json"
    dump_instance(c5_witness(), inst)
    code = tmp_path / "v.json"
    assert main(["fraccolor", "-i", str(inst), "-o", str(code)]) == 0
    assert "rate=5/2" in capsys.readouterr().out
    doc = json.loads(code.read_text())
    assert doc["t"] == 5 and doc["p"] == 2
    assert main(["verify", "-i", str(inst), "-c", str(code)]) == 0


def test_minrank(pair7_file, capsys):
    assert main(["minrank", "-i", str(pair7_file)]) == 0
    assert "minrank=5" in capsys.readouterr().out


def test_minrank_refuses_large(tmp_path):
    path = tmp_path / "big.json"
    n = 12
    dump_instance(make_network(n, [(set(range(6, 12)), set(range(6))), (set(range(6)), set(range(6, 12)))]), path)
    assert main(["minrank", "-i", str(path)]) == 2


def test_graver_writes_basis(tmp_path, pair7_file, capsys):
    basis = tmp_path / "b.json"
    assert main(["graver", "--k", "2", "-o", str(basis)]) == 0
    assert "elements=2" in capsys.readouterr().out
    code = tmp_path / "c.json"
    assert main(["color", "-i", str(pair7_file), "-o", str(code), "--method", "graver", "--basis", str(basis)]) == 0


def test_geom(tmp_path, capsys):
    layout = GeometricLayout(
        (Disk((0.0, 0.0), 1.0), Disk((1.5, 0.0), 1.0), Disk((5.0, 0.0), 1.0)),
        ((0.0, 0.0), (0.75, 0.0), (5.0, 0.0)),
        d_ply=2,
    )
    path = tmp_path / "layout.json"
    dump_layout(layout, path, caches=[[2], [0], [1]])
    out = tmp_path / "inst.json"
    assert main(["geom", "--layout", str(path), "-o", str(out)]) == 0
    assert "max_depth=2" in capsys.readouterr().out
    assert out.exists()
    assert main(["geom", "--layout", str(path), "--check-ply", "1"]) == 1


def test_bench(tmp_path, capsys):
    out = tmp_path / "r.csv"
    plot = tmp_path / "r.tsv"
    assert main(["bench", "--k", "3", "--users-per-helper", "5", "--library", "60", "--cache", "10,20",
                 "--trials", "2", "-o", str(out), "--plot-data", str(plot)]) == 0
    rows = list(csv.DictReader(out.open()))
    assert len(rows) == 6
    assert len(plot.read_text().splitlines()) == 3
    assert "gain=" in capsys.readouterr().out


def test_missing_file_is_error(tmp_path):
    assert main(["graph", "-i", str(tmp_path / "none.json")]) == 2
