import subprocess
import sys

import pytest

from conftest import D1_TEXT, D2_TEXT
from hardimec.cli import main
from hardimec.mixed import parse_mixed


@pytest.fixture
def files(tmp_path):
    paths = {}
    for name, text in {"d1": D1_TEXT, "d2": D2_TEXT, "xy": "X <-> Y\n", "xtoy": "X -> Y\n",
                       "cyc": "A -> B\nB -> A\n"}.items():
        p = tmp_path / f"{name}.txt"
        p.write_text(text)
        paths[name] = str(p)
    return paths


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize("n,total", [(2, 6), (3, 200)])
def test_count(capsys, n, total):
    assert run(capsys, "count", "--n", str(n)) == (0, f"{total}\n", "")


def test_count_refuses_five_nodes(capsys):
    code, out, err = run(capsys, "count", "--n", "5")
    assert code == 2 and out == ""
    assert err.startswith("error:")


def test_enumerate_writes_every_graph(capsys, tmp_path):
    out_file = tmp_path / "all.txt"
    assert run(capsys, "enumerate", "--n", "2", "--out", str(out_file))[0] == 0
    text = out_file.read_text()
    assert text.count("# graph ") == 6
    code, out, _ = run(capsys, "enumerate", "--n", "2")
    assert code == 0 and out == text


def test_equiv_exit_codes(capsys, files):
    code, out, _ = run(capsys, "equiv", "--g1", files["d1"], "--g2", files["d2"], "--targets", "{};{Z}")
    assert code == 1
    assert "regime: hard" in out and "not equivalent" in out
    code, out, _ = run(capsys, "equiv", "--g1", files["d1"], "--g2", files["d2"], "--targets", "{};{Z}",
                       "--regime", "soft")
    assert code == 0
    assert "verdict: equivalent" in out


def test_equiv_reports_unknown_target(capsys, files):
    code, out, err = run(capsys, "equiv", "--g1", files["d1"], "--g2", files["d2"], "--targets", "{};{Q}")
    assert code == 2 and err.startswith("error:")


def test_missing_file_is_an_error(capsys, tmp_path):
    code, _, err = run(capsys, "project", "--graph", str(tmp_path / "nope.txt"))
    assert code == 2 and err.startswith("error:")


def test_cyclic_graph_is_an_error(capsys, files):
    code, _, err = run(capsys, "project", "--graph", files["cyc"])
    assert code == 2 and err.startswith("error:")


def test_project_prints_a_mag(capsys, files):
    code, out, _ = run(capsys, "project", "--graph", files["d1"])
    assert code == 0
    assert parse_mixed(out) == parse_mixed("X --> Z\nX --> Y\nZ --> Y")
    assert run(capsys, "project", "--graph", files["xy"])[1] == "node X\nnode Y\nX <-> Y\n"


def test_twin_adds_the_mirrored_f_edge(capsys, files):
    code, out, _ = run(capsys, "twin", "--graph", files["d1"], "--pair", "{};{Z}")
    assert code == 0
    assert "F@1,2 --> Y@1" in out and "F@1,2 --> Y@2" in out


def test_twin_needs_two_targets(capsys, files):
    code, _, err = run(capsys, "twin", "--graph", files["d1"], "--pair", "{};{Z};{X}")
    assert code == 2 and err.startswith("error:")


def test_iaug_has_one_section_per_domain(capsys, files):
    code, out, _ = run(capsys, "iaug", "--graph", files["d1"], "--targets", "{};{Z};{X}")
    assert code == 0
    assert [l for l in out.splitlines() if l.startswith("# ")] == ["# domain 1", "# domain 2", "# domain 3"]


@pytest.mark.parametrize("extra", [[], ["--zhang-tail-rules"]])
def test_learn_prints_graphs_and_separating_sets(capsys, files, extra):
    code, out, _ = run(capsys, "learn", "--graph", files["d1"], "--targets", "{};{Z}", *extra)
    assert code == 0
    assert "# domain 1" in out and "# domain 2" in out and "# separating sets" in out
    assert "X@1 | F@1,2 : {}" in out


def test_mec_exhaustive_and_sampled(capsys, files):
    code, out, _ = run(capsys, "mec", "--graph", files["d1"], "--targets", "{};{Z}")
    assert code == 0 and "size: 3" in out
    code, out, _ = run(capsys, "mec", "--graph", files["d1"], "--targets", "{};{Z}", "--regime", "soft",
                       "--exhaustive")
    assert code == 0 and "size: 15" in out
    code, out, _ = run(capsys, "mec", "--graph", files["d1"], "--targets", "{};{Z}", "--sample",
                       "--eps", "0.1", "--delta", "0.1", "--seed", "3")
    assert code == 0 and "samples: 116" in out and "seed: 3" in out


def test_mec_literal_sample_size(capsys, files):
    code, out, _ = run(capsys, "mec", "--graph", files["xtoy"], "--targets", "{}", "--sample", "--literal-m")
    assert code == 0 and "samples: 23025" in out


def test_table_csv(capsys, tmp_path):
    target = tmp_path / "t.csv"
    code, _, _ = run(capsys, "table", "--id", "1", "--trials", "2", "--seed", "0", "--n", "2",
                     "--mode", "complete", "--out", str(target))
    assert code == 0
    lines = target.read_text().splitlines()
    assert lines[0].startswith("table,n,mode,density,mean_hard")
    assert len(lines) == 2


def test_bad_arguments_exit_with_two():
    proc = subprocess.run([sys.executable, "-m", "hardimec", "count"], capture_output=True, text=True)
    assert proc.returncode == 2


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "hardimec", "count", "--n", "2"], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout == "6\n"
