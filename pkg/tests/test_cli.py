import io
import subprocess
import sys
import xml.etree.ElementTree as ET

import pytest

from bookcross import cli, graph as G
from bookcross.mso2.syntax import parse_formula
from bookcross.treewidth import parse_decomposition, validate_decomposition


def run(capsys, monkeypatch, argv, stdin=""):
    monkeypatch.setattr(sys, "stdin", io.StringIO(stdin))
    code = cli.run(argv)
    out, err = capsys.readouterr()
    return code, out, err


def test_cr1_stdin(capsys, monkeypatch):
    code, out, _ = run(capsys, monkeypatch, ["cr1", "--format", "graph6", "-"], "C~")
    assert code == 0 and out == "k=1\n"


def test_cr2_witness_file(capsys, monkeypatch, tmp_path):
    w = tmp_path / "w.txt"
    code, out, _ = run(capsys, monkeypatch, ["cr2", "--witness", str(w)], G.emit_graph6(G.complete_graph(5)))
    assert code == 0 and out == "k=1\n"
    assert w.read_text().startswith("order:")


def test_cr1_max_n(capsys, monkeypatch):
    code, _, err = run(capsys, monkeypatch, ["cr1", "--max-n", "4"], G.emit_graph6(G.complete_graph(5)))
    assert code == 2 and "max-n" in err


def test_planar2_strict_k5_edge_list(capsys, monkeypatch):
    text = G.emit_edge_list(G.complete_graph(5))
    code, out, _ = run(capsys, monkeypatch, ["planar2", "--format", "edgelist", "--strict"], text)
    assert code == 1 and out == "no\n"
    code, out, _ = run(capsys, monkeypatch, ["planar2", "--format", "edgelist"], text)
    assert code == 0 and out == "no\n"


def test_outerplanar(capsys, monkeypatch):
    code, out, _ = run(capsys, monkeypatch, ["outerplanar", "--strict"], G.emit_graph6(G.cycle_graph(6)))
    assert code == 0 and out == "yes\n"


def test_treewidth_with_decomposition(capsys, monkeypatch, tmp_path):
    f = tmp_path / "td.txt"
    g = G.complete_graph(5)
    code, out, _ = run(capsys, monkeypatch, ["treewidth", "--decomposition", str(f)], G.emit_graph6(g))
    assert code == 0 and out == "tw=4\n"
    assert validate_decomposition(g, parse_decomposition(f.read_text()))


def test_formula_hamiltonian_parses(capsys, monkeypatch):
    code, out, _ = run(capsys, monkeypatch, ["formula", "--name", "hamiltonian"])
    assert code == 0
    parse_formula(out)


def test_formula_onepage_needs_k(capsys, monkeypatch):
    code, _, err = run(capsys, monkeypatch, ["formula", "--name", "onepage"])
    assert code == 2 and "--k" in err


def test_mso_check(capsys, monkeypatch, tmp_path):
    f = tmp_path / "ham.mso"
    f.write_text("(hamiltonian)")
    code, out, _ = run(capsys, monkeypatch, ["mso-check", str(f)], G.emit_graph6(G.cycle_graph(6)))
    assert code == 0 and out == "true\nengine=courcelle\n"
    code, out, _ = run(capsys, monkeypatch, ["mso-check", "--engine", "naive", "--strict", str(f)],
                       G.emit_graph6(G.path_graph(3)))
    assert code == 1 and out == "false\nengine=naive\n"


def test_mso_check_rank_limit(capsys, monkeypatch, tmp_path):
    f = tmp_path / "f.mso"
    f.write_text("(exists-V A (exists-V B (exists-V C (exists-V D (exists-v x (in x D))))))")
    code, out, _ = run(capsys, monkeypatch, ["mso-check", "--engine", "courcelle", str(f)], "C~")
    assert code == 0 and out.splitlines()[0] == "unsupported"


def test_mso_check_budget(capsys, monkeypatch, tmp_path):
    f = tmp_path / "f.mso"
    f.write_text("(exists-E A (exists-E B (exists-E C (not (exists-e e (or (in e A) (in e B) (in e C)))))))")
    code, _, _ = run(capsys, monkeypatch, ["mso-check", "--engine", "naive", "--budget-ms", "1", str(f)],
                       G.emit_graph6(G.complete_graph(7)))
    assert code in (0, 3)


def test_mso_check_bad_formula(capsys, monkeypatch, tmp_path):
    f = tmp_path / "bad.mso"
    f.write_text("(exists-v u (in u u))")
    code, _, err = run(capsys, monkeypatch, ["mso-check", str(f)], "C~")
    assert code == 2 and err


def test_diagrams(capsys, monkeypatch):
    code, out, _ = run(capsys, monkeypatch, ["diagrams", "--k", "1", "--pages", "2"])
    assert code == 0 and len(out.splitlines()) == 2


def test_diagrams_over_cap(capsys, monkeypatch):
    code, _, _ = run(capsys, monkeypatch, ["diagrams", "--k", "3"])
    assert code == 2


def test_verify_list_and_suite(capsys, monkeypatch):
    code, out, _ = run(capsys, monkeypatch, ["verify", "list"])
    names = [line.split("\t")[0] for line in out.splitlines()]
    assert code == 0 and len(names) == 13 and "lemma4-report" in names
    code, out, _ = run(capsys, monkeypatch, ["verify", "diagrams"])
    assert code == 0 and "PASS" in out


def test_verify_unknown(capsys, monkeypatch):
    code, _, _ = run(capsys, monkeypatch, ["verify", "nope"])
    assert code == 2


def test_render(capsys, monkeypatch, tmp_path):
    out_file = tmp_path / "k4.svg"
    code, _, _ = run(capsys, monkeypatch, ["render", "--out", str(out_file)], "C~")
    assert code == 0
    ET.fromstring(out_file.read_text())


def test_render_with_drawing(capsys, monkeypatch, tmp_path):
    d = tmp_path / "d.txt"
    d.write_text("order: 0 1 2 3\npage0: 0-1 0-2 0-3 1-2 1-3 2-3\npage1:\n")
    code, out, _ = run(capsys, monkeypatch, ["render", "--drawing", str(d)], "C~")
    assert code == 0 and out.lstrip().startswith("<")


def test_usage_errors(capsys, monkeypatch):
    assert run(capsys, monkeypatch, ["bogus"])[0] == 2
    assert run(capsys, monkeypatch, ["cr1"], "not a graph\x01")[0] == 2
    assert run(capsys, monkeypatch, ["cr1", "/no/such/file"])[0] == 2


def test_deterministic_output(capsys, monkeypatch):
    a = run(capsys, monkeypatch, ["diagrams", "--k", "2", "--pages", "2"])[1]
    b = run(capsys, monkeypatch, ["diagrams", "--k", "2", "--pages", "2"])[1]
    assert a == b


def test_console_script_module():
    out = subprocess.run([sys.executable, "-m", "bookcross.cli", "cr1", "-"], input="C~",
                         capture_output=True, text=True)
    assert out.returncode == 0 and out.stdout == "k=1\n"
