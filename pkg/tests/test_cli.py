import json

import pytest

from adiabatic_gi import fixtures as fx
from adiabatic_gi.cli import build_parser, main
from adiabatic_gi.compile.qubo import parse_qubo
from adiabatic_gi.graphs import format_edge_list


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.fixture
def fig2_files(tmp_path):
    a, b = tmp_path / "g.txt", tmp_path / "gp.txt"
    a.write_text(format_edge_list(fx.FIG2_G))
    b.write_text(format_edge_list(fx.FIG2_GP))
    return str(a), str(b)


def test_gi_yes_from_files(capsys, fig2_files):
    code, out, _ = run(capsys, "gi", *fig2_files)
    assert code == 0
    assert out.splitlines()[0] == "isomorphic"
    assert "0231" in out


def test_gi_no_json(capsys):
    code, out, _ = run(capsys, "gi", "--fixture", "fig1", "--json")
    assert code == 1
    rep = json.loads(out)
    assert rep == {"min_cost": 4, "degeneracy": 16, "minimizers": rep["minimizers"], "is_isomorphic": False}
    assert len(rep["minimizers"]) == 16


def test_gi_with_evolution(capsys):
    code, out, _ = run(capsys, "gi", "--fixture", "fig2", "--evolve", "--T", "32", "--json")
    ev = json.loads(out)["evolution"]
    assert code == 0 and ev["T"] == 32 and ev["k"] == 2
    assert ev["min_cost_observed"] == 0


def test_oracle_text(capsys):
    code, out, _ = run(capsys, "oracle", "--fixture", "fig2")
    assert code == 0
    assert out.splitlines()[:2] == ["min_cost 0", "degeneracy 4"]


def test_aut_report(capsys):
    code, out, _ = run(capsys, "aut", "--fixture", "c4", "--json")
    rep = json.loads(out)
    assert code == 0
    assert rep["order"] == 8 and rep["dihedral_n"] == 4
    assert rep["generators"] == {"alpha": "3012", "beta": "0321"}
    assert all(rep["relations_checked"].values())


def test_sgi_exit_codes(capsys):
    code, out, _ = run(capsys, "sgi", "--fixture", "c4-p3", "--json")
    rep = json.loads(out)
    assert code == 0 and rep["contains_subgraph"] and "witness" in rep
    code, _, _ = run(capsys, "sgi", "--fixture", "matching-p3")
    assert code == 1


def test_gapscan_tsv(capsys, tmp_path):
    code, out, _ = run(capsys, "gapscan", "--fixture", "k2", "--grid", "11")
    lines = out.splitlines()
    assert code == 0 and lines[0] == "s\tE0\tE1\tgap\tmatrix_element" and len(lines) == 12
    target = tmp_path / "scan.tsv"
    code, out, _ = run(capsys, "gapscan", "--fixture", "fig2", "--out", str(target), "--json")
    rep = json.loads(out)
    assert rep["Delta_min"] > 0 and rep["T_bound"] > 0
    assert len(target.read_text().splitlines()) == 52


def test_evolve_text(capsys):
    code, out, _ = run(capsys, "evolve", "--fixture", "k2", "--T", "20", "--epsilon", "0.5", "--delta", "0.999")
    assert code == 0
    assert "runs 10" in out and "matches_oracle True" in out


def test_evolve_doubling_search(capsys):
    code, out, _ = run(capsys, "evolve", "--fixture", "k2", "--json")
    rep = json.loads(out)
    assert rep["T_search"][-1]["ground_population"] >= 0.9


def test_compile_qubo_and_stats(capsys, tmp_path):
    target = tmp_path / "p.qubo"
    code, out, err = run(capsys, "compile", "--fixture", "fig6", "--out", str(target))
    assert code == 0
    stats = json.loads(err)["stats"]
    assert (stats["T1"], stats["T2"], stats["T3"]) == (0, 6, 16)
    doc = parse_qubo(target.read_text())
    assert doc.num_vars == 8 + json.loads(err)["quadratic_program"]["ancillas"]


def test_compile_embed_reports_honestly(capsys):
    code, out, _ = run(capsys, "compile", "--fixture", "fig2", "--embed", "--json", "--out", "/dev/null")
    rep = json.loads(out)
    assert code == 0
    assert "embedding" in rep


@pytest.mark.parametrize("argv", [
    ["gi", "--fixture", "nope"],
    ["gi", "/does/not/exist", "/nor/this"],
    ["gi"],
    ["evolve", "--fixture", "c7", "--T", "1", "--limit-qubits", "20"],
    ["compile", "--fixture", "c6"],
    ["evolve", "--fixture", "k2", "--T", "1", "--epsilon", "2"],
])
def test_errors_exit_2(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2
    assert err.strip()


def test_limit_qubits_flag(capsys):
    code, _, err = run(capsys, "oracle", "--fixture", "c6", "--limit-qubits", "10")
    assert code == 2 and "10" in err


def test_parser_lists_subcommands():
    text = build_parser().format_help()
    for cmd in ("gi", "aut", "sgi", "gapscan", "evolve", "compile", "oracle"):
        assert cmd in text
