import hashlib
import json
from pathlib import Path

import pytest

from tropitor.cli import (EXIT_CAPACITY, EXIT_FALSE, EXIT_INPUT, EXIT_OK, EXIT_UNDETERMINED, jacobian_report,
                          main)
from tropitor import fixtures as fx
from tropitor.io import curve_to_json, quadform_from_json
from tropitor.quadform import QuadForm, arith_equiv_bruteforce


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr()


def write_curve(path: Path, G, lengths=None, basis=None) -> str:
    path.write_text(json.dumps(curve_to_json(G, lengths, basis)))
    return str(path)


def digest(d: Path) -> dict:
    return {p.name: hashlib.sha256(p.read_bytes()).hexdigest() for p in sorted(d.iterdir())
            if p.suffix in (".json", ".dot", ".tsv", ".csv") and p.name != "manifest.json"}


def test_enumerate_genus_two_writes_everything(tmp_path, capsys):
    code, cap = run(capsys, "enumerate", "curves", "--genus", "2", "--out", str(tmp_path))
    assert code == EXIT_OK
    assert "7 cells; max dim 3; 2 maximal" in cap.out
    for name in ("complex.json", "poset.dot", "summary.tsv", "cells.csv", "hasse.png", "manifest.json"):
        assert (tmp_path / name).stat().st_size > 0
    manifest = json.loads((tmp_path / "manifest.json").read_text())
    assert manifest["command"] == "enumerate" and manifest["config"]["genus"] == 2
    assert set(manifest["outputs"]) >= {"complex.json", "summary.tsv"}


def test_enumerate_is_deterministic(tmp_path, capsys):
    a, b = tmp_path / "a", tmp_path / "b"
    run(capsys, "enumerate", "cographic", "--genus", "3", "--out", str(a))
    run(capsys, "enumerate", "cographic", "--genus", "3", "--out", str(b))
    assert digest(a) == digest(b) and digest(a)


def test_enumerate_formats(capsys):
    code, cap = run(capsys, "enumerate", "graphic", "--genus", "2", "--format", "json")
    assert code == EXIT_OK and json.loads(cap.out)["kind"] == "graphic"
    code, cap = run(capsys, "enumerate", "curves", "--genus", "2", "--format", "dot")
    assert cap.out.startswith("digraph")


def test_enumerate_capacity(capsys):
    assert run(capsys, "enumerate", "curves", "--genus", "5")[0] == EXIT_CAPACITY


def test_jacobian_symbolic_peterson(capsys):
    code, cap = run(capsys, "jacobian", "peterson")
    rep = json.loads(cap.out)
    assert code == EXIT_OK and rep["symbolic"] and rep["basis_source"] == "explicit"
    assert len(rep["matrix"]) == 6
    assert rep["matrix"][0][:2] == ["l1+l2+l3+l4+l5+l6", "l1+l2+l3"]


def test_jacobian_theta_unit_lengths(tmp_path, capsys):
    f = write_curve(tmp_path / "t.json", fx.theta(), {"e1": 1, "e2": 1, "e3": 1})
    code, cap = run(capsys, "jacobian", f, "--out", str(tmp_path / "o"))
    assert code == EXIT_OK
    Q = quadform_from_json(json.loads(cap.out))
    assert arith_equiv_bruteforce(Q, QuadForm.of([[2, -1], [-1, 2]]), 2).status == "equivalent"
    assert (tmp_path / "o" / "voronoi.png").exists()


def test_jacobian_weight_only_is_zero():
    rep = jacobian_report(fx.single_vertex(2), {}, None)
    assert rep["matrix"] == [["0", "0"], ["0", "0"]] and rep["rank"] == 0


def test_jacobian_basis_modes(tmp_path, capsys):
    f = write_curve(tmp_path / "t.json", fx.theta(), {"e1": 2, "e2": 3, "e3": 5}, [[1, -1, 0], [0, 1, -1]])
    _, cap = run(capsys, "jacobian", f)
    assert json.loads(cap.out)["matrix"] == [["5", "-3"], ["-3", "8"]]
    _, cap = run(capsys, "jacobian", f, "--basis", "auto")
    assert json.loads(cap.out)["basis_source"] == "auto"
    g = write_curve(tmp_path / "u.json", fx.theta(), {"e1": 2, "e2": 3, "e3": 5})
    assert run(capsys, "jacobian", g, "--basis", "explicit")[0] == EXIT_INPUT


def test_fixture_directory_lookup(tmp_path, capsys):
    write_curve(tmp_path / "mine.json", fx.k(4), {n: 1 for n in fx.k(4).edge_names})
    assert run(capsys, "jacobian", "mine", "--fixtures", str(tmp_path))[0] == EXIT_OK
    assert run(capsys, "jacobian", "nothing-here")[0] == EXIT_INPUT


def test_torelli_pairs(tmp_path, capsys):
    db = fx.dumbbell()
    a = write_curve(tmp_path / "a.json", db, {"e1": 1, "e2": 2, "e3": 5})
    b = write_curve(tmp_path / "b.json", db, {"e1": 1, "e2": 2, "e3": 9})
    code, cap = run(capsys, "torelli", a, b)
    assert code == EXIT_OK and json.loads(cap.out)["same_jacobian"]
    t = write_curve(tmp_path / "t.json", fx.theta(), {"e1": 1, "e2": 1, "e3": 1})
    c = write_curve(tmp_path / "c.json", db, {"e1": 1, "e2": 1, "e3": 1})
    assert run(capsys, "torelli", t, c)[0] == EXIT_FALSE
    code, cap = run(capsys, "torelli", t, c, "--method", "oracle")
    assert code == EXIT_FALSE and json.loads(cap.out)["status"] == "inequivalent"
    k4 = write_curve(tmp_path / "k4.json", fx.k(4), {n: 1 for n in fx.k(4).edge_names})
    assert run(capsys, "torelli", t, k4)[0] == EXIT_INPUT


def test_torelli_single_and_planar(capsys):
    code, cap = run(capsys, "torelli", "k4", "--planar")
    v = json.loads(cap.out)
    assert code == EXIT_OK and v["planar"]["planar"] and v["cell_image"]["dimension"] == 6
    assert run(capsys, "torelli", "k33", "--planar")[0] == EXIT_FALSE
    assert run(capsys, "torelli", "peterson")[0] == EXIT_INPUT  # no lengths


def test_oracle_undetermined_when_bound_too_small(tmp_path, capsys):
    a = write_curve(tmp_path / "a.json", fx.theta(), {"e1": 1, "e2": 1, "e3": 1})
    code, cap = run(capsys, "torelli", a, a, "--method", "oracle", "--bound", "0")
    assert code == EXIT_UNDETERMINED and json.loads(cap.out)["status"] == "undetermined"
    assert run(capsys, "torelli", a, a, "--method", "oracle", "--bound", "1")[0] == EXIT_OK


def test_bad_inputs(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run(capsys, "jacobian", str(bad))[0] == EXIT_INPUT
    with pytest.raises(SystemExit):
        main(["enumerate", "curves"])


def test_verify_single_suite(tmp_path, capsys):
    code, cap = run(capsys, "verify", "--suite", "graph", "--genus-cap", "2", "--out", str(tmp_path))
    assert code == EXIT_OK and "checks passed" in cap.out
    assert (tmp_path / "verify.tsv").read_text().startswith("suite\tcheck")
