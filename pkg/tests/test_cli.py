import json

import pytest

from grfrob.formats.codec import dump_algebra, dump_corpus, load_algebra
from grfrob.main import main, split_labels
from grfrob.utils.errors import EXIT_CAP, EXIT_INPUT, EXIT_OK


@pytest.fixture
def flagship_file(tmp_path, flagship):
    path = tmp_path / "flagship.json"
    path.write_text(dump_algebra(flagship, "flagship"), encoding="utf-8")
    return str(path)


def test_split_labels():
    assert split_labels("e,c") == ["e", "c"]
    assert split_labels("(c,e), (e,c)") == ["(c,e)", "(e,c)"]


def test_construct_matrix_algebra(capsys):
    assert main(["construct", "matrix", "--group", "C2", "--p", "3", "--shifts", "e,c"]) == EXIT_OK
    A = load_algebra(capsys.readouterr().out)
    assert A.dim == 4
    assert A.degrees == (0, 1, 1, 0)


def test_construct_quaternion_division_ring(capsys):
    argv = ["construct", "division", "--group", "C2xC2", "--p", "3", "--support", "full", "--cocycle", "quaternion"]
    assert main(argv) == EXIT_OK
    assert load_algebra(capsys.readouterr().out).dim == 4


def test_construct_trivial_extension_and_quiver(capsys):
    assert main(["construct", "trivial-extension", "--p", "3", "--inner", "upper-triangular-2"]) == EXIT_OK
    assert load_algebra(capsys.readouterr().out).dim == 6
    argv = ["construct", "quiver", "--preset", "cycle2-rad2", "--group", "C2", "--p", "3", "--x-degree", "c"]
    assert main(argv) == EXIT_OK
    assert load_algebra(capsys.readouterr().out).dim == 4


def test_construct_then_analyze(tmp_path, capsys):
    argv = ["construct", "truncated-polynomial", "--group", "C2", "--p", "5", "--m", "2", "--x-degree", "c"]
    assert main(argv + ["--name", "flagship"]) == EXIT_OK
    path = tmp_path / "a.json"
    path.write_text(capsys.readouterr().out, encoding="utf-8")

    assert main(["analyze", str(path)]) == EXIT_OK
    report = json.loads(capsys.readouterr().out)
    assert report["algebra"]["name"] == "flagship"
    assert report["frobenius"]["graded_qf"] is True
    assert report["frobenius"]["sigma_set"] == ["c"]
    assert report["frobenius"]["graded_frobenius"] is False
    assert report["radical"]["jgr_dim"] == 1
    assert report["cross_check"]["all_agree"] is True


def test_analyze_graded_simple_matrix_algebra(tmp_path, capsys, m2):
    path = tmp_path / "m2.json"
    path.write_text(dump_algebra(m2), encoding="utf-8")
    assert main(["analyze", str(path)]) == EXIT_OK
    report = json.loads(capsys.readouterr().out)
    assert report["frobenius"]["sigma_set"] == ["e", "c"]
    assert report["radical"]["graded_semisimple"] is True


def test_classify_text(flagship_file, capsys):
    assert main(["classify", flagship_file, "--format", "text"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "Isoshift types: 1" in out
    assert "## Frobenius" not in out


def test_analyze_writes_reports(flagship_file, tmp_path, capsys):
    out_dir = tmp_path / "out"
    assert main(["analyze", flagship_file, "--output-dir", str(out_dir), "--name", "flagship"]) == EXIT_OK
    capsys.readouterr()
    assert (out_dir / "flagship_analysis.json").exists()
    assert "σ-Frobenius set" in (out_dir / "flagship_report.md").read_text(encoding="utf-8")


def test_malformed_group_table(tmp_path, flagship):
    data = json.loads(dump_algebra(flagship))
    data["group"]["table"] = [["e", "c"], ["c", "c"]]
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(data), encoding="utf-8")
    assert main(["analyze", str(path)]) == EXIT_INPUT


def test_not_json(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("{not json", encoding="utf-8")
    assert main(["classify", str(path)]) == EXIT_INPUT


def test_missing_file(tmp_path):
    assert main(["analyze", str(tmp_path / "missing.json")]) == EXIT_INPUT


def test_cap_exceeded(flagship_file, tmp_path):
    config = tmp_path / "config.json"
    config.write_text(json.dumps({"max_dim": 1}), encoding="utf-8")
    assert main(["analyze", flagship_file, "--config", str(config)]) == EXIT_CAP


def test_verify_small_corpus(tmp_path, capsys, flagship, m2):
    path = tmp_path / "corpus.json"
    path.write_text(dump_corpus([("flagship", flagship), ("m2", m2)]), encoding="utf-8")
    assert main(["verify", "--corpus", str(path), "--suite", "radicals"]) == EXIT_OK
    summary = json.loads(capsys.readouterr().out)
    assert summary["summary"]["instances"] == 2
    assert summary["summary"]["failed"] == 0
    assert summary["suites"] == ["radicals"]


def test_verify_frobenius_emits_route_tables(tmp_path, capsys, flagship):
    path = tmp_path / "corpus.json"
    path.write_text(dump_corpus([("flagship", flagship)]), encoding="utf-8")
    assert main(["verify", "--corpus", str(path), "--suite", "frobenius"]) == EXIT_OK
    summary = json.loads(capsys.readouterr().out)
    routes = summary["route_tables"]["flagship"]
    assert routes["c"]["combinatorial"] is True
    assert routes["e"]["combinatorial"] is False


def test_verify_rejects_non_associative_instance(tmp_path, broken):
    path = tmp_path / "corpus.json"
    path.write_text(dump_corpus([("broken", broken)]), encoding="utf-8")
    assert main(["verify", "--corpus", str(path)]) == EXIT_INPUT


def test_non_utf8_file(tmp_path):
    path = tmp_path / "bad.json"
    path.write_bytes(b'{"name": "caf\xe9"}')
    assert main(["analyze", str(path)]) == EXIT_INPUT
