"""Command-line behavior: artifacts, formats, determinism, exit codes."""

import io
import json
from contextlib import redirect_stdout

from diffseq import cli, golden, serialize
from diffseq.sequences import killing


def run_cli(argv):
    buf = io.StringIO()
    with redirect_stdout(buf):
        code = cli.main(argv)
    return code, buf.getvalue()


def test_build_emits_a_parseable_document():
    code, out = run_cli(["build", "killing", "--n", "3"])
    assert code == 0
    doc = serialize.loads(out)
    op = serialize.document_to_operator(doc)
    assert op == killing(3)
    assert doc["metric"] == "euclidean"


def test_document_round_trip_through_files(tmp_path):
    code, out = run_cli(["build", "exterior_derivative", "--n", "3",
                         "--form-degree", "0"])
    assert code == 0
    path = tmp_path / "grad.json"
    path.write_text(out, encoding="utf-8")
    code, adj = run_cli(["adjoint", str(path)])
    assert code == 0
    adj_doc = serialize.loads(adj)
    assert adj_doc["source"]["label"].startswith("ad(")
    code, cc = run_cli(["cc", str(path)])
    assert code == 0
    cc_op = serialize.document_to_operator(serialize.loads(cc))
    assert cc_op.shape == (3, 3)


def test_output_bytes_are_deterministic():
    _, a = run_cli(["sequence", "killing", "--n", "3", "--json"])
    _, b = run_cli(["sequence", "killing", "--n", "3", "--json"])
    assert a == b
    _, c = run_cli(["build", "riemann", "--n", "3"])
    _, d = run_cli(["build", "riemann", "--n", "3"])
    assert c == d


def test_sequence_report_contents():
    code, out = run_cli(["sequence", "killing", "--n", "4", "--json"])
    assert code == 0
    doc = json.loads(out)
    assert doc["dims"] == [4, 10, 20, 20, 6]
    assert doc["orders"] == [1, 2, 1, 1]
    assert doc["euler"] == 0
    code, md = run_cli(["sequence", "killing", "--n", "4"])
    assert "4 -> 10 -> 20 -> 20 -> 6" in md


def test_markdown_operator_table():
    code, out = run_cli(["build", "killing", "--n", "2", "--markdown"])
    assert code == 0
    assert "| s11 |" in out or "s11" in out
    assert "2*x1" in out


def test_checks_pass_with_exit_zero():
    for which in ("lemma41", "lanczos-contradiction"):
        code, out = run_cli(["check", which])
        assert code == 0, which
        assert "result: pass" in out


def test_golden_tables_filtered_by_dimension():
    code, out = run_cli(["check", "golden-tables", "--n", "3"])
    assert code == 0
    assert "killing n=3" in out
    assert "n=4" not in out


def test_failing_check_exits_one_with_a_diff(monkeypatch):
    monkeypatch.setitem(golden.CHAINS, ("killing", 2), ((9, 9, 9), (9, 9)))
    code, out = run_cli(["check", "golden-tables", "--n", "2"])
    assert code == 1
    assert "FAIL" in out
    assert "expected (9, 9, 9)" in out


def test_usage_errors_exit_two():
    code, _ = run_cli(["build", "killing", "--n", "9"])
    assert code == 2
    code, _ = run_cli(["build", "lanczos_candidate", "--n", "3"])
    assert code == 2
    code, _ = run_cli(["check", "golden-tables", "--n", "1"])
    assert code == 2


def test_cap_errors_exit_three(tmp_path, monkeypatch):
    _, out = run_cli(["build", "killing", "--n", "3"])
    path = tmp_path / "k3.json"
    path.write_text(out, encoding="utf-8")
    monkeypatch.setenv("DIFFSEQ_DEGREE_CAP", "1")
    code, _ = run_cli(["cc", str(path)])
    assert code == 3


def test_malformed_document_is_a_usage_error(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text("{\"schema_version\": 99}", encoding="utf-8")
    code, _ = run_cli(["cc", str(path)])
    assert code == 2
    path2 = tmp_path / "nonjson.json"
    path2.write_text("not json at all", encoding="utf-8")
    code, _ = run_cli(["adjoint", str(path2)])
    assert code == 2


def test_json_and_markdown_flags_conflict():
    code, _ = run_cli(["sequence", "killing", "--n", "3",
                       "--json", "--markdown"])
    assert code == 2
