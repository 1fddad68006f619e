from __future__ import annotations

import csv
import io
import json
import pathlib
import sys

import pytest

from parahoric import cli

CORPUS = pathlib.Path(__file__).resolve().parent.parent / "corpus"


def run_main(argv, capsys, stdin_text=None, monkeypatch=None):
    if stdin_text is not None:
        monkeypatch.setattr(sys, "stdin", io.StringIO(stdin_text))
    code = cli.main(argv)
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture(scope="module")
def response_validator():
    return cli.validator("response")


@pytest.mark.parametrize("path", sorted((CORPUS / "ok").glob("*.json")), ids=lambda p: p.stem)
def test_corpus_ok(path, capsys, response_validator):
    code, out, _ = run_main(["run", "--json", str(path)], capsys)
    assert code == 0, out
    doc = json.loads(out)
    assert doc["status"] == "ok"
    response_validator.validate(doc)


@pytest.mark.parametrize("sub,code", [("malformed", 2), ("precondition", 1)])
def test_corpus_errors(sub, code, capsys, response_validator):
    for path in sorted((CORPUS / sub).glob("*.json")):
        got, out, _ = run_main(["run", "--json", str(path)], capsys)
        assert got == code, path.name
        doc = json.loads(out)
        assert doc["status"] == "error"
        response_validator.validate(doc)


def test_flag_examples(capsys):
    code, out, _ = run_main(["parahoric", "--type", "A1", "--theta", "1/2"], capsys)
    assert code == 0 and json.loads(out)["result"]["m"] == {"+α": 0, "−α": 1}
    code, out, _ = run_main(["approx-weight", "--type", "A1", "--theta", "sqrt2/2", "--rep", "adjoint"], capsys)
    assert code == 0 and json.loads(out)["result"]["eta"] == "2/3"
    code, out, _ = run_main(["cover-exists", "--genus", "0", "--indices", "2,3"], capsys)
    assert code == 0 and json.loads(out)["result"]["exists"] is False


def test_stdin_and_command_fill(capsys, monkeypatch):
    req = json.dumps({"payload": {"type": "A1", "theta": "1/2"}})
    code, out, _ = run_main(["ramification", "--json", "-"], capsys, req, monkeypatch)
    assert code == 0 and json.loads(out)["command"] == "ramification"
    req = json.dumps({"command": "walls", "payload": {"type": "A1", "region": [["0", "1"]]}})
    code, _, _ = run_main(["ramification", "--json", "-"], capsys, req, monkeypatch)
    assert code == 2


def test_run_without_json(capsys):
    code, out, _ = run_main(["run"], capsys)
    assert code == 2 and json.loads(out)["error"]["code"] == "malformed"


def test_unknown_flag_exit(capsys):
    code, _, _ = run_main(["walls", "--frobnicate"], capsys)
    assert code == 2


def test_emit_csv(tmp_path, capsys):
    dest = tmp_path / "walls.csv"
    code, _, _ = run_main(["walls", "--type", "A1", "--region=-1/2:3/2", "--emit-csv", str(dest)], capsys)
    assert code == 0
    rows = list(csv.reader(dest.open()))
    assert len(rows) == 1 + 4
    code, _, err = run_main(["walls", "--type", "A1", "--region", "0:1", "--emit-csv", "-"], capsys)
    assert code == 0 and err.splitlines()[0] == ",".join(rows[0])


def test_output_is_canonical(capsys):
    path = CORPUS / "ok" / "05_parahoric_a1_half.json"
    _, out, _ = run_main(["run", "--json", str(path)], capsys)
    doc = json.loads(out)
    assert out == json.dumps(doc, sort_keys=True, ensure_ascii=False, indent=2) + "\n"
    assert doc["version"] == {"tool": "1.0.0", "schema": "v1"}


def test_precision_env(capsys, monkeypatch):
    monkeypatch.setenv("PARAHORIC_PRECISION", "64")
    code, _, _ = run_main(["approx-weight", "--type", "A1", "--theta", "sqrt2/2"], capsys)
    assert code == 0
    monkeypatch.setenv("PARAHORIC_PRECISION", "lots")
    code, _, _ = run_main(["approx-weight", "--type", "A1", "--theta", "sqrt2/2"], capsys)
    assert code == 2


def test_region_option():
    base = {"command": "walls", "payload": {"type": "A1", "region": [["-1/2", "3/2"]]}}
    via_payload, code, _ = cli.run_command(base)
    via_option, code2, _ = cli.run_command({"command": "walls", "payload": {"type": "A1"},
                                            "options": {"region": [["-1/2", "3/2"]]}})
    assert code == code2 == 0 and via_payload["result"] == via_option["result"]
    clash = dict(base, options={"region": [["0", "1"]]})
    assert cli.run_command(clash)[1] == 2
