"""CLI behavior, JSON certificates, re-verification, fault injection."""

import copy
import json

import pytest

from padicforms.certificates import verify_certificate
from padicforms.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, err = run_cli(capsys, *argv, "--json")
    return code, json.loads(out)


def test_newton_command(capsys):
    code, out, _ = run_cli(capsys, "newton", "--prime", "3", "t^2+3*t+9")
    assert code == 0
    assert "slope -1" in out and "degree 0" in out and "degree 2" in out


def test_exit_codes(capsys):
    code, _, _ = run_cli(capsys, "predicate", "--prime", "3", "--gamma", "2", "1/t")
    assert code == 1
    code, _, _ = run_cli(capsys, "predicate", "--prime", "3", "--gamma", "2", "t")
    assert code == 0
    code, _, err = run_cli(capsys, "newton", "--prime", "3", "t^")
    assert code == 2 and "offset 2" in err
    code, _, err = run_cli(capsys, "symbol", "--prime", "3", "t", "t^2-1")
    assert code == 2
    code, _, _ = run_cli(capsys, "isotropy", "--prime", "3", "1,-2,-3,6")
    assert code == 1
    code, _, _ = run_cli(capsys, "isotropy", "--prime", "3", "1,-1")
    assert code == 0


def test_hilbert_and_symbol_commands(capsys):
    code, doc = run_json(capsys, "hilbert", "--prime", "2", "2", "5")
    assert code == 0 and doc["result"]["value"] == -1
    ok, problems = verify_certificate(doc)
    assert ok, problems
    code, doc = run_json(capsys, "symbol", "--prime", "3", "t - 1", "t - 3")
    assert code == 0 and doc["result"]["value"] == -1
    assert verify_certificate(doc)[0]


def test_law_commands(capsys):
    code, doc = run_json(capsys, "check-recip", "--prime", "3", "t - 1", "t - 3")
    assert code == 0 and doc["result"]["holds"]
    assert verify_certificate(doc)[0]
    code, doc = run_json(capsys, "check-mult", "--prime", "2", "t + 1", "t + 3", "t^2 + t + 1")
    assert code == 0 and doc["result"]["holds"]
    assert verify_certificate(doc)[0]


def test_corpus_command(capsys):
    code, doc = run_json(capsys, "corpus", "--prime", "2", "--seed", "7",
                         "--cases", "20", "check-recip")
    assert code == 0
    assert doc["result"]["passes"] == 20
    assert verify_certificate(doc)[0]


def test_slopes_squareclass_elliptic(capsys):
    code, doc = run_json(capsys, "slopes", "--prime", "3", "t^2 - 12*t + 27")
    assert code == 0 and len(doc["result"]["factors"]) == 2
    assert verify_certificate(doc)[0]
    code, doc = run_json(capsys, "squareclass", "--prime", "3", "12")
    assert code == 0 and doc["result"]["representative"] == "3/1"
    code, doc = run_json(capsys, "elliptic-point", "--prime", "3", "3", "--digits", "40")
    assert code == 0
    assert verify_certificate(doc)[0]


def test_json_byte_determinism(capsys):
    _, out1, _ = run_cli(capsys, "construct-s", "--prime", "3", "--gamma", "2",
                         "t^2 - 9", "--seed", "5", "--json")
    _, out2, _ = run_cli(capsys, "construct-s", "--prime", "3", "--gamma", "2",
                         "t^2 - 9", "--seed", "5", "--json")
    assert out1 == out2
    _, outp1, _ = run_cli(capsys, "predicate", "--prime", "2", "t^2 + 1", "--json")
    _, outp2, _ = run_cli(capsys, "predicate", "--prime", "2", "t^2 + 1", "--json")
    assert outp1 == outp2


def test_construct_certificate_verifies(capsys, tmp_path):
    code, doc = run_json(capsys, "construct-s", "--prime", "3", "--gamma", "2", "t^2 - 3")
    assert code == 0 and doc["result"]["isotropic"]
    ok, problems = verify_certificate(doc)
    assert ok, problems
    path = tmp_path / "cert.json"
    path.write_text(json.dumps(doc))
    assert main(["verify", str(path)]) == 0


ALL_COMMANDS = [
    ("newton", "--prime", "3", "t^2+3*t+9"),
    ("slopes", "--prime", "3", "t^2 - 12*t + 27"),
    ("squareclass", "--prime", "3", "12"),
    ("hilbert", "--prime", "2", "2", "5"),
    ("symbol", "--prime", "3", "t - 1", "t - 3"),
    ("symbol", "--prime", "2", "t + 1", "t^2 + t + 1"),
    ("check-mult", "--prime", "3", "t - 1", "t + 5", "t - 3"),
    ("check-recip", "--prime", "5", "t - 1", "t - 5"),
    ("isotropy", "--prime", "3", "1,-2,-3,6"),
    ("construct-s", "--prime", "2", "--gamma", "5", "t^2 - 2"),
    ("predicate", "--prime", "5", "t^2 + 1/5"),
    ("predicate", "--prime", "2", "(1)/(t^3)"),
    ("elliptic-point", "--prime", "5", "25", "--digits", "30"),
    ("corpus", "--prime", "3", "--seed", "11", "--cases", "8", "pi-invariance"),
    ("corpus", "--prime", "3", "--seed", "11", "--cases", "6", "predicate"),
]


def test_every_command_certificate_reverifies(capsys, tmp_path):
    """Each subcommand's JSON document passes the verify subcommand."""
    for k, argv in enumerate(ALL_COMMANDS):
        code, out, err = run_cli(capsys, *argv, "--json")
        assert code in (0, 1), (argv, err)
        doc = json.loads(out)
        path = tmp_path / f"cert{k}.json"
        path.write_text(out)
        assert main(["verify", str(path)]) == 0, (argv, verify_certificate(doc)[1])
        capsys.readouterr()


def test_verify_rejects_garbage(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert main(["verify", str(bad)]) == 1
    bad.write_text(json.dumps({"schema": "other/9"}))
    assert main(["verify", str(bad)]) == 1


@pytest.fixture(scope="module")
def construct_doc():
    import subprocess, sys

    out = subprocess.run(
        [sys.executable, "-m", "padicforms.cli", "construct-s", "--prime", "3",
         "--gamma", "2", "t^2 - 3", "--json"],
        capture_output=True, text=True, check=True,
    )
    return json.loads(out.stdout)


def _mutate_and_verify(doc, mutate):
    doc = copy.deepcopy(doc)
    mutate(doc)
    ok, _ = verify_certificate(doc)
    return ok


def test_fault_injection(construct_doc, capsys):
    doc = construct_doc
    assert verify_certificate(doc)[0]

    def flip_result_s(d):
        d["result"]["s"] = d["result"]["s"].replace("- 3", "+ 3")

    def flip_assertion_poly(d):
        for a in d["assertions"]:
            if a["kind"] == "irreducible-certified" and "3*t" in a["poly"]:
                a["poly"] = a["poly"].replace("+ 3*t", "- 3*t")
                return

    def flip_symbol(d):
        for a in d["assertions"]:
            if a["kind"] == "symbol-condition":
                a["lhs"] = -a["lhs"]
                return

    def flip_residue(d):
        for a in d["assertions"]:
            if a["kind"] == "residue-test":
                a["symbol"] = -a["symbol"]
                return

    for mut in (flip_result_s, flip_assertion_poly, flip_symbol, flip_residue):
        assert not _mutate_and_verify(doc, mut), mut.__name__
