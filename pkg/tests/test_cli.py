import json
import os
import subprocess
import sys
from importlib.resources import files
from pathlib import Path

import jsonschema
import pytest
from hypothesis import given, settings, strategies as st

from polyabc import cli
from polyabc.abc import MsVerdict, VerdictKind

GOLDEN = Path(__file__).parent / "golden"
SCHEMA = json.loads(files("polyabc").joinpath("schema/report.schema.json").read_text())
VALIDATOR = jsonschema.Draft202012Validator(SCHEMA)

# (golden name, argv, expected exit code)
CASES = [
    ("radical", ["radical", "--field", "q", "t^3 + t^2"], 0),
    ("radical_zero", ["radical", "0"], 0),
    ("div_radical", ["div-radical", "t^3*(t+1)"], 0),
    ("div_radical_zero", ["div-radical", "0"], 1),
    ("wronskian", ["wronskian", "-a", "t^2", "-b", "t+1"], 0),
    ("check_ms_frobenius", ["check-ms", "--field", "fp:5", "-a", "-1", "-b", "-t^5", "-c", "(1+t)^5"], 0),
    ("check_ms_tight", ["check-ms", "-a", "t^2", "-b", "1 - t^2", "-c", "-1"], 0),
    ("check_ms_not_coprime", ["check-ms", "-a", "t", "-b", "t", "-c", "-2*t"], 1),
    ("check_ms_not_zero_sum", ["check-ms", "-a", "t", "-b", "1", "-c", "1"], 1),
    ("check_ms_noncoprime", ["check-ms-noncoprime", "-a", "t^3", "-b", "t - t^3", "-c", "-t"], 0),
    ("check_ms_noncoprime_fp", ["check-ms-noncoprime", "--field", "fp:3", "-a", "t^4", "-b", "-t - t^4", "-c", "t"], 1),
    ("check_ms_noncoprime_raw", ["check-ms-noncoprime", "--field", "fp:3", "--raw", "-a", "t^4", "-b", "-t - t^4", "-c", "t"], 0),
    ("check_flt", ["check-flt", "--field", "fp:5", "-n", "3", "-a", "1", "-b", "1", "-c", "3"], 0),
    ("check_flt_char_divides", ["check-flt", "--field", "fp:3", "-n", "3", "-a", "1", "-b", "1", "-c", "2"], 1),
    ("check_catalan", ["check-catalan", "--exponents", "3", "3", "3", "--coeffs", "1,1,-2", "-a", "1", "-b", "1", "-c", "1"], 0),
    ("check_catalan_bad_exponents", ["check-catalan", "--exponents", "2", "3", "5", "-a", "1", "-b", "1", "-c", "1"], 1),
    ("check_davenport", ["check-davenport", "-f", "t^2", "-g", "t^3 + 1"], 0),
    ("check_davenport_cube_square", ["check-davenport", "-f", "t^2", "-g", "t^3"], 1),
    ("check_davenport_prime", ["check-davenport-prime", "-f", "t^2 + 2", "-g", "t^3"], 0),
    ("check_davenport_prime_f2", ["check-davenport-prime", "--field", "fp:2", "-f", "t^4", "-g", "t^6 + t"], 1),
    ("check_elliptic", ["check-elliptic", "--x-num", "2", "--y-num", "3"], 0),
    ("check_elliptic_not_on_curve", ["check-elliptic", "--x-num", "t", "--y-num", "t^2"], 1),
    ("descend", ["descend", "--field", "fp:3", "t^9 + 1", "t^3"], 0),
    ("descend_char0", ["descend", "t^3"], 1),
    ("search_ms_f2", ["search", "--field", "fp:2", "--target", "ms", "--max-degree", "4"], 0),
    ("search_noncoprime_f3", ["search", "--field", "fp:3", "--target", "noncoprime", "--max-degree", "2"], 0),
    ("search_flt_f5", ["search", "--field", "fp:5", "--target", "flt", "-n", "3", "--max-degree", "1"], 0),
    ("search_davenport", ["search", "--target", "davenport", "--max-degree", "3", "--samples", "10", "--seed", "7"], 0),
    ("search_flt_char_divides", ["search", "--field", "fp:3", "--target", "flt", "-n", "3", "--max-degree", "1"], 2),
    ("reproduce", ["reproduce"], 0),
    ("usage_unknown_command", ["frobnicate"], 2),
    ("usage_missing_flag", ["check-ms", "-a", "t"], 2),
    ("usage_bad_field", ["radical", "--field", "fp:6", "t"], 2),
    ("syntax_error", ["radical", "t^^2"], 2),
    ("literal_out_of_field", ["radical", "--field", "fp:2", "1/2*t"], 2),
]


def _strip(doc):
    doc = dict(doc)
    doc.pop("timing")
    return doc


@pytest.mark.parametrize("name, argv, code", CASES, ids=[c[0] for c in CASES])
def test_golden_and_exit_codes(name, argv, code):
    got_code, doc, _ = cli.run_command(argv + ["--json"])
    assert got_code == code
    VALIDATOR.validate(doc)
    path = GOLDEN / f"{name}.json"
    text = json.dumps(_strip(doc), indent=2, sort_keys=True) + "\n"
    if os.environ.get("POLYABC_REGEN_GOLDEN"):
        path.write_text(text)
    assert text == path.read_text()


def test_every_subcommand_has_a_golden():
    names = {argv[0] for _, argv, code in CASES if code == 0}
    assert names == {"radical", "div-radical", "wronskian", "check-ms", "check-ms-noncoprime",
                     "check-flt", "check-catalan", "check-davenport", "check-davenport-prime",
                     "check-elliptic", "descend", "search", "reproduce"}


def test_human_output(capsys):
    assert cli.main(["radical", "--field", "q", "t^3 + t^2"]) == 0
    assert capsys.readouterr().out.strip() == "t^2 + t"
    assert cli.main(["check-ms", "--field", "fp:5", "-a", "-1", "-b", "-t^5", "-c", "(1+t)^5"]) == 0
    assert capsys.readouterr().out.startswith("DerivativesVanish")
    assert cli.main(["radical", "t^^2"]) == 2
    assert "offset 2" in capsys.readouterr().err


def test_violation_exit_code(monkeypatch):
    fake = MsVerdict(VerdictKind.VIOLATION, 5, 2, -4, 3)
    monkeypatch.setattr(cli, "mason_stothers_verdict", lambda a, b, c: fake)
    code, doc, _ = cli.run_command(["check-ms", "-a", "t", "-b", "1", "-c", "-t-1", "--json"])
    assert code == 3
    VALIDATOR.validate(doc)


def test_inconsistency_exit_code(monkeypatch):
    from polyabc.errors import InconsistencyError

    def boom(*args):
        raise InconsistencyError("injected")

    monkeypatch.setattr(cli, "mason_stothers_verdict", boom)
    code, doc, _ = cli.run_command(["check-ms", "-a", "t", "-b", "1", "-c", "-t-1", "--json"])
    assert code == 3 and doc["error"]["type"] == "InconsistencyError"


def test_seed_environment(monkeypatch):
    argv = ["search", "--target", "davenport", "--max-degree", "2", "--samples", "3"]
    monkeypatch.setenv("POLYABC_SEED", "99")
    _, doc, _ = cli.run_command(argv)
    assert doc["result"]["report"]["config"]["seed"] == 99
    _, doc, _ = cli.run_command(argv + ["--seed", "5"])
    assert doc["result"]["report"]["config"]["seed"] == 5
    monkeypatch.setenv("POLYABC_SEED", "nope")
    code, doc, _ = cli.run_command(argv)
    assert code == 2
    monkeypatch.delenv("POLYABC_SEED")
    _, doc, _ = cli.run_command(argv)
    assert doc["result"]["report"]["config"]["seed"] == cli.DEFAULT_SEED


def test_console_entry_point():
    out = subprocess.run([sys.executable, "-m", "polyabc", "radical", "t^3 + t^2"],
                         capture_output=True, text=True)
    assert out.returncode == 0 and out.stdout.strip() == "t^2 + t"
    out = subprocess.run([sys.executable, "-m", "polyabc"], capture_output=True, text=True)
    assert out.returncode == 2


@settings(max_examples=100)
@given(st.lists(st.text(alphabet="t0123456789+-*^()/ ,:abcfgnpq", max_size=8), max_size=6))
def test_never_crashes_on_garbage(argv):
    code, doc, _ = cli.run_command(argv)
    assert code in (0, 1, 2, 3)
    VALIDATOR.validate(json.loads(json.dumps(doc)))
