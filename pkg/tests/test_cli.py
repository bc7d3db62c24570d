import json
from importlib import resources

import jsonschema
import pytest

from circdet.cli import main


def schema(name):
    text = resources.files("circdet").joinpath(f"schemas/{name}.schema.json").read_text()
    return json.loads(text)


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, name, *argv):
    code, out, _ = run(capsys, *argv, "--json")
    payload = json.loads(out)
    jsonschema.validate(payload, schema(name))
    return code, payload


def test_eval_minus_x(capsys):
    code, out, _ = run(capsys, "eval", "--n", "15", "--poly", "-x")
    assert code == 0
    assert out.splitlines()[0] == "M_15 = -1"
    assert "N_15 = 1" in out


def test_classify_31(capsys):
    code, out, _ = run(capsys, "classify", "--prime", "31")
    assert code == 0 and out.strip() == "good"


def test_member_549(capsys):
    code, out, _ = run(capsys, "member", "--n", "15", "--value", "549")
    assert code == 0 and "non-member" in out and "no_qualifying_prime" in out


def test_exact_decimal(capsys):
    code, out, _ = run(capsys, "eval", "--n", "15", "--poly", "1 - x + 1000000x^3")
    assert code == 0
    assert "e+" not in out and "E+" not in out


@pytest.mark.parametrize(
    "name,argv",
    [
        ("eval", ["eval", "--n", "35", "--poly", "1 + x^3 + x^5 + x^7 + x^10"]),
        ("norms", ["norms", "--d", "15", "--poly", "x + 2"]),
        ("cyclotomic", ["cyclotomic", "--d", "15"]),
        ("witness", ["witness", "--n", "15", "--value", "279"]),
        ("witness", ["witness", "--family", "3power", "--p", "5", "--m", "7"]),
        ("witness", ["witness", "--family", "fixed", "--name", "55_11cubed"]),
        ("witness", ["witness", "--family", "shift", "--poly", "x", "--n", "15", "--k", "1", "--lam", "1"]),
        ("classify", ["classify", "--prime", "61"]),
        ("classify", ["classify", "--poly", "1"]),
        ("classify", ["classify", "--upto", "200"]),
        ("split-prime", ["split-prime", "--prime", "11", "--element"]),
        ("member", ["member", "--n", "15", "--value", "144"]),
        ("member", ["member", "--n", "10", "--value", "-36"]),
        ("verify-units", ["verify-units"]),
        ("verify-paper", ["verify-paper", "--only", "1,9"]),
    ],
)
def test_json_schemas(capsys, name, argv):
    code, payload = run_json(capsys, name, *argv)
    assert code == 0


def test_witness_refused(capsys):
    code, payload = run_json(capsys, "witness", "witness", "--n", "15", "--value", "9")
    assert code == 1 and payload["found"] is False


def test_search_writes_outputs(capsys, tmp_path):
    out = tmp_path / "s" / "n5.ndjson"
    code, payload = run_json(capsys, "search", "search", "--n", "5", "--bound", "1", "--out", str(out))
    assert code == 0 and payload["report"]["ok"]
    lines = out.read_text().splitlines()
    assert len(lines) == payload["summary"]["records"]
    record_schema = schema("search-record")
    for line in lines:
        jsonschema.validate(json.loads(line), record_schema)
    assert out.with_suffix(".png").stat().st_size > 0
    assert json.loads(out.with_suffix(".summary.json").read_text())["report"]["ok"]


def test_classify_report_files(capsys, tmp_path):
    out = tmp_path / "tags.tsv"
    code, _, _ = run(capsys, "classify", "--upto", "400", "--out", str(out))
    assert code == 0
    rows = out.read_text().splitlines()
    assert rows[0] == "p\ttag" and rows[1] == "31\tgood" and rows[2] == "61\tbad"
    assert out.with_suffix(".png").exists()


class TestErrors:
    def test_bad_poly_is_domain_error(self, capsys):
        code, _, err = run(capsys, "eval", "--n", "15", "--poly", "1 +* x")
        assert code == 1 and "--poly" in err

    def test_missing_flag_is_usage_error(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["eval", "--n", "15"])
        assert exc.value.code == 2
        assert "--poly" in capsys.readouterr().err

    def test_unknown_flag(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["eval", "--n", "15", "--poly", "x", "--bogus"])
        assert exc.value.code == 2
        assert "--bogus" in capsys.readouterr().err

    def test_wrong_residue(self, capsys):
        code, _, err = run(capsys, "classify", "--prime", "7")
        assert code == 1

    def test_ramified(self, capsys):
        code, _, err = run(capsys, "split-prime", "--prime", "3")
        assert code == 1 and "ramifies" in err

    def test_unsupported_n(self, capsys):
        code, payload = run_json(capsys, "error", "member", "--n", "21", "--value", "5")
        assert code == 1 and "membership" in payload["error"]

    def test_unknown_fixed_witness(self, capsys):
        code, _, err = run(capsys, "witness", "--family", "fixed", "--name", "nope")
        assert code == 1 and "nope" in err
