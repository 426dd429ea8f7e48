import json

import pytest

from kummer.cli import main, parse_complex


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


@pytest.mark.parametrize("tok,val", [("1.1i", 1.1j), ("2-3i", 2 - 3j), ("i", 1j), ("-i", -1j), ("0.5", 0.5)])
def test_parse_complex(tok, val):
    assert parse_complex(tok) == val


def test_theta_eval_report(capsys):
    code, out = run(capsys, "theta-eval", "--omega", "1.1i,0.2i,0.9i", "--char", "00,00")
    doc = json.loads(out)
    assert code == 0
    assert list(doc) == sorted(doc)
    assert set(doc) >= {"command", "inputs", "results", "status", "tolerances"}
    assert doc["results"][0]["value"]["re"] > 1


@pytest.mark.parametrize(
    "argv",
    [
        ("ff-example", "--quiet"),
        ("ff-search", "--p", "7", "--expect-empty", "--quiet"),
        ("classify-fiber", "--b", "1:3:3:3"),
        ("fiber", "--kind", "corner"),
        ("fiber", "--kind", "cone", "--t", "2:3"),
        ("minors", "--stratum", "P0", "--trials", "2"),
        ("genus1", "--trials", "3"),
        ("build-surface", "--b", "1:3:3:3", "--p", "19"),
    ],
)
def test_passing_commands(capsys, argv):
    code, _ = run(capsys, *argv)
    assert code == 0


def test_rosenhain_reports_sign_failure(capsys):
    code, out = run(capsys, "rosenhain", "--trials", "1")
    doc = json.loads(out)
    assert code == 1 and doc["status"] == "fail"
    failed = [r["name"] for r in doc["results"] if r.get("ok") is False]
    assert failed == ["F identity with printed sign -1/4"]


def test_partial_on_computation_error(capsys):
    code, out = run(capsys, "fiber", "--kind", "product", "--p", "10007", "--s", "2:1", "--t", "2:1")
    doc = json.loads(out)
    assert code == 1 and doc["status"] in ("partial", "fail") and "NoRoot" in doc["error"]


def test_usage_errors(capsys):
    assert main(["bogus"]) == 2
    assert main(["theta-eval", "--omega", "1i", "--char", "00,00"]) == 2
