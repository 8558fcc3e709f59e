import json
import subprocess
import sys

import pytest

from hodgecaj import cli
from hodgecaj.golden import hodge_log
from hodgecaj.tpoly import TPolynomial


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out


def run_json(capsys, *argv):
    code, out = run(capsys, *argv)
    return code, json.loads(out.out)


def test_symbolic_expand_level_two_constant(capsys):
    code, doc = run_json(capsys, "expand", "--alpha", "0", "--mode", "qp", "--symbolic", "--order", "2")
    assert code == 0
    constant = [e for e in doc["log"] if e["hbar"] == 2 and e["monomial"] == []]
    assert constant == [{"hbar": 2, "monomial": [], "coeff": "(-1/128)*(p^2 - p*s^2 + s^4)/(s^2)"}]


def test_order_zero_is_one(capsys):
    code, doc = run_json(capsys, "expand", "--order", "0")
    assert code == 0
    assert doc["tau"] == [{"hbar": 0, "monomial": [], "coeff": "1"}]


def test_verify_appendix_alpha_one(capsys):
    code, doc = run_json(capsys, "verify-appendix", "--alpha", "1", "--order", "3")
    assert code == 0 and doc["ok"]


def test_verification_failure_exits_one(capsys, monkeypatch):
    def wrong(alpha, level):
        return hodge_log(alpha, level) + TPolynomial.t(1, 1)

    monkeypatch.setattr(cli, "hodge_log", wrong)
    code, doc = run_json(capsys, "verify-appendix", "--alpha", "0", "--order", "2")
    assert code == 1
    assert not doc["ok"]


@pytest.mark.parametrize(
    "argv",
    [
        ["expand", "--mode", "qp"],
        ["expand", "--mode", "qp", "--p", "1", "--s", "0"],
        ["expand", "--mode", "qp", "--p", "1"],
        ["expand", "--mode", "qp", "--symbolic", "--u", "1"],
        ["expand", "--alpha", "2"],
        ["expand", "--order", "x"],
        ["verify-appendix", "--alpha", "1", "--order", "4"],
        ["spectral", "--curve", "xy0"],
        ["spectral", "--curve", "airy", "--gmax", "0", "--nmax", "2"],
        ["kdv-check", "--symbolic"],
    ],
)
def test_usage_errors_exit_two(argv, capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(argv)
    assert exc.value.code == 2


def test_kdv_check(capsys):
    code, doc = run_json(capsys, "kdv-check", "--alpha", "0", "--u", "1/2", "--order", "3")
    assert code == 0 and doc["ok"] and doc["diff"] == []
    assert doc["kappa_parameters"][0] == "-1/4"


def test_verify_constraints(capsys):
    code, doc = run_json(capsys, "verify-constraints", "--alpha", "1", "--p", "3", "--s", "2", "--order", "2", "--kmax", "2")
    assert code == 0 and doc["ok"]


def test_spectral_table(capsys):
    code, doc = run_json(capsys, "spectral", "--curve", "airy", "--gmax", "1", "--nmax", "1")
    assert code == 0
    assert doc["omega"] == [{"g": 1, "n": 1, "terms": [{"poles": [4], "coeff": "-1/8"}]}]


def test_spectral_compare(capsys):
    code, doc = run_json(capsys, "spectral-compare", "--curve", "s0", "--u", "1", "--gmax", "1", "--nmax", "2")
    assert code == 0 and doc["ok"]
    assert len(doc["reports"]) == 3


def test_dump_series(capsys):
    # -log(1 - z^2)/2 at u = 1
    code, doc = run_json(capsys, "dump-series", "--name", "x", "--u", "1", "--order", "6")
    assert doc["series"] == ["2: 1/2", "4: 1/4", "6: 1/6", "trunc: 7"]


def test_output_file(tmp_path, capsys):
    target = tmp_path / "out.json"
    assert cli.main(["expand", "--order", "1", "--out", str(target)]) == 0
    assert json.loads(target.read_text())["order"] == 1
    assert capsys.readouterr().out == ""


def test_output_is_sorted(capsys):
    _, out = run(capsys, "expand", "--order", "2")
    doc = json.loads(out.out)
    assert out.out == json.dumps(doc, sort_keys=True, indent=1) + "\n"


ARGS = ["expand", "--alpha", "0", "--mode", "qp", "--symbolic", "--order", "2"]


def test_cache_hit_is_byte_identical(tmp_path, capsys):
    first = run(capsys, *ARGS, "--cache", str(tmp_path))[1].out
    entries = list(tmp_path.iterdir())
    assert len(entries) == 1
    second = run(capsys, *ARGS, "--cache", str(tmp_path))[1].out
    assert first == second
    assert list(tmp_path.iterdir()) == entries


def test_changed_order_changes_key(tmp_path, capsys):
    run(capsys, *ARGS, "--cache", str(tmp_path))
    run(capsys, *ARGS[:-1], "3", "--cache", str(tmp_path))
    assert len(list(tmp_path.iterdir())) == 2


def test_tampered_cache_is_recomputed(tmp_path, capsys, caplog):
    fresh = run(capsys, *ARGS)[1].out
    run(capsys, *ARGS, "--cache", str(tmp_path))
    (entry,) = tmp_path.iterdir()
    entry.write_text(entry.read_text().replace("1/128", "1/127"))
    again = run(capsys, *ARGS, "--cache", str(tmp_path))[1].out
    assert again == fresh
    assert "corrupt" in caplog.text


def test_version_mismatch_is_ignored(tmp_path, capsys):
    fresh = run(capsys, *ARGS)[1].out
    run(capsys, *ARGS, "--cache", str(tmp_path))
    (entry,) = tmp_path.iterdir()
    header, payload = entry.read_text().split("\n", 1)
    entry.write_text(header.replace(cli.__version__, "0.0.0") + "\n" + payload.replace("1/128", "1/127"))
    assert run(capsys, *ARGS, "--cache", str(tmp_path))[1].out == fresh


def test_cache_directory_from_environment(tmp_path, monkeypatch, capsys):
    monkeypatch.setenv("HODGE_CACHE_DIR", str(tmp_path))
    run(capsys, *ARGS)
    assert len(list(tmp_path.iterdir())) == 1


def test_module_entry_point():
    out = subprocess.run([sys.executable, "-m", "hodgecaj", "expand", "--order", "1"], capture_output=True, text=True)
    assert out.returncode == 0
    assert json.loads(out.stdout)["log"] == [{"hbar": 1, "monomial": [[1, 1]], "coeff": "1/8"}]
