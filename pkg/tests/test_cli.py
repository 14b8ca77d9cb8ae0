import json

import pytest

from nazeta import acceptance
from nazeta.acceptance import fixture_text
from nazeta.cli import RunConfig, UsageError, main


@pytest.fixture
def curve_file(tmp_path):
    p = tmp_path / "x5-x.curve"
    p.write_text(fixture_text("x5-x.curve"))
    return p


def test_genus2_outputs(curve_file, tmp_path):
    out = tmp_path / "g2"
    assert main(["genus2", "--curve", str(curve_file), "--q", "3", "--out", str(out)]) == 0
    rows = (out / "genus2.csv").read_text().splitlines()
    assert rows[0] == "i,a_i" and len(rows) == 10
    assert rows[3] == "2,13/2"
    rep = json.loads((out / "arbitration.json").read_text())
    assert rep["selected"] == ["hn", "paper"]
    assert (out / "genus2.provenance.json").exists()


def test_byte_stable(curve_file, tmp_path):
    for d in ("a", "b"):
        assert main(["local", "--curve", str(curve_file), "--q", "5", "--rank", "2", "--out", str(tmp_path / d)]) == 0
    for name in ("local.csv", "nm.csv", "local_report.json"):
        assert (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes()


def test_artin_weil(curve_file, capsys):
    assert main(["artin", "--curve", str(curve_file), "--q", "3", "--check-weil"]) == 0
    out = capsys.readouterr().out
    assert "2,-2/1" in out and '"pass": true' in out


def test_elliptic(capsys):
    assert main(["elliptic", "--pmax", "997"]) == 0
    assert '"primes_checked": 167' in capsys.readouterr().out


def test_usage_errors(curve_file, tmp_path, capsys):
    assert main(["genus2", "--curve", str(curve_file)]) == 1
    assert main(["genus2", "--curve", str(curve_file), "--q", "3", "--pmax", "4"]) == 1
    assert main(["count", "--curve", str(tmp_path / "missing.curve"), "--q", "3"]) == 1
    assert main(["count", "--curve", str(curve_file), "--q", "2"]) == 1
    assert main(["bogus"]) == 1
    assert "bad" in capsys.readouterr().err


def test_check_failure_exit_2(curve_file):
    # the dr and lemma311 beta_2 forms give negative masses: a check failure, not a usage error
    assert main(["genus2", "--curve", str(curve_file), "--q", "3", "--variant", "dr"]) == 2
    assert main(["invariants", "--curve", str(curve_file), "--q", "3", "--rank", "2", "--variant", "lemma311"]) == 2


def test_bad_curve_file(tmp_path, capsys):
    p = tmp_path / "broken.curve"
    p.write_text("f: [1, 2, oops]\nbase: Q\ngenus: 1\n")
    assert main(["count", "--curve", str(p), "--q", "3"]) == 1
    assert "position 2" in capsys.readouterr().err


def test_runconfig_validation():
    with pytest.raises(UsageError, match="--s"):
        RunConfig("euler", None, {"pmax": 10})
    with pytest.raises(UsageError, match="--rank"):
        RunConfig("elliptic", None, {"pmax": 10, "rank": 2})


def test_selftest_filter(capsys):
    assert main(["selftest", "--filter", "invariants"]) == 0
    data = json.loads(capsys.readouterr().out.split("\n", 1)[1])
    assert [c["criterion"] for c in data["criteria"]] == [11, 12]
    assert main(["selftest", "--filter", "nothing-matches"]) == 1


def test_selftest_corrupted_fixture(monkeypatch, capsys):
    real = acceptance.fixture_text

    def corrupted(name):
        text = real(name)
        return text.replace('"h": "8/1"', '"h": "9/1"') if name == "arbitration_F3.json" else text

    monkeypatch.setattr(acceptance, "fixture_text", corrupted)
    assert main(["selftest", "--filter", "genus2"]) == 2
    err = capsys.readouterr().err
    assert "[FAIL]  8 genus-2 rank-2 pipeline" in err and "F_3" in err and "DIFFERS" in err
