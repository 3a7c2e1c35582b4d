import json
import subprocess
import sys

import pytest

from cubicdyn import cli
from cubicdyn.dynamics import maps


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def records(out):
    return [json.loads(line) for line in out.splitlines()]


def test_orbit_g(capsys):
    code, out, _ = run(capsys, "orbit", "g", "--start", "1,1,13", "--params", "e0=2,a3=3,a4=5", "--steps", "2")
    recs = records(out)
    assert code == 0
    assert recs[1]["x"] == ["51", "-3", "13"]
    assert recs[-1]["summary"]["word"] == "g"


def test_orbit_off_surface_is_domain_error(capsys):
    code, _, err = run(capsys, "orbit", "g", "--start", "1,1,1", "--params", "e0=2,a3=3,a4=5")
    assert code == 1 and "NotOnSurface" in err


@pytest.mark.parametrize("argv", [
    ("verify", "nosuch"),
    ("orbit", "g", "--start", "0.5,1,1", "--params", "e0=2,a3=3,a4=5"),
    ("orbit", "bogus", "--start", "1,1,13", "--params", "e0=2,a3=3,a4=5"),
    ("lines", "VII", "--params", "e0=4,e3=3,e4=2"),
    ("lines", "V", "--params", "e0=4"),
    ("census", "--alpha", "1,2"),
    ("verify",),
])
def test_usage_errors_exit_2(capsys, argv):
    code, _, _ = run(capsys, *argv)
    assert code == 2


def test_lines_v(capsys):
    code, out, _ = run(capsys, "lines", "V", "--params", "e0=4,e3=3,e4=2")
    assert code == 0 and len(records(out)) == 18


def test_sample_and_csv(capsys):
    code, out, _ = run(capsys, "sample", "VI", "--params", "e1=2,e2=3,e3=5,e4=7", "--count", "4",
                       "--format", "csv", "--seed", "7")
    lines = out.splitlines()
    assert code == 0 and len(lines) == 5


def test_census(capsys):
    code, out, _ = run(capsys, "census", "--alpha", "1/3,1/5,1/7")
    labels = [r["label"] for r in records(out)]
    assert code == 0 and labels[:3] == ["r1", "r2", "r3"]


def test_census_non_generic(capsys):
    code, _, err = run(capsys, "census", "--alpha", "1/3,0,-1/3")
    assert code == 1 and "NonGenericAlpha" in err


def test_cremona_p_period(capsys):
    code, out, _ = run(capsys, "cremona", "p", "--point", "1,1")
    assert code == 0 and records(out)[-1]["summary"]["period"] == 5


def test_cremona_verify(capsys):
    code, out, _ = run(capsys, "cremona", "verify", "--trials", "10")
    assert code == 0 and all(r["verdict"] == "Equal" for r in records(out))


def test_verify_suite_deterministic(capsys, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert cli.main(["verify", "tame", "--seed", "3", "--trials", "10", "--out", str(a)]) == 0
    assert cli.main(["verify", "tame", "--seed", "3", "--trials", "10", "--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()
    assert records(a.read_text())[-1]["summary"]["failed"] == 0


def test_alias_suite(capsys):
    code, out, _ = run(capsys, "verify", "braid", "--trials", "5")
    assert code == 0 and records(out)[0]["suite"] == "tame"


def test_mutated_map_fails_with_witness(capsys, monkeypatch):
    monkeypatch.setattr(maps, "_sigma1", lambda x, P: (-x[0] - x[1] * x[2] + P.theta[0] + 1, x[1], x[2]))
    code, out, _ = run(capsys, "verify", "tame", "--trials", "10")
    assert code == 1
    bad = [r for r in records(out) if r.get("verdict") == "Unequal"]
    assert bad and all(r.get("witness") for r in bad)


def test_console_entry_point():
    res = subprocess.run([sys.executable, "-m", "cubicdyn", "lines", "V", "--params", "e0=4,e3=3,e4=2",
                          "--format", "csv"], capture_output=True, text=True)
    assert res.returncode == 0 and len(res.stdout.splitlines()) == 19
