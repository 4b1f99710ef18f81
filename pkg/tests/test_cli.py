import json

import pytest

from mcgbundles.cli import run
from mcgbundles.corpus import DATA


def report(capsys, *argv):
    code = run(list(argv))
    out = capsys.readouterr().out
    return code, json.loads(out) if out else None


def test_verify_daisy(capsys):
    code, rep = report(capsys, "verify", "daisy", "--petals", "4")
    assert code == 0 and rep["result"]["verdict"] == "Holds"
    assert rep["result"]["provenance"] == "planar-exact"


def test_cl(capsys):
    code, rep = report(capsys, "cl", "--n", "7")
    assert code == 0 and rep["result"]["cl_floor"] == 5


def test_family_h1(capsys):
    code, rep = report(capsys, "family", "xm", "--g", "3", "--h", "2", "--m", "5", "--h1", "--flat",
                       "--obstruction")
    assert code == 0
    r = rep["result"]
    assert r["h1"] == "Z^7 + Z/5"
    assert r["flatness"]["verdict"] == "Certified"
    assert r["obstruction"]["obstructed"]
    assert r["weakest_provenance"] == "homology-only"


def test_ym_report_names_reading(capsys):
    code, rep = report(capsys, "family", "ym", "--base", "4", "--m", "3", "--h1")
    assert code == 0 and rep["result"]["h1"] == "Z^9 + Z/3" and "base_genus_reading" in rep["result"]


def test_usage_errors(capsys):
    assert run(["verify", "nonsense"]) == 2
    assert run([]) == 2
    assert run(["family", "xm", "--g", "2", "--h", "2", "--m", "1"]) == 2


def test_failed_verification_exit_code(capsys, tmp_path):
    bad = tmp_path / "bad.drv"
    bad.write_text("oracle commute a1 x3 [axiom]\nstart a1 x2\nstep swap 0\nend x2 a1\n")
    assert run(["--script", str(bad)]) == 1


def test_shipped_scripts(capsys):
    for path in sorted(DATA.glob("*.drv")):
        assert run(["--script", str(path)]) == 0, path.name


def test_catalog_flag(capsys):
    code, rep = report(capsys, "--catalog", str(DATA / "holed_sphere_5.cat"), "verify", "push-naturality")
    assert code == 0 and rep["result"]["holds"]


@pytest.mark.parametrize("argv", [
    ["verify", "power", "--k", "3"],
    ["derive", "commutatorize", "--k", "3"],
    ["distinguish", "ym", "--base", "3", "--m-range", "1..4"],
    ["nonlift", "--g", "3", "--h", "2", "--m", "1", "--marked", "3"],
    ["bounds", "--h", "2", "--e", "2"],
])
def test_report_round_trip(capsys, argv):
    code, rep = report(capsys, *argv)
    code2, rep2 = report(capsys, *rep["command"])
    assert code == code2 == 0
    assert rep2["result"] == rep["result"]


def test_golden_bounds(capsys):
    _, rep = report(capsys, "bounds", "--h", "2", "--e", "2")
    assert rep["result"] == {"h": 2, "e": 2, "section_admissible": True, "flat_parallel_admissible": False}
    assert sorted(rep) == ["command", "ok", "result", "seconds"]
