import json
import subprocess
import sys
from pathlib import Path

import numpy as np
import pytest

from gsfock import multilinear as ml
from gsfock.cli import (
    ConfigError,
    dumps_report,
    main,
    parse_config,
    run_check,
    run_fock,
    run_gram,
    run_report,
)
from gsfock.statistics_ops import TildeOperator, untilde

FIXTURES = Path(__file__).parent / "fixtures"


def cfg(text_or_dict):
    if isinstance(text_or_dict, dict):
        text_or_dict = json.dumps(text_or_dict)
    return parse_config(text_or_dict)


def matrix_json(m):
    return [[[float(z.real), float(z.imag)] for z in row] for row in m]


def by_name(report):
    return {c["name"]: c for c in report["checks"]}


def test_parse_defaults():
    c = cfg({"dimension": 2, "statistics": {"family": "boson"}})
    assert c.nmax == 4 and c.tolerance == 1e-10
    assert c.spec.name == "boson" and c.spec.braid is not None


def test_parse_quon():
    c = cfg({"dimension": 1, "statistics": {"family": "quon", "q": 0.5}, "nmax": 3})
    assert c.spec.name == "quon" and c.nmax == 3 and c.spec.parameters["q"] == 0.5


def test_parse_custom_wrong_size():
    with pytest.raises(ConfigError, match=r"statistics\.cross"):
        cfg((FIXTURES / "custom_3x3.json").read_text())


@pytest.mark.parametrize(
    "data, where",
    [
        ({"dimension": 0, "statistics": {"family": "boson"}}, "dimension"),
        ({"dimension": 7, "statistics": {"family": "boson"}}, "dimension"),
        ({"dimension": True, "statistics": {"family": "boson"}}, "dimension"),
        ({"dimension": 2, "statistics": {"family": "boson"}, "nmax": 9}, "nmax"),
        ({"dimension": 6, "statistics": {"family": "boson"}, "nmax": 8}, "nmax"),
        ({"dimension": 2, "statistics": {"family": "anyon"}}, "statistics.family"),
        ({"dimension": 2, "statistics": {"family": "quon"}}, "statistics.q"),
        ({"dimension": 2, "statistics": {"family": "boson", "q": 1}}, "statistics"),
        ({"dimension": 2, "statistics": {"family": "boson"}, "extra": 1}, "top level"),
        ({"dimension": 2, "statistics": {"family": "boson"}, "tolerance": -1}, "tolerance"),
        ({"dimension": 2, "statistics": {"family": "color", "group": [2], "degrees": [[0]]}}, "degrees"),
        (
            {"dimension": 1, "statistics": {"family": "color", "group": [3], "degrees": [[1]],
                                             "epsilon": [[1, 1, 1], [1, 2, 1], [1, 1, 1]]}},
            "epsilon",
        ),
        (
            {"dimension": 1, "statistics": {"family": "custom", "cross": [[["a", 0]]]}},
            r"statistics\.cross\[0\]\[0\]",
        ),
    ],
)
def test_parse_errors_name_location(data, where):
    with pytest.raises(ConfigError, match=where):
        cfg(data)


def test_parse_syntax_error_location():
    with pytest.raises(ConfigError, match=r"line \d+ column \d+"):
        cfg((FIXTURES / "malformed.json").read_text())


def test_check_boson_passes():
    r = run_check(cfg((FIXTURES / "boson.json").read_text()))
    assert r["verdict"] == "pass"
    assert all(c["residual"] <= 1e-12 for c in r["checks"] if c["severity"] == "error")


def test_check_quon_forced_braid_fails():
    r = run_check(cfg((FIXTURES / "quon_forced_braid.json").read_text()))
    assert r["verdict"] == "fail"
    assert "consistency_projector" in r["failed_checks"]
    assert by_name(r)["consistency_projector"]["residual"] == pytest.approx(0.5)


def test_check_custom_perturbed_flip_fails_yang_baxter():
    m = ml.flip(2)
    m[1, 1] += 0.1
    cross = untilde(TildeOperator(m)).matrix
    r = run_check(cfg({"dimension": 2, "statistics": {"family": "custom", "cross": matrix_json(cross)}}))
    assert r["failed_checks"] == ["yang_baxter"]


def test_gram_boltzmann_identity():
    c = cfg({"dimension": 3, "statistics": {"family": "boltzmann"}})
    c.emit_matrix = True
    r = run_gram(c, 3)
    level = r["level"]
    assert level["positivity"] == "definite" and level["kernel_dim"] == 0
    m = np.array(level["matrix"])
    assert np.array_equal(m[..., 0], np.eye(27)) and not m[..., 1].any()


def test_gram_boson_semidefinite():
    r = run_gram(cfg((FIXTURES / "boson.json").read_text()), 2)
    assert r["level"]["positivity"] == "semidefinite" and r["level"]["kernel_dim"] == 1
    assert "matrix" not in r["level"]


def test_gram_quon_definite():
    r = run_gram(cfg({"dimension": 2, "statistics": {"family": "quon", "q": 0.5}}), 3)
    assert r["level"]["positivity"] == "definite" and r["level"]["min_eigenvalue"] > 0


def test_gram_level_out_of_range():
    with pytest.raises(ConfigError):
        run_gram(cfg((FIXTURES / "boson.json").read_text()), 5)


def test_fock_boltzmann_crel_zero():
    r = run_fock(cfg({"dimension": 2, "statistics": {"family": "boltzmann"}}))
    assert by_name(r)["crel"]["residual"] == 0.0
    assert r["quotient"]["note"] == "no braid operator supplied"


def test_fock_fermion_three():
    r = run_fock(cfg((FIXTURES / "fermion3.json").read_text()))
    assert r["verdict"] == "pass"
    assert r["operators"]["quotient_dims"] == [3, 3, 1, 0]
    for name in ("brel_annihilation", "brel_creation", "brel_crel"):
        assert by_name(r)[name]["residual"] <= 1e-10


def test_fock_boson_number_spectrum_integers():
    r = run_fock(cfg((FIXTURES / "boson.json").read_text()))
    spectrum = r["operators"]["number_operator_spectrum"]
    assert spectrum == [0.0, 1.0, 1.0, 2.0, 2.0, 2.0, 3.0, 3.0, 3.0, 3.0]


def test_fock_quon_reports_no_braid_quotient():
    r = run_fock(cfg({"dimension": 2, "statistics": {"family": "quon", "q": 0.5}}))
    assert r["quotient"]["note"] == "no nontrivial braid quotient exists"
    assert r["verdict"] == "pass"


def test_fock_skipped_when_inconsistent():
    c = cfg((FIXTURES / "quon_forced_braid.json").read_text())
    assert "skipped" in run_fock(c)["operators"]
    c.allow_inconsistent = True
    r = run_fock(c)
    assert r["verdict"] == "fail"
    assert "brel" in r["failed_checks"]


def test_warnings_do_not_fail_verdict():
    r = run_check(cfg({"dimension": 2, "statistics": {"family": "boltzmann"}}))
    assert not by_name(r)["cross_invertible"]["pass"]
    assert r["verdict"] == "pass"


def test_report_roundtrip_and_determinism():
    c = cfg((FIXTURES / "color_mixed.json").read_text())
    text = dumps_report(run_report(c))
    assert json.loads(text) == run_report(c)
    assert dumps_report(run_report(c)) == text


def test_float_format_seventeen_digits():
    text = dumps_report({"x": 0.1, "y": 2.0, "z": [1e-20]})
    assert '"x": 0.10000000000000001' in text
    assert '"y": 2.0' in text
    assert json.loads(text) == {"x": 0.1, "y": 2.0, "z": [1e-20]}


def test_report_levels_stable_under_nmax():
    base = {"dimension": 2, "statistics": {"family": "boson"}}
    r3 = run_report(cfg({**base, "nmax": 3}))
    r4 = run_report(cfg({**base, "nmax": 4}))
    assert r4["levels"][:3] == r3["levels"]
    assert r4["quotient"]["levels"][:3] == r3["quotient"]["levels"]


def test_main_exit_codes(tmp_path, capsys):
    assert main(["check", str(FIXTURES / "boson.json")]) == 0
    assert main(["check", str(FIXTURES / "quon_forced_braid.json")]) == 1
    assert main(["check", str(FIXTURES / "malformed.json")]) == 2
    assert main(["check", str(tmp_path / "missing.json")]) == 2
    assert main(["gram", str(FIXTURES / "boson.json"), "--level", "9"]) == 2
    assert main(["frobnicate"]) == 2
    out = tmp_path / "r.json"
    assert main(["report", str(FIXTURES / "boson.json"), "-o", str(out)]) == 0
    assert json.loads(out.read_text())["verdict"] == "pass"


def test_main_tolerance_override(capsys):
    assert main(["check", str(FIXTURES / "quon_forced_braid.json"), "--tolerance", "1.0"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["config"]["tolerance"] == 1.0


def test_main_gram_emits_matrix(capsys):
    assert main(["gram", str(FIXTURES / "boson.json"), "--level", "2", "--emit-matrix"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert len(payload["level"]["matrix"]) == 4


def test_module_entry_point_subprocess(tmp_path):
    out = tmp_path / "r.json"
    done = subprocess.run(
        [sys.executable, "-m", "gsfock", "report", str(FIXTURES / "fermion3.json"), "-o", str(out)],
        capture_output=True,
        text=True,
    )
    assert done.returncode == 0, done.stderr
    assert "verdict: pass" in done.stdout
