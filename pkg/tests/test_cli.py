import io
import json
import random
import subprocess
import sys
from fractions import Fraction

import pytest

from latvoa import cli, suites
from latvoa.errors import VOAError
from latvoa.fock import FockTerm, FockVector, sort_factors


def run(argv):
    out = io.StringIO()
    code = cli.run(argv, out)
    return code, json.loads(out.getvalue())


def random_vector(space, rng, lam):
    terms = {}
    for _ in range(rng.randint(1, 4)):
        factors = sort_factors((rng.randrange(space.rank), rng.randint(1, 3)) for _ in range(rng.randint(0, 3)))
        coords = [Fraction(rng.randint(-6, 6), rng.choice([1, 1, 2, 3])) for _ in range(space.rank)]
        t = FockTerm(factors, space.charge(*coords, lam=lam and rng.random() < 0.5))
        terms[t] = terms.get(t, 0) + Fraction(rng.randint(-5, 5), rng.randint(1, 4))
    return FockVector(terms)


@pytest.mark.parametrize("preset", ["a2", "rank1-N2"])
def test_parse_print_round_trip(preset):
    cfg = cli.load_config(preset)
    space = cfg.space()
    rng = random.Random(2024)
    for _ in range(200):
        v = random_vector(space, rng, cfg.lam is not None)
        text = space.format(v)
        assert cli.parse_element(text, space) == v
        assert space.format(cli.parse_element(text, cfg)) == text


def test_parse_examples():
    cfg = cli.load_config("rank1-N1")
    sp = cfg.space()
    assert cli.parse_element("a(-1)E[1]", cfg) == sp.state([(0, 1)], 1)
    want = sp.state([(0, 2), (0, 1)]) * Fraction(1, 2) - sp.exp(2)
    assert cli.parse_element("1/2*a(-2)a(-1)vac - E[2]", cfg) == want
    assert cli.parse_element("0", cfg) == 0
    assert cli.parse_element("-E[1] + E[1]", cfg) == 0
    a2 = cli.load_config("a2").space()
    assert cli.parse_element("E[0,1;L]", a2) == a2.exp(0, 1, lam=True)


@pytest.mark.parametrize("text,code", [
    ("a(0)vac", "NONNEGATIVE_MODE"),
    ("a(1)vac", "NONNEGATIVE_MODE"),
    ("q(-1)vac", "UNKNOWN_NAME"),
    ("E[1", "PARSE_ERROR"),
    ("E[1,2]", "DIMENSION_MISMATCH"),
    ("2*", "PARSE_ERROR"),
    ("E[1] E[2]", "PARSE_ERROR"),
])
def test_parse_errors(text, code):
    cfg = cli.load_config("rank1-N1")
    with pytest.raises(VOAError) as exc:
        cli.parse_element(text, cfg)
    assert exc.value.code == code


def test_parse_error_reports_position():
    cfg = cli.load_config("rank1-N1")
    with pytest.raises(VOAError) as exc:
        cli.parse_element("E[1] + E[", cfg)
    assert exc.value.details["position"] == 9


def test_reduce_and_mode_examples():
    code, rep = run(["--config", "rank1-N1", "reduce", "--target", "vb", "a(-2)vac"])
    assert code == 0 and rep["result"] == "-x"
    code, rep = run(["--config", "rank1-N1", "mode", "E[1]", "-3", "E[1]"])
    assert code == 0 and rep["result"] == "E[2]"
    assert set(rep) == {"command", "config_digest", "inputs", "result", "elapsed_ms"}


def test_other_commands():
    code, rep = run(["--config", "rank1-N1", "circle", "E[1]", "vac"])
    assert rep["result"] == "E[1] + a(-1)E[1]"
    code, rep = run(["--config", "rank1-N1", "residue", "E[1]", "vac", "1", "2"])
    assert rep["result"] == "E[1] + a(-1)E[1]"
    code, rep = run(["--config", "rank1-N1", "star", "E[1]", "E[1]"])
    assert rep["result"] == "0"
    code, rep = run(["--config", "rank1-N1", "form", "a(-1)vac", "a(-1)vac"])
    assert rep["result"] == "-2"
    code, rep = run(["--config", "a2", "character", "--monoid", "P", "--upto", "2"])
    assert rep["result"] == {"0": 1, "1": 6, "2": 13}
    code, rep = run(["--config", "a2", "module-act", "--epsilon", "half", "E[1,0]", "0", "E[-1/2,0;L]"])
    assert code == 0 and rep["result"] == "E[1/2,0;L]"


def test_verify_report_and_determinism():
    code, rep = run(["--config", "a2", "verify", "zhu-presentations", "--seed", "3"])
    assert code == 0
    assert len(rep["checks"]) >= 30
    assert all(set(c) == {"name", "pass", "witness"} for c in rep["checks"])
    assert rep["seed"] == 3
    code2, rep2 = run(["--config", "a2", "verify", "zhu-presentations", "--seed", "3"])
    rep.pop("elapsed_ms")
    rep2.pop("elapsed_ms")
    assert json.dumps(rep) == json.dumps(rep2)


def test_failing_check_exits_one(monkeypatch):
    monkeypatch.setitem(suites.SUITES, "normalizer", lambda space, **kw: [suites.check("forced", False, "x")])
    code, rep = run(["--config", "a2", "verify", "normalizer"])
    assert code == 1
    assert rep["checks"][0]["pass"] is False


def test_errors_exit_two(tmp_path):
    code, rep = run(["--config", "rank1-N1", "mode", "a(0)vac", "0", "vac"])
    assert code == 2 and rep["error"]["error"] == "NONNEGATIVE_MODE"
    code, rep = run(["--config", str(tmp_path / "missing.json"), "mode", "vac", "-1", "vac"])
    assert code == 2 and rep["error"]["error"] == "CONFIG_ERROR"
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"rank": 2, "gram": [[2, -1], [-1, 2]], "basis_names": ["a", "b"],
                               "cocycle": [[1, 1], [1, 1]]}))
    code, rep = run(["--config", str(bad), "mode", "vac", "-1", "vac"])
    assert code == 2 and rep["error"]["error"] == "CONFIG_ERROR"
    code, rep = run(["--config", "a2", "verify", "o-vanishing-vb"])
    assert code == 2 and rep["error"]["error"] == "CONTEXT_MISMATCH"
    assert cli.run(["--config", "a2", "verify", "nope"], io.StringIO()) == 2


def test_config_digest_is_stable(tmp_path):
    cfg = cli.load_config("rank1-N1")
    path = tmp_path / "c.json"
    path.write_text(json.dumps(cfg.raw, indent=4))
    assert cli.load_config(str(path)).digest == cfg.digest


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "latvoa", "--config", "rank1-N1", "reduce", "--target", "vb",
                           "a(-2)vac"], capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["result"] == "-x"
