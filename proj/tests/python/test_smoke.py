import json

import pytest

import syzlab

E = [(0, 7)]
PAIR = [(0, 7), (0, 11)]


def test_version_and_builtins():
    assert syzlab.version() == "0.1.0"
    names = {b["name"] for b in syzlab.builtins()}
    assert {"green-d3", "green-d4", "green-d5", "thmD-b"} <= names


def test_elliptic_normal_quartic_betti():
    beta = syzlab.betti_table(E, [4], kind="ambient", p_max=3, q_max=5)
    nonzero = {(p, q, v) for p, row in enumerate(beta) for q, v in enumerate(row) if v}
    assert nonzero == {(0, 0, 1), (1, 2, 2), (2, 4, 1)}


def test_kummer_hilbert_values():
    assert syzlab.hilbert_values(PAIR, [1, 1], k_max=4) == [4, 10, 20, 34]


def test_npr_verdicts():
    assert syzlab.check_npr(E, [5], kind="ambient", p=2)["state"] == "holds"
    v = syzlab.check_npr(E, [5], kind="ambient", p=3)
    assert v["state"] == "fails"
    assert tuple(v["witness"]) == (3, 1)


def test_run_builtin_is_deterministic():
    a = syzlab.run_builtin("green-d4")
    b = syzlab.run_builtin("green-d4", jobs=2)
    assert a["exit_code"] == 0
    assert a["report"] == b["report"]
    assert a["report"]["status"] == "ok"


def test_run_config_reports_failed_expectation():
    toml = """
name = "py-smoke"
field = 10007
kind = "ambient"
curves = [{ a = 0, b = 7 }]
degrees = [3]

[[tasks]]
type = "hilbert"
k_max = 3
expect = { values = [3, 6, 10] }
"""
    out = syzlab.run_config(toml)
    assert out["exit_code"] == 2
    assert out["report"]["tasks"][0]["result"]["values"] == [3, 6, 9]
    json.dumps(out["report"])


def test_config_errors_are_line_anchored():
    with pytest.raises(ValueError, match=r"<string>:\d+:"):
        syzlab.run_config('name = "x"\ncurves = [{ a = 0, b = 7 }]\ndegrees = [1.5]\n')


def test_mplus_h2_failures_on_product_of_curves():
    total, failures = syzlab.mplus_failures(11, [(0, 1), (0, 2)], [1, 1])
    assert total == 144
    assert len(failures) == 23
    assert all("O" in f for f in failures)
