import json

import pytest

from wreathdc.errors import PreconditionError
from wreathdc.presets import lamplighter
from wreathdc.verify import SUITES, LengthOracle, VerifyConfig, is_standard, run_suite
from wreathdc.wreath import parse_element


def test_standard_detection(lamp, s5):
    assert is_standard(lamp) and not is_standard(s5)


@pytest.mark.parametrize("suite,n", [("lemma25", 7), ("lemma34", 8), ("lemma37", 7),
                                     ("nf", 8), ("counting", 8)])
def test_suites_pass_on_lamplighter(suite, n):
    rep = run_suite(suite, lamplighter(5), VerifyConfig(n=n, samples=60))
    assert rep.ok, rep.failures
    assert rep.samples > 0
    data = json.loads(rep.to_json())
    assert {"lemma", "samples", "failure_count", "max_length_slack"} <= set(data)


def test_suites_on_nonstandard_set(s5):
    cfg = VerifyConfig(n=4, samples=40)
    rep = run_suite("lemma25", s5, cfg)
    assert rep.ok
    rep = run_suite("lemma37", s5, cfg)
    assert rep.ok and rep.unchecked + rep.checked_bfs == rep.checks
    with pytest.raises(PreconditionError):
        run_suite("nf", s5, cfg)


def test_empty_flow_is_not_a_pass(lamp):
    rep = run_suite("lemma34", lamp, VerifyConfig(n=8))
    assert not rep.ok and rep.failures[0]["kind"] == "empty"


def test_identity_u_rejected(lamp):
    with pytest.raises(PreconditionError):
        run_suite("lemma37", lamp, VerifyConfig(n=6, u=0))


def test_unknown_suite(lamp):
    with pytest.raises(ValueError):
        run_suite("lemma99", lamp, VerifyConfig())
    assert "lemma99" not in SUITES


def test_reports_are_deterministic():
    a = run_suite("lemma37", lamplighter(3), VerifyConfig(n=6, samples=30, seed=4)).to_json()
    b = run_suite("lemma37", lamplighter(3), VerifyConfig(n=6, samples=30, seed=4)).to_json()
    assert a == b


def test_oracle_prefers_bfs(lamp, lamp_ball12):
    oracle = LengthOracle(lamp, lamp_ball12, 12, bfs_cap=10)
    assert oracle(parse_element("a@1", lamp.shape)) == (3, "bfs")
    assert oracle(parse_element("a@40", lamp.shape)) == (80 + 1, "formula")


def test_oracle_unchecked_without_formula(s5):
    from wreathdc.cayley import enumerate_ball
    ball = enumerate_ball(s5, 2)
    oracle = LengthOracle(s5, ball, 50, bfs_cap=100)
    assert oracle(parse_element("a@40", s5.shape)) == (None, None)
