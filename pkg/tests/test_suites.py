import json

import pytest

from nilcap.suites import SUITES, SuiteConfig, run_suite


# These run at full scale in the acceptance tests.
IN_ACCEPTANCE = {"center-2", "center-3", "center-2-3special", "kummer", "maxs", "struik-lemma2", "exponent-lemmas"}


@pytest.mark.parametrize("name", sorted(set(SUITES) - IN_ACCEPTANCE))
def test_suite_green(name):
    rep = run_suite(name, SuiteConfig(seed=7, samples=200))
    assert rep.cases > 0
    assert rep.failures == []


def test_unknown_suite():
    with pytest.raises(KeyError):
        run_suite("nope")


def test_report_json_is_stable():
    a = run_suite("maxs", SuiteConfig(seed=3))
    b = run_suite("maxs", SuiteConfig(seed=3))
    assert json.dumps(a.to_json()) == json.dumps(b.to_json())
    assert "wall_time" not in a.to_json()
    assert "wall_time" in a.to_json(timing=True)
    assert a.to_json()["seed"] == 3
