import json

import numpy as np
import pytest

from cauchy_dual import registry
from cauchy_dual.errors import PreconditionError
from cauchy_dual.io import matrix_from_json
from cauchy_dual.linalg import ToleranceConfig
from cauchy_dual.registry import (
    RESULT_IDS,
    REGISTRY,
    Trial,
    UnknownTheoremError,
    register,
    run_all,
    run_theorem,
    search_counterexample,
)


def test_registry_covers_result_list():
    assert sorted(REGISTRY) == sorted(RESULT_IDS)
    assert len(RESULT_IDS) == len(set(RESULT_IDS))


def test_counterexample_theorem():
    rep = run_theorem("remark-counterexample", 1, seed=123)
    assert rep.verdict == "pass"
    by_name = {a["name"]: a for a in rep.cases[0]["assertions"]}
    assert by_name["gap_exceeds"]["value"] > 0.3


def test_shift_theorem_n50():
    rep = run_theorem("ex-1.8", 1, size_params={"N": 50})
    assert rep.verdict == "pass"
    assert rep.cases[0]["info"]["N"] == 50


def test_power_law_100_trials():
    rep = run_theorem("thm-2.18", 100, seed=5, size_params={"max_dim": 8, "max_power": 5})
    assert rep.verdict == "pass"
    assert rep.max_residual <= 1e-8


def test_report_schema():
    doc = json.loads(json.dumps(run_theorem("prop-2.1", 3, seed=1).as_dict()))
    for key in ("theorem_id", "trials", "seed", "tolerances", "max_residual", "verdict", "cases", "rng", "wall_time"):
        assert key in doc
    assert doc["tolerances"]["identity_tol"] == 1e-10
    assert len(doc["cases"]) == 3


def _strip_time(rep):
    d = rep.as_dict()
    d.pop("wall_time")
    return d


def test_reproducible_and_parallel_equal():
    a = run_theorem("lemma-2.17", 12, seed=9)
    b = run_theorem("lemma-2.17", 12, seed=9)
    c = run_theorem("lemma-2.17", 12, seed=9, jobs=4)
    assert _strip_time(a) == _strip_time(b) == _strip_time(c)
    assert _strip_time(a) != _strip_time(run_theorem("lemma-2.17", 12, seed=10))


def test_zero_trials():
    reports = run_all(trials=0)
    assert len(reports) == len(REGISTRY)
    assert all(r.verdict == "pass" and r.cases == [] for r in reports)


def test_corrupted_tolerance_fails_with_replayable_matrix():
    rep = run_theorem("prop-2.1", 3, seed=0, cfg=ToleranceConfig(identity_tol=1e-18))
    assert rep.verdict == "fail"
    case = next(c for c in rep.cases if not c["passed"])
    T = matrix_from_json(case["matrices"]["T"])
    assert T.ndim == 2


def test_unknown_theorem():
    with pytest.raises(UnknownTheoremError, match="thm-2.18"):
        run_theorem("thm-9.9", 1)


def test_unknown_size_key():
    with pytest.raises(ValueError, match="max_dim"):
        run_theorem("prop-2.1", 1, size_params={"dims": 3})


def test_env_seed(monkeypatch):
    monkeypatch.setenv(registry.SEED_ENV, "77")
    assert run_theorem("prop-2.1", 1).seed == 77


@pytest.fixture
def scratch_ids():
    added = []
    yield added
    for tid in added:
        REGISTRY.pop(tid, None)


def test_exceptions_become_failures(scratch_ids):
    @register("scratch-raise", "always raises", "none")
    def _boom(rng, size, cfg, keep):
        keep["T"] = np.eye(2)
        raise PreconditionError("nope")

    scratch_ids.append("scratch-raise")
    rep = run_theorem("scratch-raise", 2)
    assert rep.verdict == "fail"
    assert "PreconditionError" in rep.cases[0]["info"]["error"]
    assert "T" in rep.cases[0]["matrices"]


def test_hypothesis_not_met_verdict(scratch_ids):
    @register("scratch-hyp", "hypotheses never hold", "none")
    def _never(rng, size, cfg, keep):
        return Trial(hypothesis_met=False)

    scratch_ids.append("scratch-hyp")
    assert run_theorem("scratch-hyp", 3).verdict == "hypothesis-not-met"


def test_duplicate_registration_rejected():
    with pytest.raises(ValueError):
        register("thm-2.18", "", "")(lambda *a: Trial())


class TestSearch:
    def test_unrestricted_power_finds_violator(self):
        out = search_counterexample("dual-power", 200, seed=0, dim=2, rank=1)
        assert out["max_gap"] > 0.1 and out["violators"] > 0
        best = out["best"]
        T = matrix_from_json(best["matrices"]["T"])
        assert T.shape == (2, 2)
        assert best["classification"]["T"]["normal"] is False

    def test_normal_ep_has_no_violator(self):
        out = search_counterexample("dual-power", 200, seed=0, restrict="normal_ep")
        assert out["max_gap"] <= 1e-8 and out["violators"] == 0

    def test_range_matched_products(self):
        out = search_counterexample("dual-product", 200, seed=0, restrict="range_matched")
        assert out["max_gap"] <= 1e-9

    def test_unmatched_products_violate(self):
        assert search_counterexample("dual-product", 50, seed=0)["violators"] > 0

    def test_bad_property(self):
        with pytest.raises(ValueError):
            search_counterexample("dual-sum", 1)
        with pytest.raises(ValueError):
            search_counterexample("dual-power", 1, restrict="range_matched")
