import json

import pytest

from graph_homotopy import verify
from graph_homotopy.errors import InvalidParameterError
from graph_homotopy.verify import SUITES, TSV_HEADER, reports_to_tsv, run_suite


@pytest.mark.parametrize("name", ["pleat-coproduct", "hom-loop", "groupoid-axioms"])
def test_suites_without_acceptance_counterpart_pass_at_default_size(name):
    report = run_suite(name)
    assert report.passed and report.budget_exhausted == 0
    assert report.instances > 0 and report.checks >= report.instances
    assert report.max_vertices == SUITES[name].default_max_vertices


@pytest.mark.parametrize("name", sorted(SUITES))
def test_every_suite_passes_on_small_graphs(name):
    report = run_suite(name, max_vertices=2)
    assert report.passed, report.failures[:3]
    assert report.checks > 0


def test_unknown_suite_and_bad_bound():
    with pytest.raises(InvalidParameterError):
        run_suite("nope")
    with pytest.raises(InvalidParameterError):
        run_suite("spider", max_vertices=0)


def test_seed_is_recorded_and_sampling_is_reproducible():
    a = run_suite("interchange", max_vertices=2, seed=1)
    b = run_suite("interchange", max_vertices=2, seed=1)
    assert a.seed == 1
    assert (a.instances, a.checks) == (b.instances, b.checks)


def test_workers_give_identical_reports():
    one = run_suite("duplicate-vertex", max_vertices=3)
    two = run_suite("duplicate-vertex", max_vertices=3, workers=2)
    strip = lambda r: {k: v for k, v in r.to_dict().items() if k != "wall_time"}
    assert strip(one) == strip(two)


def test_suite_detects_a_broken_implementation(monkeypatch):
    monkeypatch.setattr(verify, "spider_decompose", lambda f1, f2: [f1, f2])
    report = run_suite("spider", max_vertices=2)
    assert not report.passed
    keys = [f["instance"] for f in report.failures]
    assert keys == sorted(keys)
    assert all("reason" in f for f in report.failures)


def test_report_serialisation():
    reports = [run_suite("spider", max_vertices=2), run_suite("hom-loop", max_vertices=2)]
    tsv = reports_to_tsv(reports).splitlines()
    assert tsv[0].split("\t") == TSV_HEADER
    assert [row.split("\t")[0] for row in tsv[1:]] == ["spider", "hom-loop"]
    doc = json.loads(reports[0].to_json())
    assert doc["suite"] == "spider" and doc["failures"] == []
    assert set(doc) == {"suite", "instances", "checks", "failures", "budget_exhausted",
                        "wall_time", "seed", "max_vertices"}
