import json

import pytest

from hgs.errors import SpecError
from hgs.paperlab import Report, quaternion_structure, run_scenario, run_scenarios, scenario_ids, scenarios, select


def test_ids_unique_and_sorted_output():
    ids = scenario_ids()
    assert len(ids) == len(set(ids))
    report = run_scenarios("4.3")
    assert [o.id for o in report.outcomes] == sorted(i for i in ids if i.startswith("4.3"))


def test_provenance_tags():
    assert {s.provenance for s in scenarios()} <= {"published", "derived", "trivial", "probe"}


def test_unknown_filter():
    with pytest.raises(SpecError):
        select("nonexistent")


@pytest.mark.parametrize("prefix", ["3.1", "3.2", "4.1", "4.3", "4.4-F20"])
def test_published_scenarios_pass(prefix):
    report = run_scenarios(prefix)
    assert report.failures == 0, [o.as_dict() for o in report.outcomes if o.status == "FAIL"]


def test_probes_are_reported_not_asserted():
    report = run_scenarios("3.2-probe")
    assert report.failures == 0
    assert all(o.status in ("PASS", "SKIPPED") for o in report.outcomes)
    skipped = [o for o in report.outcomes if o.status == "SKIPPED"]
    assert all("max-hol-order" in o.note for o in skipped)


def test_failing_scenario_is_reported():
    s = select("4.3-C6")[0]
    bad = type(s)(s.id, s.group, s.description, {"C6": 99}, s.provenance, s.compute)
    out = run_scenario(bad)
    assert out.status == "FAIL" and out.actual == {"C6": 1, "S3": 2}
    assert Report([out]).failures == 1


def test_report_formats_are_stable():
    a, b = run_scenarios("4.3-S3"), run_scenarios("4.3-S3")
    assert a.to_json() == b.to_json() and a.to_csv() == b.to_csv()
    assert isinstance(json.loads(a.to_json()), list)
    assert a.to_csv().splitlines()[0].startswith("id,status")
    assert a.to_table().splitlines()[-1].endswith("0 failed, 0 skipped")


def test_quaternion_structure():
    Q, N = quaternion_structure()
    assert Q.order == len(N) == 8
    assert run_scenario(select("3.2-Q8-generators")[0]).actual["type"] == "C2xC2xC2"
