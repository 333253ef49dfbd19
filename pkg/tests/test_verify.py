from multifac.verify import (
    VERIFY_CSV_HEADER,
    lower_bound_checks,
    property_checks,
    run_verify,
    scan_checks,
    verify_csv_rows,
    voting_checks,
)
from conftest import random_instance


def test_property_checks_all_pass_on_random_instances():
    for seed in (0, 5, 9):
        inst = random_instance(seed)
        records = property_checks(inst, label=f"seed={seed}")
        assert records
        bad = [r for r in records if not r.passed]
        assert not bad, bad


def test_voting_checks_pass():
    inst = random_instance(3, weight_cap=6)
    records = voting_checks(inst, seed=3, orders=2)
    assert all(r.passed for r in records)
    names = {r.check for r in records}
    assert any(n.startswith("distortion") for n in names)
    assert any(n.startswith("veto-matching") for n in names)


def test_lower_bound_checks_pass():
    records = lower_bound_checks()
    assert all(r.passed for r in records), [r for r in records if not r.passed]
    # one best-ratio record per fixed family configuration
    best = [r for r in records if r.check == "family-best-simultaneous"]
    assert len(best) == 6


def test_scan_checks_pass():
    assert all(r.passed for r in scan_checks(resolution=10 ** 5))


def test_run_verify_deterministic():
    a = run_verify(trials=3, seed=11, suite="random")
    b = run_verify(trials=3, seed=11, suite="random")
    assert a.ok and b.ok
    assert [r for r in a.records] == [r for r in b.records]
    rows = list(verify_csv_rows(a, "random"))
    assert rows and all(len(r) == len(VERIFY_CSV_HEADER) for r in rows)


def test_summary_counts():
    report = run_verify(trials=2, seed=1, suite="random")
    for name, runs, passes, worst in report.summary():
        assert passes == runs
        assert isinstance(worst, float)
