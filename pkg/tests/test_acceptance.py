"""Acceptance criteria, one test each.

Each test records a PASS/FAIL line; ``conftest.py`` prints them at the end of
the pytest run.  Running this file directly prints the same lines.
"""

import pytest

from surfsec import selftest

RESULTS: dict[int, str] = {}

TITLES = {
    1: "oracle equivalence",
    2: "quaternion application",
    3: "homomorphism counts with class constraints",
    4: "product-bundle lemma",
    5: "existence criterion consistency",
    6: "state sum",
    7: "G-center",
    8: "foundation suites and full selftest",
}


def record(n: int, result: selftest.CheckResult) -> selftest.CheckResult:
    status = "PASS" if result.ok else "FAIL"
    detail = f"{result.instances} instances, {result.seconds:.1f}s"
    if result.failures:
        detail += f"; {len(result.failures)} failures, first: {result.failures[0]}"
    RESULTS[n] = f"criterion {n} ({TITLES[n]}): {status} [{detail}]"
    return result


def test_criterion_1_oracle_equivalence():
    r = record(1, selftest.check_oracle_equivalence())
    assert r.instances >= 500
    assert r.ok, r.failures[:5]


def test_criterion_2_quaternion_values():
    r = record(2, selftest.check_q8_survey())
    assert r.details["values"] == [8, 16, 24, 40]
    assert r.ok, r.failures


def test_criterion_3_frobenius_mednykh():
    r = record(3, selftest.check_frobenius_mednykh())
    assert r.ok, r.failures[:5]


def test_criterion_4_direct_product_lemma():
    r = record(4, selftest.check_direct_product())
    assert r.ok, r.failures[:5]


def test_criterion_5_existence():
    r = record(5, selftest.check_existence())
    assert r.ok, r.failures[:5]


def test_criterion_6_state_sum():
    r = record(6, selftest.check_state_sum())
    assert r.ok, r.failures[:5]


def test_criterion_7_g_center():
    r = record(7, selftest.check_g_center(samples=100))
    assert r.ok, r.failures[:5]


def test_criterion_8_foundations_and_selftest_time():
    results = selftest.run_selftest()
    total = selftest.total_seconds(results)
    foundations = next(r for r in results if r.name == "exact field and group foundations")
    failures = [f"{r.name}: {r.failures[0]}" for r in results if not r.ok]
    if total > 300:
        failures.append(f"selftest took {total:.1f}s, limit 300s")
    combined = selftest.CheckResult(
        "foundations", not failures, sum(r.instances for r in results), total, failures
    )
    record(8, combined)
    assert foundations.ok, foundations.failures[:5]
    assert combined.ok, failures


if __name__ == "__main__":
    import sys

    code = pytest.main([__file__, "-q"])
    for n in sorted(RESULTS):
        print(RESULTS[n])
    sys.exit(code)
