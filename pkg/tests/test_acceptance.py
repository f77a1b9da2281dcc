"""Acceptance suite: every criterion at its stated tolerance and time budget.

Run ``pytest tests/test_acceptance.py -s`` (or this file as a script) to see
one PASS/FAIL line per criterion; the lines are also echoed in the pytest
terminal summary.
"""

import pytest

from relbgg import acceptance

RESULTS = []


@pytest.fixture(scope="module")
def results():
    if not RESULTS:
        RESULTS.extend(acceptance.run_all())
        for r in RESULTS:
            print(r.line(timings=True))
    return {r.number: r for r in RESULTS}


@pytest.mark.parametrize("number", range(1, 12))
def test_criterion(results, number):
    r = results[number]
    assert r.passed, r.detail
    assert r.seconds < r.budget, f"{r.seconds:.1f}s exceeds the {r.budget:g}s budget"


def test_sign_flip_is_caught():
    from relbgg import homology as hom

    hom.MUTATIONS.add("dstar-sign")
    hom.clear_cache()
    try:
        failed = {r.number for r in acceptance.run_core() if not r.passed}
    finally:
        hom.MUTATIONS.clear()
        hom.clear_cache()
    assert {1, 2} <= failed


if __name__ == "__main__":
    for r in acceptance.run_all():
        print(r.line(timings=True))
