"""Runs every acceptance criterion once at its stated tolerance and time budget.

One PASS/FAIL line per criterion is printed in the terminal summary.  The
order-2 signed max-cut claim is known to be false (a single edge of weight
-1 has cut value 0 and exact order-2 bound 0, not 1); that sub-check is kept
as a strict xfail so it is still run and reported, and would flag loudly if
it ever started to pass.
"""
import pytest

import conftest
from handelman_rank.reproduce import CRITERIA, run_criteria

KNOWN_FALSE = {14: {"order2_abs_sum"}}


@pytest.fixture(scope="module")
def results():
    def report(res):
        line = res.line()
        conftest.ACCEPTANCE_LINES.append(line)
        print(line)
    return {r.number: r for r in run_criteria(report=report)}


@pytest.mark.parametrize("number", sorted(CRITERIA))
def test_criterion(results, number):
    res = results[number]
    skip = KNOWN_FALSE.get(number, set())
    if skip:
        failed = [k for k, ok in res.parts.items() if not ok and k not in skip]
        assert res.parts and not failed, res.line()
        if res.limit is not None:
            assert res.seconds <= res.limit, res.line()
    else:
        assert res.passed, res.line()


@pytest.mark.xfail(strict=True, reason="order-2 max-cut bound is the positive-part sum, not the absolute sum")
def test_signed_order_two_absolute_sum(results):
    assert results[14].parts["order2_abs_sum"]


def test_audit_saw_no_bad_solutions(results):
    assert results[15].passed and "re-substituted" in results[15].detail
