"""Top-level acceptance run: one visible pass/fail line per criterion.

Each criterion is an independent check routine; the suite asserts every
one of them and prints its verdict line even in quiet mode, so a test
run double-functions as the signed scorecard.
"""
import pytest

from bregecon.verify import ACCEPTANCE_CHECKS, EXTRA_CHECKS, run_all


@pytest.mark.parametrize(
    "check", ACCEPTANCE_CHECKS, ids=lambda c: c.__name__.replace("check_", "")
)
def test_acceptance_criterion(check, capsys):
    result = check(seed=42)
    line = f"{'PASS' if result.passed else 'FAIL'} {result.name}: {result.detail}"
    with capsys.disabled():
        print(line)
    assert result.passed, line


def test_supplementary_checks_all_pass():
    for check in EXTRA_CHECKS:
        result = check(seed=42)
        assert result.passed, f"{result.name}: {result.detail}"


def test_run_all_covers_every_check():
    results = run_all(seed=42)
    assert len(results) == len(ACCEPTANCE_CHECKS) + len(EXTRA_CHECKS)
    assert all(r.passed for r in results)
