"""End-to-end verification suite: one test per criterion, each printing its
pass/fail line.  `pmlwave validate` runs the same checks from the CLI."""

import pytest

from pmlwave.verification import CRITERIA, run_check


@pytest.mark.parametrize("name", [name for name, _ in CRITERIA])
def test_criterion(name):
    result = run_check(name)
    status = "PASS" if result.passed else "FAIL"
    print(f"[{status}] {result.name}: {result.detail} ({result.seconds:.1f}s)")
    assert result.passed, f"{result.name}: {result.detail}"
