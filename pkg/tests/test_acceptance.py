"""One test per acceptance criterion; each prints its PASS/FAIL line."""

from __future__ import annotations

import pytest

from alcove.acceptance import CRITERIA, run_one

SLOW = {1, 3, 6, 8}


@pytest.mark.parametrize(
    "number",
    [pytest.param(n, marks=pytest.mark.slow, id=f"criterion-{n}") if n in SLOW else pytest.param(n, id=f"criterion-{n}") for n, _, _ in CRITERIA],
)
def test_criterion(number: int, capsys: pytest.CaptureFixture[str]) -> None:
    result = run_one(number)
    with capsys.disabled():
        print("\n" + result.line())
    assert result.passed, result.line()
