"""The eight acceptance criteria at full size, seed 7.

Each test prints one line `criterion <name>: PASS|FAIL  <detail>` to the
terminal, so the lines survive pytest's output capture.  Set
UQTWIST_ACCEPTANCE=quick for the reduced suite.
"""

import os
import time

import pytest

from uqtwist.acceptance import CRITERIA, FULL, run_suite

SUITE = os.environ.get("UQTWIST_ACCEPTANCE", FULL)
SEED = 7


@pytest.mark.slow
@pytest.mark.parametrize("name", [name for name, _ in CRITERIA])
def test_criterion(name, capsys):
    start = time.perf_counter()
    (got, ok, detail), = run_suite(SUITE, SEED, only={name})
    elapsed = time.perf_counter() - start
    with capsys.disabled():
        print("\ncriterion %s: %s  %s  [%s suite, %.0fs]" % (got, "PASS" if ok else "FAIL", detail, SUITE, elapsed))
    assert ok, detail
