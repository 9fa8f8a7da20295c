"""The eleven acceptance criteria, one test each.

Each test prints a single ``criterion N: PASS|FAIL`` line.  The lines are
repeated in the pytest terminal summary, and ``python tests/test_acceptance.py``
prints them without pytest.
"""

import time

import pytest

from qwreath.acceptance import CRITERIA

LINES: dict = {}


@pytest.mark.parametrize("number", sorted(CRITERIA))
def test_criterion(number):
    t = time.time()
    res = CRITERIA[number]()
    res.seconds = time.time() - t
    LINES[number] = res.line()
    print(res.line())
    assert res.ok, f"failed parts: {res.failed_parts()}"


if __name__ == "__main__":
    import sys

    from qwreath.acceptance import run

    sys.exit(0 if all(r.ok for r in run(echo=print)) else 1)
