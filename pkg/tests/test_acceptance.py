"""Acceptance criteria, each run at its time limit.

Run directly (``python3 tests/test_acceptance.py``) or through pytest.  Both
print one PASS/FAIL line per criterion.
"""
import sys

import pytest

from fraccat.config import RunConfig
from fraccat.suite import CRITERIA, run_suite

CFG = RunConfig("suite")
LIMITS = {c.key: c.limit for c in CRITERIA}
REPRODUCIBILITY = 8


def verdict(key, ok, detail=""):
    return f"criterion {key}: {'PASS' if ok else 'FAIL'}" + (f" ({detail})" if detail else "")


@pytest.fixture(scope="module")
def first_run():
    """One full suite run; each criterion is timed separately."""
    return run_suite(CFG)


@pytest.fixture
def say(capsys):
    def emit(line):
        with capsys.disabled():
            print(line)
    return emit


@pytest.mark.parametrize("key", sorted(LIMITS))
def test_criterion(first_run, say, key):
    report, timings = first_run
    sec = report.sections[key - 1]
    dt, limit = timings[key], LIMITS[key]
    ok = sec.passed and dt < limit
    say(verdict(key, ok, f"{dt:.1f} s of {limit:.0f} s"))
    assert sec.passed, "\n".join(sec.lines)
    assert dt < limit


def test_same_seed_gives_identical_report(first_run, say):
    report, _ = first_run
    again, _ = run_suite(CFG)
    a, b = report.render().encode(), again.render().encode()
    say(verdict(REPRODUCIBILITY, a == b, f"{len(a)} bytes"))
    assert a == b


def main() -> int:
    report, timings = run_suite(CFG)
    ok_all = True
    for c, sec in zip(CRITERIA, report.sections):
        ok = sec.passed and timings[c.key] < c.limit
        ok_all &= ok
        print(verdict(c.key, ok, f"{timings[c.key]:.1f} s of {c.limit:.0f} s"), flush=True)
    again, _ = run_suite(CFG)
    same = report.render() == again.render()
    print(verdict(REPRODUCIBILITY, same))
    return 0 if ok_all and same else 1


if __name__ == "__main__":
    sys.exit(main())
