"""One line per acceptance criterion, with its time limit.

Run directly (``python tests/test_acceptance.py``) for just the summary.
"""
import sys

import pytest

from fusion_obstruct.suite import acceptance_checks, timed

CHECKS = acceptance_checks(seed=0)


@pytest.mark.parametrize("name,limit,fn", CHECKS, ids=[c[0].split()[0] for c in CHECKS])
def test_criterion(name, limit, fn, capsys):
    result = timed(name, limit, fn)
    with capsys.disabled():
        print("\n" + result.line())
    assert result.passed, result.detail
    assert result.within_time, f"{result.seconds:.2f} s exceeds {limit} s"


def test_suite_command_exit_zero(capsys):
    from fusion_obstruct.cli import main

    code = main(["suite", "all", "--format", "json"])
    out = capsys.readouterr().out
    assert code == 0, out


if __name__ == "__main__":
    failed = 0
    for name, limit, fn in CHECKS:
        r = timed(name, limit, fn)
        print(r.line())
        failed += not r.ok
    sys.exit(1 if failed else 0)
