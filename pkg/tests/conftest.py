"""Shared program texts and the acceptance summary hook."""

import pytest

from nicecover.machine import parse_program

# Counts register 0 down to zero: halts at step 3v + 2 for input v.
COUNTDOWN_TEXT = """\
# drain register 0, then stop
loop: JZ 0 end
      DEC 0
      GOTO loop
end:  HALT
"""

# Never halts, for any input.
LOOPER_TEXT = """\
loop: GOTO loop
"""

# Halts exactly when the input is not a multiple of 3.
MOD3_TEXT = """\
top:  JZ 0 spin
      DEC 0
      JZ 0 done
      DEC 0
      JZ 0 done
      DEC 0
      GOTO top
spin: GOTO spin
done: HALT
"""


@pytest.fixture
def countdown():
    return parse_program(COUNTDOWN_TEXT)


@pytest.fixture
def looper():
    return parse_program(LOOPER_TEXT)


@pytest.fixture
def mod3():
    return parse_program(MOD3_TEXT)


@pytest.fixture
def countdown_file(tmp_path):
    path = tmp_path / "countdown.cm"
    path.write_text(COUNTDOWN_TEXT)
    return path


@pytest.fixture
def looper_file(tmp_path):
    path = tmp_path / "looper.cm"
    path.write_text(LOOPER_TEXT)
    return path


# Filled in by the acceptance module; echoed after the run so the verdict
# lines survive pytest's output capture.
ACCEPTANCE_RESULTS: list[tuple[str, bool]] = []


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok in ACCEPTANCE_RESULTS:
        terminalreporter.write_line(f"ACCEPTANCE {name}: {'PASS' if ok else 'FAIL'}")
