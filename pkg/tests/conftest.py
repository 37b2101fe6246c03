import time

from hypothesis import settings

# One reproducible profile for the whole suite: exact arithmetic makes
# per-example deadlines meaningless, and derandomization keeps failures
# replayable from the log alone.
settings.register_profile("suite", max_examples=50, deadline=None, derandomize=True)
settings.load_profile("suite")

SUITE_BUDGET_SECONDS = 300.0

_t0 = time.time()
_acceptance_lines: dict[int, str] = {}


def suite_elapsed() -> float:
    return time.time() - _t0


def record_acceptance(number: int, passed: bool, description: str) -> None:
    _acceptance_lines[number] = f"ACCEPTANCE {number}: {'PASS' if passed else 'FAIL'} - {description}"


def pytest_collection_modifyitems(config, items):
    # Run the acceptance gate last so its wall-clock criterion covers the
    # rest of the suite (sort is stable, everything else keeps file order).
    items.sort(key=lambda item: item.fspath.basename == "test_acceptance.py")


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if _acceptance_lines:
        terminalreporter.write_sep("-", "acceptance criteria")
        for number in sorted(_acceptance_lines):
            terminalreporter.write_line(_acceptance_lines[number])
    terminalreporter.write_line(
        f"suite wall time {suite_elapsed():.1f}s (budget {SUITE_BUDGET_SECONDS:.0f}s)")
