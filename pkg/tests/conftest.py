import random

import pytest

_ACCEPTANCE: list[str] = []


@pytest.fixture
def rng():
    return random.Random(1234)


@pytest.fixture
def record_criterion():
    """Log one PASS/FAIL line per acceptance criterion; printed at session end."""

    def record(number: int, title: str, ok: bool, seconds: float, limit: float | None = None, detail: str = ""):
        in_time = limit is None or seconds < limit
        verdict = "PASS" if ok and in_time else "FAIL"
        budget = f" (limit {limit:g} s)" if limit is not None else ""
        line = f"[{verdict}] criterion {number}: {title}: {seconds:.2f} s{budget}"
        if detail:
            line += f"; {detail}"
        _ACCEPTANCE.append(line)
        print(line)
        return ok and in_time

    return record


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_ACCEPTANCE, key=lambda s: int(s.split("criterion ")[1].split(":")[0])):
            terminalreporter.write_line(line)
