import sys
import time
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

# criterion number -> (passed, detail)
ACCEPTANCE: dict[int, tuple[bool, str]] = {}


class Criterion:
    """Context manager that records the outcome of one acceptance criterion."""

    def __init__(self, number: int, title: str, budget: float | None = None):
        self.number, self.title, self.budget = number, title, budget
        self.notes: list[str] = []

    def note(self, text: str) -> None:
        self.notes.append(text)

    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, exc_type, exc, tb):
        elapsed = time.perf_counter() - self.start
        ok = exc_type is None
        if ok and self.budget is not None and elapsed > self.budget:
            ok = False
            self.notes.append(f"over budget {self.budget:.0f}s")
        detail = "; ".join([*self.notes, f"{elapsed:.1f}s"])
        if exc is not None:
            detail = f"{type(exc).__name__}: {str(exc).splitlines()[0] if str(exc) else ''}; {detail}"
        ACCEPTANCE[self.number] = (ok, f"{self.title}: {detail}")
        if ok is False and exc_type is None:
            pytest.fail(f"criterion {self.number} exceeded its time budget")
        return False


@pytest.fixture
def criterion():
    return Criterion


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[k]
        terminalreporter.write_line(f"criterion {k:2d} {'PASS' if ok else 'FAIL'}  {detail}")
