import pytest

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def criterion():
    """Collects sub-checks for one acceptance criterion and reports them."""

    class Recorder:
        def __init__(self):
            self.checks = []

        def check(self, name, ok, detail=""):
            self.checks.append((name, bool(ok), detail))

        def finish(self, number, title):
            failed = [c for c in self.checks if not c[1]]
            status = "PASS" if not failed else "FAIL"
            shown = failed if failed else self.checks
            detail = "; ".join(f"{n} {d}".strip() for n, _, d in shown)
            line = f"criterion {number} [{status}] {title}: {len(self.checks) - len(failed)}/{len(self.checks)} checks ({detail})"
            print(line)
            ACCEPTANCE_LINES.append(line)
            assert not failed, line

    return Recorder()


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1])):
            terminalreporter.write_line(line)
