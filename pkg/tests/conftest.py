import pytest

_criteria: list[tuple[str, str, str]] = []


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.outcome != "passed"):
        return
    props = dict(report.user_properties)
    if "criterion" in props:
        _criteria.append((props["criterion"], report.outcome, props.get("detail", "")))


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for name, outcome, detail in sorted(_criteria, key=lambda c: int(c[0].split()[0])):
        line = f"criterion {name}: {'PASS' if outcome == 'passed' else 'FAIL'}"
        terminalreporter.write_line(line + (f"  [{detail}]" if detail else ""))


@pytest.fixture
def checks(record_property):
    """Collects named sub-checks and fails once at the end with every miss listed."""

    class Checks:
        def __init__(self):
            self.failed: list[str] = []
            self.passed: list[str] = []

        def name(self, label: str):
            record_property("criterion", label)

        def __call__(self, label: str, ok: bool, info: str = ""):
            (self.passed if ok else self.failed).append(label + (f" ({info})" if info and not ok else ""))

        def finish(self):
            record_property("detail", f"{len(self.passed)} ok, {len(self.failed)} failed")
            if self.failed:
                pytest.fail("failed sub-checks:\n  " + "\n  ".join(self.failed), pytrace=False)

    return Checks()
