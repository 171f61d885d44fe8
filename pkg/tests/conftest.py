import pytest

# criterion number -> (status, description); filled by test_acceptance
ACCEPTANCE: dict[int, tuple[str, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(ACCEPTANCE):
        status, desc = ACCEPTANCE[num]
        terminalreporter.write_line(f"criterion {num:>2}: {status}  {desc}")


@pytest.fixture
def record_criterion():
    def record(num: int, desc: str, ok: bool):
        ACCEPTANCE[num] = ("PASS" if ok else "FAIL", desc)
        print(f"criterion {num}: {'PASS' if ok else 'FAIL'}  {desc}")
        assert ok, f"criterion {num} failed: {desc}"
    return record
