import pytest

_CRITERIA: dict[str, tuple[bool, str]] = {}


@pytest.fixture
def criterion():
    """Record one acceptance line: criterion(id, passed, detail); asserts ``passed``."""

    def record(cid: str, passed: bool, detail: str) -> None:
        _CRITERIA[cid] = (bool(passed), detail)
        assert passed, f"{cid}: {detail}"

    return record


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for cid in sorted(_CRITERIA, key=lambda c: int(c.split()[0][2:])):
        ok, detail = _CRITERIA[cid]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {cid}: {detail}")
