import pytest

_CRITERIA: dict[int, tuple[str, bool, str]] = {}


class _Recorder:
    def __call__(self, number: int, name: str, ok: bool, detail: str = "") -> bool:
        _CRITERIA[number] = (name, ok, detail)
        print(f"criterion {number} {name}: {'PASS' if ok else 'FAIL'} {detail}".rstrip())
        return ok


@pytest.fixture(scope="session")
def criterion():
    return _Recorder()


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_CRITERIA):
        name, ok, detail = _CRITERIA[number]
        terminalreporter.write_line(f"criterion {number:>2} {name}: {'PASS' if ok else 'FAIL'}  {detail}".rstrip())
