import pytest

from johansson import fixtures
from johansson.diagram import HakenPresentation


@pytest.fixture(scope="session")
def diagrams():
    return {name: fixtures.load(name) for name in fixtures.names()}


@pytest.fixture
def star(diagrams):
    return diagrams["star_L31"]


def standard(k, *triplets):
    return HakenPresentation.standard(k, triplets)


_ACCEPTANCE: dict[int, str] = {}


@pytest.fixture
def criterion(request):
    """Record one acceptance line; the test still fails through its asserts."""

    def record(number: int, ok: bool, detail: str):
        line = f"criterion {number:>2}: {'PASS' if ok else 'FAIL'}  {detail}"
        _ACCEPTANCE[number] = line
        print(line)
        assert ok, line

    return record


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for number in sorted(_ACCEPTANCE):
            terminalreporter.write_line(_ACCEPTANCE[number])
