import pytest

from fqrecip import make_field_spec, parse_poly

_ACCEPTANCE: list[tuple[str, bool, str]] = []


@pytest.fixture(scope="session")
def F3():
    return make_field_spec(3)


@pytest.fixture(scope="session")
def F5():
    return make_field_spec(5)


@pytest.fixture(scope="session")
def F7():
    return make_field_spec(7)


@pytest.fixture(scope="session")
def F9():
    return make_field_spec(3, 2, [1, 0, 1])


@pytest.fixture
def poly():
    return parse_poly


@pytest.fixture
def acceptance():
    """Record one pass/fail line per acceptance criterion."""

    def record(name: str, ok: bool, detail: str = ""):
        _ACCEPTANCE.append((name, ok, detail))
        print("%s: %s %s" % (name, "PASS" if ok else "FAIL", detail))
        assert ok, "%s failed: %s" % (name, detail)

    return record


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok, detail in _ACCEPTANCE:
        terminalreporter.write_line("%s %s  %s" % ("PASS" if ok else "FAIL", name, detail))
