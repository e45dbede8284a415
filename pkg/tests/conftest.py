import pytest

ACCEPTANCE: dict = {}


@pytest.fixture
def criterion(request):
    """Record the outcome of one acceptance criterion under the test's id prefix (A1, A2, ...)."""
    name = request.node.name.split("_")[1].upper()
    ACCEPTANCE[name] = ("FAIL", "did not finish")

    def done(passed: bool, detail: str):
        ACCEPTANCE[name] = ("PASS" if passed else "FAIL", detail)
        print(f"{name} {'PASS' if passed else 'FAIL'}: {detail}")
        assert passed, detail

    return done


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(ACCEPTANCE, key=lambda s: int(s[1:])):
        status, detail = ACCEPTANCE[name]
        terminalreporter.write_line(f"{name} {status}: {detail}")
