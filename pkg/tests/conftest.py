import pytest
from hypothesis import settings

from octoder.octonion import OctType, build_octonion
from octoder.scalar import QQ, Field

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

F101 = Field(101)
FIELDS = [QQ, F101]


@pytest.fixture(params=FIELDS, ids=str)
def field(request):
    return request.param


@pytest.fixture(params=[OctType.I, OctType.II], ids=lambda t: f"type{t.value}")
def oct_type(request):
    return request.param


@pytest.fixture
def octonions(field, oct_type):
    return build_octonion(field, oct_type)


# acceptance lines are collected here and echoed at the end of the run
ACCEPTANCE: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE:
            terminalreporter.write_line(line)
