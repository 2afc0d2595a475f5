import sys

import pytest

from rotabrace.catalog import builtin_catalog
from rotabrace.rota_baxter import enumerate_rota_baxter
from rotabrace.weak_brace import brace_from_operator

@pytest.fixture(scope="session")
def catalog():
    return {e.name: e for e in builtin_catalog()}


@pytest.fixture(scope="session")
def carriers(catalog):
    return {name: e.carrier for name, e in catalog.items()}


@pytest.fixture(scope="session")
def operator_braces(carriers):
    """(carrier name, S, R, brace) for every operator on every builtin."""
    out = []
    for name, S in carriers.items():
        for R in enumerate_rota_baxter(S):
            out.append((name, S, R, brace_from_operator(S, R)))
    return out


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    lines = getattr(module, "LINES", [])
    if lines:
        terminalreporter.section("acceptance")
        for line in lines:
            terminalreporter.write_line(line)
