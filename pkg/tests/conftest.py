"""Shared fixtures: built-in engine, fuels, flight conditions and baseline cycles."""

import pytest

from app.domain.reference_data import GENX_1B70, HYDROGEN, JP10, NATURAL_GAS, ON_DESIGN, TAKE_OFF
from app.domain.services.cycle import run_cycle
from app.domain.services.exergy import audit_cycle


@pytest.fixture(scope="session")
def engine():
    return GENX_1B70


@pytest.fixture(scope="session")
def jp10():
    return JP10


@pytest.fixture(scope="session")
def hydrogen():
    return HYDROGEN


@pytest.fixture(scope="session")
def natural_gas():
    return NATURAL_GAS


@pytest.fixture(scope="session")
def take_off():
    return TAKE_OFF


@pytest.fixture(scope="session")
def on_design():
    return ON_DESIGN


@pytest.fixture(scope="session")
def take_off_jp10():
    return run_cycle(GENX_1B70, TAKE_OFF, JP10)


@pytest.fixture(scope="session")
def on_design_jp10():
    return run_cycle(GENX_1B70, ON_DESIGN, JP10)


@pytest.fixture(scope="session")
def on_design_hydrogen():
    return run_cycle(GENX_1B70, ON_DESIGN, HYDROGEN)


@pytest.fixture(scope="session")
def on_design_jp10_exergy(on_design_jp10):
    return audit_cycle(on_design_jp10)
