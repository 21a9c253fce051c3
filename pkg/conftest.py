"""
Shared pytest setup for sturmdet
"""
import pytest

from config import configure_logging


@pytest.fixture(autouse=True, scope="session")
def quiet_logging():
    """Send library logs through stdlib at WARNING so stdout stays clean."""
    configure_logging("WARNING", None)
