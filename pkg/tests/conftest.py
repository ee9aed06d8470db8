import pytest

from quartic_orders.census.fields import enumerate_quartics

FIELDS_300 = [117, 125, 144, 189, 225, 229, 256, 257, 272]


@pytest.fixture(scope="session")
def fields_300():
    return enumerate_quartics(300)
