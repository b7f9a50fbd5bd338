# core/tests/conftest.py

import pytest

from core import catalog
from core.tests.helpers import CATALOG_ENTRIES, entry_id


@pytest.fixture(params=CATALOG_ENTRIES, ids=entry_id)
def catalog_entry(request):
    name, parameters = request.param
    return catalog.make_family(name, **parameters)


@pytest.fixture
def gumbel():
    return catalog.make_family('gumbel')


@pytest.fixture
def logistic():
    return catalog.make_family('logistic')


@pytest.fixture
def rayleigh():
    return catalog.make_family('rayleigh')
