import pytest
from hypothesis import settings

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


@pytest.fixture
def grid():
    return [(3, 2, 1), (4, 3, 1), (5, 4, 1), (2, 1, 3), (1, 1, 1)]
