import os
import sys

import pytest
from prefect.testing.utilities import prefect_test_harness

sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))


@pytest.fixture(scope="session")
def prefect_harness():
    """Throwaway Prefect database for flow tests."""
    with prefect_test_harness():
        yield
