import logging

import numpy as np
import pytest


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def status_records(caplog):
    """Captures status_logger records even after setup_loggers disabled propagation."""
    logger = logging.getLogger("status_logger")
    logger.addHandler(caplog.handler)
    caplog.handler.setLevel(logging.DEBUG)
    yield caplog
    logger.removeHandler(caplog.handler)
