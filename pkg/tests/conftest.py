"""Shared fixtures."""

import logging
import math
import numpy as np
import pytest

from qrevsim.Options import Options
from qrevsim.coherent.ModelParams import ModelParams

LOGGERS = ("qrevsim", "runs", "checks")


@pytest.fixture(autouse=True)
def clean_state():
    """Fresh options and detached file loggers around every test."""
    Options().reset()
    yield
    Options().reset()
    for name in LOGGERS:
        logger = logging.getLogger(name)
        for handler in list(logger.handlers):
            logger.removeHandler(handler)
            handler.close()
        logger.setLevel(logging.NOTSET)
        logger.propagate = True


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


@pytest.fixture
def params():
    """N=2, epsilon=0.5: c0 = e^-2, Bob at eta = 0.5 so that c = e^-1."""
    return ModelParams(2, 0.5, bob_eta=0.5)


@pytest.fixture
def c0():
    return math.exp(-2.0)
