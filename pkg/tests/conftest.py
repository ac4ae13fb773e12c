"""Shared fixtures and strategies for the suite.

The expensive objects — full analyses of the four reference equations and
the oracle-corpus sweep — are computed once per session; several test
modules assert different properties of the same runs.
"""
from fractions import Fraction

import pytest
from hypothesis import settings
from hypothesis import strategies as st

from lieode import analyze, default_corpus

settings.register_profile("suite", max_examples=50, deadline=None,
                          derandomize=True)
settings.load_profile("suite")


def rationals(max_abs: int = 9, max_den: int = 4):
    """Small exact rationals; denominators stay tame to keep runs fast."""
    return st.builds(Fraction,
                     st.integers(-max_abs, max_abs),
                     st.integers(1, max_den))


def nonzero_rationals(max_abs: int = 9, max_den: int = 4):
    return rationals(max_abs, max_den).filter(bool)


# The four reference equations exercised throughout the suite:
# a maximal-symmetry input, two images of constant-coefficient linear
# equations under u = e^y, and a non-linearizable control.
REFERENCE_INPUTS = {
    "max2": "y'' = 0",
    "exp_image2": "y'' + (y')^2 = 0",
    "exp_image3": "y''' + 3*y'*y'' + (y')^3 - y' = 0",
    "negative2": "y'' = y^2",
}


@pytest.fixture(scope="session")
def reference_reports():
    return {key: analyze(text) for key, text in REFERENCE_INPUTS.items()}


@pytest.fixture(scope="session")
def corpus_reports():
    """One full analysis per oracle-corpus instance."""
    return [(inst, analyze(inst.ode)) for inst in default_corpus()]
