import os

import hypothesis
import pytest

from origami import corpus
from origami.transducers import RunCaps

hypothesis.settings.register_profile("ci", deadline=None, max_examples=60)
hypothesis.settings.load_profile(os.getenv("HYPOTHESIS_PROFILE", "ci"))


@pytest.fixture(scope="session")
def caps():
    return RunCaps(12, 60)


@pytest.fixture(scope="session")
def small_caps():
    return RunCaps(6, 40)


@pytest.fixture(scope="session")
def t_id():
    return corpus.t_id()


@pytest.fixture(scope="session")
def t_rev():
    return corpus.t_rev()


@pytest.fixture(scope="session")
def t_one_two():
    return corpus.t_one_two()


@pytest.fixture(scope="session")
def t_two_one():
    return corpus.t_two_one()


@pytest.fixture(scope="session")
def t_first():
    return corpus.t_first()


@pytest.fixture(scope="session")
def t_last():
    return corpus.t_last()


@pytest.fixture(scope="session")
def t_fast():
    return corpus.t_fast()


@pytest.fixture(scope="session")
def t_slow():
    return corpus.t_slow()
