import os

import pytest

from wheelerlang.automaton import minimize
from wheelerlang.oracle import RandomDfaSpec, random_minimal_dfa
from wheelerlang.textio import read_dfa

DATA = os.path.join(os.path.dirname(__file__), "data")

CORPUS_SIZE = 1500
DENSITIES = (0.25, 0.4, 0.6, 0.85)
ALPHABET_SIZES = (1, 2, 3, 3, 4, 4)


def data_path(name):
    return os.path.join(DATA, name)


def load(name):
    return read_dfa(data_path(name))


def corpus_spec(i):
    """Deterministic spread over 1-4 letters, up to 7 states and four densities."""
    return RandomDfaSpec(
        seed=i,
        max_states=4 + i % 4,
        alphabet_size=ALPHABET_SIZES[(i // 4) % 6],
        transition_density=DENSITIES[(i // 24) % 4],
        final_probability=0.25 + 0.25 * ((i // 96) % 2),
    )


def build_corpus(size=CORPUS_SIZE):
    return [random_minimal_dfa(corpus_spec(i)) for i in range(size)]


@pytest.fixture(scope="session")
def corpus():
    return build_corpus()


@pytest.fixture(scope="session")
def sample():
    return load("six_state_wheeler.dfa")


@pytest.fixture(scope="session")
def sample_min(sample):
    return minimize(sample)


@pytest.fixture(scope="session")
def left():
    return minimize(load("not_uw_abc.dfa"))


@pytest.fixture(scope="session")
def right():
    return minimize(load("complement_uw_abc.dfa"))


@pytest.fixture(scope="session")
def gap():
    return load("two_label_gap.dfa")


@pytest.fixture(scope="session")
def ew_chain():
    return minimize(load("ew_chain.dfa"))
