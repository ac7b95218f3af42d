from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

from satnorm import AlgebraMorphism, PresentedAlgebra, Sequence, load_corpus

settings.register_profile(
    "satnorm",
    deadline=None,
    max_examples=40,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large],
)
settings.load_profile("satnorm")

CORPUS = Path(__file__).resolve().parents[1] / "corpus"


def make_sequence(a_vars, a_rels, b_vars, b_rels, images, name="seq"):
    """k -> A -> B over Q from text."""
    k = PresentedAlgebra.base_field()
    A = PresentedAlgebra.from_strings("A", a_vars, a_rels)
    B = PresentedAlgebra.from_strings("B", b_vars, b_rels)
    tau = AlgebraMorphism.from_strings(k, A, {}, "tau")
    g = AlgebraMorphism.from_strings(A, B, images, "g")
    return Sequence(k, A, B, tau, g, name)


def cusp():
    return make_sequence(["a", "b"], ["a^3 - b^2"], ["t"], [], {"a": "t^2", "b": "t^3"}, "cusp")


def node():
    return make_sequence(
        ["a", "b"], ["b^2 - a^3 - a^2"], ["t"], [], {"a": "t^2 - 1", "b": "t^3 - t"}, "node"
    )


@pytest.fixture(scope="session")
def corpus_dir():
    return CORPUS


@pytest.fixture(scope="session")
def docs():
    return {p.stem: load_corpus(p) for p in sorted(CORPUS.glob("*.json"))}


@pytest.fixture(scope="session")
def cusp_seq():
    return cusp()


@pytest.fixture(scope="session")
def node_seq():
    return node()
