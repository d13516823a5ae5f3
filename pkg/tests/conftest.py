import pytest
from unittest.mock import Mock

from src.domain.collation import Collation
from src.domain.estimation import HyperParams
from src.domain.pairs import PairInstance
from src.domain.ports import BaseRepository
from src.domain.simulation import ConfusionMatrix, ScribeConfig, generate_stemma, simulate_tradition
from src.domain.stemma import Stemma

LEXICON = frozenset(
    "a the of and to in all human beings are born free equal dignity rights they endowed with "
    "reason conscience should act towards one another spirit brotherhood".split()
)

ROOT_TEXT = (
    "All human beings are born free and equal in dignity and rights. They are endowed with "
    "reason and conscience and should act towards one another in a spirit of brotherhood."
).split()


@pytest.fixture
def small_stemma() -> Stemma:
    #        r
    #      /   \
    #     a     b
    #    / \    |
    #   c   d   e
    return Stemma.from_edges([("r", "a"), ("r", "b"), ("a", "c"), ("a", "d"), ("b", "e")])


@pytest.fixture
def path_stemma() -> Stemma:
    return Stemma.from_edges([("p0", "p1"), ("p1", "p2"), ("p2", "p3"), ("p3", "p4")])


@pytest.fixture
def small_collation() -> Collation:
    return Collation(
        witnesses=("r", "a", "b", "c", "d", "e"),
        rows=(
            ("in", "in", "in", "in", "in", "in"),
            ("the", "the", "ye", "the", "ye", "ye"),
            ("beginning", "beginning", "begining", "beginning", "-", "begining"),
            ("was", "was", "was", "is", "was", "was"),
        ),
    )


@pytest.fixture
def lexicon() -> frozenset[str]:
    return LEXICON


@pytest.fixture
def root_text() -> list[str]:
    return list(ROOT_TEXT)


@pytest.fixture
def scribe_config(lexicon) -> ScribeConfig:
    return ScribeConfig(
        error_rate=0.05,
        confusion=ConfusionMatrix.uniform_within_class(0.05),
        lexicon=lexicon,
        correction_enabled=True,
        seed=11,
    )


@pytest.fixture
def simulated(scribe_config, root_text):
    stemma = generate_stemma(8, 3, seed=3)
    return simulate_tradition(stemma, root_text * 4, scribe_config)


@pytest.fixture
def tiny_hyperparams() -> HyperParams:
    return HyperParams(
        embed_dim=4,
        hidden_dim=8,
        batch_size=4,
        train_steps=20,
        checkpoint_every=10,
        precision="float64",
        seed=5,
    )


@pytest.fixture
def toy_instances() -> list[PairInstance]:
    """Twenty pairs whose distance is one plus the number of DIFF tokens in the first three places."""
    instances = []
    for k in range(20):
        bits = [(k >> shift) & 1 for shift in range(6)]
        source = tuple("DIFF" if bit else "SAME" for bit in bits)
        instances.append(
            PairInstance(a=f"x{k:02d}", b=f"y{k:02d}", source=source, target=str(1 + sum(bits[:3])))
        )
    return instances


@pytest.fixture
def mock_repository() -> Mock:
    mock = Mock(spec=BaseRepository)
    mock.get.return_value = None
    return mock
