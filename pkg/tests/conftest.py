import importlib.resources
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))


@pytest.fixture(scope="session")
def corpus_text() -> str:
    return (
        importlib.resources.files("missing_why")
        .joinpath("data/food_corpus.mwo")
        .read_text(encoding="utf-8")
    )


@pytest.fixture()
def corpus_session(corpus_text):
    from missing_why import service
    from missing_why.parsing import parse

    session = service.create_session(corpus_text)
    service.set_query(
        session, [parse("SubClassOf(:SpicyAnalogue :SpicyTarget)", kind="axiom")]
    )
    return session
