import random
from pathlib import Path

import pytest

from journalgen import random_journal

FIXTURES = Path(__file__).parent / "fixtures"
CORPUS_SEED = 20260808


@pytest.fixture(scope="session")
def fixture_path() -> Path:
    return FIXTURES / "machine_purchase.journal"


@pytest.fixture(scope="session")
def fixture_text(fixture_path) -> str:
    return fixture_path.read_text(encoding="utf-8")


@pytest.fixture(scope="session")
def contra_fixture_text() -> str:
    return (FIXTURES / "machine_purchase_contra.journal").read_text(encoding="utf-8")


@pytest.fixture(scope="session")
def journal_corpus():
    """1000 deterministic random valid journals shared by the fuzz suites."""
    rng = random.Random(CORPUS_SEED)
    return [random_journal(rng) for _ in range(1000)]
