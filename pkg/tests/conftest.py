import json
from pathlib import Path

import pytest

from kgforge.ontology import IngredientStore, load_rules, load_vocabulary

SEED = Path(__file__).resolve().parent.parent / "src" / "kgforge" / "seed"
FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"
DATA = Path(__file__).resolve().parent / "data"

BASE = "https://kgforge.example.org"


@pytest.fixture(scope="session")
def vocab():
    return load_vocabulary(SEED / "vocabulary.ttl", base=BASE)


@pytest.fixture(scope="session")
def ingredient_db():
    return IngredientStore.from_json(SEED / "ingredients.json", base=BASE)


@pytest.fixture(scope="session")
def rule_set():
    return load_rules(SEED / "rules.yaml", base=BASE)


@pytest.fixture(scope="session")
def units(vocab):
    return vocab.unit_table()


def load_json(path):
    return json.loads(Path(path).read_text(encoding="utf-8"))
