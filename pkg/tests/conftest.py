import json
from pathlib import Path

import pytest

ORACLE_PATH = Path(__file__).parent / "oracles.json"


def load_oracles() -> dict:
    return json.loads(ORACLE_PATH.read_text())


@pytest.fixture(scope="session")
def oracles() -> dict:
    return load_oracles()
