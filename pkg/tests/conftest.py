from pathlib import Path

import pytest

from linkforge.diagram import parse_pd

FIXTURES = Path(__file__).resolve().parent.parent / "src" / "linkforge" / "fixtures"
PD_FIXTURES = sorted(p.name for p in FIXTURES.glob("*.pd"))


def load(name):
    return parse_pd((FIXTURES / name).read_text())


@pytest.fixture
def fixture_path():
    return lambda name: FIXTURES / name
