import itertools
import sys
from pathlib import Path

import pytest
from hypothesis import settings

ROOT = Path(__file__).resolve().parent.parent
if str(ROOT) not in sys.path:
    sys.path.insert(0, str(ROOT))

from services.word_model import Word, normalize  # noqa: E402

settings.register_profile("repo", derandomize=True, deadline=None)
settings.load_profile("repo")

GOLDEN_DIR = Path(__file__).resolve().parent / "golden"


def encode(text, sigma=None):
    """Word over a=1, b=2, ... so that hand-written examples keep their letters"""
    symbols = tuple(ord(char) - ord("a") + 1 for char in text)
    return Word(symbols, sigma or max(symbols, default=0))


def words_upto(length, sigma):
    for n in range(1, length + 1):
        for symbols in itertools.product(range(1, sigma + 1), repeat=n):
            yield Word(symbols, sigma)


def word_pairs(length, sigma):
    corpus = list(words_upto(length, sigma))
    return list(itertools.product(corpus, repeat=2))


@pytest.fixture
def acab_pair():
    s, t, _ = normalize(list("acab"), list("acabba"))
    return s, t


@pytest.fixture
def golden():
    def read(name):
        return (GOLDEN_DIR / name).read_text(encoding="utf-8")

    return read


def pytest_addoption(parser):
    parser.addoption("--acceptance", action="store_true", default=False, help="run the full-size oracle sweeps")


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance: full-size oracle sweeps that take minutes")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--acceptance"):
        return
    skip = pytest.mark.skip(reason="full-size sweep, run with --acceptance")
    for item in items:
        if "acceptance" in item.keywords:
            item.add_marker(skip)
