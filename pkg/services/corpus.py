"""
Reproducible word pairs for benchmarks and randomized checks
Uniform i.i.d. words, or near-identical pairs (a copy with a few random edits)
"""
from __future__ import annotations

import logging
from typing import List, Tuple

import numpy as np
from faker import Faker

from services.word_model import Word

logger = logging.getLogger(__name__)

CORPUS_MODES = {"uniform", "near"}


class CorpusError(ValueError):
    """Raised for corpus parameters that cannot produce a word pair"""


def uniform_word(rng: np.random.Generator, n: int, sigma: int) -> Word:
    symbols = rng.integers(1, sigma + 1, size=n, dtype=np.int64)
    return Word(tuple(symbols.tolist()), sigma)


def edited_copy(rng: np.random.Generator, w: Word, edits: int) -> Word:
    """w with `edits` random substitutions, insertions or deletions"""
    symbols = list(w.symbols)
    for _ in range(edits):
        kind = rng.integers(0, 3)
        if kind == 0 and symbols:
            position = int(rng.integers(0, len(symbols)))
            symbols[position] = int(rng.integers(1, w.sigma + 1))
        elif kind == 1 or not symbols:
            position = int(rng.integers(0, len(symbols) + 1))
            symbols.insert(position, int(rng.integers(1, w.sigma + 1)))
        else:
            position = int(rng.integers(0, len(symbols)))
            del symbols[position]
    return Word(tuple(symbols), w.sigma)


def word_pair(n: int, sigma: int, seed: int, mode: str = "near", edits: int = 8) -> Tuple[Word, Word]:
    if mode not in CORPUS_MODES:
        raise CorpusError(f"Unknown corpus mode: {mode}")
    if n < 1 or sigma < 1:
        raise CorpusError(f"Need n >= 1 and sigma >= 1, got n={n}, sigma={sigma}")
    rng = np.random.default_rng(seed)
    s = uniform_word(rng, n, sigma)
    if mode == "uniform":
        t = uniform_word(rng, n, sigma)
    else:
        t = edited_copy(rng, s, edits)
    logger.debug("Generated %s pair: n=%d, n'=%d, sigma=%d, seed=%d", mode, s.n, t.n, sigma, seed)
    return s, t


def token_vocabulary(size: int, seed: int) -> List[str]:
    """`size` distinct words drawn from a seeded Faker, for token-mode inputs"""
    fake = Faker('en_IN')
    fake.seed_instance(seed)
    vocabulary = []
    seen = set()
    while len(vocabulary) < size:
        token = fake.word()
        while token in seen:
            token = f"{token}{len(vocabulary)}"
        seen.add(token)
        vocabulary.append(token)
    return vocabulary


def as_tokens(w: Word, vocabulary: List[str]) -> List[str]:
    if w.sigma > len(vocabulary):
        raise CorpusError(f"Vocabulary of {len(vocabulary)} tokens is too small for sigma={w.sigma}")
    return [vocabulary[symbol - 1] for symbol in w.symbols]
