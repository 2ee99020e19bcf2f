"""Word representation, joint alphabet normalization and the next-occurrence array"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Dict, Hashable, List, Sequence, Tuple

logger = logging.getLogger(__name__)

TOKEN_MODES = {"chars", "tokens"}


class WordModelError(ValueError):
    """Raised for input that cannot be turned into a word"""


@dataclass(frozen=True)
class Word:
    """A word over the integer alphabet 1..sigma; positions are 1-based."""

    symbols: Tuple[int, ...]
    sigma: int

    @property
    def n(self) -> int:
        return len(self.symbols)

    def __len__(self) -> int:
        return len(self.symbols)

    def __getitem__(self, position: int) -> int:
        return self.symbols[position - 1]

    def padded(self) -> List[int]:
        """Symbols with a dummy entry at index 0 so that w[i] is position i"""
        return [0, *self.symbols]

    def as_text(self, alphabet: "AlphabetMap | None" = None, sep: str = "") -> str:
        if alphabet is None:
            return sep.join(str(symbol) for symbol in self.symbols)
        return sep.join(str(token) for token in alphabet.decode(self.symbols))

    @classmethod
    def from_ids(cls, ids: Sequence[int]) -> "Word":
        symbols = tuple(int(symbol) for symbol in ids)
        if any(symbol < 1 for symbol in symbols):
            raise WordModelError(f"Symbol ids must be positive, got {list(symbols)}")
        return cls(symbols, max(symbols, default=0))


@dataclass(frozen=True)
class AlphabetMap:
    """Bijection between observed tokens and ids 1..sigma, ids in sorted token order"""

    tokens: Tuple[Hashable, ...]
    index: Dict[Hashable, int] = field(compare=False, repr=False)

    @property
    def sigma(self) -> int:
        return len(self.tokens)

    def encode(self, raw: Sequence[Hashable]) -> Tuple[int, ...]:
        try:
            return tuple(self.index[token] for token in raw)
        except KeyError as exc:
            raise WordModelError(f"Token {exc.args[0]!r} is not in the alphabet") from exc

    def decode(self, ids: Sequence[int]) -> List[Hashable]:
        return [self.tokens[symbol - 1] for symbol in ids]


def tokenize(text: str, mode: str = "chars") -> List[str]:
    """Split raw text into tokens: every non-whitespace character, or whitespace-separated tokens"""
    if mode not in TOKEN_MODES:
        raise WordModelError(f"Unknown tokenization mode: {mode}")
    if mode == "tokens":
        return text.split()
    return [char for char in text if not char.isspace()]


def normalize(raw_s: Sequence[Hashable], raw_t: Sequence[Hashable]) -> Tuple[Word, Word, AlphabetMap]:
    """Rename the tokens of both inputs jointly to 1..sigma by sorted rank"""
    combined = list(raw_s) + list(raw_t)
    try:
        tokens = tuple(sorted(set(combined)))
    except TypeError as exc:
        raise WordModelError(f"Tokens must be hashable and mutually comparable: {exc}") from exc

    alphabet = AlphabetMap(tokens, {token: rank + 1 for rank, token in enumerate(tokens)})
    s = Word(alphabet.encode(raw_s), alphabet.sigma)
    t = Word(alphabet.encode(raw_t), alphabet.sigma)
    logger.debug("Normalized words of length %d and %d over %d letters", s.n, t.n, alphabet.sigma)
    return s, t, alphabet


def infinity_for(n: int) -> int:
    """Sentinel used in next-occurrence arrays of a word of length n"""
    return n + 2


def next_occurrence_array(w: Word) -> List[int]:
    """X[i-1] is the next position j > i with w[j] = w[i], or n + 2 when there is none"""
    n = w.n
    inf = infinity_for(n)
    last = [inf] * (w.sigma + 2)
    result = [inf] * n
    for position in range(n, 0, -1):
        symbol = w.symbols[position - 1]
        result[position - 1] = last[symbol]
        last[symbol] = position
    return result
