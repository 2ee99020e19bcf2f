"""
Brute-force ground truth over explicit subsequence sets

Everything here is exponential in the word length and guarded by
ORACLE_CONFIG['max_length']. Used by the test suites and verify.py.
"""
from __future__ import annotations

from functools import lru_cache
from typing import Dict, FrozenSet, List, Sequence, Tuple, Union

from config import ORACLE_CONFIG
from services.simon_tree import Block
from services.word_model import Word

Subsequence = Tuple[int, ...]
WordLike = Union[Word, Sequence[int]]

EQUAL = float("inf")


class OracleGuardError(ValueError):
    """Raised when a word is too long for brute-force enumeration"""


def _symbols(w: WordLike) -> Tuple[int, ...]:
    symbols = w.symbols if isinstance(w, Word) else tuple(w)
    limit = ORACLE_CONFIG["max_length"]
    if len(symbols) > limit:
        raise OracleGuardError(f"Word of length {len(symbols)} exceeds the oracle limit of {limit}")
    return symbols


@lru_cache(maxsize=ORACLE_CONFIG["cache_size"])
def _suffix_sets(symbols: Tuple[int, ...], k: int) -> Tuple[FrozenSet[Subsequence], ...]:
    """Subsequences of length <= k of every suffix; index i is the suffix from 0-based i, n is empty"""
    n = len(symbols)
    first: List[Dict[int, int]] = [{} for _ in range(n + 1)]
    for i in range(n - 1, -1, -1):
        first[i] = dict(first[i + 1])
        first[i][symbols[i]] = i

    current = [frozenset({()})] * (n + 1)
    for _ in range(min(k, n)):
        layer = []
        for i in range(n + 1):
            words = {()}
            for letter, position in first[i].items():
                words.update((letter,) + rest for rest in current[position + 1])
            layer.append(frozenset(words))
        current = layer
    return tuple(current)


def suffix_spectra(w: WordLike, k: int) -> Tuple[FrozenSet[Subsequence], ...]:
    """Spectra up to length k of every suffix; index i - 1 is the suffix from position i, index n is empty"""
    if k < 0:
        raise ValueError(f"k must be non-negative, got {k}")
    return _suffix_sets(_symbols(w), k)


def spectra(w: WordLike, k: int) -> Tuple[Subsequence, ...]:
    """All distinct subsequences of w of length at most k, sorted by length then lexicographically"""
    if k < 0:
        raise ValueError(f"k must be non-negative, got {k}")
    symbols = _symbols(w)
    return tuple(sorted(_suffix_sets(symbols, k)[0], key=lambda u: (len(u), u)))


def is_subsequence(u: Sequence[int], w: WordLike) -> bool:
    symbols = w.symbols if isinstance(w, Word) else w
    remaining = iter(symbols)
    return all(symbol in remaining for symbol in u)


def _full_difference(s: WordLike, t: WordLike) -> FrozenSet[Subsequence]:
    left, right = _symbols(s), _symbols(t)
    k = max(len(left), len(right))
    return _suffix_sets(left, k)[0] ^ _suffix_sets(right, k)[0]


def oracle_max_k(s: WordLike, t: WordLike) -> float:
    """Largest k with equal spectra up to length k, EQUAL when they never differ"""
    difference = _full_difference(s, t)
    if not difference:
        return EQUAL
    return min(len(u) for u in difference) - 1


def oracle_min_distinguisher(s: WordLike, t: WordLike) -> Union[Subsequence, float]:
    difference = _full_difference(s, t)
    if not difference:
        return EQUAL
    return min(difference, key=lambda u: (len(u), u))


def oracle_k_blocks(w: WordLike, k: int) -> List[Block]:
    """Classes of positions whose suffixes are k-equivalent; they are intervals"""
    symbols = _symbols(w)
    sets = _suffix_sets(symbols, k)
    blocks: List[Block] = []
    start = 1
    for position in range(2, len(symbols) + 1):
        if sets[position - 1] != sets[start - 1]:
            blocks.append(Block(start, position - 1))
            start = position
    if symbols:
        blocks.append(Block(start, len(symbols)))

    seen = set()
    for block in blocks:
        key = sets[block.start - 1]
        if key in seen:
            raise AssertionError(f"Equivalence class of {block} is not contiguous")
        seen.add(key)
    return blocks


def oracle_s_connected(s: WordLike, t: WordLike, i: int, j: int, k: int) -> bool:
    """Whether s[i:] and t[j:] have the same subsequences of length at most k"""
    left, right = _symbols(s), _symbols(t)
    return _suffix_sets(left, k)[i - 1] == _suffix_sets(right, k)[j - 1]
