"""MaxSimK solver, the SimK decision and minimum-length distinguishing words"""
from __future__ import annotations

import hashlib
import logging
import math
from dataclasses import dataclass
from typing import Hashable, List, Optional, Sequence, Tuple

from services.connection import SConnection, compute_s_connection
from services.simon_tree import SimonTree
from services.word_model import Word, normalize, tokenize

logger = logging.getLogger(__name__)

# s ~k t for every k
EQUAL = math.inf


@dataclass(frozen=True)
class MaxKResult:
    k: float
    distinguisher: Optional[Tuple[int, ...]] = None
    contained_in: Optional[str] = None

    @property
    def equal(self) -> bool:
        return self.k == EQUAL


@dataclass(frozen=True)
class ComparisonReport:
    k: float
    distinguisher: Optional[List[Hashable]]
    contained_in: Optional[str]
    s_length: int
    t_length: int
    s_digest: str
    t_digest: str
    sigma: int

    @property
    def k_text(self) -> str:
        return "inf" if self.k == EQUAL else str(int(self.k))

    def as_dict(self) -> dict:
        return {
            "k": self.k_text,
            "distinguisher": self.distinguisher,
            "contained_in": self.contained_in,
            "s_length": self.s_length,
            "t_length": self.t_length,
            "s_digest": self.s_digest,
            "t_digest": self.t_digest,
            "sigma": self.sigma,
        }


def _is_subsequence(u: Sequence[int], w: Sequence[int]) -> bool:
    remaining = iter(w)
    return all(symbol in remaining for symbol in u)


def _empty_case(s: Word, t: Word) -> Optional[MaxKResult]:
    if s.n == 0 and t.n == 0:
        return MaxKResult(EQUAL)
    if s.n == 0:
        return MaxKResult(0, (t[1],), "t")
    if t.n == 0:
        return MaxKResult(0, (s[1],), "s")
    return None


def _ordered(s: Word, t: Word) -> Tuple[Word, Word, bool]:
    """The longer word first, and whether the inputs were swapped"""
    if t.n > s.n:
        return t, s, True
    return s, t, False


def _level_of_first_split(conn: SConnection) -> int:
    """Largest level on which the blocks holding position 1 of both words are S-connected"""
    bound = max(conn.s.n, conn.t.n) + 1
    level = 0
    while level < bound:
        nxt = level + 1
        if conn.levels.level_s[1] <= nxt:
            return level
        partner = conn.pconn.partner_of_s(nxt, 1)
        if partner is None or partner.start != 1:
            return level
        level = nxt
    raise RuntimeError("Distinct words stayed connected past the maximal level")


def max_sim_k(s: Word, t: Word) -> MaxKResult:
    """Maximal k with s ~k t, or EQUAL when s = t"""
    result = _empty_case(s, t)
    if result is not None:
        return MaxKResult(result.k)
    if s.symbols == t.symbols:
        return MaxKResult(EQUAL)
    longer, shorter, _ = _ordered(s, t)
    conn = compute_s_connection(longer, shorter)
    return MaxKResult(_level_of_first_split(conn))


def sim_k(s: Word, t: Word, k: int) -> bool:
    if k < 0:
        raise ValueError(f"k must be non-negative, got {k}")
    return k <= max_sim_k(s, t).k


def _next_position(w: Word, start: int, letter: int) -> int:
    for position in range(start, w.n + 1):
        if w[position] == letter:
            return position
    raise LookupError(f"Letter {letter} does not occur in the suffix starting at {start}")


def _suffix_difference(s: Word, i: int, t: Word, j: int) -> int:
    left = set(s.symbols[i - 1:])
    right = set(t.symbols[j - 1:])
    return min(left ^ right)


def _remaining_child_letters(w: Word, tree: SimonTree, level: int, position: int) -> List[int]:
    """Letters of w[position:e-1] for the level-block ending at e, read off its children"""
    _, node = tree.block_at(level, position)
    if node is None:
        return []
    letters = []
    # below the root the rightmost child ends at the block end and carries no letter
    children = node.children if node.depth == 0 else node.children[1:]
    for child in children:
        if child.end < position:
            break
        letters.append(w[child.end])
    return letters


def _child_letter_difference(conn: SConnection, level: int, i: int, j: int, Y: List[int]) -> int:
    s_letters = _remaining_child_letters(conn.s, conn.ts, level, i)
    t_letters = _remaining_child_letters(conn.t, conn.tt, level, j)
    for letter in s_letters:
        Y[letter] = 1
    found = 0
    for letter in t_letters:
        if Y[letter]:
            Y[letter] = 2
        elif not found:
            found = letter
    if not found:
        found = next((letter for letter in s_letters if Y[letter] == 1), 0)
    for letter in s_letters:
        Y[letter] = 0
    if not found:
        raise RuntimeError(f"No distinguishing letter below level {level} at ({i}, {j})")
    return found


def distinguisher_from_connection(conn: SConnection, k: int) -> Tuple[int, ...]:
    """Walk down from level k + 1 to a word of length k + 1 in exactly one spectrum"""
    s, t = conn.s, conn.t
    Y = [0] * (max(s.sigma, t.sigma) + 2)
    letters = []
    i = j = 1
    for level in range(k + 1, 0, -1):
        if level == 1:
            letters.append(_suffix_difference(s, i, t, j))
            break
        block_s, _ = conn.ts.block_at(level, i)
        block_t, _ = conn.tt.block_at(level, j)
        if conn.pconn.partner_of_s(level, block_s.start) == block_t:
            letter = conn.levels.witness_s[i]
        else:
            letter = 0
        if not letter:
            letter = _child_letter_difference(conn, level - 1, i, j, Y)
        letters.append(letter)
        i = _next_position(s, i, letter) + 1
        j = _next_position(t, j, letter) + 1
    return tuple(letters)


def distinguishing_word(s: Word, t: Word) -> MaxKResult:
    """MaxSimK together with one shortest word that is a subsequence of exactly one input"""
    result = _empty_case(s, t)
    if result is not None:
        return result
    if s.symbols == t.symbols:
        return MaxKResult(EQUAL)
    longer, shorter, swapped = _ordered(s, t)
    conn = compute_s_connection(longer, shorter)
    k = _level_of_first_split(conn)
    word = distinguisher_from_connection(conn, k)
    in_longer = _is_subsequence(word, longer.symbols)
    contained_in = "s" if in_longer != swapped else "t"
    logger.debug("k=%d, distinguisher of length %d found in %s", k, len(word), contained_in)
    return MaxKResult(k, word, contained_in)


def _digest(raw: Sequence[Hashable]) -> str:
    text = "\x1f".join(str(token) for token in raw)
    return hashlib.sha256(text.encode("utf-8")).hexdigest()[:16]


def compare(raw_s, raw_t, mode: str = "chars") -> ComparisonReport:
    """Tokenize two raw inputs if they are text, normalize jointly and solve"""
    tokens_s = tokenize(raw_s, mode) if isinstance(raw_s, str) else list(raw_s)
    tokens_t = tokenize(raw_t, mode) if isinstance(raw_t, str) else list(raw_t)
    s, t, alphabet = normalize(tokens_s, tokens_t)
    result = distinguishing_word(s, t)
    distinguisher = None
    if result.distinguisher is not None:
        distinguisher = alphabet.decode(result.distinguisher)
    return ComparisonReport(
        k=result.k,
        distinguisher=distinguisher,
        contained_in=result.contained_in,
        s_length=s.n,
        t_length=t.n,
        s_digest=_digest(tokens_s),
        t_digest=_digest(tokens_t),
        sigma=alphabet.sigma,
    )

