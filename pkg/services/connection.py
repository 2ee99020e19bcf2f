"""
P-Connection and S-Connection between the Simon-Trees of two words

The P-Connection pairs the i-th children of paired nodes level by level. The
refinement then splits pairs level by level until only the S-connected ones
remain: blocks whose suffixes share the same subsequences up to that level.
"""
from __future__ import annotations

import logging
import random
from collections import Counter
from dataclasses import dataclass, field
from typing import Dict, Iterator, List, NamedTuple, Optional, Tuple, Union

from services.interval_structs import IntervalSplitFind, IntervalUnionFind
from services.simon_tree import Block, SimonTree, SimonTreeNode, build_simon_tree, k_blocks, transform
from services.word_model import Word, next_occurrence_array

logger = logging.getLogger(__name__)

# an explicit node, or the start position of an implicit singleton
Item = Union[SimonTreeNode, int]


def _item_block(item: Optional[Item]) -> Optional[Block]:
    if item is None:
        return None
    if isinstance(item, int):
        return Block(item, item)
    return item.block


def _item_children(item: Item) -> List[Item]:
    if isinstance(item, int):
        return [item]
    if item.children:
        return item.children
    return [item.start]


def _is_singleton(item: Item) -> bool:
    return isinstance(item, int) or item.is_singleton


class PConnection:
    """Level-wise pairing of the nodes of two transformed Simon-Trees"""

    def __init__(self, ts: SimonTree, tt: SimonTree):
        self.ts = ts
        self.tt = tt
        self.s_partner: List[Optional[Item]] = [None] * ts.node_count
        self.t_partner: List[Optional[Item]] = [None] * tt.node_count
        self.s_implicit: Dict[Tuple[int, int], SimonTreeNode] = {}
        self.t_implicit: Dict[Tuple[int, int], SimonTreeNode] = {}
        # singleton pairs: U[i] = j and U_inv[j] = i, 0 when unset
        self.U = [0] * (ts.n + 1)
        self.U_inv = [0] * (tt.n + 1)
        self.pair_count = 0

    def _record(self, a: Item, b: Item, level: int) -> None:
        self.pair_count += 1
        if isinstance(a, int):
            if not isinstance(b, int):
                self.s_implicit[(level, a)] = b
        else:
            self.s_partner[a.uid] = b
        if isinstance(b, int):
            if not isinstance(a, int):
                self.t_implicit[(level, b)] = a
        else:
            self.t_partner[b.uid] = a

        if _is_singleton(a) and _is_singleton(b):
            i = a if isinstance(a, int) else a.start
            j = b if isinstance(b, int) else b.start
            if not self.U[i]:
                self.U[i] = j
                self.U_inv[j] = i

    def partner_of_s(self, level: int, start: int) -> Optional[Block]:
        """Partner block of the s-block of the given level starting at start"""
        node = self.ts.node_starting_at(level, start)
        if node is not None:
            return _item_block(self.s_partner[node.uid])
        item = self.s_implicit.get((level, start))
        if item is not None:
            return item.block
        if 1 <= start <= self.ts.n and self.U[start]:
            return Block(self.U[start], self.U[start])
        return None

    def partner_of_t(self, level: int, start: int) -> Optional[Block]:
        """Partner block of the t-block of the given level starting at start"""
        node = self.tt.node_starting_at(level, start)
        if node is not None:
            return _item_block(self.t_partner[node.uid])
        item = self.t_implicit.get((level, start))
        if item is not None:
            return item.block
        if 1 <= start <= self.tt.n and self.U_inv[start]:
            return Block(self.U_inv[start], self.U_inv[start])
        return None

    def partner_of_node(self, node: SimonTreeNode) -> Optional[Block]:
        return _item_block(self.s_partner[node.uid])

    def pairs_at(self, level: int) -> List[Tuple[Block, Block]]:
        """The P_k array of one level as (s-block, t-block) pairs, left to right"""
        result = []
        for block in k_blocks(self.ts, level):
            partner = self.partner_of_s(level, block.start)
            if partner is not None:
                result.append((block, partner))
        return result


def compute_p_connection(ts: SimonTree, tt: SimonTree) -> PConnection:
    """Pair both roots, then the i-th children (right to left) of every paired pair"""
    if not (ts.transformed and tt.transformed):
        raise ValueError("P-Connection needs transformed Simon-Trees")
    pconn = PConnection(ts, tt)
    stack: List[Tuple[Item, Item, int]] = [(ts.root, tt.root, 0)]
    while stack:
        a, b, level = stack.pop()
        pconn._record(a, b, level)
        if isinstance(a, int) and isinstance(b, int):
            continue
        for child_a, child_b in zip(_item_children(a), _item_children(b)):
            stack.append((child_a, child_b, level + 1))
    logger.debug("P-Connection has %d pairs", pconn.pair_count)
    return pconn


class _RightmostQueries:
    """Offline answers to "rightmost x in w[1:pos]" for a batch of queries, in one sweep"""

    def __init__(self, w: Word):
        self.w = w
        self.positions: List[int] = []
        self.letters: List[int] = []
        self.answers: List[int] = []

    def add(self, position: int, letter: int) -> int:
        self.positions.append(position)
        self.letters.append(letter)
        return len(self.positions) - 1

    def resolve(self) -> None:
        n = self.w.n
        buckets: List[List[int]] = [[] for _ in range(n + 1)]
        for index, position in enumerate(self.positions):
            buckets[min(max(position, 0), n)].append(index)
        answers = [0] * len(self.positions)
        last = [0] * (self.w.sigma + 2)
        for position in range(1, n + 1):
            last[self.w.symbols[position - 1]] = position
            for index in buckets[position]:
                letter = self.letters[index]
                answers[index] = last[letter] if letter < len(last) else 0
        self.answers = answers

    def __getitem__(self, index: int) -> int:
        return self.answers[index]


class LetterBounds(NamedTuple):
    letter: int
    prev_c: int
    right_c: int
    prev_b: Optional[int]
    right_b: Optional[int]


class IntervalPair(NamedTuple):
    s_lo: int
    s_hi: int
    t_lo: int
    t_hi: int
    letter: int


@dataclass
class IntervalPairLists:
    first: List[IntervalPair] = field(default_factory=list)
    second: List[IntervalPair] = field(default_factory=list)
    third: List[IntervalPair] = field(default_factory=list)

    def pairs(self, split: bool) -> Iterator[IntervalPair]:
        yield from self.first
        yield from self.second
        if split:
            yield from self.third


def entry_letters(s: Word, node: SimonTreeNode) -> List[Tuple[int, int]]:
    """(x, rightpos) for every letter x of s[m-1:n-1] of a block [m:n]"""
    entries = []
    seen = set()
    for child in node.children[1:]:
        letter = s[child.end]
        entries.append((letter, child.end))
        seen.add(letter)
    if node.start >= 2:
        letter = s[node.start - 1]
        if letter not in seen:
            entries.append((letter, node.start - 1))
    return entries


@dataclass
class PrevRightTable:
    """prevpos/rightpos values for every s-block, its partner, the singleton pairs and the end marker"""

    node_bounds: List[List[LetterBounds]]
    singleton_bounds: Dict[int, LetterBounds]
    end_bounds: Optional[LetterBounds]


def compute_prev_right(s: Word, t: Word, ts: SimonTree, tt: SimonTree, pconn: PConnection) -> PrevRightTable:
    s_queries = _RightmostQueries(s)
    t_queries = _RightmostQueries(t)

    plans: List[List[Tuple[int, int, int, Optional[int], Optional[int]]]] = [[] for _ in range(ts.node_count)]
    for level in range(1, ts.depth + 1):
        for node in ts.level_nodes(level):
            partner = pconn.partner_of_node(node)
            for letter, right_c in entry_letters(s, node):
                prev_c = s_queries.add(node.start - 2, letter)
                prev_b = right_b = None
                if partner is not None:
                    prev_b = t_queries.add(partner.start - 2, letter)
                    right_b = t_queries.add(partner.end - 1, letter)
                plans[node.uid].append((letter, right_c, prev_c, prev_b, right_b))

    singleton_plans = {}
    for i in range(2, s.n + 1):
        j = pconn.U[i]
        if j:
            letter = s[i - 1]
            singleton_plans[i] = (
                letter,
                s_queries.add(i - 2, letter),
                t_queries.add(j - 2, letter),
                t_queries.add(j - 1, letter),
            )

    end_plan = None
    if s.n >= 1 and t.n >= 1:
        letter = s[s.n]
        end_plan = (
            letter,
            s_queries.add(s.n - 1, letter),
            t_queries.add(t.n - 1, letter),
            t_queries.add(t.n, letter),
        )

    s_queries.resolve()
    t_queries.resolve()

    node_bounds = [
        [
            LetterBounds(
                letter,
                s_queries[prev_c],
                right_c,
                None if prev_b is None else t_queries[prev_b],
                None if right_b is None else t_queries[right_b],
            )
            for letter, right_c, prev_c, prev_b, right_b in plan
        ]
        for plan in plans
    ]
    singleton_bounds = {
        i: LetterBounds(letter, s_queries[prev_c], i - 1, t_queries[prev_b], t_queries[right_b])
        for i, (letter, prev_c, prev_b, right_b) in singleton_plans.items()
    }
    end_bounds = None
    if end_plan is not None:
        letter, prev_c, prev_b, right_b = end_plan
        end_bounds = LetterBounds(letter, s_queries[prev_c], s.n, t_queries[prev_b], t_queries[right_b])
    return PrevRightTable(node_bounds, singleton_bounds, end_bounds)


def interval_pair_lists(
    a: Block, b: Optional[Block], bounds: List[LetterBounds], t_length: int
) -> IntervalPairLists:
    """
    Interval-pairs of end positions whose pairs must split on the next level.

    first:  s-ends landing in a before its start, t-ends landing left of b
    second: s-ends landing in a, t-ends between b's last letter and its end
    third:  s-ends landing in a, t-ends landing in b; only valid when (a, b) is split
    Without a partner every t-end is paired with the s-ends landing in a.
    """
    lists = IntervalPairLists()
    for entry in bounds:
        lo = entry.prev_c + 1
        if b is None:
            lists.third.append(IntervalPair(lo, entry.right_c, 1, t_length, entry.letter))
            continue
        lists.first.append(IntervalPair(lo, a.start - 1, 0, entry.prev_b, entry.letter))
        lists.second.append(IntervalPair(lo, entry.right_c, entry.right_b + 1, b.end, entry.letter))
        lists.third.append(IntervalPair(lo, entry.right_c, entry.prev_b + 1, entry.right_b, entry.letter))
    return lists


@dataclass
class LevelArrays:
    """Per position: the level at which its block was split from its partner, and the witness letter"""

    level_s: List[int]
    level_t: List[int]
    witness_s: List[int]
    witness_t: List[int]
    inf: int

    @classmethod
    def fresh(cls, n: int, n_t: int) -> "LevelArrays":
        inf = n + n_t + 1
        return cls([inf] * (n + 1), [inf] * (n_t + 1), [0] * (n + 1), [0] * (n_t + 1), inf)

    def alive_s(self, position: int) -> bool:
        return self.level_s[position] == self.inf

    def alive_t(self, position: int) -> bool:
        return self.level_t[position] == self.inf


@dataclass
class RefineCounters:
    interval_pairs: int = 0
    walk_steps: int = 0
    unpaired: int = 0
    splits_by_level: Counter = field(default_factory=Counter)


class SConnection:
    """Result of the refinement: the P-Connection plus the Level arrays"""

    def __init__(
        self,
        s: Word,
        t: Word,
        ts: SimonTree,
        tt: SimonTree,
        pconn: PConnection,
        levels: LevelArrays,
        split_lists: Dict[int, List[Tuple[Block, Block]]],
        counters: RefineCounters,
    ):
        self.s = s
        self.t = t
        self.ts = ts
        self.tt = tt
        self.pconn = pconn
        self.levels = levels
        self.split_lists = split_lists
        self.counters = counters

    def s_connected(self, level: int, i: int, j: int) -> bool:
        """Whether the level-blocks of position i in s and j in t are S-connected"""
        s_empty = i > self.s.n
        t_empty = j > self.t.n
        if level == 0 or (s_empty and t_empty):
            return True
        if s_empty or t_empty:
            return False
        if self.levels.level_s[i] <= level:
            return False
        block, _ = self.ts.block_at(level, i)
        partner = self.pconn.partner_of_s(level, block.start)
        return partner is not None and partner.start <= j <= partner.end


class _Refinement:
    def __init__(
        self,
        s: Word,
        t: Word,
        ts: SimonTree,
        tt: SimonTree,
        pconn: PConnection,
        table: PrevRightTable,
        shuffle_seed: Optional[int] = None,
    ):
        self.s = s
        self.t = t
        self.n_s = s.n
        self.n_t = t.n
        self.ts = ts
        self.tt = tt
        self.pconn = pconn
        self.table = table
        self.levels = LevelArrays.fresh(s.n, t.n)
        self.sf_s = IntervalSplitFind(s.n)
        self.sf_t = IntervalSplitFind(t.n)
        self.uf_s = IntervalUnionFind(s.n)
        self.uf_t = IntervalUnionFind(t.n)
        self.counters = RefineCounters()
        self.split_lists: Dict[int, List[Tuple[Block, Block]]] = {}
        self.pending: List[int] = []
        # walks of one level run in a seeded random order when set
        self.order = random.Random(shuffle_seed) if shuffle_seed is not None else None

    def _kill(self, uf, level_arr, witness_arr, size, lo, hi, level, letter) -> None:
        inf = self.levels.inf
        for u in range(lo, hi + 1):
            level_arr[u] = level
            witness_arr[u] = letter
        for u in range(lo, hi):
            uf.union(u)
        if lo > 1 and level_arr[lo - 1] != inf:
            uf.union(lo - 1)
        if hi < size and level_arr[hi + 1] != inf:
            uf.union(hi)

    def kill_s(self, lo: int, hi: int, level: int, letter: int = 0) -> None:
        self._kill(self.uf_s, self.levels.level_s, self.levels.witness_s, self.n_s, lo, hi, level, letter)

    def kill_t(self, lo: int, hi: int, level: int, letter: int = 0) -> None:
        self._kill(self.uf_t, self.levels.level_t, self.levels.witness_t, self.n_t, lo, hi, level, letter)

    def kill_pair(self, a: Block, b: Block, level: int, letter: int = 0) -> None:
        self.kill_s(a.start, a.end, level, letter)
        self.kill_t(b.start, b.end, level, letter)
        self.split_lists.setdefault(level, []).append((a, b))
        self.counters.splits_by_level[level] += 1

    def skip_s(self, p: int) -> int:
        if p <= self.n_s and not self.levels.alive_s(p):
            p = self.uf_s.find(p)[1] + 1
        return p

    def skip_t(self, p: int) -> int:
        if p <= self.n_t and not self.levels.alive_t(p):
            p = self.uf_t.find(p)[1] + 1
        return p

    def level1_split(self) -> None:
        """Pair the 1-blocks and split every pair whose suffix alphabets differ"""
        s, t = self.s, self.t
        s_children = self.ts.root.children
        t_children = self.tt.root.children
        common = min(len(s_children), len(t_children))

        # H[x]: bit 1 when x occurs in the current s suffix, bit 2 for t
        H = [0] * (max(s.sigma, t.sigma) + 2)
        check = 0
        ps, pt = s.n + 1, t.n + 1
        for index in range(common):
            a, b = s_children[index], t_children[index]
            while ps > a.end:
                ps -= 1
                check += self._mark(H, s[ps], 1)
            while pt > b.end:
                pt -= 1
                check += self._mark(H, t[pt], 2)
            if check != 0:
                self.kill_pair(a.block, b.block, 1)

        for a in s_children[common:]:
            self.kill_s(a.start, a.end, 1)
            self.counters.unpaired += 1
        for b in t_children[common:]:
            self.kill_t(b.start, b.end, 1)
            self.counters.unpaired += 1

    @staticmethod
    def _mark(H: List[int], letter: int, bit: int) -> int:
        old = H[letter]
        if old & bit:
            return 0
        H[letter] = old | bit
        if old == 0:
            return 1
        return -1

    def walk(self, pair: IntervalPair, level: int) -> None:
        """Split every alive (level+1)-pair whose s-end and t-end lie in the two intervals"""
        n, n_t = self.n_s, self.n_t
        e1, e2 = max(pair.s_lo, 1), min(pair.s_hi, n)
        f1, f2 = max(pair.t_lo, 1), min(pair.t_hi, n_t)
        if e1 > e2 or f1 > f2:
            return
        self.counters.interval_pairs += 1
        target = level + 1

        p = self.skip_s(self.sf_s.find(e1)[0])
        if p > n:
            return
        pt = self.skip_t(self.sf_t.find(f1)[0])
        if pt > n_t:
            return
        partner = self.pconn.partner_of_t(target, pt)
        if partner is not None and partner.start > p:
            p = self.skip_s(partner.start)

        while p <= n:
            q = self.sf_s.find(p)[1]
            if q > e2:
                break
            b = self.pconn.partner_of_s(target, p)
            if b is None or b.end > f2:
                break
            self.counters.walk_steps += 1
            self.kill_pair(Block(p, q), b, target, pair.letter)
            if p == q and self.ts.node_starting_at(target, p) is None:
                self.pending.append(p)
            p = self.uf_s.find(q)[1] + 1

    def mark_unpaired(self, level: int) -> None:
        for node in self.ts.level_nodes(level):
            if self.pconn.s_partner[node.uid] is None and self.levels.alive_s(node.start):
                self.kill_s(node.start, node.end, level)
                self.counters.unpaired += 1
        for node in self.tt.level_nodes(level):
            if self.pconn.t_partner[node.uid] is None and self.levels.alive_t(node.start):
                self.kill_t(node.start, node.end, level)
                self.counters.unpaired += 1

    def _level_walks(self, k: int, singletons: List[int]) -> List[IntervalPair]:
        """Every interval-pair whose walk splits (k+1)-pairs, in the default order"""
        walks: List[IntervalPair] = []
        for node in self.ts.level_nodes(k):
            partner = self.pconn.partner_of_node(node)
            lists = interval_pair_lists(node.block, partner, self.table.node_bounds[node.uid], self.n_t)
            split = partner is None or self.levels.level_s[node.start] <= k
            walks.extend(lists.pairs(split))

        for i in singletons:
            # position 1 has no letter in front of it
            if i == 1:
                continue
            bounds = self.table.singleton_bounds.get(i)
            if bounds is None:
                logger.debug("No singleton partner recorded for position %d", i)
                continue
            j = self.pconn.U[i]
            walks.extend(interval_pair_lists(Block(i, i), Block(j, j), [bounds], self.n_t).third)

        if k == 1 and self.table.end_bounds is not None:
            end_s = Block(self.n_s + 1, self.n_s + 1)
            end_t = Block(self.n_t + 1, self.n_t + 1)
            lists = interval_pair_lists(end_s, end_t, [self.table.end_bounds], self.n_t)
            walks.extend(lists.pairs(False))
        return walks

    def run(self) -> None:
        for node in self.ts.level_nodes(1):
            self.sf_s.split(node.end)
        for node in self.tt.level_nodes(1):
            self.sf_t.split(node.end)
        self.level1_split()

        depth = max(self.ts.depth, self.tt.depth)
        current: List[int] = []
        k = 1
        while k <= depth or current:
            for node in self.ts.level_nodes(k):
                for child in node.children[1:]:
                    self.sf_s.split(child.end)
            for node in self.tt.level_nodes(k):
                for child in node.children[1:]:
                    self.sf_t.split(child.end)
            self.mark_unpaired(k + 1)

            self.pending = []
            walks = self._level_walks(k, current)
            if self.order is not None:
                self.order.shuffle(walks)
            for pair in walks:
                self.walk(pair, k)

            logger.debug("Level %d: %d splits", k + 1, self.counters.splits_by_level[k + 1])
            current = self.pending
            if self.order is not None:
                self.order.shuffle(current)
            k += 1


def refine(
    s: Word,
    t: Word,
    ts: SimonTree,
    tt: SimonTree,
    pconn: Optional[PConnection] = None,
    table: Optional[PrevRightTable] = None,
    shuffle_seed: Optional[int] = None,
) -> SConnection:
    """
    Refine the P-Connection of two transformed trees into the S-Connection.

    With shuffle_seed the interval-pairs of every level are walked in a seeded
    random order; the Level arrays do not depend on that order, witness letters may.
    """
    if pconn is None:
        pconn = compute_p_connection(ts, tt)
    if table is None:
        table = compute_prev_right(s, t, ts, tt, pconn)
    refinement = _Refinement(s, t, ts, tt, pconn, table, shuffle_seed)
    refinement.run()
    counters = refinement.counters
    logger.debug(
        "Refinement processed %d interval-pairs, %d walk steps, %d unpaired blocks",
        counters.interval_pairs,
        counters.walk_steps,
        counters.unpaired,
    )
    return SConnection(s, t, ts, tt, pconn, refinement.levels, refinement.split_lists, counters)


def compute_s_connection(s: Word, t: Word, shuffle_seed: Optional[int] = None) -> SConnection:
    """Build and transform both trees, then run the full refinement"""
    ts = transform(build_simon_tree(s, next_occurrence_array(s)))
    tt = transform(build_simon_tree(t, next_occurrence_array(t)))
    return refine(s, t, ts, tt, shuffle_seed=shuffle_seed)
