"""
Simon-Tree of a single word

Nodes at depth k are the k-blocks of the word: maximal intervals of start
positions whose suffixes share the same subsequences of length at most k.
The tree is built right to left in one pass, keeping only the leftmost
branch open. Children are stored right to left, so child index 1 is the
rightmost child.
"""
from __future__ import annotations

import logging
from bisect import bisect_right
from dataclasses import dataclass, field
from typing import List, NamedTuple, Optional, Sequence, Tuple

from services.word_model import AlphabetMap, Word, next_occurrence_array

logger = logging.getLogger(__name__)

# start of a block whose left end is not known yet
OPEN = 0


class EmptyWordError(ValueError):
    """Raised when a Simon-Tree is requested for the empty word"""


class Block(NamedTuple):
    start: int
    end: int

    def __str__(self) -> str:
        return f"[{self.start}:{self.end}]"

    @property
    def is_singleton(self) -> bool:
        return self.start == self.end


@dataclass(eq=False)
class SimonTreeNode:
    start: int
    end: int
    depth: int
    parent: Optional["SimonTreeNode"] = field(default=None, repr=False)
    children: List["SimonTreeNode"] = field(default_factory=list, repr=False)
    duplicate: bool = False
    uid: int = -1

    @property
    def block(self) -> Block:
        return Block(self.start, self.end)

    @property
    def is_singleton(self) -> bool:
        return self.start == self.end

    def child(self, index: int) -> Optional["SimonTreeNode"]:
        """The index-th child counted from the right, 1-based"""
        if 1 <= index <= len(self.children):
            return self.children[index - 1]
        return None

    def left_to_right(self) -> List["SimonTreeNode"]:
        return self.children[::-1]


@dataclass
class BuildStats:
    nodes_created: int = 0
    ascents: int = 0
    duplicates: int = 0

    @property
    def work(self) -> int:
        return self.nodes_created + self.ascents


class SimonTree:
    """A finished Simon-Tree with per-level and per-position lookups"""

    def __init__(self, word: Word, root: SimonTreeNode, stats: BuildStats):
        self.word = word
        self.root = root
        self.stats = stats
        self.transformed = False
        self.levels: List[List[SimonTreeNode]] = []
        self.first_level: List[int] = []
        self.chains: List[List[SimonTreeNode]] = []
        self._starts: List[List[int]] = []
        self.reindex()

    @property
    def n(self) -> int:
        return self.word.n

    @property
    def depth(self) -> int:
        return len(self.levels) - 1

    @property
    def node_count(self) -> int:
        return sum(len(level) for level in self.levels)

    def reindex(self) -> None:
        """Rebuild the left-to-right level lists, node ids and per-position chains"""
        levels = []
        current = [self.root]
        uid = 0
        while current:
            for node in current:
                node.uid = uid
                uid += 1
            levels.append(current)
            current = [child for node in current for child in reversed(node.children)]

        first_level = [-1] * (self.n + 1)
        chains: List[List[SimonTreeNode]] = [[] for _ in range(self.n + 1)]
        for depth, level in enumerate(levels):
            for node in level:
                if not chains[node.start]:
                    first_level[node.start] = depth
                chains[node.start].append(node)

        self.levels = levels
        self.first_level = first_level
        self.chains = chains
        self._starts = [[node.start for node in level] for level in levels]

    def nodes(self) -> List[SimonTreeNode]:
        return [node for level in self.levels for node in level]

    def node_starting_at(self, level: int, position: int) -> Optional[SimonTreeNode]:
        """Explicit node of the given depth whose block starts at position, in O(1)"""
        if not 1 <= position <= self.n:
            return None
        offset = level - self.first_level[position]
        chain = self.chains[position]
        if 0 <= offset < len(chain):
            return chain[offset]
        return None

    def block_at(self, level: int, position: int) -> Tuple[Block, Optional[SimonTreeNode]]:
        """The level-block containing position, with its explicit node or None when implicit"""
        node = self.node_starting_at(level, position)
        if node is not None:
            return node.block, node
        if level < len(self.levels):
            index = bisect_right(self._starts[level], position) - 1
            if index >= 0:
                candidate = self.levels[level][index]
                if candidate.end >= position:
                    return candidate.block, candidate
        return Block(position, position), None

    def level_nodes(self, level: int) -> List[SimonTreeNode]:
        if 0 <= level < len(self.levels):
            return self.levels[level]
        return []


def find_node(i: int, X: Sequence[int], leaf: SimonTreeNode, stats: BuildStats) -> SimonTreeNode:
    """Ascend the leftmost branch to the node that receives position i, closing every node passed"""
    node = leaf
    nxt = X[i - 1]
    while node.parent is not None:
        if node.end <= nxt < node.parent.end:
            return node
        node.start = i + 1
        node = node.parent
        stats.ascents += 1
    return node


def split_node(i: int, node: SimonTreeNode, leaf: SimonTreeNode, stats: BuildStats) -> SimonTreeNode:
    """Open a new leftmost block [?:i] below node and return it as the new leftmost leaf"""
    if node is leaf:
        node.children.append(SimonTreeNode(i + 1, i + 1, node.depth + 1, parent=node))
        stats.nodes_created += 1
    opened = SimonTreeNode(OPEN, i, node.depth + 1, parent=node)
    node.children.append(opened)
    stats.nodes_created += 1
    return opened


def build_simon_tree(w: Word, X: Optional[Sequence[int]] = None) -> SimonTree:
    """Build the Simon-Tree of w right to left, with an end marker at position n + 1"""
    n = w.n
    if n == 0:
        raise EmptyWordError("Cannot build a Simon-Tree for the empty word")
    if X is None:
        X = next_occurrence_array(w)

    stats = BuildStats()
    root = SimonTreeNode(OPEN, n + 1, 0)
    stats.nodes_created += 1
    leaf = root
    for i in range(n, 0, -1):
        node = find_node(i, X, leaf, stats)
        leaf = split_node(i, node, leaf, stats)

    node = leaf
    while node is not None:
        if node.start == OPEN:
            node.start = 1
        node = node.parent

    # the marker block is the rightmost child of the root
    marker = root.children.pop(0)
    assert marker.start == marker.end == n + 1
    root.end = n
    if n == 1:
        # the only 1-block is the root block itself
        root.children.clear()

    tree = SimonTree(w, root, stats)
    logger.debug("Built Simon-Tree of depth %d with %d nodes for n=%d", tree.depth, tree.node_count, n)
    return tree


def transform(tree: SimonTree) -> SimonTree:
    """Give every singleton leaf a child with the same block one level deeper; updates tree in place"""
    if tree.transformed:
        return tree
    for node in tree.nodes():
        if not node.children:
            node.children.append(
                SimonTreeNode(node.start, node.end, node.depth + 1, parent=node, duplicate=True)
            )
            tree.stats.duplicates += 1
    tree.transformed = True
    tree.reindex()
    return tree


def k_blocks(tree: SimonTree, k: int) -> List[Block]:
    """The k-block partition of [1..n], left to right, explicit and implicit nodes alike"""
    if k < 0:
        raise ValueError(f"Level must be non-negative, got {k}")
    blocks = []
    position = 1
    while position <= tree.n:
        block, _ = tree.block_at(k, position)
        blocks.append(block)
        position = block.end + 1
    return blocks


def splitting_positions(tree: SimonTree, k: int) -> List[int]:
    """Positions i < n with i and i + 1 in one (k-1)-block but in different k-blocks"""
    if k < 1:
        return []
    coarse = {block.end for block in k_blocks(tree, k - 1)}
    return [block.end for block in k_blocks(tree, k) if block.end < tree.n and block.end not in coarse]


def _dot_escape(text: str) -> str:
    return text.replace("\\", "\\\\").replace('"', '\\"')


def segment_text(w: Word, start: int, end: int, alphabet: Optional[AlphabetMap] = None, sep: str = "") -> str:
    return Word(w.symbols[start - 1:end], w.sigma).as_text(alphabet, sep)


def export_dot(
    tree: SimonTree,
    alphabet: Optional[AlphabetMap] = None,
    sep: str = "",
    include_duplicates: bool = False,
) -> str:
    """Render the tree as DOT text, one box per block labeled "[m:n] w[m:n]" """
    shown = [node for node in tree.nodes() if include_duplicates or not node.duplicate]
    lines = ["digraph SimonTree {", "  node [shape=box];"]
    for node in shown:
        label = f"{node.block} {segment_text(tree.word, node.start, node.end, alphabet, sep)}"
        lines.append(f'  n{node.uid} [label="{_dot_escape(label)}"];')
    for node in shown:
        for child in node.left_to_right():
            if include_duplicates or not child.duplicate:
                lines.append(f"  n{node.uid} -> n{child.uid};")
    lines.append("}")
    return "\n".join(lines) + "\n"
