import random

import pytest

from conftest import encode, words_upto
from services.oracle import oracle_k_blocks
from services.simon_tree import (
    Block,
    EmptyWordError,
    build_simon_tree,
    export_dot,
    k_blocks,
    splitting_positions,
    transform,
)
from services.word_model import Word, normalize


def shape(node):
    return (node.start, node.end, [shape(child) for child in node.left_to_right()])


def test_tree_of_ab():
    tree = build_simon_tree(encode("ab"))
    assert shape(tree.root) == (1, 2, [(1, 1, []), (2, 2, [])])
    assert [child.block for child in tree.root.children] == [Block(2, 2), Block(1, 1)]


def test_tree_of_aa():
    tree = build_simon_tree(encode("aa"))
    assert shape(tree.root) == (1, 2, [(1, 2, [(1, 1, []), (2, 2, [])])])
    assert k_blocks(tree, 1) == [Block(1, 2)]
    assert k_blocks(tree, 2) == [Block(1, 1), Block(2, 2)]


def test_tree_of_single_letter():
    tree = build_simon_tree(encode("a"))
    assert shape(tree.root) == (1, 1, [])
    assert tree.depth == 0
    transform(tree)
    assert shape(tree.root) == (1, 1, [(1, 1, [])])
    assert tree.root.children[0].duplicate
    assert k_blocks(tree, 1) == k_blocks(tree, 5) == [Block(1, 1)]


def test_tree_of_bacbaabada():
    tree = build_simon_tree(encode("bacbaabada"))
    assert shape(tree.root) == (1, 10, [
        (1, 3, [(1, 1, []), (2, 2, []), (3, 3, [])]),
        (4, 7, [(4, 4, []), (5, 6, [(5, 5, []), (6, 6, [])]), (7, 7, [])]),
        (8, 9, [(8, 8, []), (9, 9, [])]),
        (10, 10, []),
    ])
    assert tree.depth == 3
    assert tree.node_count == 15


def test_empty_word_raises():
    with pytest.raises(EmptyWordError):
        build_simon_tree(Word((), 0))


@pytest.mark.parametrize("text", ["bacbaabada", "ab", "aa"])
def test_dot_snapshots(text, golden):
    w, _, alphabet = normalize(list(text), [])
    assert export_dot(build_simon_tree(w), alphabet) == golden(f"{text}.dot")


def test_dot_escapes_quotes():
    w, _, alphabet = normalize(['"', "x"], [])
    dot = export_dot(build_simon_tree(w), alphabet)
    assert '[label="[1:2] \\"x"];' in dot


def test_transform_duplicates_singleton_leaves():
    tree = build_simon_tree(encode("bacbaabada"))
    before = tree.node_count
    leaves = [node for node in tree.nodes() if not node.children]
    assert all(node.is_singleton for node in leaves)
    transform(tree)
    assert tree.node_count == before + len(leaves)
    for leaf in leaves:
        assert len(leaf.children) == 1
        dup = leaf.children[0]
        assert dup.duplicate and dup.block == leaf.block and dup.depth == leaf.depth + 1


@pytest.mark.parametrize("sigma,length", [(2, 6), (3, 4)])
def test_singletons_appear_on_two_consecutive_levels(sigma, length):
    for w in words_upto(length, sigma):
        tree = transform(build_simon_tree(w))
        for position in range(1, w.n + 1):
            depths = [node.depth for node in tree.chains[position] if node.is_singleton]
            assert len(depths) == 2 and depths[1] == depths[0] + 1


def test_k_blocks_bounds():
    w = encode("bacbaabada")
    tree = build_simon_tree(w)
    assert k_blocks(tree, 0) == [Block(1, 10)]
    assert k_blocks(tree, 1) == [Block(1, 3), Block(4, 7), Block(8, 9), Block(10, 10)]
    assert k_blocks(tree, w.n) == [Block(i, i) for i in range(1, w.n + 1)]


@pytest.mark.parametrize("sigma,length", [(2, 8), (3, 6)])
def test_k_blocks_match_oracle(sigma, length):
    for w in words_upto(length, sigma):
        tree = build_simon_tree(w)
        for k in range(w.n + 1):
            assert k_blocks(tree, k) == oracle_k_blocks(w, k), (w.symbols, k)


def test_transformed_tree_keeps_partitions():
    for w in words_upto(6, 2):
        plain = build_simon_tree(w)
        expected = [k_blocks(plain, k) for k in range(w.n + 2)]
        tree = transform(build_simon_tree(w))
        assert [k_blocks(tree, k) for k in range(w.n + 2)] == expected


def test_refinement_containment():
    for w in words_upto(7, 2):
        tree = build_simon_tree(w)
        for k in range(w.n):
            coarse = k_blocks(tree, k)
            for block in k_blocks(tree, k + 1):
                assert any(c.start <= block.start and block.end <= c.end for c in coarse)


@pytest.mark.parametrize("sigma,length", [(2, 8), (3, 6)])
def test_splitting_characterization(sigma, length):
    for w in words_upto(length, sigma):
        tree = build_simon_tree(w)
        for k in range(w.n):
            finer = oracle_k_blocks(w, k + 1)
            label = {p: index for index, b in enumerate(finer) for p in range(b.start, b.end + 1)}
            # the empty suffix after the last letter is a class of its own
            label[w.n + 1] = -1
            for block in k_blocks(tree, k):
                # the root ends at the end marker
                end = block.end + 1 if k == 0 else block.end
                for i in range(block.start, end + 1):
                    for j in range(block.start, end + 1):
                        same_alphabet = set(w.symbols[i - 1:end - 1]) == set(w.symbols[j - 1:end - 1])
                        assert same_alphabet == (label[i] == label[j])


def test_splitting_positions():
    for w in words_upto(6, 2):
        tree = build_simon_tree(w)
        for k in range(1, w.n + 1):
            coarse = oracle_k_blocks(w, k - 1)
            fine = oracle_k_blocks(w, k)
            expected = sorted({b.end for b in fine} - {b.end for b in coarse} - {w.n})
            assert splitting_positions(tree, k) == expected


def test_block_lookups_agree():
    w = encode("bacbaabada")
    tree = transform(build_simon_tree(w))
    for level in range(tree.depth + 2):
        for block in k_blocks(tree, level):
            node = tree.node_starting_at(level, block.start)
            found, explicit = tree.block_at(level, block.end)
            assert found == block
            assert explicit is node
            if node is not None:
                assert node.block == block and node.depth == level


def test_construction_work_is_linear():
    rng = random.Random(11)
    for n in (10, 100, 1000, 5000):
        w = Word(tuple(rng.randint(1, 3) for _ in range(n)), 3)
        tree = build_simon_tree(w)
        assert tree.stats.work <= 6 * n
