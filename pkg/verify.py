"""
Self-check for the Simon congruence toolkit
Runs staged checks against the brute-force oracle, prints ✓/✗ per stage
and exits with status 1 if any stage fails
"""
import itertools
import random
import sys

from services.connection import compute_s_connection
from services.interval_structs import IntervalSplitFind, IntervalUnionFind
from services.maxsimk import EQUAL, distinguishing_word, max_sim_k, sim_k
from services.oracle import is_subsequence, oracle_k_blocks, oracle_max_k
from services.simon_tree import build_simon_tree, k_blocks
from services.word_model import Word, next_occurrence_array, normalize


def words_upto(length, sigma):
    for n in range(1, length + 1):
        for symbols in itertools.product(range(1, sigma + 1), repeat=n):
            yield Word(symbols, sigma)


def check_examples():
    """Known values for bacbaabada and acab/acabba"""
    w, _, _ = normalize(list("bacbaabada"), [])
    inf = w.n + 2
    if next_occurrence_array(w) != [4, 5, inf, 7, 6, 8, inf, 10, inf, inf]:
        print("✗ next-occurrence array of bacbaabada")
        return False
    s, t, _ = normalize(list("acab"), list("acabba"))
    if max_sim_k(s, t).k != 1 or not sim_k(s, t, 1) or sim_k(s, t, 2):
        print("✗ acab/acabba should be 1-congruent and not 2-congruent")
        return False
    print("✓ Known examples")
    return True


def check_trees(length=7, sigma=2):
    """k-blocks of every word equal the oracle partition for every k"""
    for w in words_upto(length, sigma):
        tree = build_simon_tree(w)
        for k in range(w.n + 1):
            if k_blocks(tree, k) != oracle_k_blocks(w, k):
                print(f"✗ k-blocks differ for {w.symbols} at k={k}")
                return False
    print(f"✓ Simon-Trees match the oracle (alphabet {sigma}, length <= {length})")
    return True


def check_max_k(length=5, sigma=2):
    """max_sim_k and distinguishers against the oracle on every pair"""
    corpus = list(words_upto(length, sigma))
    for s, t in itertools.product(corpus, repeat=2):
        expected = oracle_max_k(s, t)
        result = distinguishing_word(s, t)
        if result.k != expected:
            print(f"✗ max-k of {s.symbols} / {t.symbols}: got {result.k}, expected {expected}")
            return False
        if expected != EQUAL:
            word = result.distinguisher
            if len(word) != expected + 1 or is_subsequence(word, s) == is_subsequence(word, t):
                print(f"✗ bad distinguisher {word} for {s.symbols} / {t.symbols}")
                return False
    print(f"✓ MaxSimK matches the oracle (alphabet {sigma}, length <= {length})")
    return True


def check_connection_invariants(length=5, sigma=2):
    """S-connected pairs are P-connected and non-crossing; Level entries never exceed INF"""
    corpus = list(words_upto(length, sigma))
    for s, t in itertools.product(corpus, repeat=2):
        conn = compute_s_connection(s, t)
        levels = conn.levels
        if any(value < 1 or value > levels.inf for value in levels.level_s[1:] + levels.level_t[1:]):
            print(f"✗ Level entry out of range for {s.symbols} / {t.symbols}")
            return False
        for level in range(1, max(s.n, t.n) + 2):
            previous_end = 0
            for block, partner in conn.pconn.pairs_at(level):
                if partner.start <= previous_end:
                    print(f"✗ crossing pairs at level {level} for {s.symbols} / {t.symbols}")
                    return False
                previous_end = partner.end
                if conn.s_connected(level, block.start, partner.start) and levels.level_t[partner.start] <= level:
                    print(f"✗ one-sided S-connection at level {level} for {s.symbols} / {t.symbols}")
                    return False
    print("✓ Connection invariants hold")
    return True


def check_interval_structs(runs=200, seed=7):
    """Split-find and union-find against explicit border sets"""
    rng = random.Random(seed)
    for _ in range(runs):
        n = rng.randint(1, 60)
        split_find, borders = IntervalSplitFind(n), {n}
        union_find, merged = IntervalUnionFind(n), set(range(1, n + 1))
        for _ in range(4 * n):
            u = rng.randint(1, n)
            split_find.split(u)
            borders.add(u)
            if u < n and u in merged:
                union_find.union(u)
                merged.discard(u)
            v = rng.randint(1, n)
            hi = min(b for b in borders if b >= v)
            lower = [b for b in borders if b < v]
            if split_find.find(v) != (max(lower) + 1 if lower else 1, hi):
                print(f"✗ split-find disagrees at n={n}")
                return False
            hi = min(b for b in merged if b >= v)
            lower = [b for b in merged if b < v]
            if union_find.find(v) != (max(lower) + 1 if lower else 1, hi):
                print(f"✗ union-find disagrees at n={n}")
                return False
    print("✓ Interval structures agree with the naive reference")
    return True


def main():
    print("=" * 50)
    print("Simon Congruence Toolkit - Self-check")
    print("=" * 50)
    print()

    stages = [
        check_examples,
        check_trees,
        check_max_k,
        check_connection_invariants,
        check_interval_structs,
    ]
    ok = True
    for stage in stages:
        ok = stage() and ok

    print()
    if not ok:
        print("✗ Self-check failed")
        sys.exit(1)
    print("✓ All checks passed")


if __name__ == "__main__":
    main()
