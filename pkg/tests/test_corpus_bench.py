import numpy as np
import pandas as pd
import pytest

from services.bench_service import RESULT_COLUMNS, export_results, run_bench, scaling_ratio, summarize, within_budget
from services.corpus import CorpusError, as_tokens, edited_copy, token_vocabulary, uniform_word, word_pair
from services.word_model import Word


def test_word_pair_is_reproducible():
    assert word_pair(200, 4, seed=11) == word_pair(200, 4, seed=11)
    assert word_pair(200, 4, seed=11) != word_pair(200, 4, seed=12)


def test_uniform_words_use_the_whole_alphabet_range():
    s, t = word_pair(500, 3, seed=5, mode="uniform")
    assert s.n == t.n == 500
    assert set(s.symbols) == {1, 2, 3}
    assert s != t


def test_near_pair_stays_close():
    s, t = word_pair(300, 5, seed=3, mode="near", edits=4)
    assert abs(s.n - t.n) <= 4


def test_edited_copy_without_edits_is_identity():
    rng = np.random.default_rng(0)
    w = uniform_word(rng, 50, 2)
    assert edited_copy(rng, w, 0) == w


@pytest.mark.parametrize("kwargs", [{"mode": "shuffled"}, {"n": 0}, {"sigma": 0}])
def test_bad_corpus_parameters(kwargs):
    params = {"n": 10, "sigma": 2, "seed": 1, "mode": "near"}
    params.update(kwargs)
    with pytest.raises(CorpusError):
        word_pair(params["n"], params["sigma"], params["seed"], params["mode"])


def test_token_vocabulary_is_distinct_and_seeded():
    vocabulary = token_vocabulary(40, seed=9)
    assert len(set(vocabulary)) == 40
    assert vocabulary == token_vocabulary(40, seed=9)


def test_as_tokens_needs_a_large_enough_vocabulary():
    w = Word((1, 3, 2), 3)
    assert as_tokens(w, ["x", "y", "z"]) == ["x", "z", "y"]
    with pytest.raises(CorpusError):
        as_tokens(w, ["x", "y"])


def test_run_bench_produces_one_row_per_run():
    df = run_bench(sizes=[60, 20], sigma=3, repetitions=2, seed=1, mode="near", edits=2, jobs=1)
    assert list(df.columns) == RESULT_COLUMNS
    assert len(df) == 4
    assert sorted(df["size"].unique()) == [20, 60]
    assert (df["seconds"] >= 0).all()


@pytest.mark.parametrize("kwargs", [{"sizes": [0]}, {"sizes": []}, {"sigma": 0}, {"repetitions": 0}])
def test_run_bench_rejects_bad_parameters(kwargs):
    params = {"sizes": [10], "sigma": 2, "repetitions": 1, "seed": 1, "jobs": 1}
    params.update(kwargs)
    with pytest.raises(CorpusError):
        run_bench(**params)


def test_run_bench_in_token_mode():
    df = run_bench(sizes=[30], sigma=4, repetitions=1, seed=2, mode="uniform", jobs=1, tokens=True)
    assert len(df) == 1
    k = df["k"].iloc[0]
    assert k == "inf" or k.isdigit()


def test_summary_and_ratio():
    df = pd.DataFrame(
        [
            {"size": 10, "repetition": 0, "seconds": 1.0, "ns_per_symbol": 100.0, "k": "1"},
            {"size": 10, "repetition": 1, "seconds": 3.0, "ns_per_symbol": 300.0, "k": "1"},
            {"size": 100, "repetition": 0, "seconds": 40.0, "ns_per_symbol": 400.0, "k": "2"},
        ]
    )
    summary = summarize(df)
    assert summary["size"].tolist() == [10, 100]
    assert summary["seconds"].tolist() == [2.0, 40.0]
    assert summary["runs"].tolist() == [2, 1]
    assert scaling_ratio(summary) == pytest.approx(2.0)
    assert within_budget(summary)
    assert not within_budget(summary, max_ratio=1.5)


def test_summary_of_nothing():
    summary = summarize(pd.DataFrame(columns=RESULT_COLUMNS))
    assert summary.empty
    assert scaling_ratio(summary) == 1.0


def test_export_results(tmp_path):
    df = run_bench(sizes=[15], sigma=2, repetitions=2, seed=3, jobs=1)
    csv_path, xlsx_path = tmp_path / "runs.csv", tmp_path / "runs.xlsx"
    written = export_results(df, str(csv_path), str(xlsx_path))
    assert written == [csv_path, xlsx_path]
    assert len(pd.read_csv(csv_path)) == 2
    sheets = pd.read_excel(xlsx_path, sheet_name=None, engine="openpyxl")
    assert set(sheets) == {"runs", "summary"}
    assert sheets["summary"]["runs"].tolist() == [2]
    assert export_results(df) == []
