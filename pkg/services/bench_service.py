"""Timing harness for the MaxSimK pipeline over seeded corpora of growing size"""
from __future__ import annotations

import logging
import time
from pathlib import Path
from typing import Dict, List, Optional

import pandas as pd
from joblib import Parallel, delayed

from config import BENCH_CONFIG
from services.corpus import CorpusError, as_tokens, token_vocabulary, word_pair
from services.maxsimk import compare, max_sim_k

logger = logging.getLogger(__name__)

RESULT_COLUMNS = ["size", "repetition", "seconds", "ns_per_symbol", "k"]


def _time_one(size: int, repetition: int, sigma: int, seed: int, mode: str, edits: int, tokens: bool) -> Dict:
    s, t = word_pair(size, sigma, seed + repetition, mode, edits)
    if tokens:
        vocabulary = token_vocabulary(sigma, seed)
        raw_s, raw_t = as_tokens(s, vocabulary), as_tokens(t, vocabulary)
        started = time.perf_counter()
        k = compare(raw_s, raw_t, mode="tokens").k_text
        seconds = time.perf_counter() - started
    else:
        started = time.perf_counter()
        result = max_sim_k(s, t)
        seconds = time.perf_counter() - started
        k = "inf" if result.equal else str(int(result.k))
    return {
        "size": size,
        "repetition": repetition,
        "seconds": seconds,
        "ns_per_symbol": seconds * 1e9 / max(s.n + t.n, 1),
        "k": k,
    }


def run_bench(
    sizes: Optional[List[int]] = None,
    sigma: Optional[int] = None,
    repetitions: Optional[int] = None,
    seed: Optional[int] = None,
    mode: Optional[str] = None,
    edits: Optional[int] = None,
    jobs: Optional[int] = None,
    tokens: bool = False,
) -> pd.DataFrame:
    """One row per (size, repetition); defaults come from BENCH_CONFIG"""
    sizes = sorted(BENCH_CONFIG['sizes'] if sizes is None else sizes)
    sigma = BENCH_CONFIG['sigma'] if sigma is None else sigma
    repetitions = BENCH_CONFIG['repetitions'] if repetitions is None else repetitions
    if not sizes or sizes[0] < 1:
        raise CorpusError(f"Benchmark sizes must be positive, got {sizes}")
    if sigma < 1 or repetitions < 1:
        raise CorpusError(f"Need sigma >= 1 and repetitions >= 1, got sigma={sigma}, repetitions={repetitions}")
    seed = BENCH_CONFIG['seed'] if seed is None else seed
    mode = mode or BENCH_CONFIG['mode']
    edits = BENCH_CONFIG['edits'] if edits is None else edits
    jobs = jobs or BENCH_CONFIG['jobs']

    tasks = [
        delayed(_time_one)(size, repetition, sigma, seed, mode, edits, tokens)
        for size in sizes
        for repetition in range(repetitions)
    ]
    rows = Parallel(n_jobs=jobs)(tasks)
    df = pd.DataFrame(rows, columns=RESULT_COLUMNS)
    for size, group in df.groupby("size"):
        logger.info("n=%d: mean %.3fs over %d runs", size, group["seconds"].mean(), len(group))
    return df


def summarize(df: pd.DataFrame) -> pd.DataFrame:
    """Per-size means of wall time and time per symbol"""
    if df.empty:
        return pd.DataFrame(columns=["size", "seconds", "ns_per_symbol", "runs"])
    summary = df.groupby("size").agg(
        seconds=("seconds", "mean"),
        ns_per_symbol=("ns_per_symbol", "mean"),
        runs=("repetition", "count"),
    )
    return summary.reset_index()


def scaling_ratio(summary: pd.DataFrame) -> float:
    """Time per symbol at the largest size divided by the one at the smallest size"""
    if len(summary) < 2:
        return 1.0
    ordered = summary.sort_values("size")
    return float(ordered["ns_per_symbol"].iloc[-1] / ordered["ns_per_symbol"].iloc[0])


def within_budget(summary: pd.DataFrame, max_ratio: Optional[float] = None) -> bool:
    limit = BENCH_CONFIG['max_ratio'] if max_ratio is None else max_ratio
    return scaling_ratio(summary) <= limit


def export_results(df: pd.DataFrame, csv_path: Optional[str] = None, xlsx_path: Optional[str] = None) -> List[Path]:
    """Write the raw rows and the per-size summary; the workbook gets one sheet each"""
    written = []
    if csv_path:
        path = Path(csv_path)
        df.to_csv(path, index=False)
        written.append(path)
    if xlsx_path:
        path = Path(xlsx_path)
        with pd.ExcelWriter(path, engine="openpyxl") as writer:
            df.to_excel(writer, sheet_name="runs", index=False)
            summarize(df).to_excel(writer, sheet_name="summary", index=False)
        written.append(path)
    return written
