"""
Configuration file for the Simon congruence toolkit
Every value can be overridden through environment variables
"""
import os


def _int_list(value):
    return [int(part) for part in value.split(',') if part.strip()]


# Brute-force oracle limits
ORACLE_CONFIG = {
    'max_length': int(os.getenv('SIMON_ORACLE_MAX_LENGTH', 16)),
    'cache_size': int(os.getenv('SIMON_ORACLE_CACHE_SIZE', 512)),
}

# Benchmark harness defaults
BENCH_CONFIG = {
    'sizes': _int_list(os.getenv('SIMON_BENCH_SIZES', '100000,1000000,10000000')),
    'sigma': int(os.getenv('SIMON_BENCH_SIGMA', 26)),
    'repetitions': int(os.getenv('SIMON_BENCH_REPETITIONS', 3)),
    'seed': int(os.getenv('SIMON_BENCH_SEED', 2024)),
    'jobs': int(os.getenv('SIMON_BENCH_JOBS', 1)),
    'edits': int(os.getenv('SIMON_BENCH_EDITS', 8)),
    'mode': os.getenv('SIMON_BENCH_MODE', 'near'),
    'max_ratio': 3.0,
}

# Logging goes to stderr; stdout is reserved for results
LOG_CONFIG = {
    'level': os.getenv('SIMON_LOG_LEVEL', 'WARNING').upper(),
    'format': '%(asctime)s %(levelname)s %(name)s: %(message)s',
}

# Command-line defaults
CLI_CONFIG = {
    'mode': os.getenv('SIMON_TOKEN_MODE', 'chars'),
    'format': os.getenv('SIMON_OUTPUT_FORMAT', 'plain'),
}

# Exit codes of app.py
EXIT_CODES = {
    'ok': 0,
    'false': 1,
    'usage': 2,
    'io': 3,
}

# Application Settings
APP_NAME = 'Simon Congruence Toolkit'
APP_VERSION = '1.0.0'
