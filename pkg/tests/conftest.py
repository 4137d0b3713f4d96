from pathlib import Path

import pytest

from riskrules.benchmark import generate_synthetic, load_dataset
from riskrules.rules import default_ruleset

DATA_DIR = Path(__file__).parent / "data"

#: Seed used wherever a test needs one fixed synthetic benchmark.
BENCH_SEED = 42


@pytest.fixture(scope="session")
def ruleset():
    return default_ruleset()


@pytest.fixture(scope="session")
def appendix_dataset():
    return load_dataset(DATA_DIR / "cases_appendix.jsonl")


@pytest.fixture(scope="session")
def bench1035(ruleset):
    return generate_synthetic(1035, BENCH_SEED, ruleset)
