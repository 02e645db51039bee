"""Shared fixtures: one prime table and factor sieve for the whole session."""
from __future__ import annotations

import sys
import pathlib

import pytest

# Add src to path so the local package 'primesums' can be imported
repo_root = pathlib.Path(__file__).resolve().parents[1]
sys.path.insert(0, str(repo_root / 'src'))
sys.path.insert(0, str(repo_root / 'tests'))

from primesums.sieve.primeEngine import build_factor_sieve, build_prime_table

SESSION_LIMIT = 10 ** 6
FIXTURE_DIR = repo_root / 'tests' / 'fixtures'


@pytest.fixture(scope="session")
def table():
    return build_prime_table(SESSION_LIMIT)


@pytest.fixture(scope="session")
def sieve(table):
    return build_factor_sieve(SESSION_LIMIT, table)


@pytest.fixture(scope="session")
def small_table():
    return build_prime_table(10 ** 4)


@pytest.fixture(scope="session")
def small_sieve(small_table):
    return build_factor_sieve(10 ** 4, small_table)


@pytest.fixture(scope="session")
def fixture_dir():
    return FIXTURE_DIR
