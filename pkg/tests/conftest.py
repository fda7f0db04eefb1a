from pathlib import Path

import numpy as np
import pytest
from hypothesis import strategies as st

from fimkit.core import TransactionDatabase, parse_database

DATA = Path(__file__).parent / "data"

DB5_LINES = [
    "mp3player usb-charger book-dct book-ths",
    "mp3player usb-charger",
    "usb-charger mp3player book-dct book-ths",
    "usb-charger",
    "book-dct book-ths",
]

# the worked example's support listing for the five baskets above
DB5_SUPPORTS = {
    ("book-ths",): 3,
    ("book-dct",): 3,
    ("book-dct", "book-ths"): 3,
    ("usb-charger",): 4,
    ("book-ths", "usb-charger"): 2,
    ("book-dct", "usb-charger"): 2,
    ("book-dct", "book-ths", "usb-charger"): 2,
    ("mp3player",): 3,
    ("book-ths", "mp3player"): 2,
    ("book-dct", "mp3player"): 2,
    ("book-dct", "book-ths", "mp3player"): 2,
    ("mp3player", "usb-charger"): 3,
    ("book-ths", "mp3player", "usb-charger"): 2,
    ("book-dct", "mp3player", "usb-charger"): 2,
    ("book-dct", "book-ths", "mp3player", "usb-charger"): 2,
}


@pytest.fixture
def db5() -> TransactionDatabase:
    return parse_database(DB5_LINES)


@pytest.fixture
def db5_path() -> Path:
    return DATA / "db5.txt"


def random_database(rng: np.random.Generator, max_items=12, max_baskets=64, max_size=8):
    n_items = int(rng.integers(1, max_items + 1))
    n_baskets = int(rng.integers(0, max_baskets + 1))
    # skewed item popularity so that larger itemsets actually become frequent
    weights = rng.dirichlet(np.full(n_items, 0.7))
    baskets = []
    for _ in range(n_baskets):
        size = int(rng.integers(1, min(max_size, n_items) + 1))
        items = rng.choice(n_items, size=size, replace=False, p=weights)
        baskets.append([f"i{k}" for k in items])
    return TransactionDatabase.from_baskets(baskets)


@st.composite
def databases(draw, max_items=8, max_baskets=30, max_size=6):
    n_items = draw(st.integers(1, max_items))
    basket = st.lists(st.integers(0, n_items - 1), min_size=1, max_size=max_size)
    rows = draw(st.lists(basket, max_size=max_baskets))
    return TransactionDatabase.from_baskets([[f"t{i}" for i in row] for row in rows])


_criteria: list[tuple[str, bool]] = []


@pytest.fixture
def criterion():
    """Record one acceptance criterion outcome for the terminal summary."""

    def record(label: str, ok: bool, detail: str = ""):
        _criteria.append((label, ok))
        assert ok, f"{label} failed {detail}".strip()

    return record


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for label, ok in _criteria:
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {label}")
