"""Brute-force frequent itemset mining, used as the ground-truth oracle."""

from __future__ import annotations

from collections import Counter
from itertools import combinations

import numpy as np

from .core import (
    CapacityError,
    MiningResult,
    SupportThreshold,
    TransactionDatabase,
    as_threshold,
    make_result,
)

MAX_BASKET_SIZE = 20
MAX_DISTINCT_ITEMS = 24


def _check_guards(db: TransactionDatabase) -> None:
    longest = max((len(b) for b in db.baskets), default=0)
    if longest > MAX_BASKET_SIZE:
        raise CapacityError(
            f"naive miner limited to baskets of {MAX_BASKET_SIZE} items, got {longest}"
        )
    distinct = len({i for b in db.baskets for i in b})
    if distinct > MAX_DISTINCT_ITEMS:
        raise CapacityError(
            f"naive miner limited to {MAX_DISTINCT_ITEMS} distinct items, got {distinct}"
        )


def count_subsets(db: TransactionDatabase) -> Counter:
    """Count every non-empty subset of every basket."""
    counts: Counter = Counter()
    for basket in db.baskets:
        for k in range(1, len(basket) + 1):
            counts.update(combinations(basket, k))
    return counts


def mine_naive(db: TransactionDatabase, sigma: SupportThreshold | int) -> MiningResult:
    sigma = as_threshold(sigma)
    _check_guards(db)
    minsup = sigma.resolve(db.n)
    counts = count_subsets(db)
    return make_result({s: c for s, c in counts.items() if c >= minsup}, sigma, db)


def mine_naive_powerset(db: TransactionDatabase, sigma: SupportThreshold | int) -> MiningResult:
    """The textbook formulation: one counter per member of the item power set.

    Each basket is a bitmask over the distinct items and every candidate mask
    it covers is incremented.  Memory is ``2**|items|`` counters.
    """
    sigma = as_threshold(sigma)
    _check_guards(db)
    minsup = sigma.resolve(db.n)
    items = sorted({i for b in db.baskets for i in b})
    bit = {item: 1 << pos for pos, item in enumerate(items)}
    masks = np.arange(1 << len(items), dtype=np.int64)
    counts = np.zeros_like(masks)
    for basket in db.baskets:
        b = sum(bit[i] for i in basket)
        counts += (masks & b) == masks
    counts[0] = 0
    supports = {}
    for mask in np.flatnonzero(counts >= minsup):
        itemset = tuple(item for pos, item in enumerate(items) if mask >> pos & 1)
        supports[itemset] = int(counts[mask])
    return make_result(supports, sigma, db)
