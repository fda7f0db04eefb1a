"""Level-wise (breadth-first) frequent itemset mining.

Each level counts its candidates in one full pass over the database, keeps
those meeting the threshold, and joins pairs of frequent k-itemsets sharing
their first k-1 items into (k+1)-candidates whose every k-subset is frequent.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .core import (
    Itemset,
    MiningResult,
    SupportThreshold,
    TransactionDatabase,
    as_threshold,
    make_result,
)

# bytes of boolean scratch per counting block
_BLOCK_BYTES = 1 << 24


@dataclass
class CandidateSet:
    level: int
    candidates: list[Itemset]
    supports: np.ndarray | None = None

    def __len__(self) -> int:
        return len(self.candidates)


@dataclass
class FrequentLevel:
    level: int
    entries: list[tuple[Itemset, int]]

    @property
    def itemsets(self) -> list[Itemset]:
        return [s for s, _ in self.entries]


@dataclass
class ScanCounter:
    """Counts full database passes made while counting candidate supports."""

    passes: int = 0
    levels: list[int] = field(default_factory=list)


def generate_candidates(fk: FrequentLevel | list[Itemset]) -> CandidateSet:
    """Prefix join of frequent k-itemsets followed by the subset prune."""
    if isinstance(fk, FrequentLevel):
        itemsets, level = fk.itemsets, fk.level
    else:
        itemsets = list(fk)
        level = len(itemsets[0]) if itemsets else 0
    itemsets = sorted(itemsets)
    frequent = set(itemsets)
    out: list[Itemset] = []
    start = 0
    # sorted order puts every block sharing a (k-1)-prefix in a contiguous run
    while start < len(itemsets):
        prefix = itemsets[start][:-1]
        end = start + 1
        while end < len(itemsets) and itemsets[end][:-1] == prefix:
            end += 1
        for a in range(start, end):
            x = itemsets[a]
            for b in range(a + 1, end):
                cand = x + (itemsets[b][-1],)
                # the two subsets dropping either of the last items are x and y
                if all(
                    cand[:i] + cand[i + 1 :] in frequent for i in range(len(cand) - 2)
                ):
                    out.append(cand)
        start = end
    return CandidateSet(level + 1, out)


def count_candidate_supports(
    db: TransactionDatabase, cs: CandidateSet, counter: ScanCounter | None = None
) -> CandidateSet:
    """Count, for every (basket, candidate) pair, whether candidate ⊆ basket.

    The database is visited once, in row blocks; within a block the subset
    test runs on a boolean basket-by-item matrix restricted to the items
    that occur in some candidate.
    """
    supports = np.zeros(len(cs), dtype=np.int64)
    if not cs.candidates:
        return CandidateSet(cs.level, cs.candidates, supports)
    if counter is not None:
        counter.passes += 1
        counter.levels.append(cs.level)

    cand = np.asarray(cs.candidates, dtype=np.int64).reshape(len(cs), cs.level)
    cols, local = np.unique(cand, return_inverse=True)
    local = local.reshape(cand.shape)
    lookup = np.full(len(db.dictionary) + 1, -1, dtype=np.int64)
    lookup[cols] = np.arange(len(cols))

    indptr, indices = db.csr
    width = max(len(cols), len(cs))
    rows_per_block = max(1, _BLOCK_BYTES // width)
    for lo in range(0, db.n, rows_per_block):
        hi = min(lo + rows_per_block, db.n)
        seg = slice(indptr[lo], indptr[hi])
        pos = lookup[indices[seg]]
        row = np.repeat(np.arange(hi - lo), np.diff(indptr[lo : hi + 1]))
        keep = pos >= 0
        present = np.zeros((hi - lo, len(cols)), dtype=bool)
        present[row[keep], pos[keep]] = True
        covered = present[:, local[:, 0]]
        for j in range(1, cs.level):
            covered &= present[:, local[:, j]]
        supports += covered.sum(axis=0)
    return CandidateSet(cs.level, cs.candidates, supports)


def mine_apriori(
    db: TransactionDatabase,
    sigma: SupportThreshold | int,
    counter: ScanCounter | None = None,
    levels: list[FrequentLevel] | None = None,
) -> MiningResult:
    """Mine all frequent itemsets breadth first.

    If given, ``counter`` records the database passes and ``levels``
    receives every non-empty :class:`FrequentLevel` in order.
    """
    sigma = as_threshold(sigma)
    minsup = sigma.resolve(db.n)
    present = sorted({i for b in db.baskets for i in b})
    cs = CandidateSet(1, [(i,) for i in present])
    supports: dict[Itemset, int] = {}
    while cs.candidates:
        cs = count_candidate_supports(db, cs, counter)
        fk = FrequentLevel(
            cs.level,
            [(c, int(n)) for c, n in zip(cs.candidates, cs.supports) if n >= minsup],
        )
        if not fk.entries:
            break
        if levels is not None:
            levels.append(fk)
        supports.update(fk.entries)
        cs = generate_candidates(fk)
    return make_result(supports, sigma, db)

