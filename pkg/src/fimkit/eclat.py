"""Depth-first frequent itemset mining over a vertical (item -> tidset) layout."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Sequence

import numpy as np

from .core import (
    Itemset,
    MiningResult,
    SupportThreshold,
    TransactionDatabase,
    as_threshold,
    make_result,
)

Tidset = np.ndarray


def intersect_tidsets(a: Sequence[int], b: Sequence[int]) -> Tidset:
    """Intersection of two strictly ascending tid arrays, itself ascending."""
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    if len(a) > len(b):
        a, b = b, a
    if len(a) == 0:
        return a
    pos = np.searchsorted(b, a)
    pos[pos == len(b)] = len(b) - 1
    return a[b[pos] == a]


def vertical_database(
    db: TransactionDatabase, sigma: SupportThreshold | int
) -> dict[int, Tidset]:
    """Tidsets of the items whose support reaches the threshold, by item id."""
    minsup = as_threshold(sigma).resolve(db.n)
    indptr, indices = db.csr
    tids = np.repeat(np.arange(db.n, dtype=np.int64), np.diff(indptr))
    # stable sort keeps tids ascending inside each item's run
    order = np.argsort(indices, kind="stable")
    items, starts, counts = np.unique(indices[order], return_index=True, return_counts=True)
    columns = {}
    for item, start, count in zip(items.tolist(), starts.tolist(), counts.tolist()):
        if count >= minsup:
            columns[item] = tids[order[start : start + count]]
    return columns


@dataclass
class TrieNode:
    item: int | None = None
    support: int = 0
    children: dict[int, TrieNode] = field(default_factory=dict)


class ItemsetTrie:
    """Prefix tree of itemsets under an empty root.

    The path from the root spells an itemset left to right and the node of
    its right-most item holds the support.
    """

    def __init__(self):
        self.root = TrieNode()
        self.size = 0

    def insert(self, itemset: Itemset, support: int) -> TrieNode:
        node = self.root
        for item in itemset:
            child = node.children.get(item)
            if child is None:
                child = node.children[item] = TrieNode(item)
            node = child
        if node.support == 0:
            self.size += 1
        node.support = support
        return node

    def support(self, itemset: Itemset) -> int:
        node = self.root
        for item in itemset:
            node = node.children.get(item)
            if node is None:
                return 0
        return node.support

    def __len__(self) -> int:
        return self.size

    def __iter__(self) -> Iterator[tuple[Itemset, int]]:
        stack = [(self.root, ())]
        while stack:
            node, path = stack.pop()
            for item, child in node.children.items():
                child_path = path + (item,)
                if child.support:
                    yield child_path, child.support
                stack.append((child, child_path))


def _extend(prefix: Itemset, columns: list[tuple[int, Tidset]], minsup: int, trie: ItemsetTrie):
    for pos, (i, cover_i) in enumerate(columns):
        itemset = prefix + (i,)
        trie.insert(itemset, len(cover_i))
        projected = []
        for j, cover_j in columns[pos + 1 :]:
            cover = intersect_tidsets(cover_i, cover_j)
            if len(cover) >= minsup:
                projected.append((j, cover))
        if projected:
            _extend(itemset, projected, minsup, trie)


def mine_eclat(
    db: TransactionDatabase, sigma: SupportThreshold | int, trie: ItemsetTrie | None = None
) -> MiningResult:
    """Mine all frequent itemsets by recursive tidset intersection.

    Prefixes are only extended with larger item ids, so every itemset is
    reached exactly once.  Pass ``trie`` to keep the accumulated prefix tree.
    """
    sigma = as_threshold(sigma)
    minsup = sigma.resolve(db.n)
    columns = sorted(vertical_database(db, minsup).items())
    if trie is None:
        trie = ItemsetTrie()
    _extend((), columns, minsup, trie)
    return make_result(dict(trie), sigma, db)
