"""Pattern-growth mining on FP-trees.

The baskets are stored in a prefix tree, items inserted in descending order
of global support.  A header table links every node of an item into a
chain.  For each header item the prefix paths above its nodes form a
weighted conditional database, which is rebuilt into a fresh tree and mined
recursively.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping

from .core import (
    Itemset,
    MiningResult,
    SupportThreshold,
    TransactionDatabase,
    UnknownItemError,
    as_threshold,
    make_result,
)


@dataclass(eq=False)
class FPNode:
    item: int | None
    count: int = 0
    parent: FPNode | None = field(default=None, repr=False)
    children: dict[int, FPNode] = field(default_factory=dict, repr=False)
    next_same_item: FPNode | None = field(default=None, repr=False)

    @property
    def is_root(self) -> bool:
        return self.item is None

    def path_to_root(self) -> list[int]:
        """Items strictly above this node, nearest the root first."""
        path = []
        node = self.parent
        while node is not None and node.item is not None:
            path.append(node.item)
            node = node.parent
        path.reverse()
        return path


@dataclass(eq=False)
class HeaderRow:
    item: int
    support: int
    head: FPNode | None = None
    tail: FPNode | None = field(default=None, repr=False)

    def nodes(self) -> Iterator[FPNode]:
        node = self.head
        while node is not None:
            yield node
            node = node.next_same_item


@dataclass(frozen=True)
class WeightedBasket:
    items: tuple[int, ...]
    weight: int = 1


class FPTree:
    """An FP-tree with its header table.

    ``header`` maps each kept item to its :class:`HeaderRow`, in item order
    (most frequent first).  ``item_rank`` gives the insertion order key.
    """

    def __init__(self, item_rank: Mapping[int, int]):
        self.root = FPNode(None)
        self.item_rank = item_rank
        self.header: dict[int, HeaderRow] = {}
        self.node_count = 0

    def insert(self, items: Iterable[int], weight: int = 1) -> None:
        node = self.root
        header = self.header
        for item in items:
            child = node.children.get(item)
            if child is None:
                child = FPNode(item, 0, node)
                node.children[item] = child
                row = header[item]
                if row.tail is None:
                    row.head = child
                else:
                    row.tail.next_same_item = child
                row.tail = child
                self.node_count += 1
            child.count += weight
            node = child

    def nodes(self) -> Iterator[FPNode]:
        stack = list(self.root.children.values())
        while stack:
            node = stack.pop()
            yield node
            stack.extend(node.children.values())

    @property
    def items(self) -> list[int]:
        return list(self.header)


def support_order(supports: Mapping[int, int]) -> dict[int, int]:
    """Rank items by descending support, ties by ascending item id."""
    ordered = sorted(supports, key=lambda i: (-supports[i], i))
    return {item: rank for rank, item in enumerate(ordered)}


def _weighted_counts(baskets: list[WeightedBasket]) -> dict[int, int]:
    counts: dict[int, int] = defaultdict(int)
    for b in baskets:
        for item in b.items:
            counts[item] += b.weight
    return counts


def build_fptree(
    baskets: Iterable[WeightedBasket],
    sigma: SupportThreshold | int,
    item_rank: Mapping[int, int] | None = None,
) -> FPTree:
    """Build an FP-tree from weighted baskets, dropping infrequent items.

    A relative ``sigma`` resolves against the total basket weight.  Without
    ``item_rank`` the order is descending support within these baskets.
    """
    baskets = list(baskets)
    minsup = as_threshold(sigma).resolve(sum(b.weight for b in baskets))
    counts = _weighted_counts(baskets)
    keep = {i: c for i, c in counts.items() if c >= minsup}
    if item_rank is None:
        item_rank = support_order(keep)
    tree = FPTree(item_rank)
    for item in sorted(keep, key=item_rank.__getitem__):
        tree.header[item] = HeaderRow(item, keep[item])
    rank = item_rank.__getitem__
    for b in baskets:
        items = [i for i in b.items if i in keep]
        if items:
            items.sort(key=rank)
            tree.insert(items, b.weight)
    return tree


def prefix_paths(tree: FPTree, item: int) -> list[WeightedBasket]:
    """Conditional pattern base of ``item``: its root paths weighted by node count."""
    row = tree.header.get(item)
    if row is None:
        raise UnknownItemError(item)
    return [WeightedBasket(tuple(node.path_to_root()), node.count) for node in row.nodes()]


def _grow(tree: FPTree, suffix: Itemset, minsup: int, out: dict[Itemset, int]) -> None:
    # least frequent header item first, so its conditional base is smallest
    for item in reversed(tree.items):
        row = tree.header[item]
        itemset = suffix + (item,)
        out[tuple(sorted(itemset))] = row.support
        conditional = build_fptree(prefix_paths(tree, item), minsup, tree.item_rank)
        if conditional.header:
            _grow(conditional, itemset, minsup, out)


def mine_fpgrowth(db: TransactionDatabase, sigma: SupportThreshold | int) -> MiningResult:
    sigma = as_threshold(sigma)
    minsup = sigma.resolve(db.n)
    counts = db.item_counts()
    frequent = {i: int(c) for i, c in enumerate(counts.tolist()) if c >= minsup}
    rank = support_order(frequent)
    tree = build_fptree((WeightedBasket(b) for b in db.baskets), minsup, rank)
    supports: dict[Itemset, int] = {}
    _grow(tree, (), minsup, supports)
    return make_result(supports, sigma, db)
