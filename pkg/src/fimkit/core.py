"""Transaction databases, support counting and result serialization.

Items are interned to dense integer ids in first-seen order.  Every basket
and itemset is a strictly ascending tuple of those ids, which gives all
miners a common total order on items.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import IO, Iterable, Iterator, Mapping

import numpy as np

Itemset = tuple[int, ...]


class FimError(Exception):
    """Base class for errors raised by this package."""


class FormatError(FimError, ValueError):
    pass


class UnknownItemError(FimError, KeyError):
    pass


class ThresholdError(FimError, ValueError):
    pass


class CapacityError(FimError):
    pass


class ItemDictionary:
    """Bidirectional map between item tokens and dense ids."""

    def __init__(self, tokens: Iterable[str] = ()):
        self.token_to_id: dict[str, int] = {}
        self.id_to_token: list[str] = []
        for token in tokens:
            self.intern(token)

    def intern(self, token: str) -> int:
        item = self.token_to_id.get(token)
        if item is not None:
            return item
        if not token or any(c.isspace() for c in token):
            raise FormatError(f"invalid item token {token!r}")
        item = len(self.id_to_token)
        self.token_to_id[token] = item
        self.id_to_token.append(token)
        return item

    def id_of(self, token: str) -> int:
        try:
            return self.token_to_id[token]
        except KeyError:
            raise UnknownItemError(token) from None

    def token(self, item: int) -> str:
        return self.id_to_token[item]

    def __len__(self) -> int:
        return len(self.id_to_token)

    def __contains__(self, token: object) -> bool:
        return token in self.token_to_id

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ItemDictionary):
            return NotImplemented
        return self.id_to_token == other.id_to_token

    def __repr__(self) -> str:
        return f"ItemDictionary({len(self)} items)"


def intern_item(dictionary: ItemDictionary, token: str) -> int:
    return dictionary.intern(token)


@dataclass(frozen=True, eq=False)
class TransactionDatabase:
    """An immutable list of baskets over interned item ids."""

    baskets: tuple[Itemset, ...]
    dictionary: ItemDictionary = field(default_factory=ItemDictionary)

    @property
    def n(self) -> int:
        return len(self.baskets)

    def __len__(self) -> int:
        return len(self.baskets)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TransactionDatabase):
            return NotImplemented
        return self.baskets == other.baskets and self.dictionary == other.dictionary

    @classmethod
    def from_baskets(cls, baskets: Iterable[Iterable[str]]) -> TransactionDatabase:
        """Build a database from token lists, interning in first-seen order."""
        dictionary = ItemDictionary()
        intern = dictionary.intern
        rows = []
        for basket in baskets:
            ids = sorted({intern(t) for t in basket})
            if ids:
                rows.append(tuple(ids))
        return cls(tuple(rows), dictionary)

    @cached_property
    def csr(self) -> tuple[np.ndarray, np.ndarray]:
        """``(indptr, indices)`` arrays in compressed sparse row layout."""
        lengths = np.fromiter((len(b) for b in self.baskets), dtype=np.int64, count=self.n)
        indptr = np.zeros(self.n + 1, dtype=np.int64)
        np.cumsum(lengths, out=indptr[1:])
        indices = np.fromiter(
            (i for b in self.baskets for i in b), dtype=np.int32, count=int(indptr[-1])
        )
        return indptr, indices

    def item_counts(self) -> np.ndarray:
        """Support of every singleton, indexed by item id."""
        _, indices = self.csr
        return np.bincount(indices, minlength=len(self.dictionary)).astype(np.int64)

    def tokens(self, itemset: Iterable[int]) -> tuple[str, ...]:
        return tuple(self.dictionary.token(i) for i in itemset)

    def itemset(self, tokens: Iterable[str]) -> Itemset:
        """Translate tokens to a canonical itemset, raising on unknown tokens."""
        return tuple(sorted({self.dictionary.id_of(t) for t in tokens}))


def parse_database(lines: Iterable[str] | IO[str]) -> TransactionDatabase:
    """Parse one basket per non-blank line, items separated by whitespace.

    Duplicate tokens on a line collapse to one item.
    """
    return TransactionDatabase.from_baskets(line.split() for line in lines)


def read_database(path) -> TransactionDatabase:
    with open(path, encoding="utf-8") as fh:
        try:
            return parse_database(fh)
        except UnicodeDecodeError as exc:
            raise FormatError(f"{path}: not UTF-8 text ({exc.reason})") from None


def support_of(db: TransactionDatabase, itemset: Iterable[int]) -> int:
    items = set(itemset)
    for item in items:
        if not 0 <= item < len(db.dictionary):
            raise UnknownItemError(item)
    if not items:
        return db.n
    return sum(1 for basket in db.baskets if items.issubset(basket))


def relative_support(count: int, n: int) -> float:
    if n <= 0:
        raise ZeroDivisionError("relative support needs at least one basket")
    if not 0 <= count <= n:
        raise ValueError(f"count {count} outside [0, {n}]")
    return count / n


@dataclass(frozen=True)
class SupportThreshold:
    """Minimum support, either an absolute basket count or a fraction of N.

    A relative threshold resolves to ``ceil(fraction * N)``, computed on the
    decimal value of the fraction so that ``0.07 * 100`` gives 7, not 8.
    """

    value: float | int
    relative: bool = False

    def __post_init__(self):
        if self.relative:
            if not 0 < self.value <= 1:
                raise ThresholdError(f"relative support {self.value} not in (0, 1]")
        elif isinstance(self.value, bool) or int(self.value) != self.value or self.value < 1:
            raise ThresholdError(f"absolute support {self.value} must be an integer >= 1")

    @classmethod
    def absolute(cls, count: int) -> SupportThreshold:
        return cls(count, relative=False)

    @classmethod
    def fraction(cls, value: float) -> SupportThreshold:
        return cls(value, relative=True)

    @classmethod
    def parse(cls, token: str) -> SupportThreshold:
        """``"0.6"`` is relative, ``"3"`` is absolute."""
        try:
            if "." in token:
                return cls.fraction(float(token))
            return cls.absolute(int(token))
        except ValueError as exc:
            if isinstance(exc, ThresholdError):
                raise
            raise ThresholdError(f"cannot parse min support {token!r}") from None

    def resolve(self, n: int) -> int:
        if not self.relative:
            return int(self.value)
        count = math.ceil(Fraction(repr(float(self.value))) * n)
        # an empty database has nothing to report, any positive cutoff will do
        return max(count, 1)

    def __str__(self) -> str:
        return repr(float(self.value)) if self.relative else str(int(self.value))


def as_threshold(sigma: SupportThreshold | int | float) -> SupportThreshold:
    if isinstance(sigma, SupportThreshold):
        return sigma
    if isinstance(sigma, float):
        return SupportThreshold.fraction(sigma)
    return SupportThreshold.absolute(sigma)


@dataclass(frozen=True, eq=False)
class MiningResult:
    """Frequent itemsets with their absolute supports."""

    supports: Mapping[Itemset, int]
    threshold: SupportThreshold
    n: int
    dictionary: ItemDictionary

    def __len__(self) -> int:
        return len(self.supports)

    def __iter__(self) -> Iterator[tuple[Itemset, int]]:
        return iter(self.supports.items())

    def __contains__(self, itemset: object) -> bool:
        return itemset in self.supports

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MiningResult):
            return NotImplemented
        return self.by_tokens() == other.by_tokens()

    def by_tokens(self) -> dict[tuple[str, ...], int]:
        tok = self.dictionary.token
        return {tuple(sorted(tok(i) for i in s)): c for s, c in self.supports.items()}

    def canonical_lines(self) -> list[str]:
        rows = sorted(self.by_tokens().items(), key=lambda kv: (len(kv[0]), kv[0]))
        return [f"{' '.join(tokens)} : {count}" for tokens, count in rows]

    def to_text(self) -> str:
        return "".join(line + "\n" for line in self.canonical_lines())


def make_result(
    supports: Mapping[Itemset, int], sigma: SupportThreshold, db: TransactionDatabase
) -> MiningResult:
    return MiningResult(dict(supports), sigma, db.n, db.dictionary)


def write_result(result: MiningResult, sink: IO[str]) -> None:
    """Write ``tok1 tok2 : support`` lines, sorted by size then tokens."""
    sink.write(result.to_text())


def read_result(lines: Iterable[str]) -> dict[tuple[str, ...], int]:
    """Inverse of :func:`write_result`, keyed by sorted token tuples."""
    out: dict[tuple[str, ...], int] = {}
    for line in lines:
        line = line.strip()
        if not line:
            continue
        items, sep, count = line.rpartition(" : ")
        if not sep:
            raise FormatError(f"malformed result line {line!r}")
        key = tuple(sorted(items.split()))
        if key in out:
            raise FormatError(f"duplicate itemset {items!r}")
        out[key] = int(count)
    return out
