"""Synthetic basket data with planted frequent itemsets.

Lines are built from two token families: ``F<n>`` items drawn from a shared
pool and grouped into planted frequent sets, and ``I<n>`` filler items drawn
uniformly from ``item_count`` ids.  Each line picks a target length uniformly
from ``[1, max_basket_size]``; with probability ``density`` it first embeds
one planted set (members in shuffled order), then pads with distinct filler
items up to the target.  An embedded set longer than the target is kept
whole.

All randomness comes from one ``numpy.random.PCG64`` stream seeded with
``config.seed`` and consumed in fixed blocks of :data:`BLOCK` lines, so the
output is byte-identical across platforms for equal configs.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass
from typing import IO, Iterator

import numpy as np

from .core import FimError

BLOCK = 65536
MAX_PLANTED_SIZE = 8


class ConfigError(FimError, ValueError):
    pass


@dataclass(frozen=True)
class GeneratorConfig:
    basket_count: int = 10_000_000
    item_count: int = 50_000
    frequent_set_count: int = 100
    max_basket_size: int = 50
    density: float = 0.5
    seed: int = 0
    f_pool_size: int | None = None

    def __post_init__(self):
        if self.basket_count < 0:
            raise ConfigError("basket_count must be >= 0")
        if self.item_count < 1:
            raise ConfigError("item_count must be >= 1")
        if self.frequent_set_count < 0:
            raise ConfigError("frequent_set_count must be >= 0")
        if self.max_basket_size < 1:
            raise ConfigError("max_basket_size must be >= 1")
        if not 0.0 <= self.density <= 1.0:
            raise ConfigError(f"density {self.density} not in [0, 1]")
        if not 0 <= self.seed < 2**64:
            raise ConfigError("seed must be an unsigned 64-bit integer")
        if self.f_pool_size is not None and self.f_pool_size < 2:
            raise ConfigError("f_pool_size must be >= 2")

    @property
    def pool_size(self) -> int:
        """Number of distinct F items; defaults to 4 per set, at most item_count/10."""
        if self.f_pool_size is not None:
            return self.f_pool_size
        if self.frequent_set_count == 0:
            return 0
        return max(2, min(4 * self.frequent_set_count, self.item_count // 10))

    def replace(self, **changes) -> GeneratorConfig:
        return dataclasses.replace(self, **changes)


FULL_DEFAULTS = GeneratorConfig()
DESK_DEFAULTS = GeneratorConfig(basket_count=100_000, item_count=5_000, frequent_set_count=10)


@dataclass(frozen=True)
class FrequentSetPool:
    sets: tuple[tuple[int, ...], ...]
    pool: tuple[int, ...]

    def tokens(self, index: int) -> list[str]:
        return [f"F{i}" for i in self.sets[index]]


def make_rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(seed))


def build_frequent_sets(config: GeneratorConfig, rng: np.random.Generator) -> FrequentSetPool:
    """Draw ``frequent_set_count`` sets of F ids, sizes uniform on [2, min(8, max)]."""
    if config.frequent_set_count == 0:
        return FrequentSetPool((), ())
    if config.max_basket_size < 2:
        raise ConfigError("planted sets need max_basket_size >= 2")
    pool_size = config.pool_size
    largest = min(MAX_PLANTED_SIZE, config.max_basket_size, pool_size)
    sizes = rng.integers(2, largest + 1, size=config.frequent_set_count)
    sets = tuple(
        tuple(int(i) for i in rng.choice(pool_size, size=int(k), replace=False))
        for k in sizes
    )
    return FrequentSetPool(sets, tuple(sorted({i for s in sets for i in s})))


def _distinct_filler(rng: np.random.Generator, drawn: np.ndarray, want: int, item_count: int) -> list[int]:
    items = list(dict.fromkeys(drawn.tolist()))
    while len(items) < want:
        extra = int(rng.integers(0, item_count))
        if extra not in items:
            items.append(extra)
    return items


def generate(config: GeneratorConfig, flags: list[int] | None = None) -> Iterator[str]:
    """Yield ``basket_count`` lines (without newline).

    When ``flags`` is a list, one 0/1 per line is appended to it telling
    whether that line embeds a planted set.
    """
    rng = make_rng(config.seed)
    pool = build_frequent_sets(config, rng)
    set_tokens = [pool.tokens(i) for i in range(len(pool.sets))]
    filler = [f"I{i}" for i in range(config.item_count)]
    max_len = config.max_basket_size
    item_count = config.item_count
    can_embed = bool(pool.sets)

    for lo in range(0, config.basket_count, BLOCK):
        n = min(BLOCK, config.basket_count - lo)
        targets = rng.integers(1, max_len + 1, size=n)
        embed = (rng.random(n) < config.density) & can_embed
        choice = rng.integers(0, max(len(pool.sets), 1), size=n)
        # a uniform permutation of range(8) filtered to < k is uniform on range(k)
        perms = np.argsort(rng.random((n, MAX_PLANTED_SIZE)), axis=1).tolist()
        planted_len = np.zeros(n, dtype=np.int64)
        if can_embed:
            sizes = np.array([len(s) for s in pool.sets])
            planted_len[embed] = sizes[choice[embed]]
        pads = np.minimum(np.maximum(targets - planted_len, 0), item_count)
        draws = rng.integers(0, item_count, size=int(pads.sum()))
        offsets = np.concatenate(([0], np.cumsum(pads)))

        embed_l = embed.tolist()
        choice_l = choice.tolist()
        pads_l = pads.tolist()
        for r in range(n):
            want = pads_l[r]
            drawn = draws[offsets[r] : offsets[r + 1]]
            padding = drawn.tolist()
            if len(set(padding)) != want:
                padding = _distinct_filler(rng, drawn, want, item_count)
            tokens = [filler[i] for i in padding]
            if embed_l[r]:
                members = set_tokens[choice_l[r]]
                k = len(members)
                tokens = [members[p] for p in perms[r] if p < k] + tokens
            if flags is not None:
                flags.append(1 if embed_l[r] else 0)
            yield " ".join(tokens)


def write_dataset(config: GeneratorConfig, sink: IO[str], sidecar: IO[str] | None = None) -> int:
    """Write the generated lines (and optionally the 0/1 flag log); return the line count."""
    flags: list[int] | None = [] if sidecar is not None else None
    count = 0
    for line in generate(config, flags):
        sink.write(line)
        sink.write("\n")
        count += 1
        if flags:
            sidecar.write(f"{flags.pop()}\n")
    return count
