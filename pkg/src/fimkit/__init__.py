"""Frequent itemset mining: naive, Apriori, Eclat and FP-Growth miners,
a planted-itemset basket generator, and a runtime benchmark harness."""

from .apriori import mine_apriori
from .core import (
    CapacityError,
    FimError,
    FormatError,
    ItemDictionary,
    MiningResult,
    SupportThreshold,
    ThresholdError,
    TransactionDatabase,
    UnknownItemError,
    intern_item,
    parse_database,
    read_database,
    read_result,
    relative_support,
    support_of,
    write_result,
)
from .datagen import GeneratorConfig, generate
from .eclat import mine_eclat
from .fpgrowth import mine_fpgrowth
from .naive import mine_naive

__version__ = "0.1.0"

__all__ = [
    "CapacityError",
    "FimError",
    "FormatError",
    "GeneratorConfig",
    "ItemDictionary",
    "MiningResult",
    "SupportThreshold",
    "ThresholdError",
    "TransactionDatabase",
    "UnknownItemError",
    "generate",
    "intern_item",
    "mine_apriori",
    "mine_eclat",
    "mine_fpgrowth",
    "mine_naive",
    "parse_database",
    "read_database",
    "read_result",
    "relative_support",
    "support_of",
    "write_result",
]
