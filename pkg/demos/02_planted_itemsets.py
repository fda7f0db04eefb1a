"""
Recovering planted itemsets from generated baskets
==================================================

The generator hides a handful of "F" itemsets among uniformly drawn "I"
filler items.  At a support threshold above the filler's background rate,
the miners should find the planted sets and all their subsets, and little
else.
"""

from fimkit import GeneratorConfig, SupportThreshold, generate, mine_eclat, mine_fpgrowth, parse_database
from fimkit.datagen import build_frequent_sets, make_rng

config = GeneratorConfig(basket_count=20_000, item_count=2_000, frequent_set_count=5,
                         max_basket_size=20, density=0.4, seed=7)

# The planted sets are drawn first from the same seeded stream.
pool = build_frequent_sets(config, make_rng(config.seed))
for i, s in enumerate(pool.sets):
    print(f"planted set {i}: {' '.join(pool.tokens(i))}")

flags = []
lines = list(generate(config, flags))
print(f"\n{len(lines)} baskets, {sum(flags)} embed a planted set")
print("first lines:")
for line in lines[:5]:
    print("  ", line)

db = parse_database(lines)
sigma = SupportThreshold.fraction(0.01)
result = mine_fpgrowth(db, sigma)
assert result == mine_eclat(db, sigma)

maximal = [
    tokens for tokens in result.by_tokens()
    if not any(set(tokens) < set(other) for other in result.by_tokens())
]
print(f"\n{len(result)} frequent itemsets at {sigma} ({sigma.resolve(db.n)} baskets); maximal ones:")
for tokens in sorted(maximal, key=len, reverse=True):
    print("  ", " ".join(tokens), ":", result.by_tokens()[tokens])

planted = {tuple(sorted(pool.tokens(i))) for i in range(len(pool.sets))}
print("\nevery planted set recovered:", planted <= set(result.by_tokens()))
