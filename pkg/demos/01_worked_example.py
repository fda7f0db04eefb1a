"""
Mining the five-basket example
==============================

Four miners, one tiny database.  Every miner returns the same fifteen
itemsets at a minimum support of two baskets; along the way we peek at the
data structures each one builds.
"""

import io

from fimkit import SupportThreshold, parse_database, relative_support, support_of, write_result
from fimkit.apriori import ScanCounter, mine_apriori
from fimkit.eclat import ItemsetTrie, mine_eclat, vertical_database
from fimkit.fpgrowth import WeightedBasket, build_fptree, mine_fpgrowth, prefix_paths
from fimkit.naive import mine_naive

baskets = """\
mp3player usb-charger book-dct book-ths
mp3player usb-charger
usb-charger mp3player book-dct book-ths
usb-charger
book-dct book-ths
"""
db = parse_database(io.StringIO(baskets))
print(f"{db.n} baskets over {len(db.dictionary)} items")

# Support is a count of covering baskets; dividing by N gives a fraction.
pair = db.itemset(["mp3player", "usb-charger"])
count = support_of(db, pair)
print(f"supp(mp3player, usb-charger) = {count}/{db.n} = {relative_support(count, db.n)}")

#############################################################################
# Brute force: count every subset of every basket.
sigma = SupportThreshold.absolute(2)
naive = mine_naive(db, sigma)
write_result(naive, io.StringIO())
print("\nnaive result:")
print(naive.to_text())

#############################################################################
# Apriori walks the itemset lattice level by level, scanning the database
# once per level.
counter = ScanCounter()
apriori = mine_apriori(db, sigma, counter)
print(f"apriori: {len(apriori)} itemsets in {counter.passes} database passes (levels {counter.levels})")

#############################################################################
# Eclat works on tidsets (which baskets contain an item) and stores what it
# finds in a prefix trie.
for item, tids in vertical_database(db, sigma).items():
    print(f"  cover({db.dictionary.token(item)}) = {tids.tolist()}")
trie = ItemsetTrie()
eclat = mine_eclat(db, sigma, trie)
ids = db.dictionary.id_of
print("trie support of mp3player, usb-charger:", trie.support((ids("mp3player"), ids("usb-charger"))))
print("trie support of mp3player, usb-charger, book-dct:",
      trie.support((ids("mp3player"), ids("usb-charger"), ids("book-dct"))))

#############################################################################
# FP-Growth stores the baskets themselves in a prefix tree, with a header
# table chaining together every node of the same item.
tree = build_fptree([WeightedBasket(b) for b in db.baskets], sigma)
print("\nheader table:")
for item, row in tree.header.items():
    chain = [node.count for node in row.nodes()]
    print(f"  {db.dictionary.token(item):12s} support {row.support}  chain counts {chain}")
ths = ids("book-ths")
print("prefix paths of book-ths:",
      [(db.tokens(p.items), p.weight) for p in prefix_paths(tree, ths)])
fpgrowth = mine_fpgrowth(db, sigma)

assert naive == apriori == eclat == fpgrowth
print("\nall four miners agree")
