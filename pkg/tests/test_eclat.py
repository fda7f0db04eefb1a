from functools import reduce

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fimkit.core import ThresholdError, parse_database, support_of
from fimkit.eclat import ItemsetTrie, intersect_tidsets, mine_eclat, vertical_database
from fimkit.naive import mine_naive

from conftest import DB5_SUPPORTS, random_database


def merge_intersect(a, b):
    """Two-pointer merge, independent of the searchsorted implementation."""
    out, i, j = [], 0, 0
    while i < len(a) and j < len(b):
        if a[i] == b[j]:
            out.append(a[i])
            i += 1
            j += 1
        elif a[i] < b[j]:
            i += 1
        else:
            j += 1
    return out


def test_vertical_database_worked(db5):
    columns = vertical_database(db5, 2)
    mp3, usb = db5.dictionary.id_of("mp3player"), db5.dictionary.id_of("usb-charger")
    assert columns[mp3].tolist() == [0, 1, 2]
    assert columns[usb].tolist() == [0, 1, 2, 3]


def test_vertical_database_threshold(db5):
    columns = vertical_database(db5, 4)
    assert [db5.dictionary.token(i) for i in columns] == ["usb-charger"]


def test_vertical_database_empty():
    assert vertical_database(parse_database([]), 1) == {}


def test_intersect_worked_pair():
    c = intersect_tidsets([0, 1, 2], [0, 1, 2, 3])
    assert c.tolist() == [0, 1, 2] and len(c) == 3


def test_intersect_idempotent_and_disjoint():
    a = [1, 4, 9, 16]
    assert intersect_tidsets(a, a).tolist() == a
    assert intersect_tidsets([0, 2, 4], [1, 3, 5]).tolist() == []
    assert intersect_tidsets([], [1, 2]).tolist() == []
    assert intersect_tidsets([7], [1, 2]).tolist() == []


tid_lists = st.lists(st.integers(0, 200), unique=True).map(sorted)


@settings(max_examples=200)
@given(tid_lists, tid_lists)
def test_intersect_matches_merge(a, b):
    got = intersect_tidsets(a, b).tolist()
    assert got == merge_intersect(a, b)
    assert all(x < y for x, y in zip(got, got[1:]))


def test_worked_example(db5):
    assert mine_eclat(db5, 2).by_tokens() == DB5_SUPPORTS


def test_worked_trie_supports(db5):
    trie = ItemsetTrie()
    mine_eclat(db5, 2, trie)
    ids = db5.dictionary.id_of
    assert trie.support((ids("mp3player"), ids("usb-charger"))) == 3
    assert trie.support((ids("mp3player"), ids("usb-charger"), ids("book-dct"))) == 2
    assert len(trie) == 15
    # the root holds no item and no support
    assert trie.root.item is None and trie.root.support == 0


def test_trie_shares_prefixes():
    trie = ItemsetTrie()
    trie.insert((1,), 5)
    trie.insert((1, 2), 3)
    trie.insert((1, 3), 2)
    assert list(trie.root.children) == [1]
    assert sorted(trie) == [((1,), 5), ((1, 2), 3), ((1, 3), 2)]
    assert trie.support((2,)) == 0


def test_threshold_zero_rejected(db5):
    with pytest.raises(ThresholdError):
        mine_eclat(db5, 0)


@pytest.mark.parametrize("seed", range(60))
def test_matches_naive(seed):
    rng = np.random.default_rng(2000 + seed)
    db = random_database(rng)
    sigma = int(rng.integers(1, 4))
    assert mine_eclat(db, sigma) == mine_naive(db, sigma)


@pytest.mark.parametrize("seed", range(20))
def test_tidset_invariants(seed):
    rng = np.random.default_rng(3000 + seed)
    db = random_database(rng)
    sigma = int(rng.integers(1, 4))
    columns = vertical_database(db, sigma)
    incidences = sum(1 for b in db.baskets for i in b if i in columns)
    assert sum(len(c) for c in columns.values()) == incidences
    for itemset, support in mine_eclat(db, sigma):
        cover = reduce(intersect_tidsets, (columns[i] for i in itemset))
        assert len(cover) == support == support_of(db, itemset)
