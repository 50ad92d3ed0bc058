import pytest
from gmpy2 import mpq

from hodgesplit.freelie import (FreeLie, build_blocks, lyndon_words, necklace_count, spanned_dims,
                                standard_factorization)


def test_lyndon_words_on_two_letters():
    words = lyndon_words(2, 4)
    assert sorted(words, key=lambda w: (len(w), w)) == [(0,), (1,), (0, 1), (0, 0, 1), (0, 1, 1), (0, 0, 0, 1),
                                                        (0, 0, 1, 1), (0, 1, 1, 1)]


@pytest.mark.parametrize("k", [1, 2, 3])
def test_lyndon_counts_match_necklace_formula(k):
    words = lyndon_words(k, 6)
    for length in range(1, 7):
        assert sum(1 for w in words if len(w) == length) == necklace_count(k, length)


def test_standard_factorization():
    u, v = standard_factorization((0, 0, 1))
    assert (u, v) == ((0,), (0, 1))


def test_graded_commutator_signs():
    L = FreeLie([1])
    x = L.gen(0)
    assert L.bracket(x, x) == {(0, 0): mpq(2)}
    E = FreeLie([0, 0])
    assert E.bracket(E.gen(0), E.gen(0)) == {}


@pytest.mark.parametrize("degrees", [[0, 0], [1], [1, 1], [0, 1], [1, 2], [2, 3, 1]])
def test_basis_matches_brute_force_span(degrees):
    L = FreeLie(degrees)
    blocks = build_blocks(L, 4)
    counted = {key: len(b.labels) for key, b in blocks.items()}
    assert counted == spanned_dims(L, 4)


def test_block_coordinates_round_trip():
    L = FreeLie([1, 1])
    blocks = build_blocks(L, 3)
    for b in blocks.values():
        for i, el in enumerate(b.elements):
            coords = b.coordinates(el)
            assert coords[i] == 1 and sum(1 for c in coords if c) == 1


def test_degree_filter():
    L = FreeLie([1, 2])
    blocks = build_blocks(L, 4, {3})
    assert {deg for _, deg in blocks} == {3}
