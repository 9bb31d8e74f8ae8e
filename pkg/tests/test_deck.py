import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mdeck.core import DomainError, IntegrityError, ParseError, apply_symmetry, binomial
from mdeck.deck import (
    Deck,
    compute_deck,
    deck_to_distribution,
    fingerprint,
    fingerprint_lanes,
    marginalize,
    occurrence_count,
    transform_deck,
)
from oracles import all_brute_decks, brute_deck, brute_occurrences

bitstrings = st.text(alphabet="01", max_size=14)


def all_strings(max_len, min_len=0):
    for n in range(min_len, max_len + 1):
        for digits in itertools.product("01", repeat=n):
            yield "".join(digits)


def test_occurrence_count_examples():
    assert occurrence_count("01", "0110") == 2
    assert brute_occurrences("01", "0110") == 2
    assert occurrence_count("", "0110") == 1
    assert occurrence_count("", "") == 1
    assert occurrence_count("0110", "01") == 0


@given(st.text(alphabet="01", max_size=5), bitstrings)
@settings(max_examples=200, deadline=None)
def test_occurrence_count_matches_enumeration(y, x):
    assert occurrence_count(y, x) == brute_occurrences(y, x)


def test_compute_deck_examples(backend):
    assert compute_deck("0110", 2, backend).as_dict() == {"00": 1, "01": 2, "10": 2, "11": 1}
    assert compute_deck("0110", 2, backend) == compute_deck("1001", 2, backend)
    assert compute_deck("0", 1, backend).counts == (1, 0)
    assert compute_deck("", 0, backend).counts == (1,)


def test_compute_deck_domain_error():
    with pytest.raises(DomainError, match="m exceeds string length"):
        compute_deck("01", 3)


def test_compute_deck_matches_subset_enumeration():
    for n in range(1, 13):
        for m in range(0, min(n, 5) + 1):
            expected = all_brute_decks(n, m)
            for value in range(1 << n):
                x = format(value, f"0{n}b")
                assert compute_deck(x, m).counts == tuple(expected[value]), (x, m)


def test_compute_deck_python_backend_small_exhaustive():
    for x in all_strings(8, 1):
        for m in range(min(len(x), 4) + 1):
            assert compute_deck(x, m, backend="python").counts == brute_deck(x, m)


def test_exact_path_beyond_machine_words():
    # C(500, 10) > 2**64, so the machine-word kernel must not be used
    x = "01" * 250
    d = compute_deck(x, 10)
    assert sum(d.counts) == binomial(500, 10) > 1 << 64
    assert d["0110100110"] == occurrence_count("0110100110", x)


def test_deck_invariants_checked():
    with pytest.raises(IntegrityError):
        Deck(2, 4, (1, 2, 2, 2))
    with pytest.raises(IntegrityError):
        Deck(2, 4, (1, 2, 2))
    with pytest.raises(DomainError):
        Deck(3, 2, (0,) * 8)


def test_marginalize_examples():
    d = compute_deck("0110", 2)
    assert marginalize(d, 1).as_dict() == {"0": 2, "1": 2}
    assert marginalize(d, 2) == d
    assert marginalize(d, 0).counts == (1,)
    with pytest.raises(DomainError):
        marginalize(d, 3)


def test_marginalize_detects_corruption():
    # sums to C(5,2) = 10 but is not the deck of any string: 10-pairs without any 1 before a 0
    bogus = Deck(2, 5, (0, 3, 4, 3))
    with pytest.raises(IntegrityError):
        marginalize(bogus, 1)


def test_marginalize_consistency_exhaustive():
    for x in all_strings(10, 1):
        for m in range(1, min(len(x), 5) + 1):
            d = compute_deck(x, m)
            for j in range(m + 1):
                assert marginalize(d, j) == compute_deck(x, j), (x, m, j)


@given(st.text(alphabet="01", min_size=6, max_size=16), st.data())
@settings(max_examples=60, deadline=None)
def test_marginalize_composes(x, data):
    m = data.draw(st.integers(0, min(6, len(x))))
    j = data.draw(st.integers(0, m))
    i = data.draw(st.integers(0, j))
    d = compute_deck(x, m)
    assert marginalize(marginalize(d, j), i) == marginalize(d, i)


def test_distribution_examples():
    dist = deck_to_distribution(compute_deck("0110", 2))
    assert dist == {
        "00": Fraction(1, 6),
        "01": Fraction(1, 3),
        "10": Fraction(1, 3),
        "11": Fraction(1, 6),
    }
    assert deck_to_distribution(compute_deck("0", 1)) == {"0": 1, "1": 0}
    assert deck_to_distribution(compute_deck("0000", 2)) == {"00": 1, "01": 0, "10": 0, "11": 0}


@given(bitstrings, st.integers(0, 5))
@settings(max_examples=100, deadline=None)
def test_distribution_sums_to_one(x, m):
    if m <= len(x):
        assert sum(deck_to_distribution(compute_deck(x, m)).values()) == 1


def test_transform_examples():
    d = compute_deck("0110", 2)
    assert transform_deck(d, complement=True) == compute_deck("1001", 2)
    assert transform_deck(d) == d
    assert transform_deck(compute_deck("01", 1), reverse=True) == compute_deck("10", 1)


def test_transform_equivariance_exhaustive():
    for x in all_strings(10, 1):
        for m in range(min(len(x), 4) + 1):
            d = compute_deck(x, m)
            for c, r in itertools.product((False, True), repeat=2):
                assert transform_deck(d, c, r) == compute_deck(apply_symmetry(x, c, r), m)


def test_fingerprint_examples():
    assert fingerprint(compute_deck("0110", 2)) == fingerprint(compute_deck("1001", 2))
    a, b = compute_deck("01", 2), compute_deck("11", 2)
    assert a != b
    assert fingerprint(a) != fingerprint(b)
    assert fingerprint(a) == fingerprint(compute_deck("01", 2))
    assert 0 <= fingerprint(a) < 1 << 128


def test_fingerprint_depends_on_seed():
    d = compute_deck("0110", 2)
    assert fingerprint(d, hash_seed=1) != fingerprint(d)


def test_fingerprint_of_huge_counts_is_deterministic():
    d = compute_deck("0" * 500, 10)
    assert d.counts[0] == binomial(500, 10) > 1 << 64
    assert fingerprint(d) == fingerprint(compute_deck("0" * 500, 10))
    assert fingerprint(d) != fingerprint(compute_deck("1" * 500, 10))


@given(bitstrings, st.integers(0, 6))
@settings(max_examples=100, deadline=None)
def test_text_round_trip(x, m):
    if m <= len(x):
        d = compute_deck(x, m)
        assert Deck.from_text(d.to_text()) == d
        assert Deck.from_text(d.to_text()).to_text() == d.to_text()


def test_text_format_layout():
    text = compute_deck("0110", 2).to_text()
    assert text == "deck m=2 n=4\n00 1\n01 2\n10 2\n11 1\n"
    assert Deck.from_text(text + "sum=6 binom=6 OK\n") == compute_deck("0110", 2)


@pytest.mark.parametrize(
    "text",
    ["", "dock m=2 n=4\n", "deck m=2 n=4\n00 1\n01 2\n10 2\n", "deck m=1 n=2\n1 1\n0 1\n"],
)
def test_text_format_errors(text):
    with pytest.raises(ParseError):
        Deck.from_text(text)


def test_fingerprint_lanes_match_search_kernel(backend):
    from mdeck import kernels

    for n, m, k in [(7, 3, 3), (8, 2, 4), (9, 4, 2)]:
        xs, f1, f2, _, _ = kernels.enumerate_unit(n, m, k, backend=backend)
        for x, a, b in zip(xs.tolist(), f1.tolist(), f2.tolist()):
            assert fingerprint_lanes(compute_deck(format(x, f"0{n}b"), m)) == (a, b)
