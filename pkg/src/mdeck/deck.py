"""Subsequence decks: exact counts of every length-m subsequence of a string.

The deck of ``x`` at level ``m`` stores, for every ``y`` in ``{0,1}^m``, the
number of index tuples ``i_1 < ... < i_m`` with ``x[i_1]...x[i_m] == y``.
Dividing by ``C(n, m)`` gives the output distribution of the fixed-size
deletion channel. Entries are indexed by ``y`` read as a big-endian binary
numeral.

Fingerprint scheme
------------------
A deck is serialized to 64-bit words ``[m, n, c_0, ..., c_{2^m-1}]``; a count
that does not fit below ``2**64 - 1`` is written as the escape word
``2**64 - 1``, its limb count, then its little-endian 64-bit limbs. Each of
two lanes folds the words with ``h = rotl64(h + w * P1, 31) * P2`` starting
from a lane seed, then finishes with the MurmurHash3 ``fmix64`` of
``h ^ len(words)``. Lane seeds are ``fmix64(hash_seed + pi_offset)``, see
:mod:`mdeck.kernels`. The 128-bit fingerprint is ``lane0 << 64 | lane1``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable

from . import _fallback, kernels
from .core import (
    DomainError,
    IntegrityError,
    ParseError,
    binomial,
    bits_to_int,
    check_bits,
    int_to_bits,
)

MASK = kernels.MASK


@dataclass(frozen=True)
class Deck:
    m: int
    n: int
    counts: tuple[int, ...]

    def __post_init__(self):
        if self.m < 0 or self.n < 0:
            raise DomainError("deck dimensions must be nonnegative")
        if self.m > self.n:
            raise DomainError("m exceeds string length")
        if len(self.counts) != 1 << self.m:
            raise IntegrityError(f"deck needs {1 << self.m} counts, got {len(self.counts)}")
        total = binomial(self.n, self.m)
        if any(c < 0 or c > total for c in self.counts):
            raise IntegrityError("deck count out of range [0, C(n,m)]")
        if sum(self.counts) != total:
            raise IntegrityError(
                f"deck counts sum to {sum(self.counts)}, expected C({self.n},{self.m}) = {total}"
            )

    def __getitem__(self, y: str) -> int:
        if len(y) != self.m:
            raise DomainError(f"index {y!r} is not of length {self.m}")
        return self.counts[bits_to_int(check_bits(y))]

    def items(self):
        for index, count in enumerate(self.counts):
            yield int_to_bits(index, self.m), count

    def as_dict(self) -> dict[str, int]:
        return dict(self.items())

    @property
    def total(self) -> int:
        return binomial(self.n, self.m)

    def to_text(self) -> str:
        lines = [f"deck m={self.m} n={self.n}"]
        lines.extend(f"{y} {count}" for y, count in self.items())
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "Deck":
        lines = [line for line in text.splitlines() if line.strip()]
        if not lines:
            raise ParseError("empty deck text")
        header = lines[0].split()
        try:
            if header[0] != "deck":
                raise ValueError
            fields = dict(tok.split("=", 1) for tok in header[1:])
            m, n = int(fields["m"]), int(fields["n"])
        except (ValueError, KeyError, IndexError):
            raise ParseError(f"bad deck header {lines[0]!r}") from None
        body = [line for line in lines[1:] if not line.startswith("sum=")]
        if len(body) != 1 << m:
            raise ParseError(f"expected {1 << m} deck lines, found {len(body)}")
        counts = []
        for index, line in enumerate(body):
            parts = line.split()
            if m == 0 and len(parts) == 1:
                parts = ["", parts[0]]
            if len(parts) != 2 or parts[0] != int_to_bits(index, m) or not parts[1].isdigit():
                raise ParseError(f"bad deck line {line!r}")
            counts.append(int(parts[1]))
        return cls(m, n, tuple(counts))


def _fits_machine_words(n: int, m: int) -> bool:
    # every intermediate count at level L is at most C(n, L)
    return max(binomial(n, level) for level in range(m + 1)) < (1 << 63)


def occurrence_count(y: str, x: str) -> int:
    """Number of ways ``y`` occurs as a (scattered) subsequence of ``x``."""
    check_bits(y)
    check_bits(x)
    k = len(y)
    if k > len(x):
        return 0
    ways = [1] + [0] * k
    for ch in x:
        for j in range(k, 0, -1):
            if y[j - 1] == ch:
                ways[j] += ways[j - 1]
    return ways[k]


def compute_deck(x: str, m: int, backend: str | None = None) -> Deck:
    check_bits(x)
    if m < 0:
        raise DomainError("m must be nonnegative")
    if m > len(x):
        raise DomainError("m exceeds string length")
    if _fits_machine_words(len(x), m):
        counts = kernels.fast_deck_counts(x, m, backend)
    else:
        counts = _fallback.deck_counts([1 if ch == "1" else 0 for ch in x], m)
    return Deck(m, len(x), tuple(counts))


@lru_cache(maxsize=64)
def _occurrence_table(j: int, m: int) -> tuple[tuple[int, ...], ...]:
    # row z: occurrence counts of every y in {0,1}^j inside z in {0,1}^m
    return tuple(
        tuple(_fallback.deck_counts([(z >> (m - 1 - i)) & 1 for i in range(m)], j))
        for z in range(1 << m)
    )


def marginalize(d: Deck, j: int) -> Deck:
    """The level-``j`` deck of the same string, derived from ``d`` alone.

    Every length-j subsequence of x is counted once for each of the
    ``C(n-j, m-j)`` length-m subsequences that contain it.
    """
    if j < 0 or j > d.m:
        raise DomainError(f"cannot marginalize a level-{d.m} deck to level {j}")
    if j == d.m:
        return d
    table = _occurrence_table(j, d.m)
    divisor = binomial(d.n - j, d.m - j)
    counts = []
    for y in range(1 << j):
        total = sum(c * row[y] for c, row in zip(d.counts, table) if c)
        q, r = divmod(total, divisor)
        if r:
            raise IntegrityError("inexact division while marginalizing: deck is corrupted")
        counts.append(q)
    return Deck(j, d.n, tuple(counts))


def deck_to_distribution(d: Deck) -> dict[str, Fraction]:
    total = d.total
    return {y: Fraction(c, total) for y, c in d.items()}


@lru_cache(maxsize=64)
def _symmetry_permutation(m: int, complemented: bool, reversed_: bool) -> tuple[int, ...]:
    full = (1 << m) - 1
    perm = []
    for y in range(1 << m):
        z = _fallback.reverse_bits(y, m) if reversed_ else y
        perm.append(z ^ full if complemented else z)
    return tuple(perm)


def transform_deck(d: Deck, complement: bool = False, reverse: bool = False) -> Deck:
    """Deck of the complemented and/or reversed source string."""
    if not complement and not reverse:
        return d
    perm = _symmetry_permutation(d.m, complement, reverse)
    return Deck(d.m, d.n, tuple(d.counts[p] for p in perm))


def _words(d: Deck) -> list[int]:
    words = [d.m, d.n]
    for c in d.counts:
        if c < MASK:
            words.append(c)
        else:
            limbs = []
            while c:
                limbs.append(c & MASK)
                c >>= 64
            words.extend([MASK, len(limbs), *limbs])
    return words


def fingerprint_lanes(d: Deck, hash_seed: int = 0) -> tuple[int, int]:
    seed1, seed2 = kernels.lane_seeds(hash_seed)
    words = _words(d)
    return _fallback.lane_hash(words, seed1, 0), _fallback.lane_hash(words, seed2, 1)


def fingerprint(d: Deck, hash_seed: int = 0) -> int:
    """128-bit digest of the deck; equal decks always give equal digests."""
    hi, lo = fingerprint_lanes(d, hash_seed)
    return (hi << 64) | lo


def decks_equal(decks: Iterable[Deck]) -> bool:
    decks = list(decks)
    return all(d == decks[0] for d in decks[1:])
