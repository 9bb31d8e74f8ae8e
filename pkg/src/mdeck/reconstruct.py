"""Recovering a string from its deck.

For ``n = 2m - 1`` the level-``m`` deck determines the string constructively:
the number of ones ``k`` is read off the level-1 deck, and after
complementing if necessary (so that ``k < m``) the zero-run lengths between
consecutive ones are exactly the level-``(k+1)`` counts of the strings
``1^j 0 1^(k-j)``.
"""
from __future__ import annotations

from dataclasses import dataclass

from . import kernels
from .core import (
    DomainError,
    IntegrityError,
    ResourceError,
    binomial,
    bits_to_int,
    complement,
    int_to_bits,
)
from .deck import Deck, compute_deck, fingerprint_lanes, marginalize, transform_deck

BRUTEFORCE_MAX_N = 24


@dataclass(frozen=True)
class RunProfile:
    k: int
    zero_runs: tuple[int, ...]
    complemented: bool = False

    def __post_init__(self):
        if len(self.zero_runs) != self.k + 1 or any(r < 0 for r in self.zero_runs):
            raise IntegrityError("a run profile needs k + 1 nonnegative zero runs")

    @property
    def n(self) -> int:
        return self.k + sum(self.zero_runs)

    def expand(self) -> str:
        x = "1".join("0" * r for r in self.zero_runs)
        return complement(x) if self.complemented else x


def count_ones_from_deck(d: Deck) -> int:
    if d.m < 1:
        raise DomainError("need a deck of level at least 1")
    # each one of x sits in C(n-1, m-1) of the length-m subsequences
    ones = sum(c * bin(z).count("1") for z, c in enumerate(d.counts))
    k, r = divmod(ones, binomial(d.n - 1, d.m - 1))
    if r:
        raise IntegrityError("inexact division recovering the number of ones")
    return k


def run_profile(d: Deck) -> RunProfile:
    if d.m < 3 or d.n != 2 * d.m - 1:
        raise DomainError("run-profile reconstruction needs m >= 3 and n = 2m - 1")
    k = count_ones_from_deck(d)
    flipped = k >= d.m
    if flipped:
        d = transform_deck(d, complement=True)
        k = d.n - k
    if k == 0:
        return RunProfile(0, (d.n,), flipped)
    level = marginalize(d, k + 1)
    zero_runs = tuple(level["1" * j + "0" + "1" * (k - j)] for j in range(k + 1))
    if sum(zero_runs) != d.n - k:
        raise IntegrityError("run lengths do not add up: deck is not realizable")
    return RunProfile(k, zero_runs, flipped)


def reconstruct_runs(d: Deck) -> str:
    x = run_profile(d).expand()
    if compute_deck(x, d.m) != d:
        raise IntegrityError("reconstructed string does not reproduce the deck")
    return x


def invert_deck_bruteforce(d: Deck, backend: str | None = None) -> list[str]:
    """Every string whose level-``d.m`` deck equals ``d``, in lexicographic order."""
    if d.n > BRUTEFORCE_MAX_N:
        raise ResourceError(f"brute-force inversion is limited to n <= {BRUTEFORCE_MAX_N}")
    if d.m == 0:
        return [int_to_bits(x, d.n) for x in range(1 << d.n)]
    k = count_ones_from_deck(d)
    target = fingerprint_lanes(d)
    # the kernel walks weight k <= n/2; larger weights are complements
    weight = min(k, d.n - k)
    xs, f1, f2, _, _ = kernels.enumerate_unit(d.n, d.m, weight, backend=backend)
    if weight != k:
        query = fingerprint_lanes(transform_deck(d, complement=True))
    else:
        query = target
    hits = xs[(f1 == query[0]) & (f2 == query[1])].tolist()
    out = []
    for x in hits:
        s = int_to_bits(x, d.n)
        if weight != k:
            s = complement(s)
        if compute_deck(s, d.m, backend) == d:
            out.append(s)
    return sorted(out, key=bits_to_int)
