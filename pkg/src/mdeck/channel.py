"""Simulation of the fixed-size deletion channel and likelihood discrimination.

Randomness comes from numpy's PCG64 bit generator. A batch of ``count``
draws with seed ``s`` is split into chunks of ``CHUNK`` draws; chunk ``i``
uses ``PCG64(SeedSequence(s, spawn_key=(i,)))``. Each draw consumes ``n``
uniform doubles and keeps position ``i`` (0-based) when
``u_i * (n - i) < m - kept`` (selection sampling), which picks every
``m``-subset of positions with probability ``1 / C(n, m)``. Because chunks
are seeded independently of scheduling, a batch is identical for any
worker count.
"""
from __future__ import annotations

import math
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .core import DomainError, ParseError, binomial, check_bits, int_to_bits
from .deck import Deck, compute_deck

CHUNK = 4096


def make_rng(seed: int, chunk: int = 0) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed, spawn_key=(chunk,))))


def fresh_seed() -> int:
    return int(np.random.SeedSequence().entropy) & ((1 << 64) - 1)


def draw_positions(n: int, m: int, rng: np.random.Generator) -> tuple[int, ...]:
    if m > n:
        raise DomainError("m exceeds string length")
    u = rng.random(n)
    kept: list[int] = []
    for i in range(n):
        if u[i] * (n - i) < m - len(kept):
            kept.append(i)
    return tuple(kept)


def transmit(x: str, m: int, rng: np.random.Generator) -> str:
    """One use of the channel: ``m`` uniformly chosen digits of ``x``, in order."""
    check_bits(x)
    return "".join(x[i] for i in draw_positions(len(x), m, rng))


def _sample_chunk(args) -> np.ndarray:
    x, m, seed, chunk, size = args
    n = len(x)
    digits = np.frombuffer(x.encode("ascii"), dtype=np.uint8) - ord("0")
    u = make_rng(seed, chunk).random((size, n))
    kept = np.zeros(size, dtype=np.int64)
    y = np.zeros(size, dtype=np.int64)
    for i in range(n):
        take = u[:, i] * (n - i) < m - kept
        y = np.where(take, (y << 1) | int(digits[i]), y)
        kept += take
    return y


@dataclass
class SampleBatch:
    m: int
    n: int
    seed: int
    outputs: list[str]
    source: str | None = field(default=None, compare=False)

    def __post_init__(self):
        if any(len(y) != self.m for y in self.outputs):
            raise DomainError(f"every output must have length {self.m}")

    @property
    def count(self) -> int:
        return len(self.outputs)

    def to_text(self) -> str:
        head = f"samples m={self.m} n={self.n} seed={self.seed} count={self.count}"
        return "\n".join([head, *self.outputs]) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "SampleBatch":
        lines = [line.strip() for line in text.splitlines() if line.strip()]
        try:
            head = lines[0].split()
            if head[0] != "samples":
                raise ValueError
            fields = {k: int(v) for k, v in (tok.split("=", 1) for tok in head[1:])}
            m, n, seed, count = fields["m"], fields["n"], fields["seed"], fields["count"]
        except (ValueError, KeyError, IndexError):
            raise ParseError("bad samples header") from None
        outputs = lines[1:]
        if m == 0:
            outputs = [""] * count
        if len(outputs) != count:
            raise ParseError(f"header says {count} samples, found {len(outputs)}")
        for y in outputs:
            check_bits(y)
        return cls(m, n, seed, outputs)


def sample(x: str, m: int, count: int, seed: int | None = None, workers: int = 1) -> SampleBatch:
    check_bits(x)
    if m > len(x):
        raise DomainError("m exceeds string length")
    if count < 0:
        raise DomainError("count must be nonnegative")
    seed = fresh_seed() if seed is None else seed
    jobs = [
        (x, m, seed, i, min(CHUNK, count - start))
        for i, start in enumerate(range(0, count, CHUNK))
    ]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_sample_chunk, jobs))
    else:
        parts = [_sample_chunk(job) for job in jobs]
    outputs = [int_to_bits(int(v), m) for part in parts for v in part]
    return SampleBatch(m, len(x), seed, outputs, source=x)


@dataclass
class Estimate:
    frequencies: dict[str, Fraction]
    total_variation: float | None = None


def estimate_distribution(batch: SampleBatch, exact: dict[str, Fraction] | None = None) -> Estimate:
    if batch.count < 1:
        raise DomainError("need at least one sample")
    tally = Counter(batch.outputs)
    freq = {y: Fraction(c, batch.count) for y, c in sorted(tally.items())}
    tv = None
    if exact is not None:
        keys = set(exact) | set(freq)
        tv = float(sum(abs(freq.get(y, 0) - exact.get(y, 0)) for y in keys) / 2)
    return Estimate(freq, tv)


@dataclass
class Discrimination:
    loglik: dict[str, float]
    argmax: list[str]


def _exact_score(deck: Deck, tally: Counter) -> int:
    # likelihood times C(n,m)^N, an exact integer
    score = 1
    for y, k in tally.items():
        c = deck[y]
        if c == 0:
            return 0
        score *= c**k
    return score


def discriminate(batch: SampleBatch, candidates: list[str], m: int) -> Discrimination:
    """Log-likelihood of each candidate source given the observed outputs.

    Scores are compared as exact integers; candidates with equal decks share
    one computed value, so indistinguishable strings tie exactly.
    """
    if not candidates:
        raise DomainError("need at least one candidate")
    lengths = {len(check_bits(c)) for c in candidates}
    if len(lengths) != 1:
        raise DomainError("candidates must have equal length")
    (n,) = lengths
    if m > n or m != batch.m:
        raise DomainError("batch level must equal m and not exceed the candidate length")
    tally = Counter(batch.outputs)
    log_total = math.log(binomial(n, m))
    per_deck: dict[tuple, tuple[int, float]] = {}
    scores, loglik = {}, {}
    for x in candidates:
        deck = compute_deck(x, m)
        if deck.counts not in per_deck:
            score = _exact_score(deck, tally)
            if score == 0:
                ll = -math.inf
            else:
                ll = sum(k * math.log(deck[y]) for y, k in tally.items()) - batch.count * log_total
            per_deck[deck.counts] = (score, ll)
        scores[x], loglik[x] = per_deck[deck.counts]
    best = max(scores.values())
    argmax = sorted({x for x, s in scores.items() if s == best and best > 0})
    return Discrimination(loglik, argmax)
