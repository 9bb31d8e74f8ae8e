"""Exhaustive and heuristic search for deck collisions.

``check_R(m, n)`` decides whether every string of length ``n`` is determined
by its level-``m`` deck. The search is partitioned by weight (number of ones),
since strings of different weight already differ in their level-1 deck, and
optionally by the number of ``"10"`` pairs, which with the weight fixes the
level-2 deck. Only weights ``k <= n/2`` are walked: the class of weight
``n - k`` is the complement of the class of weight ``k``. Inside a class one
deck is computed per orbit under reversal (and complementation, for the
self-complementary class ``2k == n``); the rest of the orbit is fingerprinted
from permuted copies of that deck. Fingerprint matches are only candidates;
every reported collision is confirmed by comparing exact decks.
"""
from __future__ import annotations

import dataclasses
import itertools
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from importlib import resources

import numpy as np

from . import kernels
from .core import (
    DomainError,
    IntegrityError,
    ParseError,
    ResourceError,
    apply_symmetry,
    binomial,
    check_bits,
    int_to_bits,
    parse_rle,
)
from .deck import compute_deck

PARTITIONS = ("by-weight", "by-weight-and-pair-counts")
# rough peak bytes per fingerprint entry: three uint64 outputs, sort keys, permutation
BYTES_PER_ENTRY = 64
MAX_SEARCH_N = 62


def default_workers() -> int:
    try:
        return max(1, int(os.environ.get("MDECK_THREADS", "1")))
    except ValueError:
        return 1


@dataclass(frozen=True)
class SearchConfig:
    workers: int = field(default_factory=default_workers)
    partition: str = "by-weight"
    passes: int = 1
    memory_budget: int = 2 << 30
    hash_seed: int = 0
    backend: str | None = None

    def __post_init__(self):
        if self.workers < 1:
            raise DomainError("worker count must be positive")
        if self.partition not in PARTITIONS:
            raise DomainError(f"partition must be one of {PARTITIONS}")
        if self.passes < 1:
            raise DomainError("fingerprint passes must be positive")


@dataclass
class CollisionReport:
    m: int
    n: int
    holds: bool
    witness: tuple[str, str] | None = None
    strings: int = 0
    decks_computed: int = 0
    candidate_matches: int = 0
    collision_groups: int = 0
    colliding_strings: int = 0
    units: int = 0
    wall_time: float = 0.0

    @property
    def outcome(self) -> str:
        return "holds" if self.holds else "fails"

    def key_values(self, timing: bool = True) -> list[tuple[str, object]]:
        out = [
            ("m", self.m),
            ("n", self.n),
            ("outcome", self.outcome),
            ("witness", " ".join(self.witness) if self.witness else "-"),
            ("strings", self.strings),
            ("decks_computed", self.decks_computed),
            ("candidate_matches", self.candidate_matches),
            ("collision_groups", self.collision_groups),
            ("colliding_strings", self.colliding_strings),
            ("units", self.units),
        ]
        if timing:
            out.append(("wall_time", f"{self.wall_time:.3f}"))
        return out

    def deterministic_view(self) -> tuple:
        return tuple(self.key_values(timing=False))


@dataclass(frozen=True)
class VerifyResult:
    collide: bool
    y: str | None = None
    count1: int | None = None
    count2: int | None = None

    def __bool__(self):
        return self.collide


def verify_pair(x1: str, x2: str, m: int) -> VerifyResult:
    """Compare the level-``m`` decks of two equal-length strings exactly.

    On a difference, reports the lexicographically smallest ``y`` whose
    counts disagree.
    """
    check_bits(x1)
    check_bits(x2)
    if len(x1) != len(x2):
        raise DomainError("strings must have equal length")
    if m > len(x1):
        raise DomainError("m exceeds string length")
    d1, d2 = compute_deck(x1, m), compute_deck(x2, m)
    for index, (c1, c2) in enumerate(zip(d1.counts, d2.counts)):
        if c1 != c2:
            return VerifyResult(False, int_to_bits(index, m), c1, c2)
    return VerifyResult(True)


# -- exhaustive search -------------------------------------------------------


def _pair_count_table(n: int, k: int) -> list[int]:
    """Number of weight-k strings of length n with i "10" pairs, for every i.

    Coefficients of the Gaussian binomial [n choose k]_q.
    """
    # table[a][b]: polynomial for strings with a ones and b zeros
    table = [[None] * (n - k + 1) for _ in range(k + 1)]
    for a in range(k + 1):
        for b in range(n - k + 1):
            if a == 0 or b == 0:
                table[a][b] = [1]
                continue
            # last digit 0 contributes a pairs, last digit 1 contributes none
            ends1 = table[a - 1][b]
            ends0 = [0] * a + table[a][b - 1]
            size = max(len(ends1), len(ends0))
            table[a][b] = [
                (ends1[i] if i < len(ends1) else 0) + (ends0[i] if i < len(ends0) else 0)
                for i in range(size)
            ]
    return table[k][n - k]


def plan_units(m: int, n: int, cfg: SearchConfig) -> list[tuple[int, int, int, int]]:
    """Work units ``(weight, pair_key, pass_index, expected_entries)``."""
    units = []
    # pair counts are only a collision invariant when the level-2 deck is implied
    by_pairs = cfg.partition == "by-weight-and-pair-counts" and m >= 2
    for k in range(n // 2 + 1):
        if not by_pairs:
            keys = [(-1, binomial(n, k))]
        else:
            table = _pair_count_table(n, k)
            K = k * (n - k)
            keys = []
            for s in range(K // 2 + 1):
                size = table[s] + (table[K - s] if K - s != s else 0)
                if size:
                    keys.append((s, size))
        for key, size in keys:
            for p in range(cfg.passes):
                units.append((k, key, p, -(-size // cfg.passes)))
    return units


def estimate_peak_bytes(m: int, n: int, cfg: SearchConfig) -> int:
    return max(u[3] for u in plan_units(m, n, cfg)) * BYTES_PER_ENTRY


def _run_unit(args):
    n, m, k, key, passes, pass_index, hash_seed, backend = args
    xs, f1, f2, nodes, reps = kernels.enumerate_unit(
        n, m, k, key, passes, pass_index, hash_seed, backend
    )
    groups = []
    candidates = 0
    if len(xs) > 1:
        order = np.argsort(f1, kind="stable")
        s1 = f1[order]
        same = s1[1:] == s1[:-1]
        if same.any():
            starts = np.flatnonzero(np.concatenate(([True], ~same)))
            ends = np.concatenate((starts[1:], [len(xs)]))
            for a, b in zip(starts, ends):
                if b - a < 2:
                    continue
                idx = order[a:b]
                by_lane2: dict[int, list[int]] = {}
                for x, h in zip(xs[idx].tolist(), f2[idx].tolist()):
                    by_lane2.setdefault(h, []).append(x)
                for members in by_lane2.values():
                    if len(members) < 2:
                        continue
                    candidates += len(members)
                    by_deck: dict[tuple, list[int]] = {}
                    for x in members:
                        deck = compute_deck(int_to_bits(x, n), m, backend)
                        by_deck.setdefault(deck.counts, []).append(x)
                    groups.extend(sorted(g) for g in by_deck.values() if len(g) > 1)
    return groups, int(len(xs)), int(nodes), int(reps), candidates


def _map_units(jobs, workers):
    if workers == 1 or len(jobs) == 1:
        return [_run_unit(job) for job in jobs]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_run_unit, jobs, chunksize=max(1, len(jobs) // (4 * workers))))


def check_R(m: int, n: int, cfg: SearchConfig | None = None) -> CollisionReport:
    """Decide whether the level-``m`` deck determines every string of length ``n``."""
    cfg = cfg or SearchConfig()
    if m < 1 or m > n:
        raise DomainError("check_R requires 1 <= m <= n")
    if n > MAX_SEARCH_N:
        raise ResourceError(f"exhaustive search supports n <= {MAX_SEARCH_N}")
    units = plan_units(m, n, cfg)
    peak = max(u[3] for u in units) * BYTES_PER_ENTRY
    if peak > cfg.memory_budget:
        hint = (
            "--partition by-weight-and-pair-counts"
            if cfg.partition == "by-weight"
            else f"--passes {-(-peak * cfg.passes // cfg.memory_budget)}"
        )
        raise ResourceError(
            f"largest work unit needs ~{peak} bytes, budget is {cfg.memory_budget}; try {hint}"
        )
    start = time.perf_counter()
    jobs = [(n, m, k, key, cfg.passes, p, cfg.hash_seed, cfg.backend) for k, key, p, _ in units]
    results = _map_units(jobs, cfg.workers)

    full = (1 << n) - 1
    report = CollisionReport(m, n, True, units=len(units))
    best = None
    for (k, _, _, _), (groups, entries, nodes, reps, candidates) in zip(units, results):
        mirrored = 2 * k != n
        factor = 2 if mirrored else 1
        report.strings += factor * entries
        report.decks_computed += reps
        report.candidate_matches += factor * candidates
        for g in groups:
            report.collision_groups += factor
            report.colliding_strings += factor * len(g)
            options = [(g[0], g[1])]
            if mirrored:
                comp = sorted(full ^ x for x in g)
                options.append((comp[0], comp[1]))
            for pair in options:
                if best is None or pair < best:
                    best = pair
    report.wall_time = time.perf_counter() - start
    if report.strings != 1 << n:
        raise IntegrityError(f"search covered {report.strings} strings, expected {1 << n}")
    if best is not None:
        x1, x2 = int_to_bits(best[0], n), int_to_bits(best[1], n)
        if not verify_pair(x1, x2, m) or x1.count("1") != x2.count("1"):
            raise IntegrityError("witness failed exact verification")
        report.holds = False
        report.witness = (x1, x2)
    return report


@dataclass
class NResult:
    m: int
    value: int
    capped: bool
    reports: list[CollisionReport]


def compute_N(m: int, n_cap: int, cfg: SearchConfig | None = None) -> NResult:
    """Largest ``n <= n_cap`` such that level-``m`` decks separate all length-``n`` strings.

    Every length from ``m`` up is searched; the scan stops at the first
    failure. ``capped`` is set when no failure was seen up to ``n_cap``.
    """
    if m < 1 or n_cap < m:
        raise DomainError("compute_N requires 1 <= m <= n_cap")
    reports = []
    value = m - 1
    for n in range(m, n_cap + 1):
        report = check_R(m, n, cfg)
        reports.append(report)
        if not report.holds:
            return NResult(m, value, False, reports)
        value = n
    return NResult(m, value, True, reports)


# -- paper corpus ------------------------------------------------------------


@dataclass(frozen=True)
class CorpusPair:
    m: int
    n: int
    first_rle: str
    second_rle: str

    @property
    def first(self) -> str:
        return parse_rle(self.first_rle)

    @property
    def second(self) -> str:
        return parse_rle(self.second_rle)


def parse_corpus(text: str) -> list[CorpusPair]:
    pairs = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        try:
            head, body = line.split(":", 1)
            fields = dict(tok.split("=", 1) for tok in head.split())
            first, second = (part.strip() for part in body.split("|"))
            pair = CorpusPair(int(fields["m"]), int(fields["n"]), first, second)
            lengths = {len(pair.first), len(pair.second)}
        except (ValueError, KeyError, ParseError) as exc:
            raise ParseError(f"corpus line {lineno}: {exc or 'malformed'}") from None
        if lengths != {pair.n}:
            raise ParseError(f"corpus line {lineno}: strings are not both of length {pair.n}")
        pairs.append(pair)
    if not pairs:
        raise ParseError("corpus contains no pairs")
    return pairs


def load_corpus(path: str | os.PathLike | None = None) -> list[CorpusPair]:
    if path is None:
        text = resources.files("mdeck").joinpath("data/paper_pairs.txt").read_text()
    else:
        with open(path) as fh:
            text = fh.read()
    return parse_corpus(text)


# -- splice hunting ----------------------------------------------------------

_SYMMETRIES = ((False, False), (False, True), (True, False), (True, True))


def canonical_pair(u: str, v: str) -> tuple[str, str]:
    """Smallest sorted image of the pair under complement/reverse."""
    return min(
        tuple(sorted((apply_symmetry(u, c, r), apply_symmetry(v, c, r)))) for c, r in _SYMMETRIES
    )


def _inversions(x: str) -> int:
    ones = inv = 0
    for ch in x:
        if ch == "1":
            ones += 1
        else:
            inv += ones
    return inv


def hunt_collisions(
    seed_pair: tuple[str, str],
    m_target: int,
    cfg: SearchConfig | None = None,
    length_cap: int | None = None,
) -> list[tuple[str, str]]:
    """Look for level-``m_target`` collisions among splices of a colliding seed pair.

    Candidates are ``(S1 + S2[d:], S3[:L-d] + S4)`` for seed-orbit strings
    ``S1..S4`` (the seeds and their complements/reversals, length ``L``)
    and every trim ``0 <= d < L`` with ``2L - d <= length_cap``. A candidate
    survives cheap filters (equal weight, equal "10"-pair count, i.e. equal
    level-2 decks) before its level-``m_target`` decks are compared exactly.
    Returns canonical pairs (see :func:`canonical_pair`) in sorted order.
    """
    cfg = cfg or SearchConfig()
    x, y = (check_bits(s) for s in seed_pair)
    if len(x) != len(y) or x == y:
        raise DomainError("seed pair must be two distinct strings of equal length")
    seed_level = next(
        (j for j in range(min(m_target - 1, len(x)), 0, -1) if verify_pair(x, y, j)), None
    )
    if seed_level is None:
        raise DomainError(f"seed pair does not collide at any level below {m_target}")
    L = len(x)
    length_cap = 2 * L if length_cap is None else length_cap
    orbit = list(dict.fromkeys(apply_symmetry(s, c, r) for s in (x, y) for c, r in _SYMMETRIES))

    # per orbit string: prefix/suffix ones and "10" counts
    def stats(s):
        ones = [0] * (L + 1)
        inv = [0] * (L + 1)
        for i, ch in enumerate(s):
            ones[i + 1] = ones[i] + (ch == "1")
            inv[i + 1] = inv[i] + (ones[i] if ch == "0" else 0)
        return ones, inv

    info = {s: stats(s) for s in orbit}

    def prefix(s, length):
        ones, inv = info[s]
        return ones[length], inv[length], length

    def suffix(s, start):
        ones, inv = info[s]
        # pairs fully inside s[start:] = total - inside prefix - crossing
        crossing = ones[start] * ((L - start) - (ones[L] - ones[start]))
        return ones[L] - ones[start], inv[L] - inv[start] - crossing, L - start

    def join(a, b):
        ones_a, inv_a, len_a = a
        ones_b, inv_b, len_b = b
        return ones_a + ones_b, inv_a + inv_b + ones_a * (len_b - ones_b)

    found = set()
    for d in range(L):
        if 2 * L - d > length_cap:
            continue
        heads = {s: prefix(s, L) for s in orbit}
        tails = {s: suffix(s, d) for s in orbit}
        trimmed = {s: prefix(s, L - d) for s in orbit}
        left = {}
        for s1, s2 in itertools.product(orbit, repeat=2):
            left.setdefault(join(heads[s1], tails[s2]), []).append(s1 + s2[d:])
        for s3, s4 in itertools.product(orbit, repeat=2):
            key = join(trimmed[s3], heads[s4])
            if key not in left:
                continue
            v = s3[: L - d] + s4
            for u in left[key]:
                if u == v:
                    continue
                pair = canonical_pair(u, v)
                if pair in found:
                    continue
                if verify_pair(pair[0], pair[1], m_target):
                    found.add(pair)
    return sorted(found, key=lambda p: (len(p[0]), p))
