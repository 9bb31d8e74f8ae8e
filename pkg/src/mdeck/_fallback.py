"""Pure-Python implementations of the hot kernels.

Semantics match ``_kernels.pyx`` exactly (including fingerprints); this module
is used when the compiled extension is unavailable or ``MDECK_PURE=1``.
"""
from __future__ import annotations

import numpy as np

MASK = (1 << 64) - 1
LANE_MULS = (
    (0x9E3779B97F4A7C15, 0xC2B2AE3D27D4EB4F),
    (0xD6E8FEB86659FD93, 0x165667B19E3779F9),
)


def fmix64(h: int) -> int:
    h ^= h >> 33
    h = (h * 0xFF51AFD7ED558CCD) & MASK
    h ^= h >> 33
    h = (h * 0xC4CEB9FE1A85EC53) & MASK
    h ^= h >> 33
    return h


def lane_hash(words, seed: int, lane: int) -> int:
    p1, p2 = LANE_MULS[lane]
    h = seed
    for w in words:
        h = (h + w * p1) & MASK
        h = ((h << 31) | (h >> 33)) & MASK
        h = (h * p2) & MASK
    return fmix64(h ^ len(words))


def reverse_bits(value: int, width: int) -> int:
    out = 0
    for _ in range(width):
        out = (out << 1) | (value & 1)
        value >>= 1
    return out


def deck_counts(bits, m: int) -> list[int]:
    """Single left-to-right sweep; exact Python integers."""
    off = [(1 << level) - 1 for level in range(m + 1)]
    cnt = [0] * ((1 << (m + 1)) - 1)
    cnt[0] = 1
    for depth, b in enumerate(bits):
        for level in range(min(depth + 1, m), 0, -1):
            src, dst = off[level - 1], off[level] + b
            for y in range(1 << (level - 1)):
                cnt[dst + 2 * y] += cnt[src + y]
    return cnt[off[m]:]


def _perms(m: int):
    size = 1 << m
    full = size - 1
    rev = [reverse_bits(y, m) for y in range(size)]
    comp = [full ^ y for y in range(size)]
    comprev = [full ^ rev[y] for y in range(size)]
    return rev, comp, comprev


def enumerate_unit(n, m, weight, inv_key, passes, pass_index, seed1, seed2):
    """Enumerate every string of the given weight class and fingerprint its deck.

    Decks are computed only for orbit representatives (minimal under
    reversal, plus complementation when ``2*weight == n``); the other orbit
    members are fingerprinted by permuting the representative's deck. With
    ``inv_key >= 0`` only strings whose "10"-pair count ``i`` satisfies
    ``min(i, K - i) == inv_key`` are kept (``K = weight * (n - weight)``).
    Only entries with ``fp1 % passes == pass_index`` are returned.
    """
    K = weight * (n - weight)
    selfcomp = 2 * weight == n
    full = (1 << n) - 1
    off = [(1 << level) - 1 for level in range(m + 1)]
    cnt = [0] * ((1 << (m + 1)) - 1)
    cnt[0] = 1
    rev_p, comp_p, comprev_p = _perms(m)
    base = off[m]
    size = 1 << m
    xs, f1s, f2s = [], [], []
    stats = [0, 0]  # nodes, reps

    def emit(member, perm):
        deck = cnt[base:]
        if perm is not None:
            deck = [deck[perm[y]] for y in range(size)]
        words = [m, n, *deck]
        f1 = lane_hash(words, seed1, 0)
        if f1 % passes != pass_index:
            return
        xs.append(member)
        f1s.append(f1)
        f2s.append(lane_hash(words, seed2, 1))

    def leaf(x, inv):
        if inv_key >= 0 and min(inv, K - inv) != inv_key:
            return
        r = reverse_bits(x, n)
        if x > r:
            return
        if selfcomp:
            c = full ^ x
            cr = full ^ r
            if x > c or x > cr:
                return
        stats[1] += 1
        emit(x, None)
        if r != x:
            emit(r, rev_p)
        if selfcomp:
            if c not in (x, r):
                emit(c, comp_p)
            if cr not in (x, r, c):
                emit(cr, comprev_p)

    def dfs(depth, x, ones, inv):
        stats[0] += 1
        if depth == n:
            leaf(x, inv)
            return
        ones_left = weight - ones
        zeros_left = n - depth - ones_left
        for b in (0, 1):
            if b == 0 and zeros_left == 0:
                continue
            if b == 1 and ones_left == 0:
                continue
            new_ones = ones + b
            new_inv = inv + (ones if b == 0 else 0)
            if inv_key >= 0:
                o_rem = weight - new_ones
                z_rem = n - depth - 1 - o_rem
                lo = new_inv + new_ones * z_rem
                hi = lo + o_rem * z_rem
                if not (lo <= inv_key <= hi or lo <= K - inv_key <= hi):
                    continue
            top = min(depth + 1, m)
            for level in range(top, 0, -1):
                src, dst = off[level - 1], off[level] + b
                for y in range(1 << (level - 1)):
                    cnt[dst + 2 * y] += cnt[src + y]
            dfs(depth + 1, (x << 1) | b, new_ones, new_inv)
            for level in range(1, top + 1):
                src, dst = off[level - 1], off[level] + b
                for y in range(1 << (level - 1)):
                    cnt[dst + 2 * y] -= cnt[src + y]

    dfs(0, 0, 0, 0)
    return (
        np.array(xs, dtype=np.uint64),
        np.array(f1s, dtype=np.uint64),
        np.array(f2s, dtype=np.uint64),
        stats[0],
        stats[1],
    )
