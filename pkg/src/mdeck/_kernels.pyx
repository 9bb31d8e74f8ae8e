# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled deck kernels. See ``_fallback.py`` for the reference semantics."""
import numpy as np
cimport numpy as cnp
from libc.stdint cimport uint64_t
from libc.stdlib cimport malloc, realloc, free
from libc.string cimport memset

cnp.import_array()

cdef uint64_t P1A = 0x9E3779B97F4A7C15ULL
cdef uint64_t P2A = 0xC2B2AE3D27D4EB4FULL
cdef uint64_t P1B = 0xD6E8FEB86659FD93ULL
cdef uint64_t P2B = 0x165667B19E3779F9ULL


cdef inline uint64_t fmix64(uint64_t h) noexcept nogil:
    h ^= h >> 33
    h *= 0xFF51AFD7ED558CCDULL
    h ^= h >> 33
    h *= 0xC4CEB9FE1A85EC53ULL
    h ^= h >> 33
    return h


cdef inline uint64_t mix(uint64_t h, uint64_t w, uint64_t p1, uint64_t p2) noexcept nogil:
    h = h + w * p1
    h = (h << 31) | (h >> 33)
    return h * p2


cdef inline uint64_t reverse_bits(uint64_t v, int width) noexcept nogil:
    cdef uint64_t out = 0
    cdef int i
    for i in range(width):
        out = (out << 1) | (v & 1)
        v >>= 1
    return out


cdef struct Ctx:
    int n
    int m
    int weight
    long inv_key
    long K
    uint64_t passes
    uint64_t pass_index
    int selfcomp
    uint64_t full
    uint64_t seed1
    uint64_t seed2
    uint64_t *cnt
    long *off
    long *perm_r
    long *perm_c
    long *perm_cr
    uint64_t *out_x
    uint64_t *out_f1
    uint64_t *out_f2
    Py_ssize_t size
    Py_ssize_t cap
    uint64_t nodes
    uint64_t reps
    int oom


cdef inline void emit(Ctx *c, uint64_t member, long *perm) noexcept nogil:
    cdef long size = 1 << c.m
    cdef uint64_t *deck = c.cnt + c.off[c.m]
    cdef uint64_t h1 = c.seed1
    cdef uint64_t h2
    cdef uint64_t w
    cdef long y
    cdef uint64_t nwords = size + 2
    h1 = mix(h1, <uint64_t>c.m, P1A, P2A)
    h1 = mix(h1, <uint64_t>c.n, P1A, P2A)
    if perm == NULL:
        for y in range(size):
            h1 = mix(h1, deck[y], P1A, P2A)
    else:
        for y in range(size):
            h1 = mix(h1, deck[perm[y]], P1A, P2A)
    h1 = fmix64(h1 ^ nwords)
    if h1 % c.passes != c.pass_index:
        return
    h2 = c.seed2
    h2 = mix(h2, <uint64_t>c.m, P1B, P2B)
    h2 = mix(h2, <uint64_t>c.n, P1B, P2B)
    if perm == NULL:
        for y in range(size):
            h2 = mix(h2, deck[y], P1B, P2B)
    else:
        for y in range(size):
            h2 = mix(h2, deck[perm[y]], P1B, P2B)
    h2 = fmix64(h2 ^ nwords)
    if c.size == c.cap:
        if not grow(c):
            return
    c.out_x[c.size] = member
    c.out_f1[c.size] = h1
    c.out_f2[c.size] = h2
    c.size += 1


cdef int grow(Ctx *c) noexcept nogil:
    cdef Py_ssize_t cap = c.cap * 2 if c.cap else 1024
    cdef uint64_t *a = <uint64_t *>realloc(c.out_x, cap * sizeof(uint64_t))
    if a == NULL:
        c.oom = 1
        return 0
    c.out_x = a
    a = <uint64_t *>realloc(c.out_f1, cap * sizeof(uint64_t))
    if a == NULL:
        c.oom = 1
        return 0
    c.out_f1 = a
    a = <uint64_t *>realloc(c.out_f2, cap * sizeof(uint64_t))
    if a == NULL:
        c.oom = 1
        return 0
    c.out_f2 = a
    c.cap = cap
    return 1


cdef void leaf(Ctx *c, uint64_t x, long inv) noexcept nogil:
    cdef long other
    cdef uint64_t r, cx, cr
    if c.inv_key >= 0:
        other = c.K - inv
        if (inv if inv < other else other) != c.inv_key:
            return
    r = reverse_bits(x, c.n)
    if x > r:
        return
    if c.selfcomp:
        cx = c.full ^ x
        cr = c.full ^ r
        if x > cx or x > cr:
            return
    c.reps += 1
    emit(c, x, NULL)
    if r != x:
        emit(c, r, c.perm_r)
    if c.selfcomp:
        if cx != x and cx != r:
            emit(c, cx, c.perm_c)
        if cr != x and cr != r and cr != cx:
            emit(c, cr, c.perm_cr)


cdef void dfs(Ctx *c, int depth, uint64_t x, int ones, long inv) noexcept nogil:
    cdef int b, level, top, new_ones, o_rem, z_rem
    cdef int ones_left, zeros_left
    cdef long new_inv, lo, hi, y, half
    cdef uint64_t *src
    cdef uint64_t *dst
    c.nodes += 1
    if depth == c.n:
        leaf(c, x, inv)
        return
    ones_left = c.weight - ones
    zeros_left = c.n - depth - ones_left
    top = depth + 1 if depth + 1 < c.m else c.m
    for b in range(2):
        if c.oom:
            return
        if b == 0 and zeros_left == 0:
            continue
        if b == 1 and ones_left == 0:
            continue
        new_ones = ones + b
        new_inv = inv + (ones if b == 0 else 0)
        if c.inv_key >= 0:
            o_rem = c.weight - new_ones
            z_rem = c.n - depth - 1 - o_rem
            lo = new_inv + <long>new_ones * z_rem
            hi = lo + <long>o_rem * z_rem
            if not ((lo <= c.inv_key and c.inv_key <= hi)
                    or (lo <= c.K - c.inv_key and c.K - c.inv_key <= hi)):
                continue
        level = top
        while level >= 1:
            src = c.cnt + c.off[level - 1]
            dst = c.cnt + c.off[level] + b
            half = 1 << (level - 1)
            for y in range(half):
                dst[2 * y] += src[y]
            level -= 1
        dfs(c, depth + 1, (x << 1) | <uint64_t>b, new_ones, new_inv)
        for level in range(1, top + 1):
            src = c.cnt + c.off[level - 1]
            dst = c.cnt + c.off[level] + b
            half = 1 << (level - 1)
            for y in range(half):
                dst[2 * y] -= src[y]


def deck_counts(const unsigned char[:] bits, int m):
    """Deck of one string as uint64 counts. Caller guarantees no overflow."""
    cdef Py_ssize_t n = bits.shape[0]
    cdef long total = (1 << (m + 1)) - 1
    cdef cnp.ndarray[cnp.uint64_t, ndim=1] cnt = np.zeros(total, dtype=np.uint64)
    cdef uint64_t *p = <uint64_t *>cnt.data
    cdef Py_ssize_t depth
    cdef int level, b, top
    cdef long y, half
    cdef uint64_t *src
    cdef uint64_t *dst
    p[0] = 1
    with nogil:
        for depth in range(n):
            b = bits[depth]
            top = depth + 1 if depth + 1 < m else m
            level = top
            while level >= 1:
                src = p + ((1 << (level - 1)) - 1)
                dst = p + ((1 << level) - 1) + b
                half = 1 << (level - 1)
                for y in range(half):
                    dst[2 * y] += src[y]
                level -= 1
    return cnt[(1 << m) - 1:].copy()


def lane_hash(const cnp.uint64_t[:] words, uint64_t seed, int lane):
    cdef uint64_t h = seed
    cdef Py_ssize_t i
    cdef uint64_t p1 = P1A if lane == 0 else P1B
    cdef uint64_t p2 = P2A if lane == 0 else P2B
    for i in range(words.shape[0]):
        h = mix(h, words[i], p1, p2)
    return fmix64(h ^ <uint64_t>words.shape[0])


def enumerate_unit(int n, int m, int weight, long inv_key, uint64_t passes,
                   uint64_t pass_index, uint64_t seed1, uint64_t seed2):
    cdef Ctx c
    cdef long size = 1 << m
    cdef long y, level
    cdef uint64_t fullm = <uint64_t>(size - 1)
    cdef cnp.uint64_t[:] xv, f1v, f2v
    memset(&c, 0, sizeof(Ctx))
    c.n = n
    c.m = m
    c.weight = weight
    c.inv_key = inv_key
    c.K = <long>weight * (n - weight)
    c.passes = passes
    c.pass_index = pass_index
    c.selfcomp = 2 * weight == n
    c.full = (<uint64_t>1 << n) - 1 if n < 64 else <uint64_t>0xFFFFFFFFFFFFFFFFULL
    c.seed1 = seed1
    c.seed2 = seed2
    c.cnt = <uint64_t *>malloc(((1 << (m + 1)) - 1) * sizeof(uint64_t))
    c.off = <long *>malloc((m + 1) * sizeof(long))
    c.perm_r = <long *>malloc(size * sizeof(long))
    c.perm_c = <long *>malloc(size * sizeof(long))
    c.perm_cr = <long *>malloc(size * sizeof(long))
    try:
        if (c.cnt == NULL or c.off == NULL or c.perm_r == NULL
                or c.perm_c == NULL or c.perm_cr == NULL):
            raise MemoryError()
        memset(c.cnt, 0, ((1 << (m + 1)) - 1) * sizeof(uint64_t))
        c.cnt[0] = 1
        for level in range(m + 1):
            c.off[level] = (1 << level) - 1
        for y in range(size):
            c.perm_r[y] = <long>reverse_bits(<uint64_t>y, m)
            c.perm_c[y] = <long>(fullm ^ <uint64_t>y)
            c.perm_cr[y] = <long>(fullm ^ <uint64_t>c.perm_r[y])
        with nogil:
            dfs(&c, 0, 0, 0, 0)
        if c.oom:
            raise MemoryError("unit output does not fit in memory")
        xs = np.empty(c.size, dtype=np.uint64)
        f1 = np.empty(c.size, dtype=np.uint64)
        f2 = np.empty(c.size, dtype=np.uint64)
        xv = xs
        f1v = f1
        f2v = f2
        for y in range(c.size):
            xv[y] = c.out_x[y]
            f1v[y] = c.out_f1[y]
            f2v[y] = c.out_f2[y]
        return xs, f1, f2, c.nodes, c.reps
    finally:
        free(c.cnt)
        free(c.off)
        free(c.perm_r)
        free(c.perm_c)
        free(c.perm_cr)
        free(c.out_x)
        free(c.out_f1)
        free(c.out_f2)
