"""Upper and lower bounds on the longest length separable by level-m decks.

The upper bound is a counting argument: every deck entry is an integer in
``[0, C(n, m)]``, so at most ``(C(n, m) + 1) ** (2 ** m)`` distinct decks
exist, and all ``2 ** n`` strings can only be told apart when that number is
at least ``2 ** n``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .core import DomainError, IntegrityError, binomial

# Largest separable lengths found by exhaustive search, and published caps
# (exclusive upper bounds) for levels where the exact value is unknown.
KNOWN_N = {1: 1, 2: 3, 3: 6, 4: 11, 5: 15, 6: 29}
KNOWN_CAPS = {7: 53, 8: 105}


def pigeonhole_holds(m: int, n: int) -> bool:
    """Exact test of ``(C(n, m) + 1) ** (2 ** m) >= 2 ** n``."""
    base = binomial(n, m) + 1
    # cheap exact shortcut on bit lengths before materializing the power
    lo = (base.bit_length() - 1) << m
    hi = base.bit_length() << m
    if lo >= n:
        return True
    if hi < n:
        return False
    return base ** (1 << m) >= 1 << n


def scan_limit(m: int) -> int:
    return math.ceil(m * (1 << m) / math.log(2))


def pigeonhole_max_n(m: int) -> int:
    """Largest ``n >= m`` for which the counting bound allows separation."""
    if m < 1:
        raise DomainError("m must be positive")
    n = m
    last = None
    first_failure = None
    limit = scan_limit(m)
    while first_failure is None or n <= max(first_failure, limit):
        if pigeonhole_holds(m, n):
            if first_failure is not None:
                raise IntegrityError(f"bound holds again at n={n} after failing at {first_failure}")
            last = n
        elif first_failure is None:
            first_failure = n
        n += 1
    if last is None:
        raise IntegrityError("bound fails already at n = m")
    return last


@dataclass(frozen=True)
class BoundReport:
    m: int
    pigeonhole_upper: int
    linear_lower: int | None
    known_N: int | None
    paper_cap: int | None

    @property
    def consistent(self) -> bool:
        lower = self.linear_lower if self.linear_lower is not None else 0
        ok = lower <= self.pigeonhole_upper
        if self.known_N is not None:
            ok = ok and lower <= self.known_N <= self.pigeonhole_upper
        if self.paper_cap is not None:
            ok = ok and lower <= self.paper_cap
        return ok

    def key_values(self) -> list[tuple[str, object]]:
        def show(v):
            return "-" if v is None else v

        return [
            ("lower", show(self.linear_lower)),
            ("known", show(self.known_N)),
            ("pigeonhole_upper", self.pigeonhole_upper),
            ("paper_cap", show(self.paper_cap)),
            ("consistent", "yes" if self.consistent else "no"),
        ]


def bound_report(m: int) -> BoundReport:
    if m < 1:
        raise DomainError("m must be positive")
    return BoundReport(
        m=m,
        pigeonhole_upper=pigeonhole_max_n(m),
        linear_lower=2 * m - 1 if m >= 3 else None,
        known_N=KNOWN_N.get(m),
        paper_cap=KNOWN_CAPS.get(m),
    )
