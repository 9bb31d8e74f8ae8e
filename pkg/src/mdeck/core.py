"""Binary strings, run-length notation and exact integer helpers.

Bit strings are plain ``str`` objects over ``"0"`` and ``"1"``. Where a
string has to be packed into an integer (search kernels, deck indices) the
first digit is the most significant bit, so numeric order on equal-length
strings coincides with lexicographic order.
"""
from __future__ import annotations

import math
import re

__all__ = [
    "DeckError",
    "DomainError",
    "ParseError",
    "IntegrityError",
    "ResourceError",
    "check_bits",
    "complement",
    "reverse",
    "apply_symmetry",
    "parse_rle",
    "parse_bits",
    "to_rle",
    "runs",
    "binomial",
    "bits_to_int",
    "int_to_bits",
]


class DeckError(Exception):
    """Base class for errors raised by this package."""


class DomainError(DeckError, ValueError):
    """An argument lies outside the domain of the operation."""


class ParseError(DomainError):
    pass


class IntegrityError(DeckError):
    """Data that should be internally consistent is not (e.g. a corrupted deck)."""


class ResourceError(DeckError):
    """A computation would exceed a configured resource limit."""


_BITS = re.compile(r"[01]*")
_TOKEN = re.compile(r"(\d+)_(\d+)")
_FLIP = str.maketrans("01", "10")


def check_bits(x: str) -> str:
    if not isinstance(x, str) or not _BITS.fullmatch(x):
        raise DomainError(f"not a binary string: {x!r}")
    return x


def complement(x: str) -> str:
    return x.translate(_FLIP)


def reverse(x: str) -> str:
    return x[::-1]


def apply_symmetry(x: str, complemented: bool = False, reversed_: bool = False) -> str:
    if complemented:
        x = complement(x)
    if reversed_:
        x = reverse(x)
    return x


def parse_rle(text: str) -> str:
    """Expand ``"1_0 2_1 1_0"`` style notation into ``"0110"``.

    Input without an underscore is taken to be a plain binary string and
    returned unchanged (after validation). Adjacent runs of the same digit
    are allowed and simply concatenate.
    """
    stripped = text.strip()
    if not stripped:
        raise ParseError("empty input")
    if "_" not in stripped:
        if not _BITS.fullmatch(stripped):
            raise ParseError(f"malformed token {stripped!r}: expected digits 0/1")
        return stripped
    out = []
    for token in stripped.split():
        match = _TOKEN.fullmatch(token)
        if match is None:
            raise ParseError(f"malformed token {token!r}: expected <count>_<digit>")
        count, digit = int(match.group(1)), match.group(2)
        if count == 0:
            raise ParseError(f"malformed token {token!r}: count must be positive")
        if digit not in ("0", "1"):
            raise ParseError(f"malformed token {token!r}: digit must be 0 or 1")
        out.append(digit * count)
    return "".join(out)


def parse_bits(text: str) -> str:
    """Like :func:`parse_rle` but the empty string is accepted."""
    if not text.strip():
        return ""
    return parse_rle(text)


def runs(x: str) -> list[tuple[int, str]]:
    """Maximal runs of ``x`` as ``(count, digit)`` pairs."""
    out: list[tuple[int, str]] = []
    for digit in check_bits(x):
        if out and out[-1][1] == digit:
            out[-1] = (out[-1][0] + 1, digit)
        else:
            out.append((1, digit))
    return out


def to_rle(x: str) -> str:
    return " ".join(f"{count}_{digit}" for count, digit in runs(x))


def binomial(n: int, k: int) -> int:
    if n < 0 or k < 0:
        raise DomainError("binomial arguments must be nonnegative")
    return math.comb(n, k)


def bits_to_int(x: str) -> int:
    return int(x, 2) if x else 0


def int_to_bits(value: int, width: int) -> str:
    if width == 0:
        return ""
    return format(value, f"0{width}b")
