"""Subsequence decks of binary strings and the fixed-size deletion channel."""

__version__ = "0.1.0"

from .core import (
    DeckError,
    DomainError,
    IntegrityError,
    ParseError,
    ResourceError,
    binomial,
    parse_rle,
    to_rle,
)
from .deck import (
    Deck,
    compute_deck,
    deck_to_distribution,
    fingerprint,
    marginalize,
    occurrence_count,
    transform_deck,
)
from .kernels import BACKEND
