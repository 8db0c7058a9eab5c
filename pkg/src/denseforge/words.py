"""Finite binary words and the orders the rest of the package computes over.

A word is a plain Python ``str`` over the alphabet {'0', '1'}; the empty
string is the empty word. All operations are pure functions, so words can be
shared and compared freely.
"""

from itertools import product
from typing import Iterator, Tuple

ALPHABET = "01"


def check_word(w: str, where: str = "word") -> str:
    """Validate that *w* is a string of '0'/'1' characters; returns it."""
    if not isinstance(w, str) or any(c not in ALPHABET for c in w):
        raise ValueError(f"{where}: not a binary word: {w!r}")
    return w


def extend(w: str, s: str) -> str:
    """Concatenate *s* onto *w*; *w* is a prefix of the result."""
    return w + s


def is_prefix(u: str, w: str) -> bool:
    """True iff *w* extends *u* (equality allowed)."""
    return len(u) <= len(w) and w[: len(u)] == u


def word_slice(w: str, a: int, b: int) -> str:
    """The sub-word at positions [a, b); indices must lie within *w*."""
    if not 0 <= a <= len(w):
        raise IndexError(f"slice start {a} out of range for word of length {len(w)}")
    if not a <= b <= len(w):
        raise IndexError(f"slice end {b} out of range for word of length {len(w)}")
    return w[a:b]


def shortlex_key(w: str) -> Tuple[int, str]:
    """Sort key for the shortlex order: length first, then bits with 0 < 1."""
    return (len(w), w)


def lex_cmp(u: str, w: str) -> int:
    """Shortlex comparison: -1, 0 or 1."""
    ku, kw = shortlex_key(u), shortlex_key(w)
    if ku < kw:
        return -1
    if ku > kw:
        return 1
    return 0


def pair_shortlex_key(u: str, w: str) -> Tuple[Tuple[int, str], Tuple[int, str]]:
    """Sort key for pairs: first coordinate shortlex, then second."""
    return (shortlex_key(u), shortlex_key(w))


def interleave(u: str, w: str) -> str:
    """Positional interleave u0 w0 u1 w1 ...; lengths must agree."""
    if len(u) != len(w):
        raise ValueError(f"interleave requires equal lengths, got {len(u)} and {len(w)}")
    return "".join(a + b for a, b in zip(u, w))


def words_of_length(n: int) -> Iterator[str]:
    """All words of length exactly *n*, in lexicographic order."""
    for bits in product(ALPHABET, repeat=n):
        yield "".join(bits)


def iter_words(max_len: int) -> Iterator[str]:
    """All words of length <= *max_len*, in shortlex order."""
    for n in range(max_len + 1):
        yield from words_of_length(n)
