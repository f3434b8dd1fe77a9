"""Finite words over an integer alphabet: order, borders, periods, factors.

Words are plain tuples of non-negative ints.  Tuple comparison gives exactly
the lexicographic order used throughout: position-wise, with a proper prefix
comparing smaller than any of its extensions.
"""

from __future__ import annotations

from .errors import EmptyWordError

Word = tuple  # tuple[int, ...]


def word(spec) -> Word:
    """Coerce ``spec`` to a word.

    Accepts compact digit strings ("2121", every digit one character),
    comma-separated strings ("2,1,2,1"), and iterables of ints.  The empty
    string and empty iterable give the empty word.
    """
    if isinstance(spec, str):
        s = spec.strip()
        if not s:
            return ()
        if "," in s:
            letters = tuple(int(part) for part in s.split(","))
        elif s.isdigit():
            letters = tuple(int(ch) for ch in s)
        else:
            raise ValueError(f"not a digit word: {spec!r}")
    else:
        letters = tuple(int(a) for a in spec)
    if any(a < 0 for a in letters):
        raise ValueError(f"letters must be non-negative: {spec!r}")
    return letters


def fmt(w) -> str:
    """Text form of a word: compact when every letter fits one digit."""
    w = tuple(w)
    if all(a <= 9 for a in w):
        return "".join(str(a) for a in w)
    return ",".join(str(a) for a in w)


def lex_compare(u, v) -> int:
    """-1, 0 or +1 for u < v, u == v, u > v in lexicographic order.

    Mixed lengths use the prefix-is-smaller convention, which is native
    tuple order.
    """
    u, v = tuple(u), tuple(v)
    return (u > v) - (u < v)


def _failure_function(w):
    """KMP failure table: pi[i] = length of the longest proper border of w[:i+1]."""
    pi = [0] * len(w)
    k = 0
    for i in range(1, len(w)):
        while k and w[i] != w[k]:
            k = pi[k - 1]
        if w[i] == w[k]:
            k += 1
        pi[i] = k
    return pi


def borders(w) -> set:
    """All lengths 0 < l < |w| such that the length-l prefix equals the suffix.

    The full set is exposed (not just the longest border): the shortest
    border is the one that drives the witness construction.
    """
    w = tuple(w)
    if not w:
        raise EmptyWordError("borders of the empty word are undefined")
    pi = _failure_function(w)
    out = set()
    b = pi[-1]
    while b:
        out.add(b)
        b = pi[b - 1]
    return out


def primitive_root(w):
    """Return (root, exponent) with w == root * exponent and root primitive.

    The smallest period is |w| minus the longest border; the word is a
    proper power exactly when that period divides |w|.
    """
    w = tuple(w)
    if not w:
        raise EmptyWordError("primitive root of the empty word is undefined")
    pi = _failure_function(w)
    period = len(w) - pi[-1]
    if len(w) % period == 0:
        return w[:period], len(w) // period
    return w, 1


def satisfies_power_condition(w) -> bool:
    """True iff w has no border, or w is a proper integer power.

    Equivalently: every way of writing w as a rational power of a primitive
    word uses an integer exponent, stated via borders and the primitive root.
    """
    w = tuple(w)
    if not w:
        raise EmptyWordError("power condition of the empty word is undefined")
    return not borders(w) or primitive_root(w)[1] >= 2


def factor_set(w, n: int) -> set:
    """All distinct length-n contiguous subwords of w.

    n == 0 gives {()}; n > |w| gives the empty set.
    """
    if n < 0:
        raise ValueError("factor length must be non-negative")
    w = tuple(w)
    if n == 0:
        return {()}
    return {w[i:i + n] for i in range(len(w) - n + 1)}
