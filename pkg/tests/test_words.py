"""Word substrate: order, borders, primitive roots, factors.

Derived values are checked against naive reference implementations written
here with no shared machinery (direct slice comparisons, divisor scans).
"""

import random
from itertools import product

import pytest

from parryscope.errors import EmptyWordError
from parryscope.words import (
    borders,
    factor_set,
    fmt,
    lex_compare,
    primitive_root,
    satisfies_power_condition,
    word,
)

# --- naive oracles ---------------------------------------------------------


def naive_borders(w):
    return {l for l in range(1, len(w)) if w[:l] == w[-l:]}


def naive_primitive_root(w):
    n = len(w)
    for l in range(1, n + 1):
        if n % l == 0 and w[:l] * (n // l) == w:
            return w[:l], n // l
    raise AssertionError("unreachable")


def naive_power_condition(w):
    """No border at all, or an integer power with exponent >= 2."""
    if not naive_borders(w):
        return True
    return naive_primitive_root(w)[1] >= 2


# --- parsing and formatting ------------------------------------------------


def test_word_forms():
    assert word("2121") == (2, 1, 2, 1)
    assert word("2,1,2,1") == (2, 1, 2, 1)
    assert word("") == ()
    assert word([0, 10, 3]) == (0, 10, 3)
    assert fmt((2, 1, 2, 1)) == "2121"
    assert fmt((0, 10, 3)) == "0,10,3"
    assert fmt(()) == ""


def test_word_rejects_garbage():
    with pytest.raises(ValueError):
        word("abc")
    with pytest.raises(ValueError):
        word([-1, 2])


# --- lexicographic order ---------------------------------------------------


def test_lex_compare_examples():
    assert lex_compare(word("10"), word("11")) == -1
    assert lex_compare(word("1"), word("11")) == -1  # proper prefix is smaller
    assert lex_compare(word("2121"), word("2121")) == 0
    assert lex_compare(word("11"), word("1")) == 1


def test_lex_compare_total_order():
    rng = random.Random(7)
    pool = [tuple(rng.randrange(4) for _ in range(rng.randrange(7))) for _ in range(120)]
    for u in pool:
        assert lex_compare(u, u) == 0
    for u in pool[:60]:
        for v in pool[:60]:
            assert lex_compare(u, v) == -lex_compare(v, u)
    for _ in range(400):
        u, v, w = rng.sample(pool, 3)
        if lex_compare(u, v) <= 0 and lex_compare(v, w) <= 0:
            assert lex_compare(u, w) <= 0


# --- borders ----------------------------------------------------------------


def test_borders_examples():
    assert borders(word("212")) == {1}
    assert borders(word("21")) == set()
    assert borders(word("2121")) == {2}


def test_borders_empty_word():
    with pytest.raises(EmptyWordError):
        borders(())


def test_borders_exhaustive_against_naive():
    for n in range(1, 9):
        for w in product(range(3), repeat=n):
            got = borders(w)
            assert got == naive_borders(w), w
            for l in got:
                assert w[:l] == w[-l:]


# --- primitive roots ---------------------------------------------------------


def test_primitive_root_examples():
    assert primitive_root(word("2121")) == ((2, 1), 2)
    assert primitive_root(word("212")) == ((2, 1, 2), 1)
    assert primitive_root(word("111")) == ((1,), 3)


def test_primitive_root_reconstructs_and_is_primitive():
    for n in range(1, 9):
        for w in product(range(2), repeat=n):
            root, e = primitive_root(w)
            assert root * e == w
            assert naive_primitive_root(w) == (root, e)
            assert primitive_root(root)[1] == 1


# --- the power condition -----------------------------------------------------


def test_power_condition_examples():
    assert satisfies_power_condition(word("1")) is True
    assert satisfies_power_condition(word("212")) is False
    assert satisfies_power_condition(word("2121")) is True


def test_power_condition_exhaustive_against_naive():
    for n in range(1, 9):
        for w in product(range(4), repeat=n):
            assert satisfies_power_condition(w) == naive_power_condition(w), w


# --- factor sets -------------------------------------------------------------


def test_factor_set_examples():
    assert factor_set(word("01001"), 2) == {word("01"), word("10"), word("00")}
    assert factor_set(word("01001"), 0) == {()}
    assert factor_set(word("01001"), 6) == set()


def test_factor_set_size_bound():
    rng = random.Random(11)
    for _ in range(80):
        a = rng.randrange(1, 4)
        w = tuple(rng.randrange(a) for _ in range(rng.randrange(1, 30)))
        for n in range(0, len(w) + 2):
            fs = factor_set(w, n)
            if n <= len(w):
                assert len(fs) <= min(len(w) - n + 1, a ** n)
            assert all(len(f) == n for f in fs)
