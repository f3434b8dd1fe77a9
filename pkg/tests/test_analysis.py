"""Complexity profiles, special factors, tridents, affineness, witnesses."""

import pytest

from parryscope.analysis import (
    classify_affine,
    complexity_profile,
    construct_witness,
    expected_gap_inventory,
    factor_library,
    find_tridents,
    maximal_left_special,
    special_factors,
    verify_gap_inventory,
    verify_witness,
)
from parryscope.errors import BudgetExceeded, NotApplicable
from parryscope.numeration import coding_of_segment, validate_renyi
from parryscope.substitution import build_substitution, fixed_point_prefix
from parryscope.words import word

GOLDEN = validate_renyi("11")
D2121 = validate_renyi("2121")

# the emitted non-prefix left special factor for 2121, derived by the
# construction and confirmed below by direct enumeration
W0_2121 = word("0010010200100100")


# --- complexity ----------------------------------------------------------------


def test_golden_complexity_is_minimal():
    prof = complexity_profile(GOLDEN, 30)
    assert prof.stabilized
    assert prof.values == [n + 1 for n in range(1, 31)]


def test_arnoux_rauzy_slope_two():
    prof = complexity_profile(validate_renyi("111"), 30)
    assert prof.stabilized
    assert prof.values == [2 * n + 1 for n in range(1, 31)]


def test_2121_exceeds_minimal_slope():
    prof = complexity_profile(D2121, 20)
    assert prof.stabilized
    assert any(dc > 3 for dc in prof.deltas)
    # the first excess is where the non-prefix left special factor appears
    first = next(n for n, dc in enumerate(prof.deltas, start=1) if dc > 3)
    assert first == len(W0_2121)


def test_profile_invariants():
    for base in ("11", "2121", "22", "211"):
        d = validate_renyi(base)
        prof = complexity_profile(d, 25)
        assert prof.stabilized
        m = d.m
        assert prof.c(1) == m
        assert all(dc >= m - 1 for dc in prof.deltas)
        assert all(prof.values[i] <= prof.values[i + 1] for i in range(24))
        for n in range(1, 13):
            for k in range(1, 13):
                assert prof.c(n + k) <= prof.c(n) * prof.c(k)


def test_dominant_first_digit_bounds():
    # with t_1 strictly above the interior digits, (m-1)n + 1 <= C(n) <= mn
    for base in ("11", "22", "211", "201", "2112"):
        d = validate_renyi(base)
        prof = complexity_profile(d, 30)
        assert prof.stabilized
        m = d.m
        assert all((m - 1) * n + 1 <= prof.c(n) <= m * n for n in range(1, 31))


def test_budget_exhaustion_is_honest():
    from parryscope.analysis import clear_factor_cache

    clear_factor_cache()
    prof = complexity_profile(D2121, 10, budget=64)
    assert not prof.stabilized
    with pytest.raises(BudgetExceeded):
        special_factors(D2121, 30, budget=64)


# --- special factors --------------------------------------------------------------


def test_golden_single_left_special_per_length():
    rep = special_factors(GOLDEN, 2)
    assert rep.left_special == {word("01"): (0, 1)}
    for n in range(1, 12):
        rep = special_factors(GOLDEN, n)
        assert len(rep.left_special) == 1


def test_short_left_specials_are_prefixes():
    for base in ("11", "2121", "22", "211", "3202"):
        d = validate_renyi(base)
        u = fixed_point_prefix(d, 64)
        for n in range(1, d.t1 + 1):
            rep = special_factors(d, n)
            for w in rep.left_special:
                assert w == u[:n]


def test_left_extension_balance():
    # sum of (#Lext - 1) equals the complexity increment, exactly
    for base in ("11", "2121", "22"):
        d = validate_renyi(base)
        for n in range(1, 26):
            rep = special_factors(d, n)
            assert rep.lext_excess == rep.delta


def test_prefix_left_extensions_are_full():
    # every prefix of the fixed point is left special with all m extensions
    for base in ("11", "2121", "211"):
        d = validate_renyi(base)
        u = fixed_point_prefix(d, 12)
        for n in range(1, 11):
            rep = special_factors(d, n)
            assert rep.left_special.get(u[:n]) == tuple(range(d.m))


def test_image_of_left_special_is_left_special():
    # the substitution lifts left special factors preserving extension counts
    for base in ("11", "2121", "22"):
        d = validate_renyi(base)
        s = build_substitution(d)
        for n in range(1, 6):
            rep = special_factors(d, n)
            for w, ext in rep.left_special.items():
                im = s.apply(w)
                lifted = special_factors(d, len(im)).left_special.get(im)
                assert lifted is not None and len(lifted) == len(ext)


def test_affine_power_case_has_one_left_and_p_right_specials():
    # base 21211 = (21)^2 1: one left special and |p| = 2 right specials per
    # length (at length 1 the lone right special letter carries the full
    # extension set instead)
    d = validate_renyi("21211")
    for n in range(2, 21):
        rep = special_factors(d, n)
        assert len(rep.left_special) == 1
        assert len(rep.right_special) == 2
    rep1 = special_factors(d, 1)
    assert len(rep1.left_special) == 1 and len(rep1.right_special) == 1


# --- maximal left special factors ---------------------------------------------------


def test_affine_cases_have_no_maximal_left_special():
    assert maximal_left_special(GOLDEN, 30) == []
    assert maximal_left_special(validate_renyi("21211"), 20) == []


def test_large_last_digit_produces_zero_block_maximal():
    d = validate_renyi("22")
    found = maximal_left_special(d, 6)
    assert word("000") in found  # 0^(t1 + tm - 1)


def test_2121_maximal_left_special_is_the_witness_word():
    assert maximal_left_special(D2121, 40) == [W0_2121]


# --- tridents -------------------------------------------------------------------------


def test_no_tridents_over_two_letters():
    assert find_tridents(GOLDEN, 20) == []


def test_2121_tridents():
    tridents = find_tridents(D2121, 40)
    assert tridents
    m = D2121.m
    assert any(t.rooted not in (0, m - 1) for t in tridents)
    for t in tridents:
        y, z = t.teeth
        assert len({t.rooted, y, z}) == 3
        assert t.teeth_lext[0] != t.teeth_lext[1]


def test_rooted_tooth_one_forces_dominant_digits():
    # a trident rooted at letter 1 has t_Y = t_1 for every nonzero tooth Y
    for base in ("2121", "211", "201", "21211", "3202"):
        d = validate_renyi(base)
        for t in find_tridents(d, 20):
            if t.rooted != 1:
                continue
            for a in t.teeth:
                if a != 0:
                    assert d.digits[a - 1] == d.t1, (base, t)


# --- classification ----------------------------------------------------------------------


def test_classifier_examples():
    cls = classify_affine(GOLDEN)
    assert cls.affine and (cls.slope, cls.intercept) == (1, 1)
    cls = classify_affine(validate_renyi("22"))
    assert not cls.affine and cls.reason == "tm_not_one"
    assert cls.evidence == word("000")
    cls = classify_affine(validate_renyi("21211"))
    assert cls.affine and (cls.slope, cls.intercept) == (4, 1)
    cls = classify_affine(D2121)
    assert not cls.affine and cls.reason == "fractional_power" and cls.p == word("2")


def test_classifier_oracle_agreement():
    for base, n in (("11", 30), ("2121", 20), ("21211", 40), ("111", 30), ("22", 20)):
        cls = classify_affine(validate_renyi(base), oracle_n=n)
        assert cls.oracle.stabilized and cls.oracle.agrees, base
        if not cls.affine:
            assert cls.oracle.first_excess_n is not None


# --- the gap inventory ---------------------------------------------------------------------


def test_gap_inventory_golden():
    rep = verify_gap_inventory(GOLDEN)
    assert rep.ok
    assert rep.observed == {word("101"), word("1001")}


def test_gap_inventory_families():
    expected = {
        "2121": {"102", "1003", "1001", "2001", "3001", "10001"},
        "211": {"102", "1001", "2001", "10001"},
        "201": {"12", "1001", "2001", "20001"},
    }
    for base, exp in expected.items():
        d = validate_renyi(base)
        assert expected_gap_inventory(d) == {word(s) for s in exp}
        rep = verify_gap_inventory(d)
        assert rep.ok, (base, rep.missing, rep.extra)


def test_longest_zero_run():
    for base in ("11", "2121", "211", "201", "22", "3202"):
        d = validate_renyi(base)
        rep = verify_gap_inventory(d)
        assert rep.longest_zero_run == d.t1 + d.digits[-1]


# --- the witness construction -----------------------------------------------------------------


def test_witness_not_applicable():
    with pytest.raises(NotApplicable) as exc:
        construct_witness(validate_renyi("21211"))
    assert exc.value.reason == "affine"
    with pytest.raises(NotApplicable) as exc:
        construct_witness(validate_renyi("22"))
    assert exc.value.reason == "tm_not_one"


def test_witness_2121_exact_bundle():
    b = construct_witness(D2121)
    assert b.p == word("2")
    assert b.r == 1
    assert b.p_prime == ()
    assert b.q == word("1")
    assert b.c == ()
    assert (b.h1, b.h2, b.h) == (1, 2, 1)
    assert b.a_pad == 2
    assert b.z == word("121")
    assert b.x1 == word("2000")
    assert b.x2 == word("21100")


def test_witness_2121_verification():
    b = construct_witness(D2121)
    v = verify_witness(D2121, b)
    assert v.span == 15
    assert v.pred_letters == (3, 2)
    assert v.match_k == 2 and v.succ_letter_z == 2
    assert v.coding == coding_of_segment(D2121, "", 15)
    assert v.w0 == W0_2121


def test_witness_word_is_left_special_but_not_a_prefix():
    b = construct_witness(D2121)
    v = verify_witness(D2121, b)
    n = len(v.w0)
    lib = factor_library(D2121, n + 1)
    assert lib.stabilized
    exts = lib.lext_map(n).get(bytes(v.w0))
    assert exts is not None and len(exts) >= 2
    assert v.w0 != fixed_point_prefix(D2121, n)


def test_witness_second_base():
    d = validate_renyi("212121")
    b = construct_witness(d)
    assert b.p == word("2") and b.q == word("121") and b.z == word("121")
    assert b.x1 == word("212000") and b.x2 == word("2121100")
    v = verify_witness(d, b)
    assert v.pred_letters == (3, 2)
    assert v.w0 == v.coding + (0,)
