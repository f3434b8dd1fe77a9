"""Factor complexity, special factors, tridents, the affineness test, and the
non-affine witness construction over the beta-integers.

Factor sets are extracted from finite prefixes of the fixed point.  The word
is linearly recurrent but no computable recurrence constant is assumed:
prefixes are doubled until the factor sets of all requested lengths agree
across two consecutive doublings, and the resulting ``stabilized`` flag is
reported honestly.  The structural classifier is the authority on
affineness; enumeration is the cross-check.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field

from .errors import (
    BudgetExceeded,
    DigitwiseSubtractionFailed,
    NotApplicable,
    VerificationFailed,
)
from .numeration import (
    RenyiExpansion,
    coding_of_segment,
    is_admissible,
    next_admissible,
    pred_gap_letter,
    radix_rank,
    succ_gap_letter,
    succ_match_length,
    value_of,
)
from .substitution import (
    build_substitution,
    fixed_point_prefix_bytes,
    incidence_matrix,
    j_indices,
)
from .words import Word, borders, fmt, satisfies_power_condition, word

DEFAULT_PREFIX_BUDGET = 1_048_576


def default_budget() -> int:
    """Prefix budget: PARRYSCOPE_BUDGET overrides the built-in default."""
    v = os.environ.get("PARRYSCOPE_BUDGET")
    return int(v) if v else DEFAULT_PREFIX_BUDGET


# ---------------------------------------------------------------------------
# stabilized factor sets


@dataclass
class FactorLibrary:
    """Factor sets of the fixed point for all lengths up to ``max_len``.

    Factors are kept as bytes; the public reports convert to tuples.
    """

    d: RenyiExpansion
    max_len: int
    prefix_length: int
    stabilized: bool
    factors: list  # factors[n] = set of length-n factors (bytes)
    _lext: dict = field(default_factory=dict, repr=False)
    _rext: dict = field(default_factory=dict, repr=False)

    def count(self, n: int) -> int:
        return len(self.factors[n])

    def lext_map(self, n: int) -> dict:
        """Left extensions of every length-n factor, from the (n+1)-factors."""
        if n not in self._lext:
            ext = {}
            for f in self.factors[n + 1]:
                ext.setdefault(f[1:], set()).add(f[0])
            self._lext[n] = ext
        return self._lext[n]

    def rext_map(self, n: int) -> dict:
        if n not in self._rext:
            ext = {}
            for f in self.factors[n + 1]:
                ext.setdefault(f[:-1], set()).add(f[-1])
            self._rext[n] = ext
        return self._rext[n]

    def left_special(self, n: int) -> dict:
        return {w: e for w, e in self.lext_map(n).items() if len(e) >= 2}


_LIB_CACHE: dict = {}


def clear_factor_cache():
    _LIB_CACHE.clear()


def _phi_power_length(d: RenyiExpansion, k: int) -> int:
    """|phi^k(0)| via the incidence matrix acting on letter counts."""
    mat = incidence_matrix(build_substitution(d))
    m = d.m
    counts = [1] + [0] * (m - 1)
    for _ in range(k):
        counts = [sum(mat[a][b] * counts[b] for b in range(m)) for a in range(m)]
    return sum(counts)


def _scan_factors(prefix: bytes, max_len: int):
    sets = [{b""}]
    for n in range(1, max_len + 1):
        sets.append({prefix[i:i + n] for i in range(len(prefix) - n + 1)})
    return sets


def factor_library(d: RenyiExpansion, max_len: int, budget=None) -> FactorLibrary:
    """Factor sets up to ``max_len``, doubled to stabilization within budget."""
    if budget is None:
        budget = default_budget()
    cached = _LIB_CACHE.get(d.digits)
    if cached is not None and cached.stabilized and cached.max_len >= max_len:
        return cached
    start = max(10 * max_len, _phi_power_length(d, 2 * d.m))
    length = min(start, budget)
    prev = None
    stabilized = False
    while True:
        prefix = fixed_point_prefix_bytes(d, length)
        factors = _scan_factors(prefix, max_len)
        if prev is not None and factors == prev:
            stabilized = True
            break
        if length >= budget:
            break
        prev = factors
        length = min(2 * length, budget)
    lib = FactorLibrary(d, max_len, length, stabilized, factors)
    if stabilized:
        _LIB_CACHE[d.digits] = lib
    return lib


def _require_stable(lib: FactorLibrary):
    if not lib.stabilized:
        raise BudgetExceeded(
            f"factor sets up to length {lib.max_len} did not stabilize within "
            f"prefix {lib.prefix_length}",
            partial=lib,
        )


# ---------------------------------------------------------------------------
# complexity


@dataclass
class ComplexityProfile:
    """C(n) and its first difference over 1..n_max, with provenance."""

    d: RenyiExpansion
    n_max: int
    values: list  # C(1), ..., C(n_max)
    deltas: list  # C(2)-C(1), ..., C(n_max)-C(n_max-1)
    prefix_length_used: int
    stabilized: bool

    def c(self, n: int) -> int:
        return self.values[n - 1]

    def to_json(self):
        return {
            "d": fmt(self.d.digits),
            "n_max": self.n_max,
            "complexity": self.values,
            "deltas": self.deltas,
            "prefix_length_used": self.prefix_length_used,
            "stabilized": self.stabilized,
        }


def complexity_profile(d: RenyiExpansion, n_max: int, budget=None) -> ComplexityProfile:
    """Count distinct factors per length; partial (flagged) when unstabilized."""
    if n_max < 1:
        raise ValueError("n_max must be at least 1")
    lib = factor_library(d, n_max, budget)
    values = [lib.count(n) for n in range(1, n_max + 1)]
    deltas = [values[i + 1] - values[i] for i in range(n_max - 1)]
    return ComplexityProfile(d, n_max, values, deltas, lib.prefix_length, lib.stabilized)


# ---------------------------------------------------------------------------
# special factors


@dataclass
class SpecialFactorReport:
    """Left/right special factors of one length, with the balance identity
    sum(#Lext - 1) == C(n+1) - C(n) checked exactly."""

    d: RenyiExpansion
    n: int
    left_special: dict  # Word -> sorted tuple of extension letters
    right_special: dict
    bispecial: list
    c_n: int
    c_n1: int
    lext_excess: int
    prefix_length_used: int

    @property
    def delta(self) -> int:
        return self.c_n1 - self.c_n

    def to_json(self):
        return {
            "d": fmt(self.d.digits),
            "n": self.n,
            "left_special": [
                {"word": fmt(w), "lext": list(e)} for w, e in sorted(self.left_special.items())
            ],
            "right_special": [
                {"word": fmt(w), "rext": list(e)} for w, e in sorted(self.right_special.items())
            ],
            "bispecial": [fmt(w) for w in self.bispecial],
            "delta": self.delta,
            "lext_excess": self.lext_excess,
            "prefix_length_used": self.prefix_length_used,
        }


def special_factors(d: RenyiExpansion, n: int, budget=None) -> SpecialFactorReport:
    """Inventory of special factors at length n from stabilized factor sets."""
    if n < 1:
        raise ValueError("length must be at least 1")
    lib = factor_library(d, n + 1, budget)
    _require_stable(lib)
    lext = lib.lext_map(n)
    rext = lib.rext_map(n)
    left = {tuple(w): tuple(sorted(e)) for w, e in lext.items() if len(e) >= 2}
    right = {tuple(w): tuple(sorted(e)) for w, e in rext.items() if len(e) >= 2}
    bis = sorted(set(left) & set(right))
    excess = sum(len(lext.get(f, ())) - 1 for f in lib.factors[n])
    report = SpecialFactorReport(
        d, n, left, right, bis, lib.count(n), lib.count(n + 1), excess, lib.prefix_length
    )
    assert report.lext_excess == report.delta, (
        f"left-extension balance broken at n={n}: {report.lext_excess} != {report.delta}"
    )
    return report


def maximal_left_special(d: RenyiExpansion, bound: int, budget=None) -> list:
    """All maximal left special factors of length <= bound.

    A left special factor is maximal when no one-letter right extension is
    left special again; every one found is verified bispecial.
    """
    if bound < 1:
        raise ValueError("length bound must be at least 1")
    lib = factor_library(d, bound + 2, budget)
    _require_stable(lib)
    out = []
    for n in range(1, bound + 1):
        specials = lib.left_special(n)
        next_specials = lib.left_special(n + 1)
        rext = lib.rext_map(n)
        for w in specials:
            if any(w + bytes([a]) in next_specials for a in range(d.m)):
                continue
            assert len(rext.get(w, ())) >= 2, "maximal left special factor must be bispecial"
            out.append(tuple(w))
    return sorted(out, key=lambda w: (len(w), w))


@dataclass(frozen=True)
class Trident:
    """A factor with one left special extension and two non-special
    extensions whose unique left extensions differ."""

    word: Word
    rooted: int
    teeth: tuple  # (y, z), y < z, neither extension left special
    teeth_lext: tuple  # the corresponding unique left-extension letters

    def to_json(self):
        return {
            "word": fmt(self.word),
            "rooted": self.rooted,
            "teeth": list(self.teeth),
            "teeth_lext": list(self.teeth_lext),
        }


def find_tridents(d: RenyiExpansion, bound: int, budget=None) -> list:
    """Exhaustive trident search over stabilized factors of length <= bound."""
    if bound < 0:
        raise ValueError("length bound must be non-negative")
    lib = factor_library(d, bound + 2, budget)
    _require_stable(lib)
    out = []
    for n in range(0, bound + 1):
        lext_next = lib.lext_map(n + 1)
        for w in lib.factors[n]:
            rooted = []
            plain = []
            for a in range(d.m):
                wa = w + bytes([a])
                ext = lext_next.get(wa)
                if ext is None:
                    continue
                if len(ext) >= 2:
                    rooted.append(a)
                else:
                    plain.append((a, next(iter(ext))))
            if not rooted or len(plain) < 2:
                continue
            for x in rooted:
                for i in range(len(plain)):
                    for k in range(i + 1, len(plain)):
                        (y, ly), (z, lz) = plain[i], plain[k]
                        if ly != lz:
                            out.append(Trident(tuple(w), x, (y, z), (ly, lz)))
    return sorted(out, key=lambda t: (len(t.word), t.word, t.rooted, t.teeth))


# ---------------------------------------------------------------------------
# affineness


@dataclass
class OracleCheck:
    """Enumeration cross-check of the structural verdict."""

    n_max: int
    stabilized: bool
    prefix_length_used: int
    affine: bool  # deltas identically m-1 on the computed range
    agrees: bool
    first_excess_n: int | None
    profile: ComplexityProfile

    def to_json(self):
        return {
            "n_max": self.n_max,
            "stabilized": self.stabilized,
            "prefix_length_used": self.prefix_length_used,
            "affine": self.affine,
            "agrees": self.agrees,
            "first_excess_n": self.first_excess_n,
        }


@dataclass
class Classification:
    """Structural affineness verdict for the fixed point of the base."""

    d: RenyiExpansion
    affine: bool
    slope: int | None = None
    intercept: int | None = None
    reason: str | None = None  # "tm_not_one" | "fractional_power"
    p: Word | None = None  # shortest border, for the fractional power case
    evidence: Word | None = None  # a known non-prefix left special factor
    oracle: OracleCheck | None = None

    def to_json(self):
        if self.affine:
            verdict = {"affine": True, "slope": self.slope, "intercept": self.intercept}
        else:
            verdict = {"affine": False, "reason": self.reason}
            if self.p is not None:
                verdict["p"] = fmt(self.p)
        return {
            "d": fmt(self.d.digits),
            "m": self.d.m,
            "verdict": verdict,
            "evidence": fmt(self.evidence) if self.evidence is not None else None,
            "oracle": self.oracle.to_json() if self.oracle else None,
        }


def classify_affine(d: RenyiExpansion, oracle_n=None, budget=None) -> Classification:
    """Affine iff t_m == 1 and t_1 ... t_(m-1) is borderless or a proper power.

    With ``oracle_n`` the verdict is cross-checked against enumeration:
    affine on the computed range means the first difference of complexity is
    identically m - 1.
    """
    m = d.m
    if m == 1 or d.digits[-1] != 1:
        ev = (0,) * (d.t1 + d.digits[-1] - 1) if m >= 2 else None
        cls = Classification(d, affine=False, reason="tm_not_one", evidence=ev)
    else:
        prefix = d.digits[:-1]
        if satisfies_power_condition(prefix):
            cls = Classification(d, affine=True, slope=m - 1, intercept=1)
        else:
            p = prefix[:min(borders(prefix))]
            cls = Classification(d, affine=False, reason="fractional_power", p=p)
    if oracle_n is not None:
        prof = complexity_profile(d, oracle_n, budget)
        excess = [i + 1 for i, dc in enumerate(prof.deltas) if dc != m - 1]
        oracle_affine = not excess
        cls.oracle = OracleCheck(
            n_max=oracle_n,
            stabilized=prof.stabilized,
            prefix_length_used=prof.prefix_length_used,
            affine=oracle_affine,
            agrees=oracle_affine == cls.affine,
            first_excess_n=excess[0] if excess else None,
            profile=prof,
        )
    return cls


def full_report(d: RenyiExpansion, oracle_n=None, budget=None) -> dict:
    """Composite JSON report: verdict, enumeration data, witness, specials.

    The witness block is attached whenever the fractional power construction
    applies; the specials block summarizes per-length special factor counts
    on the oracle range.
    """
    cls = classify_affine(d, oracle_n=oracle_n, budget=budget)
    body = cls.to_json()
    prof = cls.oracle.profile if cls.oracle else None
    body["complexity"] = prof.values if prof else None
    body["deltas"] = prof.deltas if prof else None
    body["stabilized"] = prof.stabilized if prof else None
    if cls.reason == "fractional_power":
        bundle = construct_witness(d)
        body["witness"] = {
            "bundle": bundle.to_json(),
            "verification": verify_witness(d, bundle).to_json(),
        }
    else:
        body["witness"] = None
    if prof is not None and prof.stabilized and oracle_n >= 2:
        lib = factor_library(d, oracle_n, budget)
        lengths = range(1, oracle_n)
        body["specials"] = {
            "lengths": [n for n in lengths],
            "left_special_counts": [len(lib.left_special(n)) for n in lengths],
            "right_special_counts": [
                len([w for w, e in lib.rext_map(n).items() if len(e) >= 2])
                for n in lengths
            ],
        }
    else:
        body["specials"] = None
    return body


# ---------------------------------------------------------------------------
# the gap inventory


@dataclass
class GapInventoryReport:
    """Factors of the shape X 0^r Y (X, Y nonzero) against the three
    structural families; a discrepancy indicates an implementation bug."""

    d: RenyiExpansion
    expected: set
    observed: set
    longest_zero_run: int
    prefix_length_used: int

    @property
    def missing(self) -> set:
        return self.expected - self.observed

    @property
    def extra(self) -> set:
        return self.observed - self.expected

    @property
    def ok(self) -> bool:
        return self.expected == self.observed

    def to_json(self):
        return {
            "d": fmt(self.d.digits),
            "expected": sorted(fmt(w) for w in self.expected),
            "observed": sorted(fmt(w) for w in self.observed),
            "missing": sorted(fmt(w) for w in self.missing),
            "extra": sorted(fmt(w) for w in self.extra),
            "longest_zero_run": self.longest_zero_run,
            "ok": self.ok,
            "prefix_length_used": self.prefix_length_used,
        }


def expected_gap_inventory(d: RenyiExpansion) -> set:
    """The three families of X 0^r Y factors:
    j_k 0^(t_k) k for 2 <= k <= m-1, k 0^(t_1) 1 for 1 <= k <= m-1, and
    j_m 0^(t_1 + t_m) 1."""
    t = d.digits
    m = d.m
    j = j_indices(d)
    fam = set()
    for k in range(2, m):
        fam.add((j[k],) + (0,) * t[k - 1] + (k,))
    for k in range(1, m):
        fam.add((k,) + (0,) * t[0] + (1,))
    fam.add((j[m],) + (0,) * (t[0] + t[m - 1]) + (1,))
    return fam


def verify_gap_inventory(d: RenyiExpansion, budget=None) -> GapInventoryReport:
    """Extract every X 0^r Y factor from stabilized sets and compare."""
    need = d.t1 + d.digits[-1] + 2
    lib = factor_library(d, need, budget)
    _require_stable(lib)
    observed = set()
    zero_run = 0
    for n in range(1, need + 1):
        for f in lib.factors[n]:
            if n >= 2 and f[0] and f[-1] and not any(f[1:-1]):
                observed.add(tuple(f))
            if not any(f):
                zero_run = max(zero_run, n)
    return GapInventoryReport(d, expected_gap_inventory(d), observed, zero_run, lib.prefix_length)


# ---------------------------------------------------------------------------
# the non-affine witness


@dataclass(frozen=True)
class WitnessBundle:
    """Data of the witness construction for a base failing the power condition.

    The digit word factors as p^r p' q p 1 with p the shortest border of
    t_1 ... t_(m-1), p' a proper prefix of p of length j, and q starting
    below the digit p_(j+1).  c is the longest common suffix of p p' q and
    p' q p, h1/h2 the distinct digits preceding it, h their minimum, and
    a_pad = r|p| + j + 1 the zero padding of the digit-wise subtraction.
    """

    d: RenyiExpansion
    p: Word
    r: int
    p_prime: Word
    q: Word
    c: Word
    h1: int
    h2: int
    h: int
    a_pad: int
    z: Word
    x1: Word
    x2: Word

    @property
    def j(self) -> int:
        return len(self.p_prime)

    def to_json(self):
        return {
            "d": fmt(self.d.digits),
            "p": fmt(self.p),
            "r": self.r,
            "p_prime": fmt(self.p_prime),
            "q": fmt(self.q),
            "c": fmt(self.c),
            "h1": self.h1,
            "h2": self.h2,
            "h": self.h,
            "a_pad": self.a_pad,
            "z": fmt(self.z),
            "x1": fmt(self.x1),
            "x2": fmt(self.x2),
        }


def _digitwise_sub(u: Word, v: Word) -> Word:
    """Right-aligned digit-wise subtraction; no borrows may occur."""
    if len(v) > len(u):
        raise DigitwiseSubtractionFailed("subtrahend longer than minuend")
    v = (0,) * (len(u) - len(v)) + v
    out = []
    for a, b in zip(u, v):
        if b > a:
            raise DigitwiseSubtractionFailed(f"digit-wise borrow in {fmt(u)} - {fmt(v)}")
        out.append(a - b)
    return tuple(out)


def construct_witness(d: RenyiExpansion) -> WitnessBundle:
    """Build the beta-integers z, x1, x2 witnessing a non-prefix left
    special factor, for a base with t_m = 1 whose digit prefix has a border
    but is not a proper power."""
    cls = classify_affine(d)
    if cls.affine:
        raise NotApplicable("affine")
    if cls.reason == "tm_not_one":
        raise NotApplicable("tm_not_one")
    w = d.digits[:-1]
    p = w[:min(borders(w))]
    s = len(p)
    r = 1
    while w[r * s:(r + 1) * s] == p:
        r += 1
    rest = w[r * s:]
    j = 0
    while j < min(len(rest), s) and rest[j] == p[j]:
        j += 1
    p_prime = p[:j]
    q = w[r * s + j:len(w) - s]
    # structure guaranteed by the Parry condition; check rather than trust
    assert q, "q must be non-empty"
    assert w[len(w) - s:] == p, "digit prefix must end with its shortest border"
    assert q[0] < p[j], "q must start strictly below the next border digit"
    assert p * r + p_prime + q + p == w
    u1 = p + p_prime + q
    u2 = p_prime + q + p
    assert u1 != u2, "a proper power would have been classified affine"
    k = 0
    while k < len(u1) and u1[len(u1) - 1 - k] == u2[len(u2) - 1 - k]:
        k += 1
    c = u1[len(u1) - k:]
    h1, h2 = u1[len(u1) - 1 - k], u2[len(u2) - 1 - k]
    assert len(c) <= len(p) + len(q) - 1, "common suffix too long"
    h = min(h1, h2)
    a_pad = r * s + j + 1
    z = (h,) + c + p * r + p_prime + (q[0],)
    x1 = _digitwise_sub(p * r + p_prime + q + (0,) * a_pad, (h,) + c + (0,) * a_pad)
    x2 = _digitwise_sub(p * r + p_prime + q + p + (0,) * a_pad, (h,) + c + (0,) * a_pad)
    for name, y in (("z", z), ("x1", x1), ("x2", x2)):
        assert is_admissible(d, y), f"witness component {name} must be admissible"
    return WitnessBundle(d, p, r, p_prime, q, c, h1, h2, h, a_pad, z, x1, x2)


@dataclass
class WitnessVerification:
    """Outcome of checking the four witness conditions; produced only when
    all of them hold."""

    bundle: WitnessBundle
    span: int  # number of gaps in [0, z]
    coding: Word  # shared coding of [0,z], [x1,x1+z], [x2,x2+z]
    w0: Word  # the non-prefix left special factor
    x1_end: Word
    x2_end: Word
    pred_letters: tuple
    succ_letter_z: int
    match_k: int

    def to_json(self):
        return {
            "span": self.span,
            "coding": fmt(self.coding),
            "w0": fmt(self.w0),
            "x1_end": fmt(self.x1_end),
            "x2_end": fmt(self.x2_end),
            "pred_letters": list(self.pred_letters),
            "succ_letter_z": self.succ_letter_z,
            "match_k": self.match_k,
            "conditions": {"i": True, "ii": True, "iii": True, "iv": True},
        }


def _walk(d: RenyiExpansion, start: Word, steps: int):
    letters = []
    y = start
    for _ in range(steps):
        letters.append(succ_gap_letter(d, y))
        y = next_admissible(d, y)
    return tuple(letters), y


def verify_witness(d: RenyiExpansion, bundle: WitnessBundle) -> WitnessVerification:
    """Check the four conditions making coding(z)+0 a non-prefix left special
    factor.  All four are guaranteed; a failure raises VerificationFailed."""
    z, x1, x2 = bundle.z, bundle.x1, bundle.x2
    span = radix_rank(d, z)
    coding = coding_of_segment(d, (), span)
    zval = value_of(d, z)
    ends = []
    for name, x in (("x1", x1), ("x2", x2)):
        letters, end = _walk(d, x, span)
        if letters != coding:
            raise VerificationFailed("i", f"coding from {name} differs from coding from 0")
        if not (value_of(d, end) - value_of(d, x) - zval).is_zero():
            raise VerificationFailed("i", f"segment from {name} does not end at {name}+z")
        ends.append(end)
    pred1, pred2 = pred_gap_letter(d, x1), pred_gap_letter(d, x2)
    if pred1 == pred2:
        raise VerificationFailed("ii", "x1 and x2 have equal predecessor gaps")
    for name, end in (("x1", ends[0]), ("x2", ends[1])):
        if succ_gap_letter(d, end) != 0:
            raise VerificationFailed("iii", f"successor gap at {name}+z is not 1")
    k = succ_match_length(d, z)
    if succ_gap_letter(d, z) == 0:
        raise VerificationFailed("iv", "successor gap at z is 1")
    if not (0 < bundle.a_pad <= k < len(z) <= d.m):
        raise VerificationFailed("iv", f"match length {k} violates the index bounds")
    return WitnessVerification(
        bundle=bundle,
        span=span,
        coding=coding,
        w0=coding + (0,),
        x1_end=ends[0],
        x2_end=ends[1],
        pred_letters=(pred1, pred2),
        succ_letter_z=succ_gap_letter(d, z),
        match_k=k,
    )
