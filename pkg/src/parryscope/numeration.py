"""Beta-numeration for simple Parry bases.

Everything about the base itself lives here: validation of the expansion of 1
against the Parry condition, admissibility of digit strings, the quasi-greedy
expansion, exact arithmetic in Z[beta], greedy expansion of integers, and the
successor/predecessor structure of the non-negative beta-integers.

The base beta is the largest real root of

    x^m - t_1 x^(m-1) - ... - t_m

and is never represented approximately.  Comparisons are decided exactly:
an element of Z[beta] is a degree-reduced integer polynomial in beta, and its
sign at beta is obtained by a gcd test against the base polynomial (the
polynomial need not be irreducible) followed by interval refinement of the
isolating interval of beta with rational endpoints.  Refinement terminates
because interval evaluation of a polynomial converges to its nonzero value as
the interval shrinks onto beta.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    DigitRangeError,
    EmptyWordError,
    FractionalBudgetExceeded,
    InadmissibleInput,
    MixedBaseError,
    NonIntegerExpansionError,
    ParryViolation,
    TrailingZeroError,
    ZeroHasNoPredecessor,
)
from .words import Word, fmt, word

# ---------------------------------------------------------------------------
# integer/rational polynomial helpers (coefficients low degree first)


def _ptrim(p):
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def _pdeg(p):
    return len(p) - 1


def _peval(p, x):
    acc = Fraction(0)
    for c in reversed(p):
        acc = acc * x + c
    return acc


def _pdivmod(a, b):
    """Quotient and remainder over the rationals."""
    a = [Fraction(c) for c in a]
    b = [Fraction(c) for c in b]
    q = [Fraction(0)] * max(1, len(a) - len(b) + 1)
    lead = b[-1]
    for k in range(len(a) - len(b), -1, -1):
        coef = a[k + len(b) - 1] / lead
        q[k] = coef
        for i, c in enumerate(b):
            a[k + i] -= coef * c
    return _ptrim(q), _ptrim(a)


def _make_primitive(p):
    """Clear denominators and divide by the content; positive leading coefficient."""
    from math import gcd

    denom = 1
    for c in p:
        denom = denom * c.denominator // gcd(denom, c.denominator)
    ints = [int(c * denom) for c in p]
    g = 0
    for c in ints:
        g = gcd(g, abs(c))
    ints = [c // g for c in ints]
    if ints[-1] < 0:
        ints = [-c for c in ints]
    return ints


def _pgcd(a, b):
    """Primitive integer gcd of two integer polynomials (Euclid over Q)."""
    a = [Fraction(c) for c in _ptrim(a)]
    b = [Fraction(c) for c in _ptrim(b)]
    while b:
        _, r = _pdivmod(a, b)
        a, b = b, r
    return _make_primitive(a)


def _interval_eval(p, lo, hi):
    """Interval Horner evaluation of p over [lo, hi] with lo > 0."""
    alo = ahi = Fraction(p[-1]) if p else Fraction(0)
    for c in reversed(p[:-1]):
        cands = (alo * lo, alo * hi, ahi * lo, ahi * hi)
        alo, ahi = min(cands) + c, max(cands) + c
    return alo, ahi


# ---------------------------------------------------------------------------
# the base


@dataclass(frozen=True)
class RenyiExpansion:
    """A validated expansion of 1 in base beta: digits t_1 ... t_m.

    Construction enforces t_1 >= 1, t_m >= 1, beta > 1 and the Parry
    condition: every zero-padded proper suffix of the digit word must be
    strictly lexicographically smaller than the word itself.  The pairwise
    distinctness of the gap values T^i(1) is also checked exactly, so the
    gap-letter coding below is well defined.
    """

    digits: Word

    def __post_init__(self):
        w = word(self.digits)
        object.__setattr__(self, "digits", w)
        if not w:
            raise EmptyWordError("expansion of 1 must be non-empty")
        m = len(w)
        if w[-1] == 0:
            raise TrailingZeroError("expansion of 1 must not end in 0")
        if sum(w) < 2:
            # the single digit word "1" would denote base 1
            raise ParryViolation(1, "digit word denotes a base not exceeding 1")
        for i in range(2, m + 1):
            suffix = w[i - 1:] + (0,) * (i - 1)
            if not suffix < w:
                raise ParryViolation(i)
        # isolating interval for beta, shared and monotonically narrowed
        object.__setattr__(self, "_iv", [(Fraction(1), Fraction(w[0] + 1))])
        _check_orbit_distinct(self)

    @property
    def m(self) -> int:
        return len(self.digits)

    @property
    def t1(self) -> int:
        return self.digits[0]

    @property
    def max_digit(self) -> int:
        """Largest digit usable in admissible strings (ceil(beta) - 1)."""
        return self.digits[0] if len(self.digits) > 1 else self.digits[0] - 1

    def __repr__(self):
        return f"RenyiExpansion({fmt(self.digits)!r})"


def validate_renyi(candidate) -> RenyiExpansion:
    """Validate a digit word as the expansion of 1 for a simple Parry base."""
    return RenyiExpansion(word(candidate))


def parry_polynomial(d: RenyiExpansion):
    """Coefficients (constant first) of x^m - t_1 x^(m-1) - ... - t_m."""
    return tuple(-t for t in reversed(d.digits)) + (1,)


def quasi_greedy(d: RenyiExpansion) -> Word:
    """Period word of the quasi-greedy expansion of 1: t_1 ... t_(m-1) (t_m - 1).

    The expansion itself is this word repeated forever; it is the
    lexicographic supremum of the admissible strings strictly below the
    expansion of 1.
    """
    return d.digits[:-1] + (d.digits[-1] - 1,)


def _bisect(d: RenyiExpansion):
    """Halve the isolating interval of beta; returns the narrowed interval."""
    lo, hi = d._iv[0]
    mid = (lo + hi) / 2
    v = _peval(parry_polynomial(d), mid)
    # the base polynomial has a single positive root, irrational for m >= 2
    assert v != 0, "rational midpoint cannot be the base"
    iv = (mid, hi) if v < 0 else (lo, mid)
    d._iv[0] = iv
    return iv


# ---------------------------------------------------------------------------
# exact arithmetic in Z[beta]


@dataclass(frozen=True)
class ZBetaElement:
    """Element of Z[beta] as integer coordinates over 1, beta, ..., beta^(m-1)."""

    d: RenyiExpansion
    coords: tuple

    def __post_init__(self):
        if len(self.coords) != self.d.m:
            raise ValueError("coordinate vector must have length m")
        object.__setattr__(self, "coords", tuple(int(c) for c in self.coords))

    def _coerce(self, other):
        if isinstance(other, int):
            return from_int(self.d, other)
        if isinstance(other, ZBetaElement):
            if other.d.digits != self.d.digits:
                raise MixedBaseError("elements belong to different bases")
            return other
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return ZBetaElement(self.d, tuple(a + b for a, b in zip(self.coords, o.coords)))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return ZBetaElement(self.d, tuple(a - b for a, b in zip(self.coords, o.coords)))

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __neg__(self):
        return ZBetaElement(self.d, tuple(-c for c in self.coords))

    def __mul__(self, other):
        if isinstance(other, int):
            return ZBetaElement(self.d, tuple(c * other for c in self.coords))
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        m = self.d.m
        prod = [0] * (2 * m - 1)
        for i, a in enumerate(self.coords):
            if a:
                for j, b in enumerate(o.coords):
                    prod[i + j] += a * b
        return ZBetaElement(self.d, _reduce(self.d, prod))

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return _value_is_zero(self)

    def sign(self) -> int:
        return zb_sign(self)

    def to_json(self):
        return {"coords": list(self.coords)}

    def __repr__(self):
        return f"ZBetaElement({fmt(self.d.digits)!r}, {self.coords})"


def _reduce(d: RenyiExpansion, coeffs) -> tuple:
    """Reduce a polynomial in beta to degree < m via beta^m = sum t_i beta^(m-i)."""
    m = d.m
    cs = list(coeffs) + [0] * max(0, m - len(coeffs))
    for k in range(len(cs) - 1, m - 1, -1):
        c = cs[k]
        if c:
            cs[k] = 0
            for i, t in enumerate(d.digits, start=1):
                cs[k - i] += c * t
    return tuple(cs[:m])


def zero(d: RenyiExpansion) -> ZBetaElement:
    return ZBetaElement(d, (0,) * d.m)


def one(d: RenyiExpansion) -> ZBetaElement:
    return from_int(d, 1)


def from_int(d: RenyiExpansion, n: int) -> ZBetaElement:
    return ZBetaElement(d, (int(n),) + (0,) * (d.m - 1))


def beta(d: RenyiExpansion) -> ZBetaElement:
    """The base itself as an element of Z[beta]."""
    return ZBetaElement(d, _reduce(d, (0, 1)))


def zb_add(a: ZBetaElement, b: ZBetaElement) -> ZBetaElement:
    return a + b


def zb_sub(a: ZBetaElement, b: ZBetaElement) -> ZBetaElement:
    return a - b


def zb_mul(a: ZBetaElement, b: ZBetaElement) -> ZBetaElement:
    return a * b


def _value_is_zero(a: ZBetaElement) -> bool:
    """Exact test of a(beta) == 0.

    The base polynomial may be reducible, so nonzero coordinates can still
    evaluate to zero at beta.  a(beta) == 0 iff gcd(a, base polynomial) has
    beta among its roots; writing the base polynomial as g*h, exactly one of
    g, h vanishes at beta (the positive root is simple), so refining the
    isolating interval until one of them is bounded away from zero decides.
    """
    v = _ptrim(a.coords)
    if not v:
        return True
    if len(v) == 1:
        return False
    vlo, vhi = _interval_eval(v, *a.d._iv[0])
    if vlo > 0 or vhi < 0:
        return False
    P = list(parry_polynomial(a.d))
    g = _pgcd(v, P)
    if _pdeg(g) == 0:
        return False
    h, rem = _pdivmod(P, g)
    assert not rem, "gcd must divide the base polynomial"
    d = a.d
    lo, hi = d._iv[0]
    while True:
        glo, ghi = _interval_eval(g, lo, hi)
        if glo > 0 or ghi < 0:
            return False
        hlo, hhi = _interval_eval(h, lo, hi)
        if hlo > 0 or hhi < 0:
            return True
        lo, hi = _bisect(d)


def zb_sign(a: ZBetaElement) -> int:
    """Exact sign (-1, 0, +1) of the real number a(beta).

    The interval test runs first: it can certify a nonzero sign cheaply but
    never decides zero, so the gcd-based zero test is consulted only when
    the current interval straddles 0.
    """
    v = _ptrim(a.coords)
    if not v:
        return 0
    if len(v) == 1:
        return 1 if v[0] > 0 else -1
    d = a.d
    lo, hi = d._iv[0]
    vlo, vhi = _interval_eval(v, lo, hi)
    if vlo > 0:
        return 1
    if vhi < 0:
        return -1
    if _value_is_zero(a):
        return 0
    while True:
        lo, hi = _bisect(d)
        vlo, vhi = _interval_eval(v, lo, hi)
        if vlo > 0:
            return 1
        if vhi < 0:
            return -1


def t_orbit(d: RenyiExpansion, i: int) -> ZBetaElement:
    """T^i(1) exactly: T^0 = 1, T^i = beta * T^(i-1) - t_i; T^m(1) = 0."""
    if not 0 <= i <= d.m:
        raise ValueError(f"orbit index must lie in 0..{d.m}")
    x = one(d)
    b = beta(d)
    for step in range(1, i + 1):
        x = x * b - d.digits[step - 1]
    return x


def _check_orbit_distinct(d: RenyiExpansion):
    """The gap values T^i(1), i = 0..m-1, must be pairwise distinct."""
    orbit = [t_orbit(d, i) for i in range(d.m)]
    for i in range(d.m):
        for j in range(i + 1, d.m):
            if (orbit[i] - orbit[j]).is_zero():
                raise ParryViolation(
                    j, f"gap values T^{i}(1) and T^{j}(1) coincide; coding undefined"
                )


# ---------------------------------------------------------------------------
# admissible digit strings and beta-integers


def _suffix_less(d: RenyiExpansion, s, i) -> bool:
    """Is the suffix s[i:] strictly smaller than the expansion of 1?

    A suffix longer than m that starts with the full digit word compares
    greater (the expansion is then its proper prefix).
    """
    t = d.digits
    m = len(t)
    n = len(s) - i
    for k in range(min(n, m)):
        if s[i + k] != t[k]:
            return s[i + k] < t[k]
    return n < m


def is_admissible(d: RenyiExpansion, s) -> bool:
    """Is s the canonical expansion of a non-negative beta-integer?

    Every suffix must be strictly smaller than the expansion of 1, and the
    leading digit must be nonzero (zero is the empty word).
    """
    s = word(s)
    if not s:
        return True
    md = d.max_digit
    for a in s:
        if a > md:
            raise DigitRangeError(f"digit {a} exceeds the alphabet bound {md}")
    if s[0] == 0:
        return False
    return all(_suffix_less(d, s, i) for i in range(len(s)))


@dataclass(frozen=True)
class BetaExpansion:
    """A beta-expansion split into integer and fractional digit words."""

    integer_digits: Word
    fractional_digits: Word = ()

    def __str__(self):
        head = fmt(self.integer_digits) if self.integer_digits else "0"
        return f"{head}.{fmt(self.fractional_digits)}"

    @property
    def is_integer(self) -> bool:
        return not self.fractional_digits


def value_of(d: RenyiExpansion, e) -> ZBetaElement:
    """Value of a beta-integer expansion as an element of Z[beta]."""
    if isinstance(e, BetaExpansion):
        if e.fractional_digits:
            raise NonIntegerExpansionError("expansion has fractional digits")
        digits = e.integer_digits
    else:
        digits = word(e)
    acc = zero(d)
    b = beta(d)
    for x in digits:
        acc = acc * b + x
    return acc


def greedy_expand_integer(d: RenyiExpansion, n: int, frac_budget=None) -> BetaExpansion:
    """Greedy beta-expansion of a non-negative integer, computed exactly.

    Integer expansions need not terminate; after ``frac_budget`` fractional
    digits (default 4m) the partial result is raised in
    FractionalBudgetExceeded.
    """
    if n < 0:
        raise ValueError("only non-negative integers are expanded")
    if frac_budget is None:
        frac_budget = 4 * d.m
    if n == 0:
        return BetaExpansion((), ())
    b = beta(d)
    target = from_int(d, n)
    powers = [one(d)]
    while (target - powers[-1] * b).sign() >= 0:
        powers.append(powers[-1] * b)
    md = d.max_digit
    rem = target
    int_digits = []
    for p in reversed(powers):
        x = 0
        while x < md and (rem - p * (x + 1)).sign() >= 0:
            x += 1
        int_digits.append(x)
        rem = rem - p * x
    ints = tuple(int_digits)
    if rem.is_zero():
        return BetaExpansion(ints, ())
    frac = []
    s = rem
    for _ in range(frac_budget):
        s = s * b
        x = 0
        while x < md and (s - (x + 1)).sign() >= 0:
            x += 1
        frac.append(x)
        s = s - x
        if s.is_zero():
            return BetaExpansion(ints, tuple(frac))
    raise FractionalBudgetExceeded(BetaExpansion(ints, tuple(frac)))


def next_admissible(d: RenyiExpansion, s) -> Word:
    """Radix successor among admissible strings (length first, then lex).

    The rightmost position that can be bumped is bumped to the smallest
    admissible digit and the tail zeroed; when no position can be bumped the
    word rolls over to 1 followed by zeros.  Radix order on admissible
    strings equals numerical order of the beta-integers they denote.
    """
    s = word(s)
    if not is_admissible(d, s):
        raise InadmissibleInput(f"{fmt(s)!r} is not admissible")
    md = d.max_digit
    for pos in range(len(s) - 1, -1, -1):
        for v in range(s[pos] + 1, md + 1):
            cand = s[:pos] + (v,) + (0,) * (len(s) - 1 - pos)
            if is_admissible(d, cand):
                return cand
    return (1,) + (0,) * len(s)


def beta_integers(d: RenyiExpansion):
    """Yield the admissible strings in radix (= value) order, starting at 0."""
    y = ()
    while True:
        yield y
        y = next_admissible(d, y)


def radix_rank(d: RenyiExpansion, s) -> int:
    """Number of admissible strings strictly below s in radix order."""
    s = word(s)
    if not is_admissible(d, s):
        raise InadmissibleInput(f"{fmt(s)!r} is not admissible")
    rank = 0
    y = ()
    while y != s:
        y = next_admissible(d, y)
        rank += 1
    return rank


def succ_match_length(d: RenyiExpansion, y) -> int:
    """Largest k <= |y| such that the length-k suffix of y is a prefix of the
    quasi-greedy expansion of 1.  k = 0 (the empty suffix) always qualifies."""
    y = word(y)
    if not is_admissible(d, y):
        raise InadmissibleInput(f"{fmt(y)!r} is not admissible")
    per = quasi_greedy(d)
    m = d.m
    n = len(y)
    for k in range(n, 0, -1):
        if all(y[n - k + i] == per[i % m] for i in range(k)):
            return k
    return 0


def succ_gap_letter(d: RenyiExpansion, y) -> int:
    """Letter coding the gap succ(y) - y = T^k(1), k the match length mod m."""
    return succ_match_length(d, y) % d.m


def pred_gap_letter(d: RenyiExpansion, y) -> int:
    """Letter coding the gap y - pred(y): the trailing zero count of y, mod m."""
    y = word(y)
    if not y:
        raise ZeroHasNoPredecessor("zero has no predecessor in Z_beta+")
    if not is_admissible(d, y):
        raise InadmissibleInput(f"{fmt(y)!r} is not admissible")
    k = 0
    while y[len(y) - 1 - k] == 0:
        k += 1
    return k % d.m


def coding_of_segment(d: RenyiExpansion, start, count: int) -> Word:
    """Gap letters of the count consecutive gaps of Z_beta+ starting at start."""
    if count < 0:
        raise ValueError("count must be non-negative")
    y = word(start)
    letters = []
    for _ in range(count):
        letters.append(succ_gap_letter(d, y))
        y = next_admissible(d, y)
    return tuple(letters)
