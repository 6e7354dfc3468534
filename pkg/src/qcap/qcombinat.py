"""q-special functions: Pochhammer symbols, q-binomial and q-multinomial
coefficients, trinomial refinements, the mod-3 quadratic character, and the
classical theta-style sum/product evaluators.

Every "variable" other than q is a monomial specialization q**shift; all
values are :class:`~qcap.series.QSeries` with integer coefficients.
"""

from __future__ import annotations

import math
from functools import lru_cache

from qcap.series import ONE, QSeries, ZERO, div_exact, inverse, monomial


class NegativeLength(ValueError):
    """A finite Pochhammer symbol with negative length was requested directly."""


class UnboundedBelow(ValueError):
    """A product specialization whose exponents are not bounded below (or hit a
    vanishing (1 - q^0) factor)."""


# ---------------------------------------------------------------------------
# Pochhammer symbols
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def pochhammer(length: int, shift: int = 1, base: int = 1) -> QSeries:
    """(q^shift; q^base)_length as an exact polynomial; length 0 gives 1."""
    if length < 0:
        raise NegativeLength(f"Pochhammer length {length} < 0")
    if length == 0:
        return ONE
    prev = pochhammer(length - 1, shift, base)
    return prev * (ONE - monomial(shift + base * (length - 1)))


def pochhammer_inf(shift: int, base: int, n: int, sign: int = -1) -> QSeries:
    """prod_{i>=0} (1 + sign*q^(shift + i*base)), truncated at exponent n.

    Finitely many leading factors may carry non-positive exponents (they are
    multiplied in exactly); the step must be positive so the tail converges
    coefficientwise.  A (1 - q^0) factor would annihilate the product and is
    rejected as a degenerate specialization.
    """
    if base <= 0:
        raise UnboundedBelow("factor step must be positive")
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    head = ONE
    e = shift
    while e <= 0:
        if e == 0 and sign == -1:
            raise UnboundedBelow("vanishing (1 - q^0) factor")
        head = head * (ONE + monomial(e, sign))
        e += base
    order = n - min(head.valuation(), 0)
    tail = QSeries(0, (1,), order)
    while e <= order:
        tail = tail * (ONE + monomial(e, sign)).truncate(order)
        e += base
    return (head * tail).truncate(n)


def inv_pochhammer_inf(shift: int, base: int, n: int) -> QSeries:
    """1 / (q^shift; q^base)_infinity truncated at n; requires shift >= 1."""
    if shift < 1:
        raise UnboundedBelow("inverse infinite product needs positive exponents")
    return inverse(pochhammer_inf(shift, base, n), n)


# ---------------------------------------------------------------------------
# q-binomial / q-multinomial
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def _q_binomial_base1(top: int, k: int) -> QSeries:
    if k < 0 or top < 0 or k > top:
        return ZERO
    k = min(k, top - k)
    if k == 0:
        return ONE
    # (q;q)_top / ((q;q)_k (q;q)_{top-k}), built by exact division.
    num = _q_binomial_base1(top - 1, k - 1) * pochhammer(1, shift=top, base=1)
    return div_exact(num, ONE - monomial(k))


def q_binomial(top: int, k: int, base: int = 1) -> QSeries:
    """Gaussian binomial [top, k] in base q^base; zero outside 0 <= k <= top."""
    value = _q_binomial_base1(top, k)
    return value.substitute_q_power(base) if base != 1 else value


def poch_ratio(num: tuple[tuple[int, int], ...], den: tuple[tuple[int, int], ...]) -> QSeries:
    """Exact quotient of Pochhammer products.

    ``num`` and ``den`` are tuples of (length, base) pairs, each standing for
    (q^base; q^base)_length.  Any negative length in the denominator makes the
    whole quotient zero (the 1/(q;q)_n = 0 convention for n < 0); a negative
    length in the numerator is an error.  Raises NonDivisible when the quotient
    is not a polynomial, which signals a malformed identity term.
    """
    for length, _ in den:
        if length < 0:
            return ZERO
    for length, _ in num:
        if length < 0:
            raise NegativeLength(f"numerator Pochhammer length {length} < 0")
    return _poch_ratio_cached(
        tuple(sorted(p for p in num if p[0])),
        tuple(sorted(p for p in den if p[0])),
    )


@lru_cache(maxsize=None)
def _poch_ratio_cached(num: tuple[tuple[int, int], ...], den: tuple[tuple[int, int], ...]) -> QSeries:
    numerator = ONE
    for length, b in num:
        numerator = numerator * pochhammer(length, shift=b, base=b)
    result = numerator
    for length, b in sorted(den, key=lambda p: p[0] * p[1]):
        result = div_exact(result, pochhammer(length, shift=b, base=b))
    return result


@lru_cache(maxsize=None)
def poch_product(parts: tuple[tuple[int, int], ...]) -> QSeries:
    """Exact product of finite Pochhammers given as (length, base) pairs."""
    result = ONE
    for length, b in parts:
        result = result * pochhammer(length, shift=b, base=b)
    return result


@lru_cache(maxsize=None)
def inv_poch_product(parts: tuple[tuple[int, int], ...], n: int) -> QSeries:
    """1 / product of finite Pochhammers, truncated at n (parts pre-sorted by
    callers for cache hits)."""
    return inverse(poch_product(parts), n)


def q_multinomial(top: int, parts: tuple[tuple[int, int], ...], base: int = 1) -> QSeries:
    """(q^base;q^base)_top over a product of Pochhammers; zero if any part
    length is negative."""
    if top < 0:
        raise NegativeLength(f"multinomial top {top} < 0")
    return poch_ratio(((top, base),), tuple(parts))


# ---------------------------------------------------------------------------
# Trinomial refinements
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def _trinomial_base1(length: int, b: int, a: int) -> QSeries:
    if length < 0:
        return ZERO
    total = ZERO
    for j in range(length + 1):
        left = _q_binomial_base1(length, j)
        right = _q_binomial_base1(length - j, j + a)
        if left and right:
            total = total + (left * right).shift(j * (j + b))
    return total


def trinomial_t(length: int, b: int, a: int, base: int = 1) -> QSeries:
    """Andrews-Baxter trinomial T(length; b, a) in base q^base."""
    value = _trinomial_base1(length, b, a)
    return value.substitute_q_power(base) if base != 1 else value


@lru_cache(maxsize=None)
def _warnaar_base1(big_l: int, big_m: int, a: int, b: int) -> QSeries:
    total = ZERO
    for n in range(max(big_m - a + b, 0) + 1):
        t1 = _q_binomial_base1(big_m + big_l - a - 2 * n, big_m)
        t2 = _q_binomial_base1(big_m - a + b, n)
        t3 = _q_binomial_base1(big_m + a - b, n + a)
        if t1 and t2 and t3:
            total = total + (t1 * t2 * t3).shift(n * (n + a))
    return total


def warnaar_s(big_l: int, big_m: int, a: int, b: int, base: int = 1) -> QSeries:
    """Warnaar's doubly bounded trinomial refinement S(L, M; a, b)."""
    if big_l < 0 or big_m < 0:
        return ZERO
    value = _warnaar_base1(big_l, big_m, a, b)
    return value.substitute_q_power(base) if base != 1 else value


# ---------------------------------------------------------------------------
# Jacobi symbol mod 3
# ---------------------------------------------------------------------------

def jacobi3(j: int) -> int:
    """The quadratic character (j/3): 0, 1, -1 for j = 0, 1, 2 mod 3."""
    return (0, 1, -1)[j % 3]


# ---------------------------------------------------------------------------
# Bounded index enumeration for quadratic-exponent sums
# ---------------------------------------------------------------------------

def quadratic_index_range(quad: int, lin: int, limit: int) -> range:
    """All integers j with quad*j^2 + lin*j <= limit (quad > 0).

    Central helper deriving summation ranges for every theta-style sum from
    its quadratic exponent.
    """
    if quad <= 0:
        raise ValueError("quadratic coefficient must be positive")
    radius = math.isqrt(max(4 * quad * limit + lin * lin, 0)) + 1
    lo = (-lin - radius) // (2 * quad) - 1
    hi = (-lin + radius) // (2 * quad) + 1
    return range(lo, hi + 1)


# ---------------------------------------------------------------------------
# Jacobi triple product / quintuple product
# ---------------------------------------------------------------------------

def jtp_sum(z_shift: int, base: int, n: int) -> QSeries:
    """sum_j q^(j^2) z^j with z = q^z_shift, then q -> q^base, truncated at n."""
    order = n // base
    total = QSeries(0, (), order)
    for j in quadratic_index_range(1, z_shift, order):
        e = j * j + z_shift * j
        if e <= order:
            total = total + monomial(e)
    return total.substitute_q_power(base).truncate(n)


def _negative_valuation(shift: int, base: int) -> int:
    """|sum of negative exponents| among factors (1 +- q^(shift + i*base))."""
    total, e = 0, shift
    while e < 0:
        total -= e
        e += base
    return total


def _product_of_inf(factors: tuple[tuple[int, int, int], ...], order: int) -> QSeries:
    """Product of (shift, step, sign) infinite Pochhammers, sound to ``order``.

    Factors with negative leading exponents shift unknown coefficients
    downward, so each factor is evaluated at an extended order before the
    final truncation.
    """
    slack = sum(_negative_valuation(shift, step) for shift, step, _ in factors)
    ext = order + slack
    prod = QSeries(0, (1,), ext)
    for shift, step, sign in factors:
        prod = prod * pochhammer_inf(shift, step, ext, sign=sign)
    return prod.truncate(order)


def jtp_product(z_shift: int, base: int, n: int) -> QSeries:
    """(-zq, -q/z, q^2; q^2)_infinity with z = q^z_shift, q -> q^base."""
    order = n // base
    prod = _product_of_inf(
        ((1 + z_shift, 2, 1), (1 - z_shift, 2, 1), (2, 2, -1)), order
    )
    return prod.substitute_q_power(base).truncate(n)


def quintuple_sum(z_shift: int, base: int, n: int) -> QSeries:
    """sum_j (-1)^j q^(j(3j-1)/2) z^(3j) (1 + z q^j) with z = q^z_shift."""
    order = n // base
    total = QSeries(0, (), order)
    for j in quadratic_index_range(3, 6 * z_shift - 1, 2 * order):
        e = j * (3 * j - 1) // 2 + 3 * z_shift * j
        sign = -1 if j % 2 else 1
        if e <= order:
            total = total + monomial(e, sign)
        if e + z_shift + j <= order:
            total = total + monomial(e + z_shift + j, sign)
    return total.substitute_q_power(base).truncate(n)


def quintuple_product(z_shift: int, base: int, n: int) -> QSeries:
    """(q, -z, -q/z; q)_infinity (q z^2, q/z^2; q^2)_infinity with z = q^z_shift."""
    order = n // base
    prod = _product_of_inf(
        (
            (1, 1, -1),
            (z_shift, 1, 1),
            (1 - z_shift, 1, 1),
            (1 + 2 * z_shift, 2, -1),
            (1 - 2 * z_shift, 2, -1),
        ),
        order,
    )
    return prod.substitute_q_power(base).truncate(n)


# ---------------------------------------------------------------------------
# q-binomial theorem
# ---------------------------------------------------------------------------

def q_binomial_theorem_sides(a_shift: int | None, z_shift: int, n: int) -> tuple[QSeries, QSeries]:
    """Both sides of sum_k (a;q)_k / (q;q)_k z^k = (az;q)_inf / (z;q)_inf.

    a = q^a_shift, or identically zero when ``a_shift is None`` (the a = 0
    specialization); z = q^z_shift with z_shift >= 1 for convergence.
    """
    if z_shift < 1:
        raise UnboundedBelow("z must be a positive power of q")
    lhs = QSeries(0, (), n)
    for k in range(n // z_shift + 1):
        if a_shift is None:
            num = ONE
        else:
            num = pochhammer(k, shift=a_shift, base=1)
        term = (num * inverse(pochhammer(k), n)).shift(z_shift * k)
        lhs = lhs + term.truncate(n)
    if a_shift is None:
        rhs_num = QSeries(0, (1,), n)
    else:
        rhs_num = pochhammer_inf(a_shift + z_shift, 1, n)
    rhs = (rhs_num * inv_pochhammer_inf(z_shift, 1, n)).truncate(n)
    return lhs, rhs
