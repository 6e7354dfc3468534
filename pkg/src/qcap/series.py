"""Exact arithmetic on Laurent polynomials and truncated power series in q.

The one value type of the whole package is :class:`QSeries`: a dense list of
arbitrary-precision integer coefficients together with the exponent of the
lowest term.  A value is either exact (``trunc is None``) or truncated, in
which case coefficients of q^k for k > trunc are unknown.  Arithmetic
propagates truncation as the minimum of the operands' truncations; two exact
operands always give an exact result.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping


class NonDivisible(ArithmeticError):
    """Raised when an exact polynomial division leaves a remainder."""


class TruncatedInput(ValueError):
    """Raised when an operation defined only for exact values gets a truncated one."""


def _min_trunc(t1: int | None, t2: int | None) -> int | None:
    if t1 is None:
        return t2
    if t2 is None:
        return t1
    return min(t1, t2)


# Naive convolution below this (len_a * len_b) size; Kronecker substitution above.
_KRONECKER_CUTOFF = 4096


def _pack(coeffs: list[int], bits: int) -> int:
    out = 0
    for c in reversed(coeffs):
        out = (out << bits) | c
    return out


def _unpack(value: int, bits: int, length: int) -> list[int]:
    mask = (1 << bits) - 1
    return [(value >> (bits * i)) & mask for i in range(length)]


def _convolve_kronecker(a: list[int], b: list[int]) -> list[int]:
    # Split into positive/negative parts so every packed limb stays non-negative.
    n = len(a) + len(b) - 1
    bound = max(map(abs, a)) * max(map(abs, b)) * min(len(a), len(b))
    bits = bound.bit_length() + 1
    ap = [c if c > 0 else 0 for c in a]
    am = [-c if c < 0 else 0 for c in a]
    bp = [c if c > 0 else 0 for c in b]
    bm = [-c if c < 0 else 0 for c in b]
    pos = _pack(ap, bits) * _pack(bp, bits) + _pack(am, bits) * _pack(bm, bits)
    neg = _pack(ap, bits) * _pack(bm, bits) + _pack(am, bits) * _pack(bp, bits)
    up, un = _unpack(pos, bits, n), _unpack(neg, bits, n)
    return [p - m for p, m in zip(up, un)]


def _convolve(a: list[int], b: list[int]) -> list[int]:
    if not a or not b:
        return []
    if len(a) > len(b):
        a, b = b, a
    if len(a) * len(b) > _KRONECKER_CUTOFF:
        return _convolve_kronecker(a, b)
    out = [0] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca:
            for j, cb in enumerate(b):
                if cb:
                    out[i + j] += ca * cb
    return out


@dataclass(frozen=True)
class QSeries:
    """A Laurent polynomial (or truncated power series) in q over the integers.

    ``coeffs[i]`` is the coefficient of ``q**(offset + i)``.  The representation
    is canonical: first and last stored coefficients are non-zero, and the zero
    series is ``QSeries(0, ())``.  ``trunc``, when set, is the largest exponent
    whose coefficient is known.
    """

    offset: int = 0
    coeffs: tuple[int, ...] = ()
    trunc: int | None = field(default=None)

    def __post_init__(self) -> None:
        offset, coeffs, trunc = self.offset, list(self.coeffs), self.trunc
        if trunc is not None:
            keep = trunc - offset + 1
            coeffs = coeffs[:max(keep, 0)]
        lo, hi = 0, len(coeffs)
        while lo < hi and coeffs[lo] == 0:
            lo += 1
            offset += 1
        while lo < hi and coeffs[hi - 1] == 0:
            hi -= 1
        if lo == hi:
            offset, coeffs = 0, []
        else:
            coeffs = coeffs[lo:hi]
        object.__setattr__(self, "offset", offset)
        object.__setattr__(self, "coeffs", tuple(coeffs))
        object.__setattr__(self, "trunc", trunc)

    # -- queries ----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_exact(self) -> bool:
        return self.trunc is None

    def degree(self) -> int:
        """Largest exponent with a non-zero coefficient (-1 for the zero series)."""
        return self.offset + len(self.coeffs) - 1 if self.coeffs else -1

    def valuation(self) -> int:
        """Smallest exponent with a non-zero coefficient (0 for the zero series)."""
        return self.offset

    def coeff(self, exponent: int) -> int:
        i = exponent - self.offset
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return 0

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    # -- ring operations --------------------------------------------------

    def __add__(self, other: QSeries | int) -> QSeries:
        if isinstance(other, int):
            other = monomial(0, other)
        lo = min(self.offset, other.offset)
        hi = max(self.offset + len(self.coeffs), other.offset + len(other.coeffs))
        out = [0] * max(hi - lo, 0)
        for i, c in enumerate(self.coeffs):
            out[self.offset - lo + i] += c
        for i, c in enumerate(other.coeffs):
            out[other.offset - lo + i] += c
        return QSeries(lo, out, _min_trunc(self.trunc, other.trunc))

    __radd__ = __add__

    def __neg__(self) -> QSeries:
        return QSeries(self.offset, [-c for c in self.coeffs], self.trunc)

    def __sub__(self, other: QSeries | int) -> QSeries:
        if isinstance(other, int):
            other = monomial(0, other)
        return self + (-other)

    def __rsub__(self, other: int) -> QSeries:
        return monomial(0, other) + (-self)

    def __mul__(self, other: QSeries | int) -> QSeries:
        if isinstance(other, int):
            other = monomial(0, other)
        trunc = _min_trunc(self.trunc, other.trunc)
        coeffs = _convolve(list(self.coeffs), list(other.coeffs))
        return QSeries(self.offset + other.offset, coeffs, trunc)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> QSeries:
        if n < 0:
            raise ValueError("negative powers are not defined; use inverse()")
        out = ONE if self.trunc is None else QSeries(0, (1,), self.trunc)
        base = self
        while n:
            if n & 1:
                out = out * base
            n >>= 1
            if n:
                base = base * base
        return out

    def shift(self, exponent: int) -> QSeries:
        """Multiply by q**exponent."""
        trunc = None if self.trunc is None else self.trunc + exponent
        return QSeries(self.offset + exponent, self.coeffs, trunc)

    # -- structural operations -------------------------------------------

    def substitute_q_power(self, k: int) -> QSeries:
        """q -> q**k: every exponent e becomes k*e."""
        if k <= 0:
            raise ValueError("substitution power must be positive")
        if k == 1:
            return self
        out = [0] * (max(len(self.coeffs) - 1, 0) * k + 1) if self.coeffs else []
        for i, c in enumerate(self.coeffs):
            out[i * k] = c
        trunc = None if self.trunc is None else self.trunc * k
        return QSeries(self.offset * k, out, trunc)

    def invert_q(self) -> QSeries:
        """q -> 1/q on an exact Laurent polynomial (an involution)."""
        if self.trunc is not None:
            raise TruncatedInput("q -> 1/q is undefined on truncated series")
        top = self.degree()
        return QSeries(-top, tuple(reversed(self.coeffs)))

    def truncate(self, n: int) -> QSeries:
        return QSeries(self.offset, self.coeffs, _min_trunc(self.trunc, n))

    # -- text / wire forms ------------------------------------------------

    def to_text(self) -> str:
        if not self.coeffs:
            return "0"
        parts: list[str] = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            e = self.offset + i
            mag = abs(c)
            if e == 0:
                term = str(mag)
            else:
                var = "q" if e == 1 else f"q^{e}"
                term = var if mag == 1 else f"{mag}{var}"
            if not parts:
                parts.append(term if c > 0 else f"-{term}")
            else:
                parts.append(f"+ {term}" if c > 0 else f"- {term}")
        return " ".join(parts)

    def to_json_dict(self) -> dict:
        return {"offset": self.offset, "coeffs": list(self.coeffs), "trunc": self.trunc}

    def __str__(self) -> str:
        return self.to_text()


ZERO = QSeries()
ONE = QSeries(0, (1,))
Q = QSeries(1, (1,))


def monomial(exponent: int, coefficient: int = 1) -> QSeries:
    return QSeries(exponent, (coefficient,))


def from_terms(terms: Mapping[int, int] | Iterable[tuple[int, int]], trunc: int | None = None) -> QSeries:
    items = dict(terms)
    if not items:
        return QSeries(0, (), trunc)
    lo, hi = min(items), max(items)
    coeffs = [items.get(e, 0) for e in range(lo, hi + 1)]
    return QSeries(lo, coeffs, trunc)


def div_exact(a: QSeries, b: QSeries) -> QSeries:
    """Exact quotient in the Laurent polynomial ring; mul(result, b) == a.

    Raises NonDivisible when b does not divide a, which in this package always
    signals a misconstructed identity term.
    """
    if a.trunc is not None or b.trunc is not None:
        raise TruncatedInput("div_exact requires exact operands")
    if b.is_zero():
        raise ZeroDivisionError("division by the zero series")
    if a.is_zero():
        return ZERO
    num, den = list(a.coeffs), list(b.coeffs)
    if len(num) < len(den):
        raise NonDivisible(f"degree of {a} below degree of divisor {b}")
    lead = den[-1]
    quot = [0] * (len(num) - len(den) + 1)
    for i in range(len(quot) - 1, -1, -1):
        c = num[i + len(den) - 1]
        if c:
            if c % lead:
                raise NonDivisible(f"leading coefficient {c} not divisible by {lead}")
            f = c // lead
            quot[i] = f
            for k, d in enumerate(den):
                num[i + k] -= f * d
    if any(num):
        raise NonDivisible("non-zero remainder")
    return QSeries(a.offset - b.offset, quot)


def inverse(a: QSeries, n: int) -> QSeries:
    """Multiplicative inverse of a as a series, truncated at exponent n.

    The lowest coefficient of a must be +-1 (true for every q-Pochhammer
    product in this package).
    """
    if a.is_zero():
        raise ZeroDivisionError("inverse of the zero series")
    v = a.valuation()
    c0 = a.coeffs[0]
    if c0 not in (1, -1):
        raise ValueError("lowest coefficient must be a unit")
    order = n + v  # coefficients of 1/a needed up to exponent n, offset is -v
    if order < 0:
        return QSeries(0, (), n)
    c = list(a.coeffs[: order + 1])
    c += [0] * (order + 1 - len(c))
    out = [0] * (order + 1)
    out[0] = c0
    for i in range(1, order + 1):
        s = 0
        for k in range(1, i + 1):
            if c[k]:
                s += c[k] * out[i - k]
        out[i] = -c0 * s
    return QSeries(-v, out, _min_trunc(a.trunc, n))


@dataclass(frozen=True)
class Comparison:
    """Outcome of comparing two QSeries coefficientwise."""

    equal: bool
    mode: str  # "exact" or "truncated-agreement up to N"
    upto: int | None = None
    mismatch_exponent: int | None = None
    lhs_coeff: int | None = None
    rhs_coeff: int | None = None

    def __bool__(self) -> bool:
        return self.equal


def compare(a: QSeries, b: QSeries) -> Comparison:
    """Compare exactly, or up to the smaller truncation if either is truncated."""
    limit = _min_trunc(a.trunc, b.trunc)
    lo = min(a.valuation(), b.valuation())
    hi = max(a.degree(), b.degree())
    if limit is not None:
        hi = min(hi, limit)
    for e in range(lo, hi + 1):
        ca, cb = a.coeff(e), b.coeff(e)
        if ca != cb:
            mode = "exact" if limit is None else f"truncated-agreement up to {limit}"
            return Comparison(False, mode, limit, e, ca, cb)
    if limit is None:
        return Comparison(True, "exact")
    return Comparison(True, f"truncated-agreement up to {limit}", limit)
