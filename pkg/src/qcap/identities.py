"""Registry of named identity cases, each with two or more independent side
evaluators, plus the verification kernel that compares them.

Every case is an :class:`IdentityCase`: a parameter schema, an equality mode
("exact" for polynomial identities, "truncated" for series identities checked
to a given order), and a tuple of named evaluators whose values must all
agree.  The first side is the reference; a report records the verdict and the
first mismatching coefficient if any.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Iterator, Mapping

from qcap.series import ONE, QSeries, ZERO, Comparison, compare, div_exact, inverse, monomial
from qcap.qcombinat import (
    inv_pochhammer_inf,
    jacobi3,
    pochhammer,
    pochhammer_inf,
    poch_ratio,
    q_binomial,
    trinomial_t,
    warnaar_s,
)


class ParamOutOfRange(ValueError):
    """A case was invoked with missing, unknown, or out-of-range parameters."""


# ---------------------------------------------------------------------------
# Shared enumeration helpers
# ---------------------------------------------------------------------------

def index_vectors(length: int, total_max: int) -> Iterator[tuple[int, ...]]:
    """All tuples of `length` non-negative integers with sum <= total_max."""
    if length == 0:
        yield ()
        return
    for first in range(total_max + 1):
        for rest in index_vectors(length - 1, total_max - first):
            yield (first,) + rest


def suffix_sums(nvec: tuple[int, ...]) -> tuple[int, ...]:
    """(N_1, ..., N_f) with N_i = n_i + n_{i+1} + ... + n_f."""
    out, acc = [], 0
    for n in reversed(nvec):
        acc += n
        out.append(acc)
    return tuple(reversed(out))


@lru_cache(maxsize=None)
def _inv_poch_single(length: int, base: int, n: int) -> QSeries:
    return inverse(pochhammer(length, shift=base, base=base), n)


def _trunc_one(n: int) -> QSeries:
    return QSeries(0, (1,), n)


# ---------------------------------------------------------------------------
# Seed double sums (the base identities the hierarchies grow from)
#
# Each seed evaluator returns the exact left-hand side polynomial at bound M
# (or L); hierarchy evaluators reuse them per inner index, which is sound
# because the grouped Pochhammer quotients are themselves polynomials.
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def seed_cap1_binomial(M: int) -> QSeries:
    """sum q^{2m^2+6mn+6n^2} (q^3)_M / [(q)_m (q^3)_n (q^3)_{M-2n-m}]."""
    total = ZERO
    for n in range(M // 2 + 1):
        for m in range(M - 2 * n + 1):
            ratio = poch_ratio(((M, 3),), ((m, 1), (n, 3), (M - 2 * n - m, 3)))
            total = total + ratio.shift(2 * m * m + 6 * m * n + 6 * n * n)
    return total


@lru_cache(maxsize=None)
def seed_cap2_binomial(M: int) -> QSeries:
    """Single-sum form: summand of seed_cap1_binomial shifted by m+3n and
    multiplied by (1 + q^{1+2m+3n}); equals the printed two-sum layout."""
    total = ZERO
    for n in range(M // 2 + 1):
        for m in range(M - 2 * n + 1):
            ratio = poch_ratio(((M, 3),), ((m, 1), (n, 3), (M - 2 * n - m, 3)))
            e = 2 * m * m + 6 * m * n + 6 * n * n + m + 3 * n
            term = ratio.shift(e)
            total = total + term + term.shift(1 + 2 * m + 3 * n)
    return total


def seed_cap2_binomial_two_sums(M: int) -> QSeries:
    """The printed layout: second sum carries prefactor q and exponent 3m+6n."""
    total = ZERO
    for n in range(M // 2 + 1):
        for m in range(M - 2 * n + 1):
            ratio = poch_ratio(((M, 3),), ((m, 1), (n, 3), (M - 2 * n - m, 3)))
            e = 2 * m * m + 6 * m * n + 6 * n * n
            total = total + ratio.shift(e + m + 3 * n)
            total = total + ratio.shift(e + 3 * m + 6 * n + 1)
    return total


@lru_cache(maxsize=None)
def seed_sum_cap(M: int) -> QSeries:
    """sum q^{2m^2+6mn+6n^2-2m-3n} (1+q^{3M}) (q^3)_M / [...] (same quotient)."""
    total = ZERO
    for n in range(M // 2 + 1):
        for m in range(M - 2 * n + 1):
            ratio = poch_ratio(((M, 3),), ((m, 1), (n, 3), (M - 2 * n - m, 3)))
            term = ratio.shift(2 * m * m + 6 * m * n + 6 * n * n - 2 * m - 3 * n)
            total = total + term + term.shift(3 * M)
    return total


@lru_cache(maxsize=None)
def seed_cap1(L: int) -> QSeries:
    """sum q^{2m^2+6mn+6n^2} (q)_L / [(q)_{L-3n-2m} (q)_m (q^3)_n]."""
    total = ZERO
    for n in range(L // 3 + 1):
        for m in range((L - 3 * n) // 2 + 1):
            ratio = poch_ratio(((L, 1),), ((L - 3 * n - 2 * m, 1), (m, 1), (n, 3)))
            total = total + ratio.shift(2 * m * m + 6 * m * n + 6 * n * n)
    return total


@lru_cache(maxsize=None)
def seed_cap2(L: int) -> QSeries:
    """Two double sums; the second has prefactor q and residual length
    L-3n-2m-1 (kept as printed, not absorbed)."""
    total = ZERO
    for n in range(L // 3 + 1):
        for m in range((L - 3 * n) // 2 + 1):
            e = 2 * m * m + 6 * m * n + 6 * n * n
            r1 = poch_ratio(((L, 1),), ((L - 3 * n - 2 * m, 1), (m, 1), (n, 3)))
            total = total + r1.shift(e + m + 3 * n)
            r2 = poch_ratio(((L, 1),), ((L - 3 * n - 2 * m - 1, 1), (m, 1), (n, 3)))
            if r2:
                total = total + r2.shift(e + 3 * m + 6 * n + 1)
    return total


# ---------------------------------------------------------------------------
# Theta-style right-hand sides
# ---------------------------------------------------------------------------

def _binomial_sum(L: int, a: int, base: int, weight: Callable[[int], QSeries]) -> QSeries:
    """sum_j weight(j) * [2L+a, L-j] in the given base; j spans all indices
    with a non-vanishing binomial."""
    total = ZERO
    for j in range(-L - a, L + a + 1):
        w = weight(j)
        if w:
            b = q_binomial(2 * L + a, L - j, base)
            if b:
                total = total + w * b
    return total


def rhs_new_fin_cap(which: int, L: int) -> QSeries:
    if which == 1:
        return _binomial_sum(L, 0, 1, lambda j: monomial(j * j, jacobi3(j + 1)))
    return _binomial_sum(L, 0, 1, lambda j: monomial(j * (j + 1), jacobi3(j + 1)))


def rhs_fin_cap_binomial(which: int, M: int) -> QSeries:
    if which == 1:
        return _binomial_sum(M, 0, 3, lambda j: monomial(3 * j * j + j))
    if which == 2:
        return _binomial_sum(M, 1, 3, lambda j: monomial(3 * j * j + 2 * j))
    return _binomial_sum(
        M, 0, 3,
        lambda j: monomial(3 * j * j - 2 * j) + monomial(3 * j * j + j),
    )


# ---------------------------------------------------------------------------
# Hierarchy families
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class HierarchyFamily:
    """One Bailey hierarchy: seed double sum, base, parity a, chain shape."""

    name: str
    base: int  # 1 or 3: every Pochhammer of the chain lives in q^base
    a: int  # 0 or 1: kernel [2L+a, L-j]
    seed: Callable[[int], QSeries]  # exact seed LHS at inner bound n_f
    linear_chain: bool  # chain exponent includes base * sum(N_i)
    twisted: bool  # accepts s; chain adds N_{f-s+1}+...+N_f (base 1 only)
    rhs_weight: Callable[[int, int, int], QSeries]  # (f, s, j) -> alpha_j


def _w_cap1_binomial(f: int, s: int, j: int) -> QSeries:
    return monomial(3 * (f + 1) * j * j + j)


def _w_cap2_binomial(f: int, s: int, j: int) -> QSeries:
    return monomial(3 * (f + 1) * j * j + (3 * f + 2) * j)


def _w_sum_cap(f: int, s: int, j: int) -> QSeries:
    e = 3 * (f + 1) * j * j - 2 * j
    return monomial(e) + monomial(e + 3 * j)


def _w_cap1(f: int, s: int, j: int) -> QSeries:
    c = jacobi3(j + 1)
    return monomial((f + 1) * j * j, c) if c else ZERO


def _w_cap2(f: int, s: int, j: int) -> QSeries:
    c = jacobi3(j + 1)
    return monomial((f + 1) * j * j + j, c) if c else ZERO


def _w_cap2_analogue(f: int, s: int, j: int) -> QSeries:
    c = jacobi3(j + 1)
    return monomial((f + 1) * (j * j + j), c) if c else ZERO


def _w_double(f: int, s: int, j: int) -> QSeries:
    c = jacobi3(j + 1)
    return monomial((f + 1) * j * j - s * j, c) if c else ZERO


FAMILIES: dict[str, HierarchyFamily] = {
    "cap1_binomial": HierarchyFamily(
        "cap1_binomial", 3, 0, seed_cap1_binomial, False, False, _w_cap1_binomial),
    "cap2_binomial": HierarchyFamily(
        "cap2_binomial", 3, 1, seed_cap2_binomial, True, False, _w_cap2_binomial),
    "sum_cap": HierarchyFamily(
        "sum_cap", 3, 0, seed_sum_cap, False, False, _w_sum_cap),
    "cap1": HierarchyFamily(
        "cap1", 1, 0, seed_cap1, False, False, _w_cap1),
    "cap2": HierarchyFamily(
        "cap2", 1, 0, seed_cap2, False, False, _w_cap2),
    "cap2_analogue": HierarchyFamily(
        "cap2_analogue", 1, 1, seed_cap2, True, False, _w_cap2_analogue),
    "double": HierarchyFamily(
        "double", 1, 0, seed_cap1, False, True, _w_double),
}


def hierarchy_chain_exponent(fam: HierarchyFamily, nvec: tuple[int, ...], s: int) -> int:
    N = suffix_sums(nvec)
    e = fam.base * sum(x * x for x in N)
    if fam.linear_chain:
        e += fam.base * sum(N)
    if s:
        e += sum(N[len(N) - s:])
    return e


def _family_checked(family: str, f: int, s: int) -> HierarchyFamily:
    fam = FAMILIES[family]
    if f < 1:
        raise ParamOutOfRange("hierarchy depth f must be >= 1")
    if s and not fam.twisted:
        raise ParamOutOfRange(f"family {family!r} takes no twist")
    if not 0 <= s <= f:
        raise ParamOutOfRange("twist s must satisfy 0 <= s <= f")
    return fam


def hierarchy_finite_lhs(family: str, f: int, L: int, s: int = 0) -> QSeries:
    """Exact multi-sum: chain quotient times the seed polynomial at n_f."""
    fam = _family_checked(family, f, s)
    b, a = fam.base, fam.a
    total = ZERO
    for nvec in index_vectors(f, L):
        nf = nvec[-1]
        N1 = sum(nvec)
        den = ((L - N1, b),) + tuple((x, b) for x in nvec[:-1]) + ((2 * nf + a, b),)
        ratio = poch_ratio(((2 * L + a, b),), den)
        if ratio:
            total = total + ratio.shift(hierarchy_chain_exponent(fam, nvec, s)) * fam.seed(nf)
    return total


def hierarchy_finite_rhs(family: str, f: int, L: int, s: int = 0) -> QSeries:
    fam = _family_checked(family, f, s)
    return _binomial_sum(L, fam.a, fam.base, lambda j: fam.rhs_weight(f, s, j))


def hierarchy_limit_lhs(family: str, f: int, n: int, s: int = 0) -> QSeries:
    """Truncated multi-sum with the [2L+a] numerator and (L-N_1) denominator
    dropped and finite Pochhammer inverses expanded to order n."""
    fam = _family_checked(family, f, s)
    b, a = fam.base, fam.a
    total = QSeries(0, (), n)
    for nvec in index_vectors(f, math.isqrt(n // b) if n >= b else 0):
        e = hierarchy_chain_exponent(fam, nvec, s)
        if e > n:
            continue
        nf = nvec[-1]
        term = _trunc_one(n) * fam.seed(nf)
        for x in nvec[:-1]:
            term = term * _inv_poch_single(x, b, n)
        term = term * _inv_poch_single(2 * nf + a, b, n)
        total = total + term.shift(e).truncate(n)
    return total


def _inf_products(factors: tuple[tuple[int, int, int], ...], n: int) -> QSeries:
    """Product of (shift, step, sign) infinite Pochhammers, all shifts >= 1."""
    out = _trunc_one(n)
    for shift, step, sign in factors:
        out = out * pochhammer_inf(shift, step, n, sign=sign)
    return out


def hierarchy_limit_rhs(family: str, f: int, n: int, s: int = 0) -> QSeries:
    p = f + 1
    if family == "cap1_binomial":
        return _inf_products(((6 * p, 6 * p, -1), (3 * f + 2, 6 * p, 1), (3 * f + 4, 6 * p, 1)), n) \
            * inv_pochhammer_inf(3, 3, n)
    if family == "cap2_binomial":
        return _inf_products(((6 * p, 6 * p, -1), (1, 6 * p, 1), (6 * f + 5, 6 * p, 1)), n) \
            * inv_pochhammer_inf(3, 3, n)
    if family == "sum_cap":
        head = pochhammer_inf(6 * p, 6 * p, n, sign=-1)
        alt1 = _inf_products(((3 * f + 1, 6 * p, 1), (3 * f + 5, 6 * p, 1)), n)
        alt2 = _inf_products(((3 * f + 2, 6 * p, 1), (3 * f + 4, 6 * p, 1)), n)
        return head * (alt1 + alt2) * inv_pochhammer_inf(3, 3, n)
    if family == "cap1":
        return _inf_products(
            ((p, p, -1), (3 * p, 3 * p, 1), (2 * p, 6 * p, 1), (4 * p, 6 * p, 1)), n
        ) * inv_pochhammer_inf(1, 1, n)
    if family == "cap2":
        return _inf_products(
            ((f + 2, 6 * p, -1), (5 * f + 4, 6 * p, -1), (6 * p, 6 * p, -1),
             (4 * f + 2, 12 * p, -1), (8 * f + 10, 12 * p, -1)), n
        ) * inv_pochhammer_inf(1, 1, n)
    if family == "cap2_analogue":
        return _inf_products(
            ((2 * p, 2 * p, -1), (2 * p, 12 * p, -1), (10 * p, 12 * p, -1)), n
        ) * inv_pochhammer_inf(1, 1, n)
    if family == "double":
        return _inf_products(
            ((p - s, 6 * p, -1), (5 * f + 5 + s, 6 * p, -1), (6 * p, 6 * p, -1),
             (4 * f + 4 + 2 * s, 12 * p, -1), (8 * f + 8 - 2 * s, 12 * p, -1)), n
        ) * inv_pochhammer_inf(1, 1, n)
    raise ParamOutOfRange(f"unknown hierarchy family {family!r}")


# ---------------------------------------------------------------------------
# Doubly bounded refinement hierarchy (the S-function ladder)
# ---------------------------------------------------------------------------

def refinement_hierarchy_lhs(nu: int, L: int, M: int) -> QSeries:
    """Exact parity-constrained multi-sum with the doubly bounded binomial
    kernel [L+M-i, L]_{q^3} [L-N_1, i]_{q^3}."""
    total = ZERO
    for nvec in index_vectors(nu, L):
        N = suffix_sums(nvec)
        SN = sum(N)
        n_last = nvec[-1]
        for i in range(min(M, L - N[0]) + 1):
            top1 = q_binomial(L + M - i, L, 3)
            top2 = q_binomial(L - N[0], i, 3)
            if not (top1 and top2):
                continue
            mid = ONE
            for j in range(nu - 1):
                mid = mid * q_binomial(i - sum_prefix(N, j) + nvec[j], nvec[j], 3)
                if not mid:
                    break
            if not mid:
                continue
            for m in range((i + SN) % 2, min(3 * n_last, i - SN) + 1, 2):
                half = (i - m - SN) // 2
                t3 = q_binomial(3 * n_last, m, 1)
                t4 = q_binomial(2 * n_last + half, 2 * n_last, 3)
                if t3 and t4:
                    e = (m * m + 3 * (i * i + sum(x * x for x in N))) // 2
                    total = total + (top1 * top2 * mid * t3 * t4).shift(e)
    return total


def sum_prefix(N: tuple[int, ...], j: int) -> int:
    """N_1 + N_2 + ... + N_{j+1} (first j+1 suffix sums)."""
    return sum(N[: j + 1])


def refinement_hierarchy_rhs(nu: int, L: int, M: int) -> QSeries:
    c = (nu + 2) * (nu + 1) // 2
    total = ZERO
    for j in range(-(L + M + 2), M + 2):
        s = warnaar_s(L, M, (nu + 2) * j, (nu + 1) * j, base=3)
        if s:
            total = total + s.shift(3 * c * j * j + j)
    return total


def refinement_limit_lhs(nu: int, n: int) -> QSeries:
    """M, L -> infinity: the two bounded binomials collapse to 1/(q^3;q^3)_i."""
    total = QSeries(0, (), n)
    i_max = math.isqrt(2 * n // 3) + 1
    for nvec in index_vectors(nu, math.isqrt(2 * n // 3) + 1):
        N = suffix_sums(nvec)
        SN = sum(N)
        if 3 * sum(x * x for x in N) > 2 * n:
            continue
        n_last = nvec[-1]
        for i in range(i_max + 1):
            if 3 * i * i > 2 * n:
                break
            mid = ONE
            for j in range(nu - 1):
                mid = mid * q_binomial(i - sum_prefix(N, j) + nvec[j], nvec[j], 3)
                if not mid:
                    break
            if not mid:
                continue
            for m in range((i + SN) % 2, min(3 * n_last, i - SN) + 1, 2):
                e = (m * m + 3 * (i * i + sum(x * x for x in N))) // 2
                if e > n:
                    break
                half = (i - m - SN) // 2
                t3 = q_binomial(3 * n_last, m, 1)
                t4 = q_binomial(2 * n_last + half, 2 * n_last, 3)
                if t3 and t4:
                    term = mid * t3 * t4 * _inv_poch_single(i, 3, n)
                    total = total + term.shift(e).truncate(n)
    return total


def refinement_limit_rhs(nu: int, n: int) -> QSeries:
    c = (nu + 2) * (nu + 1) // 2
    return _inf_products(
        ((6 * c, 6 * c, -1), (3 * c + 1, 6 * c, 1), (3 * c - 1, 6 * c, 1)), n
    ) * inv_pochhammer_inf(3, 3, n)


# ---------------------------------------------------------------------------
# Seed identity with Warnaar kernel and the trinomial identities
# ---------------------------------------------------------------------------

def seed_identity_lhs(L: int, M: int) -> QSeries:
    total = ZERO
    for i in range(min(M, L) + 1):
        top1 = q_binomial(L + M - i, L, 3)
        if not top1:
            continue
        for m in range(i % 2, min(3 * (L - i), i) + 1, 2):
            t2 = q_binomial(3 * (L - i), m, 1)
            t3 = q_binomial(2 * (L - i) + (i - m) // 2, 2 * (L - i), 3)
            if t2 and t3:
                total = total + (top1 * t2 * t3).shift((m * m + 3 * i * i) // 2)
    return total


def seed_identity_rhs(L: int, M: int) -> QSeries:
    total = ZERO
    for j in range(-(L + M + 2), M + 2):
        s = warnaar_s(L, M, 2 * j, j, base=3)
        if s:
            total = total + s.shift(3 * j * j + j)
    return total


def roundtri_lhs(which: int, L: int) -> QSeries:
    total = ZERO
    for n in range(L // 2 + 1):
        for m in range(L - 2 * n + 1):
            r = L - 2 * n - m
            e = 2 * m * m + 6 * m * n + 6 * n * n
            if which == 1:
                t = q_binomial(3 * r, m, 1) * q_binomial(2 * r + n, n, 3)
                total = total + t.shift(e)
            else:
                t1 = q_binomial(3 * r + 2, m, 1) * q_binomial(2 * r + n + 1, n, 3)
                total = total + t1.shift(e + m + 3 * n)
                t2 = q_binomial(3 * r, m, 1) * q_binomial(2 * r + n, n, 3)
                total = total + t2.shift(e + 3 * m + 6 * n + 1)
    return total


def roundtri_rhs(which: int, L: int) -> QSeries:
    total = ZERO
    for j in range(-(L // 2 + 2), L // 2 + 3):
        if which == 1:
            t = trinomial_t(L, 2 * j, 2 * j, base=3)
            if t:
                total = total + t.shift(3 * j * j + j)
        else:
            t = trinomial_t(L + 1, 2 * j + 1, 2 * j + 1, base=3)
            if t:
                total = total + t.shift(3 * j * j + 2 * j)
    return total


# ---------------------------------------------------------------------------
# Analytic limits of the base identities
# ---------------------------------------------------------------------------

def cap_analytic_lhs(which: int, n: int) -> QSeries:
    total = QSeries(0, (), n)
    m = 0
    while 2 * m * m <= n:
        k = 0
        while 2 * m * m + 6 * m * k + 6 * k * k <= n:
            e = 2 * m * m + 6 * m * k + 6 * k * k
            base_term = _inv_poch_single(m, 1, n) * _inv_poch_single(k, 3, n)
            if which == 1:
                total = total + base_term.shift(e).truncate(n)
            else:
                t = base_term.shift(e + m + 3 * k)
                total = total + t.truncate(n) + t.shift(1 + 2 * m + 3 * k).truncate(n)
            k += 1
        m += 1
    return total


def cap_analytic_rhs(which: int, n: int) -> QSeries:
    if which == 1:
        return _inf_products(((2, 6, 1), (4, 6, 1), (3, 3, 1)), n)
    return _inf_products(((1, 6, 1), (5, 6, 1), (3, 3, 1)), n)


# ---------------------------------------------------------------------------
# Right-hand-side rewrites (three displayed forms each)
# ---------------------------------------------------------------------------

def rhs_rewrite_split(which: int, L: int) -> QSeries:
    """The 3k / 3k+1 split form."""
    total = ZERO
    for k in range(-(L // 3 + 2), L // 3 + 3):
        b0 = q_binomial(2 * L, L + 3 * k, 1)
        b1 = q_binomial(2 * L, L + 3 * k + 1, 1)
        if which == 1:
            e0, e1 = 9 * k * k, (3 * k + 1) ** 2
        else:
            e0, e1 = 3 * k * (3 * k + 1), (3 * k + 1) * (3 * k + 2)
        if b0:
            total = total + b0.shift(e0)
        if b1:
            total = total - b1.shift(e1)
    return total


def rhs_rewrite_rational(which: int, L: int) -> QSeries:
    """The rational-factor form, evaluated by one exact division of the
    common-denominator numerator, minus the divisibility correction term."""
    js = range(-(L // 3), L // 3 + 1)
    dens = {j: ONE - monomial(L + 3 * j + 1) for j in js}
    denominator = ONE
    for j in js:
        denominator = denominator * dens[j]
    numerator = ZERO
    for j in js:
        b = q_binomial(2 * L, L + 3 * j, 1)
        if not b:
            continue
        if which == 1:
            piece = (ONE - monomial(6 * j + 1)).shift(9 * j * j) * b
        else:
            # exponent 3j(3j+1), not the 3j(3j-1) sometimes quoted: combining
            # the split form over the common denominator gives
            # q^{3j(3j+1)} (1 - q^{6j+2} - (1-q) q^{L+3j+1}); verified for L <= 8.
            factor = ONE - monomial(6 * j + 2) - (ONE - monomial(1)).shift(L + 3 * j + 1)
            piece = factor.shift(3 * j * (3 * j + 1)) * b
        rest = ONE
        for k in js:
            if k != j:
                rest = rest * dens[k]
        numerator = numerator + piece * rest
    total = div_exact(numerator, denominator) if numerator else ZERO
    if (L - 2) % 3 == 0:
        total = total - monomial(L * L if which == 1 else L * (L - 1))
    return total


def vanishing_aux_sum(L: int) -> QSeries:
    """sum_j jacobi3(j) q^{j^2} [2L, L-j]: antisymmetric, hence zero."""
    return _binomial_sum(L, 0, 1, lambda j: monomial(j * j, jacobi3(j)))


def k_transform_lhs(k: int, L: int) -> QSeries:
    return _binomial_sum(L, 0, 1, lambda j: monomial(k * j * (j - 1), jacobi3(j + 1)))


def k_transform_rhs(k: int, L: int) -> QSeries:
    inner = _binomial_sum(
        L, 0, 1, lambda j: monomial(k * j * j - (k - 1) * j, jacobi3(j + 1))
    )
    return inner.shift(L)


def cor_cap2_analogue_lhs(L: int) -> QSeries:
    return seed_cap1(L).shift(L)


def cor_cap2_analogue_rhs(L: int) -> QSeries:
    return _binomial_sum(L, 0, 1, lambda j: monomial(j * (j - 1), jacobi3(j + 1)))


# ---------------------------------------------------------------------------
# Dual identities (q -> 1/q) and their limits
# ---------------------------------------------------------------------------

def dual_lhs(which: int, L: int) -> QSeries:
    total = ZERO
    for m in range(L // 2 + 1):
        for n_ in range(L - 2 * m + 1):
            rem = L - n_ - 2 * m
            if which == 1:
                if rem % 3 == 0:
                    ratio = poch_ratio(((L, 1),), ((m, 1), (n_, 1), (rem // 3, 3)))
                    e = m * (m - 1) // 2 + L * n_
                    total = total + ratio.shift(e) * monomial(0, (-1) ** m)
            else:
                e = m * (m + 1) // 2 + (L + 1) * n_
                if rem % 3 == 0:
                    ratio = poch_ratio(((L, 1),), ((m, 1), (n_, 1), (rem // 3, 3)))
                    total = total + ratio.shift(e) * monomial(0, (-1) ** m)
                if rem >= 1 and (rem - 1) % 3 == 0:
                    ratio = poch_ratio(((L, 1),), ((m, 1), (n_, 1), ((rem - 1) // 3, 3)))
                    total = total - ratio.shift(e) * monomial(0, (-1) ** m)
    return total


def dual_rhs(which: int, L: int) -> QSeries:
    if which == 1:
        return _binomial_sum(L, 0, 1, lambda j: monomial(0, jacobi3(j + 1)))
    return _binomial_sum(L, 0, 1, lambda j: monomial(L - j, jacobi3(j + 1)))


def dual_construct(which: int, side: str, L: int) -> QSeries:
    """Apply q -> 1/q to the base identity and renormalize by q^{L^2} (+L)."""
    if which == 1:
        value = seed_cap1(L) if side == "lhs" else rhs_new_fin_cap(1, L)
        return value.invert_q().shift(L * L)
    value = seed_cap2(L) if side == "lhs" else rhs_new_fin_cap(2, L)
    return value.invert_q().shift(L * L + L)


def dual_limit_reference(b: int, n: int) -> QSeries:
    total = QSeries(0, (), n)
    for k in range(n + 1):
        c = jacobi3(k + b)
        if c:
            total = total + (_inv_poch_single(k, 1, n) * c).shift(k).truncate(n)
    return total


def _eta_ratio(n: int) -> QSeries:
    return (pochhammer_inf(1, 1, n) * inv_pochhammer_inf(3, 3, n)).truncate(n)


def dual_limit_unified(b: int, n: int) -> QSeries:
    total = QSeries(0, (), n)
    m = 0
    while m * (m + 1) // 2 <= n:
        c = jacobi3(m - b)
        if c:
            sign = c * (-1) ** (m + 1)
            total = total + (_inv_poch_single(m, 1, n) * sign).shift(m * (m + 1) // 2).truncate(n)
        m += 1
    return (_eta_ratio(n) * total).truncate(n)


def dual_limit_specific(b: int, n: int) -> QSeries:
    total = QSeries(0, (), n)
    m = 0
    while True:
        if b == 2:
            e, length, sign = 3 * m * (3 * m + 1) // 2, 3 * m + 1, (-1) ** (m + 1)
        elif b == 0:
            e, length, sign = (3 * m + 1) * (3 * m + 2) // 2, 3 * m + 2, (-1) ** m
        else:
            e, length, sign = 3 * m * (3 * m - 1) // 2, 3 * m, (-1) ** m
        if e > n:
            break
        total = total + (_inv_poch_single(length, 1, n) * sign).shift(e).truncate(n)
        m += 1
    return (_eta_ratio(n) * total).truncate(n)


# ---------------------------------------------------------------------------
# Case registry
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Bounds:
    """Parameter grid for suite runs."""

    l_max: int = 8
    m_max: int = 8
    f_max: int = 3
    nu_max: int = 2
    k_max: int = 3
    s_values: tuple[int, ...] | None = None  # None = all 0..f
    trunc: int = 30


@dataclass(frozen=True)
class IdentityCase:
    id: str
    mode: str  # "exact" | "truncated"
    params: tuple[str, ...]
    sides: tuple[tuple[str, Callable[..., QSeries]], ...]
    grid: Callable[[Bounds], Iterator[dict]]
    validate: Callable[[Mapping[str, int]], None] | None = None

    def side(self, name: str) -> Callable[..., QSeries]:
        for side_name, fn in self.sides:
            if side_name == name:
                return fn
        raise KeyError(name)


@dataclass(frozen=True)
class Report:
    id: str
    params: dict
    mode: str
    verdict: bool
    first_mismatch: dict | None
    lhs_degree: int
    rhs_degree: int
    millis: float

    def to_json_dict(self, with_timing: bool = True) -> dict:
        out = {
            "id": self.id,
            "params": dict(sorted(self.params.items())),
            "mode": self.mode,
            "verdict": self.verdict,
            "lhs_degree": self.lhs_degree,
            "rhs_degree": self.rhs_degree,
        }
        if self.first_mismatch is not None:
            out["first_mismatch"] = self.first_mismatch
        if with_timing:
            out["millis"] = self.millis
        return out


CASES: dict[str, IdentityCase] = {}


def _register(case: IdentityCase) -> None:
    if case.id in CASES:
        raise ValueError(f"duplicate case id {case.id!r}")
    CASES[case.id] = case


def _check_params(case: IdentityCase, params: Mapping[str, int]) -> None:
    for name in case.params:
        if name not in params:
            raise ParamOutOfRange(f"{case.id}: missing parameter {name!r}")
        value = params[name]
        if not isinstance(value, int):
            raise ParamOutOfRange(f"{case.id}: parameter {name!r} must be an integer")
        minimum = 1 if name in ("f", "nu", "k") else 0
        if value < minimum:
            raise ParamOutOfRange(f"{case.id}: parameter {name!r} must be >= {minimum}")
    for name in params:
        if name not in case.params:
            raise ParamOutOfRange(f"{case.id}: unknown parameter {name!r}")
    if case.validate is not None:
        case.validate(params)


def verify_case(case_id: str, params: Mapping[str, int]) -> Report:
    """Evaluate all sides of a case and compare each against the first."""
    try:
        case = CASES[case_id]
    except KeyError:
        raise ParamOutOfRange(
            f"unknown case {case_id!r}; valid ids: {', '.join(sorted(CASES))}"
        ) from None
    _check_params(case, params)
    start = time.perf_counter()
    values = [(name, fn(**params)) for name, fn in case.sides]
    verdict = True
    mismatch: dict | None = None
    reference_name, reference = values[0]
    for name, value in values[1:]:
        outcome: Comparison = compare(reference, value)
        if not outcome and verdict:
            verdict = False
            mismatch = {
                "side": name,
                "exponent": outcome.mismatch_exponent,
                "reference_coeff": outcome.lhs_coeff,
                "side_coeff": outcome.rhs_coeff,
            }
    millis = (time.perf_counter() - start) * 1000.0
    return Report(
        id=case_id,
        params=dict(params),
        mode=case.mode,
        verdict=verdict,
        first_mismatch=mismatch,
        lhs_degree=reference.degree(),
        rhs_degree=values[1][1].degree(),
        millis=millis,
    )


def iterate_grid(case_id: str, bounds: Bounds) -> Iterator[dict]:
    yield from CASES[case_id].grid(bounds)


def _grid_L(bounds: Bounds) -> Iterator[dict]:
    for L in range(bounds.l_max + 1):
        yield {"L": L}


def _grid_M(bounds: Bounds) -> Iterator[dict]:
    for M in range(bounds.m_max + 1):
        yield {"M": M}


def _grid_LM(bounds: Bounds) -> Iterator[dict]:
    for L in range(bounds.l_max + 1):
        for M in range(bounds.m_max + 1):
            yield {"L": L, "M": M}


def _grid_trunc(bounds: Bounds) -> Iterator[dict]:
    yield {"n": bounds.trunc}


def _grid_kL(bounds: Bounds) -> Iterator[dict]:
    for k in range(1, bounds.k_max + 1):
        for L in range(bounds.l_max + 1):
            yield {"k": k, "L": L}


def _grid_fL(bounds: Bounds) -> Iterator[dict]:
    for f in range(1, bounds.f_max + 1):
        for L in range(bounds.l_max + 1):
            yield {"f": f, "L": L}


def _grid_fsL(bounds: Bounds) -> Iterator[dict]:
    for f in range(1, bounds.f_max + 1):
        s_values = bounds.s_values if bounds.s_values is not None else range(f + 1)
        for s in s_values:
            if 0 <= s <= f:
                for L in range(bounds.l_max + 1):
                    yield {"f": f, "s": s, "L": L}


def _grid_f_trunc(bounds: Bounds) -> Iterator[dict]:
    for f in range(1, bounds.f_max + 1):
        yield {"f": f, "n": bounds.trunc}


def _grid_fs_trunc(bounds: Bounds) -> Iterator[dict]:
    for f in range(1, bounds.f_max + 1):
        s_values = bounds.s_values if bounds.s_values is not None else range(f + 1)
        for s in s_values:
            if 0 <= s <= f:
                yield {"f": f, "s": s, "n": bounds.trunc}


def _grid_nuLM(bounds: Bounds) -> Iterator[dict]:
    for nu in range(1, bounds.nu_max + 1):
        for L in range(bounds.l_max + 1):
            for M in range(bounds.m_max + 1):
                yield {"nu": nu, "L": L, "M": M}


def _grid_nu_trunc(bounds: Bounds) -> Iterator[dict]:
    for nu in range(1, bounds.nu_max + 1):
        yield {"nu": nu, "n": bounds.trunc}


def _grid_b_trunc(bounds: Bounds) -> Iterator[dict]:
    for b in range(3):
        yield {"b": b, "n": bounds.trunc}


def _validate_s_le_f(params: Mapping[str, int]) -> None:
    if params["s"] > params["f"]:
        raise ParamOutOfRange("twist s must satisfy 0 <= s <= f")


def _validate_b(params: Mapping[str, int]) -> None:
    if params["b"] not in (0, 1, 2):
        raise ParamOutOfRange("b must be 0, 1, or 2")


def _build_registry() -> None:
    _register(IdentityCase(
        "cap_analytic_1", "truncated", ("n",),
        (("lhs", lambda n: cap_analytic_lhs(1, n)),
         ("rhs", lambda n: cap_analytic_rhs(1, n))),
        _grid_trunc))
    _register(IdentityCase(
        "cap_analytic_2", "truncated", ("n",),
        (("lhs", lambda n: cap_analytic_lhs(2, n)),
         ("rhs", lambda n: cap_analytic_rhs(2, n))),
        _grid_trunc))
    for which in (1, 2):
        _register(IdentityCase(
            f"fin_cap_roundtri_{which}", "exact", ("L",),
            (("lhs", lambda L, w=which: roundtri_lhs(w, L)),
             ("rhs", lambda L, w=which: roundtri_rhs(w, L))),
            _grid_L))
    for which in (1, 2, 3):
        seed = {1: seed_cap1_binomial, 2: seed_cap2_binomial_two_sums, 3: seed_sum_cap}[which]
        _register(IdentityCase(
            f"fin_cap_binomial_{which}", "exact", ("M",),
            (("lhs", lambda M, fn=seed: fn(M)),
             ("rhs", lambda M, w=which: rhs_fin_cap_binomial(w, M))),
            _grid_M))
    _register(IdentityCase(
        "seed_identity", "exact", ("L", "M"),
        (("lhs", seed_identity_lhs), ("rhs", seed_identity_rhs)),
        _grid_LM))
    _register(IdentityCase(
        "s_hierarchy", "exact", ("nu", "L", "M"),
        (("lhs", refinement_hierarchy_lhs), ("rhs", refinement_hierarchy_rhs)),
        _grid_nuLM))
    _register(IdentityCase(
        "s_hierarchy_limit", "truncated", ("nu", "n"),
        (("lhs", refinement_limit_lhs), ("rhs", refinement_limit_rhs)),
        _grid_nu_trunc))
    for which in (1, 2):
        seed = {1: seed_cap1, 2: seed_cap2}[which]
        _register(IdentityCase(
            f"new_fin_cap_{which}", "exact", ("L",),
            (("lhs", lambda L, fn=seed: fn(L)),
             ("rhs", lambda L, w=which: rhs_new_fin_cap(w, L))),
            _grid_L))
    for which in (1, 2):
        _register(IdentityCase(
            f"rhs_rewrites_{which}", "exact", ("L",),
            (("jacobi", lambda L, w=which: rhs_new_fin_cap(w, L)),
             ("split", lambda L, w=which: rhs_rewrite_split(w, L)),
             ("rational", lambda L, w=which: rhs_rewrite_rational(w, L))),
            _grid_L))
    _register(IdentityCase(
        "fin_cap2_rhs_alt", "exact", ("L",),
        (("lhs", lambda L: rhs_new_fin_cap(2, L)),
         ("rhs", lambda L: _binomial_sum(
             L, 1, 1, lambda j: monomial(j * (j + 1), jacobi3(j + 1))))),
        _grid_L))
    _register(IdentityCase(
        "vanishing_aux", "exact", ("L",),
        (("sum", vanishing_aux_sum), ("zero", lambda L: ZERO)),
        _grid_L))
    _register(IdentityCase(
        "k_transform", "exact", ("k", "L"),
        (("lhs", k_transform_lhs), ("rhs", k_transform_rhs)),
        _grid_kL))
    _register(IdentityCase(
        "cor_cap2_analogue", "exact", ("L",),
        (("lhs", cor_cap2_analogue_lhs), ("rhs", cor_cap2_analogue_rhs)),
        _grid_L))
    for name in FAMILIES:
        if name == "double":
            continue
        _register(IdentityCase(
            f"hierarchy_finite_{name}", "exact", ("f", "L"),
            (("lhs", lambda f, L, fam=name: hierarchy_finite_lhs(fam, f, L)),
             ("rhs", lambda f, L, fam=name: hierarchy_finite_rhs(fam, f, L))),
            _grid_fL))
        _register(IdentityCase(
            f"hierarchy_limit_{name}", "truncated", ("f", "n"),
            (("lhs", lambda f, n, fam=name: hierarchy_limit_lhs(fam, f, n)),
             ("rhs", lambda f, n, fam=name: hierarchy_limit_rhs(fam, f, n))),
            _grid_f_trunc))
    _register(IdentityCase(
        "hierarchy_finite_double", "exact", ("f", "s", "L"),
        (("lhs", lambda f, s, L: hierarchy_finite_lhs("double", f, L, s)),
         ("rhs", lambda f, s, L: hierarchy_finite_rhs("double", f, L, s))),
        _grid_fsL, _validate_s_le_f))
    _register(IdentityCase(
        "hierarchy_limit_double", "truncated", ("f", "s", "n"),
        (("lhs", lambda f, s, n: hierarchy_limit_lhs("double", f, n, s)),
         ("rhs", lambda f, s, n: hierarchy_limit_rhs("double", f, n, s))),
        _grid_fs_trunc, _validate_s_le_f))
    _register(IdentityCase(
        "hierarchy_limit_cap2_f1_corollary", "truncated", ("n",),
        (("lhs", lambda n: hierarchy_limit_lhs("cap2", 1, n)),
         ("rhs", lambda n: (pochhammer_inf(3, 3, n)
                            * inv_pochhammer_inf(1, 1, n)).truncate(n))),
        _grid_trunc))
    _register(IdentityCase(
        "corollary_transform", "truncated", ("nu", "n"),
        (("lhs", refinement_limit_lhs),
         ("rhs", lambda nu, n: hierarchy_limit_lhs(
             "cap1_binomial", nu * (nu + 3) // 2, n))),
        _grid_nu_trunc))
    for which in (1, 2):
        _register(IdentityCase(
            f"dual_identity_{which}", "exact", ("L",),
            (("lhs", lambda L, w=which: dual_lhs(w, L)),
             ("rhs", lambda L, w=which: dual_rhs(w, L)),
             ("construct_lhs", lambda L, w=which: dual_construct(w, "lhs", L)),
             ("construct_rhs", lambda L, w=which: dual_construct(w, "rhs", L))),
            _grid_L))
    _register(IdentityCase(
        "dual_limit", "truncated", ("b", "n"),
        (("reference", dual_limit_reference),
         ("specific", dual_limit_specific),
         ("unified", dual_limit_unified)),
        _grid_b_trunc, _validate_b))


_build_registry()
