"""Executable special case of the Bailey lemma.

The lemma: if F_a(L) = sum_j alpha_j [2L+a, L-j], then

    sum_{r>=0} q^{r^2+ar} (q)_{2L+a} / ((q)_{L-r} (q)_{2r+a}) F_a(r)
        = sum_j alpha_j q^{j^2+aj} [2L+a, L-j],

for a in {0, 1}; everything here also works after q -> q^base.  Iterating the
transform generates the hierarchy left-hand sides; the twisted chain
interleaves a q^L multiplication (absorbed by the quadratic-shift
transformation of the Jacobi-weighted sum) between applications.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Callable

from qcap.series import ONE, QSeries, ZERO, monomial
from qcap.identities import (
    ParamOutOfRange,
    cor_cap2_analogue_lhs,
    seed_cap1,
    seed_cap1_binomial,
    seed_cap2,
    seed_cap2_binomial,
    seed_sum_cap,
)
from qcap.qcombinat import jacobi3, poch_ratio, q_binomial


@dataclass(frozen=True)
class BaileyAlpha:
    """A symbolic alpha-sequence: exact Laurent polynomial per index j."""

    name: str
    alpha: Callable[[int], QSeries]
    a: int  # 0 or 1
    base: int = 1

    def __post_init__(self) -> None:
        if self.a not in (0, 1):
            raise ParamOutOfRange("Bailey parameter a must be 0 or 1")
        if self.base < 1:
            raise ParamOutOfRange("base must be a positive integer")


def bailey_f(alpha: BaileyAlpha, L: int) -> QSeries:
    """F_a(L) = sum_j alpha(j) [2L+a, L-j]; support |j| <= L+a."""
    total = ZERO
    for j in range(-L - alpha.a, L + alpha.a + 1):
        w = alpha.alpha(j)
        if w:
            b = q_binomial(2 * L + alpha.a, L - j, alpha.base)
            if b:
                total = total + w * b
    return total


def bailey_step(alpha: BaileyAlpha) -> BaileyAlpha:
    """alpha(j) -> alpha(j) * q^{base*(j^2 + a*j)}."""
    inner, a, base = alpha.alpha, alpha.a, alpha.base

    def stepped(j: int) -> QSeries:
        value = inner(j)
        return value.shift(base * (j * j + a * j)) if value else ZERO

    return replace(alpha, name=f"step({alpha.name})", alpha=stepped)


def bailey_lhs_transform(
    g: Callable[[int], QSeries], a: int, base: int = 1
) -> Callable[[int], QSeries]:
    """The r-sum side of the lemma applied to an arbitrary L-indexed family."""

    def transformed(L: int) -> QSeries:
        total = ZERO
        for r in range(L + 1):
            ratio = poch_ratio(
                ((2 * L + a, base),), ((L - r, base), (2 * r + a, base))
            )
            total = total + ratio.shift(base * (r * r + a * r)) * g(r)
        return total

    return transformed


def verify_bailey_theorem(alpha: BaileyAlpha, l_max: int) -> list[tuple[int, bool]]:
    """Per-L check that the transform of F equals F of the stepped alpha."""
    transformed = bailey_lhs_transform(lambda r: bailey_f(alpha, r), alpha.a, alpha.base)
    stepped = bailey_step(alpha)
    out = []
    for L in range(l_max + 1):
        out.append((L, transformed(L) == bailey_f(stepped, L)))
    return out


# ---------------------------------------------------------------------------
# Alpha catalog: every alpha-sequence driving a hierarchy in this package
# ---------------------------------------------------------------------------

def _unit(j: int) -> QSeries:
    return ONE if j == 0 else ZERO


ALPHAS: dict[str, BaileyAlpha] = {
    "unit": BaileyAlpha("unit", _unit, a=0, base=1),
    "cap1_binomial": BaileyAlpha(
        "cap1_binomial", lambda j: monomial(3 * j * j + j), a=0, base=3),
    "cap2_binomial": BaileyAlpha(
        "cap2_binomial", lambda j: monomial(3 * j * j + 2 * j), a=1, base=3),
    "sum_cap": BaileyAlpha(
        "sum_cap",
        lambda j: monomial(3 * j * j - 2 * j) + monomial(3 * j * j + j),
        a=0, base=3),
    "cap1": BaileyAlpha(
        "cap1",
        lambda j: monomial(j * j, jacobi3(j + 1)) if jacobi3(j + 1) else ZERO,
        a=0, base=1),
    "cap2": BaileyAlpha(
        "cap2",
        lambda j: monomial(j * j + j, jacobi3(j + 1)) if jacobi3(j + 1) else ZERO,
        a=0, base=1),
    "cap2_alt": BaileyAlpha(
        "cap2_alt",
        lambda j: monomial(j * j + j, jacobi3(j + 1)) if jacobi3(j + 1) else ZERO,
        a=1, base=1),
    "cap1_shifted": BaileyAlpha(
        "cap1_shifted",
        lambda j: monomial(j * (j - 1), jacobi3(j + 1)) if jacobi3(j + 1) else ZERO,
        a=0, base=1),
}


# ---------------------------------------------------------------------------
# Hierarchy generation (the cross-oracle for identities.hierarchy_finite_lhs)
# ---------------------------------------------------------------------------

_SEEDS: dict[str, tuple[Callable[[int], QSeries], int, int]] = {
    # family -> (seed LHS evaluator, a, base)
    "cap1_binomial": (seed_cap1_binomial, 0, 3),
    "cap2_binomial": (seed_cap2_binomial, 1, 3),
    "sum_cap": (seed_sum_cap, 0, 3),
    "cap1": (seed_cap1, 0, 1),
    "cap2": (seed_cap2, 0, 1),
    "cap2_analogue": (seed_cap2, 1, 1),
    "double": (cor_cap2_analogue_lhs, 0, 1),
}


def _memoized(g: Callable[[int], QSeries]) -> Callable[[int], QSeries]:
    cache: dict[int, QSeries] = {}

    def wrapped(L: int) -> QSeries:
        if L not in cache:
            cache[L] = g(L)
        return cache[L]

    return wrapped


def generate_hierarchy_lhs(family: str, f: int, L: int, s: int = 0) -> QSeries:
    """Iterate the transform f times from the family seed.

    For the twisted family the chain is: seed already carries one q^L factor;
    each of the first s applications is followed by another q^L multiplication
    except the last, after which the remaining f-s applications are plain.
    """
    if family not in _SEEDS:
        raise ParamOutOfRange(f"unknown hierarchy family {family!r}")
    seed, a, base = _SEEDS[family]
    if f < 1:
        raise ParamOutOfRange("hierarchy depth f must be >= 1")
    if family == "double":
        if not 0 <= s <= f:
            raise ParamOutOfRange("twist s must satisfy 0 <= s <= f")
        g = _memoized(seed_cap1 if s == 0 else seed)
        for t in range(1, s + 1):
            g = _memoized(bailey_lhs_transform(g, a, base))
            if t < s:
                g = _memoized(lambda r, inner=g: inner(r).shift(r))
        for _ in range(f - s):
            g = _memoized(bailey_lhs_transform(g, a, base))
        return g(L)
    if s:
        raise ParamOutOfRange(f"family {family!r} takes no twist")
    g = _memoized(seed)
    for _ in range(f):
        g = _memoized(bailey_lhs_transform(g, a, base))
    return g(L)


# ---------------------------------------------------------------------------
# Named checkpoints of the twisted-chain derivation
# ---------------------------------------------------------------------------

def checkpoint_first_application(L: int) -> tuple[QSeries, QSeries]:
    """One transform of the q^L-shifted base sum; RHS weight jacobi3(j+1) q^{2j^2-j}."""
    lhs = bailey_lhs_transform(cor_cap2_analogue_lhs, 0, 1)(L)
    rhs = bailey_f(bailey_step(ALPHAS["cap1_shifted"]), L)
    return lhs, rhs


def checkpoint_after_k_transform(L: int) -> tuple[QSeries, QSeries]:
    """The previous checkpoint times q^L; RHS weight jacobi3(j+1) q^{2j^2-2j}."""
    lhs = bailey_lhs_transform(cor_cap2_analogue_lhs, 0, 1)(L).shift(L)
    alpha = BaileyAlpha(
        "after_k",
        lambda j: monomial(2 * j * j - 2 * j, jacobi3(j + 1)) if jacobi3(j + 1) else ZERO,
        a=0, base=1)
    return lhs, bailey_f(alpha, L)
