"""Ring arithmetic on exact Laurent polynomials and truncated series."""

import pytest
from hypothesis import given, strategies as st

from qcap.series import (
    ONE,
    Q,
    QSeries,
    ZERO,
    Comparison,
    NonDivisible,
    TruncatedInput,
    compare,
    div_exact,
    from_terms,
    inverse,
    monomial,
)


def poly(*terms):
    return from_terms(dict(terms))


laurent = st.builds(
    from_terms,
    st.dictionaries(
        st.integers(min_value=-20, max_value=20),
        st.integers(min_value=-10**6, max_value=10**6),
        max_size=12,
    ),
)
nonzero_laurent = laurent.filter(bool)


class TestBasics:
    def test_zero_is_falsy(self):
        assert not ZERO
        assert ONE

    def test_add_identity(self):
        x = poly((0, 1), (3, -2))
        assert ZERO + x == x
        assert x + ZERO == x

    def test_add_hand_expansion(self):
        # (1+q) + (q - q^2) = 1 + 2q - q^2
        assert (ONE + Q) + (Q - monomial(2)) == poly((0, 1), (1, 2), (2, -1))

    def test_add_truncation_swallows(self):
        a = QSeries(0, (1, 1), 1)
        assert a + monomial(2) == a

    def test_mul_identity(self):
        x = poly((-1, 3), (4, 5))
        assert ONE * x == x

    def test_mul_hand_expansion(self):
        assert (ONE - Q) * (ONE + Q) == ONE - monomial(2)

    def test_mul_laurent_offsets(self):
        assert monomial(-1) * monomial(2) == Q

    def test_int_mixing(self):
        assert 1 + Q == ONE + Q
        assert 2 * Q == monomial(1, 2)
        assert 1 - Q == ONE - Q

    def test_pow(self):
        assert (ONE + Q) ** 2 == poly((0, 1), (1, 2), (2, 1))
        assert (ONE + Q) ** 0 == ONE

    def test_normalization_rejects_trailing_zeros(self):
        assert QSeries(0, (0, 1, 0)) == Q
        assert QSeries(5, ()) == ZERO


class TestDivExact:
    def test_geometric_factor(self):
        assert div_exact(ONE - monomial(2), ONE - Q) == ONE + Q

    def test_self_division(self):
        x = poly((0, 2), (3, -4))
        assert div_exact(x, x) == ONE

    def test_pochhammer_quotient(self):
        num = (ONE - Q) * (ONE - monomial(2))
        assert div_exact(num, ONE - Q) == ONE - monomial(2)

    def test_non_divisible_raises(self):
        with pytest.raises(NonDivisible):
            div_exact(ONE + Q, ONE - Q)

    def test_truncated_operand_rejected(self):
        with pytest.raises(TruncatedInput):
            div_exact(QSeries(0, (1,), 4), ONE - Q)


class TestStructuralOps:
    def test_substitute_q_power(self):
        assert (ONE + Q).substitute_q_power(3) == ONE + monomial(3)
        assert monomial(-1).substitute_q_power(2) == monomial(-2)
        assert ZERO.substitute_q_power(5) == ZERO

    def test_invert_q(self):
        assert Q.invert_q() == monomial(-1)
        x = poly((0, 1), (1, 1), (3, 1))
        assert x.invert_q() == poly((0, 1), (-1, 1), (-3, 1))

    def test_invert_q_rejects_truncated(self):
        with pytest.raises(TruncatedInput):
            QSeries(0, (1,), 3).invert_q()

    def test_truncate(self):
        x = poly((0, 1), (1, 1), (5, 1))
        assert x.truncate(3) == QSeries(0, (1, 1), 3)
        assert ZERO.truncate(10) == QSeries(0, (), 10)
        assert x.truncate(10).truncate(3) == x.truncate(3).truncate(10)

    def test_shift(self):
        assert (ONE + Q).shift(2) == monomial(2) + monomial(3)


class TestCompare:
    def test_exact_equal(self):
        assert compare(ONE + Q, ONE + Q)

    def test_truncated_agreement(self):
        outcome = compare(QSeries(0, (1, 1), 1), ONE + Q + monomial(9))
        assert outcome
        assert outcome.mode == "truncated-agreement up to 1"

    def test_mismatch_reported(self):
        outcome: Comparison = compare(ONE, ONE + Q)
        assert not outcome
        assert outcome.mismatch_exponent == 1
        assert (outcome.lhs_coeff, outcome.rhs_coeff) == (0, 1)


class TestRingAxioms:
    @given(laurent, laurent, laurent)
    def test_associativity(self, a, b, c):
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)

    @given(laurent, laurent)
    def test_commutativity(self, a, b):
        assert a + b == b + a
        assert a * b == b * a

    @given(laurent, laurent, laurent)
    def test_distributivity(self, a, b, c):
        assert a * (b + c) == a * b + a * c

    @given(laurent, nonzero_laurent)
    def test_div_roundtrip(self, a, b):
        assert div_exact(a * b, b) == a

    @given(laurent, laurent)
    def test_invert_q_homomorphism(self, a, b):
        assert (a * b).invert_q() == a.invert_q() * b.invert_q()

    @given(laurent)
    def test_invert_q_involution(self, a):
        assert a.invert_q().invert_q() == a

    @given(laurent, laurent)
    def test_canonical_normalization(self, a, b):
        # two construction paths for the same value agree structurally
        lhs = (a + b) * (a - b)
        rhs = a * a - b * b
        assert (lhs.offset, lhs.coeffs) == (rhs.offset, rhs.coeffs)


class TestInverse:
    def test_geometric_series(self):
        assert inverse(ONE - Q, 4) == QSeries(0, (1, 1, 1, 1, 1), 4)

    def test_roundtrip(self):
        x = ONE - Q - monomial(2)
        assert (inverse(x, 8) * x).truncate(8) == QSeries(0, (1,), 8)


class TestTextForms:
    def test_to_text(self):
        assert (ONE + monomial(2) - monomial(4)).to_text() == "1 + q^2 - q^4"
        assert ZERO.to_text() == "0"
        assert monomial(-1).to_text() == "q^-1"

    def test_json_roundtrip(self):
        x = QSeries(-1, (1, 0, 3), 7)
        d = x.to_json_dict()
        assert QSeries(d["offset"], d["coeffs"], d["trunc"]) == x
