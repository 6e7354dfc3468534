"""Recurrence catalog, factor witnesses, and initial-condition downgrades."""

import pytest

from qcap.recurrences import (
    CATALOG,
    RECURRENCES,
    SEQUENCES,
    constant_sequence,
    default_window,
    perturbed,
    s1_sum,
    s2_sum,
    short_residual,
    verify_catalog,
    verify_factor_witness,
    verify_initial_condition_argument,
    verify_recurrence,
)
from qcap.identities import seed_cap2
from qcap.series import Q, ZERO


class TestCatalog:
    def test_all_pairs_hold(self):
        reports = verify_catalog(length=9)
        assert len(reports) == len(CATALOG)
        for report in reports:
            assert report.ok, (report.name, report.first_failure())

    def test_windows_have_length_at_least_eight(self):
        for _, rec_id in CATALOG:
            assert len(default_window(RECURRENCES[rec_id], 9)) >= 8

    def test_sum_decomposition(self):
        # the two double sums add up to the second identity's LHS
        for L in range(9):
            assert s1_sum(L) + s2_sum(L) == seed_cap2(L)

    def test_negative_index_vanishes(self):
        assert s1_sum(-1) == ZERO
        assert SEQUENCES["cap1_lhs"](-2) == ZERO


class TestWitnesses:
    def test_b_witness(self):
        report = verify_factor_witness("b", range(4, 13))
        assert report.ok
        assert all(p for _, p in report.expansion_checks)

    def test_c_witness(self):
        report = verify_factor_witness("c", range(6, 13))
        assert report.ok
        assert all(p for _, p in report.expansion_checks)

    def test_relation_checks_are_vacuous(self):
        # both sides of the second identity satisfy the short recurrence, so
        # the short residual vanishes identically and the substance of the
        # witness check is the coefficientwise expansion against the long form
        for seq_id in ("cap2_lhs", "cap2_rhs"):
            for L in range(2, 10):
                assert short_residual(SEQUENCES[seq_id], L).is_zero()

    def test_unknown_witness(self):
        with pytest.raises(ValueError):
            verify_factor_witness("d", range(6, 8))


class TestInitialConditions:
    @pytest.mark.parametrize("which", ["a", "b", "c"])
    def test_downgrade(self, which):
        assert verify_initial_condition_argument(which, extra_terms=3)

    def test_unknown_sequence(self):
        with pytest.raises(ValueError):
            verify_initial_condition_argument("z")


class TestNegativeControls:
    def test_constant_fails_a_short(self):
        report = verify_recurrence(
            constant_sequence, RECURRENCES["a_short"], range(2, 6))
        assert not report.ok
        assert report.first_failure() == 2

    def test_perturbed_coefficient_fails(self):
        bad = perturbed(RECURRENCES["b_short"], 1, Q)
        report = verify_recurrence(SEQUENCES["cap2_rhs"], bad, range(2, 6))
        assert not report.ok

    def test_window_below_order_rejected(self):
        with pytest.raises(ValueError):
            verify_recurrence(
                SEQUENCES["cap2_rhs"], RECURRENCES["b_proven"], range(3, 8))
