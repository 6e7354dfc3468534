"""Bailey-lemma engine: theorem checks, hierarchy generation, checkpoints."""

import pytest

from qcap.bailey import (
    ALPHAS,
    BaileyAlpha,
    bailey_f,
    bailey_lhs_transform,
    bailey_step,
    checkpoint_after_k_transform,
    checkpoint_first_application,
    generate_hierarchy_lhs,
    verify_bailey_theorem,
)
from qcap.identities import (
    ParamOutOfRange,
    hierarchy_finite_lhs,
    hierarchy_finite_rhs,
)
from qcap.series import ONE, ZERO


FAMILIES = (
    "cap1_binomial", "cap2_binomial", "sum_cap",
    "cap1", "cap2", "cap2_analogue", "double",
)


class TestTheorem:
    @pytest.mark.parametrize("name", sorted(ALPHAS))
    def test_all_catalog_alphas(self, name):
        results = verify_bailey_theorem(ALPHAS[name], l_max=6)
        assert results == [(L, True) for L in range(7)]

    def test_unit_alpha_transform_values(self):
        # with alpha = delta_{j,0}: F(L) = [2L, L], so the transform at L=0 is 1
        transformed = bailey_lhs_transform(
            lambda r: bailey_f(ALPHAS["unit"], r), 0)
        assert transformed(0) == ONE

    def test_step_adds_quadratic_weight(self):
        stepped = bailey_step(ALPHAS["cap2_binomial"])
        for j in (-2, 0, 1, 3):
            expect = ALPHAS["cap2_binomial"].alpha(j).shift(3 * (j * j + j))
            assert stepped.alpha(j) == expect
        assert stepped.a == 1 and stepped.base == 3


class TestValidation:
    def test_a_must_be_zero_or_one(self):
        with pytest.raises(ParamOutOfRange):
            BaileyAlpha("bad", lambda j: ZERO, a=2)

    def test_base_must_be_positive(self):
        with pytest.raises(ParamOutOfRange):
            BaileyAlpha("bad", lambda j: ZERO, a=0, base=0)

    def test_unknown_family(self):
        with pytest.raises(ParamOutOfRange):
            generate_hierarchy_lhs("nonsense", 1, 2)

    def test_depth_must_be_positive(self):
        with pytest.raises(ParamOutOfRange):
            generate_hierarchy_lhs("cap1", 0, 2)

    def test_twist_only_on_double(self):
        with pytest.raises(ParamOutOfRange):
            generate_hierarchy_lhs("cap1", 1, 2, s=1)
        with pytest.raises(ParamOutOfRange):
            generate_hierarchy_lhs("double", 1, 2, s=2)


class TestHierarchyGeneration:
    @pytest.mark.parametrize("family", FAMILIES)
    @pytest.mark.parametrize("f", [1, 2, 3])
    def test_generator_matches_direct_expansion(self, family, f):
        twists = range(f + 1) if family == "double" else (0,)
        for s in twists:
            for L in range(5):
                generated = generate_hierarchy_lhs(family, f, L, s)
                direct = hierarchy_finite_lhs(family, f, L, s)
                assert generated == direct, (family, f, s, L)

    def test_generator_matches_rhs(self):
        for family in FAMILIES:
            for L in range(4):
                assert (generate_hierarchy_lhs(family, 2, L)
                        == hierarchy_finite_rhs(family, 2, L, 0))


class TestCheckpoints:
    @pytest.mark.parametrize("L", range(5))
    def test_first_application(self, L):
        lhs, rhs = checkpoint_first_application(L)
        assert lhs == rhs

    @pytest.mark.parametrize("L", range(5))
    def test_after_k_transform(self, L):
        lhs, rhs = checkpoint_after_k_transform(L)
        assert lhs == rhs
