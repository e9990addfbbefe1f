import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from cauchy_dual.blocks import (
    check_block_operator,
    direct_sum,
    direct_sum_pinv,
    full_2x2_pinv,
    lower_tri_pinv,
    make_block_operator,
    upper_block_pinv,
)
from cauchy_dual.errors import ShapeError
from cauchy_dual.generators import gen_orthogonal_range_blocks, gen_random, make_rng
from cauchy_dual.linalg import rel_residual
from cauchy_dual.pinv import pinv


class TestDirectSum:
    def test_identities(self):
        np.testing.assert_allclose(pinv(direct_sum(np.eye(2), np.eye(3))), np.eye(5), atol=1e-15)

    def test_mixed(self, T_ce):
        rep = direct_sum_pinv(np.diag([2.0, 0]), T_ce)
        assert rep.max_residual <= 1e-12

    def test_zero_block(self):
        A = gen_random(3, 2, 1, 0)
        got = pinv(direct_sum(np.zeros((2, 2)), A))
        np.testing.assert_allclose(got, direct_sum(np.zeros((2, 2)), pinv(A)), atol=1e-14)


class TestUpper:
    def test_hand_example(self):
        T1 = np.diag([1.0, 0])
        T2 = np.array([[0.0], [2.0]])
        X, W, _, rep = upper_block_pinv(T1, T2)
        oracle = np.array([[1, 0, 0], [0, 0, 0], [0, 0.5, 0]])
        np.testing.assert_allclose(pinv(np.array([[1, 0, 0], [0, 0, 2.0], [0, 0, 0]])), oracle, atol=1e-15)
        np.testing.assert_allclose(X, oracle, atol=1e-15)
        assert rep.hypothesis_met and rep.max_residual < 1e-15

    def test_zero_T2(self):
        T1 = gen_random(3, 3, 2, 1)
        X, *_ = upper_block_pinv(T1, np.zeros((3, 2)))
        np.testing.assert_allclose(X[:3, :3], pinv(T1), atol=1e-14)
        assert np.all(X[3:, :] == 0) and np.all(X[:, 3:] == 0)

    def test_generated(self):
        b = gen_orthogonal_range_blocks((4, 3), {"T1": 2, "T2": 2}, 3, "upper_1x2")
        rep = upper_block_pinv(b["T1"], b["T2"])[-1]
        assert rep.hypothesis_met and rep.max_residual <= 1e-10

    def test_violation_flagged_not_raised(self):
        rep = upper_block_pinv(np.eye(2), np.ones((2, 1)))[-1]
        assert not rep.hypothesis_met
        assert rep.as_dict()["verdict"] == "hypothesis-not-met"
        assert rep.residuals["pinv"] > 1e-3  # formula really is wrong here


class TestLower:
    def test_hand_example(self):
        e = np.eye(2)
        T1 = np.outer(e[0], e[0])
        T3 = np.outer(e[1], e[1])
        T4 = np.outer(e[0], e[0]) * 3
        _, _, s_rep, rep = lower_tri_pinv(T1, T3, T4)
        assert rep.hypothesis_met
        assert rep.max_residual <= 1e-10 and s_rep.max_residual <= 1e-10

    def test_decoupled(self):
        T1 = gen_random(3, 3, 3, 2)
        T4 = gen_random(2, 2, 1, 3)
        X, *_ = lower_tri_pinv(T1, np.zeros((2, 3)), T4)
        np.testing.assert_allclose(X, direct_sum(np.linalg.inv(T1), pinv(T4)), atol=1e-12)

    @given(st.integers(1, 5), st.integers(1, 5), st.integers(0, 2**32 - 1))
    def test_generated(self, p, q, seed):
        rng = make_rng(seed)
        r3 = int(rng.integers(0, min(p, q) + 1))
        r4 = int(rng.integers(0, q - r3 + 1))
        b = gen_orthogonal_range_blocks((p, q), {"T1": p - r3, "T3": r3, "T4": r4}, rng, "lower_triangular")
        _, _, s_rep, rep = lower_tri_pinv(b["T1"], b["T3"], b["T4"])
        assert rep.hypothesis_met
        assert s_rep.residuals["S_pinv_sum"] <= 1e-10
        assert rep.max_residual <= 1e-9


class TestFull:
    def test_direct_sum_case(self):
        T1, T4 = gen_random(3, 3, 2, 0), gen_random(2, 2, 1, 1)
        X, W, rep = full_2x2_pinv(T1, np.zeros((3, 2)), np.zeros((2, 3)), T4)
        assert rep.hypothesis_met
        np.testing.assert_allclose(X, direct_sum(pinv(T1), pinv(T4)), atol=1e-13)

    def test_generated(self):
        b = gen_orthogonal_range_blocks((4, 4), {"T1": 2, "T2": 1, "T3": 1, "T4": 2}, 9)
        rep = full_2x2_pinv(b["T1"], b["T2"], b["T3"], b["T4"])[-1]
        assert rep.hypothesis_met and rep.max_residual <= 1e-9

    def test_violation_of_range_condition(self):
        b = gen_orthogonal_range_blocks((4, 4), {"T1": 2, "T2": 1, "T3": 1, "T4": 2}, 9)
        T2 = b["T1"] @ gen_random(4, 4, 1, 2)
        rep = full_2x2_pinv(b["T1"], T2, b["T3"], b["T4"])[-1]
        assert not rep.hypothesis_met
        assert rep.hypotheses["range_T1_perp_range_T2"] > 1e-3


class TestBlockOperator:
    def test_shape_validation(self):
        with pytest.raises(ShapeError):
            make_block_operator("full_2x2", {"T1": np.eye(2), "T2": np.ones((2, 1)), "T3": np.ones((1, 2)), "T4": np.eye(2)})
        with pytest.raises(ShapeError):
            make_block_operator("upper_1x2", {"T1": np.ones((2, 3)), "T2": np.ones((2, 1))})
        with pytest.raises(ShapeError):
            make_block_operator("lower_triangular", {"T1": np.eye(2)})

    def test_assemble_and_dispatch(self):
        op = make_block_operator("lower_triangular", {"T1": np.eye(2), "T3": np.zeros((1, 2)), "T4": np.eye(1)})
        np.testing.assert_array_equal(op.assemble(), np.eye(3))
        assert check_block_operator(op).hypothesis_met
        assert rel_residual(pinv(op.assemble()), np.eye(3)) < 1e-15
