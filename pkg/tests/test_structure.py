import numpy as np
import pytest

from consinfo.core import (
    CommSystem,
    Direction,
    Distribution,
    Label,
    Role,
    StochasticMatrix,
    joint_matrix,
    make_agent,
)
from consinfo.measures import directed_report, referential_parameter
from consinfo.structure import (
    Kind,
    check_full_consistency,
    classify,
    is_permutation,
)
from helpers import permutation_matrices, random_system

I2 = np.eye(2)
SWAP = np.array([[0.0, 1.0], [1.0, 0.0]])


def pair_system(world, coder, decoder, channel):
    w = Distribution(world, Label.WORLD)
    return CommSystem(
        w,
        make_agent(coder, decoder, "v"),
        make_agent(coder, decoder, "u"),
        StochasticMatrix(channel, Role.CHANNEL),
    )


class TestIsPermutation:
    def test_identity(self):
        assert is_permutation(StochasticMatrix(I2))

    def test_swap(self):
        assert is_permutation(StochasticMatrix(SWAP))

    def test_soft_matrix_rejected(self):
        assert not is_permutation(StochasticMatrix([[0.5, 0.5], [0.0, 1.0]]))

    def test_merging_zero_one_matrix_rejected(self):
        # deterministic but column-colliding, hence not a permutation
        assert not is_permutation(np.array([[1.0, 0.0], [1.0, 0.0]]))

    def test_tolerance(self):
        nearly = np.array([[1.0 - 1e-12, 1e-12], [1e-12, 1.0 - 1e-12]])
        assert is_permutation(nearly)
        off = np.array([[1.0 - 1e-6, 1e-6], [1e-6, 1.0 - 1e-6]])
        assert not is_permutation(off)


class TestFullConsistency:
    def test_identity_configuration(self):
        assert check_full_consistency(pair_system([0.5, 0.5], I2, I2, I2))

    def test_swapped_decoder_fails(self):
        assert not check_full_consistency(pair_system([0.5, 0.5], I2, SWAP, I2))

    def test_noisy_channel_fails(self):
        bsc = [[0.9, 0.1], [0.1, 0.9]]
        assert not check_full_consistency(pair_system([0.5, 0.5], I2, I2, bsc))

    def test_matching_swaps_recover_consistency(self):
        # coder swaps, decoder swaps back over a clean channel
        assert check_full_consistency(pair_system([0.5, 0.5], SWAP, SWAP, I2))


class TestClassify:
    def test_referential_loss(self):
        cls = classify(pair_system([0.5, 0.5], I2, SWAP, I2))
        assert cls.kind is Kind.MAX_INFO_REFERENTIAL_LOSS
        assert cls.sigma == 0.0
        assert cls.is_noiseless
        assert not cls.witnesses["condition_P_eq_LQ_transposed"]

    def test_fully_consistent(self):
        cls = classify(pair_system([0.5, 0.5], I2, I2, I2))
        assert cls.kind is Kind.FULLY_CONSISTENT
        assert cls.sigma == 1.0
        assert all(cls.witnesses.values())

    def test_noisy(self):
        cls = classify(pair_system([0.5, 0.5], I2, I2, [[0.9, 0.1], [0.1, 0.9]]))
        assert cls.kind is Kind.NOISY
        assert cls.sigma == pytest.approx(0.706, abs=1e-3)
        assert not cls.is_noiseless

    def test_merging_deterministic_is_other(self):
        merge = [[1.0, 0.0], [1.0, 0.0]]
        cls = classify(pair_system([0.5, 0.5], merge, I2, I2))
        assert cls.kind is Kind.OTHER

    def test_direction_matters(self):
        world = Distribution([0.5, 0.5], Label.WORLD)
        clean = make_agent(I2, I2, "v")
        noisy_decoder = make_agent(I2, [[0.8, 0.2], [0.2, 0.8]], "u")
        system = CommSystem(world, clean, noisy_decoder, StochasticMatrix(I2, Role.CHANNEL))
        assert classify(system, Direction.SENDER_TO_RECEIVER).kind is Kind.NOISY
        assert (
            classify(system, Direction.RECEIVER_TO_SENDER).kind is Kind.FULLY_CONSISTENT
        )


class TestPermutationExhaustion:
    def test_all_triples_at_n3(self):
        perms = permutation_matrices(3)
        assert len(perms) == 6
        world = Distribution(np.full(3, 1 / 3), Label.WORLD)
        max_info = np.log2(3)
        seen_fully_consistent = 0
        for p in perms:
            for lam in perms:
                for q in perms:
                    system = CommSystem(
                        world,
                        make_agent(p, q, "v"),
                        make_agent(p, q, "u"),
                        StochasticMatrix(lam, Role.CHANNEL),
                    )
                    j = joint_matrix(system, Direction.SENDER_TO_RECEIVER)
                    sigma = referential_parameter(j)
                    report = directed_report(system, Direction.SENDER_TO_RECEIVER)
                    condition = np.allclose(p, (lam @ q).T)
                    # direct oracle: the end-to-end map is the identity
                    assert condition == np.allclose(p @ lam @ q, np.eye(3))
                    if condition:
                        assert abs(sigma - 1.0) <= 1e-12
                        seen_fully_consistent += 1
                    else:
                        assert sigma <= 1.0 - 1e-3
                    assert report.mutual_info == pytest.approx(max_info, abs=1e-9)
                    assert report.h_input == pytest.approx(max_info, abs=1e-9)
                    cls = classify(system)
                    expected = (
                        Kind.FULLY_CONSISTENT if condition else Kind.MAX_INFO_REFERENTIAL_LOSS
                    )
                    assert cls.kind is expected
        # for each channel/decoder pair exactly one coder closes the loop
        assert seen_fully_consistent == 36

    def test_fully_consistent_equalities(self):
        perms = permutation_matrices(3)
        world = Distribution(np.full(3, 1 / 3), Label.WORLD)
        for lam in perms:
            for q in perms:
                p = (np.asarray(lam) @ np.asarray(q)).T
                system = CommSystem(
                    world,
                    make_agent(p, q, "v"),
                    make_agent(p, q, "u"),
                    StochasticMatrix(lam, Role.CHANNEL),
                )
                report = directed_report(system, Direction.SENDER_TO_RECEIVER)
                assert report.consistent_info == pytest.approx(report.mutual_info, abs=1e-9)
                assert report.mutual_info == pytest.approx(report.h_input, abs=1e-9)


class TestClassifiedRegimes:
    def test_max_info_loss_keeps_maximal_information(self):
        rng = np.random.default_rng(3)
        perms = permutation_matrices(4)
        world = Distribution(np.full(4, 0.25), Label.WORLD)
        for _ in range(50):
            p, lam, q = (perms[rng.integers(len(perms))] for _ in range(3))
            system = CommSystem(
                world,
                make_agent(p, q, "v"),
                make_agent(p, q, "u"),
                StochasticMatrix(lam, Role.CHANNEL),
            )
            cls = classify(system)
            report = directed_report(system, Direction.SENDER_TO_RECEIVER)
            assert report.mutual_info == pytest.approx(report.h_input, abs=1e-9)
            if cls.kind is Kind.MAX_INFO_REFERENTIAL_LOSS:
                assert cls.sigma < 1.0

    def test_noisy_regime_strict_chain(self):
        rng = np.random.default_rng(4)
        checked = 0
        for _ in range(100):
            system = random_system(rng, int(rng.integers(2, 7)), channel="noisy")
            cls = classify(system)
            if cls.kind is not Kind.NOISY:
                continue
            checked += 1
            report = directed_report(system, Direction.SENDER_TO_RECEIVER)
            assert report.h_input > report.mutual_info > report.consistent_info
        assert checked >= 90
