"""Tests for the exact statevector engine."""

import numpy as np
import pytest

from qpc import (
    CZGate,
    Distribution,
    PureState,
    ReadoutSpec,
    RotationGate,
    cool,
    exact_distribution,
    init_from_bitstring,
    parse_program,
    program_unitary,
    run_program,
    sample,
    total_variation_distance,
)
from qpc.statevec import apply_gate, state_distribution
from conftest import random_program

BELL_TYPE = "R 0 0 32 0 8\nR 1 0 32 0 8\nCZ 0 1"


class TestInit:
    def test_all_zeros(self):
        state = init_from_bitstring("00")
        expected = np.zeros(4)
        expected[0] = 1
        np.testing.assert_allclose(state.amplitudes, expected, atol=0)

    def test_qubit_zero_is_most_significant(self):
        state = init_from_bitstring("10")
        assert state.amplitudes[2] == 1
        assert init_from_bitstring("01").amplitudes[1] == 1

    def test_empty_input_rejected(self):
        with pytest.raises(ValueError):
            init_from_bitstring("")

    def test_non_binary_rejected(self):
        with pytest.raises(ValueError):
            init_from_bitstring("0x")


class TestPureState:
    def test_norm_enforced(self):
        with pytest.raises(ValueError):
            PureState(1, np.array([1.0, 1.0], dtype=complex))

    def test_amplitudes_frozen(self):
        state = init_from_bitstring("0")
        with pytest.raises(ValueError):
            state.amplitudes[0] = 0.0


class TestApplyGate:
    def test_pi_half_x_on_zero(self):
        state = apply_gate(init_from_bitstring("0"), RotationGate(0, (64, 0, 0), 8))
        np.testing.assert_allclose(state.amplitudes, [0, -1j], atol=1e-15)

    def test_pi_quarter_y_on_zero(self):
        state = apply_gate(init_from_bitstring("0"), RotationGate(0, (0, 32, 0), 8))
        np.testing.assert_allclose(
            state.amplitudes, [1 / np.sqrt(2), 1 / np.sqrt(2)], atol=1e-15
        )

    def test_cz_flips_sign_of_one_one(self):
        state = apply_gate(init_from_bitstring("11"), CZGate(0, 1))
        np.testing.assert_allclose(state.amplitudes, [0, 0, 0, -1], atol=0)

    def test_index_out_of_range(self):
        with pytest.raises(ValueError):
            apply_gate(init_from_bitstring("0"), CZGate(0, 1))

    def test_norm_preserved_over_random_sequences(self):
        rng = np.random.default_rng(41)
        state = init_from_bitstring("0000")
        for _ in range(60):
            program = random_program(rng, 4, 1)
            state = apply_gate(state, program.gates[0])
        assert abs(np.linalg.norm(state.amplitudes) - 1.0) < 1e-10


class TestRunProgram:
    def test_bell_type_state(self):
        state = run_program(parse_program(BELL_TYPE), "00")
        np.testing.assert_allclose(
            state.amplitudes, [0.5, 0.5, 0.5, -0.5], atol=1e-12
        )

    def test_identity_program(self):
        state = run_program(parse_program("R 0 0 0 0 1"), "0")
        np.testing.assert_allclose(state.amplitudes, [1, 0], atol=0)

    def test_width_mismatch(self):
        with pytest.raises(ValueError):
            run_program(parse_program("CZ 0 1"), "0")

    def test_input_may_exceed_program_width(self):
        state = run_program(parse_program("R 0 64 0 0 8"), "00")
        np.testing.assert_allclose(state.amplitudes, [0, 0, -1j, 0], atol=1e-15)

    def test_agrees_with_dense_unitary(self):
        rng = np.random.default_rng(42)
        for _ in range(40):
            n = int(rng.integers(1, 5))
            program = random_program(rng, n, int(rng.integers(1, 12)))
            s_in = "".join(rng.choice(["0", "1"], size=n))
            state = run_program(program, s_in)
            u = program_unitary(program).entries
            if program.width < n:
                u = np.kron(u, np.eye(1 << (n - program.width)))
            expected = u @ init_from_bitstring(s_in).amplitudes
            np.testing.assert_allclose(state.amplitudes, expected, atol=1e-9)


class TestDistributions:
    def test_bell_type_full_readout(self):
        dist = exact_distribution(parse_program(BELL_TYPE), "00", ReadoutSpec((0, 1)))
        for outcome in ("00", "01", "10", "11"):
            assert dist[outcome] == pytest.approx(0.25, abs=1e-12)

    def test_bell_type_marginal(self):
        dist = exact_distribution(parse_program(BELL_TYPE), "00", ReadoutSpec((0,)))
        assert dist["0"] == pytest.approx(0.5, abs=1e-12)
        assert dist["1"] == pytest.approx(0.5, abs=1e-12)

    def test_identity_point_mass(self):
        dist = exact_distribution(parse_program("R 0 0 0 0 1"), "0", ReadoutSpec((0,)))
        assert dist["0"] == pytest.approx(1.0, abs=0)

    def test_readout_order_matters(self):
        state = run_program(parse_program("R 0 64 0 0 8"), "00")
        forward = state_distribution(state, ReadoutSpec((0, 1)))
        reversed_ = state_distribution(state, ReadoutSpec((1, 0)))
        assert forward["10"] == pytest.approx(1.0, abs=1e-12)
        assert reversed_["01"] == pytest.approx(1.0, abs=1e-12)

    def test_marginal_consistency(self):
        rng = np.random.default_rng(43)
        for _ in range(25):
            n = int(rng.integers(2, 5))
            program = random_program(rng, n, 8)
            s_in = "0" * n
            keep = sorted(
                int(q) for q in rng.choice(n, size=int(rng.integers(1, n)), replace=False)
            )
            full = exact_distribution(program, s_in, ReadoutSpec(tuple(range(n))))
            part = exact_distribution(program, s_in, ReadoutSpec(tuple(keep)))
            for outcome, p in part.entries.items():
                total = sum(
                    q
                    for full_outcome, q in full.entries.items()
                    if all(full_outcome[k] == outcome[i] for i, k in enumerate(keep))
                )
                assert abs(total - p) < 1e-10

    def test_entries_sum_to_one(self):
        rng = np.random.default_rng(44)
        for _ in range(25):
            n = int(rng.integers(1, 5))
            program = random_program(rng, n, 10)
            dist = exact_distribution(program, "0" * n, ReadoutSpec(tuple(range(n))))
            assert abs(sum(dist.entries.values()) - 1.0) < 1e-10

    def test_json_is_canonical(self):
        dist = Distribution({"1": 0.5, "0": 0.5})
        assert dist.to_json() == '{"0": 0.5, "1": 0.5}'

    def test_malformed_entries_rejected(self):
        with pytest.raises(ValueError):
            Distribution({"0": 0.9})
        with pytest.raises(ValueError):
            Distribution({"0": 0.5, "ab": 0.5})

    def test_tvd(self):
        a = Distribution({"0": 1.0, "1": 0.0})
        b = Distribution({"0": 0.5, "1": 0.5})
        assert total_variation_distance(a, b) == pytest.approx(0.5, abs=1e-12)
        assert total_variation_distance(a, a) == 0.0


class TestSampling:
    def test_point_mass(self):
        counts = sample(Distribution({"0": 1.0, "1": 0.0}), 100, seed=5)
        assert counts == {"0": 100, "1": 0}

    def test_binomial_bound_fair_coin(self):
        counts = sample(Distribution({"0": 0.5, "1": 0.5}), 10000, seed=9)
        sigma = np.sqrt(10000 * 0.25)
        for outcome in ("0", "1"):
            assert abs(counts[outcome] - 5000) <= 5 * sigma

    def test_seed_determinism(self):
        dist = Distribution({"00": 0.25, "01": 0.25, "10": 0.25, "11": 0.25})
        assert sample(dist, 1000, seed=3) == sample(dist, 1000, seed=3)
        assert sample(dist, 1000, seed=3) != sample(dist, 1000, seed=4)

    def test_counts_sum_to_shots(self):
        dist = Distribution({"00": 0.1, "01": 0.2, "10": 0.3, "11": 0.4})
        counts = sample(dist, 777, seed=1)
        assert sum(counts.values()) == 777

    def test_zero_shots_rejected(self):
        with pytest.raises(ValueError):
            sample(Distribution({"0": 1.0}), 0, seed=1)


class TestCool:
    def test_plus_state_to_zero(self):
        state = apply_gate(init_from_bitstring("0"), RotationGate(0, (0, 32, 0), 8))
        cooled = cool(state, [0])
        np.testing.assert_allclose(np.abs(cooled.amplitudes), [1, 0], atol=1e-12)

    def test_one_to_zero(self):
        cooled = cool(init_from_bitstring("1"), [0])
        np.testing.assert_allclose(np.abs(cooled.amplitudes), [1, 0], atol=0)

    def test_bell_type_cools_to_origin(self):
        state = run_program(parse_program(BELL_TYPE), "00")
        for seed in range(8):
            cooled = cool(state, [0, 1], seed=seed)
            assert abs(abs(cooled.amplitudes[0]) - 1.0) < 1e-12

    def test_cooled_qubits_read_zero(self):
        rng = np.random.default_rng(45)
        for trial in range(20):
            program = random_program(rng, 3, 8)
            state = run_program(program, "000")
            cooled = cool(state, [0, 2], seed=trial)
            dist = state_distribution(cooled, ReadoutSpec((0, 2)))
            assert dist["00"] == pytest.approx(1.0, abs=1e-10)

    def test_index_out_of_range(self):
        with pytest.raises(ValueError):
            cool(init_from_bitstring("0"), [1])
