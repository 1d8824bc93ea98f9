"""Acceptance criteria, one test per criterion.

Each test prints a single pass/fail line on the live terminal (bypassing
pytest capture) with the measured quantity and elapsed wall time, then
asserts.  Tolerances and runtime budgets are stated inline.
"""

import time

import numpy as np
import pytest

from qpc import (
    DeviceProfile,
    Distribution,
    GroverInstance,
    PairPulse,
    Paradigm,
    Program,
    PureState,
    ReadoutSpec,
    SpeciesPulse,
    branch_determinism_check,
    chain_from_bits,
    compile_to_pattern,
    exact_distribution,
    init_from_bitstring,
    min_gap,
    parse_program,
    program_size,
    program_unitary,
    recommend,
    render_program,
    run_program,
    runtime_to_target,
    sample,
    simulate_pattern,
    threshold_table,
    total_variation_distance,
    translate,
    transport_demo,
    apply_pulse,
    CellChain,
)
from conftest import random_program


def _report(capfd, number, label, ok, detail):
    with capfd.disabled():
        status = "PASS" if ok else "FAIL"
        print(f"[acceptance {number}] {label}: {status} ({detail})")
    assert ok, f"criterion {number} ({label}) failed: {detail}"


def test_criterion_1_size_function_laws(capfd):
    """Additivity over random splits, exact; parse/render round-trip.

    1000 seeded programs; runtime budget 5 s.
    """
    start = time.perf_counter()
    rng = np.random.default_rng(1001)
    failures = 0
    for _ in range(1000):
        n = int(rng.integers(1, 7))
        program = random_program(rng, n, int(rng.integers(2, 31)))
        cut = int(rng.integers(1, len(program)))
        head = Program(program.gates[:cut])
        tail = Program(program.gates[cut:])
        if program_size(head) + program_size(tail) != program_size(program):
            failures += 1
        if parse_program(render_program(program)) != program:
            failures += 1
    elapsed = time.perf_counter() - start
    ok = failures == 0 and elapsed < 5.0
    _report(
        capfd, 1, "size-function laws",
        ok, f"1000 programs, {failures} failures, {elapsed:.2f}s < 5s",
    )


def test_criterion_2_operational_semantics_oracle(capfd):
    """run_program vs dense unitary within 1e-9 max-norm; distributions
    sum to 1 within 1e-10.

    200 seeded programs, n <= 6, <= 20 gates; runtime budget 30 s.
    """
    start = time.perf_counter()
    rng = np.random.default_rng(2002)
    worst_state = 0.0
    worst_sum = 0.0
    for _ in range(200):
        n = int(rng.integers(1, 7))
        program = random_program(rng, n, int(rng.integers(1, 21)))
        width = program.width
        s_in = "".join(rng.choice(["0", "1"], size=width))
        state = run_program(program, s_in)
        expected = program_unitary(program).entries @ init_from_bitstring(s_in).amplitudes
        worst_state = max(worst_state, float(np.abs(state.amplitudes - expected).max()))
        m = int(rng.integers(1, width + 1))
        readout = ReadoutSpec(tuple(sorted(rng.choice(width, size=m, replace=False).tolist())))
        dist = exact_distribution(program, s_in, readout)
        worst_sum = max(worst_sum, abs(sum(dist.entries.values()) - 1.0))
    elapsed = time.perf_counter() - start
    ok = worst_state <= 1e-9 and worst_sum <= 1e-10 and elapsed < 30.0
    _report(
        capfd, 2, "operational-semantics oracle",
        ok,
        f"200 programs, max state dev {worst_state:.2e} <= 1e-9, "
        f"max prob-sum dev {worst_sum:.2e} <= 1e-10, {elapsed:.2f}s < 30s",
    )


def test_criterion_3_paradigm_equivalence(capfd):
    """Enumerate-all pattern simulation vs exact distribution, TVD <= 1e-9,
    plus branch determinism.

    200 seeded programs, n <= 4, <= 10 gates; runtime budget 2 min.
    """
    start = time.perf_counter()
    rng = np.random.default_rng(3003)
    worst_tvd = 0.0
    determinism_failures = 0
    for _ in range(200):
        n = int(rng.integers(1, 5))
        program = random_program(rng, n, int(rng.integers(1, 11)))
        width = program.width
        s_in = "".join(rng.choice(["0", "1"], size=width))
        pattern = compile_to_pattern(program)
        readout = ReadoutSpec(tuple(range(width)))
        mbqc = simulate_pattern(pattern, s_in, readout)
        exact = exact_distribution(program, s_in, readout)
        worst_tvd = max(worst_tvd, total_variation_distance(mbqc, exact))
        if not branch_determinism_check(pattern, s_in, readout):
            determinism_failures += 1
    elapsed = time.perf_counter() - start
    ok = worst_tvd <= 1e-9 and determinism_failures == 0 and elapsed < 120.0
    _report(
        capfd, 3, "paradigm equivalence (circuit vs one-way)",
        ok,
        f"200 programs, max TVD {worst_tvd:.2e} <= 1e-9, "
        f"{determinism_failures} determinism failures, {elapsed:.1f}s < 120s",
    )


def test_criterion_4_gap_law(capfd):
    """min_gap(n) = 2^(-n/2) within 1e-6 for n = 2..12; budget 1 min."""
    start = time.perf_counter()
    worst = 0.0
    for n in range(2, 13):
        g, _ = min_gap(GroverInstance("0" * n))
        worst = max(worst, abs(g - 2.0 ** (-n / 2)))
    elapsed = time.perf_counter() - start
    ok = worst <= 1e-6 and elapsed < 60.0
    _report(
        capfd, 4, "adiabatic gap law",
        ok, f"n=2..12, max |g - 2^(-n/2)| = {worst:.2e} <= 1e-6, {elapsed:.1f}s < 60s",
    )


def test_criterion_5_runtime_scaling(capfd):
    """log2 T* vs n slope over n = 4..10: local 0.5 +- 0.1,
    linear 1.0 +- 0.15; budget 10 min."""
    start = time.perf_counter()
    ns = np.arange(4, 11)
    slopes = {}
    for kind in ("local", "linear"):
        logs = [
            np.log2(runtime_to_target(GroverInstance("0" * int(n)), kind))
            for n in ns
        ]
        slopes[kind] = float(np.polyfit(ns, logs, 1)[0])
    elapsed = time.perf_counter() - start
    ok = (
        abs(slopes["local"] - 0.5) <= 0.1
        and abs(slopes["linear"] - 1.0) <= 0.15
        and elapsed < 600.0
    )
    _report(
        capfd, 5, "search runtime scaling",
        ok,
        f"local slope {slopes['local']:.3f} in 0.5+-0.1, "
        f"linear slope {slopes['linear']:.3f} in 1.0+-0.15, {elapsed:.1f}s < 600s",
    )


def test_criterion_6_global_control_properties(capfd):
    """Translation covariance, bulk-weight normalization, and transport
    fidelity 1 within 1e-10 for 50 payloads on L = 6, 9, 12; budget 30 s."""
    start = time.perf_counter()
    rng = np.random.default_rng(6006)
    worst_cov = 0.0
    worst_norm = 0.0
    worst_fid = 1.0
    payload_count = 0
    for length in (6, 9, 12):
        raw = rng.normal(size=1 << length) + 1j * rng.normal(size=1 << length)
        chain = CellChain(
            "ABC", PureState(length, raw / np.linalg.norm(raw)), "periodic"
        )
        pulses = []
        q, _ = np.linalg.qr(rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2)))
        pulses.append(SpeciesPulse("B", q))
        q4, _ = np.linalg.qr(rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4)))
        pulses.append(PairPulse("A", "B", q4))
        for pulse in pulses:
            direct = apply_pulse(chain, pulse)
            conjugated = translate(apply_pulse(translate(chain, 3), pulse), -3)
            worst_cov = max(
                worst_cov,
                float(
                    np.abs(
                        conjugated.state.amplitudes - direct.state.amplitudes
                    ).max()
                ),
            )
        for species in "ABC":
            cells = chain.cells_of(species)
            weights = np.zeros(1 << length, dtype=int)
            for cell in cells:
                weights += (np.arange(1 << length) >> (length - 1 - cell)) & 1
            probs = np.bincount(weights, weights=np.abs(chain.state.amplitudes) ** 2)
            worst_norm = max(worst_norm, abs(float(probs.sum()) - 1.0))
        cold = chain_from_bits("ABC", "0" * length)
        max_rounds = (length - 1) // 3
        for _ in range(17 if length > 6 else 16):
            raw2 = rng.normal(size=2) + 1j * rng.normal(size=2)
            payload = raw2 / np.linalg.norm(raw2)
            rounds = int(rng.integers(1, max_rounds + 1))
            moved = transport_demo(cold, payload, rounds)
            site = 3 * rounds
            expected = np.zeros(1 << length, dtype=complex)
            expected[0] = payload[0]
            expected[1 << (length - 1 - site)] = payload[1]
            worst_fid = min(
                worst_fid, abs(np.vdot(expected, moved.state.amplitudes))
            )
            payload_count += 1
    elapsed = time.perf_counter() - start
    ok = (
        worst_cov <= 1e-10
        and worst_norm <= 1e-10
        and worst_fid >= 1.0 - 1e-10
        and payload_count == 50
        and elapsed < 30.0
    )
    _report(
        capfd, 6, "global-control properties",
        ok,
        f"covariance dev {worst_cov:.2e} <= 1e-10, weight-norm dev "
        f"{worst_norm:.2e} <= 1e-10, min transport fidelity {worst_fid:.12f} "
        f"over {payload_count} payloads, {elapsed:.1f}s < 30s",
    )


def test_criterion_7_selector_goldens(capfd):
    """All 8 device profiles route per the documented table; threshold
    constants bit-identical with citations; budget 1 s."""
    start = time.perf_counter()
    golden = {
        ("monolithic", "local", "non-adiabatic"): Paradigm.CIRCUIT_MODEL,
        ("monolithic", "local", "adiabatic"): Paradigm.ADIABATIC_QC,
        ("monolithic", "global", "non-adiabatic"): Paradigm.GLOBAL_CONTROL,
        ("monolithic", "global", "adiabatic"): Paradigm.GLOBAL_CONTROL,
        ("modular", "local", "non-adiabatic"): Paradigm.ONE_WAY_QC,
        ("modular", "local", "adiabatic"): Paradigm.ONE_WAY_QC,
        ("modular", "global", "non-adiabatic"): Paradigm.ONE_WAY_QC,
        ("modular", "global", "adiabatic"): Paradigm.ONE_WAY_QC,
    }
    routing_ok = all(
        recommend(DeviceProfile(*key)) is value for key, value in golden.items()
    )
    expected_values = {
        "circuit model (early estimates)": (1e-6, 1e-4),
        "circuit model (proved)": (3e-3, 3e-3),
        "circuit model (numerical)": (1e-2, 1e-2),
        "circuit model (nearest-neighbour)": (1e-5, 1e-4),
        "global control": (1e-11, 1e-11),
        "one-way (2D cluster)": (7.5e-3, 7.5e-3),
        "BB84 key distribution": (0.11, 0.11),
    }
    table = {entry.name: entry for entry in threshold_table()}
    table_ok = set(table) == set(expected_values) and all(
        (table[name].low, table[name].high) == values and table[name].citation
        for name, values in expected_values.items()
    )
    elapsed = time.perf_counter() - start
    ok = routing_ok and table_ok and elapsed < 1.0
    _report(
        capfd, 7, "selector goldens",
        ok,
        f"8/8 profiles routed: {routing_ok}, 7 threshold entries exact with "
        f"citations: {table_ok}, {elapsed:.3f}s < 1s",
    )


def test_criterion_8_sampling_consistency(capfd):
    """10,000-shot samples of three fixed distributions inside 5-sigma
    binomial bounds per outcome; seed-deterministic; budget 5 s."""
    start = time.perf_counter()
    shots = 10_000
    fixed = [
        exact_distribution(
            parse_program("R 0 0 32 0 8\nR 1 0 32 0 8\nCZ 0 1"),
            "00",
            ReadoutSpec((0, 1)),
        ),
        Distribution({"0": 0.9, "1": 0.1}),
        exact_distribution(
            parse_program("R 0 21 0 0 6\nCZ 0 1\nR 1 0 9 0 5\nCZ 1 2\nR 2 3 0 1 3"),
            "000",
            ReadoutSpec((0, 1, 2)),
        ),
    ]
    bounds_ok = True
    deterministic = True
    for index, dist in enumerate(fixed):
        counts = sample(dist, shots, seed=800 + index)
        deterministic &= counts == sample(dist, shots, seed=800 + index)
        for outcome, p in dist.entries.items():
            sigma = np.sqrt(shots * p * (1.0 - p))
            if abs(counts.get(outcome, 0) - shots * p) > 5.0 * sigma:
                bounds_ok = False
    elapsed = time.perf_counter() - start
    ok = bounds_ok and deterministic and elapsed < 5.0
    _report(
        capfd, 8, "sampling consistency",
        ok,
        f"3 distributions x {shots} shots within 5-sigma: {bounds_ok}, "
        f"seed-deterministic: {deterministic}, {elapsed:.2f}s < 5s",
    )
