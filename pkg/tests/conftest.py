"""Shared helpers for the test suite."""

import numpy as np

from qpc import CZGate, Program, RotationGate


def random_program(rng, n_qubits, n_gates, m_max=6):
    """Draw a random program on ``n_qubits`` qubits with ``n_gates`` gates.

    Roughly 60 percent of the gates are rotations with dyadic angle
    numerators drawn uniformly, the rest are CZ gates on distinct qubit
    pairs.  With a single qubit only rotations are drawn.
    """
    gates = []
    for _ in range(n_gates):
        if n_qubits == 1 or rng.random() < 0.6:
            target = int(rng.integers(n_qubits))
            m = int(rng.integers(1, m_max + 1))
            k = tuple(int(v) for v in rng.integers(0, 2 ** m, size=3))
            gates.append(RotationGate(target, k, m))
        else:
            a, b = rng.choice(n_qubits, size=2, replace=False)
            gates.append(CZGate(int(a), int(b)))
    return Program(tuple(gates))
