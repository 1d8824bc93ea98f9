"""Globally controlled 1D cell chains.

Cells are qubits arranged on a line and labeled by species from {A, B, C}
in a cyclic pattern of period 2 or 3 (``ABAB...`` or ``ABCABC...``).  No
cell is individually addressable: operations are species pulses (the same
2x2 unitary on every cell of one species), pair pulses (the same 4x4
unitary on every adjacent ordered species pair, disjoint by periodicity),
bulk Hamming-weight measurement of a species, and species cooling (reset
to |0>).  ``transport_demo`` shows the conveyor effect: a cycle of SWAP
pair pulses moves a payload one full period per round without ever
addressing a single cell.

The state convention matches the rest of the package: cell i is qubit i,
most significant bit first.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

import numpy as np

from .program_ir import ParseError, RotationGate, CZ_MATRIX, PAULI_X, PAULI_Y, PAULI_Z
from .statevec import (
    PureState,
    apply_single_qubit,
    apply_two_qubit,
    measure_qubit,
)

SPECIES_ALPHABET = "ABC"
BOUNDARIES = ("open", "periodic")

SWAP_MATRIX = np.array(
    [
        [1.0, 0.0, 0.0, 0.0],
        [0.0, 0.0, 1.0, 0.0],
        [0.0, 1.0, 0.0, 0.0],
        [0.0, 0.0, 0.0, 1.0],
    ],
    dtype=complex,
)

HADAMARD = np.array([[1.0, 1.0], [1.0, -1.0]], dtype=complex) / math.sqrt(2.0)


def _check_unitary(mat: np.ndarray, dim: int, label: str) -> np.ndarray:
    arr = np.array(mat, dtype=complex)
    if arr.shape != (dim, dim):
        raise ValueError(f"{label} must be {dim}x{dim}, got {arr.shape}")
    if np.max(np.abs(arr.conj().T @ arr - np.eye(dim))) > 1e-10:
        raise ValueError(f"{label} is not unitary")
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class CellChain:
    """A chain of qubit cells with a cyclic species pattern."""

    pattern: str
    state: PureState
    boundary: str = "open"

    def __post_init__(self) -> None:
        if len(self.pattern) not in (2, 3):
            raise ValueError(f"species pattern {self.pattern!r} must have period 2 or 3")
        if len(set(self.pattern)) != len(self.pattern) or any(
            ch not in SPECIES_ALPHABET for ch in self.pattern
        ):
            raise ValueError(
                f"pattern {self.pattern!r} must use distinct letters from {SPECIES_ALPHABET}"
            )
        if self.boundary not in BOUNDARIES:
            raise ValueError(f"boundary must be one of {BOUNDARIES}")
        if self.state.n < 2:
            raise ValueError("a chain needs at least 2 cells")

    @property
    def length(self) -> int:
        return self.state.n

    @property
    def period(self) -> int:
        return len(self.pattern)

    def species_of(self, cell: int) -> str:
        if not 0 <= cell < self.length:
            raise ValueError(f"cell {cell} outside chain of length {self.length}")
        return self.pattern[cell % self.period]

    def cells_of(self, species: str) -> tuple[int, ...]:
        if species not in self.pattern:
            raise ValueError(f"species {species!r} not in pattern {self.pattern!r}")
        return tuple(i for i in range(self.length) if self.pattern[i % self.period] == species)


def chain_from_bits(pattern: str, bits: str, boundary: str = "open") -> CellChain:
    """Chain in a computational basis state, one character per cell."""
    if not bits or any(ch not in "01" for ch in bits):
        raise ValueError(f"cell contents {bits!r} must be a bitstring")
    amps = np.zeros(1 << len(bits), dtype=complex)
    amps[int(bits, 2)] = 1.0
    return CellChain(pattern, PureState(len(bits), amps), boundary)


@dataclass(frozen=True, eq=False)
class SpeciesPulse:
    """One 2x2 unitary applied to every cell of a species."""

    species: str
    matrix: np.ndarray

    def __post_init__(self) -> None:
        if self.species not in SPECIES_ALPHABET:
            raise ValueError(f"unknown species {self.species!r}")
        object.__setattr__(
            self, "matrix", _check_unitary(self.matrix, 2, "species pulse")
        )


@dataclass(frozen=True, eq=False)
class PairPulse:
    """One 4x4 unitary applied to every adjacent (first, second) species pair."""

    first: str
    second: str
    matrix: np.ndarray

    def __post_init__(self) -> None:
        for s in (self.first, self.second):
            if s not in SPECIES_ALPHABET:
                raise ValueError(f"unknown species {s!r}")
        if self.first == self.second:
            raise ValueError("pair pulse needs two distinct species")
        object.__setattr__(
            self, "matrix", _check_unitary(self.matrix, 4, "pair pulse")
        )


GlobalPulse = Union[SpeciesPulse, PairPulse]


def adjacent_pairs(chain: CellChain, first: str, second: str) -> tuple[tuple[int, int], ...]:
    """All (i, i+1) cell pairs whose species are (first, second), in order.

    On a periodic chain the wrap-around pair is included.  Distinct species
    plus a cyclic pattern make the pairs disjoint; this is asserted.
    """
    if first == second:
        raise ValueError("pair pulse needs two distinct species")
    last = chain.length if chain.boundary == "periodic" else chain.length - 1
    pairs = []
    for i in range(last):
        j = (i + 1) % chain.length
        if chain.species_of(i) == first and chain.species_of(j) == second:
            pairs.append((i, j))
    flat = [c for pair in pairs for c in pair]
    assert len(flat) == len(set(flat)), "pair pulse pairs overlap"
    return tuple(pairs)


def apply_pulse(chain: CellChain, pulse: GlobalPulse) -> CellChain:
    """Apply one global pulse; every matching cell (or pair) gets the op."""
    vec = np.array(chain.state.amplitudes)
    n = chain.length
    if isinstance(pulse, SpeciesPulse):
        cells = chain.cells_of(pulse.species)
        for c in cells:
            vec = apply_single_qubit(vec, n, c, pulse.matrix)
    elif isinstance(pulse, PairPulse):
        if pulse.first not in chain.pattern or pulse.second not in chain.pattern:
            raise ValueError(
                f"species pair ({pulse.first}, {pulse.second}) not in pattern {chain.pattern!r}"
            )
        for i, j in adjacent_pairs(chain, pulse.first, pulse.second):
            vec = apply_two_qubit(vec, n, i, j, pulse.matrix)
    else:
        raise ValueError(f"unknown pulse object {pulse!r}")
    return CellChain(chain.pattern, PureState(n, vec), chain.boundary)


@dataclass(frozen=True, eq=False)
class BulkResult:
    """Outcome of a bulk Hamming-weight measurement."""

    species: str
    weight: int
    chain: CellChain

    def __post_init__(self) -> None:
        cells = self.chain.cells_of(self.species)
        if not 0 <= self.weight <= len(cells):
            raise ValueError(
                f"weight {self.weight} outside [0, {len(cells)}] for species {self.species!r}"
            )


def _species_weights(chain: CellChain, species: str) -> np.ndarray:
    """Hamming weight over the species' cells for every basis index."""
    n = chain.length
    idx = np.arange(1 << n)
    w = np.zeros(1 << n, dtype=np.int64)
    for c in chain.cells_of(species):
        w += (idx >> (n - 1 - c)) & 1
    return w


def _bulk_measure_rng(
    chain: CellChain, species: str, rng: np.random.Generator
) -> BulkResult:
    weights = _species_weights(chain, species)
    probs2 = np.abs(chain.state.amplitudes) ** 2
    k = len(chain.cells_of(species))
    w_probs = np.bincount(weights, weights=probs2, minlength=k + 1)
    w_probs = np.clip(w_probs, 0.0, None)
    w_probs /= w_probs.sum()
    w = int(rng.choice(k + 1, p=w_probs))
    mask = weights == w
    vec = np.where(mask, chain.state.amplitudes, 0.0)
    vec = vec / np.linalg.norm(vec)
    post = CellChain(chain.pattern, PureState(chain.length, vec), chain.boundary)
    return BulkResult(species=species, weight=w, chain=post)


def bulk_measure(chain: CellChain, species: str, seed: int = 0) -> BulkResult:
    """Measure the total Hamming weight of a species' cells.

    Samples w with the Born probability ||P_w psi||^2 (deterministic given
    ``seed``) and collapses onto that weight eigenspace; individual cells
    are not resolved.
    """
    return _bulk_measure_rng(chain, species, np.random.default_rng(seed))


def _cool_species_rng(
    chain: CellChain, species: str, rng: np.random.Generator
) -> CellChain:
    vec = np.array(chain.state.amplitudes)
    n = chain.length
    for c in chain.cells_of(species):
        vec, outcome, _ = measure_qubit(vec, n, c, rng=rng)
        if outcome == 1:
            vec = apply_single_qubit(vec, n, c, PAULI_X)
    return CellChain(chain.pattern, PureState(n, vec), chain.boundary)


def cool_species(chain: CellChain, species: str, seed: int = 0) -> CellChain:
    """Reset every cell of a species to |0> (measure-and-flip realization)."""
    return _cool_species_rng(chain, species, np.random.default_rng(seed))


def translate(chain: CellChain, offset: int) -> CellChain:
    """Cyclic shift of the state by ``offset`` cells (periodic chains only).

    The offset must be a multiple of the species period and the length a
    multiple of the period, so cell species are preserved.
    """
    if chain.boundary != "periodic":
        raise ValueError("translation is only defined on periodic chains")
    if chain.length % chain.period != 0:
        raise ValueError(
            f"length {chain.length} is not a multiple of the period {chain.period}"
        )
    if offset % chain.period != 0:
        raise ValueError(f"offset {offset} is not a multiple of the period {chain.period}")
    n = chain.length
    psi = chain.state.amplitudes.reshape((2,) * n)
    axes = [(k - offset) % n for k in range(n)]
    vec = np.transpose(psi, axes).reshape(-1)
    return CellChain(chain.pattern, PureState(n, vec), chain.boundary)


def transport_demo(chain: CellChain, payload: np.ndarray, rounds: int) -> CellChain:
    """Move a payload qubit down the chain with global SWAP pulses only.

    The chain must be cooled to |00...0>; the payload (a normalized
    2-vector) is loaded into cell 0.  Each round applies SWAP pair pulses
    over the species cycle -- (A,B), (B,C), (C,A) for an ABC pattern --
    carrying the payload one full period of sites per round.  After k
    rounds it sits at cell period*k (mod length when periodic).
    """
    if rounds < 0:
        raise ValueError(f"rounds = {rounds} must be non-negative")
    amp0 = chain.state.amplitudes[0]
    if abs(abs(amp0) - 1.0) > 1e-12:
        raise ValueError("transport needs a chain cooled to the all-zeros state")
    pay = np.array(payload, dtype=complex).reshape(-1)
    if pay.shape != (2,):
        raise ValueError("payload must be a single-qubit amplitude pair")
    norm = np.linalg.norm(pay)
    if abs(norm - 1.0) > 1e-10:
        raise ValueError(f"payload norm {norm} deviates from 1")
    dest = chain.period * rounds
    if chain.boundary == "open" and dest > chain.length - 1:
        raise ValueError(
            f"payload would cross the open boundary: site {dest} > {chain.length - 1}"
        )
    rest = np.zeros(1 << (chain.length - 1), dtype=complex)
    rest[0] = 1.0
    loaded = CellChain(
        chain.pattern,
        PureState(chain.length, np.kron(pay, rest)),
        chain.boundary,
    )
    out = loaded
    for _ in range(rounds):
        for j in range(out.period):
            first = out.pattern[j]
            second = out.pattern[(j + 1) % out.period]
            out = apply_pulse(out, PairPulse(first, second, SWAP_MATRIX))
    return out


# ---------------------------------------------------------------------------
# script interface

_NAMED_SINGLE = {"X": PAULI_X, "Y": PAULI_Y, "Z": PAULI_Z, "H": HADAMARD}
_NAMED_PAIR = {"CZ": CZ_MATRIX, "SWAP": SWAP_MATRIX}


def _parse_single_op(fields: list[str], line_no: int) -> np.ndarray:
    name = fields[0].upper()
    if name in _NAMED_SINGLE:
        if len(fields) != 1:
            raise ParseError(line_no, f"{name} takes no arguments")
        return _NAMED_SINGLE[name]
    if name == "R":
        if len(fields) != 5:
            raise ParseError(line_no, "R expects kx ky kz m")
        try:
            kx, ky, kz, m = (int(f) for f in fields[1:])
        except ValueError:
            raise ParseError(line_no, "non-integer rotation field") from None
        try:
            return RotationGate(0, (kx, ky, kz), m).matrix()
        except ValueError as exc:
            raise ParseError(line_no, str(exc)) from None
    raise ParseError(line_no, f"unknown gate {fields[0]!r}")


def run_script(
    chain: CellChain, text: str, seed: int = 0
) -> tuple[CellChain, list[dict]]:
    """Execute a pulse/measure/cool script against a chain.

    Instruction lines (``#`` comments and blanks ignored)::

        PULSE <species> <X|Y|Z|H | R kx ky kz m>
        PAIR <s1> <s2> <CZ|SWAP>
        MEASURE <species>
        COOL <species>

    Returns the final chain and one event record per instruction (bulk
    measurement outcomes included).  All randomness comes from ``seed``.
    """
    rng = np.random.default_rng(seed)
    events: list[dict] = []
    current = chain
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        op = fields[0].upper()
        try:
            if op == "PULSE":
                if len(fields) < 3:
                    raise ParseError(line_no, "PULSE expects a species and a gate")
                mat = _parse_single_op(fields[2:], line_no)
                current = apply_pulse(current, SpeciesPulse(fields[1].upper(), mat))
                events.append(
                    {
                        "op": "pulse",
                        "species": fields[1].upper(),
                        "gate": " ".join(fields[2:]).upper(),
                    }
                )
            elif op == "PAIR":
                if len(fields) != 4:
                    raise ParseError(line_no, "PAIR expects two species and a gate")
                name = fields[3].upper()
                if name not in _NAMED_PAIR:
                    raise ParseError(line_no, f"unknown pair gate {fields[3]!r}")
                pulse = PairPulse(fields[1].upper(), fields[2].upper(), _NAMED_PAIR[name])
                current = apply_pulse(current, pulse)
                events.append(
                    {"op": "pair", "first": fields[1].upper(), "second": fields[2].upper(), "gate": name}
                )
            elif op == "MEASURE":
                if len(fields) != 2:
                    raise ParseError(line_no, "MEASURE expects a species")
                result = _bulk_measure_rng(current, fields[1].upper(), rng)
                current = result.chain
                events.append(
                    {"op": "measure", "species": result.species, "weight": result.weight}
                )
            elif op == "COOL":
                if len(fields) != 2:
                    raise ParseError(line_no, "COOL expects a species")
                current = _cool_species_rng(current, fields[1].upper(), rng)
                events.append({"op": "cool", "species": fields[1].upper()})
            else:
                raise ParseError(line_no, f"unknown instruction {fields[0]!r}")
        except ValueError as exc:
            if isinstance(exc, ParseError):
                raise
            raise ParseError(line_no, str(exc)) from None
    return current, events
