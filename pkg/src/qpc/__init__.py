"""Quantum program toolkit.

A small interpreter stack for gate programs (rotations + CZ with a formal
size function), an exact statevector engine, and three alternative
execution models: measurement patterns on cluster states, adiabatic
search, and globally controlled cell chains.  A selection tool routes a
device description to the paradigm that fits it.
"""

from .program_ir import (
    CZ_MATRIX,
    CZGate,
    ParseError,
    PAULI_X,
    PAULI_Y,
    PAULI_Z,
    Program,
    RotationGate,
    UnitaryDescriptor,
    parse_program,
    program_fidelity,
    program_size,
    program_unitary,
    render_program,
)
from .statevec import (
    Distribution,
    PureState,
    ReadoutSpec,
    cool,
    exact_distribution,
    init_from_bitstring,
    run_program,
    sample,
    total_variation_distance,
)
from .oneway import (
    BranchLimitError,
    MeasurementPattern,
    MeasureStep,
    branch_determinism_check,
    compile_to_pattern,
    pattern_from_json,
    pattern_to_json,
    simulate_pattern,
)
from .adiabatic import (
    EvolutionReport,
    GroverInstance,
    Schedule,
    evolve,
    evolve_dense,
    gap,
    hamiltonian,
    min_gap,
    runtime_to_target,
    schedule_lambdas,
)
from .global_control import (
    BulkResult,
    CellChain,
    HADAMARD,
    SWAP_MATRIX,
    PairPulse,
    SpeciesPulse,
    apply_pulse,
    bulk_measure,
    chain_from_bits,
    cool_species,
    run_script,
    translate,
    transport_demo,
)
from .selector import (
    DeviceProfile,
    Paradigm,
    ThresholdEntry,
    recommend,
    threshold_table,
)

__version__ = "0.1.0"

__all__ = [
    "CZ_MATRIX",
    "CZGate",
    "ParseError",
    "PAULI_X",
    "PAULI_Y",
    "PAULI_Z",
    "Program",
    "RotationGate",
    "UnitaryDescriptor",
    "parse_program",
    "program_fidelity",
    "program_size",
    "program_unitary",
    "render_program",
    "Distribution",
    "PureState",
    "ReadoutSpec",
    "cool",
    "exact_distribution",
    "init_from_bitstring",
    "run_program",
    "sample",
    "total_variation_distance",
    "BranchLimitError",
    "MeasurementPattern",
    "MeasureStep",
    "branch_determinism_check",
    "compile_to_pattern",
    "pattern_from_json",
    "pattern_to_json",
    "simulate_pattern",
    "EvolutionReport",
    "GroverInstance",
    "Schedule",
    "evolve",
    "evolve_dense",
    "gap",
    "hamiltonian",
    "min_gap",
    "runtime_to_target",
    "schedule_lambdas",
    "BulkResult",
    "HADAMARD",
    "SWAP_MATRIX",
    "CellChain",
    "PairPulse",
    "SpeciesPulse",
    "apply_pulse",
    "bulk_measure",
    "chain_from_bits",
    "cool_species",
    "run_script",
    "translate",
    "transport_demo",
    "DeviceProfile",
    "Paradigm",
    "ThresholdEntry",
    "recommend",
    "threshold_table",
    "__version__",
]
