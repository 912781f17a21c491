"""Measurement grouping and Clifford compilation for qubit Hamiltonians."""

from .pauli import (DROP_TOLERANCE, Hamiltonian, HamiltonianFormatError,
                    PauliProduct, PauliSum, SymplecticVector, commutes, multiply,
                    parse_hamiltonian, qwc, serialize_hamiltonian, symplectic_inner)
from .grouping import (CliqueCover, CompatGraph, CoverReport, CoverStats,
                       build_graph, compute_cover, cover_exact, cover_greedy,
                       cover_rlf, cover_stats, cover_to_dict, validate_cover)
from .transform import (GroupPlan, MeasurementPlan, TauSigmaBasis, TransformError,
                        TransformedGroup, build_unitary_symbolic, expand_in_tau,
                        find_sigma, find_tau, pipeline, plan_from_dict,
                        plan_to_dict, transform_group)
from .circuits import (CliffordCircuit, Gate, PauliExponent, circuit_from_dict,
                       circuit_to_dict, circuit_to_text, decompose_exponent,
                       exponent_sequence, gate_counts, synthesize)

__version__ = "0.1.0"

__all__ = [
    "DROP_TOLERANCE", "Hamiltonian", "HamiltonianFormatError", "PauliProduct",
    "PauliSum", "SymplecticVector", "commutes", "multiply", "parse_hamiltonian",
    "qwc", "serialize_hamiltonian", "symplectic_inner",
    "CliqueCover", "CompatGraph", "CoverReport", "CoverStats", "build_graph",
    "compute_cover", "cover_exact", "cover_greedy", "cover_rlf", "cover_stats",
    "cover_to_dict", "validate_cover",
    "GroupPlan", "MeasurementPlan", "TauSigmaBasis", "TransformError",
    "TransformedGroup", "build_unitary_symbolic", "expand_in_tau", "find_sigma",
    "find_tau", "pipeline", "plan_from_dict", "plan_to_dict", "transform_group",
    "CliffordCircuit", "Gate", "PauliExponent", "circuit_from_dict",
    "circuit_to_dict", "circuit_to_text", "decompose_exponent",
    "exponent_sequence", "gate_counts", "synthesize",
]
