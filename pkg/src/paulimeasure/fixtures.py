"""Bundled example Hamiltonians and reference bases used in tests and docs."""

from __future__ import annotations

from .pauli import Hamiltonian, PauliProduct, parse_hamiltonian
from .transform import TauSigmaBasis

# Two-term model: a X0X1 + b Z0Z1. The terms commute but are not QWC.
MODEL_TEXT = """\
qubits: 2
1.0 X0 X1
1.0 Z0 Z1
"""

# Six-term example whose commutativity graph splits into two cliques of
# three: the Z-string family {Z0Z1, Z0Z1Z2, Z0Z1Z3} and the X2X3 family.
SIX_TERM_TEXT = """\
qubits: 4
1.0 Z0 Z1
1.0 Z0 Z1 Z2
1.0 Z0 Z1 Z3
1.0 X2 X3
1.0 Y0 X2 X3
1.0 Y1 X2 X3
"""

# One of the two mutually commuting groups of the H2/STO-3G Hamiltonian
# under the Bravyi-Kitaev transformation (11 terms on 4 qubits).
H2_GROUP_TEXT = """\
qubits: 4
-0.4738 I
0.1412 Z1
0.0558 X0 Z1 X2
0.0558 Y0 Z1 Y2
0.0868 Z0 Z2
0.1425 Z0 Z1 Z2
0.1489 Z1 Z3
0.0558 X0 Z1 X2 Z3
0.0558 Y0 Z1 Y2 Z3
0.0868 Z0 Z2 Z3
0.1425 Z0 Z1 Z2 Z3
"""


def model_hamiltonian(a: float = 1.0, b: float = 1.0) -> Hamiltonian:
    n = 2
    return Hamiltonian.from_terms(n, [
        (a, PauliProduct.from_term_string("X0 X1", n)),
        (b, PauliProduct.from_term_string("Z0 Z1", n)),
    ])


def six_term_hamiltonian() -> Hamiltonian:
    return parse_hamiltonian(SIX_TERM_TEXT)


def h2_commuting_group() -> Hamiltonian:
    return parse_hamiltonian(H2_GROUP_TEXT)


def model_reference_basis() -> TauSigmaBasis:
    """Reference tau/sigma pair for the two-term model."""
    n = 2
    return TauSigmaBasis(
        n,
        (PauliProduct.from_term_string("X0 X1", n),
         PauliProduct.from_term_string("Z0 Z1", n)),
        ((0, "Z"), (1, "X")))


def h2_reference_basis() -> TauSigmaBasis:
    """Reference tau/sigma sets for the H2 commuting group."""
    n = 4
    taus = tuple(PauliProduct.from_term_string(s, n)
                 for s in ("Z3", "Z1", "Y0 Y2", "X0 X2"))
    sigmas = ((3, "X"), (1, "X"), (2, "X"), (0, "Y"))
    return TauSigmaBasis(n, taus, sigmas)
