"""Dense-matrix and exhaustive-enumeration oracles.

Everything here rebuilds operators from first principles (Kronecker
products, literal gate matrices, brute-force enumeration) so the fast
bit-level algebra elsewhere can be checked against an independent route.
Qubit 0 is the leftmost Kronecker factor.
"""

from __future__ import annotations

import numpy as np

from .circuits import CliffordCircuit, Gate
from .pauli import Hamiltonian, I_POWERS, PauliProduct, PauliSum

MAX_DENSE_QUBITS = 12
MAX_SPECTRUM_QUBITS = 10
MAX_EXPECTATION_QUBITS = 6
MAX_COUNT_QUBITS = 8

_PAULI_2X2 = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}
_GATE_1Q = {
    "H": np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2),
    "S": np.array([[1, 0], [0, 1j]], dtype=complex),
    "SDG": np.array([[1, 0], [0, -1j]], dtype=complex),
    "X": _PAULI_2X2["X"],
    "Y": _PAULI_2X2["Y"],
    "Z": _PAULI_2X2["Z"],
}
# (control, target) with the control as the first tensor factor.
_CNOT = np.array([[1, 0, 0, 0],
                  [0, 1, 0, 0],
                  [0, 0, 0, 1],
                  [0, 0, 1, 0]], dtype=complex)


class DimensionError(ValueError):
    """Dense oracle qubit cap exceeded."""


def _check_cap(n_qubits: int, cap: int = MAX_DENSE_QUBITS) -> None:
    if n_qubits > cap:
        raise DimensionError(f"{n_qubits} qubits exceed the cap of {cap}")


def dense_pauli(p: PauliProduct) -> np.ndarray:
    _check_cap(p.n_qubits)
    m = np.ones((1, 1), dtype=complex)
    for q in range(p.n_qubits):
        m = np.kron(m, _PAULI_2X2[p.axis(q)])
    return I_POWERS[p.phase_exp] * m


def _embed_1q(mat: np.ndarray, qubit: int, n_qubits: int) -> np.ndarray:
    left = np.eye(1 << qubit, dtype=complex)
    right = np.eye(1 << (n_qubits - qubit - 1), dtype=complex)
    return np.kron(np.kron(left, mat), right)


def dense_gate(gate: Gate, n_qubits: int) -> np.ndarray:
    if gate.name == "CNOT":
        control, target = gate.qubits
        p0 = np.array([[1, 0], [0, 0]], dtype=complex)
        p1 = np.array([[0, 0], [0, 1]], dtype=complex)
        return (_embed_1q(p0, control, n_qubits)
                + _embed_1q(p1, control, n_qubits)
                @ _embed_1q(_PAULI_2X2["X"], target, n_qubits))
    return _embed_1q(_GATE_1Q[gate.name], gate.qubits[0], n_qubits)


def dense_circuit(c: CliffordCircuit) -> np.ndarray:
    _check_cap(c.n_qubits)
    u = np.eye(1 << c.n_qubits, dtype=complex)
    for gate in c.gates:
        u = dense_gate(gate, c.n_qubits) @ u
    return np.exp(1j * np.pi / 4 * c.global_phase_exp) * u


def dense_matrix(obj) -> np.ndarray:
    """Dense operator for a PauliProduct, Hamiltonian, PauliSum or circuit."""
    if isinstance(obj, np.ndarray):
        return obj
    if isinstance(obj, PauliProduct):
        return dense_pauli(obj)
    if isinstance(obj, (Hamiltonian, PauliSum)):
        _check_cap(obj.n_qubits)
        m = np.zeros((1 << obj.n_qubits,) * 2, dtype=complex)
        for coeff, prod in obj.terms:
            m += coeff * dense_pauli(prod)
        return m
    if isinstance(obj, CliffordCircuit):
        return dense_circuit(obj)
    raise TypeError(f"cannot build a dense matrix from {type(obj).__name__}")


def spectra_equal(h1, h2, tol: float = 1e-9) -> bool:
    """Sorted-eigenvalue comparison of two Hermitian operators."""
    m1, m2 = dense_matrix(h1), dense_matrix(h2)
    if m1.shape != m2.shape:
        return False
    if m1.shape[0] > 1 << MAX_SPECTRUM_QUBITS:
        raise DimensionError("spectrum comparison cap exceeded")
    e1 = np.linalg.eigvalsh(m1)
    e2 = np.linalg.eigvalsh(m2)
    return bool(np.max(np.abs(e1 - e2)) <= tol)


def random_state(n_qubits: int, rng: np.random.Generator) -> np.ndarray:
    v = rng.standard_normal(1 << n_qubits) + 1j * rng.standard_normal(1 << n_qubits)
    return v / np.linalg.norm(v)


def expectation_invariance(h, a, u, trials: int = 50,
                           rng: np.random.Generator | None = None) -> float:
    """Max deviation of <psi|H|psi> from <U psi|A|U psi> over random states."""
    mh = dense_matrix(h)
    n_qubits = int(mh.shape[0]).bit_length() - 1
    if n_qubits > MAX_EXPECTATION_QUBITS:
        raise DimensionError("expectation check cap exceeded")
    ma, mu = dense_matrix(a), dense_matrix(u)
    if rng is None:
        rng = np.random.default_rng(20200214)
    worst = 0.0
    for _ in range(trials):
        psi = random_state(n_qubits, rng)
        phi = mu @ psi
        lhs = np.vdot(psi, mh @ psi)
        rhs = np.vdot(phi, ma @ phi)
        worst = max(worst, abs(lhs - rhs))
    return worst


def count_compatible(template: PauliProduct) -> dict[str, int]:
    """Exhaustive census of the 4^N products that are QWC / commuting with template."""
    n = template.n_qubits
    if n > MAX_COUNT_QUBITS:
        raise DimensionError(f"enumeration limited to {MAX_COUNT_QUBITS} qubits")
    xt, zt, st = template.x, template.z, template.support
    n_qwc = n_commuting = 0
    for x in range(1 << n):
        for z in range(1 << n):
            if (((xt ^ x) | (zt ^ z)) & st & (x | z)) == 0:
                n_qwc += 1
            if (((xt & z).bit_count() + (zt & x).bit_count()) & 1) == 0:
                n_commuting += 1
    return {"n_qwc": n_qwc, "n_commuting": n_commuting}


def simulate_circuit(c: CliffordCircuit, state) -> np.ndarray:
    """Apply gates in order to a dense state vector; includes the global phase."""
    _check_cap(c.n_qubits)
    psi = np.array(state, dtype=complex).reshape([2] * c.n_qubits)
    for gate in c.gates:
        if gate.name == "CNOT":
            control, target = gate.qubits
            m4 = _CNOT.reshape(2, 2, 2, 2)
            psi = np.tensordot(m4, psi, axes=([2, 3], [control, target]))
            psi = np.moveaxis(psi, [0, 1], [control, target])
        else:
            q = gate.qubits[0]
            psi = np.tensordot(_GATE_1Q[gate.name], psi, axes=([1], [q]))
            psi = np.moveaxis(psi, 0, q)
    return np.exp(1j * np.pi / 4 * c.global_phase_exp) * psi.reshape(-1)


def phase_aligned_distance(a: np.ndarray, b: np.ndarray) -> float:
    """Max elementwise deviation after aligning a global phase between a and b."""
    overlap = np.vdot(b, a)
    if abs(overlap) < 1e-30:
        return float(np.max(np.abs(a - b)))
    phase = overlap / abs(overlap)
    return float(np.max(np.abs(a - phase * b)))
