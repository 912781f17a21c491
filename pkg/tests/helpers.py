"""Shared test utilities: random inputs and independent dense references."""

from __future__ import annotations

import random

import numpy as np

from paulimeasure import Hamiltonian, PauliProduct
from paulimeasure import gf2
from paulimeasure.verify import dense_pauli

AXES = "IXYZ"


def random_pauli(n_qubits: int, rng: random.Random, phase: bool = False) -> PauliProduct:
    label = "".join(rng.choice(AXES) for _ in range(n_qubits))
    return PauliProduct.from_label(label, rng.randrange(4) if phase else 0)


def all_paulis(n_qubits: int):
    """All 4^n phase-free products, lexicographic in (x, z)."""
    for x in range(1 << n_qubits):
        for z in range(1 << n_qubits):
            yield PauliProduct(n_qubits, x, z)


def random_subspace(n_qubits: int, dim: int, rng: random.Random) -> list[int]:
    """Random independent packed vectors, no isotropy constraint."""
    vecs: list[int] = []
    while len(vecs) < dim:
        v = rng.getrandbits(2 * n_qubits)
        if v and not gf2.in_span(vecs, 2 * n_qubits, v):
            vecs.append(v)
    return vecs


def random_isotropic(n_qubits: int, dim: int, rng: random.Random) -> list[int]:
    """Random independent, mutually orthogonal packed vectors."""
    vecs: list[int] = []
    while len(vecs) < dim:
        comp = gf2.symplectic_complement(vecs, n_qubits)
        mask = rng.randrange(1, 1 << len(comp))
        v = 0
        for k in range(len(comp)):
            if (mask >> k) & 1:
                v ^= comp[k]
        if v and not gf2.in_span(vecs, 2 * n_qubits, v):
            vecs.append(v)
    return vecs


def random_commuting_group(n_qubits: int, rng: random.Random) -> Hamiltonian:
    """Random mutually commuting group from a random Lagrangian basis."""
    basis = random_isotropic(n_qubits, n_qubits, rng)
    max_terms = min(12, 1 << n_qubits)
    n_terms = rng.randint(1, max_terms)
    masks = rng.sample(range(1 << n_qubits), n_terms)
    terms = []
    for mask in masks:
        v = 0
        for k in range(n_qubits):
            if (mask >> k) & 1:
                v ^= basis[k]
        coeff = rng.uniform(0.05, 2.0) * rng.choice((-1.0, 1.0))
        mask_n = (1 << n_qubits) - 1
        terms.append((coeff, PauliProduct(n_qubits, v & mask_n, v >> n_qubits)))
    return Hamiltonian.from_terms(n_qubits, terms)


def random_graph_hamiltonian(n_qubits: int, n_terms: int, rng: random.Random) -> Hamiltonian:
    """Random Hamiltonian with distinct non-identity terms (no commutation constraint)."""
    seen = set()
    terms = []
    while len(terms) < n_terms:
        x = rng.getrandbits(n_qubits)
        z = rng.getrandbits(n_qubits)
        if (x, z) == (0, 0) or (x, z) in seen:
            continue
        seen.add((x, z))
        terms.append((rng.uniform(0.1, 1.0), PauliProduct(n_qubits, x, z)))
    return Hamiltonian.from_terms(n_qubits, terms)


def conjugation_maps_paulis_to_paulis(u: np.ndarray, n_qubits: int,
                                      tol: float = 1e-8) -> bool:
    """True when U P U^dag is a phase times one Pauli product for every P."""
    dim = 1 << n_qubits
    basis = [dense_pauli(p) for p in all_paulis(n_qubits)]
    for p_mat in basis:
        m = u @ p_mat @ u.conj().T
        hits = 0
        for q_mat in basis:
            coeff = np.trace(q_mat.conj().T @ m) / dim
            if abs(coeff) > tol:
                hits += 1
                if abs(abs(coeff) - 1.0) > tol:
                    return False
        if hits != 1:
            return False
    return True
