"""Dense-unitary oracle for small qubit counts.

Builds exact matrices for gadgets, circuits, exact time evolution, and the
initial-state unitary overlap.  Qubit 0 is the most significant tensor
factor, matching the Pauli string convention.  Application order: a circuit
``[g0, g1]`` has unitary ``M(g1) @ M(g0)``.

Equivalence up to an output permutation is checked against
``u1 = exp(i*gamma) * P(perm) @ u2`` where ``P(perm)`` is the operator with
``P X_i P^ = X_{perm[i]}``; the two-qubit SWAP test in the suite pins this
direction.
"""

from __future__ import annotations

from functools import lru_cache, reduce
from collections.abc import Sequence

import numpy as np

from .circuit import Circuit
from .paulis import Gate, Pauli, PauliGadget, PauliPolynomial, PauliString

MAX_DENSE_QUBITS = 12

_I2 = np.eye(2, dtype=complex)
_X = np.array([[0, 1], [1, 0]], dtype=complex)
_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
_Z = np.array([[1, 0], [0, -1]], dtype=complex)

PAULI_MATRICES = {Pauli.I: _I2, Pauli.X: _X, Pauli.Y: _Y, Pauli.Z: _Z}

_S = np.diag([1, 1j]).astype(complex)
_V = 0.5 * np.array([[1 + 1j, 1 - 1j], [1 - 1j, 1 + 1j]], dtype=complex)

GATE_MATRICES_1Q = {
    "h": np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2),
    "s": _S,
    "sdg": _S.conj().T,
    "v": _V,
    "vdg": _V.conj().T,
}

_P0 = np.array([[1, 0], [0, 0]], dtype=complex)
_P1 = np.array([[0, 0], [0, 1]], dtype=complex)


def _check_dim(num_qubits: int) -> None:
    if num_qubits > MAX_DENSE_QUBITS:
        raise ValueError(
            f"dense verification is capped at {MAX_DENSE_QUBITS} qubits, got {num_qubits}")


def _kron_all(factors: Sequence[np.ndarray]) -> np.ndarray:
    return reduce(np.kron, factors)


def pauli_matrix(string: PauliString) -> np.ndarray:
    _check_dim(len(string))
    return _kron_all([PAULI_MATRICES[p] for p in string.letters])


@lru_cache(maxsize=4096)
def _gate_matrix_cached(kind: str, qubits: tuple[int, ...], angle: float,
                        num_qubits: int) -> np.ndarray:
    if kind == "cx":
        c, t = qubits
        on0 = [_I2] * num_qubits
        on1 = [_I2] * num_qubits
        on0[c] = _P0
        on1[c] = _P1
        on1[t] = _X
        return _kron_all(on0) + _kron_all(on1)
    if kind == "rz":
        m = np.diag([np.exp(-1j * angle / 2), np.exp(1j * angle / 2)])
    else:
        m = GATE_MATRICES_1Q[kind]
    factors = [_I2] * num_qubits
    factors[qubits[0]] = m
    return _kron_all(factors)


def gate_matrix(gate: Gate, num_qubits: int) -> np.ndarray:
    _check_dim(num_qubits)
    return _gate_matrix_cached(gate.kind, gate.qubits, gate.angle, num_qubits)


def gadget_unitary(gadget: PauliGadget) -> np.ndarray:
    """``exp(-i*angle/2 * P)`` via cos/sin closed form (P is an involution)."""
    p = pauli_matrix(gadget.string)
    half = gadget.angle / 2
    return np.cos(half) * np.eye(p.shape[0]) - 1j * np.sin(half) * p


def circuit_unitary(c: Circuit) -> np.ndarray:
    _check_dim(c.num_qubits)
    u = np.eye(2 ** c.num_qubits, dtype=complex)
    for g in c.gates:
        u = gate_matrix(g, c.num_qubits) @ u
    return u


def polynomial_unitary(poly: PauliPolynomial, order: Sequence[int] | None = None) -> np.ndarray:
    """Product of gadget exponentials; the first gadget in ``order`` acts first."""
    _check_dim(poly.num_qubits)
    idx = range(len(poly.gadgets)) if order is None else order
    u = np.eye(2 ** poly.num_qubits, dtype=complex)
    for i in idx:
        u = gadget_unitary(poly.gadgets[i]) @ u
    return u


@lru_cache(maxsize=64)
def _hamiltonian_eig(poly: PauliPolynomial) -> tuple[np.ndarray, np.ndarray]:
    dim = 2 ** poly.num_qubits
    ham = np.zeros((dim, dim), dtype=complex)
    for g in poly.gadgets:
        ham += g.angle * pauli_matrix(g.string)
    evals, evecs = np.linalg.eigh(ham)
    return evals, evecs


def exact_unitary(poly: PauliPolynomial, t: float) -> np.ndarray:
    """``exp(-i*t/2 * sum_n angle_n * P_n)`` via Hermitian eigendecomposition."""
    _check_dim(poly.num_qubits)
    evals, evecs = _hamiltonian_eig(poly)
    return (evecs * np.exp(-1j * t / 2 * evals)) @ evecs.conj().T


def permutation_operator(perm: Sequence[int], num_qubits: int | None = None) -> np.ndarray:
    """Unitary P with ``P X_i P^ = X_{perm[i]}`` (bit i moves to position perm[i])."""
    mapping = list(perm)
    n = num_qubits if num_qubits is not None else len(mapping)
    dim = 2 ** n
    op = np.zeros((dim, dim), dtype=complex)
    for src in range(dim):
        dst = 0
        for i in range(n):
            bit = (src >> (n - 1 - i)) & 1
            dst |= bit << (n - 1 - mapping[i])
        op[dst, src] = 1.0
    return op


def equivalent(u1: np.ndarray, u2: np.ndarray,
               perm: Sequence[int] | None = None, tol: float = 1e-9) -> bool:
    """True iff ``u1 = exp(i*gamma) * P(perm) @ u2`` for some global phase."""
    if u1.shape != u2.shape:
        raise ValueError("dimension mismatch")
    target = u2
    if perm is not None:
        n = u1.shape[0].bit_length() - 1
        target = permutation_operator(perm, n) @ u2
    idx = np.unravel_index(np.argmax(np.abs(target)), target.shape)
    ref = target[idx]
    if abs(ref) < 1e-12:
        return bool(np.max(np.abs(u1)) <= tol)
    phase = u1[idx] / ref
    if abs(abs(phase) - 1.0) > max(tol, 1e-9):
        return False
    phase /= abs(phase)
    return bool(np.max(np.abs(u1 - phase * target)) <= tol)


def _apply_gate_state(psi: np.ndarray, gate: Gate, n: int) -> np.ndarray:
    """Apply one gate to a state vector of 2**n amplitudes."""
    if gate.kind == "cx":
        c, t = gate.qubits
        shaped = psi.reshape([2] * n)
        sel = [slice(None)] * n
        sel[c] = 1
        sub = shaped[tuple(sel)]
        t_axis = t if t < c else t - 1
        shaped[tuple(sel)] = np.flip(sub, axis=t_axis).copy()
        return shaped.reshape(-1)
    if gate.kind == "rz":
        m = np.diag([np.exp(-1j * gate.angle / 2), np.exp(1j * gate.angle / 2)])
    else:
        m = GATE_MATRICES_1Q[gate.kind]
    j = gate.qubits[0]
    shaped = np.moveaxis(psi.reshape([2] * n), j, 0).reshape(2, -1)
    shaped = m @ shaped
    return np.moveaxis(shaped.reshape([2] * n), 0, j).reshape(-1).copy()


def apply_circuit_to_state(circuit: Circuit, psi: np.ndarray) -> np.ndarray:
    """State-vector application of a circuit (gates[0] first)."""
    out = psi.astype(complex).copy()
    for g in circuit.gates:
        out = _apply_gate_state(out, g, circuit.num_qubits)
    return out


def overlap(poly: PauliPolynomial, circuit: Circuit, t: float, r: int = 1) -> complex:
    """``<0| U_exact(t) U_circuit^ |0>`` with the circuit repeated r times.

    The circuit is expected to realize one repetition of the product formula,
    i.e. to have been synthesized from ``poly`` with angles scaled by t/r.
    Evaluated on state vectors: ``U_circuit^ |0>`` is simulated directly and
    contracted with the top row of the exact evolution operator.
    """
    if r < 1:
        raise ValueError("repetitions must be >= 1")
    if circuit.num_qubits != poly.num_qubits:
        raise ValueError("dimension mismatch between polynomial and circuit")
    n = poly.num_qubits
    _check_dim(n)
    psi = np.zeros(2 ** n, dtype=complex)
    psi[0] = 1.0
    adjoint = circuit.adjoint()
    for _ in range(r):
        psi = apply_circuit_to_state(adjoint, psi)
    evals, evecs = _hamiltonian_eig(poly)
    exact_row0 = (evecs[0, :] * np.exp(-1j * t / 2 * evals)) @ evecs.conj().T
    return complex(exact_row0 @ psi)
