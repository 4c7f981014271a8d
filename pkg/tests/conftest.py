import numpy as np
import pytest

import paulisynth as ps
from paulisynth import verify


def random_clifford_circuit(q, n, rng):
    """Random circuit over {h, s, sdg, v, vdg, cx}."""
    gates = []
    while len(gates) < n:
        kind = ["h", "s", "sdg", "v", "vdg", "cx"][rng.integers(6)]
        if kind == "cx":
            if q < 2:
                continue
            c, t = rng.choice(q, 2, replace=False)
            gates.append(ps.cx(int(c), int(t)))
        else:
            gates.append(ps.Gate(kind, (int(rng.integers(q)),)))
    return ps.Circuit(q, tuple(gates))


def tableau_matches_unitary(t, u):
    """Every generator image of the tableau must equal dense conjugation exactly."""
    q = t.num_qubits
    for r in range(2 * q):
        gen = [ps.Pauli.I] * q
        if r < q:
            gen[r] = ps.Pauli.X
        else:
            gen[r - q] = ps.Pauli.Z
        lhs = u @ verify.pauli_matrix(ps.PauliString(tuple(gen))) @ u.conj().T
        letters = tuple(t.row_letter(r, j) for j in range(q))
        rhs = (-1 if t.signs[r] else 1) * verify.pauli_matrix(ps.PauliString(letters))
        if not np.allclose(lhs, rhs, atol=1e-10):
            return False
    return True


def random_connected_topology(q, rng, extra_edge_prob=0.3):
    """Random spanning tree plus extra edges."""
    edges = []
    nodes = list(range(q))
    rng.shuffle(nodes)
    for i in range(1, q):
        edges.append((nodes[i], nodes[int(rng.integers(i))]))
    for u in range(q):
        for w in range(u + 1, q):
            if rng.random() < extra_edge_prob:
                edges.append((u, w))
    return ps.Topology(q, edges)


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)
