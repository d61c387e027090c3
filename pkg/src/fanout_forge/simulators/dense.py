"""Dense statevector and unitary simulation.

Basis ordering is little-endian throughout: qubit ``q`` is bit ``q`` of the
basis index, and bitstrings are printed with qubit 0 leftmost.
"""

from __future__ import annotations

import json
import os

import numpy as np
from scipy import sparse

from ..circuit import Circuit, Gate
from ..errors import ResourceGuardError
from ..pauli import PauliString

DEFAULT_DENSE_CAP = 14
HARD_DENSE_CAP = 16
CAP_ENV_VAR = "FANOUT_FORGE_DENSE_CAP"

_SQRT_HALF = 1 / np.sqrt(2)
_ONE_QUBIT = {
    "H": np.array([[1, 1], [1, -1]], dtype=complex) * _SQRT_HALF,
    "S": np.array([[1, 0], [0, 1j]], dtype=complex),
    "S_DAGGER": np.array([[1, 0], [0, -1j]], dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}
# diagonal/permutation gates keep basis states as basis states (up to phase)
_MONOMIAL_KINDS = {"CX", "X", "Z", "S", "S_DAGGER"}
_DIAGONAL_PHASE = {"Z": -1, "S": 1j, "S_DAGGER": -1j}


def dense_cap(override: int | None = None) -> int:
    """Qubit cap for dense simulation: explicit override, else env var, else 14."""
    if override is None:
        override = int(os.environ.get(CAP_ENV_VAR, DEFAULT_DENSE_CAP))
    if override > HARD_DENSE_CAP:
        raise ResourceGuardError(f"dense cap {override} exceeds hard maximum {HARD_DENSE_CAP}")
    return override


def _guard(n: int, cap: int | None):
    limit = dense_cap(cap)
    if n > limit:
        raise ResourceGuardError(f"{n} qubits exceeds dense cap {limit} (set {CAP_ENV_VAR} or pass cap)")


def _apply_gate(amps: np.ndarray, gate: Gate, n: int) -> np.ndarray:
    """Apply ``gate`` to every column of a ``(2**n, batch)`` array."""
    if max(gate.qubits) >= n:
        raise IndexError(f"{gate!r} out of range for {n} qubits")
    batch = amps.shape[1]
    if gate.kind == "CX":
        c, t = gate.qubits
        idx = np.arange(1 << n)
        return amps[idx ^ (((idx >> c) & 1) << t)]
    (q,) = gate.qubits
    view = amps.reshape(1 << (n - q - 1), 2, 1 << q, batch)
    out = np.einsum("ab,ibjk->iajk", _ONE_QUBIT[gate.kind], view)
    return out.reshape(1 << n, batch)


class StateVector:
    def __init__(self, n: int, amplitudes=None, cap: int | None = None):
        _guard(n, cap)
        self.n = n
        if amplitudes is None:
            amplitudes = np.zeros(1 << n, dtype=complex)
            amplitudes[0] = 1.0
        self.amplitudes = np.asarray(amplitudes, dtype=complex).reshape(1 << n)

    @classmethod
    def zero(cls, n: int, cap: int | None = None) -> StateVector:
        return cls(n, cap=cap)

    def copy(self) -> StateVector:
        return StateVector(self.n, self.amplitudes.copy(), cap=HARD_DENSE_CAP)

    def apply(self, gate: Gate) -> StateVector:
        self.amplitudes = _apply_gate(self.amplitudes[:, None], gate, self.n)[:, 0]
        return self

    def run(self, circuit: Circuit) -> StateVector:
        if circuit.n != self.n:
            raise ValueError(f"{circuit.n}-qubit circuit on {self.n}-qubit state")
        for g in circuit.gates:
            self.apply(g)
        return self

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    @property
    def probabilities(self) -> np.ndarray:
        return np.abs(self.amplitudes) ** 2

    def apply_pauli(self, p: PauliString) -> np.ndarray:
        """Return ``P|psi>`` as a new amplitude array."""
        idx = np.arange(1 << self.n)
        # P = i^e * letters = i^(e + |x&z|) X^x Z^z
        coeff = 1j ** ((p.phase + bin(p.x & p.z).count("1")) % 4)
        zpsi = _parity_signs(idx, p.z) * self.amplitudes
        return coeff * zpsi[idx ^ p.x]

    def expectation(self, p: PauliString) -> complex:
        return complex(np.vdot(self.amplitudes, self.apply_pauli(p)))

    def to_json(self) -> str:
        return json.dumps([[float(a.real), float(a.imag)] for a in self.amplitudes])

    @classmethod
    def from_json(cls, text: str) -> StateVector:
        pairs = json.loads(text)
        n = max(len(pairs).bit_length() - 1, 0)
        return cls(n, [complex(re, im) for re, im in pairs], cap=HARD_DENSE_CAP)


def _parity_signs(idx: np.ndarray, mask: int) -> np.ndarray:
    bits = idx & mask
    parity = np.zeros_like(bits)
    while mask:
        low = mask & -mask
        parity ^= (bits & low) != 0
        mask ^= low
    return 1 - 2 * parity


def unitary_of(circuit: Circuit, cap: int | None = None, block: int = 256) -> sparse.csc_matrix:
    """Full ``2**n x 2**n`` unitary, built column by column from basis states.

    Returned as a sparse matrix; every entry not stored is exactly zero.
    Circuits made only of permutation/phase gates keep each column a single
    basis state, so all columns are propagated at once as index arrays.
    """
    n = circuit.n
    _guard(n, cap)
    dim = 1 << n
    if all(g.kind in _MONOMIAL_KINDS for g in circuit.gates):
        rows = np.arange(dim)
        vals = np.ones(dim, dtype=complex)
        for g in circuit.gates:
            if g.kind == "CX":
                c, t = g.qubits
                rows = rows ^ (((rows >> c) & 1) << t)
            elif g.kind == "X":
                rows = rows ^ (1 << g.qubits[0])
            else:
                bit = ((rows >> g.qubits[0]) & 1).astype(bool)
                vals = np.where(bit, vals * _DIAGONAL_PHASE[g.kind], vals)
        return sparse.csc_matrix((vals, (rows, np.arange(dim))), shape=(dim, dim))
    cols = []
    for start in range(0, dim, block):
        stop = min(start + block, dim)
        amps = np.zeros((dim, stop - start), dtype=complex)
        amps[np.arange(start, stop), np.arange(stop - start)] = 1.0
        for g in circuit.gates:
            amps = _apply_gate(amps, g, n)
        amps[np.abs(amps) < 1e-13] = 0
        cols.append(sparse.csc_matrix(amps))
    return sparse.hstack(cols, format="csc")


def sample_shots(state: StateVector, count: int, seed: int) -> list[str]:
    """Draw ``count`` computational-basis outcomes.

    The generator is ``numpy.random.default_rng(seed)`` (PCG64); each shot
    takes one uniform double ``u`` and returns the first basis index whose
    cumulative probability exceeds ``u``.
    """
    rng = np.random.default_rng(seed)
    cdf = np.cumsum(state.probabilities)
    cdf /= cdf[-1]
    picks = np.searchsorted(cdf, rng.random(count), side="right")
    picks = np.minimum(picks, len(cdf) - 1)
    return [format_bits(int(k), state.n) for k in picks]


def format_bits(index: int, n: int) -> str:
    return "".join(str((index >> q) & 1) for q in range(n))


def parse_bits(bits: str) -> int:
    return sum(1 << q for q, ch in enumerate(bits) if ch == "1")
