"""Stabilizer tableau with exact phase tracking.

Each of the 2n rows is stored as ``i**f * X^x Z^z`` (all X factors to the
left), which makes every gate update a few vectorised bit operations and
leaves CX phase-free.  Rows ``0..n-1`` are destabilizers, ``n..2n-1``
stabilizers.
"""

from __future__ import annotations

import json

import numpy as np

from ..circuit import Circuit, Gate
from ..errors import RankError
from ..pauli import PauliString


class Tableau:
    def __init__(self, x: np.ndarray, z: np.ndarray, f: np.ndarray):
        self.x = x.astype(np.uint8)
        self.z = z.astype(np.uint8)
        self.f = f.astype(np.int64) % 4
        self.n = self.x.shape[1]

    @classmethod
    def identity(cls, n: int) -> Tableau:
        """Tableau of the identity map, i.e. of |0...0>: rows X_i then Z_i."""
        eye = np.eye(n, dtype=np.uint8)
        zero = np.zeros((n, n), dtype=np.uint8)
        return cls(np.vstack([eye, zero]), np.vstack([zero, eye]), np.zeros(2 * n, dtype=np.int64))

    zero_state = identity

    def copy(self) -> Tableau:
        return Tableau(self.x.copy(), self.z.copy(), self.f.copy())

    def apply(self, gate: Gate) -> Tableau:
        if max(gate.qubits) >= self.n:
            raise IndexError(f"{gate!r} out of range for {self.n} qubits")
        x, z = self.x, self.z
        if gate.kind == "CX":
            c, t = gate.qubits
            x[:, t] ^= x[:, c]
            z[:, c] ^= z[:, t]
            return self
        (q,) = gate.qubits
        a, b = x[:, q].copy(), z[:, q].copy()
        if gate.kind == "H":
            self.f += 2 * (a & b)
            x[:, q], z[:, q] = b, a
        elif gate.kind == "S":
            self.f += a
            z[:, q] ^= a
        elif gate.kind == "S_DAGGER":
            self.f += 3 * a
            z[:, q] ^= a
        elif gate.kind == "X":
            self.f += 2 * b
        elif gate.kind == "Z":
            self.f += 2 * a
        else:
            raise ValueError(f"unknown gate kind {gate.kind!r}")
        self.f %= 4
        return self

    def run(self, circuit: Circuit, check_every: int = 0) -> Tableau:
        """Apply all gates; with ``check_every`` > 0, assert the symplectic structure periodically."""
        if circuit.n != self.n:
            raise ValueError(f"{circuit.n}-qubit circuit on {self.n}-qubit tableau")
        for k, g in enumerate(circuit.gates, start=1):
            self.apply(g)
            if check_every and k % check_every == 0 and not self.is_symplectic():
                raise AssertionError(f"symplectic structure broken after gate {k}")
        return self

    def is_symplectic(self) -> bool:
        xi, zi = self.x.astype(np.int64), self.z.astype(np.int64)
        form = (xi @ zi.T + zi @ xi.T) % 2
        n = self.n
        expected = np.zeros((2 * n, 2 * n), dtype=np.int64)
        expected[:n, n:] = np.eye(n, dtype=np.int64)
        expected[n:, :n] = np.eye(n, dtype=np.int64)
        return bool(np.array_equal(form, expected))

    def row(self, i: int) -> PauliString:
        xbits, zbits = self.x[i], self.z[i]
        xv = sum(1 << int(q) for q in np.flatnonzero(xbits))
        zv = sum(1 << int(q) for q in np.flatnonzero(zbits))
        overlap = int(np.count_nonzero(xbits & zbits))
        return PauliString(self.n, xv, zv, int(self.f[i]) - overlap)

    def destabilizers(self) -> list[PauliString]:
        return [self.row(i) for i in range(self.n)]

    def stabilizers(self) -> list[PauliString]:
        return [self.row(i) for i in range(self.n, 2 * self.n)]

    def dump(self) -> list[str]:
        return [p.to_label() if p.phase else "+" + p.letters for p in map(self.row, range(2 * self.n))]

    def to_json(self) -> str:
        return json.dumps({"n": self.n, "rows": self.dump()})


def _vector(p: PauliString) -> int:
    return p.x | (p.z << p.n)


def gf2_rank(vectors) -> int:
    basis: dict[int, int] = {}
    for v in vectors:
        while v:
            top = v.bit_length() - 1
            if top not in basis:
                basis[top] = v
                break
            v ^= basis[top]
    return len(basis)


def _express(target: int, rows: list[int]) -> int | None:
    """Bitmask of ``rows`` whose XOR is ``target``, or None."""
    basis: dict[int, tuple[int, int]] = {}
    for k, v in enumerate(rows):
        combo = 1 << k
        while v:
            top = v.bit_length() - 1
            if top not in basis:
                basis[top] = (v, combo)
                break
            bv, bc = basis[top]
            v ^= bv
            combo ^= bc
    combo = 0
    while target:
        top = target.bit_length() - 1
        if top not in basis:
            return None
        bv, bc = basis[top]
        target ^= bv
        combo ^= bc
    return combo


def stabilizer_group_equal(t: Tableau, generators: list[PauliString]) -> bool:
    """True iff ``generators`` (n independent, signed) generate the tableau's stabilizer group."""
    if len(generators) != t.n:
        raise ValueError(f"need {t.n} generators, got {len(generators)}")
    if gf2_rank(_vector(g) for g in generators) != t.n:
        raise RankError("generator list is linearly dependent")
    stabs = t.stabilizers()
    vectors = [_vector(s) for s in stabs]
    for g in generators:
        if g.n != t.n:
            raise ValueError(f"{g.n}-qubit generator for {t.n}-qubit tableau")
        combo = _express(_vector(g), vectors)
        if combo is None:
            return False
        product = PauliString.identity(t.n)
        for k, s in enumerate(stabs):
            if combo >> k & 1:
                product = product * s
        if product != g:
            return False
    return True
