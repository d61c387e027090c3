"""Ancilla-free fanout gates built from GHZ-preparation blocks.

A GHZ block ``U`` rooted at ``h`` becomes a fanout ``CX(h -> all others)`` by
prepending its reversed copy with every gate touching ``h`` removed.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np
from scipy import sparse

from .circuit import CX, Circuit, Gate, gates_commute, reverse_dagger, sever
from .errors import UnsupportedInputError
from .ghz import GhzPlan, check_tree_property
from .pauli import PauliString
from .simulators.dense import unitary_of
from .simulators.tableau import Tableau


def build_fanout_from_ghz(plan: GhzPlan) -> Circuit:
    check_tree_property(plan.circuit, plan.root)
    return sever(reverse_dagger(plan.circuit), plan.root) + plan.circuit


def build_ladder_fanout(n: int) -> Circuit:
    """CX(n-2,n-1) ... CX(1,2) CX(0,1) CX(1,2) ... CX(n-2,n-1)."""
    if n < 2:
        raise ValueError(f"need at least 2 qubits, got {n}")
    down = [CX(k, k + 1) for k in range(n - 2, 0, -1)]
    return Circuit(n, tuple(down + [CX(0, 1)] + down[::-1]))


def fanout_reference(n: int, root: int) -> Circuit:
    """The fanout written directly as n-1 CNOTs sharing one control."""
    return Circuit(n, tuple(CX(root, t) for t in range(n) if t != root))


# --------------------------------------------------------------------------
# path / branching structure


@dataclass(frozen=True)
class Branching:
    step: int  # 1-based position of the control within the path's qubit list
    target: int
    kind: str  # "ramification" or "prolongation"


@dataclass(frozen=True)
class PathDecomposition:
    target: int
    path: tuple[int, ...]  # root first, target last
    path_gates: tuple[Gate, ...]
    branchings: tuple[Branching, ...] = field(default=())

    @property
    def length(self) -> int:
        return len(self.path_gates)


def extract_paths(plan: GhzPlan) -> list[PathDecomposition]:
    """Control chain from the root to every other qubit, plus its branchings.

    A branching is an off-path gate that fails to commute with some path
    gate; under the tree property these are exactly the gates controlled by
    a non-root path qubit.  Gates controlled by the root commute with the
    whole path and are never branchings.
    """
    check_tree_property(plan.circuit, plan.root)
    gates = plan.circuit.gates
    parent_gate = {g.target: k for k, g in enumerate(gates)}
    out = []
    for i in sorted(parent_gate):
        chain = []
        q = i
        while q != plan.root:
            k = parent_gate[q]
            chain.append(k)
            q = gates[k].control
        chain.reverse()
        path_gates = [gates[k] for k in chain]
        path = (plan.root,) + tuple(g.target for g in path_gates)
        position = {q: s for s, q in enumerate(path, start=1)}
        on_path = set(chain)
        branchings = []
        for k, g in enumerate(gates):
            if k in on_path or all(gates_commute(g, p) for p in path_gates):
                continue
            kind = "prolongation" if g.control == i else "ramification"
            branchings.append(Branching(position[g.control], g.target, kind))
        out.append(PathDecomposition(i, path, tuple(path_gates), tuple(branchings)))
    return out


# --------------------------------------------------------------------------
# verification


@dataclass
class FanoutVerdict:
    mode: str
    n: int
    passed: bool
    failures: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return {"mode": self.mode, "n": self.n, "pass": self.passed, "failures": self.failures}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def fanout_matrix(n: int, root: int) -> sparse.csc_matrix:
    """Permutation matrix of CX(root -> all others), built from bit arithmetic."""
    dim = 1 << n
    cols = np.arange(dim)
    others = ((1 << n) - 1) ^ (1 << root)
    rows = np.where((cols >> root) & 1, cols ^ others, cols)
    return sparse.csc_matrix((np.ones(dim), (rows, cols)), shape=(dim, dim))


def expected_fanout_action(n: int, root: int) -> list[PauliString]:
    """Images of X_0..X_{n-1}, Z_0..Z_{n-1} under conjugation by the fanout."""
    full = (1 << n) - 1
    images = []
    for q in range(n):
        images.append(PauliString(n, full if q == root else 1 << q, 0))
    for q in range(n):
        images.append(PauliString(n, 0, (1 << q) | (1 << root)))
    return images


def verify_fanout(circuit: Circuit, root: int, mode: str = "tableau", cap: int | None = None,
                  max_failures: int = 20) -> FanoutVerdict:
    """Check that ``circuit`` equals CX(root -> every other qubit).

    ``dense`` compares the full unitary entrywise (exact, global phase
    included).  ``tableau`` compares the images of all 2n single-qubit X/Z
    generators, which fixes the Clifford up to global phase.
    """
    n = circuit.n
    if not 0 <= root < n:
        raise IndexError(f"root {root} outside 0..{n - 1}")
    failures = []
    if mode == "dense":
        diff = abs(unitary_of(circuit, cap=cap) - fanout_matrix(n, root)).tocsc()
        bad_cols = np.flatnonzero(np.asarray(diff.max(axis=0).todense()).ravel() > 1e-10)
        failures = [int(c) for c in bad_cols[:max_failures]]
        passed = len(bad_cols) == 0
    elif mode == "tableau":
        t = Tableau.identity(n).run(circuit)
        labels = [f"X{q}" for q in range(n)] + [f"Z{q}" for q in range(n)]
        for k, want in enumerate(expected_fanout_action(n, root)):
            if t.row(k) != want:
                failures.append(labels[k])
        passed = not failures
        failures = failures[:max_failures]
    else:
        raise ValueError(f"unknown verification mode {mode!r}")
    return FanoutVerdict(mode, n, passed, failures)
