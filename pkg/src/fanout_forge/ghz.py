"""GHZ-preparation CNOT blocks: full-connectivity doubling and graph-aware scheduling."""

from __future__ import annotations

import csv
import io
import json
from collections import deque
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from .circuit import CX, Circuit, Gate, LayerSchedule, asap_layering
from .errors import CoverageError, UnsupportedInputError
from .pauli import PauliString
from .simulators.tableau import Tableau, stabilizer_group_equal
from .topology import CouplingGraph


@dataclass(frozen=True)
class GhzPlan:
    root: int
    circuit: Circuit
    schedule: LayerSchedule
    growth_table: tuple[int, ...]  # entry l = entangled qubits after layer l; entry 0 is 1

    @property
    def n(self) -> int:
        return self.circuit.n

    @property
    def depth(self) -> int:
        return self.schedule.depth

    def layers(self) -> list[list[Gate]]:
        return self.schedule.layers(self.circuit)

    def parents(self) -> dict[int, int]:
        """Map each targeted qubit to the control of the gate that targets it."""
        return {g.target: g.control for g in self.circuit.gates}

    def to_dict(self) -> dict:
        from .circuit import circuit_to_dict

        return {
            "role": "ghz",
            "root": self.root,
            "depth": self.depth,
            "growth_table": list(self.growth_table),
            "circuit": circuit_to_dict(self.circuit),
        }

    def sidecar_json(self) -> str:
        return json.dumps({"root": self.root, "depth": self.depth, "growth_table": list(self.growth_table)}) + "\n"


def plan_from_circuit(circuit: Circuit, root: int) -> GhzPlan:
    """Wrap a CNOT list as a plan, enforcing the tree property."""
    check_tree_property(circuit, root)
    schedule = asap_layering(circuit)
    growth = [1] + [0] * schedule.depth
    for layer in schedule.layer_of_gate:
        growth[layer] += 1
    for k in range(1, len(growth)):
        growth[k] += growth[k - 1]
    return GhzPlan(root, circuit, schedule, tuple(growth))


def check_tree_property(circuit: Circuit, root: int) -> None:
    """Every non-root qubit is targeted exactly once, by an already-entangled control."""
    if not circuit.is_cnot_only:
        raise UnsupportedInputError("GHZ blocks must contain only CX gates")
    entangled = {root}
    for g in circuit.gates:
        if g.control not in entangled:
            raise UnsupportedInputError(f"{g!r}: control {g.control} is not entangled yet")
        if g.target in entangled:
            raise UnsupportedInputError(f"{g!r}: qubit {g.target} is targeted twice or is the root")
        entangled.add(g.target)
    missing = set(range(circuit.n)) - entangled
    if missing:
        raise UnsupportedInputError(f"qubits never entangled: {sorted(missing)}")


def build_doubling_ghz(n: int) -> GhzPlan:
    """Layer i adds CX(j, 2^(i-1) + j) for every j whose target exists."""
    if n < 2:
        raise ValueError(f"need at least 2 qubits, got {n}")
    gates = []
    size = 1
    while size < n:
        for j in range(min(size, n - size)):
            gates.append(CX(j, size + j))
        size *= 2
    return plan_from_circuit(Circuit(n, tuple(gates)), 0)


# --------------------------------------------------------------------------
# scheduling on coupling graphs


def _urgency(g: CouplingGraph, entangled: set[int]) -> dict[int, int]:
    """Layers still needed below each unentangled qubit.

    Builds a BFS forest of the unentangled qubits hanging off the entangled
    set (lowest-index parent wins) and returns, per node, the minimum
    broadcast time of its subtree when each node can feed one child per layer.
    """
    parent: dict[int, int] = {}
    order = []
    seen = set(entangled)
    queue = deque(sorted(entangled))
    while queue:
        u = queue.popleft()
        for w in g.neighbors(u):
            if w not in seen:
                seen.add(w)
                parent[w] = u
                order.append(w)
                queue.append(w)
    children: dict[int, list[int]] = {}
    for w in order:
        children.setdefault(parent[w], []).append(w)
    need: dict[int, int] = {}
    for v in reversed(order):
        below = sorted((need[c] for c in children.get(v, ())), reverse=True)
        need[v] = max((k + 1 + b for k, b in enumerate(below)), default=0)
    return need


def _priority_matching(candidates: list[int], controls_of: dict[int, list[int]]) -> dict[int, int]:
    """Maximum matching target -> control, grown by augmenting paths in ``candidates`` order.

    Adding targets greedily in priority order and keeping one whenever an
    augmenting path exists yields a maximum-cardinality matching whose matched
    target set is lexicographically best for that order.
    """
    match_ctrl: dict[int, int] = {}  # control -> target

    def augment(t: int, visited: set[int]) -> bool:
        for c in controls_of[t]:
            if c in visited:
                continue
            visited.add(c)
            if c not in match_ctrl or augment(match_ctrl[c], visited):
                match_ctrl[c] = t
                return True
        return False

    for t in candidates:
        augment(t, set())
    return {t: c for c, t in match_ctrl.items()}


def schedule_ghz(g: CouplingGraph, root: int) -> GhzPlan:
    """Grow a GHZ state from ``root`` one CNOT layer at a time.

    Each layer is a maximum bipartite matching between entangled qubits
    (one CX each as control) and their unentangled neighbours.  Targets are
    offered to the matcher most-urgent first, ties by lowest index, so the
    slowest-to-fill regions of the graph are extended first.
    """
    if not 0 <= root < g.n:
        raise IndexError(f"root {root} outside 0..{g.n - 1}")
    unreachable = [v for v, d in enumerate(g.distances(root)) if d < 0]
    if unreachable:
        raise CoverageError(unreachable)
    entangled = {root}
    gates = []
    while len(entangled) < g.n:
        need = _urgency(g, entangled)
        controls_of = {}
        for c in sorted(entangled):
            for t in g.neighbors(c):
                if t not in entangled:
                    controls_of.setdefault(t, []).append(c)
        candidates = sorted(controls_of, key=lambda t: (-need[t], t))
        layer = _priority_matching(candidates, controls_of)
        for t in sorted(layer, key=lambda t: (layer[t], t)):
            gates.append(CX(layer[t], t))
        entangled.update(layer)
    return plan_from_circuit(Circuit(g.n, tuple(gates)), root)


def depth_table(g: CouplingGraph, root: int) -> list[tuple[int, int]]:
    plan = schedule_ghz(g, root)
    return [(layer, size) for layer, size in enumerate(plan.growth_table) if layer > 0]


def depth_table_csv(rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["layer", "size"])
    writer.writerows(rows)
    return buf.getvalue()


def best_root(g: CouplingGraph, candidates=None, workers: int = 1) -> tuple[int, int]:
    """Root of minimum scheduled depth, lowest index on ties."""
    roots = sorted(range(g.n) if candidates is None else candidates)
    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            depths = list(pool.map(lambda r: schedule_ghz(g, r).depth, roots))
    else:
        depths = [schedule_ghz(g, r).depth for r in roots]
    depth, root = min(zip(depths, roots))
    return root, depth


def ghz_generators(n: int, root: int) -> list[PauliString]:
    """X on every qubit, plus Z_root Z_i for each other qubit."""
    gens = [PauliString(n, (1 << n) - 1, 0)]
    gens += [PauliString(n, 0, (1 << root) | (1 << i)) for i in range(n) if i != root]
    return gens


def verify_ghz_plan(plan: GhzPlan) -> bool:
    """Stabilizer check that H(root) followed by the plan prepares the n-qubit GHZ state."""
    t = Tableau.identity(plan.n)
    t.apply(Gate("H", (plan.root,)))
    t.run(plan.circuit)
    return stabilizer_group_equal(t, ghz_generators(plan.n, plan.root))
