import numpy as np
import pytest
from hypothesis import settings

from fanout_forge.circuit import CX, Circuit, Gate, SINGLE_QUBIT_KINDS
from fanout_forge.topology import CouplingGraph

settings.register_profile("default", deadline=None, max_examples=100)
settings.load_profile("default")

# criterion lines collected by test_acceptance, printed in the terminal summary
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def random_clifford_circuit(n: int, length: int, rng: np.random.Generator) -> Circuit:
    gates = []
    for _ in range(length):
        if n > 1 and rng.random() < 0.4:
            c, t = rng.choice(n, size=2, replace=False)
            gates.append(CX(int(c), int(t)))
        else:
            kind = SINGLE_QUBIT_KINDS[rng.integers(len(SINGLE_QUBIT_KINDS))]
            gates.append(Gate(kind, (int(rng.integers(n)),)))
    return Circuit(n, tuple(gates))


def random_cnot_circuit(n: int, length: int, rng: np.random.Generator) -> Circuit:
    gates = []
    for _ in range(length):
        c, t = rng.choice(n, size=2, replace=False)
        gates.append(CX(int(c), int(t)))
    return Circuit(n, tuple(gates))


def random_connected_graph(n: int, rng: np.random.Generator, extra: float | None = None) -> CouplingGraph:
    """Random spanning tree plus a random share of the remaining pairs."""
    order = rng.permutation(n)
    edges = set()
    for k in range(1, n):
        u, v = int(order[k]), int(order[rng.integers(k)])
        edges.add((min(u, v), max(u, v)))
    if extra is None:
        extra = float(rng.choice([0.0, 0.02, 0.05, 0.15, 0.4]))
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() < extra:
                edges.add((u, v))
    return CouplingGraph(n, frozenset(edges), name="random")


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)
