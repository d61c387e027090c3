"""Gate-list circuits over integer qubits, ASAP layering, SEVER and text formats.

Gates are stored in application order (first gate acts first).  Depth is the
number of ASAP layers of two-qubit gates unless single-qubit gates are asked
to count as well.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass

from .errors import ParseError

SINGLE_QUBIT_KINDS = ("H", "S", "S_DAGGER", "Z", "X")
KINDS = SINGLE_QUBIT_KINDS + ("CX",)

_QASM_NAMES = {"H": "h", "S": "s", "S_DAGGER": "sdg", "Z": "z", "X": "x", "CX": "cx"}
_QASM_KINDS = {v: k for k, v in _QASM_NAMES.items()}


@dataclass(frozen=True)
class Gate:
    kind: str
    qubits: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "qubits", tuple(int(q) for q in self.qubits))
        if self.kind not in KINDS:
            raise ValueError(f"unknown gate kind {self.kind!r}")
        arity = 2 if self.kind == "CX" else 1
        if len(self.qubits) != arity:
            raise ValueError(f"{self.kind} takes {arity} qubit(s), got {self.qubits}")
        if arity == 2 and self.qubits[0] == self.qubits[1]:
            raise ValueError(f"CX control equals target: {self.qubits}")
        if min(self.qubits) < 0:
            raise ValueError(f"negative qubit index in {self.qubits}")

    @property
    def is_two_qubit(self) -> bool:
        return self.kind == "CX"

    @property
    def control(self) -> int:
        return self.qubits[0]

    @property
    def target(self) -> int:
        return self.qubits[-1]

    def __repr__(self):
        return f"{self.kind}({','.join(map(str, self.qubits))})"


def CX(c: int, t: int) -> Gate:
    return Gate("CX", (c, t))


def gates_commute(a: Gate, b: Gate) -> bool:
    """Exact commutation for this gate set, restricted to what layering needs.

    Two CX gates commute iff neither's control is the other's target.
    Gates on disjoint qubits always commute; other single-qubit pairs are
    treated as non-commuting.
    """
    if not set(a.qubits) & set(b.qubits):
        return True
    if a.kind == "CX" and b.kind == "CX":
        return a.control != b.target and b.control != a.target
    return False


@dataclass(frozen=True)
class Circuit:
    n: int
    gates: tuple[Gate, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "gates", tuple(self.gates))
        for g in self.gates:
            if max(g.qubits) >= self.n:
                raise ValueError(f"{g!r} addresses a qubit outside 0..{self.n - 1}")

    def __len__(self):
        return len(self.gates)

    def __iter__(self):
        return iter(self.gates)

    def __add__(self, other: Circuit) -> Circuit:
        if other.n != self.n:
            raise ValueError("cannot concatenate circuits of different width")
        return Circuit(self.n, self.gates + other.gates)

    @property
    def is_cnot_only(self) -> bool:
        return all(g.kind == "CX" for g in self.gates)

    def cnots(self) -> list[tuple[int, int]]:
        return [g.qubits for g in self.gates if g.kind == "CX"]

    def depth(self, count_single_qubit: bool = False) -> int:
        return asap_layering(self, count_single_qubit).depth


def cnot_circuit(n: int, pairs) -> Circuit:
    return Circuit(n, tuple(CX(c, t) for c, t in pairs))


# --------------------------------------------------------------------------
# layering


@dataclass(frozen=True)
class LayerSchedule:
    layer_of_gate: tuple[int, ...]
    depth: int

    def layers(self, circuit: Circuit) -> list[list[Gate]]:
        """Gates grouped by layer; layer-0 entries (uncounted single-qubit gates) are dropped."""
        out: list[list[Gate]] = [[] for _ in range(self.depth)]
        for g, layer in zip(circuit.gates, self.layer_of_gate):
            if layer > 0:
                out[layer - 1].append(g)
        return out


def asap_layering(circuit: Circuit, count_single_qubit: bool = False) -> LayerSchedule:
    """Place each gate one layer after the latest earlier gate sharing a qubit.

    With ``count_single_qubit`` off, single-qubit gates sit on the layer of
    their qubit's latest gate and do not advance it; a single-qubit gate with
    no predecessor gets layer 0.
    """
    frontier = [0] * circuit.n
    layer_of = []
    for g in circuit.gates:
        prev = max(frontier[q] for q in g.qubits)
        layer = prev + 1 if (g.is_two_qubit or count_single_qubit) else prev
        for q in g.qubits:
            frontier[q] = layer
        layer_of.append(layer)
    return LayerSchedule(tuple(layer_of), max(frontier, default=0))


# --------------------------------------------------------------------------
# list operations


def reverse_dagger(circuit: Circuit) -> Circuit:
    """Reverse the gate order and replace each gate by its inverse."""
    inverse = {"S": "S_DAGGER", "S_DAGGER": "S"}
    return Circuit(
        circuit.n,
        tuple(Gate(inverse.get(g.kind, g.kind), g.qubits) for g in reversed(circuit.gates)),
    )


def sever(circuit: Circuit, h: int) -> Circuit:
    """Drop every gate that touches qubit ``h``."""
    if not 0 <= h < circuit.n:
        raise IndexError(f"qubit {h} outside 0..{circuit.n - 1}")
    return Circuit(circuit.n, tuple(g for g in circuit.gates if h not in g.qubits))


# --------------------------------------------------------------------------
# text formats

_QREG_RE = re.compile(r"^qreg\s+q\[(\d+)\]\s*;$")
_GATE_RE = re.compile(r"^([a-z]+)\s+q\[(\d+)\](?:\s*,\s*q\[(\d+)\])?\s*;$")


def to_qasm(circuit: Circuit, measure: bool = False) -> str:
    lines = [
        "OPENQASM 2.0;",
        'include "qelib1.inc";',
        "// qubit 0 is the least significant bit",
        f"qreg q[{circuit.n}];",
        f"creg c[{circuit.n}];",
    ]
    for g in circuit.gates:
        args = ",".join(f"q[{q}]" for q in g.qubits)
        lines.append(f"{_QASM_NAMES[g.kind]} {args};")
    if measure:
        lines.append("measure q -> c;")
    return "\n".join(lines) + "\n"


def from_qasm(text: str) -> Circuit:
    n = None
    gates = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("//", 1)[0].strip()
        if not line or line.startswith(("OPENQASM", "include", "creg", "barrier", "measure")):
            continue
        m = _QREG_RE.match(line)
        if m:
            if n is not None:
                raise ParseError("only one quantum register is supported", lineno)
            n = int(m.group(1))
            continue
        m = _GATE_RE.match(line)
        if not m or m.group(1) not in _QASM_KINDS:
            raise ParseError(f"unsupported statement {line!r}", lineno)
        kind = _QASM_KINDS[m.group(1)]
        qubits = tuple(int(v) for v in m.group(2, 3) if v is not None)
        try:
            gates.append(Gate(kind, qubits))
        except ValueError as exc:
            raise ParseError(str(exc), lineno) from None
    if n is None:
        raise ParseError("missing qreg declaration")
    try:
        return Circuit(n, tuple(gates))
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def circuit_to_dict(circuit: Circuit) -> dict:
    return {
        "n": circuit.n,
        "gates": [{"kind": g.kind, "qubits": list(g.qubits)} for g in circuit.gates],
    }


def circuit_from_dict(doc: dict) -> Circuit:
    try:
        return Circuit(int(doc["n"]), tuple(Gate(g["kind"], g["qubits"]) for g in doc["gates"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"bad circuit document: {exc}") from None


def to_json(circuit: Circuit, **extra) -> str:
    doc = circuit_to_dict(circuit)
    doc.update(extra)
    return json.dumps(doc, indent=2) + "\n"


def from_json(text: str) -> Circuit:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", exc.lineno) from None
    if "circuit" in doc:
        doc = doc["circuit"]
    return circuit_from_dict(doc)


def emit(circuit: Circuit, fmt: str = "json") -> str:
    if fmt == "qasm":
        return to_qasm(circuit)
    if fmt == "json":
        return to_json(circuit)
    raise ValueError(f"unknown format {fmt!r}")


def parse(text: str, fmt: str = "json") -> Circuit:
    if fmt == "qasm":
        return from_qasm(text)
    if fmt == "json":
        return from_json(text)
    raise ValueError(f"unknown format {fmt!r}")
