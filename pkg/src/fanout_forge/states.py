"""GHZ-class states, fanout-based context measurement and single-shot decoding.

States and contexts are written on abstract qubits where qubit 0 carries the
special role (the S^s and Z^alpha dressing).  A layout maps abstract qubits
to hardware qubits: the transposition that sends abstract 0 to the GHZ root.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache

from .circuit import Circuit, Gate
from .errors import ConsistencyError, DimensionError, PreconditionError
from .fanout import verify_fanout
from .ghz import GhzPlan
from .pauli import (
    GAMMA_DAGGER_GATES,
    GAMMA_GATES,
    Context,
    PauliString,
    TritString,
    build_context,
    context_generators,
)
from .simulators.dense import StateVector, parse_bits, sample_shots


def root_layout(n: int, root: int) -> tuple[int, ...]:
    """Abstract -> physical qubit map swapping 0 and ``root``."""
    phys = list(range(n))
    phys[0], phys[root] = phys[root], phys[0]
    return tuple(phys)


def permute_pauli(p: PauliString, layout) -> PauliString:
    x = z = 0
    for k, q in enumerate(layout):
        x |= ((p.x >> k) & 1) << q
        z |= ((p.z >> k) & 1) << q
    return PauliString(p.n, x, z, p.phase)


def conjugate_through(p: PauliString, circuit: Circuit) -> PauliString:
    """``U P U^dagger`` for the unitary ``U`` applied by ``circuit``."""
    if p.n != circuit.n:
        raise DimensionError(f"{p.n}-qubit Pauli through {circuit.n}-qubit circuit")
    for g in circuit.gates:
        p = p.conjugated_by(g.kind, g.qubits)
    return p


@dataclass(frozen=True)
class GhzClassLabel:
    n: int
    alpha: tuple[int, ...]
    s: int
    beta: TritString

    def __post_init__(self):
        if isinstance(self.alpha, str):
            object.__setattr__(self, "alpha", tuple(int(ch) for ch in self.alpha))
        if isinstance(self.beta, str):
            object.__setattr__(self, "beta", TritString.parse(self.beta))
        if len(self.alpha) != self.n or self.beta.n != self.n:
            raise DimensionError(f"label strings must have length n={self.n}")
        if any(a not in (0, 1) for a in self.alpha) or self.s not in (0, 1):
            raise ValueError("alpha bits and s must be 0 or 1")

    @property
    def context(self) -> Context:
        return Context(self.n, self.s, self.beta)

    @property
    def alpha_str(self) -> str:
        return "".join(map(str, self.alpha))


def prepare_state_circuit(label: GhzClassLabel, plan: GhzPlan) -> Circuit:
    """H on the root, the GHZ block, then the local Clifford dressing of ``label``."""
    if plan.n != label.n:
        raise DimensionError(f"{plan.n}-qubit plan for {label.n}-qubit label")
    phys = root_layout(label.n, plan.root)
    gates = [Gate("H", (plan.root,)), *plan.circuit.gates]
    if label.s:
        gates.append(Gate("S", (plan.root,)))
    if label.alpha[0]:
        gates.append(Gate("Z", (plan.root,)))
    for k in range(1, label.n):
        if label.alpha[k]:
            gates.append(Gate("X", (phys[k],)))
    for k, b in enumerate(label.beta.trits):
        gates += [Gate(kind, (phys[k],)) for kind in GAMMA_GATES[b]]
    return Circuit(label.n, tuple(gates))


@dataclass(frozen=True)
class MeasurementCircuit:
    """Clifford circuit to be followed by measuring every qubit in the Z basis."""

    circuit: Circuit
    context: Context
    root: int

    @property
    def layout(self) -> tuple[int, ...]:
        return root_layout(self.context.n, self.root)

    @property
    def n(self) -> int:
        return self.circuit.n


def measurement_circuit(ctx: Context, fanout: Circuit, root: int, check: bool = True) -> MeasurementCircuit:
    """Undo the Gamma rotations and S^s, then the fanout, then H on the root."""
    if fanout.n != ctx.n:
        raise DimensionError(f"{fanout.n}-qubit fanout for {ctx.n}-qubit context")
    if check and not verify_fanout(fanout, root, "tableau").passed:
        raise PreconditionError(f"circuit is not a fanout from qubit {root}")
    phys = root_layout(ctx.n, root)
    gates = []
    for k, b in enumerate(ctx.beta.trits):
        gates += [Gate(kind, (phys[k],)) for kind in GAMMA_DAGGER_GATES[b]]
    if ctx.s:
        gates.append(Gate("S_DAGGER", (root,)))
    gates += fanout.gates
    gates.append(Gate("H", (root,)))
    return MeasurementCircuit(Circuit(ctx.n, tuple(gates)), ctx, root)


@dataclass(frozen=True)
class DecodedShot:
    raw_bits: str
    eigenvalues: dict[str, int]
    recovered_alpha: tuple[int, ...]
    context: Context

    def to_dict(self) -> dict:
        return {
            "bits": self.raw_bits,
            "eigenvalues": dict(self.eigenvalues),
            "alpha": "".join(map(str, self.recovered_alpha)),
            "s": self.context.s,
            "beta": str(self.context.beta),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def _diagonal_form(p: PauliString, mc: MeasurementCircuit) -> tuple[int, int]:
    """(sign, Z mask) of ``p`` after the measurement circuit."""
    diag = conjugate_through(permute_pauli(p, mc.layout), mc.circuit)
    if diag.x:
        raise ConsistencyError(f"{p} does not become diagonal: {diag}")
    return diag.sign, diag.z


@lru_cache(maxsize=64)
def _decoder_table(mc: MeasurementCircuit):
    observables = tuple((p.letters, *_diagonal_form(p, mc)) for p in build_context(mc.context))
    generators = tuple(_diagonal_form(g, mc) for g in context_generators(mc.context))
    return observables, generators


def _value(sign: int, zmask: int, outcome: int) -> int:
    return sign * (1 - 2 * (bin(outcome & zmask).count("1") & 1))


def decode_shot(bits: str, ctx: Context, mc: MeasurementCircuit) -> DecodedShot:
    """Eigenvalue of every context observable, and the state label, from one outcome."""
    if len(bits) != ctx.n or set(bits) - {"0", "1"}:
        raise ValueError(f"expected a {ctx.n}-bit outcome, got {bits!r}")
    if mc.context != ctx:
        raise PreconditionError("measurement circuit was built for a different context")
    outcome = parse_bits(bits)
    observables, generators = _decoder_table(mc)
    values = {name: _value(sign, zmask, outcome) for name, sign, zmask in observables}
    alpha = tuple((1 - _value(sign, zmask, outcome)) // 2 for sign, zmask in generators)
    return DecodedShot(bits, values, alpha, ctx)


@dataclass(frozen=True)
class InconsistencyReport:
    """Shots disagree, so the measured state was not an eigenstate of the context."""

    context: Context
    shots: int
    varying: tuple[str, ...]

    def to_dict(self) -> dict:
        return {
            "consistent": False,
            "s": self.context.s,
            "beta": str(self.context.beta),
            "shots": self.shots,
            "varying_observables": list(self.varying),
        }


def identify_state(shots: list[DecodedShot]) -> GhzClassLabel | InconsistencyReport:
    if not shots:
        raise ValueError("need at least one decoded shot")
    first = shots[0]
    ctx = first.context
    varying = sorted(
        {name for shot in shots[1:] for name, v in shot.eigenvalues.items() if first.eigenvalues[name] != v}
    )
    if varying:
        return InconsistencyReport(ctx, len(shots), tuple(varying))
    return GhzClassLabel(ctx.n, first.recovered_alpha, ctx.s, ctx.beta)


def simulate_shots(prep: Circuit, mc: MeasurementCircuit, shots: int, seed: int,
                   cap: int | None = None) -> list[str]:
    """Statevector run of preparation then measurement circuit, sampled in the Z basis."""
    state = StateVector.zero(prep.n, cap=cap).run(prep).run(mc.circuit)
    return sample_shots(state, shots, seed)
