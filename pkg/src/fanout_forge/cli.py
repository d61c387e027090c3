"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import secrets
import sys
from dataclasses import dataclass
from pathlib import Path

from . import circuit as circuit_io
from .errors import FanoutForgeError
from .fanout import build_fanout_from_ghz, verify_fanout
from .ghz import best_root, depth_table_csv, plan_from_circuit, schedule_ghz, verify_ghz_plan
from .pauli import Context, TritString
from .simulators.dense import CAP_ENV_VAR, HARD_DENSE_CAP
from .states import (
    GhzClassLabel,
    decode_shot,
    identify_state,
    measurement_circuit,
    prepare_state_circuit,
    simulate_shots,
)
from .topology import builtin, load_edge_list

log = logging.getLogger("fanout_forge")

TOPOLOGIES = ("heavy-hex-156", "full", "line", "grid")


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    topology: str | None = None
    edge_list: str | None = None
    dims: tuple[int, ...] | None = None
    root: int | str = "auto"
    n: int | None = None
    s: int = 0
    beta: str | None = None
    alpha: str | None = None
    seed: int | None = None
    shots: int = 100
    out: str | None = None
    fmt: str = "json"
    verify: str = "tableau"
    dense_cap: int | None = None

    def graph(self):
        if self.topology and self.edge_list:
            raise UsageError("give either --topology or --edge-list, not both")
        if self.edge_list:
            return load_edge_list(Path(self.edge_list).read_text())
        name = self.topology or "full"
        if name == "grid" and not self.dims:
            raise UsageError("--topology grid needs --dims")
        if name in ("full", "line") and self.n is None:
            raise UsageError(f"--topology {name} needs --n")
        return builtin(name, n=self.n, dims=self.dims)

    def pick_root(self, g) -> int:
        if self.root == "auto":
            root, _ = best_root(g)
            return root
        root = int(self.root)
        if not 0 <= root < g.n:
            raise UsageError(f"--root {root} outside 0..{g.n - 1}")
        return root

    def cap_for(self, circ) -> int | None:
        # CX-only unitaries are permutations (O(2^n) memory), so allow the hard max unless told otherwise
        if self.dense_cap is not None:
            return self.dense_cap
        if CAP_ENV_VAR not in os.environ and circ.is_cnot_only:
            return HARD_DENSE_CAP
        return None


def _write(cfg: RunConfig, text: str):
    if cfg.out:
        Path(cfg.out).write_text(text)
    else:
        sys.stdout.write(text)


def _dump(doc) -> str:
    return json.dumps(doc, indent=2) + "\n"


def cmd_ghz(cfg: RunConfig) -> int:
    g = cfg.graph()
    plan = schedule_ghz(g, cfg.pick_root(g))
    if not verify_ghz_plan(plan):
        print("error: scheduled block does not prepare a GHZ state", file=sys.stderr)
        return 1
    if cfg.fmt == "qasm":
        _write(cfg, circuit_io.to_qasm(plan.circuit))
        if cfg.out:
            Path(cfg.out + ".plan.json").write_text(plan.sidecar_json())
    else:
        doc = plan.to_dict()
        doc["topology"] = g.name
        doc["depth_table"] = [[k, s] for k, s in enumerate(plan.growth_table) if k > 0]
        _write(cfg, _dump(doc))
    if cfg.out:
        print(f"root={plan.root} depth={plan.depth} size={plan.n}")
    return 0


def cmd_fanout(cfg: RunConfig) -> int:
    g = cfg.graph()
    plan = schedule_ghz(g, cfg.pick_root(g))
    fo = build_fanout_from_ghz(plan)
    verdict = None
    if cfg.verify != "none":
        verdict = verify_fanout(fo, plan.root, cfg.verify, cap=cfg.cap_for(fo))
    if cfg.fmt == "qasm":
        _write(cfg, circuit_io.to_qasm(fo))
        summary = {"role": "fanout", "root": plan.root, "depth": fo.depth(), "ghz_depth": plan.depth}
        if verdict:
            summary["verdict"] = verdict.to_dict()
        print(json.dumps(summary), file=sys.stderr if not cfg.out else sys.stdout)
    else:
        doc = {
            "role": "fanout",
            "root": plan.root,
            "depth": fo.depth(),
            "ghz_depth": plan.depth,
            "circuit": circuit_io.circuit_to_dict(fo),
        }
        if verdict:
            doc["verdict"] = verdict.to_dict()
        _write(cfg, _dump(doc))
        if cfg.out:
            print(json.dumps({k: doc[k] for k in ("root", "depth", "ghz_depth")} | (
                {"pass": verdict.passed} if verdict else {})))
    return 0 if verdict is None or verdict.passed else 1


def cmd_depth_table(cfg: RunConfig) -> int:
    g = cfg.graph()
    plan = schedule_ghz(g, cfg.pick_root(g))
    rows = [(k, s) for k, s in enumerate(plan.growth_table) if k > 0]
    _write(cfg, depth_table_csv(rows))
    return 0


def _context(cfg: RunConfig) -> Context:
    if cfg.n is None:
        raise UsageError("--n is required")
    beta = TritString.parse(cfg.beta) if cfg.beta else TritString.zeros(cfg.n)
    return Context(cfg.n, cfg.s, beta)


def cmd_context(cfg: RunConfig) -> int:
    _write(cfg, _context(cfg).to_json() + "\n")
    return 0


def _seed(cfg: RunConfig) -> int:
    if cfg.seed is None:
        cfg.seed = secrets.randbelow(2**32)
        log.warning("no --seed given, using %d", cfg.seed)
    return cfg.seed


def _measurement_setup(cfg: RunConfig, ctx: Context):
    g = cfg.graph()
    if g.n != ctx.n:
        raise UsageError(f"topology has {g.n} qubits but --n is {ctx.n}")
    plan = schedule_ghz(g, cfg.pick_root(g))
    fo = build_fanout_from_ghz(plan)
    return plan, fo, measurement_circuit(ctx, fo, plan.root)


def cmd_measure_sim(cfg: RunConfig) -> int:
    ctx = _context(cfg)
    label = GhzClassLabel(ctx.n, cfg.alpha or "0" * ctx.n, ctx.s, ctx.beta)
    plan, fo, mc = _measurement_setup(cfg, ctx)
    prep = prepare_state_circuit(label, plan)
    bits = simulate_shots(prep, mc, cfg.shots, _seed(cfg), cap=cfg.dense_cap)
    decoded = [decode_shot(b, ctx, mc) for b in bits]
    result = identify_state(decoded)
    doc = {
        "n": ctx.n,
        "root": plan.root,
        "seed": cfg.seed,
        "label": {"alpha": label.alpha_str, "s": label.s, "beta": str(label.beta)},
        "preparation_depth": prep.depth(),
        "measurement_depth": mc.circuit.depth(),
        "shots": [d.to_dict() for d in decoded],
    }
    if isinstance(result, GhzClassLabel):
        doc["identified"] = {"consistent": True, "alpha": result.alpha_str, "s": result.s, "beta": str(result.beta)}
    else:
        doc["identified"] = result.to_dict()
    _write(cfg, _dump(doc))
    return 0


def _read_shots(path: str) -> list[str]:
    text = Path(path).read_text()
    stripped = text.strip()
    if stripped.startswith("["):
        return [str(b) for b in json.loads(stripped)]
    return [line.strip() for line in text.splitlines() if line.strip() and not line.startswith("#")]


def cmd_decode(cfg: RunConfig, shots_file: str) -> int:
    ctx = _context(cfg)
    _, _, mc = _measurement_setup(cfg, ctx)
    decoded = [decode_shot(b, ctx, mc) for b in _read_shots(shots_file)]
    result = identify_state(decoded) if decoded else None
    doc = {"shots": [d.to_dict() for d in decoded]}
    if isinstance(result, GhzClassLabel):
        doc["identified"] = {"consistent": True, "alpha": result.alpha_str, "s": result.s, "beta": str(result.beta)}
    elif result is not None:
        doc["identified"] = result.to_dict()
    _write(cfg, _dump(doc))
    return 0


def cmd_verify(cfg: RunConfig, path: str, check: str | None) -> int:
    text = Path(path).read_text()
    meta = {}
    if path.endswith(".qasm") or text.lstrip().startswith("OPENQASM"):
        circ = circuit_io.from_qasm(text)
    else:
        circ = circuit_io.from_json(text)
        meta = json.loads(text)
    check = check or meta.get("role", "fanout")
    root = meta.get("root") if cfg.root == "auto" else int(cfg.root)
    if root is None:
        raise UsageError("--root is required when the file does not record one")
    if check == "ghz":
        ok = verify_ghz_plan(plan_from_circuit(circ, root))
        doc = {"mode": "tableau", "check": "ghz", "n": circ.n, "pass": ok, "failures": []}
    else:
        verdict = verify_fanout(circ, root, cfg.verify, cap=cfg.cap_for(circ))
        doc = verdict.to_dict()
        ok = verdict.passed
    print(json.dumps(doc))
    return 0 if ok else 1


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _root_arg(text: str):
    if text == "auto":
        return text
    try:
        return int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"root must be an integer or 'auto', got {text!r}") from None


def _dims_arg(text: str):
    try:
        return tuple(int(v) for v in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"dims must look like 4,4 got {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="fanout-forge", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def topo(p):
        p.add_argument("--topology", choices=TOPOLOGIES)
        p.add_argument("--edge-list", help="edge-list file ('u v' per line)")
        p.add_argument("--dims", type=_dims_arg, help="grid extents, e.g. 4,4")
        p.add_argument("--n", type=int)
        p.add_argument("--root", type=_root_arg, default="auto")

    def out(p, formats=("json", "qasm")):
        p.add_argument("--out")
        p.add_argument("--format", dest="fmt", choices=formats, default=formats[0])

    p = sub.add_parser("ghz", help="schedule a GHZ-preparation block")
    topo(p)
    out(p)

    p = sub.add_parser("fanout", help="build and verify a fanout gate")
    topo(p)
    out(p)
    p.add_argument("--verify", choices=("none", "dense", "tableau"), default="tableau")
    p.add_argument("--dense-cap", type=int)

    p = sub.add_parser("depth-table", help="CSV of GHZ size per CNOT layer")
    topo(p)
    out(p, ("csv",))

    p = sub.add_parser("context", help="list the observables of a context")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--s", type=int, choices=(0, 1), default=0)
    p.add_argument("--beta")
    p.add_argument("--out")

    p = sub.add_parser("measure-sim", help="simulate single-shot context measurement")
    topo(p)
    p.add_argument("--alpha")
    p.add_argument("--s", type=int, choices=(0, 1), default=0)
    p.add_argument("--beta")
    p.add_argument("--shots", type=int, default=100)
    p.add_argument("--seed", type=int)
    p.add_argument("--dense-cap", type=int)
    p.add_argument("--out")

    p = sub.add_parser("decode", help="decode measured bitstrings for a context")
    topo(p)
    p.add_argument("--s", type=int, choices=(0, 1), default=0)
    p.add_argument("--beta")
    p.add_argument("--shots-file", required=True)
    p.add_argument("--out")

    p = sub.add_parser("verify", help="check a circuit file")
    p.add_argument("--circuit", required=True)
    p.add_argument("--root", type=_root_arg, default="auto")
    p.add_argument("--mode", dest="verify", choices=("dense", "tableau"), default="tableau")
    p.add_argument("--check", choices=("fanout", "ghz"))
    p.add_argument("--dense-cap", type=int)
    return parser


def main(argv=None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s: %(message)s")
    try:
        args = build_parser().parse_args(argv)
        known = RunConfig.__dataclass_fields__
        cfg = RunConfig(**{k: v for k, v in vars(args).items() if k in known})
        if cfg.command == "ghz":
            return cmd_ghz(cfg)
        if cfg.command == "fanout":
            return cmd_fanout(cfg)
        if cfg.command == "depth-table":
            return cmd_depth_table(cfg)
        if cfg.command == "context":
            return cmd_context(cfg)
        if cfg.command == "measure-sim":
            return cmd_measure_sim(cfg)
        if cfg.command == "decode":
            return cmd_decode(cfg, args.shots_file)
        return cmd_verify(cfg, args.circuit, args.check)
    except (UsageError, FanoutForgeError, ValueError, IndexError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
