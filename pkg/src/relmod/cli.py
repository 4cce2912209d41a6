"""Command-line interface: classify, solve, check, reduce, verify, catalog, table.

Exit codes: 0 means yes / success, 1 means no, 2 means an error (bad input,
exhausted budget, or an inconclusive verification).
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from dataclasses import dataclass
from typing import Optional, Sequence

from .catalog import formula_catalog, lookup
from .classifier import BUCKET_ORDER, CLASSICAL, PARAMETERIZED, classify, parse_setting
from .formula import FormulaError, all_patterns, check_pattern, format_formula, parse_formula
from .modelcheck import model_check
from .modification import ModificationError, Modulator, OperationKind, apply, norm, validate
from .reductions import (
    SourceError,
    build,
    canonical_name,
    load_source,
    reduction_names,
    summarize,
    verify_exhaustive,
    verify_reduction,
)
from .reductions.verify import source_instances
from .solvers import Limits, SolveRequest, SolverError, dispatch_solve
from .solvers.dispatch import SOLVER_ALIASES, SOLVERS
from .structures import Structure, StructureError, StructureType

EXIT_YES, EXIT_NO, EXIT_ERROR = 0, 1, 2
TYPES = [t.value for t in StructureType]
KINDS = [k.value for k in OperationKind]


class CliError(Exception):
    pass


@dataclass(frozen=True)
class CliConfig:
    node_budget: int
    time_budget: Optional[float]
    solver: str
    fmt: str
    seed: int

    @property
    def limits(self) -> Limits:
        return Limits(self.node_budget, self.time_budget)

    @classmethod
    def from_args(cls, args: argparse.Namespace) -> "CliConfig":
        env = Limits.from_env()
        nodes = env.node_budget if args.node_budget is None else args.node_budget
        secs = env.time_budget if args.time_budget is None else args.time_budget
        if nodes <= 0 or (secs is not None and secs <= 0):
            raise CliError("budgets must be positive")
        return cls(nodes, secs, getattr(args, "solver", "auto"), args.format, args.seed)


def _emit(cfg: CliConfig, payload: dict, text: str) -> None:
    if cfg.fmt == "json":
        print(json.dumps(payload, indent=1, sort_keys=True))
    else:
        print(text)


def _read(path: str) -> str:
    try:
        if path == "-":
            return sys.stdin.read()
        with open(path) as fh:
            return fh.read()
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc.strerror}") from None


def load_formula_arg(value: str):
    """A formula file, or ``catalog:NAME`` for a catalog entry."""
    if value.startswith("catalog:"):
        try:
            return lookup(value[len("catalog:"):]).formula
        except KeyError as exc:
            raise CliError(str(exc.args[0])) from None
    return parse_formula(_read(value))


def load_structure_arg(value: str) -> Structure:
    return Structure.from_json(_read(value))


def load_witness_arg(value: str) -> Modulator:
    try:
        data = json.loads(_read(value))
    except json.JSONDecodeError as exc:
        raise CliError(f"invalid witness JSON: {exc}") from None
    if isinstance(data, dict) and "witness" in data:
        data = data["witness"]
    if data is None:
        raise CliError("the file holds no witness")
    return Modulator.from_json_dict(data)


# -- subcommands ------------------------------------------------------------------


def cmd_classify(args, cfg: CliConfig) -> int:
    if (args.pattern is None) == (args.formula is None):
        raise CliError("give exactly one of --pattern and --formula")
    pattern = check_pattern(args.pattern) if args.pattern is not None else load_formula_arg(args.formula).pattern
    settings = [CLASSICAL, PARAMETERIZED] if args.setting == "both" else [parse_setting(args.setting)]
    verdicts = [classify(args.type, args.op, pattern, s) for s in settings]
    payload = {"type": args.type, "op": args.op, "pattern": pattern,
               "verdicts": [v.to_json_dict() for v in verdicts]}
    lines = []
    for v in verdicts:
        lines.append(f"{args.type} {args.op} {pattern or '(empty)'} [{v.setting}]: {v.bucket}")
        lines += [f"  by {r.pattern or '(empty)'}: {r.ref}" for r in v.rules]
        lines += [f"  note: {n}" for n in v.notes]
    _emit(cfg, payload if len(verdicts) > 1 else {**payload, **payload["verdicts"][0]}, "\n".join(lines))
    return EXIT_YES


def _request(args) -> SolveRequest:
    return SolveRequest(load_structure_arg(args.structure), args.type, load_formula_arg(args.formula),
                        args.k, args.kind)


def cmd_solve(args, cfg: CliConfig) -> int:
    req = _request(args)
    res = dispatch_solve(req, cfg.limits, cfg.solver)
    payload = {"pattern": req.pattern, "k": req.k, "kind": req.kind.value, "type": req.structure_type.value,
               **res.to_json_dict(req)}
    if args.witness_out and res.witness is not None:
        with open(args.witness_out, "w") as fh:
            fh.write(res.witness.to_json(indent=1) + "\n")
    text = f"{'yes' if res.decision else 'no'} ({res.solver_used}, {res.nodes_explored} nodes)"
    if res.witness is not None:
        text += "\nwitness: " + res.witness.to_json()
    _emit(cfg, payload, text)
    return EXIT_YES if res.decision else EXIT_NO


def cmd_check(args, cfg: CliConfig) -> int:
    s = load_structure_arg(args.structure)
    f = load_formula_arg(args.formula)
    if args.witness is None:
        ok = model_check(s, f)
        _emit(cfg, {"holds": ok, "pattern": f.pattern}, "holds" if ok else "does not hold")
        return EXIT_YES if ok else EXIT_NO
    if args.kind is None or args.k is None:
        raise CliError("checking a witness needs --kind and --k")
    w = load_witness_arg(args.witness)
    valid = validate(s, w, args.kind, args.type)
    size = norm(w, args.type)
    holds = valid and model_check(apply(s, w), f)
    ok = valid and size <= args.k and holds
    payload = {"valid": valid, "norm": size, "within_budget": size <= args.k, "holds": holds, "ok": ok}
    text = f"{'ok' if ok else 'rejected'}: valid={valid} norm={size} holds={holds}"
    _emit(cfg, payload, text)
    return EXIT_YES if ok else EXIT_NO


def _build_options(args) -> dict:
    options = {}
    if getattr(args, "radius", None) is not None:
        options["r"] = args.radius
    if getattr(args, "majority_kind", None) is not None:
        options["kind"] = args.majority_kind
    if getattr(args, "literal", False):
        options["literal"] = True
    return options


def cmd_reduce(args, cfg: CliConfig) -> int:
    try:
        data = json.loads(_read(args.source))
    except json.JSONDecodeError as exc:
        raise CliError(f"invalid source JSON: {exc}") from None
    out = build(args.name, load_source(data), args.directed, **_build_options(args))
    out.save(args.out_dir)
    edges = len(out.structure[out.structure.vocabulary.names[0]])
    payload = {**out.meta(), "tuples": edges, "out_dir": args.out_dir}
    _emit(cfg, payload, f"{out.name}: {out.structure.n} vertices, {edges} tuples, budget {out.budget}, "
                        f"kinds {','.join(k.value for k in out.kinds)} -> {args.out_dir}")
    return EXIT_YES


def cmd_verify(args, cfg: CliConfig) -> int:
    name = canonical_name(args.name)
    bounds = {"max_sets": args.max_sets, "max_universe": args.max_universe, "max_vertices": args.max_vertices,
              "max_length": args.max_length, "max_k": args.max_k}
    options = _build_options(args)
    if args.sample:
        pool = list(source_instances(name, **bounds))
        rng = random.Random(cfg.seed)
        picked = sorted(rng.sample(range(len(pool)), min(args.sample, len(pool))))
        reports = [verify_reduction(name, pool[i], args.kinds, args.directed, cfg.limits, **options)
                   for i in picked]
    else:
        reports = verify_exhaustive(name, kinds=args.kinds, directed=args.directed, limits=cfg.limits,
                                    workers=args.workers, options=options, **bounds)
    table = summarize(reports)
    failures = [r for r in reports if not r.passed]
    flagged = any(r.flagged for r in reports)
    payload = {"reduction": name, "directed": args.directed, "instances": len(reports), "summary": table,
               "passed": not failures, "flagged": flagged,
               "failures": [r.to_json_dict() for r in failures[:args.show]]}
    lines = [f"{name}{' (directed)' if args.directed else ''}: {len(reports)} source instances"]
    for kind, row in table.items():
        lines.append(f"  {kind:5s} pass {row['pass']:5d}  fail {row['fail']:5d}  "
                     f"inconclusive {row['inconclusive']:5d}")
    for r in failures[:args.show]:
        lines.append(f"  FAIL {json.dumps(r.source.to_json_dict(), sort_keys=True)}: "
                     + ", ".join(f"{c.kind.value} source={c.source} target={c.target}" for c in r.checks))
    if flagged:
        lines.append("  flagged variant: failures here are reported, not expected to vanish")
    lines.append("PASS" if not failures else "FAIL")
    _emit(cfg, payload, "\n".join(lines))
    if any(r.inconclusive for r in reports):
        return EXIT_ERROR
    return EXIT_YES if not failures else EXIT_NO


def cmd_catalog(args, cfg: CliConfig) -> int:
    entries = formula_catalog()
    payload = {"formulas": [{"name": e.name, "pattern": e.pattern, "formula": format_formula(e.formula),
                             "about": e.location} for e in entries]}
    width = max(len(e.name) for e in entries)
    text = "\n".join(f"{e.name:{width}s}  {e.pattern:4s}  {format_formula(e.formula)}" for e in entries)
    _emit(cfg, payload, text)
    return EXIT_YES


def landscape(max_length: int, types: Sequence[str], op: str = "edit") -> list[dict]:
    rows = []
    for setting in (CLASSICAL, PARAMETERIZED):
        for t in types:
            for p in all_patterns(max_length):
                rows.append({"setting": setting, "type": t, "pattern": p,
                             "bucket": classify(t, op, p, setting).bucket})
    return rows


def cmd_table(args, cfg: CliConfig) -> int:
    types = args.types or TYPES
    rows = landscape(args.max_length, types)
    lookup_row = {(r["setting"], r["type"], r["pattern"]): r["bucket"] for r in rows}
    lines = []
    for setting in (CLASSICAL, PARAMETERIZED):
        lines.append(f"[{setting}] buckets: {', '.join(BUCKET_ORDER[setting])}")
        lines.append("pattern  " + "".join(f"{t:>20s}" for t in types))
        for p in all_patterns(args.max_length):
            lines.append(f"{p or '-':8s} " + "".join(f"{lookup_row[(setting, t, p)]:>20s}" for t in types))
        lines.append("")
    _emit(cfg, {"max_length": args.max_length, "rows": rows}, "\n".join(lines).rstrip())
    return EXIT_YES


# -- parser -----------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["text", "json"], default="text", help="output format")
    common.add_argument("--node-budget", type=int, default=None,
                        help="search node budget (default: RELMOD_NODE_BUDGET or 1000000)")
    common.add_argument("--time-budget", type=float, default=None,
                        help="wall-clock budget in seconds (default: RELMOD_TIME_BUDGET or none)")
    common.add_argument("--seed", type=int, default=0, help="seed for sampled runs")

    parser = argparse.ArgumentParser(prog="relmod", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", parents=[common], help="place a pattern in the complexity landscape")
    p.add_argument("--type", choices=TYPES, default="arb")
    p.add_argument("--op", choices=KINDS, default="edit")
    p.add_argument("--setting", default="both", help="classical, param, or both")
    p.add_argument("--pattern", help="quantifier pattern over {a, e}")
    p.add_argument("--formula", help="formula file (its pattern is classified) or catalog:NAME")
    p.set_defaults(func=cmd_classify)

    def instance_args(p, required_budget=True):
        p.add_argument("structure", help="structure JSON file")
        p.add_argument("formula", help="formula file or catalog:NAME")
        p.add_argument("--type", choices=TYPES, default="arb")
        p.add_argument("--kind", choices=KINDS, required=required_budget)
        p.add_argument("--k", type=int, required=required_budget)

    p = sub.add_parser("solve", parents=[common], help="decide a modification instance")
    instance_args(p)
    solvers = ["auto"] + sorted(SOLVERS) + sorted(SOLVER_ALIASES)
    p.add_argument("--solver", choices=solvers, default="auto", help="override the dispatcher")
    p.add_argument("--witness-out", help="also write the witness modulator to this file")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("check", parents=[common],
                       help="model check a structure, or re-validate a witness")
    instance_args(p, required_budget=False)
    p.add_argument("--witness", help="modulator JSON (or a solve output holding one)")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("reduce", parents=[common], help="build a reduction target from a source instance")
    p.add_argument("name", help="one of: " + ", ".join(reduction_names()))
    p.add_argument("source", help="source instance JSON file")
    p.add_argument("out_dir", help="directory for structure.json, formula.fo and meta.json")
    p.add_argument("--directed", action="store_true")
    p.add_argument("--radius", type=int, help="radius for eae_basic (default 2)")
    p.add_argument("--majority-kind", choices=KINDS, help="operation for majority_basic_aa")
    p.add_argument("--literal", action="store_true",
                   help="directed ae/aae only: keep the unrepaired construction")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("verify", parents=[common],
                       help="check a reduction against brute force over all small source instances")
    p.add_argument("name")
    p.add_argument("--max-sets", type=int, default=3)
    p.add_argument("--max-universe", type=int, default=2)
    p.add_argument("--max-vertices", type=int, default=4)
    p.add_argument("--max-length", type=int, default=6, help="majority bitstring length")
    p.add_argument("--max-k", type=int, default=1)
    p.add_argument("--kinds", nargs="+", choices=KINDS, help="default: the kinds the reduction claims")
    p.add_argument("--directed", action="store_true")
    p.add_argument("--radius", type=int)
    p.add_argument("--majority-kind", choices=KINDS)
    p.add_argument("--literal", action="store_true")
    p.add_argument("--workers", type=int, default=1, help="worker processes")
    p.add_argument("--sample", type=int, default=0, help="check this many seeded random instances instead")
    p.add_argument("--show", type=int, default=5, help="failures to print")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("catalog", parents=[common], help="list the named formulas")
    p.set_defaults(func=cmd_catalog)

    p = sub.add_parser("table", parents=[common], help="print the landscape for all short patterns")
    p.add_argument("--max-length", type=int, default=3)
    p.add_argument("--types", nargs="+", choices=TYPES)
    p.set_defaults(func=cmd_table)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = CliConfig.from_args(args)
        return args.func(args, cfg)
    except SolverError as exc:
        print(f"relmod: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except (CliError, FormulaError, StructureError, ModificationError, SourceError, ValueError) as exc:
        print(f"relmod: error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
