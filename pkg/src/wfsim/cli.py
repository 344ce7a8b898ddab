"""Command line front end.

Four operations behind one ``wfsim`` entry point:

* ``run FILE`` parses, validates, compiles and executes a protocol file,
  reporting the step trace plus an agreement check over the final
  per-physicist snapshots.
* ``verify THM`` runs one of the built-in no-go checks (thm1..thm5).
* ``sweep`` runs the evaporation sweep; with ``--csv`` it writes the table
  and renders figures next to it.
* ``game`` evaluates, optimizes, or samples the prediction game.

Every command emits one JSON report envelope. Identical invocations emit
byte-identical JSON apart from the wall-time field: key order is fixed and
floats use Python's shortest round-trip representation, which never exceeds
17 significant digits. Exit codes: 0 success (whatever the verdict),
1 validation or configuration error, 2 protocol parse error, 3 internal
invariant violation. Relative output paths land in ``$WFSIM_OUTDIR`` when
that variable is set.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from typing import Optional, Sequence

import numpy as np

from . import __version__
from .blackhole import (
    run_sweep,
    sweep_means,
    verify_firewall,
    verify_hp_extended,
    write_sweep_csv,
)
from .game import (
    GameStrategy,
    optimal_strategy,
    sample_rounds,
    strategy_from_ket,
    win_probability,
)
from .pdl import ParseError, compile_and_run, parse, validate
from .perspective import MarginalConstraintSet, agreement_feasible
from .protocols import (
    KET_EXPRESSIONS,
    ProtocolTrace,
    run_fr,
    run_wigner,
    verify_objective_outcomes,
)
from .qcore import InvariantViolation, QuantumError

__all__ = ["build_parser", "main"]

SCHEMA_VERSION = 1
TOOL = f"wfsim {__version__}"
TRACE_LEVELS = ("ops", "detail", "states")
THEOREMS = ("thm1", "thm2", "thm3", "thm4", "thm5")


def _jsonify(value):
    """Plain JSON types all the way down; numpy scalars become built-ins."""
    if isinstance(value, dict):
        return {str(k): _jsonify(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonify(v) for v in value]
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        return float(value)
    if isinstance(value, np.ndarray):
        return [_jsonify(v) for v in value.tolist()]
    return value


def _resolve_output(path: str) -> str:
    base = os.environ.get("WFSIM_OUTDIR")
    if base and not os.path.isabs(path):
        os.makedirs(base, exist_ok=True)
        return os.path.join(base, path)
    return path


def _envelope(
    command: str, config: dict, seeds: Sequence[int], report: dict, started: float
) -> dict:
    return {
        "schema": SCHEMA_VERSION,
        "tool": TOOL,
        "command": command,
        "config": _jsonify(config),
        "seeds": [int(s) for s in seeds],
        "report": _jsonify(report),
        "wall_time_s": time.perf_counter() - started,
    }


def _emit(envelope: dict, json_path: Optional[str]) -> None:
    text = json.dumps(envelope, indent=2)
    if json_path is None:
        print(text)
    else:
        with open(_resolve_output(json_path), "w") as fh:
            fh.write(text + "\n")


def _parse_m_values(text: str) -> tuple[int, ...]:
    """Emission counts as an inclusive span 'a:b' or a comma list '0,2,4'."""
    try:
        if ":" in text:
            lo_text, hi_text = text.split(":", 1)
            lo, hi = int(lo_text), int(hi_text)
            if hi < lo:
                raise ValueError
            return tuple(range(lo, hi + 1))
        return tuple(int(part) for part in text.split(","))
    except ValueError:
        raise QuantumError(f"cannot read emission counts from {text!r}") from None


# ---------------------------------------------------------------------------
# run


def _trace_report(trace: ProtocolTrace, level: str) -> dict:
    summary = trace.summary()
    if level == "ops":
        for step in summary["steps"]:
            step.pop("detail", None)
    elif level == "states":
        for step, traced in zip(summary["steps"], trace.steps):
            m = traced.state.matrix
            step["state"] = {
                "systems": [s.name for s in traced.state.systems],
                "real": m.real.tolist(),
                "imag": m.imag.tolist(),
            }
    return summary


def _final_agreement(trace: ProtocolTrace):
    """Are the final per-physicist snapshots marginals of one joint state?"""
    targets = [state for _, state in trace.steps[-1].perspectives]
    if len(targets) < 2:
        return None
    return agreement_feasible(MarginalConstraintSet.from_targets(targets))


def cmd_run(args: argparse.Namespace) -> int:
    started = time.perf_counter()
    try:
        with open(args.path) as fh:
            source = fh.read()
    except OSError as exc:
        print(f"cannot read {args.path}: {exc}", file=sys.stderr)
        return 1
    ast = parse(source)
    if isinstance(ast, ParseError):
        print(f"parse error: {ast.describe()}", file=sys.stderr)
        return 2
    findings = validate(ast)
    if findings:
        for finding in findings:
            print(finding.describe(), file=sys.stderr)
        return 1
    name = os.path.splitext(os.path.basename(args.path))[0]
    trace = compile_and_run(ast, protocol=name)
    report: dict = {"trace": _trace_report(trace, args.trace_level)}
    agreement = _final_agreement(trace)
    if agreement is not None:
        report["agreement"] = agreement.to_dict()
    envelope = _envelope(
        "run",
        {"path": args.path, "trace_level": args.trace_level},
        [],
        report,
        started,
    )
    _emit(envelope, args.json)
    return 0


# ---------------------------------------------------------------------------
# verify


def cmd_verify(args: argparse.Namespace) -> int:
    started = time.perf_counter()
    with_c = not args.without_C
    m_values = _parse_m_values(args.m)
    seeds: list[int] = []
    if args.theorem == "thm1":
        _, report = run_wigner()
    elif args.theorem == "thm2":
        report = verify_objective_outcomes()
    elif args.theorem == "thm3":
        _, report = run_fr(apply_c=with_c)
    elif args.theorem == "thm4":
        seeds = list(range(args.seeds))
        report = verify_hp_extended(
            n_interior=args.n_interior, m_values=m_values, seeds=args.seeds
        )
    else:
        seeds = [args.seed]
        report = verify_firewall(seed=args.seed)
    config = {
        "theorem": args.theorem,
        "with_C": with_c,
        "n_interior": args.n_interior,
        "m_values": list(m_values),
        "seeds": args.seeds,
        "seed": args.seed,
    }
    envelope = _envelope("verify", config, seeds, report.to_dict(), started)
    _emit(envelope, args.json)
    return 0


# ---------------------------------------------------------------------------
# sweep


def cmd_sweep(args: argparse.Namespace) -> int:
    started = time.perf_counter()
    m_values = _parse_m_values(args.m_range)
    rows = run_sweep(n_interior=args.n_interior, m_values=m_values, seeds=args.seeds)
    means = sweep_means(rows)
    report: dict = {
        "n_interior": args.n_interior,
        "m_values": list(m_values),
        "rows": [row.to_dict() for row in rows],
        "means_by_m": {str(m): means[m] for m in sorted(means)},
        "csv": None,
        "figures": [],
    }
    if args.csv is not None:
        csv_path = _resolve_output(args.csv)
        write_sweep_csv(rows, csv_path)
        from .plotting import render_sweep_figures

        report["csv"] = csv_path
        report["figures"] = render_sweep_figures(rows, csv_path)
    envelope = _envelope(
        "sweep",
        {
            "n_interior": args.n_interior,
            "m_range": args.m_range,
            "seeds": args.seeds,
            "csv": args.csv,
        },
        list(range(args.seeds)),
        report,
        started,
    )
    _emit(envelope, args.json)
    return 0


# ---------------------------------------------------------------------------
# game


def _strategy_from_spec(spec: str) -> GameStrategy:
    parts = [part.strip() for part in spec.split(",")]
    if len(parts) != 3:
        raise QuantumError(
            f"strategy spec {spec!r} must be ket,P,Pbar like '|1>,1,0bar'"
        )
    ket_text, p_text, p_bar_text = parts
    if ket_text not in KET_EXPRESSIONS:
        known = ", ".join(sorted(KET_EXPRESSIONS))
        raise QuantumError(f"unknown ket {ket_text!r}; known kets: {known}")
    if p_text not in ("0", "1"):
        raise QuantumError(f"computational prediction must be 0 or 1, got {p_text!r}")
    if p_bar_text not in ("0bar", "1bar"):
        raise QuantumError(
            f"diagonal prediction must be 0bar or 1bar, got {p_bar_text!r}"
        )
    return strategy_from_ket(KET_EXPRESSIONS[ket_text], int(p_text), int(p_bar_text[0]))


def cmd_game(args: argparse.Namespace) -> int:
    started = time.perf_counter()
    if args.sample is not None and args.sample <= 0:
        raise QuantumError("--sample needs a positive round count")
    if args.eval is not None:
        strategy = _strategy_from_spec(args.eval)
        source = "eval"
    else:
        strategy, _ = optimal_strategy()
        source = "optimal"
    report = win_probability(strategy).to_dict()
    rho = strategy.indicated_state.matrix
    report["strategy"] = {
        "source": source,
        "p": strategy.p,
        "p_bar": f"{strategy.p_bar}bar",
        "state_real": rho.real.tolist(),
        "state_imag": rho.imag.tolist(),
    }
    seeds: list[int] = []
    if args.sample is not None:
        wins = sample_rounds(strategy, args.sample, args.seed)
        report["sample"] = {
            "rounds": int(args.sample),
            "seed": args.seed,
            "empirical_win": float(np.mean(wins)),
        }
        seeds = [args.seed]
    envelope = _envelope(
        "game",
        {
            "optimize": bool(args.optimize),
            "eval": args.eval,
            "sample": args.sample,
            "seed": args.seed,
        },
        seeds,
        report,
        started,
    )
    _emit(envelope, args.json)
    return 0


# ---------------------------------------------------------------------------
# wiring


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wfsim",
        description="Multi-perspective protocol simulator and no-go verifier.",
    )
    parser.add_argument("--version", action="version", version=TOOL)
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="execute a protocol file")
    p_run.add_argument("path", help="protocol file (.wfp)")
    p_run.add_argument(
        "--trace-level",
        choices=TRACE_LEVELS,
        default="detail",
        help="per-step information in the report (default: detail)",
    )
    p_run.add_argument("--json", metavar="PATH", help="write the envelope here")
    p_run.set_defaults(func=cmd_run)

    p_verify = sub.add_parser("verify", help="run a built-in no-go check")
    p_verify.add_argument("theorem", choices=THEOREMS)
    group = p_verify.add_mutually_exclusive_group()
    group.add_argument(
        "--with-C",
        dest="without_C",
        action="store_false",
        help="keep the nested-certainty chaining rule (default, thm3)",
    )
    group.add_argument(
        "--without-C",
        dest="without_C",
        action="store_true",
        help="drop the nested-certainty chaining rule (thm3)",
    )
    p_verify.set_defaults(without_C=False)
    p_verify.add_argument("--seeds", type=int, default=20, help="seed count (thm4)")
    p_verify.add_argument(
        "--n-interior", type=int, default=5, help="interior qubit count (thm4)"
    )
    p_verify.add_argument(
        "--m", default="0:4", help="emission counts, 'a:b' or comma list (thm4)"
    )
    p_verify.add_argument("--seed", type=int, default=0, help="scrambler seed (thm5)")
    p_verify.add_argument("--json", metavar="PATH", help="write the envelope here")
    p_verify.set_defaults(func=cmd_verify)

    p_sweep = sub.add_parser("sweep", help="evaporation sweep table")
    p_sweep.add_argument("--n-interior", type=int, default=5)
    p_sweep.add_argument(
        "--m-range", default="0:4", help="emission counts, 'a:b' or comma list"
    )
    p_sweep.add_argument("--seeds", type=int, default=20)
    p_sweep.add_argument(
        "--csv", metavar="PATH", help="write the table here, figures next to it"
    )
    p_sweep.add_argument("--json", metavar="PATH", help="write the envelope here")
    p_sweep.set_defaults(func=cmd_sweep)

    p_game = sub.add_parser("game", help="prediction game tools")
    mode = p_game.add_mutually_exclusive_group()
    mode.add_argument(
        "--optimize", action="store_true", help="report the best strategy"
    )
    mode.add_argument(
        "--eval", metavar="SPEC", help="evaluate a strategy like '|1>,1,0bar'"
    )
    p_game.add_argument(
        "--sample", type=int, metavar="N", help="also sample N seeded rounds"
    )
    p_game.add_argument("--seed", type=int, default=0, help="sampling seed")
    p_game.add_argument("--json", metavar="PATH", help="write the envelope here")
    p_game.set_defaults(func=cmd_game)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        code = exc.code if isinstance(exc.code, int) else 1
        return 0 if code == 0 else 1
    try:
        return args.func(args)
    except InvariantViolation as exc:
        print(f"internal invariant violated: {exc}", file=sys.stderr)
        return 3
    except QuantumError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"io error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
