"""Command-line front end.

Subcommands ``bounds``, ``attain``, ``audit``, ``figure2`` and ``purify-demo``
emit CSV or JSON records. Exit status: 0 when every check passes, 1 on an
invariant or bound violation, 2 on a usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import asdict, dataclass

import numpy as np

from . import __version__
from .channels import Implementation, SearchConfig, gate_trace_distance, trace_distance_qubit
from .conservation import (
    ancilla_sector_coefficients,
    commutator_norm,
    component_bound,
    fixed_ancilla_bound,
    overlap_bound,
    random_conservative,
    random_pure_state,
)
from .constructions import optimal_ancilla, optimal_unitary, purify, random_mixed_implementation
from .hilbert import PureQubitState
from .policy import POLICY
from .spectral import bound_cc, bound_general, bound_hadamard_ref

SLACK = 1e-8
OVERLAP_SLACK = 1e-12
COMMUTATOR_TOL = 1e-12

# column name -> type, per command; drives CSV writing and reparsing
SCHEMAS: dict[str, dict[str, type]] = {
    "bounds": {
        "n": int,
        "bound_not_exact": float,
        "bound_not_uniform": float,
        "bound_cc": float,
        "bound_hadamard": float,
    },
    "attain": {
        "n": int,
        "predicted": float,
        "measured": float,
        "abs_error": float,
        "witness_p": float,
        "witness_theta": float,
        "passed": bool,
    },
    "audit": {
        "n": int,
        "seed": int,
        "measured_max_distance": float,
        "component_bound": float,
        "overlap_abs": float,
        "overlap_sum": float,
        "fixed_ancilla_bound": float,
        "general_bound": float,
        "commutator": float,
        "violations": str,
    },
    "figure2": {"n": int, "amplitude": float},
    "purify-demo": {
        "n": int,
        "seed": int,
        "rank": int,
        "extra_qubits": int,
        "n_extended": int,
        "max_residual": float,
        "commutator": float,
        "passed": bool,
    },
}

DEFAULT_N = {
    "bounds": (2, 100),
    "attain": (2, 20),
    "audit": (2, 4),
    "figure2": (100, 100),
    "purify-demo": (1, 3),
}
DEFAULT_TOL = {"bounds": 0.0, "attain": 1e-6, "audit": SLACK, "figure2": 0.0, "purify-demo": 1e-10}
DEFAULT_SAMPLES = {"audit": 200, "purify-demo": 10}


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    n_min: int
    n_max: int
    seed: int
    samples: int
    grid_p: int
    grid_theta: int
    tol: float
    format: str
    out: str | None
    rank: int | None = None
    inject_nonconservative: bool = False

    def __post_init__(self):
        if self.n_min > self.n_max:
            raise UsageError(f"empty N range {self.n_min}..{self.n_max}")
        if self.samples < 1:
            raise UsageError("--samples must be at least 1")
        if self.seed < 0 or self.seed >= 2**64:
            raise UsageError("--seed must be an unsigned 64-bit integer")
        if not self.tol >= 0:
            raise UsageError("--tol must be non-negative")

    @property
    def n_values(self) -> range:
        return range(self.n_min, self.n_max + 1)


def parse_range(text: str) -> tuple[int, int]:
    """``"a..b"`` or ``"a"`` to an inclusive pair."""
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            return int(lo), int(hi)
        v = int(text)
        return v, v
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a..b or a single integer, got {text!r}") from None


def parse_grid(text: str) -> tuple[int, int]:
    try:
        p, t = text.lower().split("x")
        return int(p), int(t)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected <p>x<t>, got {text!r}") from None


def cmd_bounds(cfg: RunConfig):
    if cfg.n_min < 2 or cfg.n_max > 10**6:
        raise UsageError("bounds needs N within [2, 1000000]")
    rows = []
    for N in cfg.n_values:
        rows.append(
            {
                "n": N,
                "bound_not_exact": bound_general(N, "exact").value,
                "bound_not_uniform": bound_general(N, "uniform").value,
                "bound_cc": bound_cc(N).value,
                "bound_hadamard": bound_hadamard_ref(N).value,
            }
        )
    return rows, {"rows": len(rows)}, 0


def cmd_attain(cfg: RunConfig):
    if cfg.n_min < 2 or cfg.n_max > 10**5:
        raise UsageError("attain needs N within [2, 100000]")
    search = _search_config(cfg)
    rows = []
    for N in cfg.n_values:
        chain = optimal_unitary(N)
        impl = chain.dense_implementation() if N <= POLICY.dense_limit else chain
        measured, witness = gate_trace_distance(impl, search)
        predicted = bound_cc(N).value
        err = abs(predicted - measured)
        rows.append(
            {
                "n": N,
                "predicted": predicted,
                "measured": measured,
                "abs_error": err,
                "witness_p": witness.p,
                "witness_theta": witness.theta,
                "passed": err <= cfg.tol,
            }
        )
    failures = sum(not r["passed"] for r in rows)
    return rows, {"rows": len(rows), "failures": failures}, int(failures > 0)


def audit_sample(N: int, seed: int, search: SearchConfig, inject: bool = False, slack: float = SLACK) -> dict:
    """One random conservative pure implementation checked against every bound.

    Args:
        N: ancilla qubit count.
        seed: seeds one generator that draws U, then the ancilla.
        search: input-search settings for the measured distance.
        inject: compose U with X on the system qubit (negative control).
        slack: allowed shortfall of the measured distance below each bound.
    """
    rng = np.random.default_rng(seed)
    U = random_conservative(N, rng)
    A = random_pure_state(2**N, rng)
    if inject:
        flip = np.kron(np.array([[0, 1], [1, 0]]), np.eye(2**N))
        U = U.to_dense() @ flip
    impl = Implementation(N, U, A)
    comp = impl.components()
    measured, _ = gate_trace_distance(impl, search)
    coeffs = ancilla_sector_coefficients(A)
    rec = {
        "n": N,
        "seed": seed,
        "measured_max_distance": measured,
        "component_bound": component_bound(comp),
        "overlap_abs": abs(comp.overlap),
        "overlap_sum": overlap_bound(coeffs),
        "fixed_ancilla_bound": fixed_ancilla_bound(coeffs),
        "general_bound": bound_general(N, "uniform").value,
        "commutator": commutator_norm(U, N),
    }
    violations = []
    if measured < rec["component_bound"] - slack:
        violations.append("component_bound")
    if measured < rec["general_bound"] - slack:
        violations.append("general_bound")
    if measured < rec["fixed_ancilla_bound"] - slack:
        violations.append("fixed_ancilla_bound")
    if rec["overlap_abs"] > rec["overlap_sum"] + OVERLAP_SLACK:
        violations.append("overlap_sum")
    if rec["commutator"] > COMMUTATOR_TOL:
        violations.append("commutator")
    rec["violations"] = ";".join(violations)
    return rec


def cmd_audit(cfg: RunConfig):
    if cfg.n_min < 2 or cfg.n_max > POLICY.dense_limit:
        raise UsageError(f"audit needs N within [2, {POLICY.dense_limit}]")
    search = _search_config(cfg)
    rows = [
        audit_sample(N, cfg.seed + k, search, cfg.inject_nonconservative, cfg.tol)
        for N in cfg.n_values
        for k in range(cfg.samples)
    ]
    counts: dict[str, int] = {}
    for r in rows:
        for name in filter(None, r["violations"].split(";")):
            counts[name] = counts.get(name, 0) + 1
    bad = sum(bool(r["violations"]) for r in rows)
    return rows, {"samples": len(rows), "violating_samples": bad, "violations": counts}, int(bad > 0)


def cmd_figure2(cfg: RunConfig):
    if cfg.n_min != cfg.n_max:
        raise UsageError("figure2 takes a single N")
    N = cfg.n_min
    if N < 2 or N % 2:
        raise UsageError("figure2 needs an even N >= 2")
    a = optimal_ancilla(N).a
    rows = [{"n": n, "amplitude": float(a[n])} for n in range(1, N, 2)]
    peak = max(rows, key=lambda r: r["amplitude"])["n"]
    return rows, {"rows": len(rows), "peak_n": peak}, 0


def cmd_purify_demo(cfg: RunConfig):
    if cfg.n_min < 1 or cfg.n_max > 3:
        raise UsageError("purify-demo needs N within [1, 3]")
    rows = []
    for N in cfg.n_values:
        rank = cfg.rank if cfg.rank is not None else 2**N
        if not 1 <= rank <= 2**N:
            raise UsageError(f"--rank {rank} is out of range for N={N}")
        for k in range(cfg.samples):
            seed = cfg.seed + k
            impl = random_mixed_implementation(N, rank, seed)
            pure, plan = purify(impl)
            residual = max(
                trace_distance_qubit(impl.apply(s), pure.apply(s)) for s in PureQubitState.tomographic()
            )
            comm = commutator_norm(pure.U, pure.N)
            rows.append(
                {
                    "n": N,
                    "seed": seed,
                    "rank": plan.rank,
                    "extra_qubits": plan.extra_qubits,
                    "n_extended": pure.N,
                    "max_residual": residual,
                    "commutator": comm,
                    "passed": residual <= cfg.tol and comm <= COMMUTATOR_TOL,
                }
            )
    failures = sum(not r["passed"] for r in rows)
    return rows, {"rows": len(rows), "failures": failures}, int(failures > 0)


COMMANDS = {
    "bounds": cmd_bounds,
    "attain": cmd_attain,
    "audit": cmd_audit,
    "figure2": cmd_figure2,
    "purify-demo": cmd_purify_demo,
}


def _search_config(cfg: RunConfig) -> SearchConfig:
    try:
        return SearchConfig(grid_p=cfg.grid_p, grid_theta=cfg.grid_theta)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _cell(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(float(value))
    return str(value)


def render_csv(command: str, rows: list[dict]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    cols = list(SCHEMAS[command])
    writer.writerow(cols)
    for r in rows:
        writer.writerow([_cell(r[c]) for c in cols])
    return buf.getvalue()


def parse_csv(command: str, text: str) -> list[dict]:
    """Reparse :func:`render_csv` output into typed records."""
    schema = SCHEMAS[command]
    out = []
    for raw in csv.DictReader(io.StringIO(text)):
        rec = {}
        for name, typ in schema.items():
            v = raw[name]
            rec[name] = v == "true" if typ is bool else typ(v)
        out.append(rec)
    return out


def render_json(cfg: RunConfig, rows: list[dict], summary: dict) -> str:
    # the output location is not part of what was computed
    config = {k: v for k, v in asdict(cfg).items() if k != "out"}
    doc = {"config": config, "records": rows, "summary": summary, "tool_version": __version__}
    return json.dumps(doc, indent=2) + "\n"


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="notlimit", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    helps = {
        "bounds": "table of lower bounds per N",
        "attain": "verify the optimal construction attains the classically complete bound",
        "audit": "check random conservative implementations against every bound",
        "figure2": "ancilla amplitude profile of the optimal construction (even N)",
        "purify-demo": "channel residuals after purifying random mixed implementations",
    }
    for name, text in helps.items():
        p = sub.add_parser(name, help=text, description=text)
        lo, hi = DEFAULT_N[name]
        p.add_argument("--n", type=parse_range, default=(lo, hi), metavar="A..B",
                       help=f"inclusive N range (default {lo}..{hi})")
        p.add_argument("--seed", type=int, default=0, help="base seed; sample k uses seed+k (default 0)")
        p.add_argument("--samples", type=int, default=DEFAULT_SAMPLES.get(name, 1),
                       help=f"samples per N (default {DEFAULT_SAMPLES.get(name, 1)})")
        p.add_argument("--grid", type=parse_grid, default=(64, 128), metavar="PxT",
                       help="input search grid (default 64x128)")
        p.add_argument("--tol", type=float, default=DEFAULT_TOL[name],
                       help=f"pass tolerance (default {DEFAULT_TOL[name]:g})")
        p.add_argument("--format", choices=["csv", "json"], default="csv", help="output format (default csv)")
        p.add_argument("--out", default=None, help="output file (default stdout)")
        if name == "audit":
            p.add_argument("--inject-nonconservative", action="store_true",
                           help="debug: compose each U with X on the system qubit (negative control)")
        if name == "purify-demo":
            p.add_argument("--rank", type=int, default=None, help="ancilla rank (default 2**N)")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = RunConfig(
            command=args.command,
            n_min=args.n[0],
            n_max=args.n[1],
            seed=args.seed,
            samples=args.samples,
            grid_p=args.grid[0],
            grid_theta=args.grid[1],
            tol=args.tol,
            format=args.format,
            out=args.out,
            rank=getattr(args, "rank", None),
            inject_nonconservative=getattr(args, "inject_nonconservative", False),
        )
        rows, summary, status = COMMANDS[cfg.command](cfg)
    except UsageError as exc:
        parser.error(str(exc))

    text = render_csv(cfg.command, rows) if cfg.format == "csv" else render_json(cfg, rows, summary)
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if cfg.format == "csv":
        print(" ".join(f"{k}={v}" for k, v in summary.items()), file=sys.stderr)
    return status


if __name__ == "__main__":
    sys.exit(main())
