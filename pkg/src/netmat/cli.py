"""Command-line interface: compute, audit, gen, hunt.

Exit codes: 0 success, 1 a universal or mutual-exclusivity relation failed
during an audit, 2 usage or input errors.  Every run writes a
run_manifest.json recording the command, inputs, seed, and emitted files;
all payloads are rendered before anything touches the filesystem, so a
failing run leaves no partial output.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .errors import NetmatError, ParseError
from .fileio import (
    graph_to_text,
    load_graph,
    load_trajectories,
    matrix_to_csv,
    matrix_to_json_obj,
    trajectories_to_text,
)
from .generators import GenConfig, gen_dataset, gen_fully_utilized
from .matrices import INF
from .identities import (
    audit_dataset,
    evaluate_identity,
    get_identity,
    render_table,
    report_to_json_obj,
    search_counterexample,
)
from .structure import build_structure
from .utilization import Dataset, build_utilization, is_fully_utilized

_GEN_FIELDS = ("n", "edge_prob", "max_traj", "max_len", "allow_duplicates", "seed")
_GEN_DEFAULTS = {
    "n": 6,
    "edge_prob": 0.3,
    "max_traj": 10,
    "max_len": None,
    "allow_duplicates": False,
    "seed": 0,
}


def _json_text(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def _write_outputs(out_dir: Path, payloads: dict[str, str], manifest: dict) -> None:
    manifest = dict(manifest)
    manifest["files"] = sorted(payloads)
    payloads = dict(payloads)
    payloads["run_manifest.json"] = _json_text(manifest)
    out_dir.mkdir(parents=True, exist_ok=True)
    for name in sorted(payloads):
        (out_dir / name).write_text(payloads[name], encoding="utf-8")


def _manifest(args, command: str, inputs: list[str]) -> dict:
    return {
        "tool": "netmat",
        "version": __version__,
        "command": command,
        "inputs": inputs,
        "seed": args.seed,
        "out_dir": str(args.out),
    }


def _load_dataset(args) -> Dataset:
    graph = load_graph(args.graph)
    trajectories = load_trajectories(args.trajectories, graph)
    return Dataset(graph, trajectories)


def _cmd_compute(args) -> int:
    dataset = _load_dataset(args)
    s = build_structure(dataset.graph)
    u = build_utilization(dataset, s)
    matrices = {
        "A": s.A,
        "P": s.P,
        "Phat": s.Phat,
        "E": s.E,
        "Ehat": s.Ehat,
        "F": u.F,
        "D": u.D,
        "L": u.L,
        "T": u.T,
        "Tc": u.Tc,
        "Fhat": u.Fhat,
        "Dhat": u.Dhat,
        "Lhat": u.Lhat,
        "That": u.That,
        "Tchat": u.Tchat,
    }
    summary = {
        "n": dataset.graph.n,
        "edge_count": len(dataset.graph.edges),
        "trajectory_count": len(dataset.trajectories),
        "fully_utilized": is_fully_utilized(u, s),
    }
    labels = dataset.graph.labels
    payloads: dict[str, str] = {"summary.json": _json_text(summary)}
    for name, matrix in matrices.items():
        if args.format == "json":
            payloads[f"{name}.json"] = _json_text(matrix_to_json_obj(matrix, labels))
        else:
            payloads[f"{name}.csv"] = matrix_to_csv(matrix, labels)
    _write_outputs(
        args.out, payloads, _manifest(args, "compute", [str(args.graph), str(args.trajectories)])
    )
    if not args.quiet:
        print(
            f"wrote {len(payloads) + 1} files to {args.out} "
            f"(n={summary['n']}, edges={summary['edge_count']}, "
            f"trajectories={summary['trajectory_count']}, "
            f"fully_utilized={str(summary['fully_utilized']).lower()})"
        )
    return 0


def _cmd_audit(args) -> int:
    dataset = _load_dataset(args)
    report = audit_dataset(dataset, name=f"{args.graph} + {args.trajectories}")
    obj = report_to_json_obj(report)
    obj["inputs"] = {"graph": str(args.graph), "trajectories": str(args.trajectories)}
    payloads = {"audit_report.json": _json_text(obj)}
    _write_outputs(
        args.out, payloads, _manifest(args, "audit", [str(args.graph), str(args.trajectories)])
    )
    if not args.quiet:
        print(render_table(report), end="")
    return 0 if report.sound else 1


def _merge_gen_config(args) -> GenConfig:
    merged = dict(_GEN_DEFAULTS)
    if args.config is not None:
        try:
            loaded = json.loads(Path(args.config).read_text(encoding="utf-8"))
        except json.JSONDecodeError as e:
            raise ParseError(f"invalid JSON: {e}", source=str(args.config)) from e
        if not isinstance(loaded, dict):
            raise ParseError("config must be a JSON object", source=str(args.config))
        unknown = set(loaded) - set(_GEN_FIELDS)
        if unknown:
            raise ParseError(
                f"unknown config fields: {', '.join(sorted(unknown))}",
                source=str(args.config),
            )
        merged.update(loaded)
    for field in _GEN_FIELDS:
        value = getattr(args, field)
        if value is not None:
            merged[field] = value
    if merged["max_len"] is None:
        merged["max_len"] = merged["n"]
    return GenConfig(**merged)


def _cmd_gen(args) -> int:
    cfg = _merge_gen_config(args)
    dataset = gen_fully_utilized(cfg) if args.fully_utilized else gen_dataset(cfg)
    payloads = {
        "graph.txt": graph_to_text(dataset.graph),
        "trajectories.txt": trajectories_to_text(
            dataset.trajectories, dataset.graph.labels
        ),
        "gen_config.json": _json_text(
            {field: getattr(cfg, field) for field in _GEN_FIELDS}
        ),
    }
    manifest = _manifest(args, "gen", [])
    manifest["seed"] = cfg.seed
    _write_outputs(args.out, payloads, manifest)
    if not args.quiet:
        print(
            f"wrote dataset to {args.out} "
            f"(n={dataset.graph.n}, edges={len(dataset.graph.edges)}, "
            f"trajectories={len(dataset.trajectories)})"
        )
    return 0


def _cmd_hunt(args) -> int:
    spec = get_identity(args.identity)
    seed = args.seed if args.seed is not None else 0
    found = search_counterexample(
        args.identity, args.budget, seed, allow_duplicates=args.allow_duplicates
    )
    report = {
        "identity": spec.id,
        "class": spec.kind.value,
        "statement": spec.statement(),
        "budget": args.budget,
        "seed": seed,
        "allow_duplicates": args.allow_duplicates,
        "found": found is not None,
        "witness": None,
    }
    payloads: dict[str, str] = {}
    message = f"no counterexample found for {spec.id} within {args.budget} instances"
    if found is not None:
        s = build_structure(found.graph)
        u = build_utilization(found, s)
        verdict = evaluate_identity(spec, s, u)
        w = verdict.witness
        labels = found.graph.labels
        report["witness"] = {
            "row": w.row,
            "col": w.col,
            "row_label": labels[w.row],
            "col_label": labels[w.col],
            "lhs": None if w.lhs is INF else w.lhs,
            "rhs": None if w.rhs is INF else w.rhs,
        }
        payloads["graph.txt"] = graph_to_text(found.graph)
        payloads["trajectories.txt"] = trajectories_to_text(
            found.trajectories, found.graph.labels
        )
        message = (
            f"counterexample found for {spec.id} at cell "
            f"({labels[w.row]}, {labels[w.col]}): lhs={w.lhs!r} rhs={w.rhs!r}"
        )
    payloads["hunt_report.json"] = _json_text(report)
    manifest = _manifest(args, "hunt", [])
    manifest["seed"] = seed
    _write_outputs(args.out, payloads, manifest)
    if not args.quiet:
        print(message)
    return 0


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--format", choices=("csv", "json"), default="csv", help="matrix file format"
    )
    parser.add_argument(
        "--out", type=Path, default=Path("netmat_out"), help="output directory"
    )
    parser.add_argument("--seed", type=int, default=None, help="random seed")
    parser.add_argument("--quiet", action="store_true", help="suppress stdout chatter")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="netmat",
        description=(
            "Build network structure and utilization matrices from a directed "
            "graph and trajectories, and audit the identity catalogue."
        ),
    )
    parser.add_argument("--version", action="version", version=f"netmat {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compute", help="write all structure and utilization matrices")
    p.add_argument("--graph", required=True, type=Path, help="graph edge-list file")
    p.add_argument(
        "--trajectories", required=True, type=Path, help="trajectory file"
    )
    _add_common(p)
    p.set_defaults(func=_cmd_compute)

    p = sub.add_parser("audit", help="evaluate every catalogued identity")
    p.add_argument("--graph", required=True, type=Path)
    p.add_argument("--trajectories", required=True, type=Path)
    _add_common(p)
    p.set_defaults(func=_cmd_audit)

    p = sub.add_parser("gen", help="generate a random dataset")
    p.add_argument("--config", type=Path, default=None, help="GenConfig JSON file")
    p.add_argument("--n", type=int, default=None, help="node count")
    p.add_argument("--edge-prob", dest="edge_prob", type=float, default=None)
    p.add_argument("--max-traj", dest="max_traj", type=int, default=None)
    p.add_argument("--max-len", dest="max_len", type=int, default=None)
    p.add_argument(
        "--allow-duplicates",
        dest="allow_duplicates",
        action=argparse.BooleanOptionalAction,
        default=None,
    )
    p.add_argument(
        "--fully-utilized",
        action="store_true",
        help="cover every edge and reachable pair with trajectories",
    )
    _add_common(p)
    p.set_defaults(func=_cmd_gen)

    p = sub.add_parser("hunt", help="search for a counterexample to one identity")
    p.add_argument("identity", help="catalogue id, e.g. X.EHAT_L_NEQ_L")
    p.add_argument("--budget", type=int, default=1000, help="instances to try")
    p.add_argument(
        "--allow-duplicates",
        dest="allow_duplicates",
        action=argparse.BooleanOptionalAction,
        default=True,
    )
    _add_common(p)
    p.set_defaults(func=_cmd_hunt)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except NetmatError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
