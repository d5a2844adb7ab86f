"""Command-line entry point: ``isoscreen {compare,verify-srg,sweep-u,corpus,ingest}``."""

from __future__ import annotations

import argparse
import asyncio
import csv
import json
import logging
import os
import sys
import time
import typing as t
from pathlib import Path

from . import __version__
from .algebra import verify_srg_identities
from .classical import IntegratorConfig, Normalization, PotentialSpec, classical_compare
from .config import load_config, write_config
from .config_schema import Model as RunConfig
from .corpus import DATA_DIR_ENV, builtin_corpus, corpus_entry, ingest_pair
from .errors import ArgumentError, CorpusError, Error
from .graph import Graph, SrgParams, detect_srg
from .graph6 import encode_graph6, read_graphs
from .report import ComparisonReport, Method, RunReport, Verdict
from .walks import (
    FermionSigns,
    Statistics,
    single_walk_compare,
    two_particle_compare,
    u_grid,
    u_sweep,
    u_sweep_concurrent,
)

logger = logging.getLogger("isoscreen")

EXIT_OK = 0
EXIT_DIAGNOSTIC = 2
EXIT_DISTINGUISHED = 3

CORPUS_PREFIX = "corpus:"

DEFAULTS: RunConfig = {
    "method": "classical",
    "potential": "harmonic",
    "stats": "fermion",
    "U": 0.0,
    "T": 1.0,
    "dt": 0.1,
    "mobility": 1.0,
    "normalize": "none",
    "renormalize_each_step": False,
    "every_step": False,
    "closed_form": False,
    "fermion_signs": "canonical",
    "tol": 1e-8,
    "quantum": 1e-9,
    "threshold": 1e-6,
    "eigensolver": "lapack",
    "jobs": 1,
    "u_from": 0.0,
    "u_to": 2.0,
    "u_steps": 41,
}


def resolve_graphs(
    refs: t.Sequence[str], data_dir: str | None = None
) -> list[tuple[str, Graph]]:
    """Expand file paths, ``corpus:NAME`` and ``corpus:NAME:i`` (1-based) into labeled graphs."""
    resolved: list[tuple[str, Graph]] = []
    for ref in refs:
        if not ref.startswith(CORPUS_PREFIX):
            graphs = read_graphs(ref)
            if len(graphs) == 1:
                resolved.append((ref, graphs[0]))
            else:
                resolved.extend((f"{ref}:{i}", g) for i, g in enumerate(graphs, start=1))
            continue

        name, _, index = ref[len(CORPUS_PREFIX):].partition(":")
        entry = corpus_entry(name, data_dir)
        if entry is None:
            raise CorpusError(name, "no such entry")
        if not index:
            labels = [f"{CORPUS_PREFIX}{name}:{i}" for i in range(1, len(entry.graphs) + 1)]
            resolved.extend(zip(labels, entry.graphs))
            continue
        if not index.isdigit() or not 1 <= int(index) <= len(entry.graphs):
            raise ArgumentError(
                f"graph index {index!r} out of range for {name} ({len(entry.graphs)} graphs)"
            )
        resolved.append((ref, entry.graphs[int(index) - 1]))
    return resolved


def _settings(args: argparse.Namespace) -> dict[str, t.Any]:
    """Flag value, else config file value, else default."""
    config: dict[str, t.Any] = dict(load_config(args.config)) if args.config else {}
    settings: dict[str, t.Any] = {}
    for key in set(DEFAULTS) | set(config) | {"data_dir"}:
        value = getattr(args, key, None)
        if value is None:
            value = config.get(key, DEFAULTS.get(key))
        settings[key] = value
    return settings


def _run_compare(
    g1: Graph, g2: Graph, settings: dict[str, t.Any]
) -> ComparisonReport:
    method = Method(settings["method"])
    eigensolver = settings["eigensolver"]
    if method is Method.CLASSICAL:
        cfg = IntegratorConfig(
            total_time=float(settings["T"]),
            step=float(settings["dt"]),
            mobility=float(settings["mobility"]),
            normalization=Normalization(settings["normalize"]),
            renormalize_each_step=bool(settings["renormalize_each_step"]),
        )
        return classical_compare(
            g1,
            g2,
            PotentialSpec.parse(settings["potential"]),
            cfg,
            float(settings["tol"]),
            float(settings["quantum"]),
            every_step=bool(settings["every_step"]),
            closed_form=bool(settings["closed_form"]),
            method=eigensolver,
        )
    if method is Method.WALK1:
        return single_walk_compare(
            g1, g2, float(settings["T"]), float(settings["tol"]), float(settings["quantum"]), eigensolver
        )
    return two_particle_compare(
        g1,
        g2,
        Statistics(settings["stats"]),
        float(settings["U"]),
        float(settings["T"]),
        float(settings["threshold"]),
        float(settings["quantum"]),
        fermion_signs=FermionSigns(settings["fermion_signs"]),
        method=eigensolver,
    )


def _pair(refs: t.Sequence[str], data_dir: str | None) -> tuple[list[str], Graph, Graph]:
    graphs = resolve_graphs(refs, data_dir)
    if len(graphs) != 2:
        raise ArgumentError(f"expected exactly two graphs, got {len(graphs)}")
    (label1, g1), (label2, g2) = graphs
    return [label1, label2], g1, g2


def cmd_compare(args: argparse.Namespace) -> int:
    settings = _settings(args)
    labels, g1, g2 = _pair(args.graphs, settings["data_dir"])

    started = time.perf_counter()
    report = _run_compare(g1, g2, settings)
    elapsed = time.perf_counter() - started

    data = report.to_dict()
    parameters = {"method": str(report.method), **data["parameters"], "eigensolver": settings["eigensolver"]}
    run: RunReport = {
        "method": data["method"],
        "verdict": data["verdict"],
        "r_metric": data["r_metric"],
        "i_metric": data["i_metric"],
        "parameters": parameters,
        "inputs": labels,
        "timing_seconds": elapsed,
        "version": __version__,
    }
    if "multisets" in data:
        run["multisets"] = data["multisets"]
    if "first_distinguishing_step" in data:
        run["first_distinguishing_step"] = data["first_distinguishing_step"]

    if args.write_config:
        write_config(args.write_config, parameters)
    print(json.dumps(run, indent=2))

    if args.exit_verdict and report.verdict is Verdict.DISTINGUISHED:
        return EXIT_DISTINGUISHED
    return EXIT_OK


def _parse_params(text: str) -> SrgParams:
    try:
        n, k, lam, mu = (int(v) for v in text.split(","))
    except ValueError:
        raise ArgumentError(f"expected N,K,LAMBDA,MU, got {text!r}") from None
    return SrgParams(n, k, lam, mu)


def cmd_verify_srg(args: argparse.Namespace) -> int:
    settings = _settings(args)
    graphs = resolve_graphs([args.graph], settings["data_dir"])
    for label, g in graphs:
        prefix = f"{label}: " if len(graphs) > 1 else ""
        params = _parse_params(args.params) if args.params else detect_srg(g)
        if params is None:
            print(f"{prefix}not strongly regular")
            continue
        report = verify_srg_identities(g, params)
        if report.ok:
            print(f"{prefix}{params}, identities ok")
            continue
        print(f"{prefix}{params}, {len(report.violations)} identity violations")
        for violation in report.violations[: args.max_violations]:
            print(f"  {violation}")
    return EXIT_OK


def cmd_sweep_u(args: argparse.Namespace) -> int:
    settings = _settings(args)
    _, g1, g2 = _pair(args.graphs, settings["data_dir"])
    grid = u_grid(float(settings["u_from"]), float(settings["u_to"]), int(settings["u_steps"]))
    T, jobs, eigensolver = float(settings["T"]), int(settings["jobs"]), settings["eigensolver"]

    if jobs > 1:
        points = asyncio.run(u_sweep_concurrent(g1, g2, grid, T, jobs, eigensolver))
    else:
        points = u_sweep(g1, g2, grid, T, eigensolver)

    writer = csv.writer(sys.stdout, lineterminator="\n")
    writer.writerow(["u", "R", "I"])
    for point in points:
        writer.writerow([f"{point.u:.12g}", f"{point.r:.12g}", f"{point.i:.12g}"])
    return EXIT_OK


def cmd_corpus(args: argparse.Namespace) -> int:
    settings = _settings(args)
    data_dir = settings["data_dir"]
    if args.action == "list":
        for entry in builtin_corpus(data_dir):
            params = detect_srg(entry.graphs[0])
            print(
                f"{entry.name}\tn={entry.n}\tgraphs={len(entry.graphs)}"
                f"\tsrg={params or '-'}\t{entry.provenance}"
            )
        return EXIT_OK

    if not args.name:
        raise ArgumentError("corpus show needs an entry name")
    entry = corpus_entry(args.name, data_dir)
    if entry is None:
        raise CorpusError(args.name, "no such entry")
    if args.format == "g6":
        for g in entry.graphs:
            print(encode_graph6(g))
        return EXIT_OK
    print(
        json.dumps(
            {
                "name": entry.name,
                "provenance": entry.provenance,
                "graphs": [
                    {
                        "n": g.n,
                        "graph6": encode_graph6(g),
                        "edges": [[a + 1, b + 1] for a, b in g.edges()],
                        "srg": list(p.as_tuple()) if (p := detect_srg(g)) else None,
                    }
                    for g in entry.graphs
                ],
            },
            indent=2,
        )
    )
    return EXIT_OK


def cmd_ingest(args: argparse.Namespace) -> int:
    settings = _settings(args)
    data_dir = settings["data_dir"]
    if not data_dir:
        data_dir = os.environ.get(DATA_DIR_ENV)
    if not data_dir:
        raise ArgumentError(f"ingest needs --data-dir, a data_dir config key or ${DATA_DIR_ENV}")
    entry = ingest_pair(args.files, args.name, args.provenance, data_dir)
    print(f"ingested {entry.name} ({len(entry.graphs)} graphs, n={entry.n}) into {data_dir}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-v", "--verbose", action="store_true", help="log progress at DEBUG level")
    common.add_argument("--config", type=Path, help="TOML file with run parameters")
    common.add_argument("--data-dir", dest="data_dir", help="external corpus directory")
    common.add_argument("--eigensolver", choices=["lapack", "jacobi"])

    parser = argparse.ArgumentParser(
        prog="isoscreen", description="Screen graph pairs for non-isomorphism with dynamical invariants."
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    compare = sub.add_parser("compare", parents=[common], help="compare two graphs")
    compare.add_argument("graphs", nargs="+", help="graph files, corpus:NAME or corpus:NAME:i")
    compare.add_argument("--method", choices=[str(m) for m in Method])
    compare.add_argument("--potential", help="harmonic | quartic:A,B | saturating")
    compare.add_argument("--stats", choices=[str(s) for s in Statistics])
    compare.add_argument("--U", dest="U", type=float)
    compare.add_argument("--T", dest="T", type=float)
    compare.add_argument("--dt", type=float)
    compare.add_argument("--mobility", type=float)
    compare.add_argument("--normalize", choices=[str(n) for n in Normalization])
    compare.add_argument("--renormalize-each-step", dest="renormalize_each_step", action="store_true", default=None)
    compare.add_argument("--every-step", dest="every_step", action="store_true", default=None)
    compare.add_argument("--closed-form", dest="closed_form", action="store_true", default=None)
    compare.add_argument("--fermion-signs", dest="fermion_signs", choices=[str(s) for s in FermionSigns])
    compare.add_argument("--tol", type=float)
    compare.add_argument("--quantum", type=float)
    compare.add_argument("--threshold", type=float)
    compare.add_argument("--exit-verdict", action="store_true", help="exit 3 when Distinguished")
    compare.add_argument("--write-config", type=Path, help="save the effective parameters as TOML")
    compare.set_defaults(func=cmd_compare)

    verify = sub.add_parser("verify-srg", parents=[common], help="detect SRG parameters and check identities")
    verify.add_argument("graph")
    verify.add_argument("--params", help="check N,K,LAMBDA,MU instead of the detected parameters")
    verify.add_argument("--max-violations", type=int, default=10)
    verify.set_defaults(func=cmd_verify_srg)

    sweep = sub.add_parser("sweep-u", parents=[common], help="soft-core boson R and I over a U grid (CSV)")
    sweep.add_argument("graphs", nargs="+")
    sweep.add_argument("--from", dest="u_from", type=float)
    sweep.add_argument("--to", dest="u_to", type=float)
    sweep.add_argument("--steps", dest="u_steps", type=int)
    sweep.add_argument("--T", dest="T", type=float)
    sweep.add_argument("--jobs", type=int)
    sweep.set_defaults(func=cmd_sweep_u)

    corpus = sub.add_parser("corpus", parents=[common], help="list or show corpus entries")
    corpus.add_argument("action", nargs="?", choices=["list", "show"], default="list")
    corpus.add_argument("name", nargs="?")
    corpus.add_argument("--format", choices=["json", "g6"], default="json")
    corpus.set_defaults(func=cmd_corpus)

    ingest = sub.add_parser("ingest", parents=[common], help="add a graph pair to the data directory")
    ingest.add_argument("files", nargs="+")
    ingest.add_argument("--name", required=True)
    ingest.add_argument("--provenance", default="")
    ingest.set_defaults(func=cmd_ingest)

    return parser


def main(argv: t.Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    try:
        return args.func(args)
    except (Error, OSError, ValueError, ArithmeticError) as err:
        print(f"isoscreen: error: {err}", file=sys.stderr)
        return EXIT_DIAGNOSTIC


if __name__ == "__main__":
    sys.exit(main())
