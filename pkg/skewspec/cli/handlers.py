import argparse
import json
import logging
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, TextIO

import numpy as np

from skewspec.core.graphs import (BipartiteOrientedGraph, Graph, OrientedGraph, default_orientation,
                                  regularity, skew_adjacency)
from skewspec.core.linalg import skew_spectrum
from skewspec.core.maxenergy import (FamilySpec, build_family, certify_max_energy, regularity_profile,
                                     seed)
from skewspec.core.products import ProductKind, orient_product
from skewspec.core.search import MAX_ENUMERATION_EDGES, energy_histogram, search_records
from skewspec.errors import EXIT_FAILURE, EXIT_OK, GraphError, SizeLimit
from skewspec.services.config_service import Config
from skewspec.services.verification_service import Theorem, VerificationService
from skewspec.storage.exporters import matrix_csv, spectrum_dict, to_json
from skewspec.storage.storage_interface import GraphStorage

logger = logging.getLogger(__name__)

SEED_PREFIX = "seed:"


@dataclass
class CommandContext:
    """Services and settings shared by every command handler."""

    config: Config
    storages: Sequence[GraphStorage]
    verification_service: VerificationService
    out: TextIO = field(default_factory=lambda: sys.stdout)

    def storage_for(self, path: str) -> GraphStorage:
        for storage in self.storages:
            if storage.handles(path):
                return storage
        return self.storages[-1]

    def emit(self, text: str = "") -> None:
        print(text, file=self.out)


def format_number(value: Optional[float]) -> str:
    """Every number in text reports carries 9 decimal places."""
    return "n/a" if value is None else f"{value:.9f}"


def _seed_name(ref: str) -> Optional[str]:
    # A bare name such as "c4" is a seed only when no file of that name exists.
    if ref.startswith(SEED_PREFIX):
        return ref[len(SEED_PREFIX):]
    if not Path(ref).exists() and not Path(ref).suffix:
        return ref
    return None


def _load_oriented(ref: str, context: CommandContext, undirected: bool = False) -> OrientedGraph:
    """Reads a graph file, or builds a canonical seed for ``seed:<name>`` or a bare seed name."""
    name = _seed_name(ref)
    if name is not None:
        return seed(name)
    storage = context.storage_for(ref)
    if undirected:
        return default_orientation(storage.load(ref, undirected=True))
    return storage.load(ref)


def _load_graph(ref: str, context: CommandContext, undirected: bool = False) -> Graph:
    name = _seed_name(ref)
    if name is not None:
        return seed(name).graph
    storage = context.storage_for(ref)
    return storage.load(ref, undirected=True) if undirected else storage.load(ref).graph


def _graph_summary(g: OrientedGraph) -> Dict[str, Any]:
    s = skew_adjacency(g)
    spectrum = skew_spectrum(s)
    degree = regularity(g.graph)
    certificate = certify_max_energy(s, degree) if degree is not None else None
    return {
        "order": g.n,
        "arcs": len(g.arcs),
        "degree": degree,
        "values": list(spectrum.values),
        "multiplicity_paired": True,
        "energy": spectrum.energy,
        "certified": certificate.holds if certificate else False,
        "certificate": certificate.to_dict() if certificate else None,
    }


def _emit_summary(summary: Dict[str, Any], context: CommandContext, with_spectrum: bool = True) -> None:
    if context.config.output == "json":
        context.emit(to_json(summary))
        return
    if context.config.output == "csv":
        context.emit("value")
        for value in summary["values"]:
            context.emit(format_number(value))
        return
    context.emit(f"order: {summary['order']}")
    context.emit(f"regular: {summary['degree'] if summary['degree'] is not None else 'no'}")
    if with_spectrum:
        context.emit("spectrum: " + " ".join(format_number(v) for v in summary["values"]))
    context.emit(f"energy: {format_number(summary['energy'])}")
    context.emit(f"certified: {'true' if summary['certified'] else 'false'}")
    if summary["certificate"] and not summary["certified"]:
        context.emit(f"witness: {summary['certificate']['witness']}")


def spectrum_command(args: argparse.Namespace, context: CommandContext) -> int:
    """Handles ``spectrum``: sorted skew spectrum, energy and max-energy certificate."""
    g = _load_oriented(args.input, context, args.undirected)
    _guard_order(g.n, context)
    _emit_summary(_graph_summary(g), context)
    return EXIT_OK


def _guard_order(order: int, context: CommandContext) -> None:
    if order > context.config.size_limit:
        raise SizeLimit("graph order", order, context.config.size_limit)


def product_command(args: argparse.Namespace, context: CommandContext) -> int:
    """Handles ``product``: builds the oriented product, optionally writes it, and reports on it."""
    h_raw = _load_oriented(args.h, context)
    g = _load_oriented(args.g, context)
    _guard_order(h_raw.n * g.n, context)
    h = BipartiteOrientedGraph.from_oriented(h_raw)
    kn = _load_oriented(args.kn, context) if args.kn else None
    product = orient_product(h, g, ProductKind(args.kind), kn)
    logger.info("built %s product on %d vertices", args.kind, product.n)

    if args.out:
        context.storage_for(args.out).save(product, args.out)
        logger.info("wrote oriented product to %s", args.out)

    summary = _graph_summary(product)
    k, l = regularity(h.oriented.graph), regularity(g.graph)
    if k is not None and l is not None:
        summary["regularity_profile"] = regularity_profile(k, l)
    _emit_summary(summary, context, with_spectrum=False)
    if context.config.output == "text" and "regularity_profile" in summary:
        profile = summary["regularity_profile"]
        context.emit("same-order regularities: " + ", ".join(f"{name} {value}" for name, value in profile.items()))
    return EXIT_OK


def verify_command(args: argparse.Namespace, context: CommandContext) -> int:
    """Handles ``verify``: predicted versus computed spectra; exit code 0 iff every comparison passes."""
    service = context.verification_service
    theorem = Theorem(args.theorem)
    if args.random:
        outcomes = service.random_trials(theorem, args.trials, args.m, args.n, fixed_size=True)
        reports = [outcome.comparison.to_dict() for outcome in outcomes]
        if args.perturb:
            h, g = service.random_factors(np.random.default_rng(context.config.seed), args.m, args.n)
            reports.append(service.verify(h, g, theorem, perturb=args.perturb).to_dict())
    else:
        if not (args.h and args.g):
            raise GraphError("verify needs H and G graphs, or --random")
        h = BipartiteOrientedGraph.from_oriented(_load_oriented(args.h, context))
        g = _load_oriented(args.g, context)
        _guard_order(h.m * g.n, context)
        reports = [service.verify(h, g, theorem, perturb=args.perturb).to_dict()]

    passed = all(report["pass"] for report in reports)
    if context.config.output == "text":
        for report in reports:
            context.emit(f"order {report['order']}: {'pass' if report['pass'] else 'FAIL'} "
                         f"max_abs_dev {format_number(report['max_abs_dev'])}")
        context.emit(f"overall: {'pass' if passed else 'FAIL'}")
    else:
        context.emit(to_json(reports[0] if len(reports) == 1 else reports))
    return EXIT_OK if passed else EXIT_FAILURE


def family_command(args: argparse.Namespace, context: CommandContext) -> int:
    """Handles ``family``: builds one iterated max-energy family and compares it to its closed form."""
    result = build_family(FamilySpec(name=args.name, r=args.r), size_limit=context.config.size_limit)
    report = result.to_dict()
    if args.out:
        context.storage_for(args.out).save(result.graph, args.out)
    if context.config.output == "json":
        context.emit(to_json(report))
    else:
        context.emit(f"family: {report['name']} r={report['r']}")
        context.emit(f"order: expected {report['expected_order']}, actual {report['order']}")
        context.emit(f"degree: expected {report['expected_degree']}, actual {report['degree']}")
        context.emit(f"energy: expected {format_number(report['expected_energy'])}, "
                     f"actual {format_number(report['energy'])}")
        context.emit(f"certified: {'true' if report['certified'] else 'false'}")
    return EXIT_OK


def search_command(args: argparse.Namespace, context: CommandContext) -> int:
    """Handles ``search``: exhaustive orientation search, one JSON line per orientation reported."""
    g = _load_graph(args.input, context, args.undirected)
    workers = context.config.workers
    if args.histogram:
        rows: List[Dict[str, Any]] = [{"energy": energy, "count": count}
                                      for energy, count in energy_histogram(g, workers=workers)]
    else:
        rows = search_records(g, max_edges=MAX_ENUMERATION_EDGES, workers=workers, include_all=args.all)

    for row in rows:
        if context.config.output == "text":
            context.emit("  ".join(f"{key}={format_number(value) if isinstance(value, float) else value}"
                                   for key, value in row.items()))
        else:
            context.emit(json.dumps(row))
    if not args.histogram:
        logger.info("%d certified orientation(s)", sum(row["certified"] for row in rows))
    return EXIT_OK


def export_command(args: argparse.Namespace, context: CommandContext) -> int:
    """Handles ``export``: skew-adjacency CSV, spectrum JSON, or the graph itself."""
    g = _load_oriented(args.input, context, args.undirected)
    _guard_order(g.n, context)
    if args.what == "matrix":
        text = matrix_csv(skew_adjacency(g))
    elif args.what == "spectrum":
        text = to_json(spectrum_dict(skew_spectrum(skew_adjacency(g)))) + "\n"
    else:
        target = args.out or ".graph"
        text = context.storage_for(target).dumps(g)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
        logger.info("exported %s to %s", args.what, args.out)
    else:
        context.out.write(text)
    return EXIT_OK
