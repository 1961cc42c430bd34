"""
Exhaustive search over every orientation of a small graph.

An orientation is encoded as an integer whose bit e reverses the default
(smaller -> larger endpoint) direction of edge e in lexicographic edge
order. Codes are visited by binary counting; parallel runs split the code
range and merge back into ascending order.
"""
import logging
import math
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Any, Dict, Iterator, List, Tuple

import numpy as np

from skewspec.core import linalg
from skewspec.core.graphs import (Edge, Graph, OrientedGraph, orientation_bits, orientation_from_bits,
                                  regularity)
from skewspec.core.spectra import skew_energy
from skewspec.errors import NotRegular, SizeLimit

logger = logging.getLogger(__name__)

MAX_ENUMERATION_EDGES = 24
MAX_HISTOGRAM_EDGES = 20
HISTOGRAM_BUCKETS_PER_UNIT = 1_000_000


@dataclass(frozen=True)
class OrientationCode:
    """An orientation of ``graph`` named by its code ``bits``."""

    graph: Graph
    bits: int

    @property
    def edge_order(self) -> Tuple[Edge, ...]:
        return self.graph.sorted_edges

    def orientation(self) -> OrientedGraph:
        return orientation_from_bits(self.graph, self.bits)

    @classmethod
    def of(cls, h: OrientedGraph) -> "OrientationCode":
        return cls(graph=h.graph, bits=orientation_bits(h))

    def complement(self) -> "OrientationCode":
        """The code of the fully reversed orientation."""
        return OrientationCode(graph=self.graph, bits=self.bits ^ ((1 << len(self.graph.edges)) - 1))


class _SkewBuilder:
    """Builds skew-adjacency matrices for many codes of one graph without re-deriving the edge list."""

    def __init__(self, g: Graph):
        self.n = g.n
        edges = np.array(g.sorted_edges, dtype=np.int64).reshape(-1, 2)
        self.tails, self.heads = edges[:, 0], edges[:, 1]
        self.shifts = np.arange(len(edges), dtype=np.int64)

    def matrix(self, bits: int) -> linalg.IntMatrix:
        signs = 1 - 2 * ((bits >> self.shifts) & 1)
        s = np.zeros((self.n, self.n), dtype=np.int64)
        s[self.tails, self.heads] = signs
        s[self.heads, self.tails] = -signs
        return s


def _certified_codes(g: Graph, degree: int, start: int, stop: int) -> List[int]:
    builder = _SkewBuilder(g)
    target = degree * linalg.identity(g.n)
    codes = []
    for bits in range(start, stop):
        s = builder.matrix(bits)
        if np.array_equal(linalg.matmul(linalg.transpose(s), s), target):
            codes.append(bits)
    return codes


def _energies(g: Graph, start: int, stop: int) -> List[float]:
    builder = _SkewBuilder(g)
    return [skew_energy(builder.matrix(bits)) for bits in range(start, stop)]


def _chunks(total: int, workers: int) -> Iterator[Tuple[int, int]]:
    size = max(1, math.ceil(total / max(1, workers)))
    for start in range(0, total, size):
        yield start, min(total, start + size)


def _run_partitioned(func, g: Graph, total: int, workers: int, *args) -> List:
    ranges = list(_chunks(total, workers))
    if workers <= 1 or len(ranges) == 1:
        return [item for start, stop in ranges for item in func(g, *args, start, stop)]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        futures = [pool.submit(func, g, *args, start, stop) for start, stop in ranges]
        return [item for future in futures for item in future.result()]


def _require_size(g: Graph, limit: int) -> None:
    if len(g.edges) > limit:
        raise SizeLimit("edge count", len(g.edges), limit)


def enumerate_max_energy(g: Graph, max_edges: int = MAX_ENUMERATION_EDGES,
                         workers: int = 1) -> List[OrientationCode]:
    """
    Tests every orientation of a k-regular graph against S^T S = k I.

    :param g: A regular graph.
    :param max_edges: Largest edge count accepted.
    :param workers: Processes to split the code range over.
    :return: All passing codes in increasing numeric order.
    :raises NotRegular: if ``g`` is not regular.
    :raises SizeLimit: if ``g`` has more than ``max_edges`` edges.
    """
    degree = regularity(g)
    if degree is None:
        raise NotRegular(g.degrees())
    _require_size(g, max_edges)
    total = 1 << len(g.edges)
    codes = sorted(_run_partitioned(_certified_codes, g, total, workers, degree))
    logger.info("%d of %d orientations reach the maximum skew energy %d*sqrt(%d)",
                len(codes), total, g.n, degree)
    return [OrientationCode(graph=g, bits=bits) for bits in codes]


def energy_histogram(g: Graph, max_edges: int = MAX_HISTOGRAM_EDGES,
                     workers: int = 1) -> List[Tuple[float, int]]:
    """
    Skew energy of every orientation, bucketed at 1e-6 and sorted by descending energy.

    :raises SizeLimit: if ``g`` has more than ``max_edges`` edges.
    """
    _require_size(g, max_edges)
    total = 1 << len(g.edges)
    energies = _run_partitioned(_energies, g, total, workers)
    buckets = Counter(round(energy * HISTOGRAM_BUCKETS_PER_UNIT) for energy in energies)
    return [(key / HISTOGRAM_BUCKETS_PER_UNIT, count) for key, count in sorted(buckets.items(), reverse=True)]


def search_records(g: Graph, max_edges: int = MAX_ENUMERATION_EDGES, workers: int = 1,
                   include_all: bool = False) -> List[Dict[str, Any]]:
    """
    One ``{"code", "energy", "certified"}`` record per certified orientation,
    or per orientation when ``include_all`` is set.
    """
    certified = {code.bits for code in enumerate_max_energy(g, max_edges, workers)}
    codes = range(1 << len(g.edges)) if include_all else sorted(certified)
    builder = _SkewBuilder(g)
    return [{"code": bits, "energy": skew_energy(builder.matrix(bits)), "certified": bits in certified}
            for bits in codes]


def switch(h: OrientedGraph, vertex: int) -> OrientedGraph:
    """
    Reverses every arc at ``vertex``; S becomes D S D with D = diag(+/-1).

    Switching is a similarity, so the spectrum and the certificate are unchanged.

    :param h: The orientation to switch.
    :param vertex: The vertex whose arcs are reversed.
    :return: The switched orientation on the same underlying graph.
    """
    arcs = frozenset((v, u) if vertex in (u, v) else (u, v) for u, v in h.arcs)
    return OrientedGraph(graph=h.graph, arcs=arcs)


def switching_orbit(code: OrientationCode) -> List[int]:
    """All codes reachable from ``code`` by single-vertex switchings, ascending."""
    seen = {code.bits}
    frontier = [code.orientation()]
    while frontier:
        current = frontier.pop()
        for vertex in range(current.n):
            switched = switch(current, vertex)
            bits = orientation_bits(switched)
            if bits not in seen:
                seen.add(bits)
                frontier.append(switched)
    return sorted(seen)

