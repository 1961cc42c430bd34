"""
Exact maximum-skew-energy certificates, the canonical seed orientations,
and the iterated product families built from them.

An oriented graph of order n and maximum degree D has skew energy at most
n * sqrt(D), with equality exactly when S^T S = D * I. That identity is
checked in integers, so a certificate never depends on floating point.
"""
import logging
import math
import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Any, Dict, Optional, Sequence, Tuple, Union

import numpy as np

from skewspec.core import linalg
from skewspec.core.graphs import (BipartiteOrientedGraph, OrientedGraph, complete_graph,
                                  orientation_from_bits, regularity, skew_adjacency)
from skewspec.core.linalg import IntMatrix
from skewspec.core.products import (orient_cartesian, orient_kronecker, orient_kronecker_bipartite,
                                    orient_lexicographic, orient_strong)
from skewspec.core.spectra import skew_energy
from skewspec.errors import CertificateFailed, ConstructionMismatch, SizeLimit, UnknownFamily

logger = logging.getLogger(__name__)

DEFAULT_SIZE_LIMIT = 4096
COMMUTING_SEARCH_LIMIT = 5
ENERGY_TOLERANCE = 1e-9

K4_SKEW = (
    (0, 1, 1, 1),
    (-1, 0, -1, 1),
    (-1, 1, 0, -1),
    (-1, -1, 1, 0),
)

# Lexicographically smallest 4x4 sign matrix with orthogonal rows (-1 before +1).
HADAMARD_BLOCK = (
    (-1, -1, -1, -1),
    (-1, -1, 1, 1),
    (-1, 1, -1, 1),
    (-1, 1, 1, -1),
)

FAMILY_NAMES = ("cartesian_c4k4", "kron_c4_iter", "kron_k4_iter", "strong_c4_iter", "lex_p2")


@dataclass(frozen=True)
class MaxEnergyCertificate:
    """
    Outcome of the exact test S^T S == delta * I.

    ``witness`` is None when the identity holds, otherwise the first
    violating entry ``(i, j, value)`` of S^T S in row-major order.
    """

    order: int
    degree: int
    holds: bool
    witness: Optional[Tuple[int, int, int]] = None
    energy: Optional[float] = None

    def describe_witness(self) -> str:
        if self.holds:
            return f"S^T S = {self.degree} I verified exactly"
        i, j, value = self.witness
        return f"(S^T S)[{i}][{j}] = {value}, expected {self.degree if i == j else 0}"

    def to_dict(self) -> Dict[str, Any]:
        return {
            "holds": self.holds,
            "order": self.order,
            "degree": self.degree,
            "energy": self.energy,
            "witness": self.describe_witness() if self.holds else list(self.witness),
        }


def certify_max_energy(s: IntMatrix, delta: int) -> MaxEnergyCertificate:
    """
    Checks S^T S = delta * I in exact integers.

    When the identity holds, the skew energy is computed too and must equal
    n * sqrt(delta) within 1e-9.

    :param s: A skew-adjacency matrix.
    :param delta: The maximum degree of the underlying graph.
    :return: The certificate, with the energy filled in when it holds.
    """
    s = linalg.require_skew_symmetric(s)
    n = s.shape[0]
    gram = linalg.matmul(linalg.transpose(s), s)
    violations = np.argwhere(gram != delta * linalg.identity(n))
    if len(violations):
        i, j = (int(x) for x in violations[0])
        return MaxEnergyCertificate(order=n, degree=delta, holds=False, witness=(i, j, int(gram[i, j])))

    energy = skew_energy(s)
    bound = n * math.sqrt(delta)
    if not math.isclose(energy, bound, rel_tol=1e-12, abs_tol=ENERGY_TOLERANCE):
        raise CertificateFailed(f"certified matrix has energy {energy!r}, bound is {bound!r}")
    return MaxEnergyCertificate(order=n, degree=delta, holds=True, energy=energy)


def certify_graph(g: OrientedGraph) -> MaxEnergyCertificate:
    """Certifies ``g`` against its own maximum degree."""
    return certify_max_energy(skew_adjacency(g), g.graph.max_degree())


def require_certified(g: OrientedGraph, label: str, degree: Optional[int] = None) -> MaxEnergyCertificate:
    """
    Certifies ``g`` or fails loudly.

    :param g: The orientation to check.
    :param label: Names ``g`` in the error message.
    :param degree: The expected regularity; defaults to the maximum degree of ``g``.
    :return: The passing certificate.
    :raises CertificateFailed: with the witness entry when S^T S != degree * I.
    """
    certificate = certify_max_energy(skew_adjacency(g), g.graph.max_degree() if degree is None else degree)
    if not certificate.holds:
        raise CertificateFailed(f"{label} fails the max-energy certificate: {certificate.describe_witness()}")
    return certificate


def hypercube(d: int, size_limit: int = DEFAULT_SIZE_LIMIT) -> OrientedGraph:
    """
    A max-energy orientation of Q_d, grown by repeated Cartesian products
    with the single arc P_2.
    """
    if d < 1:
        raise UnknownFamily(f"hypercube dimension must be at least 1, got {d}")
    if 2 ** d > size_limit:
        raise SizeLimit("hypercube order", 2 ** d, size_limit)
    p2 = BipartiteOrientedGraph.from_oriented(seed("p2"))
    cube = seed("p2")
    for _ in range(d - 1):
        cube = orient_cartesian(p2, cube)
    return cube


def _parse_seed_name(name: str) -> Tuple[str, Optional[int]]:
    name = name.strip().lower()
    match = re.fullmatch(r"(?:hypercube\((\d+)\)|hypercube:(\d+)|q(\d+))", name)
    if match:
        return "hypercube", int(next(group for group in match.groups() if group is not None))
    return name, None


@lru_cache(maxsize=None)
def seed(name: str) -> OrientedGraph:
    """
    Returns a canonical max-energy orientation.

    :param name: One of ``p2``, ``c4``, ``k4``, ``k44`` or ``hypercube(d)``
                 (also written ``hypercube:d`` or ``qd``).
    :return: The orientation, certified at construction.
    :raises CertificateFailed: if the constructed seed fails its certificate.
    """
    kind, dimension = _parse_seed_name(name)
    if kind == "p2":
        graph = OrientedGraph.from_arcs(2, [(0, 1)])
    elif kind == "c4":
        graph = OrientedGraph.from_arcs(4, [(0, 1), (1, 2), (2, 3), (0, 3)])
    elif kind == "k4":
        graph = OrientedGraph.from_skew(np.array(K4_SKEW, dtype=np.int64))
    elif kind == "k44":
        graph = OrientedGraph.from_skew(linalg.bipartite_block(np.array(HADAMARD_BLOCK, dtype=np.int64)))
    elif kind == "hypercube":
        graph = hypercube(dimension)
    else:
        raise UnknownFamily(f"unknown seed {name!r}; expected p2, c4, k4, k44 or hypercube(d)")
    require_certified(graph, f"seed {name}")
    return graph


def iterate_kronecker(h: Union[OrientedGraph, BipartiteOrientedGraph],
                      gs: Sequence[OrientedGraph]) -> OrientedGraph:
    """
    Folds the Kronecker orientation over ``gs`` from the left, each step using
    the bipartition inherited from the previous one.

    :param h: A bipartite max-energy orientation.
    :param gs: Max-energy orientations G_1..G_s.
    :return: The oriented product, certified with degree k * l_1 * ... * l_s.
    :raises CertificateFailed: if an input or the result fails its certificate.
    """
    if not gs:
        return h.oriented if isinstance(h, BipartiteOrientedGraph) else h
    current = h if isinstance(h, BipartiteOrientedGraph) else BipartiteOrientedGraph.from_oriented(h)
    degree = require_certified(current.oriented, "bipartite factor").degree
    for index, g in enumerate(gs, start=1):
        degree *= require_certified(g, f"factor G_{index}").degree
        current = orient_kronecker_bipartite(current, g)
        logger.debug("Kronecker step %d: order %d, degree %d", index, current.m, degree)
    require_certified(current.oriented, "iterated Kronecker product", degree)
    return current.oriented


def commutes(a: IntMatrix, b: IntMatrix) -> bool:
    """Exact test of AB == BA."""
    return bool(np.array_equal(linalg.matmul(a, b), linalg.matmul(b, a)))


def find_commuting_kn(g: OrientedGraph, limit: int = COMMUTING_SEARCH_LIMIT) -> Optional[OrientedGraph]:
    """
    Searches the orientations of K_n, n = |V(G)|, for a skew matrix S_3 with
    S_3^T S_3 = (n - 1) I that commutes with S_2 = S(G).

    Candidates are visited in orientation-code order (binary counting over
    the lexicographic edge list), so the first hit is reproducible.

    :return: The first such orientation, or None.
    :raises SizeLimit: if n exceeds ``limit``.
    """
    n = g.n
    if n > limit:
        raise SizeLimit("K_n commuting search order", n, limit)
    s2 = skew_adjacency(g)
    kn = complete_graph(n)
    target = (n - 1) * linalg.identity(n)
    for bits in range(1 << len(kn.edges)):
        candidate = orientation_from_bits(kn, bits)
        s3 = skew_adjacency(candidate)
        if np.array_equal(linalg.matmul(linalg.transpose(s3), s3), target) and commutes(s2, s3):
            logger.debug("commuting K_%d orientation found at code %d", n, bits)
            return candidate
    logger.info("no max-energy K_%d orientation commutes with the given graph", n)
    return None


def regularity_profile(k: int, l: int) -> Dict[str, int]:
    """Regularities reached at the same order m * n by the three product orientations."""
    return {"kronecker": k * l, "strong": k + l + k * l, "cartesian": k + l}


@dataclass(frozen=True)
class FamilySpec:
    name: str
    r: int

    def __post_init__(self):
        if self.name not in FAMILY_NAMES:
            raise UnknownFamily(f"unknown family {self.name!r}; expected one of {', '.join(FAMILY_NAMES)}")
        if self.r < 0:
            raise UnknownFamily(f"iteration depth must be nonnegative, got {self.r}")

    @property
    def expected_order(self) -> int:
        if self.name == "lex_p2":
            return 4 * 2 ** (self.r + 1)
        return 4 ** (self.r + 1)

    @property
    def expected_degree(self) -> int:
        r = self.r
        return {
            "cartesian_c4k4": 2 * r + 3,
            "kron_c4_iter": 3 * 2 ** r,
            "kron_k4_iter": 2 * 3 ** r,
            "strong_c4_iter": 4 * 3 ** r - 1,
            "lex_p2": 4 * (r + 1) + 2,
        }[self.name]

    @property
    def expected_energy(self) -> float:
        return self.expected_order * math.sqrt(self.expected_degree)


@dataclass(frozen=True)
class FamilyResult:
    spec: FamilySpec
    graph: OrientedGraph
    certificate: MaxEnergyCertificate

    @property
    def expected_order(self) -> int:
        return self.spec.expected_order

    @property
    def expected_degree(self) -> int:
        return self.spec.expected_degree

    @property
    def expected_energy(self) -> float:
        return self.spec.expected_energy

    @property
    def order_le_degree_squared(self) -> bool:
        return self.graph.n <= self.certificate.degree ** 2

    def to_dict(self) -> Dict[str, Any]:
        return {
            "name": self.spec.name,
            "r": self.spec.r,
            "expected_order": self.expected_order,
            "order": self.graph.n,
            "expected_degree": self.expected_degree,
            "degree": regularity(self.graph.graph),
            "expected_energy": self.expected_energy,
            "energy": self.certificate.energy,
            "certified": self.certificate.holds,
            "order_le_degree_squared": self.order_le_degree_squared,
        }


def _build_graph(spec: FamilySpec, size_limit: int) -> OrientedGraph:
    c4 = BipartiteOrientedGraph.from_oriented(seed("c4"))
    k4 = seed("k4")
    if spec.name == "kron_k4_iter":
        return iterate_kronecker(c4, [k4] * spec.r)
    if spec.name == "lex_p2":
        h = BipartiteOrientedGraph.from_oriented(hypercube(spec.r + 1, size_limit))
        g = seed("c4")
        kn = find_commuting_kn(g)
        if kn is None:
            raise CertificateFailed("no K_4 orientation commutes with the C_4 seed")
        return orient_lexicographic(h, g, kn)

    step = {
        "cartesian_c4k4": orient_cartesian,
        "kron_c4_iter": orient_kronecker,
        "strong_c4_iter": orient_strong,
    }[spec.name]
    graph = k4
    for _ in range(spec.r):
        graph = step(c4, graph)
    return graph


def build_family(spec: FamilySpec, size_limit: int = DEFAULT_SIZE_LIMIT) -> FamilyResult:
    """
    Builds the named iterated family at depth ``spec.r`` and certifies it.

    :raises SizeLimit: if the family order exceeds ``size_limit``.
    :raises ConstructionMismatch: if the built graph is not regular of the expected degree.
    :raises CertificateFailed: if the certificate does not hold.
    """
    if spec.expected_order > size_limit:
        raise SizeLimit(f"{spec.name} order at r={spec.r}", spec.expected_order, size_limit)
    graph = _build_graph(spec, size_limit)
    degree = regularity(graph.graph)
    if graph.n != spec.expected_order or degree != spec.expected_degree:
        raise ConstructionMismatch(
            f"{spec.name} r={spec.r}: built order {graph.n} degree {degree}, "
            f"expected order {spec.expected_order} degree {spec.expected_degree}")
    certificate = require_certified(graph, f"{spec.name} r={spec.r}", degree)
    logger.info("built %s r=%d: order %d, %d-regular, energy %.9f",
                spec.name, spec.r, graph.n, degree, certificate.energy)
    return FamilyResult(spec=spec, graph=graph, certificate=certificate)

