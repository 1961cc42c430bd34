import enum
import logging
from dataclasses import dataclass, replace
from typing import Callable, Dict, List, Sequence, Tuple

import numpy as np

from skewspec.core.graphs import BipartiteOrientedGraph, OrientedGraph, skew_adjacency
from skewspec.core.linalg import skew_spectrum
from skewspec.core.products import orient_cartesian, orient_kronecker, orient_strong
from skewspec.core.random_graphs import random_bipartite_oriented, random_oriented_graph
from skewspec.core.spectra import (NONZERO_THRESHOLD, SpectrumComparison, SpectrumPrediction, compare,
                                   predict_cartesian, predict_kronecker, predict_strong)
from skewspec.services.config_service import Config

logger = logging.getLogger(__name__)

Predictor = Callable[[Sequence[float], int, Sequence[float], int], SpectrumPrediction]
Builder = Callable[[BipartiteOrientedGraph, OrientedGraph], OrientedGraph]


class Theorem(str, enum.Enum):
    KRONECKER = "kron"
    STRONG = "strong"
    CARTESIAN = "cartesian"


_THEOREMS: Dict[Theorem, Tuple[Builder, Predictor]] = {
    Theorem.KRONECKER: (orient_kronecker, predict_kronecker),
    Theorem.STRONG: (orient_strong, predict_strong),
    Theorem.CARTESIAN: (orient_cartesian, predict_cartesian),
}


@dataclass(frozen=True)
class TrialOutcome:
    m: int
    n: int
    comparison: SpectrumComparison


class VerificationService:
    """
    Checks closed-form spectrum predictions for oriented products against
    spectra computed from the product matrices.
    """

    def __init__(self, config: Config):
        """
        Initializes the VerificationService.

        :param config: Supplies the comparison tolerance and the RNG seed.
        """
        self.config = config

    def verify(self, h: BipartiteOrientedGraph, g: OrientedGraph, theorem: Theorem,
               perturb: float = 0.0) -> SpectrumComparison:
        """
        Predicts the spectrum of the oriented product from the factor spectra and compares.

        :param h: Bipartite factor labeled X-first.
        :param g: Arbitrary oriented factor.
        :param theorem: Which product orientation and prediction to use.
        :param perturb: Added to the largest predicted value; a negative control for the harness.
        :return: The comparison report.
        """
        build, predict = _THEOREMS[Theorem(theorem)]
        mu = skew_spectrum(skew_adjacency(h.oriented)).positive(NONZERO_THRESHOLD)
        lam = skew_spectrum(skew_adjacency(g)).positive(NONZERO_THRESHOLD)
        prediction = predict(mu, h.m, lam, g.n)
        if perturb and prediction.entries:
            (top, mult), *rest = prediction.entries
            prediction = replace(prediction, entries=((top + perturb, mult), *rest))
        elif perturb and prediction.zero_multiplicity >= 2:
            prediction = replace(prediction, zero_multiplicity=prediction.zero_multiplicity - 2,
                                 entries=((perturb, 1),))
        product = build(h, g)
        comparison = compare(prediction, skew_spectrum(skew_adjacency(product)), self.config.tolerance)
        logger.info("%s spectrum on order %d: %s (max deviation %.3e)", Theorem(theorem).value,
                    comparison.order, "pass" if comparison.passed else "FAIL", comparison.max_abs_dev)
        return comparison

    def random_factors(self, rng: np.random.Generator, m: int, n: int,
                       p: float = 0.5) -> Tuple[BipartiteOrientedGraph, OrientedGraph]:
        """Draws a random bipartite H of order m (both sides nonempty when m >= 2) and a random G of order n."""
        m1 = int(rng.integers(1, m)) if m >= 2 else m
        return random_bipartite_oriented(rng, m1, m - m1, p), random_oriented_graph(rng, n, p)

    def random_trials(self, theorem: Theorem, trials: int, m_max: int = 6, n_max: int = 5,
                      fixed_size: bool = False) -> List[TrialOutcome]:
        """
        Runs ``trials`` randomized comparisons with the configured seed.

        :param fixed_size: Use exactly ``m_max`` and ``n_max`` instead of drawing the orders.
        """
        rng = np.random.default_rng(self.config.seed)
        outcomes = []
        for _ in range(trials):
            m = m_max if fixed_size else int(rng.integers(1, m_max + 1))
            n = n_max if fixed_size else int(rng.integers(1, n_max + 1))
            h, g = self.random_factors(rng, m, n, p=float(rng.uniform(0.2, 1.0)))
            outcomes.append(TrialOutcome(m=m, n=n, comparison=self.verify(h, g, theorem)))
        failures = sum(not outcome.comparison.passed for outcome in outcomes)
        logger.info("%d randomized %s trials, %d failure(s)", trials, Theorem(theorem).value, failures)
        return outcomes
