"""
Skew energy, closed-form spectrum predictions for oriented products, and
predicted-versus-computed comparison.
"""
import logging
import math
from dataclasses import dataclass, field
from typing import Any, Dict, Iterable, List, Sequence, Tuple

import numpy as np

from skewspec.core.linalg import IntMatrix, SkewSpectrum, skew_spectrum
from skewspec.errors import InvalidSpectrum, OrderMismatch

logger = logging.getLogger(__name__)

DEFAULT_TOLERANCE = 1e-8
NONZERO_THRESHOLD = 1e-9

__all__ = [
    "SkewSpectrum", "SpectrumPrediction", "SpectrumComparison", "skew_energy",
    "predict_kronecker", "predict_strong", "predict_cartesian", "compare",
]


@dataclass(frozen=True)
class SpectrumPrediction:
    """
    A predicted skew spectrum: every ``(value, multiplicity)`` entry stands for
    +value and -value, each ``multiplicity`` times, plus ``zero_multiplicity`` zeros.
    """

    entries: Tuple[Tuple[float, int], ...]
    zero_multiplicity: int

    @property
    def order(self) -> int:
        return 2 * sum(mult for _, mult in self.entries) + self.zero_multiplicity

    def expand(self) -> Tuple[float, ...]:
        values: List[float] = [0.0] * self.zero_multiplicity
        for value, mult in self.entries:
            values.extend([value] * mult)
            values.extend([-value] * mult)
        return tuple(sorted(values))

    @property
    def energy(self) -> float:
        return 2.0 * sum(value * mult for value, mult in self.entries)


def _merged(pairs: Iterable[Tuple[float, int]]) -> Tuple[Tuple[float, int], ...]:
    merged: List[List] = []
    for value, mult in sorted(pairs, key=lambda p: -p[0]):
        if mult <= 0:
            continue
        if merged and math.isclose(merged[-1][0], value, rel_tol=1e-12, abs_tol=1e-12):
            merged[-1][1] += mult
        else:
            merged.append([value, mult])
    return tuple((float(v), int(m)) for v, m in merged)


def _check_factor(values: Sequence[float], order: int, label: str) -> None:
    if order < 0:
        raise InvalidSpectrum(f"{label}: negative order {order}")
    if any(not v > 0 for v in values):
        raise InvalidSpectrum(f"{label}: nonzero skew eigenvalues must be positive, got {list(values)}")
    if 2 * len(values) > order:
        raise InvalidSpectrum(f"{label}: {len(values)} +/- pairs do not fit in order {order}")


def skew_energy(s: IntMatrix) -> float:
    """Sum of the absolute values of the skew eigenvalues of ``s``."""
    return skew_spectrum(s).energy


def predict_kronecker(mu: Sequence[float], m: int, lam: Sequence[float], n: int) -> SpectrumPrediction:
    """
    Skew spectrum of the Kronecker orientation of a bipartite H^tau and G^sigma.

    :param mu: Positive values mu_1..mu_t of H (one per +/- pair, repeats allowed).
    :param m: Order of H.
    :param lam: Positive values lambda_1..lambda_r of G.
    :param n: Order of G.
    :return: +/- mu_j * lambda_k with multiplicity 2 for every (j, k), and mn - 4rt zeros.
    """
    _check_factor(mu, m, "H")
    _check_factor(lam, n, "G")
    entries = _merged((mu_j * lam_k, 2) for mu_j in mu for lam_k in lam)
    return SpectrumPrediction(entries=entries, zero_multiplicity=m * n - 4 * len(lam) * len(mu))


def predict_strong(mu: Sequence[float], m: int, lam: Sequence[float], n: int) -> SpectrumPrediction:
    """
    Skew spectrum of the strong-product orientation.

    The four families are +/- sqrt((mu_j^2 + 1)(lambda_k^2 + 1) - 1) twice each,
    +/- mu_j with multiplicity n - 2r, +/- lambda_k with multiplicity m - 2t,
    and (m - 2t)(n - 2r) zeros.
    """
    _check_factor(mu, m, "H")
    _check_factor(lam, n, "G")
    t, r = len(mu), len(lam)
    pairs = [(math.sqrt((mu_j ** 2 + 1.0) * (lam_k ** 2 + 1.0) - 1.0), 2) for mu_j in mu for lam_k in lam]
    pairs += [(mu_j, n - 2 * r) for mu_j in mu]
    pairs += [(lam_k, m - 2 * t) for lam_k in lam]
    return SpectrumPrediction(entries=_merged(pairs), zero_multiplicity=(m - 2 * t) * (n - 2 * r))


def predict_cartesian(mu: Sequence[float], m: int, lam: Sequence[float], n: int) -> SpectrumPrediction:
    """
    Skew spectrum of the Cartesian orientation, from
    S-bar S-bar^T = -(I_m (x) S_2^2 + S_1^2 (x) I_n).

    The families are +/- sqrt(mu_j^2 + lambda_k^2) twice each, +/- mu_j with
    multiplicity n - 2r, +/- lambda_k with multiplicity m - 2t, and
    (m - 2t)(n - 2r) zeros.
    """
    _check_factor(mu, m, "H")
    _check_factor(lam, n, "G")
    t, r = len(mu), len(lam)
    pairs = [(math.hypot(mu_j, lam_k), 2) for mu_j in mu for lam_k in lam]
    pairs += [(mu_j, n - 2 * r) for mu_j in mu]
    pairs += [(lam_k, m - 2 * t) for lam_k in lam]
    return SpectrumPrediction(entries=_merged(pairs), zero_multiplicity=(m - 2 * t) * (n - 2 * r))


@dataclass(frozen=True)
class SpectrumComparison:
    """
    Outcome of matching a predicted spectrum against a computed one.

    ``max_abs_dev`` is the largest entrywise gap between the two sorted
    value lists; ``passed`` holds when it stays within ``tolerance``.
    """

    passed: bool
    max_abs_dev: float
    order: int
    tolerance: float
    predicted: Tuple[float, ...] = field(repr=False)
    computed: Tuple[float, ...] = field(repr=False)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "pass": self.passed,
            "max_abs_dev": self.max_abs_dev,
            "order": self.order,
            "predicted": list(self.predicted),
            "computed": list(self.computed),
        }


def compare(prediction: SpectrumPrediction, computed: SkewSpectrum,
            tol: float = DEFAULT_TOLERANCE) -> SpectrumComparison:
    """
    Matches the expanded prediction against a computed spectrum, value by value.

    :raises OrderMismatch: if the two spectra have different sizes.
    """
    predicted = prediction.expand()
    if len(predicted) != computed.order:
        raise OrderMismatch(f"prediction has order {len(predicted)}, computed spectrum {computed.order}")
    if predicted:
        deviation = float(np.max(np.abs(np.array(predicted) - np.array(computed.values))))
    else:
        deviation = 0.0
    passed = deviation <= tol
    logger.debug("spectrum comparison on order %d: max deviation %.3e (%s)",
                 len(predicted), deviation, "pass" if passed else "fail")
    return SpectrumComparison(passed=passed, max_abs_dev=deviation, order=len(predicted),
                              tolerance=tol, predicted=predicted, computed=computed.values)
