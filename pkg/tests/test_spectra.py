import math

import numpy as np
import pytest
from hypothesis import given, seed, settings

from skewspec.core import linalg
from skewspec.core.graphs import skew_adjacency
from skewspec.core.linalg import skew_spectrum
from skewspec.core.products import orient_cartesian, orient_kronecker, orient_strong
from skewspec.core.spectra import (NONZERO_THRESHOLD, SpectrumPrediction, compare, predict_cartesian,
                                   predict_kronecker, predict_strong, skew_energy)
from skewspec.errors import InvalidSpectrum, NotSkewSymmetric, OrderMismatch
from strategies import bipartite_graphs, oriented_graphs

ROOT2, ROOT3 = math.sqrt(2.0), math.sqrt(3.0)


def positive_half(g):
    return skew_spectrum(skew_adjacency(g)).positive(NONZERO_THRESHOLD)


def assert_entries(prediction, expected):
    assert len(prediction.entries) == len(expected)
    for (value, mult), (expected_value, expected_mult) in zip(prediction.entries, expected):
        assert value == pytest.approx(expected_value, abs=1e-12)
        assert mult == expected_mult


def test_skew_energy_of_seeds(c4, k4):
    assert skew_energy(skew_adjacency(c4)) == pytest.approx(4 * ROOT2, abs=1e-9)
    assert skew_energy(skew_adjacency(k4)) == pytest.approx(4 * ROOT3, abs=1e-9)
    assert skew_energy(np.zeros((5, 5), dtype=np.int64)) == 0.0
    with pytest.raises(NotSkewSymmetric):
        skew_energy([[0, 1], [0, 0]])


def test_predict_kronecker_examples():
    prediction = predict_kronecker([ROOT2, ROOT2], 4, [ROOT3, ROOT3], 4)
    assert_entries(prediction, [(math.sqrt(6.0), 8)])
    assert prediction.zero_multiplicity == 0
    assert prediction.energy == pytest.approx(16 * math.sqrt(6.0))

    empty = predict_kronecker([], 3, [1.0], 2)
    assert empty.entries == () and empty.zero_multiplicity == 6

    small = predict_kronecker([2.0], 2, [1.0], 2)
    assert_entries(small, [(2.0, 2)])
    assert small.zero_multiplicity == 0


def test_predict_strong_examples():
    prediction = predict_strong([ROOT2, ROOT2], 4, [ROOT3, ROOT3], 4)
    assert_entries(prediction, [(math.sqrt(11.0), 8)])
    assert prediction.zero_multiplicity == 0

    edgeless_g = predict_strong([ROOT2], 2, [], 3)
    assert_entries(edgeless_g, [(ROOT2, 3)])
    assert edgeless_g.zero_multiplicity == 0

    nothing = predict_strong([], 3, [], 2)
    assert nothing.entries == () and nothing.zero_multiplicity == 6


def test_predict_cartesian_example():
    prediction = predict_cartesian([ROOT2, ROOT2], 4, [ROOT3, ROOT3], 4)
    assert_entries(prediction, [(math.sqrt(5.0), 8)])
    assert prediction.order == 16


@pytest.mark.parametrize("predict", [predict_kronecker, predict_strong, predict_cartesian])
def test_predictions_reject_impossible_spectra(predict):
    with pytest.raises(InvalidSpectrum):
        predict([1.0, 1.0], 3, [1.0], 2)
    with pytest.raises(InvalidSpectrum):
        predict([0.0], 2, [1.0], 2)


def test_compare_examples(c4_bipartite, k4):
    prediction = predict_kronecker(positive_half(c4_bipartite.oriented), 4, positive_half(k4), 4)
    computed = skew_spectrum(skew_adjacency(orient_kronecker(c4_bipartite, k4)))
    report = compare(prediction, computed)
    assert report.passed and report.max_abs_dev < 1e-8

    itself = SpectrumPrediction(entries=((2.0, 1), (1.0, 2)), zero_multiplicity=1)
    expanded = linalg.SkewSpectrum(values=itself.expand())
    assert compare(itself, expanded).max_abs_dev == 0.0

    zeros = SpectrumPrediction(entries=(), zero_multiplicity=16)
    assert compare(zeros, skew_spectrum(np.zeros((16, 16), dtype=np.int64))).passed


def test_compare_report_and_order_mismatch():
    prediction = SpectrumPrediction(entries=((1.0, 1),), zero_multiplicity=0)
    report = compare(prediction, linalg.SkewSpectrum(values=(-1.5, 1.5)), tol=1e-8)
    assert not report.passed
    assert report.to_dict() == {"pass": False, "max_abs_dev": 0.5, "order": 2,
                                "predicted": [-1.0, 1.0], "computed": [-1.5, 1.5]}
    with pytest.raises(OrderMismatch):
        compare(prediction, linalg.SkewSpectrum(values=(0.0,)))


@seed(20240701)
@settings(max_examples=100, deadline=None)
@given(bipartite_graphs(max_m=6), oriented_graphs(min_n=1, max_n=5))
def test_kronecker_prediction_matches_computed_spectrum(h, g):
    prediction = predict_kronecker(positive_half(h.oriented), h.m, positive_half(g), g.n)
    computed = skew_spectrum(skew_adjacency(orient_kronecker(h, g)))
    assert compare(prediction, computed, tol=1e-8).passed


@seed(20240702)
@settings(max_examples=100, deadline=None)
@given(bipartite_graphs(max_m=6), oriented_graphs(min_n=1, max_n=5))
def test_strong_prediction_matches_computed_spectrum(h, g):
    prediction = predict_strong(positive_half(h.oriented), h.m, positive_half(g), g.n)
    computed = skew_spectrum(skew_adjacency(orient_strong(h, g)))
    assert compare(prediction, computed, tol=1e-8).passed


@seed(20240703)
@settings(max_examples=100, deadline=None)
@given(bipartite_graphs(max_m=6), oriented_graphs(min_n=1, max_n=5))
def test_cartesian_prediction_matches_computed_spectrum(h, g):
    prediction = predict_cartesian(positive_half(h.oriented), h.m, positive_half(g), g.n)
    computed = skew_spectrum(skew_adjacency(orient_cartesian(h, g)))
    assert compare(prediction, computed, tol=1e-8).passed


@seed(20240704)
@settings(max_examples=100, deadline=None)
@given(oriented_graphs(max_n=5), oriented_graphs(max_n=5))
def test_energy_is_additive_over_disjoint_unions(g1, g2):
    s1, s2 = skew_adjacency(g1), skew_adjacency(g2)
    union = linalg.block_diagonal([s1, s2])
    assert skew_energy(union) == pytest.approx(skew_energy(s1) + skew_energy(s2), abs=1e-9)


def test_cartesian_energy_of_seed_pairs(c4_bipartite, p2_bipartite, c4, k4):
    assert skew_energy(skew_adjacency(orient_cartesian(c4_bipartite, k4))) == pytest.approx(
        16 * math.sqrt(5.0), abs=1e-9)
    assert skew_energy(skew_adjacency(orient_cartesian(p2_bipartite, c4))) == pytest.approx(
        8 * ROOT3, abs=1e-9)
