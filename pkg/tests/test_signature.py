import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import exact_signature_level, random_polyline
from siginsert.signature import (PiecewiseLinearPath, chen_concat, normalised_level,
                                 path_signature, segment_signature, signature_inverse)
from siginsert.tensor import NormKind, TruncatedTensorSeries, level_norm

PEAK = [(0, 0), (1, 2), (4, 0)]


def test_segment_signature_levels():
    sig = segment_signature([1, 2], 2)
    assert sig[0].tolist() == [1.0]
    assert sig[1].tolist() == [1.0, 2.0]
    assert sig[2].tolist() == [0.5, 1.0, 1.0, 2.0]
    assert segment_signature([3, -2], 1)[1].tolist() == [3.0, -2.0]


def test_zero_increment_is_identity():
    sig = segment_signature([0.0], 3)
    assert [b.tolist() for b in sig.levels] == [[1.0], [0.0], [0.0], [0.0]]


def test_chen_concat_two_segments():
    sig = chen_concat(segment_signature([1, 2], 2), segment_signature([3, -2], 2))
    assert sig[1].tolist() == [4.0, 0.0]
    # word (1,1): 1/2 + 1*3 + 9/2
    assert sig[2][0] == pytest.approx(8.0, abs=1e-15)


def test_chen_concat_neutral_element():
    b = path_signature(PEAK, 4)
    out = chen_concat(TruncatedTensorSeries.identity(2, 4), b)
    assert all(np.array_equal(x, y) for x, y in zip(out.levels, b.levels))


def test_chen_concat_shape_mismatch():
    with pytest.raises(ValueError):
        chen_concat(segment_signature([1, 0], 2), segment_signature([1, 0], 3))


def test_peak_level1_is_total_increment():
    assert path_signature(PEAK, 3)[1].tolist() == [4.0, 0.0]


def test_single_segment_path():
    a = path_signature([(1, 1), (4, -1)], 5)
    b = segment_signature([3, -2], 5)
    assert a.max_abs_diff(b) == 0.0


def test_path_then_reversal_is_identity():
    path = PiecewiseLinearPath(PEAK)
    sig = chen_concat(path_signature(path, 6), path_signature(path.reversed(), 6))
    assert sig.max_abs_diff(TruncatedTensorSeries.identity(2, 6)) <= 1e-12


@pytest.mark.parametrize("vertices", [PEAK, [(0, 0, 0), (1, 0, 2), (1, 1, 1), (-1, 2, 0)],
                                      [(0, 0), (0, 2), (1, 2), (1, 0), (3, 1)]])
def test_against_exact_iterated_integrals(vertices):
    sig = path_signature(vertices, 4)
    for n in range(5):
        exact = np.array([float(c) for c in exact_signature_level(vertices, n)])
        assert np.max(np.abs(sig[n] - exact)) <= 1e-12 * max(1.0, np.max(np.abs(exact)))


def test_collinear_vertices_do_not_change_signature():
    a = path_signature([(0, 0), (2, 1), (2, 3)], 5)
    b = path_signature([(0, 0), (0.5, 0.25), (2, 1), (2, 2), (2, 3)], 5)
    assert a.max_abs_diff(b) <= 1e-12


def test_normalised_level():
    assert normalised_level(segment_signature([1, 0], 3), 3, 1.0)[0] == 1.0
    assert normalised_level(segment_signature([2, 0], 2), 2, 2.0)[0] == 1.0
    lattice = path_signature([(0, 0), (0, 0.5), (0.5, 0.5)], 1)
    assert normalised_level(lattice, 1, 1.0).tolist() == [0.5, 0.5]
    with pytest.raises(ValueError):
        normalised_level(lattice, 1, 0.0)


def test_signature_inverse_examples():
    ident = TruncatedTensorSeries.identity(2, 3)
    assert signature_inverse(ident).max_abs_diff(ident) == 0.0
    assert signature_inverse(segment_signature([1, 2], 4)).max_abs_diff(
        segment_signature([-1, -2], 4)) == 0.0
    reversed_sig = path_signature(PEAK[::-1], 5)
    assert signature_inverse(path_signature(PEAK, 5)).max_abs_diff(reversed_sig) <= 1e-12


@settings(max_examples=30)
@given(st.integers(0, 2**32 - 1))
def test_inverse_cancels(seed):
    rng = np.random.default_rng(seed)
    sig = path_signature(random_polyline(rng, 3), 5)
    assert chen_concat(sig, signature_inverse(sig)).max_abs_diff(
        TruncatedTensorSeries.identity(2, 5)) <= 1e-12 * max(1.0, max(np.abs(sig[5])) * 120)


@settings(max_examples=30)
@given(st.integers(0, 2**32 - 1))
def test_chen_associative(seed):
    rng = np.random.default_rng(seed)
    a, b, c = (segment_signature(rng.normal(size=2), 5) for _ in range(3))
    assert chen_concat(a, chen_concat(b, c)).max_abs_diff(chen_concat(chen_concat(a, b), c)) <= 1e-12


@settings(max_examples=30)
@given(st.integers(0, 2**32 - 1))
def test_level_norm_bound(seed):
    rng = np.random.default_rng(seed)
    path = PiecewiseLinearPath(random_polyline(rng, 4, d=3))
    sig = path_signature(path, 6)
    for n in range(7):
        assert level_norm(sig[n], NormKind.L2) <= path.length**n / math.factorial(n) * (1 + 1e-12)


def test_diagonal_identity_for_monotone_coordinate():
    path = [(0, 0), (1, 3), (1.5, -1), (4, 2)]
    sig = path_signature(path, 6)
    for n in range(7):
        assert sig[n][0] == pytest.approx(4.0**n / math.factorial(n), rel=1e-13)


def test_path_construction():
    path = PiecewiseLinearPath([(0, 0), (0, 0), (1, 0), (1, 0), (1, 2)])
    assert len(path) == 3 and path.length == 3.0
    assert path.breaks.tolist() == [0.0, 1 / 3, 1.0]
    assert path.unit_derivative(1 / 3).tolist() == [0.0, 1.0]  # right-hand segment at a vertex
    assert path.unit_derivative(0.1).tolist() == [1.0, 0.0]
    with pytest.raises(ValueError):
        PiecewiseLinearPath([(1, 1), (1, 1)])
