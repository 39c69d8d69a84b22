import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rootloc.bounds import ContourBounds, index_sample_count
from rootloc.oracle import angle_winding
from rootloc.winding import (
    AXIS,
    AmbiguousCrossing,
    SampledLoop,
    Winder,
    ZeroOnContour,
    basic_points,
    index,
    indicator_index,
    normalize,
    reduce,
)

I = 1j


def loop_of(f, N, L=2 * math.pi):
    x = np.linspace(0.0, L, N + 1)
    v = f(x)
    v[-1] = v[0]
    return SampledLoop(x, v)


def trig_loop(coeffs: dict, N: int) -> SampledLoop:
    return loop_of(lambda x: sum(c * np.exp(1j * k * x) for k, c in coeffs.items()), N)


def test_sampled_loop_validation():
    with pytest.raises(ValueError, match="not closed"):
        SampledLoop(np.array([0.0, 1.0]), np.array([1, 2j]))
    with pytest.raises(ValueError, match="increasing"):
        SampledLoop(np.array([0.0, 0.0]), np.array([1, 1]))


def test_normalize_examples():
    const = SampledLoop(np.arange(5.0), np.full(5, 3 + 4j))
    assert np.allclose(normalize(const).values, 1)
    x = np.linspace(math.pi / 3, math.pi / 3 + 2 * math.pi, 9)
    v = np.exp(1j * x)
    v[-1] = v[0]
    u = normalize(SampledLoop(x, v)).values
    assert u[0] == 1 and u[-1] == 1
    assert np.allclose(u[:-1], np.exp(1j * (x[:-1] - math.pi / 3)))
    with pytest.raises(ZeroOnContour, match="curve vanishes"):
        normalize(SampledLoop(np.arange(3.0), np.array([1, 0, 1])))


def test_basic_points_examples():
    assert basic_points(np.exp(1j * np.linspace(0, math.pi / 2, 3))) == [1, I]
    full = normalize(loop_of(lambda x: np.exp(1j * x), 16))
    assert reduce(basic_points(full)) == [1, I, -1, -I, 1]
    const = SampledLoop(np.arange(4.0), np.ones(4, dtype=complex))
    assert basic_points(const) == [1]


def test_reduce_examples():
    assert reduce([1, I, 1]) == [1]
    assert reduce([1, I, -1, -I, 1]) == [1, I, -1, -I, 1]
    assert reduce([1, I, -1, I, 1, I, -1, -I, 1]) == [1, I, -1, -I, 1]
    with pytest.raises(ValueError):
        reduce([1, 0.5])


def test_indicator_index_short_vectors_are_zero():
    assert indicator_index([1, I, -1, -I]) == 0
    assert indicator_index([1, -I, -1, I, 1, -I, -1, I, 1]) == -2


def test_index_examples():
    assert index(loop_of(lambda x: np.exp(1j * x), 32)) == 1
    assert index(loop_of(lambda x: np.exp(-2j * x), 64)) == -2
    N = index_sample_count(2 * math.pi, ContourBounds(0.9, 3.0))
    assert index(loop_of(lambda x: np.exp(3j * x) + 0.1, N)) == 3


@pytest.mark.parametrize("k", range(-3, 4))
def test_pure_exponential(k):
    N = index_sample_count(2 * math.pi, ContourBounds(1.0, max(abs(k), 1)))
    assert index(loop_of(lambda x: np.exp(1j * k * x), N)) == k


def test_loop_through_origin_is_ambiguous():
    with pytest.raises(AmbiguousCrossing):
        index(SampledLoop(np.arange(4.0), np.array([1, -1, 1j, 1])))


def test_node_exactly_on_axis_is_counted_once():
    # samples that land exactly on the axes at every quarter turn
    v = np.array([1, 1j, -1, -1j, 1, 1j, -1, -1j, 1] * 1, dtype=complex)
    x = np.arange(v.size, dtype=float)
    assert index(SampledLoop(x, v)) == 2


@st.composite
def certified_trig(draw):
    w = draw(st.integers(-5, 5))
    lead = np.exp(1j * draw(st.floats(0, 2 * math.pi)))
    ks = draw(st.lists(st.integers(-6, 6).filter(lambda k: k != w), max_size=4))
    weights = draw(st.lists(st.floats(0.0, 1.0), min_size=len(ks), max_size=len(ks)))
    phases = draw(st.lists(st.floats(0, 2 * math.pi), min_size=len(ks), max_size=len(ks)))
    total = sum(weights) or 1.0
    coeffs = {w: lead}
    for k, wt, ph in zip(ks, weights, phases):
        coeffs[k] = coeffs.get(k, 0) + 0.7 * (wt / total) * np.exp(1j * ph)
    return w, coeffs


def _certified_N(coeffs, m_low=0.3):
    M = sum(abs(k) * abs(c) for k, c in coeffs.items()) or 1.0
    return index_sample_count(2 * math.pi, ContourBounds(m_low, M))


@settings(max_examples=200, deadline=None)
@given(certified_trig())
def test_index_matches_dense_angle_oracle(case):
    w, coeffs = case
    N = _certified_N(coeffs)
    assert index(trig_loop(coeffs, N)) == angle_winding(trig_loop(coeffs, 100 * N).values) == w


@settings(max_examples=100, deadline=None)
@given(certified_trig(), st.floats(0, 2 * math.pi))
def test_rotation_and_conjugation(case, phi):
    _, coeffs = case
    loop = trig_loop(coeffs, _certified_N(coeffs))
    k = index(loop)
    assert index(SampledLoop(loop.params, loop.values * np.exp(1j * phi))) == k
    assert index(SampledLoop(loop.params, np.conj(loop.values))) == -k


@settings(max_examples=100, deadline=None)
@given(certified_trig())
def test_traversing_twice_doubles(case):
    _, coeffs = case
    N = _certified_N(coeffs)
    once = trig_loop(coeffs, N)
    twice = SampledLoop(np.linspace(0, 4 * math.pi, 2 * N + 1), np.concatenate([once.values, once.values[1:]]))
    assert index(twice) == 2 * index(once)


@settings(max_examples=50, deadline=None)
@given(certified_trig(), st.integers(1, 7))
def test_streaming_winder_matches_index(case, pieces):
    _, coeffs = case
    loop = trig_loop(coeffs, _certified_N(coeffs))
    cuts = np.linspace(0, loop.values.size - 1, pieces + 1).astype(int)
    w = Winder()
    for j in range(pieces):
        w.feed(loop.values[cuts[j] : cuts[j + 1] + 1], last=j == pieces - 1)
    assert w.result() == index(loop)


def _random_schedule_reduce(seq: list[int], rng) -> list[int]:
    seq = list(seq)
    while True:
        moves = [("r1", p) for p in range(len(seq) - 1) if seq[p] == seq[p + 1]]
        moves += [("r2", p) for p in range(len(seq) - 2) if seq[p] == seq[p + 2]]
        if not moves:
            return seq
        rule, p = moves[rng.integers(len(moves))]
        if rule == "r1":
            del seq[p + 1]
        else:
            del seq[p + 1 : p + 3]


def test_reduction_confluence_under_random_scheduling():
    rng = np.random.default_rng(3)
    for _ in range(20000):
        steps = rng.choice([-1, 0, 1], size=int(rng.integers(1, 30)))
        walk = np.concatenate([[0], np.cumsum(steps)]) % 4
        expected = [AXIS[c] for c in _random_schedule_reduce(walk.tolist(), rng)]
        assert reduce([AXIS[c] for c in walk]) == expected
