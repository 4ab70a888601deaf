"""Invariants checked over randomized lattices, inputs and times."""

import numpy as np
from hypothesis import given, settings, strategies as st

from ccawalk import (
    LatticeSpec,
    NoonInput,
    concurrence,
    correlation_matrix,
    decompose,
    propagator_columns,
    propagator_matrix,
    theta_for_concurrence,
    tpd_degree,
)

HALF_PI = float(np.pi / 2)

lattices = st.builds(
    LatticeSpec,
    num_cavities=st.integers(2, 12),
    omega=st.floats(0.1, 5.0),
    hopping=st.floats(0.0, 5.0),
)


@st.composite
def lattice_with_noon(draw):
    lattice = draw(lattices)
    n = lattice.num_cavities
    site_r = draw(st.integers(1, n))
    site_s = draw(st.integers(1, n).filter(lambda s: s != site_r))
    theta = draw(st.floats(0.0, HALF_PI))
    return lattice, NoonInput(theta=theta, site_r=site_r, site_s=site_s)


@settings(max_examples=40, deadline=None)
@given(lattices, st.floats(0.0, 100.0))
def test_propagator_is_unitary(lattice, t):
    g = propagator_matrix(decompose(lattice), t).entries
    n = lattice.num_cavities
    assert np.abs(g @ g.conj().T - np.eye(n)).max() < 1e-10


@settings(max_examples=30, deadline=None)
@given(lattices, st.floats(0.0, 100.0), st.floats(0.0, 100.0))
def test_propagator_group_law(lattice, t1, t2):
    decomp = decompose(lattice)
    g1 = propagator_matrix(decomp, t1).entries
    g2 = propagator_matrix(decomp, t2).entries
    g12 = propagator_matrix(decomp, t1 + t2).entries
    assert np.abs(g1 @ g2 - g12).max() < 1e-9


@settings(max_examples=40, deadline=None)
@given(lattices, st.floats(0.0, 100.0))
def test_propagator_symmetries_and_bound(lattice, t):
    g = propagator_matrix(decompose(lattice), t).entries
    assert np.array_equal(g, g.T)
    # reflection through the chain centre leaves the open chain invariant
    assert np.abs(g - np.flip(g)).max() < 1e-12
    assert np.abs(g).max() <= 1.0 + 1e-12


@settings(max_examples=30, deadline=None)
@given(lattices, st.floats(0.0, 100.0), st.data())
def test_columns_agree_with_matrix(lattice, t, data):
    site = data.draw(st.integers(1, lattice.num_cavities))
    decomp = decompose(lattice)
    (column,) = propagator_columns(decomp, t, [site])
    full = propagator_matrix(decomp, t).entries
    assert np.abs(column.amplitudes - full[:, site - 1]).max() < 1e-14


@settings(max_examples=25, deadline=None)
@given(lattices)
def test_frequencies_strictly_decreasing_when_hopping_on(lattice):
    freqs = decompose(lattice).frequencies
    if lattice.hopping > 1e-6:
        assert np.all(np.diff(freqs) < 0)
    assert freqs.max() <= lattice.omega + 2 * lattice.hopping + 1e-12
    assert freqs.min() >= lattice.omega - 2 * lattice.hopping - 1e-12


@settings(max_examples=40, deadline=None)
@given(lattice_with_noon(), st.floats(0.0, 100.0))
def test_pair_count_and_eta_range(case, t):
    lattice, noon = case
    decomp = decompose(lattice)
    p = correlation_matrix(decomp, noon, t).entries
    assert abs(p.sum() - 2.0) < 1e-9
    assert p.min() >= 0.0
    eta = tpd_degree(decomp, noon, t)
    assert -1e-9 < eta < 1.0 + 1e-9
    assert abs(tpd_degree(decomp, noon, 0.0)) < 1e-12


@settings(max_examples=30, deadline=None)
@given(lattice_with_noon(), st.floats(0.0, 50.0))
def test_weight_swap_equals_site_swap(case, t):
    lattice, noon = case
    decomp = decompose(lattice)
    p1 = correlation_matrix(decomp, noon, t).entries
    relabeled = NoonInput(
        theta=HALF_PI - noon.theta, site_r=noon.site_s, site_s=noon.site_r
    )
    p2 = correlation_matrix(decomp, relabeled, t).entries
    assert np.abs(p1 - p2).max() < 1e-12


@settings(max_examples=50)
@given(st.floats(0.0, 1.0), st.sampled_from(["low", "high"]))
def test_concurrence_inversion_round_trip(c, branch):
    theta = theta_for_concurrence(c, branch)
    assert 0.0 <= theta <= HALF_PI
    assert abs(concurrence(NoonInput(theta=theta, site_r=1, site_s=2)) - c) < 1e-14
