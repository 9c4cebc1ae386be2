"""Grid construction, quadrature weights, and boost maps."""

import math

import numpy as np
import pytest

from fockdeform.grids import (ChiralGridPair, MomentumGrid, boost_blocks, boost_momentum,
                              chiral_pair, omega, rapidity_grid, split_by_sign)


def test_rapidity_grid_points_and_weights():
    g = rapidity_grid(1.0, 6)
    thetas = np.linspace(-1.25, 1.25, 6)
    assert np.allclose(g.points, np.sinh(thetas))
    # constant weight = sinh(dtheta) equals the central cell length over omega
    dtheta = thetas[1] - thetas[0]
    assert np.allclose(g.weights, math.sinh(dtheta))
    cell = (g.points[2] - g.points[0]) / 2
    assert abs(cell / g.omegas[1] - g.weights[1]) < 1e-14


def test_rapidity_grid_rejects_zero_point():
    with pytest.raises(ValueError):
        rapidity_grid(1.0, 5, -1.0, 1.0)  # odd size puts theta = 0 on the grid
    with pytest.raises(ValueError):
        rapidity_grid(0.0, 6)


def test_chiral_pair_layout():
    pair = chiral_pair(3, 0.5, 2.0)
    assert pair.n_negative == 3 and pair.n_positive == 3
    assert np.allclose(pair.positive_points, [0.5, 1.0, 2.0])
    assert np.allclose(pair.negative_points, [-2.0, -1.0, -0.5])
    dlam = math.log(2.0 / 0.5) / 2
    assert np.allclose(pair.union.weights, math.sinh(dlam))
    cell = (pair.positive_points[2] - pair.positive_points[0]) / 2
    assert abs(cell / pair.positive_points[1] - math.sinh(dlam)) < 1e-14


def test_momentum_grid_validation():
    with pytest.raises(ValueError):
        MomentumGrid(np.array([0.0, 1.0]), np.array([1.0, 1.0]), 1.0)
    with pytest.raises(ValueError):
        MomentumGrid(np.array([2.0, 1.0]), np.array([1.0, 1.0]), 1.0)
    with pytest.raises(ValueError):
        MomentumGrid(np.array([1.0, 2.0]), np.array([1.0, -1.0]), 1.0)
    with pytest.raises(ValueError):
        MomentumGrid(np.array([1.0, 2.0]), np.array([1.0, 1.0]), -1.0)


def test_omega_and_boost_momentum():
    assert omega(3.0, 4.0) == 5.0
    # massless boost contracts positive momenta and dilates negative ones
    lam = 0.7
    assert abs(boost_momentum(2.0, lam, 0.0) - 2.0 * math.exp(-lam)) < 1e-12
    assert abs(boost_momentum(-2.0, lam, 0.0) - (-2.0) * math.exp(lam)) < 1e-12
    # massive boost is a rapidity shift: m sinh(theta) -> m sinh(theta - lam)
    m, theta = 1.3, 0.9
    assert abs(boost_momentum(m * math.sinh(theta), lam, m)
               - m * math.sinh(theta - lam)) < 1e-12


def test_boost_blocks():
    g = rapidity_grid(1.0, 6)
    assert boost_blocks(g) == ((0, 6),)
    pair = chiral_pair(3)
    assert boost_blocks(pair.union) == ((0, 3), (3, 6))
    arb = MomentumGrid(np.array([1.0, 2.0]), np.array([1.0, 1.0]), 1.0)
    with pytest.raises(ValueError):
        boost_blocks(arb)


def test_split_by_sign_roundtrip():
    pair = chiral_pair(3)
    again = split_by_sign(pair.union)
    assert again.n_negative == pair.n_negative
    with pytest.raises(ValueError):
        ChiralGridPair(union=pair.union, n_negative=2)
    massive = rapidity_grid(1.0, 6)
    with pytest.raises(ValueError):
        split_by_sign(massive)
