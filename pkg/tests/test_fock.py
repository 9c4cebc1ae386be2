"""Truncated tower operators: CCR, adjointness, second-quantized symmetries."""

import math

import numpy as np
import pytest

from fockdeform import dense, fock
from fockdeform.grids import chiral_pair, rapidity_grid

TOL = 1e-10


@pytest.fixture(scope="module")
def grid():
    return rapidity_grid(1.0, 4)


@pytest.fixture(scope="module")
def rng():
    return np.random.default_rng(1234)


def weighted_pairing(grid, xi, eta):
    # independent of fock.inner: plain loop over the quadrature sum
    return sum(w * np.conj(a) * b for w, a, b in zip(grid.weights, xi, eta))


def test_vacuum_normalized(grid):
    vac = fock.vacuum(grid, 3)
    assert fock.inner(vac, vac) == 1.0 + 0.0j


def test_inner_conjugate_symmetric_positive(grid, rng):
    a = fock.random_fock_vector(grid, 3, rng, normalize=False)
    b = fock.random_fock_vector(grid, 3, rng, normalize=False)
    assert abs(fock.inner(a, b) - np.conj(fock.inner(b, a))) < 1e-12
    assert fock.inner(a, a).real >= 0.0
    assert abs(fock.inner(a, a).imag) < 1e-12


def test_inner_grid_mismatch(grid):
    other = chiral_pair(2).union
    with pytest.raises(ValueError):
        fock.inner(fock.vacuum(grid, 2), fock.vacuum(other, 2))
    with pytest.raises(ValueError):
        fock.inner(fock.vacuum(grid, 2), fock.vacuum(grid, 3))


def test_symmetrize_two_indices():
    m = 3
    t = np.zeros((m, m), dtype=complex)
    t[0, 1] = 1.0  # e_0 (x) e_1
    s = fock.symmetrize(t)
    expected = np.zeros((m, m), dtype=complex)
    expected[0, 1] = expected[1, 0] = 0.5
    assert np.allclose(s, expected)


def test_symmetrize_idempotent(rng):
    t = rng.standard_normal((3, 3, 3)) + 1j * rng.standard_normal((3, 3, 3))
    s = fock.symmetrize(t)
    assert np.max(np.abs(fock.symmetrize(s) - s)) < 1e-14
    sym = fock.symmetrize(t)
    for perm in [(1, 0, 2), (2, 1, 0)]:
        assert np.max(np.abs(np.transpose(sym, perm) - sym)) < 1e-14


def test_symmetrize_axes_subset(rng):
    t = rng.standard_normal((2, 3, 3))
    s = fock.symmetrize_axes(t, [1, 2])
    assert np.max(np.abs(s - np.transpose(s, (0, 2, 1)))) < 1e-14
    assert np.max(np.abs(s.sum() - t.sum())) < 1e-12


def test_annihilate_vacuum(grid, rng):
    vac = fock.vacuum(grid, 3)
    out = fock.annihilate(fock.random_one_particle(grid, rng), vac)
    assert fock.norm(out) == 0.0


def test_annihilate_one_particle_gives_pairing(grid, rng):
    xi = fock.random_one_particle(grid, rng)
    eta = fock.random_one_particle(grid, rng)
    vac = fock.vacuum(grid, 3)
    out = fock.annihilate(xi, fock.create(eta, vac))
    expected = complex(weighted_pairing(grid, xi, eta))
    assert abs(complex(out.sectors[0]) - expected) < 1e-12
    assert fock.norm(out - expected * vac) < 1e-12


def test_create_vacuum_gives_amplitude(grid, rng):
    xi = fock.random_one_particle(grid, rng)
    out = fock.create(xi, fock.vacuum(grid, 3))
    assert np.allclose(out.sectors[1], xi)
    assert np.max(np.abs(out.sectors[0])) == 0.0


def test_two_particle_creation_hand_formula(grid, rng):
    """adag(xi) adag(eta) vacuum has sector 2 = (xi o eta + eta o xi)/sqrt(2)."""
    xi = fock.random_one_particle(grid, rng)
    eta = fock.random_one_particle(grid, rng)
    out = fock.create(xi, fock.create(eta, fock.vacuum(grid, 3)))
    expected = (np.multiply.outer(xi, eta) + np.multiply.outer(eta, xi)) / math.sqrt(2)
    assert np.max(np.abs(out.sectors[2] - expected)) < 1e-12


def test_adjoint_pairing_explicit_inner(grid, rng):
    """<adag(xi) psi, phi> = <psi, a(xi) phi> on random pairs, via fock.inner."""
    xi = fock.random_one_particle(grid, rng)
    for _ in range(5):
        psi = fock.random_fock_vector(grid, 3, rng)
        phi = fock.random_fock_vector(grid, 3, rng)
        lhs = fock.inner(fock.create(xi, psi), phi)
        rhs = fock.inner(psi, fock.annihilate(xi, phi))
        assert abs(lhs - rhs) < 1e-12


def test_adjoint_matrices_conjugate_transpose(grid, rng):
    """Dense matrices via explicit inner products, independent of the fast path."""
    xi = fock.random_one_particle(grid, rng)
    basis = dense.FockBasis(grid, 3)
    dim = len(basis)
    mc = np.empty((dim, dim), dtype=complex)
    ma = np.empty((dim, dim), dtype=complex)
    for j, v in enumerate(basis.vectors):
        cv = fock.create(xi, v)
        av = fock.annihilate(xi, v)
        for i, b in enumerate(basis.vectors):
            mc[i, j] = fock.inner(b, cv)
            ma[i, j] = fock.inner(b, av)
    assert np.max(np.abs(mc - ma.conj().T)) < 1e-12


def test_ccr_below_truncation(grid, rng):
    xi = fock.random_one_particle(grid, rng)
    eta = fock.random_one_particle(grid, rng)
    pairing = complex(weighted_pairing(grid, xi, eta))
    psi = fock.random_fock_vector(grid, 3, rng, top_sector=1)
    comm = (fock.annihilate(xi, fock.create(eta, psi))
            - fock.create(eta, fock.annihilate(xi, psi)))
    assert fock.norm(comm - pairing * psi) < TOL


def test_exponential_vector_zero_is_vacuum(grid):
    assert fock.norm(fock.exponential_vector(grid, np.zeros(grid.size), 3)
                     - fock.vacuum(grid, 3)) == 0.0


def test_exponential_vector_sectors(grid, rng):
    xi = fock.random_one_particle(grid, rng)
    e = fock.exponential_vector(grid, xi, 3)
    assert np.allclose(e.sectors[2], np.multiply.outer(xi, xi) / math.sqrt(2))
    assert np.allclose(e.sectors[3],
                       np.multiply.outer(np.multiply.outer(xi, xi), xi) / math.sqrt(6))


def test_exponential_inner_closed_form(grid, rng):
    xi = 0.5 * fock.random_one_particle(grid, rng)
    eta = 0.5 * fock.random_one_particle(grid, rng)
    n_top = 3
    lhs = fock.inner(fock.exponential_vector(grid, xi, n_top),
                     fock.exponential_vector(grid, eta, n_top))
    z = complex(weighted_pairing(grid, xi, eta))
    rhs = sum(z ** n / math.factorial(n) for n in range(n_top + 1))
    assert abs(lhs - rhs) < 1e-12


def test_translation_identity_and_unitarity(grid, rng):
    psi = fock.random_fock_vector(grid, 3, rng)
    assert fock.norm(fock.apply_translation((0.0, 0.0), psi) - psi) == 0.0
    moved = fock.apply_translation((0.8, -1.1), psi)
    assert abs(fock.norm(moved) - fock.norm(psi)) < 1e-12


def test_translation_one_particle_phase(grid, rng):
    xi = fock.random_one_particle(grid, rng)
    x = (0.37, 1.21)
    out = fock.apply_translation(x, fock.create(xi, fock.vacuum(grid, 2)))
    expected = np.exp(1j * (x[0] * grid.omegas - x[1] * grid.points)) * xi
    assert np.max(np.abs(out.sectors[1] - expected)) < 1e-14


def test_boost_identity_and_vacuum(grid, rng):
    psi = fock.random_fock_vector(grid, 3, rng)
    res = fock.apply_boost(0, psi)
    assert not res.truncated
    assert fock.norm(res.vector - psi) == 0.0
    res = fock.apply_boost(2, fock.vacuum(grid, 3))
    assert fock.norm(res.vector - fock.vacuum(grid, 3)) == 0.0


def test_boost_shifts_basis_vectors():
    """One-particle basis vector at rapidity slot k lands on slot k - j."""
    g = rapidity_grid(1.0, 6)
    vac = fock.vacuum(g, 2)
    for j in (1, -2):
        for k in range(6):
            delta = np.zeros(6)
            delta[k] = 1.0
            res = fock.apply_boost(j, fock.create(delta, vac))
            if 0 <= k - j < 6:
                target = np.zeros(6)
                target[k - j] = 1.0
                assert fock.norm(res.vector - fock.create(target, vac)) == 0.0
                assert not res.truncated
            else:
                assert fock.norm(res.vector) == 0.0
                assert res.truncated


def test_boost_massless_blocks():
    pair = chiral_pair(3)
    g = pair.union
    vac = fock.vacuum(g, 2)
    # positive block: basis at union slot 4 (p = 1) moves down to slot 3 (p = 0.5)
    delta = np.zeros(6)
    delta[4] = 1.0
    res = fock.apply_boost(1, fock.create(delta, vac))
    target = np.zeros(6)
    target[3] = 1.0
    assert fock.norm(res.vector - fock.create(target, vac)) == 0.0
    # negative block: slot 1 (p = -1) moves to slot 0 (p = -2), i.e. |p| grows
    delta = np.zeros(6)
    delta[1] = 1.0
    res = fock.apply_boost(1, fock.create(delta, vac))
    target = np.zeros(6)
    target[0] = 1.0
    assert fock.norm(res.vector - fock.create(target, vac)) == 0.0
    # no leaking across the sign blocks
    delta = np.zeros(6)
    delta[3] = 1.0  # smallest positive momentum
    res = fock.apply_boost(1, fock.create(delta, vac))
    assert res.truncated
    assert fock.norm(res.vector) == 0.0


def test_boost_norm_preserved_in_range(grid, rng):
    delta = np.zeros(grid.size)
    delta[2] = 1.0
    psi = fock.create(delta, fock.create(delta, fock.vacuum(grid, 3)))
    res = fock.apply_boost(1, psi)
    assert not res.truncated
    assert abs(fock.norm(res.vector) - fock.norm(psi)) < 1e-12


def test_reflection_antiunitary(grid, rng):
    a = fock.random_fock_vector(grid, 3, rng)
    b = fock.random_fock_vector(grid, 3, rng)
    ja, jb = fock.apply_reflection(a), fock.apply_reflection(b)
    assert abs(fock.inner(ja, jb) - np.conj(fock.inner(a, b))) < 1e-12
    assert fock.norm(fock.apply_reflection(ja) - a) == 0.0
    assert fock.norm(fock.apply_reflection(1j * a) + 1j * ja) == 0.0


def test_real_sector_vectors_fixed_by_reflection(grid):
    vac = fock.vacuum(grid, 2)
    real_vec = fock.create(np.ones(grid.size), vac)
    assert fock.norm(fock.apply_reflection(real_vec) - real_vec) == 0.0


def test_field_zero_data(grid):
    fd = fock.TestFunctionData(np.zeros(grid.size), np.zeros(grid.size))
    out = fock.field(fd, fock.vacuum(grid, 3))
    assert fock.norm(out) == 0.0


def test_field_vacuum_sectors(grid, rng):
    fd = fock.real_test_function(fock.random_one_particle(grid, rng))
    out = fock.field(fd, fock.vacuum(grid, 3))
    assert np.allclose(out.sectors[1], fd.fplus)
    assert np.max(np.abs(out.sectors[2])) == 0.0
    assert np.max(np.abs(out.sectors[3])) == 0.0


def test_field_hermitian_for_real_data(grid, rng):
    fd = fock.real_test_function(fock.random_one_particle(grid, rng))
    for _ in range(5):
        psi = fock.random_fock_vector(grid, 3, rng)
        phi = fock.random_fock_vector(grid, 3, rng)
        assert abs(fock.inner(fock.field(fd, psi), phi)
                   - fock.inner(psi, fock.field(fd, phi))) < 1e-12


def test_test_function_data_validation(grid, rng):
    xi = fock.random_one_particle(grid, rng)
    with pytest.raises(ValueError):
        fock.TestFunctionData(fplus=xi, fminus=xi + 1.0, real=True)
    with pytest.raises(ValueError):
        fock.TestFunctionData(fplus=xi, fminus=xi[:2])


def test_random_vector_top_sector(grid, rng):
    psi = fock.random_fock_vector(grid, 3, rng, top_sector=1)
    assert np.max(np.abs(psi.sectors[2])) == 0.0
    assert np.max(np.abs(psi.sectors[3])) == 0.0
    assert abs(fock.norm(psi) - 1.0) < 1e-12


def test_vector_arithmetic(grid, rng):
    a = fock.random_fock_vector(grid, 2, rng)
    b = fock.random_fock_vector(grid, 2, rng)
    assert fock.norm((a + b) - b - a) < 1e-14
    assert fock.norm(2.0 * a - a - a) < 1e-14
    assert fock.norm(-a + a) == 0.0
