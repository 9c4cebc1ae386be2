"""Truncated bosonic state space over a momentum grid.

A state is a finite tower (Psi_0, ..., Psi_N) of totally symmetric complex
tensors over the grid points; sector n carries n particles, and one-particle
amplitudes are plain complex arrays of grid length.  Inner products weight
every tensor factor with the quadrature weights, realizing the measure
dp/omega_m(p).  Operators act exactly as their untruncated counterparts on
sectors below the truncation: annihilation reads the (vanishing) sector N+1 as
zero, and creation out of the top sector is dropped.  All values are treated
as immutable; every operation returns a fresh vector.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .grids import MomentumGrid, boost_blocks


@dataclass(frozen=True)
class FockVector:
    """Tower of symmetric complex tensors; sectors[n] has shape (M,)*n."""

    grid: MomentumGrid
    sectors: tuple[np.ndarray, ...]

    def __post_init__(self):
        m = self.grid.size
        secs = []
        for n, s in enumerate(self.sectors):
            s = np.asarray(s, dtype=complex)
            if s.shape != (m,) * n:
                raise ValueError(f"sector {n} has shape {s.shape}, expected {(m,) * n}")
            secs.append(s)
        object.__setattr__(self, "sectors", tuple(secs))

    @property
    def truncation(self) -> int:
        return len(self.sectors) - 1

    def _check_compatible(self, other: "FockVector"):
        if not self.grid.same_as(other.grid):
            raise ValueError("vectors live on different grids")
        if self.truncation != other.truncation:
            raise ValueError("vectors have different truncations")

    def __add__(self, other: "FockVector") -> "FockVector":
        self._check_compatible(other)
        return FockVector(self.grid, tuple(a + b for a, b in zip(self.sectors, other.sectors)))

    def __sub__(self, other: "FockVector") -> "FockVector":
        self._check_compatible(other)
        return FockVector(self.grid, tuple(a - b for a, b in zip(self.sectors, other.sectors)))

    def __mul__(self, scalar) -> "FockVector":
        c = complex(scalar)
        return FockVector(self.grid, tuple(c * s for s in self.sectors))

    __rmul__ = __mul__

    def __neg__(self) -> "FockVector":
        return self * (-1.0)


def vacuum(grid: MomentumGrid, truncation: int) -> FockVector:
    secs = [np.zeros((grid.size,) * n, dtype=complex) for n in range(truncation + 1)]
    secs[0] = np.array(1.0 + 0.0j)
    return FockVector(grid, tuple(secs))


def zero_vector(grid: MomentumGrid, truncation: int) -> FockVector:
    return FockVector(grid, tuple(np.zeros((grid.size,) * n, dtype=complex)
                                  for n in range(truncation + 1)))


def inner(psi: FockVector, phi: FockVector) -> complex:
    """Weighted inner product, antilinear in the first argument."""
    psi._check_compatible(phi)
    w = psi.grid.weights
    total = 0.0 + 0.0j
    for n, (a, b) in enumerate(zip(psi.sectors, phi.sectors)):
        prod = np.conj(a) * b
        for ax in range(n):
            prod = prod * w.reshape((1,) * ax + (w.size,) + (1,) * (n - ax - 1))
        total += complex(np.sum(prod))
    return total


def norm(psi: FockVector) -> float:
    return math.sqrt(max(inner(psi, psi).real, 0.0))


def symmetrize(tensor: np.ndarray) -> np.ndarray:
    """Average over all index permutations; projects onto symmetric tensors."""
    t = np.asarray(tensor, dtype=complex)
    n = t.ndim
    if n <= 1:
        return t.copy()
    perms = list(itertools.permutations(range(n)))
    out = np.zeros_like(t)
    for p in perms:
        out += np.transpose(t, p)
    return out / len(perms)


def symmetrize_axes(tensor: np.ndarray, axes) -> np.ndarray:
    """Average over permutations of a subset of axes, fixing the others."""
    t = np.asarray(tensor, dtype=complex)
    axes = tuple(axes)
    if len(axes) <= 1:
        return t.copy()
    out = np.zeros_like(t)
    count = 0
    for perm in itertools.permutations(axes):
        full = list(range(t.ndim))
        for src, dst in zip(axes, perm):
            full[src] = dst
        out += np.transpose(t, full)
        count += 1
    return out / count


def _axis_multiply(tensor: np.ndarray, vec: np.ndarray) -> np.ndarray:
    """Multiply an n-index tensor by prod_i vec[k_i] (one factor per axis)."""
    out = tensor
    n = tensor.ndim
    m = vec.size
    for ax in range(n):
        out = out * vec.reshape((1,) * ax + (m,) + (1,) * (n - ax - 1))
    return out


def _pair_multiply(tensor: np.ndarray, mat: np.ndarray, pairs) -> np.ndarray:
    """Multiply by prod over (i, j) in pairs of mat[k_i, k_j].

    ``mat`` may be rectangular when the tensor mixes factor spaces; diagonal
    pairs (i, i) use the matrix diagonal.
    """
    out = tensor
    n = tensor.ndim
    shape = tensor.shape
    for i, j in pairs:
        if i == j:
            d = np.ascontiguousarray(np.diagonal(mat))
            out = out * d.reshape((1,) * i + (shape[i],) + (1,) * (n - i - 1))
            continue
        a, b = (i, j) if i < j else (j, i)
        view = mat if i < j else mat.T
        out = out * np.ascontiguousarray(view).reshape(
            (1,) * a + (shape[a],) + (1,) * (b - a - 1) + (shape[b],) + (1,) * (n - b - 1))
    return out


def _row_kernel_multiply(sector: np.ndarray, kmat: np.ndarray) -> np.ndarray:
    """Multiply sector(q, p_1..p_n) by prod_k kmat[q, p_k] over trailing axes."""
    return _pair_multiply(sector, kmat, [(0, ax) for ax in range(1, sector.ndim)])


def _annihilate_with_kernel(xi, psi: FockVector, kmat: np.ndarray | None) -> FockVector:
    grid = psi.grid
    wxi = grid.weights * np.conj(np.asarray(xi, dtype=complex))
    if wxi.shape != grid.points.shape:
        raise ValueError("one-particle amplitude does not match the grid")
    secs = []
    for n in range(psi.truncation):
        src = psi.sectors[n + 1]
        if kmat is not None:
            src = _row_kernel_multiply(src, kmat)
        secs.append(math.sqrt(n + 1) * np.tensordot(wxi, src, axes=([0], [0])))
    secs.append(np.zeros((grid.size,) * psi.truncation, dtype=complex))
    return FockVector(grid, tuple(secs))


def _create_with_kernel(xi, psi: FockVector, kmat: np.ndarray | None) -> FockVector:
    grid = psi.grid
    xi = np.asarray(xi, dtype=complex)
    if xi.shape != grid.points.shape:
        raise ValueError("one-particle amplitude does not match the grid")
    secs = [np.zeros((), dtype=complex)]
    for n in range(1, psi.truncation + 1):
        raw = np.multiply.outer(xi, psi.sectors[n - 1])
        if kmat is not None:
            raw = _row_kernel_multiply(raw, kmat)
        secs.append(math.sqrt(n) * symmetrize(raw))
    return FockVector(grid, tuple(secs))


def annihilate(xi, psi: FockVector) -> FockVector:
    """Remove one particle: [a Psi]_n = sqrt(n+1) sum_q w_q conj(xi_q) Psi_{n+1}(q, ...).

    Antilinear in xi; the adjoint of :func:`create` with the same amplitude.
    """
    return _annihilate_with_kernel(xi, psi, None)


def create(xi, psi: FockVector) -> FockVector:
    """Add one particle: [a* Psi]_n = sqrt(n) Symm(xi o Psi_{n-1}).

    The weighted adjoint of :func:`annihilate` with the same amplitude (the
    test suite verifies this against the dense conjugate-transpose).
    """
    return _create_with_kernel(xi, psi, None)


def exponential_vector(grid: MomentumGrid, xi, truncation: int) -> FockVector:
    """Truncated coherent-style vector with sector n = xi^(x n) / sqrt(n!)."""
    xi = np.asarray(xi, dtype=complex)
    secs = [np.array(1.0 + 0.0j)]
    power = np.array(1.0 + 0.0j)
    for n in range(1, truncation + 1):
        power = np.multiply.outer(power, xi) if n > 1 else xi.copy()
        secs.append(power / math.sqrt(math.factorial(n)))
    return FockVector(grid, tuple(secs))


@dataclass(frozen=True)
class TestFunctionData:
    """Momentum-space one-particle data (f_plus, f_minus) defining a field.

    ``real`` asserts f_minus = conj(f_plus) pointwise, the momentum-space
    expression of a real test function.
    """

    fplus: np.ndarray
    fminus: np.ndarray
    real: bool = False

    def __post_init__(self):
        fp = np.asarray(self.fplus, dtype=complex)
        fm = np.asarray(self.fminus, dtype=complex)
        if fp.shape != fm.shape:
            raise ValueError("fplus and fminus must have the same shape")
        if self.real and np.max(np.abs(fm - np.conj(fp))) > 1e-12:
            raise ValueError("real data requires fminus = conj(fplus)")
        object.__setattr__(self, "fplus", fp)
        object.__setattr__(self, "fminus", fm)


def real_test_function(fplus) -> TestFunctionData:
    fp = np.asarray(fplus, dtype=complex)
    return TestFunctionData(fplus=fp, fminus=np.conj(fp), real=True)


def field(fd: TestFunctionData, psi: FockVector) -> FockVector:
    """Free field create(fplus) + annihilate(conj(fminus)); hermitian for real data."""
    return create(fd.fplus, psi) + annihilate(np.conj(fd.fminus), psi)


def apply_translation(x, psi: FockVector) -> FockVector:
    """Spacetime translation: sector n picks up prod_i exp(i(x0*omega - x1*p)).

    A pointwise unimodular multiplier, hence exactly norm preserving; fixes
    the vacuum.
    """
    x0, x1 = float(x[0]), float(x[1])
    phases = np.exp(1j * (x0 * psi.grid.omegas - x1 * psi.grid.points))
    return FockVector(psi.grid, tuple(_axis_multiply(s, phases) for s in psi.sectors))


def apply_reflection(psi: FockVector) -> FockVector:
    """Antiunitary spacetime reflection: componentwise complex conjugation."""
    return FockVector(psi.grid, tuple(np.conj(s) for s in psi.sectors))


@dataclass(frozen=True)
class BoostResult:
    """Boosted vector plus a flag marking amplitude pushed off the grid."""

    vector: FockVector
    truncated: bool


def apply_boost(shift: int, psi: FockVector) -> BoostResult:
    """Exact boost index shift on an adapted grid.

    A one-particle basis vector at rapidity slot k moves to slot k - shift
    (blockwise per sign half-line for the massless geometric layout).
    Amplitude whose target leaves the grid is dropped and flagged.
    """
    grid = psi.grid
    blocks = boost_blocks(grid)
    m = grid.size
    out_ids, src_ids = [], []
    for s, e in blocks:
        for i in range(s, e):
            k = i + shift
            if s <= k < e:
                out_ids.append(i)
                src_ids.append(k)
    kept = np.zeros(m, dtype=bool)
    kept[src_ids] = True
    truncated = False
    secs = [psi.sectors[0].copy()]
    for n in range(1, psi.truncation + 1):
        src = psi.sectors[n]
        if not np.all(kept):
            mask = np.ones(src.shape, dtype=bool)
            for ax in range(n):
                mask &= kept.reshape((1,) * ax + (m,) + (1,) * (n - ax - 1))
            truncated = truncated or bool(np.any(src[~mask] != 0))
        out = np.zeros_like(src)
        if out_ids:
            out[np.ix_(*([out_ids] * n))] = src[np.ix_(*([src_ids] * n))]
        secs.append(out)
    return BoostResult(FockVector(grid, tuple(secs)), truncated)


def random_fock_vector(grid: MomentumGrid, truncation: int, rng: np.random.Generator,
                       top_sector: int | None = None, normalize: bool = True) -> FockVector:
    """Random symmetric vector, optionally supported only in sectors <= top_sector."""
    top = truncation if top_sector is None else top_sector
    secs = []
    for n in range(truncation + 1):
        shape = (grid.size,) * n
        if n > top:
            secs.append(np.zeros(shape, dtype=complex))
            continue
        raw = rng.standard_normal(shape) + 1j * rng.standard_normal(shape)
        secs.append(symmetrize(raw))
    psi = FockVector(grid, tuple(secs))
    if normalize:
        nrm = norm(psi)
        if nrm > 0:
            psi = psi * (1.0 / nrm)
    return psi


def random_one_particle(grid: MomentumGrid, rng: np.random.Generator,
                        support: np.ndarray | None = None) -> np.ndarray:
    """Random one-particle amplitude, optionally restricted to a boolean support mask."""
    xi = rng.standard_normal(grid.size) + 1j * rng.standard_normal(grid.size)
    if support is not None:
        xi = np.where(support, xi, 0.0)
    return xi
