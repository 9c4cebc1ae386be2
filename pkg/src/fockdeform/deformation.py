"""Kernel-deformed creation/annihilation operators and momentum twists.

The deformation is driven by a unimodular two-momentum kernel built from a
root R:

* m > 0:  K(p, q) = R(w(p, q)) with the invariant w(p, q) = (omega(q) p -
  omega(p) q) / 2,
* m = 0:  K(p, q) = R(-pq) for p > 0 > q, R(pq) for p < 0 < q, and 1 for
  equal signs (optionally replaced by same-sign extras R1(p/q), R2(-p/q)).

The wedge argument vanishes on the diagonal p = q (and for equal-sign
massless pairs); the root's value there is not determined by its defining
relations, and K uses the fixed convention R(0) := 1, which keeps the kernel
symmetry K(q, p) K(p, q) = 1 and the sharp-momentum conjugation identities
exact on the grid.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from . import fock
from .fock import FockVector, TestFunctionData
from .grids import MomentumGrid, omega
from .inner import Root, check_inversion_symmetry, eval_root

_g = np.geomspace(0.05, 20.0, 33)
_EXTRA_SYMMETRY_SAMPLES = np.concatenate([_g, -_g])
del _g


def wedge_invariant(p, q, mass: float):
    """Boost-invariant antisymmetric form (omega(q)*p - omega(p)*q) / 2."""
    p = np.asarray(p, dtype=float)
    q = np.asarray(q, dtype=float)
    return 0.5 * (omega(q, mass) * p - omega(p, mass) * q)


def eval_root_at_zero_one(root: Root, args):
    """Evaluate a root elementwise with the fixed convention R(0) := 1."""
    args = np.asarray(args, dtype=float)
    out = np.ones(args.shape, dtype=complex)
    mask = args != 0.0
    if np.any(mask):
        out[mask] = eval_root(root, args[mask])
    return out if out.shape else complex(out)


@dataclass(frozen=True)
class KernelSpec:
    """Root plus mass selecting the deformation kernel.

    For m = 0 the same-sign blocks may carry extra roots with the inversion
    symmetry conj(R_k(t)) = R_k(1/t); ``extra_pos`` acts on (p>0, q>0) pairs,
    ``extra_neg`` on (p<0, q<0) pairs.
    """

    root: Root
    mass: float
    extra_pos: Root | None = None
    extra_neg: Root | None = None

    def __post_init__(self):
        if self.mass < 0.0:
            raise ValueError("mass must be >= 0")
        if self.mass > 0.0 and (self.extra_pos is not None or self.extra_neg is not None):
            raise ValueError("same-sign extras are only defined for mass 0")
        for extra in (self.extra_pos, self.extra_neg):
            if extra is not None:
                defect = check_inversion_symmetry(extra, _EXTRA_SYMMETRY_SAMPLES)
                if defect > 1e-8:
                    raise ValueError(
                        f"extra root violates conj(R(t)) = R(1/t) (defect {defect:.2e})")


def kernel(spec: KernelSpec, p: float, q: float) -> complex:
    """Unimodular kernel value K(p, q); raises if p or q is zero."""
    if p == 0.0 or q == 0.0:
        raise ValueError("kernel arguments must be nonzero")
    if spec.mass > 0.0:
        return complex(eval_root_at_zero_one(spec.root, wedge_invariant(p, q, spec.mass)))
    if p > 0.0 and q < 0.0:
        return complex(eval_root(spec.root, -p * q))
    if p < 0.0 and q > 0.0:
        return complex(eval_root(spec.root, p * q))
    if p > 0.0:  # both positive
        return complex(eval_root(spec.extra_pos, p / q)) if spec.extra_pos else 1.0 + 0.0j
    return complex(eval_root(spec.extra_neg, -p / q)) if spec.extra_neg else 1.0 + 0.0j


def kernel_matrix(spec: KernelSpec, grid: MomentumGrid) -> np.ndarray:
    """K evaluated on all ordered grid pairs: K[a, b] = kernel(p_a, p_b).

    Vectorized; agrees entrywise with :func:`kernel` (tested against it).
    """
    if grid.mass != spec.mass:
        raise ValueError("grid mass does not match the kernel spec")
    pts = grid.points
    p, q = pts[:, None], pts[None, :]
    if spec.mass > 0.0:
        return np.asarray(eval_root_at_zero_one(
            spec.root, wedge_invariant(p, q, spec.mass)))
    out = np.ones((pts.size, pts.size), dtype=complex)
    mask = (p > 0.0) & (q < 0.0)
    out[mask] = eval_root(spec.root, (-p * q)[mask])
    mask = (p < 0.0) & (q > 0.0)
    out[mask] = eval_root(spec.root, (p * q)[mask])
    if spec.extra_pos is not None:
        mask = (p > 0.0) & (q > 0.0)
        out[mask] = eval_root(spec.extra_pos, (p / q)[mask])
    if spec.extra_neg is not None:
        mask = (p < 0.0) & (q < 0.0)
        out[mask] = eval_root(spec.extra_neg, (-p / q)[mask])
    return out


@dataclass(frozen=True)
class KernelSymmetryReport:
    max_defect: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return self.max_defect <= self.tolerance


def kernel_symmetry_check(spec: KernelSpec, sample_pairs,
                          tolerance: float = 1e-10) -> KernelSymmetryReport:
    """Max of |K(q,p) K(p,q) - 1| over sampled nonzero pairs."""
    worst = 0.0
    for p, q in sample_pairs:
        worst = max(worst, abs(kernel(spec, q, p) * kernel(spec, p, q) - 1.0))
    return KernelSymmetryReport(max_defect=worst, tolerance=tolerance)


def apply_kernel_phases(spec: KernelSpec, p: float, psi: FockVector) -> FockVector:
    """Dress every particle with the kernel phase against reference momentum p.

    Sector n is multiplied by prod_k K(p, p_{k}); a diagonal unitary fixing
    the vacuum.
    """
    row = np.array([kernel(spec, p, q) for q in psi.grid.points])
    return FockVector(psi.grid, tuple(fock._axis_multiply(s, row) for s in psi.sectors))


def annihilate_deformed(spec: KernelSpec, xi, psi: FockVector) -> FockVector:
    """Deformed annihilator: the removed momentum q contributes prod_k K(q, p_k).

    [a_K Psi]_n(p_1..p_n) = sqrt(n+1) sum_q w_q conj(xi_q) prod_k K(q, p_k)
    Psi_{n+1}(q, p_1..p_n).  Coincides with :func:`fock.annihilate` bit for
    bit when K is identically 1.
    """
    return fock._annihilate_with_kernel(xi, psi, kernel_matrix(spec, psi.grid))


def create_deformed(spec: KernelSpec, xi, psi: FockVector) -> FockVector:
    """Weighted adjoint of :func:`annihilate_deformed` with the same amplitude.

    Closed form: [a_K* Psi]_n = sqrt(n) Symm(xi(p_1) prod_{k>=2}
    conj(K(p_1, p_k)) Psi_{n-1}(p_2..p_n)); creates xi from the vacuum.
    """
    return fock._create_with_kernel(xi, psi, np.conj(kernel_matrix(spec, psi.grid)))


def field_deformed(spec: KernelSpec, fd: TestFunctionData, psi: FockVector) -> FockVector:
    """Deformed field create_deformed(fplus) + annihilate_deformed(conj(fminus))."""
    return (create_deformed(spec, fd.fplus, psi)
            + annihilate_deformed(spec, np.conj(fd.fminus), psi))


def apply_pair_twist(root_of_unity: Root, psi: FockVector,
                     tolerance: float = 1e-10) -> FockVector:
    """Multiply sector n by prod_{i<j} K_r(p_i, p_j) for a +-1-valued root r.

    The multiplier is real symmetric, hence a unitary that preserves the
    symmetric sectors, fixes the vacuum, and commutes with translations.
    Raises when r fails to be +-1-valued on the grid-induced arguments.
    """
    spec = KernelSpec(root=root_of_unity, mass=psi.grid.mass)
    rmat = kernel_matrix(spec, psi.grid)
    if np.max(np.abs(rmat * rmat - 1.0)) > tolerance:
        raise ValueError("root is not +-1-valued on the grid-induced arguments")
    secs = [psi.sectors[0].copy()]
    for n in range(1, psi.truncation + 1):
        pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
        secs.append(fock._pair_multiply(psi.sectors[n], rmat, pairs))
    return FockVector(psi.grid, tuple(secs))


class SharpTwistVariant(Enum):
    """The two sector-diagonal realizations of the sharp-momentum twist."""

    PAIRWISE_SUM = "pairwise-sum"
    SIGN_SPLIT = "sign-split"


def _sharp_twist_matrix(spec: KernelSpec, variant: SharpTwistVariant,
                        p: float, grid: MomentumGrid) -> np.ndarray:
    pts = grid.points
    if variant is SharpTwistVariant.PAIRWISE_SUM:
        # argument for the pair (p_i, p_j): w(p_i, p) + w(p_j, p), the wedge of
        # the summed on-shell two-momentum against p
        wvec = wedge_invariant(pts, p, spec.mass)
        args = wvec[:, None] + wvec[None, :]
    else:
        # sign-split: sgn(max(p_i, p_j) - p) * |w(p_i, p_j)| with sgn(0) := -1
        wpair = wedge_invariant(pts[:, None], pts[None, :], spec.mass)
        sgn = np.where(np.maximum(pts[:, None], pts[None, :]) - p > 0.0, 1.0, -1.0)
        args = sgn * np.abs(wpair)
    return np.asarray(eval_root_at_zero_one(spec.root, args))


def sharp_momentum_twist(spec: KernelSpec, variant: SharpTwistVariant, p: float,
                         psi: FockVector, adjoint: bool = False) -> FockVector:
    """Sector-diagonal unitary whose adjoint action turns a(p) into a_K(p).

    Sector n is multiplied by prod_{i<j} of the variant's pair phase; sectors
    n <= 1 and the vacuum are untouched.
    """
    gmat = _sharp_twist_matrix(spec, variant, p, psi.grid)
    if adjoint:
        gmat = np.conj(gmat)
    secs = [psi.sectors[0].copy()]
    for n in range(1, psi.truncation + 1):
        pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
        secs.append(fock._pair_multiply(psi.sectors[n], gmat, pairs))
    return FockVector(psi.grid, tuple(secs))


def _grid_index(grid: MomentumGrid, p: float) -> int:
    hits = np.nonzero(grid.points == p)[0]
    if hits.size != 1:
        raise ValueError(f"momentum {p} is not a grid point")
    return int(hits[0])


def sharp_annihilate(p: float, psi: FockVector) -> FockVector:
    """Sharp-momentum annihilator a(p): [a(p) Psi]_n = sqrt(n+1) Psi_{n+1}(p, ...).

    Distributional normalization (no quadrature weight); p must be a grid
    point so this is a plain row extraction.
    """
    idx = _grid_index(psi.grid, p)
    secs = []
    for n in range(psi.truncation):
        secs.append(math.sqrt(n + 1) * psi.sectors[n + 1][idx].copy())
    secs.append(np.zeros((psi.grid.size,) * psi.truncation, dtype=complex))
    return FockVector(psi.grid, tuple(secs))


def annihilate_deformed_sharp(spec: KernelSpec, p: float, psi: FockVector) -> FockVector:
    """Sharp deformed annihilator a_K(p) = a(p) dressed with prod_k K(p, p_k)."""
    grid = psi.grid
    idx = _grid_index(grid, p)
    row = np.array([kernel(spec, p, q) for q in grid.points])
    secs = []
    for n in range(psi.truncation):
        src = psi.sectors[n + 1][idx]
        secs.append(math.sqrt(n + 1) * fock._axis_multiply(src, row))
    secs.append(np.zeros((grid.size,) * psi.truncation, dtype=complex))
    return FockVector(grid, tuple(secs))
