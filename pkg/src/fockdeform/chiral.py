"""Massless chiral splitting, the exponential-vector merge, and cross twists.

For mass 0 the one-particle space splits by momentum sign, realizing the
state space as a tensor product of a positive-half and a negative-half tower.
The unitary identification with the single tower over the union grid is
fixed on exponential vectors, merge(e^psi (x) e^phi) = e^(psi (+) phi), and
acts componentwise by

    [merge Xi]_n = sum_k binom(n, k)^(1/2) Symm_n Xi_{k, n-k}

with the sign-pattern embeddings understood.  The cross twist multiplies each
(positive, negative) momentum pair by a root kernel R(-p q); conjugating it
through the merge gives a sector-diagonal twist on the union tower.  These
two twists implement the same deformation of the annihilators, which is what
:func:`check_annihilator_equivalence` and :func:`check_field_equivalence`
machine-check.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import fock
from .deformation import KernelSpec, annihilate_deformed, field_deformed
from .fock import FockVector, TestFunctionData, symmetrize, symmetrize_axes
from .grids import ChiralGridPair
from .inner import Root, eval_root


@dataclass(frozen=True)
class BiFockVector:
    """Doubly graded tower over (positive half)^a x (negative half)^b.

    ``components[(a, b)]`` has shape (P,)*a + (Q,)*b, symmetric within each
    factor, and is present exactly for a + b <= truncation (total particle
    number), matching the truncation of the merged tower.
    """

    pair: ChiralGridPair
    truncation: int
    components: dict

    def __post_init__(self):
        p, q = self.pair.n_positive, self.pair.n_negative
        comps = {}
        for (a, b) in _component_keys(self.truncation):
            if (a, b) not in self.components:
                raise ValueError(f"missing component {(a, b)}")
            arr = np.asarray(self.components[(a, b)], dtype=complex)
            if arr.shape != (p,) * a + (q,) * b:
                raise ValueError(f"component {(a, b)} has shape {arr.shape}")
            comps[(a, b)] = arr
        object.__setattr__(self, "components", comps)

    def component(self, a: int, b: int) -> np.ndarray:
        return self.components[(a, b)]

    def _check_compatible(self, other: "BiFockVector"):
        if self.truncation != other.truncation or not self.pair.union.same_as(other.pair.union):
            raise ValueError("incompatible split-space vectors")

    def __add__(self, other: "BiFockVector") -> "BiFockVector":
        self._check_compatible(other)
        return BiFockVector(self.pair, self.truncation,
                            {k: self.components[k] + other.components[k]
                             for k in self.components})

    def __sub__(self, other: "BiFockVector") -> "BiFockVector":
        self._check_compatible(other)
        return BiFockVector(self.pair, self.truncation,
                            {k: self.components[k] - other.components[k]
                             for k in self.components})

    def __mul__(self, scalar) -> "BiFockVector":
        c = complex(scalar)
        return BiFockVector(self.pair, self.truncation,
                            {k: c * v for k, v in self.components.items()})

    __rmul__ = __mul__


def _component_keys(truncation: int):
    return [(a, n - a) for n in range(truncation + 1) for a in range(n + 1)]


def bifock_zero(pair: ChiralGridPair, truncation: int) -> BiFockVector:
    p, q = pair.n_positive, pair.n_negative
    comps = {(a, b): np.zeros((p,) * a + (q,) * b, dtype=complex)
             for (a, b) in _component_keys(truncation)}
    return BiFockVector(pair, truncation, comps)


def bifock_vacuum(pair: ChiralGridPair, truncation: int) -> BiFockVector:
    out = bifock_zero(pair, truncation)
    out.components[(0, 0)] = np.array(1.0 + 0.0j)
    return out


def bifock_inner(xi: BiFockVector, eta: BiFockVector) -> complex:
    xi._check_compatible(eta)
    wp, wn = xi.pair.positive_weights, xi.pair.negative_weights
    total = 0.0 + 0.0j
    for (a, b), u in xi.components.items():
        prod = np.conj(u) * eta.components[(a, b)]
        n = a + b
        for ax in range(a):
            prod = prod * wp.reshape((1,) * ax + (wp.size,) + (1,) * (n - ax - 1))
        for ax in range(a, n):
            prod = prod * wn.reshape((1,) * ax + (wn.size,) + (1,) * (n - ax - 1))
        total += complex(np.sum(prod))
    return total


def bifock_norm(xi: BiFockVector) -> float:
    return math.sqrt(max(bifock_inner(xi, xi).real, 0.0))


def random_bifock(pair: ChiralGridPair, truncation: int, rng: np.random.Generator,
                  normalize: bool = True) -> BiFockVector:
    p, q = pair.n_positive, pair.n_negative
    comps = {}
    for (a, b) in _component_keys(truncation):
        shape = (p,) * a + (q,) * b
        raw = rng.standard_normal(shape) + 1j * rng.standard_normal(shape)
        raw = symmetrize_axes(raw, range(a))
        comps[(a, b)] = symmetrize_axes(raw, range(a, a + b))
    out = BiFockVector(pair, truncation, comps)
    if normalize:
        nrm = bifock_norm(out)
        if nrm > 0:
            out = out * (1.0 / nrm)
    return out


def exponential_pair(pair: ChiralGridPair, psi_pos, phi_neg,
                     truncation: int) -> BiFockVector:
    """e^psi (x) e^phi with component (a, b) = psi^(x a) (x) phi^(x b) / sqrt(a! b!)."""
    psi_pos = np.asarray(psi_pos, dtype=complex)
    phi_neg = np.asarray(phi_neg, dtype=complex)
    comps = {}
    for (a, b) in _component_keys(truncation):
        t = np.array(1.0 + 0.0j)
        for _ in range(a):
            t = np.multiply.outer(t, psi_pos)
        for _ in range(b):
            t = np.multiply.outer(t, phi_neg)
        comps[(a, b)] = t / math.sqrt(math.factorial(a) * math.factorial(b))
    return BiFockVector(pair, truncation, comps)


def annihilate_half(side: str, g, xi: BiFockVector) -> BiFockVector:
    """Annihilator on one tensor factor: a(g) (x) 1 for '+', 1 (x) a(g) for '-'."""
    pair = xi.pair
    if side == "+":
        w, size = pair.positive_weights, pair.n_positive
    elif side == "-":
        w, size = pair.negative_weights, pair.n_negative
    else:
        raise ValueError("side must be '+' or '-'")
    g = np.asarray(g, dtype=complex)
    if g.shape != (size,):
        raise ValueError("amplitude does not match the half-grid")
    wg = w * np.conj(g)
    out = bifock_zero(pair, xi.truncation)
    for (a, b) in _component_keys(xi.truncation):
        if side == "+":
            src_key, axis, factor = (a + 1, b), 0, math.sqrt(a + 1)
        else:
            src_key, axis, factor = (a, b + 1), a, math.sqrt(b + 1)
        if src_key not in xi.components:
            continue
        out.components[(a, b)] = factor * np.tensordot(
            wg, xi.components[src_key], axes=([0], [axis]))
    return out


def create_half(side: str, g, xi: BiFockVector) -> BiFockVector:
    """Creator on one tensor factor; the weighted adjoint of :func:`annihilate_half`."""
    pair = xi.pair
    if side == "+":
        size = pair.n_positive
    elif side == "-":
        size = pair.n_negative
    else:
        raise ValueError("side must be '+' or '-'")
    g = np.asarray(g, dtype=complex)
    if g.shape != (size,):
        raise ValueError("amplitude does not match the half-grid")
    out = bifock_zero(pair, xi.truncation)
    for (a, b) in _component_keys(xi.truncation):
        if side == "+" and a >= 1:
            raw = np.multiply.outer(g, xi.components[(a - 1, b)])
            out.components[(a, b)] = math.sqrt(a) * symmetrize_axes(raw, range(a))
        elif side == "-" and b >= 1:
            raw = np.multiply.outer(g, xi.components[(a, b - 1)])
            raw = np.moveaxis(raw, 0, a)
            out.components[(a, b)] = math.sqrt(b) * symmetrize_axes(raw, range(a, a + b))
    return out


def chiral_field(side: str, g, xi: BiFockVector) -> BiFockVector:
    """One-light-ray field create_half(g) + annihilate_half(g) on the chosen factor.

    With the antilinear annihilator convention this is hermitian below
    truncation; g is the momentum restriction of a real one-sided test
    function to its half-line.
    """
    return create_half(side, g, xi) + annihilate_half(side, g, xi)


def cross_kernel(root: Root, p: float, q: float) -> complex:
    """Ordered cross-pair kernel: R(-pq) for p > 0 > q, and exactly 1 otherwise."""
    if p == 0.0 or q == 0.0:
        raise ValueError("kernel arguments must be nonzero")
    if p > 0.0 and q < 0.0:
        return complex(eval_root(root, -p * q))
    return 1.0 + 0.0j


def _cross_matrix(root: Root, pair: ChiralGridPair) -> np.ndarray:
    """R(-p q) on positive x negative grid pairs (all arguments are > 0)."""
    args = -np.multiply.outer(pair.positive_points, pair.negative_points)
    return np.asarray(eval_root(root, args))


def apply_cross_twist_matrix(pair: ChiralGridPair, cmat: np.ndarray,
                             xi: BiFockVector) -> BiFockVector:
    """Diagonal multiplier prod_{i,j} cmat[p_i, q_j] over all cross pairs."""
    out_components = {}
    for (a, b), comp in xi.components.items():
        pairs = [(i, a + j) for i in range(a) for j in range(b)]
        out_components[(a, b)] = fock._pair_multiply(comp, cmat, pairs)
    return BiFockVector(xi.pair, xi.truncation, out_components)


def apply_cross_twist(root: Root, xi: BiFockVector, adjoint: bool = False) -> BiFockVector:
    """Cross twist: component (a, b) is multiplied by prod_{i,j} R(-p_i q_j).

    A sector-diagonal unitary fixing the vacuum and every one-sided
    component; its square is the twist of the squared root.
    """
    cmat = _cross_matrix(root, xi.pair)
    if adjoint:
        cmat = np.conj(cmat)
    return apply_cross_twist_matrix(xi.pair, cmat, xi)


def merge_chiral(xi: BiFockVector) -> FockVector:
    """Unitary identification of the split tower with the union-grid tower.

    [merge Xi]_n = sum_k binom(n, k)^(1/2) Symm_n(embedded Xi_{k, n-k}); maps
    exponential tensor pairs to exponential vectors of the direct sum.
    """
    pair = xi.pair
    grid = pair.union
    m, q = grid.size, pair.n_negative
    pos_ids = list(range(q, m))
    neg_ids = list(range(0, q))
    n_max = xi.truncation
    secs = [np.zeros((m,) * n, dtype=complex) for n in range(n_max + 1)]
    for (a, b), comp in xi.components.items():
        n = a + b
        if n == 0:
            secs[0] = secs[0] + comp
            continue
        raw = np.zeros((m,) * n, dtype=complex)
        raw[np.ix_(*([pos_ids] * a + [neg_ids] * b))] = comp
        secs[n] = secs[n] + math.sqrt(math.comb(n, a)) * symmetrize(raw)
    return FockVector(grid, tuple(secs))


def split_chiral(psi: FockVector, pair: ChiralGridPair) -> BiFockVector:
    """Inverse of :func:`merge_chiral`: sign-pattern slices with binomial unweighting."""
    if not psi.grid.same_as(pair.union):
        raise ValueError("vector does not live on the pair's union grid")
    m, q = pair.union.size, pair.n_negative
    pos_ids = list(range(q, m))
    neg_ids = list(range(0, q))
    comps = {}
    for (a, b) in _component_keys(psi.truncation):
        n = a + b
        if n == 0:
            comps[(a, b)] = psi.sectors[0].copy()
            continue
        block = psi.sectors[n][np.ix_(*([pos_ids] * a + [neg_ids] * b))]
        comps[(a, b)] = math.sqrt(math.comb(n, a)) * block
    return BiFockVector(pair, psi.truncation, comps)


def fock_cross_matrix(grid, values_fn) -> np.ndarray:
    """Ordered cross kernel on a union grid: values_fn(-p q) for p > 0 > q, else 1."""
    pts = grid.points
    args = -np.multiply.outer(pts, pts)
    mask = (pts[:, None] > 0.0) & (pts[None, :] < 0.0)
    bmat = np.ones((pts.size, pts.size), dtype=complex)
    if np.any(mask):
        bmat[mask] = values_fn(args[mask])
    return bmat


def apply_cross_twist_fock_matrix(bmat: np.ndarray, psi: FockVector) -> FockVector:
    """Multiply sector n by the full ordered double product prod_{i,j=1..n} bmat."""
    secs = [psi.sectors[0].copy()]
    for n in range(1, psi.truncation + 1):
        pairs = [(i, j) for i in range(n) for j in range(n)]
        secs.append(fock._pair_multiply(psi.sectors[n], bmat, pairs))
    return FockVector(psi.grid, tuple(secs))


def apply_cross_twist_fock(root: Root, psi: FockVector, adjoint: bool = False) -> FockVector:
    """The cross twist conjugated through the merge, as a sector-diagonal multiplier.

    Only (positive, negative) index pairs contribute nontrivial factors, so
    sectors n <= 1 are untouched.
    """
    bmat = fock_cross_matrix(psi.grid, lambda args: eval_root(root, args))
    if adjoint:
        bmat = np.conj(bmat)
    return apply_cross_twist_fock_matrix(bmat, psi)


def apply_translation_bifock(x, xi: BiFockVector) -> BiFockVector:
    """Light-ray translations on the split tower: e^(i p x_-) and e^(-i p x_+)."""
    x0, x1 = float(x[0]), float(x[1])
    ph_pos = np.exp(1j * xi.pair.positive_points * (x0 - x1))
    ph_neg = np.exp(-1j * xi.pair.negative_points * (x0 + x1))
    comps = {}
    for (a, b), comp in xi.components.items():
        out = comp
        n = a + b
        for ax in range(a):
            out = out * ph_pos.reshape((1,) * ax + (ph_pos.size,) + (1,) * (n - ax - 1))
        for ax in range(a, n):
            out = out * ph_neg.reshape((1,) * ax + (ph_neg.size,) + (1,) * (n - ax - 1))
        comps[(a, b)] = out
    return BiFockVector(xi.pair, xi.truncation, comps)


def apply_reflection_bifock(xi: BiFockVector) -> BiFockVector:
    """Factorized antiunitary reflection: componentwise complex conjugation."""
    return BiFockVector(xi.pair, xi.truncation,
                        {k: np.conj(v) for k, v in xi.components.items()})


def _support_side(pair: ChiralGridPair, amplitude: np.ndarray) -> str:
    amp = np.asarray(amplitude, dtype=complex)
    q = pair.n_negative
    on_neg = bool(np.any(amp[:q] != 0.0))
    on_pos = bool(np.any(amp[q:] != 0.0))
    if on_pos == on_neg:
        raise ValueError("amplitude must be supported on exactly one half-line")
    return "+" if on_pos else "-"


def twisted_annihilator(root: Root, amplitude, pair: ChiralGridPair,
                        psi: FockVector, route: str = "direct") -> FockVector:
    """Undeformed annihilator conjugated by the cross twist, sign-adapted.

    Positive-half amplitudes are sandwiched as twist* a twist, negative-half
    ones as twist a twist*.  ``route`` selects the realization: "direct" uses
    the sector-diagonal twist on the union tower, "split" conjugates the
    one-factor annihilator through merge/split.
    """
    side = _support_side(pair, amplitude)
    outer_adjoint = side == "+"
    if route == "direct":
        out = apply_cross_twist_fock(root, psi, adjoint=not outer_adjoint)
        out = fock.annihilate(amplitude, out)
        return apply_cross_twist_fock(root, out, adjoint=outer_adjoint)
    if route == "split":
        q = pair.n_negative
        g = amplitude[q:] if side == "+" else amplitude[:q]
        xi = split_chiral(psi, pair)
        xi = apply_cross_twist(root, xi, adjoint=not outer_adjoint)
        xi = annihilate_half(side, g, xi)
        xi = apply_cross_twist(root, xi, adjoint=outer_adjoint)
        return merge_chiral(xi)
    raise ValueError("route must be 'direct' or 'split'")


def twisted_field(root: Root, fd: TestFunctionData, pair: ChiralGridPair,
                  psi: FockVector, route: str = "direct") -> FockVector:
    """One-light-ray field conjugated by the cross twist, sign-adapted like
    :func:`twisted_annihilator`."""
    side = _support_side(pair, fd.fplus)
    if _support_side(pair, np.conj(fd.fminus)) != side:
        raise ValueError("field data must be supported on a single half-line")
    outer_adjoint = side == "+"
    if route == "direct":
        out = apply_cross_twist_fock(root, psi, adjoint=not outer_adjoint)
        out = fock.field(fd, out)
        return apply_cross_twist_fock(root, out, adjoint=outer_adjoint)
    if route == "split":
        q = pair.n_negative
        g = fd.fplus[q:] if side == "+" else fd.fplus[:q]
        xi = split_chiral(psi, pair)
        xi = apply_cross_twist(root, xi, adjoint=not outer_adjoint)
        xi = chiral_field(side, g, xi)
        xi = apply_cross_twist(root, xi, adjoint=outer_adjoint)
        return merge_chiral(xi)
    raise ValueError("route must be 'direct' or 'split'")


@dataclass(frozen=True)
class EquivalenceReport:
    """Deviations between a kernel-deformed operator and its twist conjugation."""

    side: str
    max_vector_direct: float
    max_vector_split: float
    max_matrix_direct: float
    max_matrix_split: float
    tolerance: float

    @property
    def max_deviation(self) -> float:
        return max(self.max_vector_direct, self.max_vector_split,
                   self.max_matrix_direct, self.max_matrix_split)

    @property
    def passed(self) -> bool:
        return self.max_deviation <= self.tolerance


def _compare_operators(op_a, op_b, pair: ChiralGridPair, truncation: int,
                       rng: np.random.Generator, n_vectors: int,
                       with_matrices: bool) -> tuple[float, float]:
    from .dense import FockBasis, operator_matrix

    dev_vec = 0.0
    for _ in range(n_vectors):
        probe = fock.random_fock_vector(pair.union, truncation, rng)
        dev_vec = max(dev_vec, fock.norm(op_a(probe) - op_b(probe)))
    dev_mat = 0.0
    if with_matrices:
        basis = FockBasis(pair.union, truncation)
        dev_mat = float(np.max(np.abs(operator_matrix(op_a, basis)
                                      - operator_matrix(op_b, basis))))
    return dev_vec, dev_mat


def check_annihilator_equivalence(root: Root, amplitude, pair: ChiralGridPair,
                                  truncation: int, rng: np.random.Generator,
                                  n_vectors: int = 10, tolerance: float = 1e-10,
                                  with_matrices: bool = True) -> EquivalenceReport:
    """Compare the kernel-deformed annihilator with its twist conjugation.

    For an amplitude supported on one half-line the two must agree on the
    whole truncated space; both twist realizations are exercised.
    """
    amplitude = np.asarray(amplitude, dtype=complex)
    side = _support_side(pair, amplitude)
    spec = KernelSpec(root=root, mass=0.0)

    def deformed(psi):
        return annihilate_deformed(spec, amplitude, psi)

    vec_d, mat_d = _compare_operators(
        deformed, lambda v: twisted_annihilator(root, amplitude, pair, v, "direct"),
        pair, truncation, rng, n_vectors, with_matrices)
    vec_s, mat_s = _compare_operators(
        deformed, lambda v: twisted_annihilator(root, amplitude, pair, v, "split"),
        pair, truncation, rng, n_vectors, with_matrices)
    return EquivalenceReport(side=side, max_vector_direct=vec_d, max_vector_split=vec_s,
                             max_matrix_direct=mat_d, max_matrix_split=mat_s,
                             tolerance=tolerance)


def check_field_equivalence(root: Root, fd: TestFunctionData, pair: ChiralGridPair,
                            truncation: int, rng: np.random.Generator,
                            n_vectors: int = 10, tolerance: float = 1e-10,
                            with_matrices: bool = True) -> EquivalenceReport:
    """Compare the kernel-deformed field with the twisted one-light-ray field.

    Requires real one-sided data, for which both operators are hermitian and
    generate the same deformed observables.
    """
    if not fd.real:
        raise ValueError("field equivalence is formulated for real data")
    side = _support_side(pair, fd.fplus)
    spec = KernelSpec(root=root, mass=0.0)

    def deformed(psi):
        return field_deformed(spec, fd, psi)

    vec_d, mat_d = _compare_operators(
        deformed, lambda v: twisted_field(root, fd, pair, v, "direct"),
        pair, truncation, rng, n_vectors, with_matrices)
    vec_s, mat_s = _compare_operators(
        deformed, lambda v: twisted_field(root, fd, pair, v, "split"),
        pair, truncation, rng, n_vectors, with_matrices)
    return EquivalenceReport(side=side, max_vector_direct=vec_d, max_vector_split=vec_s,
                             max_matrix_direct=mat_d, max_matrix_split=mat_s,
                             tolerance=tolerance)
