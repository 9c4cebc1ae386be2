"""JSON round-trips for the wire formats.

Schemas:

* Blaschke data / roots: ``{"zeros": [[re, im], ...], "sign": +-1,
  "flips": [[a, b], ...]}`` (``flips`` optional for bare Blaschke data).
* Grids: ``{"mass": m, "layout": "...", "points": [...], "weights": [...]}``
  (plus ``spacing`` for the adapted layouts).
* Tower vectors: ``{"truncation": N, "sectors": [sector_0, ...]}`` where each
  sector is the row-major (C-order) flattening as ``[[re, im], ...]``.
* Split vectors: like tower vectors with a two-level component key "n,n'".
* Kernel specs: ``{"R": <root>, "mass": m, "R1": <root|null>, "R2": <root|null>}``.
"""

from __future__ import annotations

import numpy as np

from .chiral import BiFockVector, _component_keys
from .deformation import KernelSpec
from .fock import FockVector
from .grids import ChiralGridPair, MomentumGrid
from .inner import BlaschkeSpec, Root, make_root


def _complex_array_to_json(arr: np.ndarray) -> list:
    flat = np.asarray(arr, dtype=complex).reshape(-1)
    return [[float(z.real), float(z.imag)] for z in flat]


def _complex_array_from_json(data, shape) -> np.ndarray:
    flat = np.array([complex(re, im) for re, im in data], dtype=complex)
    expected = int(np.prod(shape)) if shape else 1
    if flat.size != expected:
        raise ValueError(f"expected {expected} entries, got {flat.size}")
    return flat.reshape(shape)


def blaschke_to_json(spec: BlaschkeSpec) -> dict:
    return {"zeros": [[a.real, a.imag] for a in spec.zeros], "sign": spec.sign}


def blaschke_from_json(data: dict) -> BlaschkeSpec:
    zeros = tuple(complex(re, im) for re, im in data.get("zeros", []))
    return BlaschkeSpec(zeros=zeros, sign=int(data.get("sign", 1)))


def root_to_json(root: Root) -> dict:
    out = blaschke_to_json(root.base)
    out["flips"] = [[a, b] for a, b in root.flips]
    return out


def root_from_json(data: dict) -> Root:
    return make_root(blaschke_from_json(data), tuple(data.get("flips", [])))


def grid_to_json(grid: MomentumGrid) -> dict:
    out = {
        "mass": grid.mass,
        "layout": grid.layout,
        "points": [float(p) for p in grid.points],
        "weights": [float(w) for w in grid.weights],
    }
    if grid.spacing is not None:
        out["spacing"] = grid.spacing
    return out


def grid_from_json(data: dict) -> MomentumGrid:
    return MomentumGrid(
        points=np.array(data["points"], dtype=float),
        weights=np.array(data["weights"], dtype=float),
        mass=float(data["mass"]),
        layout=data.get("layout", "arbitrary"),
        spacing=data.get("spacing"),
    )


def fock_to_json(psi: FockVector) -> dict:
    return {
        "truncation": psi.truncation,
        "sectors": [_complex_array_to_json(s) for s in psi.sectors],
    }


def fock_from_json(data: dict, grid: MomentumGrid) -> FockVector:
    n_top = int(data["truncation"])
    sectors = data["sectors"]
    if len(sectors) != n_top + 1:
        raise ValueError("sector count does not match the truncation")
    secs = tuple(_complex_array_from_json(sec, (grid.size,) * n)
                 for n, sec in enumerate(sectors))
    return FockVector(grid, secs)


def bifock_to_json(xi: BiFockVector) -> dict:
    return {
        "truncation": xi.truncation,
        "components": {f"{a},{b}": _complex_array_to_json(c)
                       for (a, b), c in xi.components.items()},
    }


def bifock_from_json(data: dict, pair: ChiralGridPair) -> BiFockVector:
    n_top = int(data["truncation"])
    p, q = pair.n_positive, pair.n_negative
    comps = {}
    for (a, b) in _component_keys(n_top):
        raw = data["components"][f"{a},{b}"]
        comps[(a, b)] = _complex_array_from_json(raw, (p,) * a + (q,) * b)
    return BiFockVector(pair, n_top, comps)


def kernel_spec_to_json(spec: KernelSpec) -> dict:
    return {
        "R": root_to_json(spec.root),
        "mass": spec.mass,
        "R1": root_to_json(spec.extra_pos) if spec.extra_pos else None,
        "R2": root_to_json(spec.extra_neg) if spec.extra_neg else None,
    }


def kernel_spec_from_json(data: dict) -> KernelSpec:
    return KernelSpec(
        root=root_from_json(data["R"]),
        mass=float(data["mass"]),
        extra_pos=root_from_json(data["R1"]) if data.get("R1") else None,
        extra_neg=root_from_json(data["R2"]) if data.get("R2") else None,
    )
