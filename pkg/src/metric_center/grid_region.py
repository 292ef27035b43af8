"""Rasterized Euclidean regions in 1, 2 or 3 dimensions.

A region is described by a small CSG tree (balls, boxes, half-planes,
points, segments, thin shells, combined with union / intersection /
difference) whose membership predicate is decidable exactly at rational
query points.  ``rasterize`` samples the predicate at cell centers of a
grid anchored at the origin: cell centers are exact integer multiples of
the spacing h, so a puncture placed at a lattice point removes exactly one
cell.  Bulk classification runs in float; cells whose float margin is
ambiguous are re-decided with exact rational arithmetic.

Distances between cells are exact: the distance transform returns integer
squared distances in grid units (the square root and the physical scale h
are applied only for reporting), and it is checked against an O(N^2)
brute-force oracle in the test suite.
"""

from dataclasses import dataclass
from fractions import Fraction
import json
import math

import numpy as np
from scipy.ndimage import distance_transform_edt, binary_dilation
from scipy.spatial import ConvexHull, QhullError

from .core import ExtReal, INF, DescriptorReport

__all__ = [
    "CSGShape", "Ball", "Box", "HalfPlane", "PointPrim", "Segment", "Shell",
    "Union", "Intersection", "Difference",
    "shape_from_json", "shape_to_json",
    "GridRegion", "rasterize", "boundary_cells",
    "DistanceField", "distance_to_set", "distance_to_set_bruteforce",
    "descriptors_grid", "largest_inscribed_balls", "inscribed_certificate",
    "NoLargestBallError", "CENTER_BAND_STEPS", "grid_hausdorff",
]

# Tolerance constants, in multiples of h.  The center band absorbs the
# worst-case rasterization offset of a continuum argmax; cross-engine
# comparisons double it again.
CENTER_BAND_STEPS = 2.0
CROSS_ENGINE_STEPS = 4.0


def _frac(v) -> Fraction:
    if isinstance(v, float):
        # JSON numbers arrive as floats; read them as their decimal literal
        return Fraction(repr(v))
    return Fraction(v)


def _frac_vec(vs):
    return tuple(_frac(v) for v in vs)


# ---------------------------------------------------------------------------
# CSG primitives
# ---------------------------------------------------------------------------

class CSGShape:
    """Base class; subclasses implement exact and bulk membership."""

    thin = False

    def member(self, point, thin_tol: Fraction) -> bool:
        raise NotImplementedError

    def classify(self, coords, thin_tol: float):
        """Return (definitely_inside, uncertain) boolean arrays."""
        raise NotImplementedError

    def bounds(self):
        """Bounding box of the closure as (lo_vec, hi_vec) of Fractions,
        or None when unbounded."""
        raise NotImplementedError

    def __or__(self, other):
        return Union((self, other))

    def __and__(self, other):
        return Intersection((self, other))

    def __sub__(self, other):
        return Difference((self, other))


def _leaf_outputs(margin, atol):
    inside = margin > atol
    uncertain = np.abs(margin) <= atol
    return inside, uncertain


@dataclass(frozen=True)
class Ball(CSGShape):
    """Solid ball: interval in 1D, disc in 2D, ball in 3D."""

    center: tuple
    r: Fraction
    closed: bool = True

    def __post_init__(self):
        object.__setattr__(self, "center", _frac_vec(self.center))
        object.__setattr__(self, "r", _frac(self.r))
        if self.r < 0:
            raise ValueError("negative radius")

    def member(self, point, thin_tol):
        s = sum((p - c) ** 2 for p, c in zip(point, self.center))
        rr = self.r ** 2
        return s <= rr if self.closed else s < rr

    def classify(self, coords, thin_tol):
        s = sum((x - float(c)) ** 2 for x, c in zip(coords, self.center))
        rr = float(self.r) ** 2
        margin = rr - s
        atol = 1e-9 * (1.0 + rr + float(np.max(s, initial=0.0)))
        return _leaf_outputs(margin, atol)

    def bounds(self):
        return (tuple(c - self.r for c in self.center),
                tuple(c + self.r for c in self.center))


@dataclass(frozen=True)
class Box(CSGShape):
    """Axis-aligned box, closed or open on all faces."""

    lo: tuple
    hi: tuple
    closed: bool = True

    def __post_init__(self):
        object.__setattr__(self, "lo", _frac_vec(self.lo))
        object.__setattr__(self, "hi", _frac_vec(self.hi))
        if any(a > b for a, b in zip(self.lo, self.hi)):
            raise ValueError("box with inverted extents")

    def member(self, point, thin_tol):
        if self.closed:
            return all(a <= p <= b for p, a, b in zip(point, self.lo, self.hi))
        return all(a < p < b for p, a, b in zip(point, self.lo, self.hi))

    def classify(self, coords, thin_tol):
        margin = None
        scale = 1.0
        for x, a, b in zip(coords, self.lo, self.hi):
            m = np.minimum(x - float(a), float(b) - x)
            margin = m if margin is None else np.minimum(margin, m)
            scale = max(scale, abs(float(a)), abs(float(b)))
        atol = 1e-9 * scale
        return _leaf_outputs(margin, atol)

    def bounds(self):
        return self.lo, self.hi


@dataclass(frozen=True)
class HalfPlane(CSGShape):
    """Points with normal . x <= offset (or strict when open)."""

    normal: tuple
    offset: Fraction
    closed: bool = True

    def __post_init__(self):
        object.__setattr__(self, "normal", _frac_vec(self.normal))
        object.__setattr__(self, "offset", _frac(self.offset))

    def member(self, point, thin_tol):
        s = sum(n * p for n, p in zip(self.normal, point))
        return s <= self.offset if self.closed else s < self.offset

    def classify(self, coords, thin_tol):
        s = sum(float(n) * x for n, x in zip(self.normal, coords))
        margin = float(self.offset) - s
        atol = 1e-9 * (1.0 + abs(float(self.offset)) +
                       float(np.max(np.abs(s), initial=0.0)))
        return _leaf_outputs(margin, atol)

    def bounds(self):
        return None


@dataclass(frozen=True)
class PointPrim(CSGShape):
    """A single point; used to puncture regions at lattice points."""

    at: tuple

    def __post_init__(self):
        object.__setattr__(self, "at", _frac_vec(self.at))

    def member(self, point, thin_tol):
        return all(p == a for p, a in zip(point, self.at))

    def classify(self, coords, thin_tol):
        s = sum((x - float(a)) ** 2 for x, a in zip(coords, self.at))
        atol = 1e-18 + 1e-12 * float(np.max(s, initial=0.0))
        inside = np.zeros_like(s, dtype=bool)
        uncertain = s <= atol
        return inside, uncertain

    def bounds(self):
        return self.at, self.at


@dataclass(frozen=True)
class Segment(CSGShape):
    """Line segment; thin, so rasterization keeps cells within h/2 of it."""

    a: tuple
    b: tuple
    thin = True

    def __post_init__(self):
        object.__setattr__(self, "a", _frac_vec(self.a))
        object.__setattr__(self, "b", _frac_vec(self.b))

    def _sq_dist_exact(self, point):
        ab = [y - x for x, y in zip(self.a, self.b)]
        ap = [p - x for x, p in zip(self.a, point)]
        denom = sum(d * d for d in ab)
        if denom == 0:
            return sum(d * d for d in ap)
        t = sum(u * v for u, v in zip(ab, ap)) / denom
        t = min(max(t, Fraction(0)), Fraction(1))
        return sum((p - (x + t * d)) ** 2
                   for p, x, d in zip(point, self.a, ab))

    def member(self, point, thin_tol):
        return self._sq_dist_exact(point) <= thin_tol ** 2

    def classify(self, coords, thin_tol):
        av = np.array([float(x) for x in self.a])
        bv = np.array([float(x) for x in self.b])
        ab = bv - av
        denom = float(ab @ ab)
        ap = [x - c for x, c in zip(coords, av)]
        if denom == 0.0:
            sq = sum(d * d for d in ap)
        else:
            t = sum(d * c for d, c in zip(ap, ab)) / denom
            t = np.clip(t, 0.0, 1.0)
            sq = sum((d - t * c) ** 2 for d, c in zip(ap, ab))
        margin = thin_tol ** 2 - sq
        atol = 1e-9 * (1.0 + thin_tol ** 2 + float(np.max(sq, initial=0.0)))
        return _leaf_outputs(margin, atol)

    def bounds(self):
        return (tuple(min(x, y) for x, y in zip(self.a, self.b)),
                tuple(max(x, y) for x, y in zip(self.a, self.b)))


@dataclass(frozen=True)
class Shell(CSGShape):
    """Sphere shell (circle in 2D); thin like Segment."""

    center: tuple
    r: Fraction
    thin = True

    def __post_init__(self):
        object.__setattr__(self, "center", _frac_vec(self.center))
        object.__setattr__(self, "r", _frac(self.r))
        if self.r < 0:
            raise ValueError("negative radius")

    def member(self, point, thin_tol):
        s = sum((p - c) ** 2 for p, c in zip(point, self.center))
        lo = self.r - thin_tol
        hi = self.r + thin_tol
        if lo < 0:
            lo = Fraction(0)
        return lo ** 2 <= s <= hi ** 2

    def classify(self, coords, thin_tol):
        s = sum((x - float(c)) ** 2 for x, c in zip(coords, self.center))
        d = np.sqrt(s)
        margin = thin_tol - np.abs(d - float(self.r))
        atol = 1e-9 * (1.0 + float(self.r))
        return _leaf_outputs(margin, atol)

    def bounds(self):
        return (tuple(c - self.r for c in self.center),
                tuple(c + self.r for c in self.center))


def _bounds_union(parts):
    parts = [p for p in parts if p is not None]
    if not parts:
        return None
    lo = tuple(min(b[0][d] for b in parts) for d in range(len(parts[0][0])))
    hi = tuple(max(b[1][d] for b in parts) for d in range(len(parts[0][0])))
    return lo, hi


@dataclass(frozen=True)
class Union(CSGShape):
    args: tuple

    def member(self, point, thin_tol):
        return any(s.member(point, thin_tol) for s in self.args)

    def classify(self, coords, thin_tol):
        inside = None
        uncertain = None
        for s in self.args:
            i, u = s.classify(coords, thin_tol)
            inside = i if inside is None else inside | i
            uncertain = u if uncertain is None else uncertain | u
        return inside, uncertain & ~inside

    def bounds(self):
        bs = [s.bounds() for s in self.args]
        if any(b is None for b in bs):
            return None
        return _bounds_union(bs)


@dataclass(frozen=True)
class Intersection(CSGShape):
    args: tuple

    def member(self, point, thin_tol):
        return all(s.member(point, thin_tol) for s in self.args)

    def classify(self, coords, thin_tol):
        inside = None
        definitely_out = None
        any_uncertain = None
        for s in self.args:
            i, u = s.classify(coords, thin_tol)
            o = ~i & ~u
            inside = i if inside is None else inside & i
            definitely_out = o if definitely_out is None else definitely_out | o
            any_uncertain = u if any_uncertain is None else any_uncertain | u
        return inside, any_uncertain & ~inside & ~definitely_out

    def bounds(self):
        bs = [s.bounds() for s in self.args]
        bs = [b for b in bs if b is not None]
        if not bs:
            return None
        dim = len(bs[0][0])
        lo = tuple(max(b[0][d] for b in bs) for d in range(dim))
        hi = tuple(min(b[1][d] for b in bs) for d in range(dim))
        if any(a > b for a, b in zip(lo, hi)):
            return tuple(Fraction(0) for _ in range(dim)), tuple(
                Fraction(0) for _ in range(dim))
        return lo, hi


@dataclass(frozen=True)
class Difference(CSGShape):
    """First argument minus the union of the rest."""

    args: tuple

    def member(self, point, thin_tol):
        if not self.args[0].member(point, thin_tol):
            return False
        return not any(s.member(point, thin_tol) for s in self.args[1:])

    def classify(self, coords, thin_tol):
        base_in, base_un = self.args[0].classify(coords, thin_tol)
        rest_in = None
        rest_un = None
        for s in self.args[1:]:
            i, u = s.classify(coords, thin_tol)
            rest_in = i if rest_in is None else rest_in | i
            rest_un = u if rest_un is None else rest_un | u
        if rest_in is None:
            return base_in, base_un
        rest_un = rest_un & ~rest_in
        rest_out = ~rest_in & ~rest_un
        inside = base_in & rest_out
        base_out = ~base_in & ~base_un
        definitely_out = base_out | rest_in
        return inside, ~inside & ~definitely_out

    def bounds(self):
        return self.args[0].bounds()


# ---------------------------------------------------------------------------
# JSON form
# ---------------------------------------------------------------------------

_COMBOS = {"union": Union, "intersection": Intersection, "difference": Difference}


def shape_from_json(node) -> CSGShape:
    """Build a CSG tree from the JSON document form.

    Node types: union | intersection | difference (with "args"), and the
    primitives disc (alias ball), box, halfplane, point, segment, circle
    (thin shell).  Unknown node types or keys are rejected.
    """
    if not isinstance(node, dict):
        raise ValueError(f"CSG node must be an object, got {node!r}")
    kind = node.get("type")
    if kind in _COMBOS:
        _expect_keys(node, {"type", "args"})
        args = tuple(shape_from_json(a) for a in node["args"])
        if not args:
            raise ValueError(f"{kind} node needs at least one argument")
        return _COMBOS[kind](args)
    if kind in ("disc", "ball"):
        _expect_keys(node, {"type", "center", "r", "closed"})
        return Ball(tuple(node["center"]), node["r"], node.get("closed", True))
    if kind == "box":
        _expect_keys(node, {"type", "lo", "hi", "closed"})
        return Box(tuple(node["lo"]), tuple(node["hi"]), node.get("closed", True))
    if kind == "halfplane":
        _expect_keys(node, {"type", "normal", "offset", "closed"})
        return HalfPlane(tuple(node["normal"]), node["offset"],
                         node.get("closed", True))
    if kind == "point":
        _expect_keys(node, {"type", "at"})
        return PointPrim(tuple(node["at"]))
    if kind == "segment":
        _expect_keys(node, {"type", "a", "b"})
        return Segment(tuple(node["a"]), tuple(node["b"]))
    if kind == "circle":
        _expect_keys(node, {"type", "center", "r"})
        return Shell(tuple(node["center"]), node["r"])
    raise ValueError(f"unknown CSG node type {kind!r}")


def _expect_keys(node, allowed):
    extra = set(node) - allowed
    if extra:
        raise ValueError(
            f"unknown keys {sorted(extra)} in CSG node of type {node.get('type')!r}")


def _num_json(v: Fraction):
    return str(v) if v.denominator != 1 else int(v)


def shape_to_json(shape: CSGShape):
    if isinstance(shape, Ball):
        return {"type": "disc", "center": [_num_json(c) for c in shape.center],
                "r": _num_json(shape.r), "closed": shape.closed}
    if isinstance(shape, Box):
        return {"type": "box", "lo": [_num_json(c) for c in shape.lo],
                "hi": [_num_json(c) for c in shape.hi], "closed": shape.closed}
    if isinstance(shape, HalfPlane):
        return {"type": "halfplane", "normal": [_num_json(c) for c in shape.normal],
                "offset": _num_json(shape.offset), "closed": shape.closed}
    if isinstance(shape, PointPrim):
        return {"type": "point", "at": [_num_json(c) for c in shape.at]}
    if isinstance(shape, Segment):
        return {"type": "segment", "a": [_num_json(c) for c in shape.a],
                "b": [_num_json(c) for c in shape.b]}
    if isinstance(shape, Shell):
        return {"type": "circle", "center": [_num_json(c) for c in shape.center],
                "r": _num_json(shape.r)}
    for name, cls in _COMBOS.items():
        if isinstance(shape, cls):
            return {"type": name, "args": [shape_to_json(a) for a in shape.args]}
    raise TypeError(f"cannot serialize {shape!r}")


# ---------------------------------------------------------------------------
# the grid
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GridRegion:
    """Occupancy of a CSG shape on an origin-anchored grid.

    Cell centers sit at integer multiples of h; ``index_lo`` holds the
    first lattice index per axis.  The bounding box always leaves at least
    2h of empty margin around the shape closure so the complement is
    visible on all sides.
    """

    shape: CSGShape
    h: Fraction
    index_lo: tuple
    occupancy: np.ndarray
    bbox: tuple

    def __post_init__(self):
        occ = np.asarray(self.occupancy, dtype=bool)
        occ.setflags(write=False)
        object.__setattr__(self, "occupancy", occ)

    @property
    def ndim(self) -> int:
        return self.occupancy.ndim

    @property
    def h_float(self) -> float:
        return float(self.h)

    def axis_coords(self, d: int) -> np.ndarray:
        k0 = self.index_lo[d]
        n = self.occupancy.shape[d]
        return np.array([float((k0 + k) * self.h) for k in range(n)])

    def cell_coords(self, cells: np.ndarray) -> np.ndarray:
        """Physical coordinates (float) of cell index rows."""
        return (np.asarray(cells) + np.array(self.index_lo)) * self.h_float

    def cell_coords_exact(self, cell) -> tuple:
        return tuple((Fraction(int(k)) + lo) * self.h
                     for k, lo in zip(cell, self.index_lo))

    def occupied_cells(self) -> np.ndarray:
        return np.argwhere(self.occupancy)


def rasterize(shape: CSGShape, bbox, h) -> GridRegion:
    """Sample the shape membership at cell centers of the bbox grid.

    bbox is a sequence of (lo, hi) pairs, one per axis, and must leave a
    margin of at least 2h around the shape closure.  Thin primitives keep
    cells whose center is within h/2 of the set; point primitives match
    lattice points exactly.
    """
    h = _frac(h)
    if h <= 0:
        raise ValueError("grid spacing h must be positive")
    bbox = tuple((_frac(lo), _frac(hi)) for lo, hi in bbox)
    ndim = len(bbox)
    if ndim not in (1, 2, 3):
        raise ValueError("supported dimensions are 1, 2 and 3")

    b = shape.bounds()
    if b is not None:
        lo_b, hi_b = b
        if len(lo_b) != ndim:
            raise ValueError("shape dimension does not match bbox")
        for d in range(ndim):
            if bbox[d][0] > lo_b[d] - 2 * h or bbox[d][1] < hi_b[d] + 2 * h:
                raise ValueError(
                    f"bbox too tight on axis {d}: needs a 2h margin around "
                    f"the shape closure [{lo_b[d]},{hi_b[d]}]")
    else:
        raise ValueError("unbounded shape: intersect it down to a bounded one")

    index_lo = tuple(math.ceil(bbox[d][0] / h) for d in range(ndim))
    index_hi = tuple(math.floor(bbox[d][1] / h) for d in range(ndim))
    axes = [np.array([float((k) * h) for k in range(index_lo[d], index_hi[d] + 1)])
            for d in range(ndim)]
    mesh = np.meshgrid(*axes, indexing="ij")

    thin_tol_f = float(h) / 2.0
    inside, uncertain = shape.classify(mesh, thin_tol_f)

    occ = np.array(inside, dtype=bool)
    thin_tol = h / 2
    for cell in np.argwhere(uncertain):
        point = tuple((Fraction(index_lo[d] + int(cell[d]))) * h
                      for d in range(ndim))
        occ[tuple(cell)] = shape.member(point, thin_tol)
    return GridRegion(shape=shape, h=h, index_lo=index_lo, occupancy=occ,
                      bbox=bbox)


def _face_dilate(mask: np.ndarray) -> np.ndarray:
    """Cells equal to or face-adjacent to the mask (2n neighbors)."""
    out = mask.copy()
    for d in range(mask.ndim):
        lo = [slice(None)] * mask.ndim
        hi = [slice(None)] * mask.ndim
        lo[d] = slice(None, -1)
        hi[d] = slice(1, None)
        out[tuple(lo)] |= mask[tuple(hi)]
        out[tuple(hi)] |= mask[tuple(lo)]
    return out


def boundary_cells(g: GridRegion) -> np.ndarray:
    """Cells of closure(A) meeting closure(complement) under face adjacency.

    Occupied cells with an unoccupied face neighbor, plus unoccupied cells
    with an occupied face neighbor.  Empty iff the region is grid-clopen
    (only the empty occupancy, given the margin rule).
    """
    occ = g.occupancy
    return (occ & _face_dilate(~occ)) | (~occ & _face_dilate(occ))


# ---------------------------------------------------------------------------
# exact distance transforms
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DistanceField:
    """Per-cell distance to a seed set, exact in squared grid units."""

    sq: np.ndarray          # int64 squared distances in grid steps
    h: float
    all_infinite: bool = False

    def values(self) -> np.ndarray:
        if self.all_infinite:
            return np.full(self.sq.shape, np.inf)
        return np.sqrt(self.sq) * self.h


def distance_to_set(g: GridRegion, seed_mask: np.ndarray) -> DistanceField:
    """Exact Euclidean distance from every cell center to the seed cells.

    Computed from the feature (nearest-seed) transform, so the squared
    distances are exact integers; equality against the brute-force oracle
    is therefore meaningful bit for bit.  An empty seed set yields an
    all-infinite field with a flag.
    """
    seed = np.asarray(seed_mask, dtype=bool)
    if seed.shape != g.occupancy.shape:
        raise ValueError("seed mask shape mismatch")
    if not seed.any():
        return DistanceField(sq=np.zeros(seed.shape, dtype=np.int64),
                             h=g.h_float, all_infinite=True)
    indices = distance_transform_edt(~seed, return_distances=False,
                                     return_indices=True)
    grids = np.indices(seed.shape)
    sq = np.zeros(seed.shape, dtype=np.int64)
    for d in range(seed.ndim):
        delta = grids[d].astype(np.int64) - indices[d].astype(np.int64)
        sq += delta * delta
    return DistanceField(sq=sq, h=g.h_float)


def distance_to_set_bruteforce(shape, seed_mask: np.ndarray,
                               h: float = 1.0) -> DistanceField:
    """O(N * |seeds|) reference oracle for the distance transform."""
    seed = np.asarray(seed_mask, dtype=bool)
    if not seed.any():
        return DistanceField(sq=np.zeros(seed.shape, dtype=np.int64),
                             h=float(h), all_infinite=True)
    seeds = np.argwhere(seed).astype(np.int64)
    cells = np.indices(seed.shape).reshape(seed.ndim, -1).T.astype(np.int64)
    out = np.empty(cells.shape[0], dtype=np.int64)
    chunk = max(1, 10_000_000 // max(1, seeds.shape[0]))
    for start in range(0, cells.shape[0], chunk):
        block = cells[start:start + chunk]
        diff = block[:, None, :] - seeds[None, :, :]
        out[start:start + block.shape[0]] = (diff * diff).sum(axis=2).min(axis=1)
    return DistanceField(sq=out.reshape(seed.shape), h=float(h))


# ---------------------------------------------------------------------------
# descriptors
# ---------------------------------------------------------------------------

def _interior_cells(occ: np.ndarray) -> np.ndarray:
    return occ & ~_face_dilate(~occ)


def _diameter_of_points(pts: np.ndarray) -> float:
    """Exact max pairwise Euclidean distance of a point cloud."""
    n = pts.shape[0]
    if n <= 1:
        return 0.0
    if n > 4000 and pts.shape[1] >= 2:
        try:
            hull = ConvexHull(pts)
            pts = pts[hull.vertices]
        except QhullError:
            # degenerate cloud: project onto its principal subspace
            centered = pts - pts.mean(axis=0)
            _, s, vt = np.linalg.svd(centered, full_matrices=False)
            keep = s > 1e-12 * (s[0] if s.size else 1.0)
            if keep.sum() <= 1:
                t = centered @ vt[0]
                return float(t.max() - t.min())
            pts = np.unique(pts, axis=0)
    best = 0.0
    chunk = max(1, 8_000_000 // max(1, pts.shape[0]))
    for start in range(0, pts.shape[0], chunk):
        block = pts[start:start + chunk]
        diff = block[:, None, :] - pts[None, :, :]
        best = max(best, float(np.sqrt((diff * diff).sum(axis=2)).max()))
    return best


def _band_threshold_sq(max_sq: int, band_steps: float) -> float:
    """Squared-grid-unit threshold for 'within band_steps of the max'."""
    root = math.sqrt(max_sq) - band_steps
    if root <= 0:
        return -1.0
    return root * root - 1e-9


_THIN_NOTE = ("thin region: no interior cells at this resolution, "
              "descriptors trusted only to O(h)")
_ATTAINED_NOTE = ("grid samples always attain suprema, so semi values "
                  "equal their radii")


def descriptors_grid(g: GridRegion,
                     band_steps: float = CENTER_BAND_STEPS) -> DescriptorReport:
    """Descriptor bundle of the rasterized region.

    The center keeps every occupied cell within ``band_steps * h`` of the
    maximal boundary distance (a single argmax cell would misrepresent
    continuum centers, which are sets); quasi fields use the distance to
    the complement instead of the boundary.
    """
    occ = g.occupancy
    none = np.zeros_like(occ)

    def mask(m):
        return _CellMask(m, g)

    if not occ.any():
        zero = ExtReal.from_float(0.0)
        return DescriptorReport(
            subset=mask(occ), boundary=mask(none), interior_nonempty=False,
            clopen=True, center=mask(none), radius=INF, semi_radius=zero,
            quasi_center=mask(none), quasi_radius=INF, semi_quasi_radius=zero,
            diameter=zero, engine="grid_region", scale=g.h_float)

    boundary = boundary_cells(g)
    clopen = not boundary.any()
    notes = [_ATTAINED_NOTE]

    if clopen:
        center, radius, semi = occ, INF, INF
    else:
        p = distance_to_set(g, boundary)
        pmax_sq = int(p.sq[occ].max())
        center = occ & (p.sq >= _band_threshold_sq(pmax_sq, band_steps))
        radius = semi = ExtReal.from_float(math.sqrt(pmax_sq) * g.h_float)

    comp = ~occ
    if not comp.any():
        qcenter, qradius, qsemi = occ, INF, INF
    else:
        q = distance_to_set(g, comp)
        qmax_sq = int(q.sq[occ].max())
        qcenter = occ & (q.sq >= _band_threshold_sq(qmax_sq, band_steps))
        qradius = qsemi = ExtReal.from_float(math.sqrt(qmax_sq) * g.h_float)

    interior = _interior_cells(occ)
    if not interior.any():
        notes.append(_THIN_NOTE)

    diameter = _diameter_of_points(g.cell_coords(g.occupied_cells()))
    return DescriptorReport(
        subset=mask(occ),
        boundary=mask(boundary),
        interior_nonempty=bool(interior.any()),
        clopen=clopen,
        center=mask(center),
        radius=radius,
        semi_radius=semi,
        quasi_center=mask(qcenter),
        quasi_radius=qradius,
        semi_quasi_radius=qsemi,
        diameter=ExtReal.from_float(diameter),
        engine="grid_region",
        scale=g.h_float,
        notes=tuple(notes),
    )


@dataclass(frozen=True)
class _CellMask:
    """Cell mask handle satisfying the report point-set protocol."""

    cells: np.ndarray
    grid: GridRegion

    def __post_init__(self):
        c = np.asarray(self.cells, dtype=bool)
        c.setflags(write=False)
        object.__setattr__(self, "cells", c)

    @property
    def is_empty(self) -> bool:
        return not bool(self.cells.any())

    def is_subset_of(self, other) -> bool:
        return bool(np.all(~self.cells | other.cells))

    def coords(self) -> np.ndarray:
        return self.grid.cell_coords(np.argwhere(self.cells))


# ---------------------------------------------------------------------------
# largest inscribed balls
# ---------------------------------------------------------------------------

class NoLargestBallError(ValueError):
    """No largest inscribed open ball exists (empty quasi-center regime)."""


@dataclass(frozen=True)
class InscribedBallResult:
    centers: np.ndarray
    r: ExtReal
    r_sq: int
    certificate: "InscribedCertificate"


@dataclass(frozen=True)
class InscribedCertificate:
    contained_ok: bool
    maximal_ok: bool
    detail: str

    @property
    def ok(self) -> bool:
        return self.contained_ok and self.maximal_ok


def _sqrt_le_sqrt_minus_k(a: np.ndarray, b: int, k: int) -> np.ndarray:
    """Exact integer test sqrt(a) <= sqrt(b) - k for nonneg ints."""
    rhs = b - a - k * k
    with np.errstate(over="ignore"):
        return (rhs >= 0) & (4 * k * k * a <= rhs * rhs)


def _sqrt_le_sqrt_plus_k(a: int, b: int, k: int) -> bool:
    lhs = a - b - k * k
    if lhs <= 0:
        return True
    return lhs * lhs <= 4 * k * k * b


def inscribed_certificate(g: GridRegion, centers: np.ndarray,
                          r_sq: int) -> InscribedCertificate:
    """Exhaustive two-sided check of an inscribed-ball answer.

    (a) contained: every cell within r - h of a returned center is occupied;
    (b) maximal: no cell sits farther than r + h from the complement.
    Both tests run in exact integer squared grid units over all cells.
    """
    occ = g.occupancy
    to_centers = distance_to_set(g, centers)
    inside_ball = _sqrt_le_sqrt_minus_k(to_centers.sq, r_sq, 1)
    bad_a = inside_ball & ~occ
    contained_ok = not bool(bad_a.any())
    detail_a = ""
    if not contained_ok:
        cell = tuple(int(i) for i in np.argwhere(bad_a)[0])
        detail_a = f"unoccupied cell {cell} lies within r-h of a center; "

    to_comp = distance_to_set(g, ~occ)
    qmax_sq = int(to_comp.sq[occ].max()) if occ.any() else 0
    maximal_ok = _sqrt_le_sqrt_plus_k(qmax_sq, r_sq, 1)
    detail_b = ""
    if not maximal_ok:
        detail_b = (f"a cell clears the complement by more than r+h "
                    f"(squared units {qmax_sq} vs {r_sq})")
    return InscribedCertificate(contained_ok, maximal_ok, detail_a + detail_b)


def largest_inscribed_balls(g: GridRegion) -> InscribedBallResult:
    """Centers and radius of the largest open balls inside the region.

    The centers are the exact argmax cells of the distance to the
    complement (the quasi-center in its sharp, unbanded form) and the
    radius is that maximal distance.  The result ships with the exhaustive
    two-sided certificate.  A region whose grid boundary is empty has no
    largest inscribed ball (a larger one always fits); that case raises.
    """
    occ = g.occupancy
    if not occ.any():
        raise NoLargestBallError(
            "empty region: no open ball of positive radius fits at all")
    comp = ~occ
    if not comp.any() or not boundary_cells(g).any():
        raise NoLargestBallError(
            "grid-clopen region: every ball fits, so none is largest")
    q = distance_to_set(g, comp)
    r_sq = int(q.sq[occ].max())
    centers = occ & (q.sq == r_sq)
    r = ExtReal.from_float(math.sqrt(r_sq) * g.h_float)
    cert = inscribed_certificate(g, centers, r_sq)
    return InscribedBallResult(centers=centers, r=r, r_sq=r_sq,
                               certificate=cert)


# ---------------------------------------------------------------------------
# mask geometry helpers shared by tests and suites
# ---------------------------------------------------------------------------

def grid_hausdorff(g: GridRegion, mask_a: np.ndarray,
                   mask_b: np.ndarray) -> float:
    """Hausdorff distance between two nonempty cell masks, in physical units."""
    if not mask_a.any() or not mask_b.any():
        raise ValueError("Hausdorff distance needs nonempty masks")
    to_b = distance_to_set(g, mask_b).values()
    to_a = distance_to_set(g, mask_a).values()
    return max(float(to_b[mask_a].max()), float(to_a[mask_b].max()))
