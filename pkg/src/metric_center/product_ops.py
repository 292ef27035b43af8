"""Centers and radii of finite max-metric products of subsets.

Under the max metric the distance from a product point to the product
boundary is the minimum of the factor boundary distances, which makes the
product center a product of per-factor slices: the factor attaining the
minimal radius contributes its center, every other factor contributes its
``hat set`` (the points at boundary distance at least that minimal radius).
Degenerate combinations of clopen and empty-center factors are classified
explicitly.

Every closed-form answer can be replayed against two independent routes:
a direct exact computation of the max-metric distance field on the line,
and a rasterized Chebyshev-grid oracle that applies the brute-force
definitions to the sampled product.
"""

from dataclasses import dataclass
from fractions import Fraction
import math
import os

import numpy as np
from scipy.ndimage import binary_dilation, distance_transform_cdt

from .core import ExtReal, INF, ext_min
from .exact_line import (
    IntervalSet, REAL_LINE, EMPTY, descriptors_line, topology_line,
    distance_superlevel,
)
from . import grid_region as gr
from .finite_space import FiniteSpace

__all__ = [
    "LineFactor", "GridFactor", "HatSet", "ProductSpace",
    "hat_set", "product_center", "product_center_n", "ProductCenter",
    "product_direct_line", "product_sets_equal",
    "product_oracle", "ProductOracleReport", "CellCapExceeded",
    "product_finite_space", "rasterize_product_set", "DEFAULT_CELL_CAP",
]

DEFAULT_CELL_CAP = 10_000_000
CELL_CAP_ENV = "METRIC_CENTER_CELL_CAP"


def _cell_cap(explicit):
    if explicit is not None:
        return explicit
    return int(os.environ.get(CELL_CAP_ENV, DEFAULT_CELL_CAP))


# ---------------------------------------------------------------------------
# factors
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class HatSet:
    """Points of a subset at boundary distance >= threshold."""

    base: object
    threshold: ExtReal
    value: object  # engine-specific handle

    @property
    def is_empty(self) -> bool:
        return self.value.is_empty


class LineFactor:
    """A subset of an interval-set subspace of the line."""

    regime = "exact"

    def __init__(self, subset: IntervalSet, ambient: IntervalSet = REAL_LINE):
        self.subset = subset
        self.ambient = ambient
        self.report = descriptors_line(subset, ambient)
        _, _, boundary = topology_line(subset, ambient)
        self._boundary_points = (boundary.point_values()
                                 if not boundary.is_empty else [])

    def hat(self, t: ExtReal) -> HatSet:
        if not self._boundary_points:
            # clopen within its ambient: boundary distance is +inf everywhere
            return HatSet(self.subset, t, self.subset)
        if t.is_infinite:
            return HatSet(self.subset, t, EMPTY)
        thr = Fraction(t.value)  # exact also when t carries a float payload
        value = distance_superlevel(self.subset, self._boundary_points, thr)
        return HatSet(self.subset, t, value)


class GridFactor:
    """A rasterized region used as one product factor."""

    regime = "float"

    def __init__(self, grid: gr.GridRegion):
        self.grid = grid
        self.report = gr.descriptors_grid(grid)
        self._boundary = gr.boundary_cells(grid)
        if self._boundary.any():
            self._field = gr.distance_to_set(grid, self._boundary).values()
        else:
            self._field = None

    def hat(self, t: ExtReal) -> HatSet:
        occ = self.grid.occupancy
        if self._field is None:
            return HatSet(self.grid, t, gr._CellMask(occ, self.grid))
        if t.is_infinite:
            value = np.zeros_like(occ)
        else:
            value = occ & (self._field >= float(t) - 1e-12)
        return HatSet(self.grid, t, gr._CellMask(value, self.grid))


# ---------------------------------------------------------------------------
# closed-form product center
# ---------------------------------------------------------------------------

def hat_set(factor, t: ExtReal) -> HatSet:
    """Hat set of one factor at threshold t (t=0 gives the whole subset)."""
    return factor.hat(t)


@dataclass(frozen=True)
class ProductCenter:
    """Closed-form product answer: per-factor slices whose product is the
    center, the product radius, and the classification tag."""

    slices: tuple          # one handle per factor
    radius: ExtReal
    threshold: ExtReal
    case: str

    @property
    def is_empty(self) -> bool:
        return any(s.is_empty for s in self.slices)


def _mixed_regimes(factors) -> bool:
    regimes = {f.regime for f in factors}
    return len(regimes) > 1


def _radius_of(factor, as_float: bool) -> ExtReal:
    r = factor.report.radius
    if as_float and r.is_finite and r.regime == "exact":
        return ExtReal.from_float(float(r.value))
    return r


def product_center_n(factors) -> ProductCenter:
    """Center and radius of a finite product, via per-factor hat sets.

    The shared threshold is the minimal factor radius; each factor
    contributes its hat set at that threshold (for the minimal factor this
    is exactly its center).  The product radius equals the threshold when
    every slice is nonempty and is infinite otherwise; with mixed finite
    and infinite factor radii an empty slice leaves the minimum rule
    inapplicable, which the case tag records.
    """
    if len(factors) < 2:
        raise ValueError("a product needs at least two factors")
    as_float = _mixed_regimes(factors)
    radii = [_radius_of(f, as_float) for f in factors]
    t = radii[0]
    for r in radii[1:]:
        t = ext_min(t, r)
    slices = tuple(f.hat(t) for f in factors)
    empty = any(s.is_empty for s in slices)

    all_inf = all(r.is_infinite for r in radii)
    if all_inf:
        clopen = [f.report.clopen for f in factors]
        if all(clopen):
            case = "all-clopen"
        elif any(clopen):
            case = "clopen-times-empty-center"
        else:
            case = "all-empty-center"
    elif any(r.is_infinite for r in radii):
        case = ("infinite-partner-deep-slice" if not empty
                else "infinite-partner-empty-slice")
    else:
        finite_vals = radii
        case = ("equal-radii" if all(r == finite_vals[0] for r in finite_vals)
                else "generic")

    radius = INF if empty else t
    return ProductCenter(slices=tuple(s.value for s in slices),
                         radius=radius, threshold=t, case=case)


def product_center(factor_a, factor_b) -> ProductCenter:
    """Two-factor specialization of :func:`product_center_n`."""
    return product_center_n([factor_a, factor_b])


# ---------------------------------------------------------------------------
# independent exact route on the line
# ---------------------------------------------------------------------------

def product_direct_line(a: IntervalSet, ya: IntervalSet,
                        b: IntervalSet, yb: IntervalSet):
    """Exact max-metric product descriptors derived from the distance field.

    For bounded nonclopen factors with finite radii the distance from
    (x, y) to the product boundary is min(dA(x), dB(y)); its supremum over
    A x B is M = min(rad A, rad B) and the maximizer region is
    ({dA = M} x {dB >= M}) union ({dA >= M} x {dB = M}).  Returns
    (rectangles, radius) where rectangles is a list of (x-set, y-set)
    products.  This route never consults the hat-set theorem.
    """
    rep_a = descriptors_line(a, ya)
    rep_b = descriptors_line(b, yb)
    if rep_a.radius.is_infinite or rep_b.radius.is_infinite:
        raise ValueError("direct route expects finite factor radii")
    _, _, bnd_a = topology_line(a, ya)
    _, _, bnd_b = topology_line(b, yb)
    pa = bnd_a.point_values()
    pb = bnd_b.point_values()
    m = min(Fraction(rep_a.radius.value), Fraction(rep_b.radius.value))

    a_ge = distance_superlevel(a, pa, m)
    a_gt = distance_superlevel(a, pa, m, strict=True)
    a_eq = a_ge.difference(a_gt)
    b_ge = distance_superlevel(b, pb, m)
    b_gt = distance_superlevel(b, pb, m, strict=True)
    b_eq = b_ge.difference(b_gt)

    rects = [(a_eq, b_ge), (a_ge, b_eq)]
    nonempty = any(not x.is_empty and not y.is_empty for x, y in rects)
    radius = ExtReal.exact(m) if nonempty else INF
    return rects, radius


def _axis_candidates(sets):
    values = set()
    for s in sets:
        for p in s.pieces:
            for v in (p.lo, p.hi):
                if not isinstance(v, float):
                    values.add(v)
    if not values:
        return [Fraction(0)]
    vals = sorted(values)
    cands = list(vals)
    cands.extend((u + v) / 2 for u, v in zip(vals, vals[1:]))
    cands.append(vals[0] - 1)
    cands.append(vals[-1] + 1)
    return cands


def product_sets_equal(rects_a, rects_b) -> bool:
    """Exact equality of two unions of products of interval sets.

    Both unions are built from axis-aligned products, so membership is
    constant on the arrangement cells of the endpoint coordinates; testing
    every endpoint, every gap midpoint and one outside point per axis
    decides equality.
    """
    xs = _axis_candidates([x for x, _ in rects_a] + [x for x, _ in rects_b])
    ys = _axis_candidates([y for _, y in rects_a] + [y for _, y in rects_b])

    def member(rects, x, y):
        return any(sx.contains(x) and sy.contains(y) for sx, sy in rects)

    for x in xs:
        for y in ys:
            if member(rects_a, x, y) != member(rects_b, x, y):
                return False
    return True


# ---------------------------------------------------------------------------
# the Chebyshev grid oracle
# ---------------------------------------------------------------------------

class CellCapExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class ProductOracleReport:
    """Brute-force descriptors of the sampled product."""

    h: float
    index_lo: tuple
    shape: tuple
    occupancy: np.ndarray
    boundary: np.ndarray
    center: np.ndarray
    radius: float
    quasi_center: np.ndarray
    quasi_radius: float
    diameter: float


def _cheb_ball(ndim):
    return np.ones((3,) * ndim, dtype=bool)


def _cheb_distance_steps(mask: np.ndarray) -> np.ndarray:
    """Exact Chebyshev distance (in grid steps) to the mask cells."""
    if not mask.any():
        return np.full(mask.shape, np.iinfo(np.int32).max, dtype=np.int64)
    return distance_transform_cdt(~mask, metric="chessboard").astype(np.int64)


def product_oracle(factors, h, cell_cap: int | None = None) -> ProductOracleReport:
    """Rasterize a product of bounded line subsets and apply the sampled
    definitions under the max metric.

    Each factor is sampled at lattice points k*h with a 3h margin; the
    product grid then carries the Chebyshev metric, whose unit balls are
    the 3^n cell neighborhoods, so the h-scale closure and interior are
    single dilations and the distance fields are exact chessboard
    transforms.  The total cell count is capped (METRIC_CENTER_CELL_CAP
    overrides the default); an oversized product errors with no partial
    result.
    """
    h = Fraction(h) if not isinstance(h, Fraction) else h
    if h <= 0:
        raise ValueError("sampling step must be positive")
    axes_masks = []
    index_los = []
    for f in factors:
        if not isinstance(f, LineFactor):
            raise TypeError("the product oracle samples line factors only")
        if f.ambient != REAL_LINE:
            raise ValueError("the product oracle expects full-line ambients")
        hull = f.subset.hull()
        if hull is None:
            raise ValueError("cannot sample an empty factor")
        lo, hi = hull
        if isinstance(lo, float) or isinstance(hi, float):
            raise ValueError("the product oracle needs bounded factors")
        k0 = math.floor((lo - 3 * h) / h)
        k1 = math.ceil((hi + 3 * h) / h)
        mask = np.array([f.subset.contains(Fraction(k) * h)
                         for k in range(k0, k1 + 1)])
        axes_masks.append(mask)
        index_los.append(k0)

    shape = tuple(m.size for m in axes_masks)
    cells = 1
    for s in shape:
        cells *= s
    cap = _cell_cap(cell_cap)
    if cells > cap:
        raise CellCapExceeded(
            f"product grid would hold {cells} cells, above the cap {cap}")

    occ = axes_masks[0]
    for m in axes_masks[1:]:
        occ = np.logical_and.outer(occ, m)

    ball = _cheb_ball(occ.ndim)
    closure = binary_dilation(occ, structure=ball)
    interior = occ & ~binary_dilation(~occ, structure=ball)
    boundary = closure & ~interior

    hf = float(h)
    p = _cheb_distance_steps(boundary)
    pmax = int(p[occ].max())
    center = occ & (p >= pmax - 1)  # band tau = h, i.e. one step

    q = _cheb_distance_steps(~occ)
    qmax = int(q[occ].max())
    qcenter = occ & (q >= qmax - 1)

    spans = []
    occupied = np.argwhere(occ)
    for d in range(occ.ndim):
        spans.append(int(occupied[:, d].max() - occupied[:, d].min()))
    diameter = max(spans) * hf

    return ProductOracleReport(
        h=hf, index_lo=tuple(index_los), shape=shape, occupancy=occ,
        boundary=boundary, center=center, radius=pmax * hf,
        quasi_center=qcenter, quasi_radius=qmax * hf, diameter=diameter)


def rasterize_product_set(rects, report: ProductOracleReport) -> np.ndarray:
    """Cell mask of a union of interval-set products on the oracle grid.

    Membership is widened by h/2 per axis so that off-lattice sets (e.g.
    centers at odd rationals) still own their nearest sample.
    """
    h = Fraction(repr(report.h))
    half = h / 2
    out = np.zeros(report.shape, dtype=bool)
    for rect in rects:
        axis_masks = []
        for d, s in enumerate(rect):
            widened = IntervalSet.from_pieces(
                [_widen_piece(p, half) for p in s.pieces])
            k0 = report.index_lo[d]
            axis_masks.append(np.array(
                [widened.contains(Fraction(k0 + k) * h)
                 for k in range(report.shape[d])]))
        m = axis_masks[0]
        for am in axis_masks[1:]:
            m = np.logical_and.outer(m, am)
        out |= m
    return out


def _widen_piece(p, half):
    from .exact_line import Piece
    lo = p.lo if isinstance(p.lo, float) else p.lo - half
    hi = p.hi if isinstance(p.hi, float) else p.hi + half
    return Piece(lo, True, hi, True)


def oracle_hausdorff_steps(mask_a: np.ndarray, mask_b: np.ndarray) -> int:
    """Chebyshev Hausdorff distance between two nonempty masks, in steps."""
    if not mask_a.any() or not mask_b.any():
        raise ValueError("Hausdorff distance needs nonempty masks")
    to_b = _cheb_distance_steps(mask_b)
    to_a = _cheb_distance_steps(mask_a)
    return max(int(to_b[mask_a].max()), int(to_a[mask_b].max()))


# ---------------------------------------------------------------------------
# explicit product spaces (small finite factors)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ProductSpace:
    """Max-metric product of finite factor spaces, materialized."""

    factors: tuple

    def space(self) -> FiniteSpace:
        return product_finite_space(*self.factors)


def product_finite_space(*spaces: FiniteSpace) -> FiniteSpace:
    """Materialize the max-metric product of small finite spaces."""
    n = 1
    for s in spaces:
        n *= s.n
    if n > 20000:
        raise ValueError("product space too large to materialize")
    dist = np.zeros((1, 1))
    for s in spaces:
        d = s.full_matrix()
        dist = np.maximum(np.kron(dist, np.ones(d.shape)),
                          np.kron(np.ones(dist.shape), d))
    h = min(s.h for s in spaces)
    return FiniteSpace(n=n, dist=dist, h=h)
