"""Finite metric spaces with an h-scale discrete topology.

In a finite metric space every subset is literally clopen, so the
continuous boundary notion degenerates.  We use the resolution-scale
surrogate instead, with an explicit parameter h:

    closure_h(A)  = { x : d(x, A) <= h }
    interior_h(A) = { a in A : d(a, complement of A) > h }
    boundary_h(A) = closure_h(A) minus interior_h(A)

As h shrinks with denser sampling of a fixed continuous region, the
h-boundary converges to the true boundary.  Descriptors computed here are
definition-level brute force: argmax of a distance field over the sample,
with a tolerance band tau = h so that continuum centers (which are sets)
are recovered rather than a single arbitrary sample.

Suprema over a finite sample are always attained, so the empty-center
phenomena of the exact line engine cannot arise here; reports carry a note
saying so.
"""

from dataclasses import dataclass, field
import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import shortest_path as _sp_shortest_path
from scipy.spatial.distance import cdist

from .core import ExtReal, INF, DescriptorReport

__all__ = [
    "FiniteSpace",
    "SubsetMask",
    "validate_metric",
    "shortest_path_metric",
    "eps_topology",
    "descriptors_bf",
    "isometry_transport_check",
    "load_distance_csv",
    "load_edge_list",
    "load_point_cloud",
]

_CHUNK = 1024  # rows per block in chunked distance kernels


def _h_slack(h: float) -> float:
    # float grids produce distances like 0.1000000000000000９ for nominal h;
    # all threshold comparisons against h use this slack consistently
    return h * (1.0 + 1e-9) + 1e-12


@dataclass(frozen=True)
class SubsetMask:
    """Membership flags over the points of one FiniteSpace."""

    bits: np.ndarray

    def __post_init__(self):
        bits = np.asarray(self.bits, dtype=bool)
        bits.setflags(write=False)
        object.__setattr__(self, "bits", bits)

    @property
    def is_empty(self) -> bool:
        return not bool(self.bits.any())

    @property
    def size(self) -> int:
        return int(self.bits.sum())

    def is_subset_of(self, other: "SubsetMask") -> bool:
        return bool(np.all(~self.bits | other.bits))

    def complement(self) -> "SubsetMask":
        return SubsetMask(~self.bits)

    def union(self, other: "SubsetMask") -> "SubsetMask":
        return SubsetMask(self.bits | other.bits)

    def intersect(self, other: "SubsetMask") -> "SubsetMask":
        return SubsetMask(self.bits & other.bits)

    def indices(self) -> np.ndarray:
        return np.flatnonzero(self.bits)

    def __eq__(self, other):
        return isinstance(other, SubsetMask) and np.array_equal(self.bits, other.bits)

    def __hash__(self):
        return hash(self.bits.tobytes())


@dataclass(frozen=True)
class FiniteSpace:
    """An explicit finite metric space.

    Either ``dist`` (a full n x n matrix) or ``coords`` must be given.  For
    coordinate clouds the metric is 'euclidean' or 'max'; distances are then
    computed on demand in blocks, which keeps 20k-point samples feasible.
    ``groups`` with ``bridge`` inflates cross-group distances by an additive
    constant, the standard way to glue far-apart samples into one space
    without materializing their cross geometry.
    """

    n: int
    dist: np.ndarray | None = None
    coords: np.ndarray | None = None
    metric: str = "euclidean"
    h: float = 1.0
    groups: np.ndarray | None = None
    bridge: float = 0.0

    def __post_init__(self):
        if self.h <= 0:
            raise ValueError("resolution scale h must be positive")
        if self.dist is None and self.coords is None:
            raise ValueError("need a distance matrix or coordinates")
        if self.dist is not None:
            d = np.asarray(self.dist, dtype=float)
            if d.shape != (self.n, self.n):
                raise ValueError("distance matrix shape mismatch")
            d.setflags(write=False)
            object.__setattr__(self, "dist", d)
        if self.coords is not None:
            c = np.asarray(self.coords, dtype=float)
            if c.shape[0] != self.n:
                raise ValueError("coordinate row count mismatch")
            c.setflags(write=False)
            object.__setattr__(self, "coords", c)
        if self.groups is not None:
            g = np.asarray(self.groups)
            if g.shape != (self.n,):
                raise ValueError("groups length mismatch")
            g.setflags(write=False)
            object.__setattr__(self, "groups", g)

    # -- distance kernels ----------------------------------------------

    def _block(self, rows: np.ndarray, cols: np.ndarray) -> np.ndarray:
        """Distance block d(rows x cols)."""
        if self.dist is not None:
            return self.dist[np.ix_(rows, cols)]
        m = "chebyshev" if self.metric == "max" else "euclidean"
        d = cdist(self.coords[rows], self.coords[cols], metric=m)
        if self.groups is not None and self.bridge:
            cross = self.groups[rows][:, None] != self.groups[cols][None, :]
            d = d + self.bridge * cross
        return d

    def dist_to_mask(self, mask: SubsetMask) -> np.ndarray:
        """d(i, S) for every point i; +inf when S is empty."""
        if mask.is_empty:
            return np.full(self.n, np.inf)
        cols = mask.indices()
        out = np.empty(self.n)
        for start in range(0, self.n, _CHUNK):
            rows = np.arange(start, min(start + _CHUNK, self.n))
            out[rows] = self._block(rows, cols).min(axis=1)
        return out

    def max_pairwise(self, mask: SubsetMask) -> float:
        """Diameter of the masked subset (0 for empty or singleton)."""
        idx = mask.indices()
        if idx.size <= 1:
            return 0.0
        best = 0.0
        for start in range(0, idx.size, _CHUNK):
            rows = idx[start:start + _CHUNK]
            best = max(best, float(self._block(rows, idx).max()))
        return best

    def full_matrix(self) -> np.ndarray:
        if self.dist is not None:
            return self.dist
        if self.n > 8192:
            raise ValueError("refusing to materialize a matrix this large")
        return self._block(np.arange(self.n), np.arange(self.n))


def validate_metric(dist: np.ndarray, max_violations: int = 5,
                    tol: float | None = None) -> list:
    """Exhaustive O(n^3) metric-axiom check; returns the first violations.

    Each violation is a tuple (kind, indices, detail).  An empty list means
    the matrix is a metric.  ``tol`` absorbs float rounding in matrices
    built from coordinates; it defaults to 1e-9 of the largest entry.
    """
    d = np.asarray(dist, dtype=float)
    out = []
    if d.ndim != 2 or d.shape[0] != d.shape[1]:
        return [("shape", d.shape, "matrix is not square")]
    n = d.shape[0]
    if tol is None:
        finite = d[np.isfinite(d)]
        tol = 1e-9 * (float(finite.max()) if finite.size else 1.0)
    diag = np.abs(np.diagonal(d))
    for i in np.flatnonzero(diag > tol)[:max_violations]:
        out.append(("diagonal", (int(i),), f"d(i,i)={d[i, i]!r} nonzero"))
    asym = np.abs(d - d.T)
    for i, j in zip(*np.nonzero(asym > tol)):
        if len(out) >= max_violations:
            return out
        if i < j:
            out.append(("symmetry", (int(i), int(j)),
                        f"d(i,j)={d[i, j]!r} != d(j,i)={d[j, i]!r}"))
    neg = d < -tol
    for i, j in zip(*np.nonzero(neg)):
        if len(out) >= max_violations:
            return out
        out.append(("negative", (int(i), int(j)), f"d(i,j)={d[i, j]!r} < 0"))
    off = ~np.eye(n, dtype=bool)
    for i, j in zip(*np.nonzero((np.abs(d) <= tol) & off)):
        if len(out) >= max_violations:
            return out
        if i < j:
            out.append(("identity", (int(i), int(j)), "distinct points at distance 0"))
    if out:
        return out
    for k in range(n):
        slack = d - (d[:, k][:, None] + d[k][None, :])
        bad = np.argwhere(slack > tol)
        for i, j in bad:
            out.append(("triangle", (int(i), int(j), int(k)),
                        f"d(i,j)={d[i, j]!r} > d(i,k)+d(k,j)={d[i, k] + d[k, j]!r}"))
            if len(out) >= max_violations:
                return out
    return out


def shortest_path_metric(n_vertices: int, edges, h: float | None = None,
                         allow_disconnected: bool = False) -> FiniteSpace:
    """All-pairs shortest-path space from a weighted undirected edge list.

    Edge weights must be positive.  Disconnected input is rejected unless
    ``allow_disconnected`` is set, in which case unreachable pairs keep
    +inf distances.  h defaults to the minimum edge weight.
    """
    rows, cols, weights = [], [], []
    for u, v, w in edges:
        if w <= 0:
            raise ValueError(f"edge ({u},{v}) has nonpositive weight {w}")
        rows += [u, v]
        cols += [v, u]
        weights += [w, w]
    graph = csr_matrix((weights, (rows, cols)), shape=(n_vertices, n_vertices))
    dist = _sp_shortest_path(graph, method="D", directed=False)
    if np.isinf(dist).any() and not allow_disconnected:
        i, j = np.argwhere(np.isinf(dist))[0]
        raise ValueError(
            f"graph is disconnected: no path between {int(i)} and {int(j)} "
            "(pass allow_disconnected=True to keep +inf distances)")
    if h is None:
        h = float(min(w for _, _, w in edges))
    return FiniteSpace(n=n_vertices, dist=dist, h=h)


def eps_topology(space: FiniteSpace, a: SubsetMask):
    """h-scale interior, closure and boundary masks of A."""
    if a.bits.shape != (space.n,):
        raise ValueError("mask size does not match the space")
    h_eff = _h_slack(space.h)
    if a.is_empty:
        empty = SubsetMask(np.zeros(space.n, dtype=bool))
        return empty, empty, empty
    d_to_a = space.dist_to_mask(a)
    closure = SubsetMask(d_to_a <= h_eff)
    comp = a.complement()
    if comp.is_empty:
        interior = a
    else:
        d_to_comp = space.dist_to_mask(comp)
        interior = SubsetMask(a.bits & (d_to_comp > h_eff))
    boundary = SubsetMask(closure.bits & ~interior.bits)
    return interior, closure, boundary


_ATTAINED_NOTE = ("finite samples always attain suprema, so semi values "
                  "equal their radii and empty centers cannot arise here")


def descriptors_bf(space: FiniteSpace, a: SubsetMask) -> DescriptorReport:
    """Definition-level descriptors of the masked subset.

    center = argmax over A of d(., boundary_h(A)) widened by the band
    tau = h; quasi variants replace the boundary with the complement.
    An empty h-boundary means A is h-clopen: center = A, radius = +inf.
    """
    interior, _closure, boundary = eps_topology(space, a)
    clopen = boundary.is_empty
    none = SubsetMask(np.zeros(space.n, dtype=bool))
    band = _h_slack(space.h)

    if a.is_empty:
        zero = ExtReal.from_float(0.0)
        return DescriptorReport(
            subset=a, boundary=boundary, interior_nonempty=False, clopen=True,
            center=none, radius=INF, semi_radius=zero,
            quasi_center=none, quasi_radius=INF, semi_quasi_radius=zero,
            diameter=zero, engine="finite_space_bf", scale=space.h,
            notes=(_ATTAINED_NOTE,))

    if clopen:
        center, radius, semi = a, INF, INF
    else:
        p = space.dist_to_mask(boundary)
        pmax = float(p[a.bits].max())
        center = SubsetMask(a.bits & (p >= pmax - band))
        radius = semi = ExtReal.from_float(pmax)

    comp = a.complement()
    if comp.is_empty:
        qcenter, qradius, qsemi = a, INF, INF
    else:
        q = space.dist_to_mask(comp)
        qmax = float(q[a.bits].max())
        qcenter = SubsetMask(a.bits & (q >= qmax - band))
        qradius = qsemi = ExtReal.from_float(qmax)

    return DescriptorReport(
        subset=a,
        boundary=boundary,
        interior_nonempty=not interior.is_empty,
        clopen=clopen,
        center=center,
        radius=radius,
        semi_radius=semi,
        quasi_center=qcenter,
        quasi_radius=qradius,
        semi_quasi_radius=qsemi,
        diameter=ExtReal.from_float(space.max_pairwise(a)),
        engine="finite_space_bf",
        scale=space.h,
        notes=(_ATTAINED_NOTE,),
    )


def isometry_transport_check(space_x: FiniteSpace, space_y: FiniteSpace,
                             f: np.ndarray, a: SubsetMask,
                             tol: float = 1e-12):
    """Verify that a distance-preserving bijection transports descriptors.

    f maps point i of X to point f[i] of Y.  The map is first checked to be
    a bijection preserving all pairwise distances (rejected with a witness
    pair otherwise); then f(center_X(A)) must equal center_Y(f(A)) and the
    radii must agree, as computed by descriptors_bf on both sides.
    Returns (ok, detail).
    """
    f = np.asarray(f)
    if space_x.n != space_y.n or sorted(f.tolist()) != list(range(space_y.n)):
        return False, "f is not a bijection between the point sets"
    scale = 1.0
    for start in range(0, space_x.n, _CHUNK):
        rows = np.arange(start, min(start + _CHUNK, space_x.n))
        dx = space_x._block(rows, np.arange(space_x.n))
        dy = space_y._block(f[rows], f)
        bad = np.argwhere(np.abs(dx - dy) > tol * max(scale, dx.max()))
        if bad.size:
            i, j = bad[0]
            return False, (f"not an isometry: d_X({int(rows[i])},{int(j)})={dx[i, j]!r}"
                           f" but image pair has {dy[i, j]!r}")
    rep_x = descriptors_bf(space_x, a)
    fa = np.zeros(space_y.n, dtype=bool)
    fa[f[a.bits]] = True
    rep_y = descriptors_bf(space_y, SubsetMask(fa))
    fcenter = np.zeros(space_y.n, dtype=bool)
    fcenter[f[rep_x.center.bits]] = True
    if not np.array_equal(fcenter, rep_y.center.bits):
        return False, "f(center) differs from the center of the image"
    if rep_x.radius != rep_y.radius:
        return False, (f"radius changed under the isometry: "
                       f"{rep_x.radius} vs {rep_y.radius}")
    return True, "ok"


# ---------------------------------------------------------------------------
# loaders
# ---------------------------------------------------------------------------

def load_distance_csv(text: str, h: float = 1.0) -> FiniteSpace:
    """Distance matrix from row-major CSV text; a non-numeric first row is
    treated as a header and skipped."""
    rows = []
    for line_no, line in enumerate(text.strip().splitlines()):
        cells = [c.strip() for c in line.split(",") if c.strip() != ""]
        if not cells:
            continue
        try:
            rows.append([float(c) for c in cells])
        except ValueError:
            if line_no == 0:
                continue
            raise
    d = np.array(rows)
    return FiniteSpace(n=d.shape[0], dist=d, h=h)


def load_edge_list(text: str, h: float | None = None,
                   allow_disconnected: bool = False) -> FiniteSpace:
    """Graph from 'u v w' lines (w optional, default 1)."""
    edges = []
    nmax = -1
    for line in text.strip().splitlines():
        parts = line.split()
        if not parts or parts[0].startswith("#"):
            continue
        u, v = int(parts[0]), int(parts[1])
        w = float(parts[2]) if len(parts) > 2 else 1.0
        edges.append((u, v, w))
        nmax = max(nmax, u, v)
    return shortest_path_metric(nmax + 1, edges, h=h,
                                allow_disconnected=allow_disconnected)


def load_point_cloud(text: str, metric: str = "euclidean",
                     h: float = 1.0) -> FiniteSpace:
    """Point cloud from CSV coordinate rows with an ambient-metric flag."""
    if metric not in ("euclidean", "max"):
        raise ValueError(f"unknown ambient metric {metric!r}")
    rows = []
    for line_no, line in enumerate(text.strip().splitlines()):
        cells = [c.strip() for c in line.split(",") if c.strip() != ""]
        if not cells:
            continue
        try:
            rows.append([float(c) for c in cells])
        except ValueError:
            if line_no == 0:
                continue
            raise
    coords = np.array(rows)
    return FiniteSpace(n=coords.shape[0], coords=coords, metric=metric, h=h)
