"""Centers and radii of finite unions of separated nonclopen subsets.

For separated parts the boundary of the union is the union of the part
boundaries, so the distance field of the union is the pointwise minimum of
per-part fields.  The closed-form machinery removes from each part center
the points that sit too close to a partner boundary (the tilde set); the
parts of maximal radius whose centers survive that removal (the M
collection) contribute the union center.  When no center survives, only
bounds on the semi-radius are derivable and the result is an interval
verdict, never a fabricated point value.

The same dispatch runs over two engines: exact interval sets on the line
and h-tolerant masks over finite samples.  Every result also carries the
engine's directly computed descriptors of the union for comparison.
"""

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .core import ExtReal, INF, ext_cmp, ext_max, DescriptorReport
from .exact_line import (
    IntervalSet, REAL_LINE, descriptors_line, topology_line,
    distance_point_to_set, distance_superlevel,
)
from .finite_space import FiniteSpace, SubsetMask, descriptors_bf, eps_topology

__all__ = [
    "TildeSet", "DoubleTildeSet", "MCollection",
    "SradVerdict", "UnionResult",
    "LineUnionEngine", "FiniteUnionEngine",
    "separated_check", "union_descriptors", "union_descriptors_n",
]


@dataclass(frozen=True)
class TildeSet:
    """Center points of one part lying closer than its radius to some
    partner boundary; these cannot survive in the union center."""

    owner: str
    threshold: ExtReal
    value: object

    @property
    def is_empty(self) -> bool:
        return self.value.is_empty


@dataclass(frozen=True)
class DoubleTildeSet:
    """Points of the dominant part farther from the union boundary than the
    smaller radius; nonempty iff the union semi-radius exceeds it."""

    threshold: ExtReal
    value: object

    @property
    def is_empty(self) -> bool:
        return self.value.is_empty


@dataclass(frozen=True)
class MCollection:
    """Indices of parts achieving the maximal radius with surviving centers."""

    indices: tuple
    radius: ExtReal


@dataclass(frozen=True)
class SradVerdict:
    """Interval verdict for the semi-radius of the union."""

    lo: ExtReal
    lo_strict: bool
    hi: ExtReal
    hi_strict: bool

    @staticmethod
    def point(v: ExtReal) -> "SradVerdict":
        return SradVerdict(v, False, v, False)

    def contains(self, x: ExtReal) -> bool:
        lo_ok = ext_cmp(x, self.lo) > 0 if self.lo_strict else ext_cmp(x, self.lo) >= 0
        hi_ok = ext_cmp(x, self.hi) < 0 if self.hi_strict else ext_cmp(x, self.hi) <= 0
        return lo_ok and hi_ok

    def render(self) -> str:
        lo = "(" if self.lo_strict else "["
        hi = ")" if self.hi_strict else "]"
        return f"{lo}{self.lo.serialize()}, {self.hi.serialize()}{hi}"


@dataclass(frozen=True)
class UnionResult:
    case: str
    center: object            # None when only bounds are derivable
    radius: ExtReal | None
    srad_verdict: SradVerdict
    tildes: tuple
    double_tilde: DoubleTildeSet | None
    m_collection: MCollection | None
    direct: DescriptorReport
    warnings: tuple = ()


# ---------------------------------------------------------------------------
# engines
# ---------------------------------------------------------------------------

class LineUnionEngine:
    """Exact interval-set engine over an interval-set ambient."""

    regime = "exact"

    def __init__(self, ambient: IntervalSet = REAL_LINE):
        self.ambient = ambient

    @property
    def path_metric(self) -> bool:
        # the full line is a path metric space; proper subspaces are not
        return self.ambient == REAL_LINE

    def report(self, s: IntervalSet) -> DescriptorReport:
        return descriptors_line(s, self.ambient)

    def boundary_points(self, s: IntervalSet):
        _, _, boundary = topology_line(s, self.ambient)
        return boundary.point_values() if not boundary.is_empty else []

    def union(self, parts):
        out = parts[0]
        for p in parts[1:]:
            out = out.union(p)
        return out

    def separated(self, a: IntervalSet, b: IntervalSet):
        bad = a.closure().intersect(b).union(a.intersect(b.closure()))
        if bad.is_empty:
            return True, None
        return False, _line_witness(bad)

    def tilde(self, center: IntervalSet, partner_boundaries, threshold: ExtReal):
        pts = [p for bnd in partner_boundaries for p in bnd]
        if center.is_empty or not pts:
            return IntervalSet.empty()
        keep = []
        for v in center.point_values():
            d = min(abs(v - q) for q in pts)
            if threshold.is_infinite or d < threshold.value:
                keep.append(v)
        return IntervalSet.points(keep) if keep else IntervalSet.empty()

    def double_tilde(self, a: IntervalSet, union_boundary_pts, threshold: ExtReal):
        thr = Fraction(threshold.value)
        return distance_superlevel(a, union_boundary_pts, thr, strict=True)

    def subtract(self, a: IntervalSet, b: IntervalSet):
        return a.difference(b)

    def union_sets(self, sets):
        out = IntervalSet.empty()
        for s in sets:
            out = out.union(s)
        return out

    def radius_order(self, ra: ExtReal, rb: ExtReal) -> str:
        c = ext_cmp(ra, rb)
        return "=" if c == 0 else ("<" if c < 0 else ">")


def _line_witness(bad: IntervalSet):
    p = bad.pieces[0]
    if p.is_point:
        return p.lo
    if not isinstance(p.lo, float):
        return p.lo if p.lo_closed else (
            p.hi - 1 if isinstance(p.hi, float) else (p.lo + p.hi) / 2)
    return p.hi - 1


class FiniteUnionEngine:
    """Mask engine over one finite space, with h-scale tolerances.

    Radii within ``eq_steps * h`` of each other dispatch as equal; parts
    must be separated by a gap above ``2h`` or the case is undecidable at
    this resolution and rejected.
    """

    regime = "float"

    def __init__(self, space: FiniteSpace, eq_steps: float = 4.0):
        self.space = space
        self.eq_tol = eq_steps * space.h
        self.path_metric = False

    def report(self, s: SubsetMask) -> DescriptorReport:
        return descriptors_bf(self.space, s)

    def boundary_points(self, s: SubsetMask):
        _, _, boundary = eps_topology(self.space, s)
        return boundary

    def union(self, parts):
        out = parts[0]
        for p in parts[1:]:
            out = out.union(p)
        return out

    def separated(self, a: SubsetMask, b: SubsetMask):
        if a.intersect(b).size:
            i = int(a.intersect(b).indices()[0])
            return False, i
        da = self.space.dist_to_mask(b)[a.bits]
        gap = float(da.min()) if da.size else np.inf
        if gap > 2 * self.space.h:
            return True, None
        i = int(a.indices()[int(np.argmin(da))])
        return False, i

    def tilde(self, center: SubsetMask, partner_boundaries, threshold: ExtReal):
        if center.is_empty:
            return center
        d = np.full(self.space.n, np.inf)
        for bnd in partner_boundaries:
            if not bnd.is_empty:
                d = np.minimum(d, self.space.dist_to_mask(bnd))
        thr = np.inf if threshold.is_infinite else float(threshold)
        return SubsetMask(center.bits & (d < thr))

    def double_tilde(self, a: SubsetMask, union_boundary, threshold: ExtReal):
        d = self.space.dist_to_mask(union_boundary)
        return SubsetMask(a.bits & (d > float(threshold)))

    def subtract(self, a: SubsetMask, b: SubsetMask):
        return SubsetMask(a.bits & ~b.bits)

    def union_sets(self, sets):
        out = sets[0]
        for s in sets[1:]:
            out = out.union(s)
        return out

    def radius_order(self, ra: ExtReal, rb: ExtReal) -> str:
        if ra.is_infinite and rb.is_infinite:
            return "="
        if ra.is_infinite:
            return ">"
        if rb.is_infinite:
            return "<"
        if abs(float(ra) - float(rb)) <= self.eq_tol:
            return "="
        return ">" if float(ra) > float(rb) else "<"


# ---------------------------------------------------------------------------
# checks and dispatch
# ---------------------------------------------------------------------------

def separated_check(a, b, engine):
    """cl(A) meets B nowhere and A meets cl(B) nowhere.

    Exact on the line; on sampled spaces the parts must clear a 2h gap,
    below which separation is undecidable at the resolution.  Returns
    (ok, witness) where the witness locates an offending point.
    """
    return engine.separated(a, b)


def _require_nonclopen(reports):
    for name, rep in reports:
        if rep.clopen:
            raise ValueError(f"part {name} is clopen; union formulas need "
                             "nonclopen parts")


def union_descriptors(a, b, engine) -> UnionResult:
    """Two-part union descriptors with the full case dispatch.

    Cases with a surviving center return exact point values; cases where
    every maximal center point is absorbed return interval verdicts for
    the union semi-radius (refined by the double-tilde test when the radii
    differ).  When a part has infinite radius and its semi-radius exceeds
    the partner radius, no clause applies: the direct computation is
    returned alone, with a warning.
    """
    rep_a, rep_b = engine.report(a), engine.report(b)
    _require_nonclopen([("A", rep_a), ("B", rep_b)])
    ok, witness = engine.separated(a, b)
    if not ok:
        raise ValueError(f"parts are not separated; witness near {witness!r}")

    bnd_a = engine.boundary_points(a)
    bnd_b = engine.boundary_points(b)
    tilde_a = TildeSet("A", rep_a.radius,
                       engine.tilde(rep_a.center, [bnd_b], rep_a.radius))
    tilde_b = TildeSet("B", rep_b.radius,
                       engine.tilde(rep_b.center, [bnd_a], rep_b.radius))
    direct = engine.report(engine.union([a, b]))
    warnings = ()
    if rep_a.radius.is_infinite or rep_b.radius.is_infinite:
        warnings = ("a part has infinite radius: closed-form clauses are "
                    "only valid under their stated hypotheses",)

    # orient so the first slot holds the (weakly) larger radius
    order = engine.radius_order(rep_a.radius, rep_b.radius)
    if order == "<":
        hi_rep, lo_rep = rep_b, rep_a
        hi_tilde, lo_tilde = tilde_b, tilde_a
        hi_set, lo_set = b, a
        hi_bnd, lo_bnd = bnd_b, bnd_a
    else:
        hi_rep, lo_rep = rep_a, rep_b
        hi_tilde, lo_tilde = tilde_a, tilde_b
        hi_set, lo_set = a, b
        hi_bnd, lo_bnd = bnd_a, bnd_b
    tildes = (tilde_a, tilde_b)

    surv_hi = engine.subtract(hi_rep.center, hi_tilde.value)
    surv_lo = engine.subtract(lo_rep.center, lo_tilde.value)

    def result(case, center, radius, verdict, double_tilde=None):
        return UnionResult(case=case, center=center, radius=radius,
                           srad_verdict=verdict, tildes=tildes,
                           double_tilde=double_tilde, m_collection=None,
                           direct=direct, warnings=warnings)

    zero = (ExtReal.exact(0) if engine.regime == "exact"
            else ExtReal.from_float(0.0))

    if hi_rep.radius.is_finite:
        if order == "=":
            surv = engine.union_sets([surv_hi, surv_lo])
            if not surv.is_empty:
                return result("equal-radii-centers-survive", surv,
                              hi_rep.radius, SradVerdict.point(hi_rep.radius))
            return result("equal-radii-absorbed-bound-only", None, None,
                          SradVerdict(zero, False, hi_rep.radius, True))
        if not surv_hi.is_empty:
            return result("dominant-part-center-survives", surv_hi,
                          hi_rep.radius, SradVerdict.point(hi_rep.radius))
        # dominant center absorbed: bound the union semi-radius both ways
        union_bnd = _union_boundary(engine, hi_bnd, lo_bnd)
        dt = DoubleTildeSet(lo_rep.radius,
                            engine.double_tilde(hi_set, union_bnd,
                                                lo_rep.radius))
        if not dt.is_empty:
            verdict = SradVerdict(lo_rep.radius, True, hi_rep.radius, True)
        else:
            verdict = SradVerdict(zero, False, lo_rep.radius, False)
        return result("dominant-center-absorbed-bound-only", None, None,
                      verdict, double_tilde=dt)

    # the larger radius is infinite
    if lo_rep.radius.is_finite and ext_cmp(hi_rep.semi_radius,
                                           lo_rep.radius) <= 0:
        if not surv_lo.is_empty:
            return result("bounded-part-wins", surv_lo, lo_rep.radius,
                          SradVerdict.point(lo_rep.radius))
        return result("bounded-part-absorbed-bound-only", None, None,
                      SradVerdict(zero, False, lo_rep.radius, True))
    return result("outside-hypotheses-direct-only", None, None,
                  SradVerdict(zero, False, INF, False))


def _union_boundary(engine, bnd_a, bnd_b):
    if engine.regime == "exact":
        return sorted(set(bnd_a) | set(bnd_b))
    return bnd_a.union(bnd_b)


def union_descriptors_n(parts, engine) -> UnionResult:
    """n-part union via the maximal-radius collection.

    Each part's tilde set is built against all partner boundaries; the
    parts of maximal radius with surviving centers form M and their
    surviving centers union into the answer.  On path metric ambients the
    tilde sets of separated parts are provably empty; this is asserted and
    the simplified center formula used.
    """
    if not parts:
        raise ValueError("need at least one part")
    if len(parts) == 1:
        rep = engine.report(parts[0])
        _require_nonclopen([("A0", rep)])
        return UnionResult(case="single-part", center=rep.center,
                           radius=rep.radius,
                           srad_verdict=SradVerdict.point(rep.semi_radius),
                           tildes=(), double_tilde=None,
                           m_collection=None, direct=rep)

    reps = [engine.report(p) for p in parts]
    _require_nonclopen([(f"A{i}", r) for i, r in enumerate(reps)])
    for i in range(len(parts)):
        for j in range(i + 1, len(parts)):
            ok, witness = engine.separated(parts[i], parts[j])
            if not ok:
                raise ValueError(
                    f"parts {i} and {j} are not separated; witness near "
                    f"{witness!r}")

    boundaries = [engine.boundary_points(p) for p in parts]
    tildes = []
    for j, rep in enumerate(reps):
        partners = [boundaries[i] for i in range(len(parts)) if i != j]
        tildes.append(TildeSet(f"A{j}", rep.radius,
                               engine.tilde(rep.center, partners, rep.radius)))
    if engine.path_metric:
        for j, t in enumerate(tildes):
            if not t.is_empty:
                raise RuntimeError(
                    f"tilde set of part {j} is nonempty on a path metric "
                    "ambient; this contradicts the separated-parts argument")

    rmax = reps[0].radius
    for rep in reps[1:]:
        rmax = ext_max(rmax, rep.radius)
    member_idx = []
    survivors = []
    for j, rep in enumerate(reps):
        if engine.radius_order(rep.radius, rmax) != "=":
            continue
        surv = engine.subtract(rep.center, tildes[j].value)
        if not surv.is_empty:
            member_idx.append(j)
            survivors.append(surv)
    m = MCollection(tuple(member_idx), rmax)

    direct = engine.report(engine.union(list(parts)))
    warnings = ()
    if any(r.radius.is_infinite for r in reps):
        warnings = ("a part has infinite radius: closed-form clauses are "
                    "only valid under their stated hypotheses",)
    zero = (ExtReal.exact(0) if engine.regime == "exact"
            else ExtReal.from_float(0.0))

    if survivors:
        center = engine.union_sets(survivors)
        return UnionResult(case="max-radius-parts-survive", center=center,
                           radius=rmax, srad_verdict=SradVerdict.point(rmax),
                           tildes=tuple(tildes), double_tilde=None,
                           m_collection=m, direct=direct, warnings=warnings)
    return UnionResult(case="absorbed-bound-only", center=None, radius=None,
                       srad_verdict=SradVerdict(zero, False, rmax, False),
                       tildes=tuple(tildes), double_tilde=None,
                       m_collection=m, direct=direct, warnings=warnings)
