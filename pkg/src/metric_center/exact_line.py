"""Exact descriptors for finite interval unions on the rational line.

An ``IntervalSet`` is a normalized finite union of disjoint intervals with
rational (or infinite) endpoints and open/closed flags.  Both the subset A
and its ambient subspace Y of the real line are interval sets; topology is
computed relative to Y, distances are the usual absolute difference.

Everything here is bit-exact: endpoints are ``fractions.Fraction``, suprema
and their attainment are decided symbolically from endpoint flags, never by
sampling.  This is the reference engine the sampled engines are checked
against.
"""

from dataclasses import dataclass
from fractions import Fraction
import math
import re

from .core import ExtReal, INF, DescriptorReport

__all__ = [
    "Piece",
    "IntervalSet",
    "normalize",
    "topology_line",
    "descriptors_line",
    "diameter_line",
    "center_components",
    "distance_point_to_set",
    "distance_superlevel",
    "distance_sublevel",
    "sup_distance_report",
    "parse_interval_text",
    "REAL_LINE",
    "EMPTY",
]

NEG_INF = -math.inf
POS_INF = math.inf


def _as_endpoint(v):
    """Coerce an endpoint to Fraction or +-inf. Floats other than inf are
    rejected: this engine is exact only."""
    if isinstance(v, float):
        if math.isinf(v):
            return v
        raise TypeError(
            f"float endpoint {v!r} rejected: the line engine is exact; "
            "pass int, Fraction or a rational string")
    return Fraction(v)


def _is_inf(v) -> bool:
    return isinstance(v, float) and math.isinf(v)


@dataclass(frozen=True)
class Piece:
    """One interval: (lo, hi) with closure flags; lo == hi is a point."""

    lo: object
    lo_closed: bool
    hi: object
    hi_closed: bool

    def __post_init__(self):
        object.__setattr__(self, "lo", _as_endpoint(self.lo))
        object.__setattr__(self, "hi", _as_endpoint(self.hi))
        if _is_inf(self.lo) and self.lo_closed:
            object.__setattr__(self, "lo_closed", False)
        if _is_inf(self.hi) and self.hi_closed:
            object.__setattr__(self, "hi_closed", False)
        if _is_inf(self.lo) and self.lo > 0:
            raise ValueError("lower endpoint cannot be +inf")
        if _is_inf(self.hi) and self.hi < 0:
            raise ValueError("upper endpoint cannot be -inf")
        if self.lo > self.hi:
            raise ValueError(f"inverted interval: lo={self.lo} > hi={self.hi}")
        if self.lo == self.hi and not (self.lo_closed and self.hi_closed):
            raise ValueError(
                f"degenerate interval at {self.lo} must be closed on both sides")

    @property
    def is_point(self) -> bool:
        return self.lo == self.hi

    @property
    def bounded(self) -> bool:
        return not (_is_inf(self.lo) or _is_inf(self.hi))

    def contains(self, x: Fraction) -> bool:
        if x < self.lo or (x == self.lo and not self.lo_closed):
            return False
        if x > self.hi or (x == self.hi and not self.hi_closed):
            return False
        return True

    def render(self) -> str:
        if self.is_point:
            return "{%s}" % self.lo
        lo = "-inf" if _is_inf(self.lo) else str(self.lo)
        hi = "inf" if _is_inf(self.hi) else str(self.hi)
        return "%s%s,%s%s" % ("[" if self.lo_closed else "(", lo, hi,
                              "]" if self.hi_closed else ")")


def _merge_sorted(pieces):
    """Merge a lo-sorted piece list; adjacency merges when a shared endpoint
    is covered by at least one side."""
    out = []
    for p in pieces:
        if not out:
            out.append(p)
            continue
        q = out[-1]
        touches = p.lo < q.hi or (p.lo == q.hi and (q.hi_closed or p.lo_closed))
        if touches:
            # keep the farther upper endpoint; on ties closed wins
            if (p.hi, p.hi_closed) > (q.hi, q.hi_closed):
                hi, hic = p.hi, p.hi_closed
            else:
                hi, hic = q.hi, q.hi_closed
            lo_closed = q.lo_closed or (p.lo == q.lo and p.lo_closed)
            out[-1] = Piece(q.lo, lo_closed, hi, hic)
        else:
            out.append(p)
    return out


@dataclass(frozen=True)
class IntervalSet:
    """Canonical finite union of intervals. Equal sets have equal pieces."""

    pieces: tuple

    # -- constructors ---------------------------------------------------

    @staticmethod
    def from_pieces(raw) -> "IntervalSet":
        pieces = sorted(raw, key=lambda p: (p.lo, not p.lo_closed))
        return IntervalSet(tuple(_merge_sorted(pieces)))

    @staticmethod
    def empty() -> "IntervalSet":
        return EMPTY

    @staticmethod
    def point(q) -> "IntervalSet":
        return IntervalSet((Piece(q, True, q, True),))

    @staticmethod
    def points(qs) -> "IntervalSet":
        return IntervalSet.from_pieces([Piece(q, True, q, True) for q in qs])

    @staticmethod
    def closed(lo, hi) -> "IntervalSet":
        return IntervalSet((Piece(lo, True, hi, True),))

    @staticmethod
    def open(lo, hi) -> "IntervalSet":
        return IntervalSet((Piece(lo, False, hi, False),))

    @staticmethod
    def interval(lo, lo_closed, hi, hi_closed) -> "IntervalSet":
        return IntervalSet((Piece(lo, lo_closed, hi, hi_closed),))

    @staticmethod
    def real_line() -> "IntervalSet":
        return REAL_LINE

    @staticmethod
    def from_text(text: str) -> "IntervalSet":
        return parse_interval_text(text)

    # -- basic queries ---------------------------------------------------

    @property
    def is_empty(self) -> bool:
        return not self.pieces

    @property
    def bounded(self) -> bool:
        return all(p.bounded for p in self.pieces)

    def contains(self, x) -> bool:
        x = Fraction(x)
        return any(p.contains(x) for p in self.pieces)

    def is_subset_of(self, other: "IntervalSet") -> bool:
        return self.difference(other).is_empty

    def __eq__(self, other):
        return isinstance(other, IntervalSet) and self.pieces == other.pieces

    def __hash__(self):
        return hash(self.pieces)

    def render(self) -> str:
        if self.is_empty:
            return "{}"
        return ",".join(p.render() for p in self.pieces)

    def __repr__(self):
        return f"IntervalSet({self.render()})"

    # -- set algebra -------------------------------------------------------

    def union(self, other: "IntervalSet") -> "IntervalSet":
        return IntervalSet.from_pieces(self.pieces + other.pieces)

    def complement(self) -> "IntervalSet":
        """Complement within the whole real line."""
        if self.is_empty:
            return REAL_LINE
        out = []
        first = self.pieces[0]
        if not _is_inf(first.lo):
            out.append(Piece(NEG_INF, False, first.lo, not first.lo_closed))
        for a, b in zip(self.pieces, self.pieces[1:]):
            out.append(Piece(a.hi, not a.hi_closed, b.lo, not b.lo_closed))
        last = self.pieces[-1]
        if not _is_inf(last.hi):
            out.append(Piece(last.hi, not last.hi_closed, POS_INF, False))
        return IntervalSet(tuple(out))

    def intersect(self, other: "IntervalSet") -> "IntervalSet":
        return self.complement().union(other.complement()).complement()

    def difference(self, other: "IntervalSet") -> "IntervalSet":
        return self.intersect(other.complement())

    # -- topology within the full line ------------------------------------

    def closure(self) -> "IntervalSet":
        out = []
        for p in self.pieces:
            out.append(Piece(p.lo, not _is_inf(p.lo), p.hi, not _is_inf(p.hi)))
        return IntervalSet.from_pieces(out)

    def interior(self) -> "IntervalSet":
        out = []
        for p in self.pieces:
            if p.is_point:
                continue
            out.append(Piece(p.lo, False, p.hi, False))
        return IntervalSet.from_pieces(out)

    # -- metric helpers ----------------------------------------------------

    def hull(self):
        """(lo, hi) of the convex hull, or None when empty."""
        if self.is_empty:
            return None
        return self.pieces[0].lo, self.pieces[-1].hi

    def component_count(self) -> int:
        return len(self.pieces)

    def point_values(self):
        """The values of an all-degenerate set, in order."""
        if not all(p.is_point for p in self.pieces):
            raise ValueError("set has non-degenerate pieces")
        return [p.lo for p in self.pieces]


EMPTY = IntervalSet(())
REAL_LINE = IntervalSet((Piece(NEG_INF, False, POS_INF, False),))


def normalize(raw) -> IntervalSet:
    """Canonicalize a raw list of (lo, lo_closed, hi, hi_closed) tuples or
    Pieces. Inverted intervals are rejected, adjacency is merged."""
    pieces = []
    for item in raw:
        if isinstance(item, Piece):
            pieces.append(item)
        else:
            lo, lc, hi, hc = item
            pieces.append(Piece(lo, lc, hi, hc))
    return IntervalSet.from_pieces(pieces)


# ---------------------------------------------------------------------------
# parsing
# ---------------------------------------------------------------------------

_PIECE_RE = re.compile(r"\s*([\[\(][^\]\)\[\(\{\}]*[\]\)]|\{[^\}]*\})\s*,?")


def _parse_value(tok: str):
    tok = tok.strip()
    if tok in ("inf", "+inf"):
        return POS_INF
    if tok == "-inf":
        return NEG_INF
    try:
        return Fraction(tok)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"bad rational literal {tok!r}: {exc}") from None


def parse_interval_text(text: str) -> IntervalSet:
    """Parse the interval syntax: '[0,1],(2,5/2],[3,inf)', '{q}' for points.

    Whitespace is free; the empty set is '{}' or an empty string.
    """
    text = text.strip()
    if text in ("", "{}"):
        return EMPTY
    pieces = []
    pos = 0
    while pos < len(text):
        m = _PIECE_RE.match(text, pos)
        if not m:
            raise ValueError(f"cannot parse interval text at {text[pos:]!r}")
        tok = m.group(1)
        if tok.startswith("{"):
            v = _parse_value(tok[1:-1])
            pieces.append(Piece(v, True, v, True))
        else:
            body = tok[1:-1]
            parts = body.split(",")
            if len(parts) != 2:
                raise ValueError(f"interval piece {tok!r} needs two endpoints")
            lo = _parse_value(parts[0])
            hi = _parse_value(parts[1])
            pieces.append(Piece(lo, tok[0] == "[", hi, tok[-1] == "]"))
        pos = m.end()
    return IntervalSet.from_pieces(pieces)


# ---------------------------------------------------------------------------
# subspace topology
# ---------------------------------------------------------------------------

def _require_subset(a: IntervalSet, y: IntervalSet, what="subset"):
    if not a.is_subset_of(y):
        extra = a.difference(y)
        raise ValueError(
            f"{what} is not contained in the ambient: extra part {extra.render()}")


def topology_line(a: IntervalSet, y: IntervalSet = REAL_LINE):
    """Interior, closure and boundary of A relative to the subspace Y.

    closure_Y(A) = closure(A) & Y,  interior_Y(A) = Y \\ closure_Y(Y \\ A),
    boundary_Y(A) = closure_Y(A) & closure_Y(Y \\ A).
    """
    _require_subset(a, y)
    rest = y.difference(a)
    cl_a = a.closure().intersect(y)
    cl_rest = rest.closure().intersect(y)
    boundary = cl_a.intersect(cl_rest)
    interior = y.difference(cl_rest)
    return interior, cl_a, boundary


def _boundary_values(boundary: IntervalSet):
    """Boundary of an interval set in an interval-set subspace is always a
    finite point set; return its sorted values."""
    return boundary.point_values()


# ---------------------------------------------------------------------------
# exact suprema of distance fields
# ---------------------------------------------------------------------------

def distance_point_to_set(x, s: IntervalSet):
    """Exact distance from a point to an interval set (inf for empty s)."""
    x = Fraction(x)
    if s.is_empty:
        return POS_INF
    best = None
    for p in s.pieces:
        if p.contains(x) or (p.lo <= x <= p.hi):
            return Fraction(0)
        if x < p.lo:
            d = p.lo - x
        else:
            d = x - p.hi
        if best is None or d < best:
            best = d
    return best


def _sup_distance_to_points(a: IntervalSet, pts):
    """sup over a in A of d(a, pts) with exact attainment bookkeeping.

    Returns (sup, attained, maximizers). pts is a nonempty sorted list of
    Fractions; A is nonempty.  Suprema over unbounded pieces are infinite
    and never attained.  On bounded pieces the distance field is piecewise
    linear with slopes +-1, so maxima can only occur at piece endpoints or
    at midpoints of consecutive boundary points; attainment is then a pure
    membership check.
    """
    if not all(p.bounded for p in a.pieces):
        return POS_INF, False, []

    mids = [(u + v) / 2 for u, v in zip(pts, pts[1:])]

    def dist(x):
        # pts sorted: nearest by bisection would do, linear is fine at our sizes
        return min(abs(x - b) for b in pts)

    best = Fraction(-1)
    best_cands = []
    for p in a.pieces:
        cands = [p.lo, p.hi]
        cands.extend(m for m in mids if p.lo <= m <= p.hi)
        for c in cands:
            d = dist(c)
            if d > best:
                best = d
                best_cands = [c]
            elif d == best:
                best_cands.append(c)
    maximizers = sorted({c for c in best_cands if a.contains(c)})
    return best, bool(maximizers), maximizers


def _sup_distance_to_closed_set(a: IntervalSet, c: IntervalSet):
    """sup over a in A of d(a, C) for a closed interval set C, as above.

    C nonempty.  An unbounded run of A on a side where C is bounded makes
    the supremum infinite (and unattained).
    """
    a_lo, a_hi = a.hull()
    c_lo, c_hi = c.hull()
    if _is_inf(a_lo) and not _is_inf(c_lo):
        return POS_INF, False, []
    if _is_inf(a_hi) and not _is_inf(c_hi):
        return POS_INF, False, []

    gaps = []
    for u, v in zip(c.pieces, c.pieces[1:]):
        gaps.append((u.hi + v.lo) / 2)

    def dist(x):
        return distance_point_to_set(x, c)

    best = Fraction(-1)
    best_cands = []
    for p in a.pieces:
        cands = []
        if not _is_inf(p.lo):
            cands.append(p.lo)
        if not _is_inf(p.hi):
            cands.append(p.hi)
        cands.extend(m for m in gaps if p.lo <= m <= p.hi)
        for cand in cands:
            d = dist(cand)
            if d > best:
                best = d
                best_cands = [cand]
            elif d == best:
                best_cands.append(cand)
    maximizers = sorted({x for x in best_cands if a.contains(x)})
    return best, bool(maximizers), maximizers


def sup_distance_report(a: IntervalSet, target, target_kind: str):
    """Shared sup/attainment wrapper.

    target_kind 'points': target is a sorted list of boundary values.
    target_kind 'closed': target is a closed IntervalSet (complement closure).
    Returns (center IntervalSet, radius ExtReal, semi ExtReal).
    """
    if a.is_empty:
        return EMPTY, INF, ExtReal.exact(0)
    empty_target = (not target) if target_kind == "points" else target.is_empty
    if empty_target:
        # every point of A is at infinite distance from an empty target
        return a, INF, INF
    if target_kind == "points":
        sup, attained, maximizers = _sup_distance_to_points(a, target)
    else:
        sup, attained, maximizers = _sup_distance_to_closed_set(a, target)
    semi = INF if _is_inf(sup) else ExtReal.exact(sup)
    if attained:
        return IntervalSet.points(maximizers), semi, semi
    return EMPTY, INF, semi


# ---------------------------------------------------------------------------
# descriptors
# ---------------------------------------------------------------------------

def distance_superlevel(a: IntervalSet, pts, t, strict: bool = False) -> IntervalSet:
    """{x in A : d(x, pts) >= t} exactly (strict > when asked).

    pts is a list of point values; an empty list means the distance field
    is identically infinite, so the whole of A qualifies.
    """
    t = Fraction(t)
    if t < 0:
        raise ValueError("threshold must be nonnegative")
    if not pts:
        return a
    if t == 0 and not strict:
        return a
    if strict:
        balls = [Piece(b - t, True, b + t, True) for b in pts]
    else:
        balls = [Piece(b - t, False, b + t, False) for b in pts]
    return a.difference(IntervalSet.from_pieces(balls))


def distance_sublevel(a: IntervalSet, pts, alpha) -> IntervalSet:
    """{x in A : d(x, pts) <= alpha} exactly; empty when pts is empty."""
    alpha = Fraction(alpha)
    if alpha < 0:
        raise ValueError("threshold must be nonnegative")
    if not pts:
        return EMPTY
    balls = [Piece(b - alpha, True, b + alpha, True) for b in pts]
    return a.intersect(IntervalSet.from_pieces(balls))


def diameter_line(a: IntervalSet) -> ExtReal:
    """sup of pairwise distances; the empty set gets 0 by convention."""
    if a.is_empty:
        return ExtReal.exact(0)
    lo, hi = a.hull()
    if _is_inf(lo) or _is_inf(hi):
        return INF
    return ExtReal.exact(hi - lo)


def descriptors_line(a: IntervalSet, y: IntervalSet = REAL_LINE) -> DescriptorReport:
    """All six descriptors of A within the subspace Y, exactly.

    The center is the attained argmax set of the distance to the boundary;
    when the supremum is approached only at excluded endpoints the center
    is empty, the radius infinite, and the semi-radius keeps the finite sup.
    Quasi descriptors use the distance to the complement Y \\ A instead.
    """
    interior, _closure, boundary = topology_line(a, y)
    clopen = boundary.is_empty

    bpts = _boundary_values(boundary)
    center, radius, semi_radius = sup_distance_report(a, bpts, "points")

    complement_closure = y.difference(a).closure()
    qcenter, qradius, semi_qradius = sup_distance_report(
        a, complement_closure, "closed")

    return DescriptorReport(
        subset=a,
        boundary=boundary,
        interior_nonempty=not interior.is_empty,
        clopen=clopen,
        center=center,
        radius=radius,
        semi_radius=semi_radius,
        quasi_center=qcenter,
        quasi_radius=qradius,
        semi_quasi_radius=semi_qradius,
        diameter=diameter_line(a),
        engine="exact_line",
    )


def center_components(a: IntervalSet, y: IntervalSet = REAL_LINE):
    """Connected components of the exact center: (count, component list)."""
    rep = descriptors_line(a, y)
    return rep.center.component_count(), list(rep.center.pieces)
