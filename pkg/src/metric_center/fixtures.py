"""Reusable sampled fixtures for demos, suites and tests.

These builders produce finite metric spaces with subset masks whose
continuum descriptors are known analytically, so the brute-force engine
can be checked against closed-form targets.
"""

from fractions import Fraction
import math

import numpy as np

from .exact_line import IntervalSet
from .finite_space import FiniteSpace, SubsetMask

__all__ = [
    "sample_line_subset",
    "great_circle_pair",
    "curve_complex",
    "simplex_patch",
    "SPHERE_ARC_RADIUS_TARGET",
]

# chord from a circle point to the rim of a removed chordal-radius-0.1 cap
# at its antipode: 2 * cos(asin(0.1 / 2))
SPHERE_ARC_RADIUS_TARGET = 2.0 * math.cos(math.asin(0.05))


def sample_line_subset(a: IntervalSet, step, margin_steps: int = 5,
                       h: float | None = None):
    """Sample a bounded interval set on the lattice k*step.

    Returns (FiniteSpace over the sampled segment, SubsetMask of A).
    The ambient segment extends ``margin_steps`` lattice points beyond the
    hull of A so the complement is visible on both sides.
    """
    step = Fraction(step)
    lo, hi = a.hull()
    if isinstance(lo, float) or isinstance(hi, float):
        raise ValueError("only bounded sets can be sampled")
    k0 = math.floor(lo / step) - margin_steps
    k1 = math.ceil(hi / step) + margin_steps
    ks = range(k0, k1 + 1)
    coords = np.array([[float(Fraction(k) * step)] for k in ks])
    mask = np.array([a.contains(Fraction(k) * step) for k in ks])
    space = FiniteSpace(n=coords.shape[0], coords=coords,
                        h=float(step) if h is None else h)
    return space, SubsetMask(mask)


def great_circle_pair(n_per_circle: int = 10000, cap_chord: float = 0.1,
                      bridge: float = 0.5, h: float = 0.005):
    """Two fully sampled unit great circles, each minus a small cap.

    Circle one lies in the plane y = 0 and loses the chordal-radius
    ``cap_chord`` cap around (1, 0, 0); circle two lies in z = 0 and loses
    the cap around (-1, 0, 0).  Distances are chordal within each circle;
    cross-circle distances are inflated by the additive ``bridge`` constant
    (a metric: the triangle inequality survives an additive cross-group
    term), which keeps each curve's scale-h boundary equal to its own cap
    rim.  Sampling the two curves as literal subsets of one sphere cannot
    do that: the curves cross, and complement samples of one circle sit
    arbitrarily close to the other circle's deepest point, collapsing its
    boundary-distance field.

    Returns (space, mask_a, mask_b) where A is the punctured circle one
    and B the punctured circle two.  The deepest point of A is (-1, 0, 0)
    at boundary distance 2*cos(asin(cap_chord/2)).
    """
    if n_per_circle % 4:
        raise ValueError("need a multiple of 4 so the axis points are hit")
    t = 2.0 * math.pi * np.arange(n_per_circle) / n_per_circle
    circle_a = np.stack([np.cos(t), np.zeros_like(t), np.sin(t)], axis=1)
    circle_b = np.stack([np.cos(t), np.sin(t), np.zeros_like(t)], axis=1)
    coords = np.concatenate([circle_a, circle_b])
    groups = np.concatenate([np.zeros(n_per_circle, dtype=np.int8),
                             np.ones(n_per_circle, dtype=np.int8)])
    space = FiniteSpace(n=coords.shape[0], coords=coords, h=h,
                        groups=groups, bridge=bridge)

    d_to_pole_a = np.linalg.norm(circle_a - np.array([1.0, 0.0, 0.0]), axis=1)
    d_to_pole_b = np.linalg.norm(circle_b - np.array([-1.0, 0.0, 0.0]), axis=1)
    mask_a = np.zeros(coords.shape[0], dtype=bool)
    mask_a[:n_per_circle] = d_to_pole_a > cap_chord
    mask_b = np.zeros(coords.shape[0], dtype=bool)
    mask_b[n_per_circle:] = d_to_pole_b > cap_chord
    return space, SubsetMask(mask_a), SubsetMask(mask_b)


def curve_complex(step: float = 0.02, h: float = 0.03):
    """The planar curve complex of a right semicircle and a C-shaped fence.

    The space is the union of the unit semicircle (x >= 0) and three
    segments: (0,1)-(1.5,1), (1.5,1)-(1.5,-1) and (0,-1)-(1.5,-1), sampled
    at roughly ``step`` spacing with Euclidean distances.  Returns
    (space, mask_arc, mask_fence).  The fence meets the arc at (0, 1) and
    (0, -1); those two points belong to the fence mask, so the fence's
    scale-h boundary is exactly its contact with the arc.  Deepest fence
    point from that boundary: (1.5, 0) at distance sqrt(3.25); deepest
    from the complement: (1.5, +-1) at distance sqrt(3.25) - 1.
    """
    pts = []
    tags = []  # 'arc' | 'fence'

    n_arc = max(8, int(round(math.pi / step)))
    for k in range(n_arc + 1):
        theta = -math.pi / 2 + math.pi * k / n_arc
        p = (math.cos(theta), math.sin(theta))
        # the contact points (0,+-1) are assigned to the fence below
        if k in (0, n_arc):
            continue
        pts.append(p)
        tags.append("arc")

    def seg(a, b):
        length = math.hypot(b[0] - a[0], b[1] - a[1])
        n = max(2, int(round(length / step)))
        for k in range(n + 1):
            u = k / n
            yield (a[0] + u * (b[0] - a[0]), a[1] + u * (b[1] - a[1]))

    fence_pts = set()
    for a, b in [((0.0, 1.0), (1.5, 1.0)),
                 ((1.5, 1.0), (1.5, -1.0)),
                 ((0.0, -1.0), (1.5, -1.0))]:
        for p in seg(a, b):
            fence_pts.add((round(p[0], 12), round(p[1], 12)))
    for p in sorted(fence_pts):
        pts.append(p)
        tags.append("fence")

    coords = np.array(pts)
    space = FiniteSpace(n=coords.shape[0], coords=coords, h=h)
    mask_arc = SubsetMask(np.array([t == "arc" for t in tags]))
    mask_fence = SubsetMask(np.array([t == "fence" for t in tags]))
    return space, mask_arc, mask_fence


def simplex_patch(steps: int = 40, margin: int = 8):
    """The standard triangle inside a sampled patch of its affine plane.

    The plane x + y + z = 1 is sampled on the barycentric lattice with
    denominator ``steps``, extended ``margin`` lattice cells beyond the
    triangle so the complement is visible.  Returns (space, mask) where
    the mask keeps the points with all coordinates nonnegative; the
    deepest such point is the barycenter (1/3, 1/3, 1/3).
    """
    pts = []
    inside = []
    for i in range(-margin, steps + margin + 1):
        for j in range(-margin, steps + margin + 1):
            k = steps - i - j
            if k < -margin or k > steps + margin:
                continue
            pts.append((i / steps, j / steps, k / steps))
            inside.append(i >= 0 and j >= 0 and k >= 0)
    coords = np.array(pts)
    # lattice step length in the plane
    h = math.sqrt(2.0) / steps * 1.01
    space = FiniteSpace(n=coords.shape[0], coords=coords, h=h)
    return space, SubsetMask(np.array(inside))
