"""Centers, radii and inscribed-ball descriptors of subsets of metric spaces.

Engines:

* :mod:`metric_center.exact_line` -- bit-exact interval-set computations on
  the rational line, including proper subspaces of it;
* :mod:`metric_center.finite_space` -- brute-force descriptors over explicit
  finite metric spaces with a resolution-scale topology;
* :mod:`metric_center.grid_region` -- rasterized Euclidean regions with
  exact integer distance transforms and certified inscribed balls;
* :mod:`metric_center.product_ops` / :mod:`metric_center.union_ops` --
  closed-form centers of max-metric products and separated unions, each
  replayable against definition-level oracles;
* :mod:`metric_center.filtration` -- sublevel filtrations of the boundary
  distance field with Betti counts and scan verdicts.

The command line front end lives in :mod:`metric_center.cli`.
"""

from .core import (
    ExtReal, RegimeError, ext_cmp, ext_min, ext_max,
    DescriptorReport, report_consistency_check,
)
from .exact_line import (
    Piece, IntervalSet, normalize, parse_interval_text,
    topology_line, descriptors_line, diameter_line, center_components,
)
from .finite_space import (
    FiniteSpace, SubsetMask, validate_metric, shortest_path_metric,
    eps_topology, descriptors_bf, isometry_transport_check,
)
from .grid_region import (
    Ball, Box, HalfPlane, PointPrim, Segment, Shell,
    Union, Intersection, Difference, shape_from_json,
    GridRegion, rasterize, boundary_cells, distance_to_set,
    distance_to_set_bruteforce, descriptors_grid, largest_inscribed_balls,
)
from .product_ops import (
    LineFactor, GridFactor, hat_set, product_center, product_center_n,
    product_oracle,
)
from .union_ops import (
    LineUnionEngine, FiniteUnionEngine, separated_check,
    union_descriptors, union_descriptors_n,
)
from .filtration import (
    line_filtration, grid_filtration, sublevel, betti0, betti0_mask,
    betti1_planar, betti1_via_euler, conjecture_scan,
)

__version__ = "0.1.0"
