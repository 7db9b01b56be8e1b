"""Convex bodies as vectors: inner products, lines, diversities, ancestors.

The package represents convex bodies by their support functions and
makes the resulting vector-space-like structure computable: exact inner
products and distances between planar bodies, centers and Steiner
points, classification of lines in the body cone, diversities of point
sets, and squared-parsimony reconstruction of ancestral bodies on
phylogenetic trees.
"""

from .body import (Ball, Body, MinkowskiSum, Point, Polytope, Scaled, ball,
                   body_from_json, body_to_json, difference_body, is_polytopal,
                   minkowski_sum, negate, point, polytope_from_points, scale,
                   support, support_grid, translate)
from .diversity import (PointSet, diversity, diversity_axiom_check, point_set,
                        point_set_from_json, point_set_to_json, union)
from .geometry import (LineClass, Ray, Segment, Translation, classify_line,
                       endpoint_witness, is_endpoint, is_indecomposable_2d,
                       is_summand, is_support_function, line_class_to_json)
from .innerprod import (AxiomReport, AxiomResult, CenteredBody, Matrix1D,
                        SetIP, SphericalL2, axiom_check, center,
                        counterexample_form, counterexample_gap,
                        counterexample_pair, distance, inner, matrix1d, norm,
                        recentre, setip_from_json, setip_to_json,
                        spherical_l2, steiner_point)
from .newick import NewickError, Phylogeny, parse_newick, phylogeny
from .phylo import (Extension, ReconstructionWeights, dense_laplacian_weights,
                    lambda_coefficients, reconstruct, tree_length,
                    weights_to_json)
from .supportcurve import (SupportCurve, SupportSample, body_from_curve,
                           canonicalize_2d, combine_curves, corefine,
                           hausdorff, sample_support, subset, support_curve,
                           support_gap)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
