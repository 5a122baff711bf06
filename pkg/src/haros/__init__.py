"""Haros graphs of real numbers in [0, 1]: construction, degree statistics, entropy
and a brute-force verification harness."""

from .farey import (CFSpec, GOLDEN, apply_F, canonical_cf, cf_to_path, cf_to_rational,
                    convergents, evaluate, farey_sequence, fibonacci, mediant, path_to_cf,
                    path_to_rational, rational_to_cf, rational_to_path, tree_level)
from .graph import (DegreeDistribution, DegreeProfile, HarosGraph, atom, build, collapse,
                    concat, degree_count, degree_distribution, distribution_for, graph_for,
                    mean_degree, geometric_mean_degree)
from .analytics import (PiecewiseLinearCell, cf_geometric_mean, closed_form_P,
                        closed_form_row, hole_predicate, khinchin_constant, thomae_mean,
                        verify_scaling)
from .entropy import (EntropySample, box_counting_dimension, derham_check, entropy_curve,
                      entropy_S, reduced_H, scan_extrema)
from .families import family_slope, fibonacci_convergent_dist, theoretical_dist
from .oracle import CheckReport, run_all

__version__ = "0.1.0"
