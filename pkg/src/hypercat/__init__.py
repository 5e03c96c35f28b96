"""Hypergraph Catalan numbers: exact counts of k-tours on trees."""
from .asymptotics import (
    RatioReport,
    StarParams,
    asymptotic_log_value,
    gunnells_log_value,
    ratio_report,
    rerooting_check,
    star_count_exact,
    star_sum_k2_check,
)
from .closed_form import departure_count, hypergraph_catalan_closed, tours_on_profile
from .combinatorics import (
    DegreeProfile,
    block_multinomial,
    catalan,
    factorial,
    iterate_profiles,
    tree_count,
)
from .oracle import (
    PlaneTree,
    brute_force_walks,
    decompose_walk,
    enumerate_plane_trees,
    oracle_by_trees,
    reconstruct_walk,
    tours_on_tree,
)
from .series import (
    TruncatedSeries,
    ck_series,
    h_series,
    lagrange_extract,
    phi_series,
    root_degree_count,
    solve_A,
    verify_functional_equation,
)

__version__ = "0.1.0"
