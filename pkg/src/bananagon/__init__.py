"""Divisorial gonality and chip-firing invariants of banana trees."""

from .divisors import (
    dhar_reduce,
    equivalent,
    gon_r_oracle,
    gonality_oracle,
    has_positive_rank,
    rank,
)
from .graph_core import (
    BananaPath,
    BananaStar,
    BananaTree,
    MonocultureSpec,
    canonical_path,
    delete_edge,
    genus,
    lcm_bound,
    make_monoculture,
    make_path,
    make_star,
    monoculture,
    read_graph,
    ripen,
    split_heavy,
)
from .invariants import (
    bn_check,
    compute_gonality,
    construct_gap,
    invariant_report,
    monoculture_gonality,
    scramble_screewidth,
    star_gonality,
    star_scramble,
)
from .path_dp import f_value, gonality_dp, positive_rank_path

__version__ = "0.1.0"
