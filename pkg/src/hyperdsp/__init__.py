"""Fully dynamic single-source shortest hyperpaths in weighted undirected hypergraphs."""

from .centrality import closeness, distance_profile, most_important_actor
from .core import (
    INF,
    ChangeEvent,
    ChangeKind,
    Hypergraph,
    HypergraphError,
    InvalidChange,
    InvalidHyperpath,
    apply_raw_change,
    hyperpath_weight,
    is_simple,
    new_hypergraph,
)
from .dr_dsp import DRDSP
from .dynamic import Color, Counters, EventTrace
from .he_dsp import HEDSP
from .oracle import certify, enumerate_distances, enumerate_shortest, recompute
from .statics import (
    Facet,
    SPState,
    build_underlying_simplicial,
    dr_sp,
    expand_complex,
    extract_hyperpath,
    gallo_sssp,
)
from .underlying import UnderlyingGraph, build_underlying, graph_update

SOLVERS = {"he": HEDSP, "dr": DRDSP}

__version__ = "0.1.0"
