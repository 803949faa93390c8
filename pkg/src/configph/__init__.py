"""Persistent homology of two-robot configuration spaces on metric trees."""

from .closed_form_oracle import expected_summands, rank_h, rank_star
from .config_complex import PolyComplex, build_complex, chain_complex
from .decomposer import Summand, decompose, endomorphism_basis, fitting_split, multiplicity_table
from .homology import betti, homology_basis, induced_map
from .mayer_vietoris import OrderedCover, check_convergence, mv_pages
from .metric_graph import GraphPoint, MetricGraph, ParamPoint, build_graph, generalized_h, star
from .param_chambers import ChamberArrangement, arrangement, critical_lines
from .persistence_module import PersistenceModule, build_module, check_functoriality, restrict_support

__all__ = [
    "expected_summands", "rank_h", "rank_star", "PolyComplex", "build_complex", "chain_complex",
    "Summand", "decompose", "endomorphism_basis", "fitting_split", "multiplicity_table", "betti",
    "homology_basis", "induced_map", "OrderedCover", "check_convergence", "mv_pages", "GraphPoint",
    "MetricGraph", "ParamPoint", "build_graph", "generalized_h", "star", "ChamberArrangement",
    "arrangement", "critical_lines", "PersistenceModule", "build_module", "check_functoriality",
    "restrict_support",
]
