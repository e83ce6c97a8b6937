"""Finite-field verification of reduction-mod-p obstructions to torsion points
on genus-one modular curves X_0(N)."""

from .cusps import Cusp, al_on_cusp, conjugacy_classes, cusp_inventory, delta_orbits, x1_cusps
from .ec_group import INFINITY, QQ, GroupStructure, Point, WeierstrassCurve, hasse_admits_order
from .errors import ObstructionError
from .finite_field import FieldElement, FieldSpec, enumerate_field, ff_make, parse_element
from .frobenius_trace import TraceTarget, classify_trace, frob_point, trace_map
from .models import ModularCurveModel, builtin_models, get_model, j_of_point, rational_torsion
from .obstruction import build_candidates, build_graph, build_rows, run_obstruction, verdict
from .twists import mark_j, twist_pair, twist_table

__version__ = "0.1.0"

__all__ = [
    "Cusp", "FieldElement", "FieldSpec", "GroupStructure", "INFINITY", "ModularCurveModel", "ObstructionError",
    "Point", "QQ", "TraceTarget", "WeierstrassCurve", "al_on_cusp", "build_candidates", "build_graph",
    "build_rows", "builtin_models", "classify_trace", "conjugacy_classes", "cusp_inventory", "delta_orbits",
    "enumerate_field", "ff_make", "frob_point", "get_model", "hasse_admits_order", "j_of_point", "mark_j",
    "parse_element", "rational_torsion", "run_obstruction", "trace_map", "twist_pair", "twist_table",
    "verdict", "x1_cusps",
]
