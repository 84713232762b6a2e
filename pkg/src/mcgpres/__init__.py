"""Finite presentations of mapping-class groups from ordered fat graphs."""

from ._budget import BudgetExceeded, Deadline
from .canon import (Relabeling, apply, automorphisms, canonical, canonical_form,
                    isomorphism_by_propagation, orbit_witness)
from .cellcomplex import (QuotientComplex, TreeEdgeLabel, build_quotient_complex, build_tree,
                          emit_presentation, spanning_tree)
from .enumeration import cross_check_by_splitting, enumerate_degree_at_most, list_L, roses
from .fatgraph import (BoundaryDecomposition, DirectedEdge, GraphInvariants, OrderedGraph,
                       StructuralError, boundary_words, invariants, validate)
from .moves import NotCollapsibleError, SplitError, collapse, split
from .pipeline import PipelineResult, run_pipeline
from .presentation import (Presentation, abelianization, count_homs, equivalence_evidence,
                           smith_normal_form, tietze_simplify)

__all__ = [
    "BudgetExceeded", "Deadline",
    "Relabeling", "apply", "automorphisms", "canonical", "canonical_form",
    "isomorphism_by_propagation", "orbit_witness",
    "QuotientComplex", "TreeEdgeLabel", "build_quotient_complex", "build_tree",
    "emit_presentation", "spanning_tree",
    "cross_check_by_splitting", "enumerate_degree_at_most", "list_L", "roses",
    "BoundaryDecomposition", "DirectedEdge", "GraphInvariants", "OrderedGraph",
    "StructuralError", "boundary_words", "invariants", "validate",
    "NotCollapsibleError", "SplitError", "collapse", "split",
    "PipelineResult", "run_pipeline",
    "Presentation", "abelianization", "count_homs", "equivalence_evidence",
    "smith_normal_form", "tietze_simplify",
]
