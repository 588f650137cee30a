"""Fine f-vectors of colored complexes and their characterization by Macaulay trees."""

from .characterization import check_fine_f_colored, check_flag_f_cm, check_flag_h_cm, check_pure_balanced_fine_f, enumerate_reps
from .complex import ColoredComplex, FineVector, fine_f_vector, fine_h_vector, from_facets
from .macaulay_tree import GeneralizedRep, MacaulayTree, preceq, realize, tree_from_text, validate
from .shedding import induced_macaulay_tree, shedding_tree

__all__ = [
    "ColoredComplex",
    "FineVector",
    "GeneralizedRep",
    "MacaulayTree",
    "check_fine_f_colored",
    "check_flag_f_cm",
    "check_flag_h_cm",
    "check_pure_balanced_fine_f",
    "enumerate_reps",
    "fine_f_vector",
    "fine_h_vector",
    "from_facets",
    "induced_macaulay_tree",
    "preceq",
    "realize",
    "shedding_tree",
    "tree_from_text",
    "validate",
]
