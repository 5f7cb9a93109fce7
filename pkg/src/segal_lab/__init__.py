"""Finite models of Segal spaces: nerves of categories, classification diagrams,
Segal and completeness checks, covers of F(n) and the completion construction."""

from .verdict import (ConstructionError, FragmentViolation, Outcome, SizeBoundExceeded,
                      Verdict)
from .fincat import (FinCat, Functor, NatTrans, WidePair, enumerate_functors, functor_category,
                     interval_category, iso_interval_category, is_equivalence, make_category,
                     parse_category)
from .simplicial import Simp, SimpMap, SubObject
from .sset import nerve, standard_simplex
from .sspace import (classification_diagram, classifying_diagram, discrete_nerve, standard_E,
                     standard_F, standard_G)
from .segal import (completeness_check, dk_check, ho_category, segal_check)
from .covers import enumerate_covers, is_cover, prism_decomposition_check
from .completion import tilde

__all__ = ["Outcome", "Verdict", "SizeBoundExceeded", "ConstructionError", "FragmentViolation",
           "FinCat", "Functor", "NatTrans", "WidePair", "make_category", "parse_category",
           "enumerate_functors", "functor_category", "interval_category", "iso_interval_category",
           "is_equivalence", "Simp", "SimpMap", "SubObject", "nerve", "standard_simplex",
           "classifying_diagram", "classification_diagram", "discrete_nerve", "standard_E",
           "standard_F", "standard_G", "segal_check", "completeness_check", "dk_check",
           "ho_category", "enumerate_covers", "is_cover", "prism_decomposition_check", "tilde"]
