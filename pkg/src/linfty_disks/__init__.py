"""Filtered L-infinity algebras, Maurer-Cartan theory and holomorphic disk toolkit."""

from .graded import Element, GradedSpace
from .structures import Bar, LInftyAlgebra, MultilinearOp, check_linfty
from .morphisms import LInftyMorphism, check_morphism, homotopy_transfer
from .filtered import (FilteredElement, HomotopyClassLabel, degree_constraints, is_mc,
                       mc_residual, twisted_diff, verify_fukaya1, verify_fukaya2)

__version__ = "0.1.0"
