"""Exact graded commutative algebra for modules of projective dimension one:
Groebner bases, Fitting ideals, Rees algebras, reductions and cores."""

__version__ = "0.1.0"

from .kernel import PolyRing, Polynomial, PrimeField, RationalField, MonomialOrder, ParseError
from .groebner import FreeSubmodule, Ideal
from .presented import PresentedModule, SubmoduleOfE
from .rees import build_rees, analytic_spread, reduction_number, is_reduction
from .core import verify_theorem, core_sampled, core_formula
from .inputs import load_corpus, load_module_file

__all__ = [
    "PolyRing", "Polynomial", "PrimeField", "RationalField", "MonomialOrder", "ParseError",
    "FreeSubmodule", "Ideal", "PresentedModule", "SubmoduleOfE", "build_rees",
    "analytic_spread", "reduction_number", "is_reduction", "verify_theorem",
    "core_sampled", "core_formula", "load_corpus", "load_module_file",
]
