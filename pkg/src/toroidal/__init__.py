"""Exact computations for full toroidal Lie algebras and their modules."""

from .algebra_core import (DElem, Element, GElem, KClass, RankMismatch, SimpleAlgebra,
                           ToroidalAlgebra, WindowError, algebra_by_name, normal_form, sl)
from .finite_reps import Irrep, exterior_power, gl_irrep, highest_weight_irrep, standard_rep
from .tensor_modules import ModuleVector, TensorModule, WeightTable

__all__ = [
    "DElem", "Element", "GElem", "KClass", "RankMismatch", "SimpleAlgebra", "ToroidalAlgebra",
    "WindowError", "algebra_by_name", "normal_form", "sl", "Irrep", "exterior_power", "gl_irrep",
    "highest_weight_irrep", "standard_rep", "ModuleVector", "TensorModule", "WeightTable",
]

__version__ = "0.1.0"
