# -*- coding: utf-8 -*-
"""
GF(2) cohomology models and the zero-divisor lower bound on the complexity of a kinematic map.
"""
from kinatlas.cohomology.algebra import (GradedAlgebra, GradedHom, KernelIdeal, exterior_algebra, truncated_poly,
                                         tensor, induced_product_hom, kernel)
from kinatlas.cohomology.bound import (nilpotency, sweep, cx_lower_bound, model_from_json, load_model, bound_report,
                                       Model)
