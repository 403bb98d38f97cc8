"""Solution families of phi((x+y)/2)(f(x)-f(y)) = F(x)-F(y), two-variable means,
and the equality test between Cauchy and quasi-arithmetic means."""
from .intervals import (Interval, ReflectionSequence, lemma_s_check, lower_complement, midset, reflect,
                        reflection_closure, reflection_sequence, shrink, upper_complement)
from .families import (Equation, FamilyParams, FunctionTriple, M1Params, PiecewiseParams, Tag, build_constant,
                       build_family, build_m1, build_piecewise, ode_classify)
from .checker import (ResidualReport, delta_reduction_check, derivative_reduction_check, residual_minus,
                      residual_plus, residual_zero, scan_grid)
from .means import (GeneratorPair, QAGenerator, cauchy_mean, mean_value_property_check,
                    quasi_arithmetic_mean)
from .equality import (AffineSpec, BasisPair, basis_pair, build_generators, check_affine_relation,
                       recover_parameters, verify_equality)
from .kernels import available_backends, use_backend

__version__ = "0.1.0"
