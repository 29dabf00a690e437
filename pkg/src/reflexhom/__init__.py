"""Reflexive homology of involutive algebras, exact over Z, Q and F_p."""

from .algebra import (Bimodule, InvolutiveAlgebra, InvolutiveBimodule, gaussian_integers, ground_ring,
                      group_algebra, loday_module, matrix_algebra, regular_bimodule, tensor_over_algebra,
                      tensor_weight_module, trace_check, trace_map, truncated_polynomial, truncated_tensor_algebra,
                      validate_algebra, validate_bimodule)
from .complexes import Bicomplex, ChainComplex, Tricomplex, total_complex, total_complex_3
from .delta_r import (DeltaRModule, ReflexiveChainComplex, validate_delta_r_map, validate_delta_r_module,
                      validate_reflexive_chain_complex)
from .engine import (c2_homology, epsilon, hochschild_homology, hr, hr_quotient_method, hyper_hr,
                     reflexive_bicomplex, row_homology_check)
from .errors import *  # noqa: F401,F403
from .finitegroup import FiniteGroup
from .groups import (bar_reflexive_set, conjugacy_data, decomposition_check, em_reflexive_module,
                     gamma_reflexive_set, hr_group, linearize, validate_reflexive_set)
from .linalg import GF, QQ, ZZ, HomologyGroup, Matrix, Ring
from .morita import (HermitianMoritaData, identity_morita_data, induced_involutive_bimodule,
                     morita_homology_check, row_column_morita_data, validate_morita_data)
from .oracles import (calibrate_cyclic_convention, consistency_suite, degree_zero_closed_form,
                      hr_ground_ring_closed_form, hr_tensor_algebra_closed_form)

__version__ = "0.1.0"
