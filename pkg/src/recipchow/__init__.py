"""Chow forms, determinantal representations, Hadamard products and entropic
discriminants of reciprocal linear spaces, in exact rational arithmetic."""

from .detrep import (BETA, GAMMA, LinearSpace, chow_form, chow_form_symbolic, hb_basis,
                     kernel_witness_check, phi_symbolic, v_vectors, v_vectors_by_relations)
from .entropic import (disc_oracle_d2, mult_matrices, proportionality, sos_certificate,
                       trace_form_disc)
from .errors import (DimensionError, GenericityError, InternalInconsistencyError,
                     NotPlueckerError, PivotError, PreconditionError, RecipChowError)
from .exterior import PlueckerVector, complement_pluecker, pairing_transversal, pluecker_from_matrix
from .hadamard import bichow_form, bichow_value, hadamard_surface, hadamard_surface_symbolic
from .matroid import Matroid, basis_order_check, bcc_facets_degree, circuits_and_broken
from .poly import MultiPoly
from .reality import fiber_real_root_check, hyp_point_check, stability_transversality
from .simplicial import forest_expansion, spanning_forests, tree_resultant

__version__ = "0.1.0"
