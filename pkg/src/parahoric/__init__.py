"""Exact combinatorics of parahoric torsors on curves.

Affine-apartment walls and facets, parahoric valuations, rational weights in
facets, parabolic-bundle weight arithmetic, stability-functional systems and
the monodromy/residue dictionary for unitary surface-group representations.
"""
from __future__ import annotations

__version__ = "1.0.0"

from .errors import ContractViolation, DomainError, EnclosureFault
from .numeric import (DEFAULT_BASIS, ExactScalar, IrrationalBasis, approximate, floor_of,
                      parse_scalar, scalar, sign_of)
from .rootdata import (AlcovePoint, RepWeights, RootSystem, alcove_reduce, build_root_system,
                       rep_weights, unitary_phases_to_alcove)
from .apartment import (AffineFunctional, FacetSignature, ParahoricValuation, Region,
                        facet_signature, parahoric_valuation, same_parahoric, walls_in_region)
from .transport import (ApartmentMap, RhoFunctionalSet, apartment_map, cover_exists,
                        ramification_index, rational_in_facet, rho_functionals, transport_weight)
from .parabolic import (ParabolicBundleData, ParabolicPoint, SubbundleCandidate, chi_candidate,
                        gl_sl_normalize, par_dual, par_hom, par_tensor, pardeg,
                        polystability_verdict, stability_verdict)
from .stabwalls import (StabilityFunctional, StabilityWallSystem, build_stability_functionals,
                        equivalent_rational_weight, stability_radius)
from .monodromy import (MonodromyClass, ResidueSpec, SurfaceGroupRep, adjoint_invariants_dim,
                        assemble_rep_bundle, deligne_degree, monodromy_to_residue,
                        residue_to_monodromy, validate_connection_residues)

__all__ = [
    "__version__",
    "annotations",
    "ContractViolation",
    "DomainError",
    "EnclosureFault",
    "DEFAULT_BASIS",
    "ExactScalar",
    "IrrationalBasis",
    "approximate",
    "floor_of",
    "parse_scalar",
    "scalar",
    "sign_of",
    "AlcovePoint",
    "RepWeights",
    "RootSystem",
    "alcove_reduce",
    "build_root_system",
    "rep_weights",
    "unitary_phases_to_alcove",
    "AffineFunctional",
    "FacetSignature",
    "ParahoricValuation",
    "Region",
    "facet_signature",
    "parahoric_valuation",
    "same_parahoric",
    "walls_in_region",
    "ApartmentMap",
    "RhoFunctionalSet",
    "apartment_map",
    "cover_exists",
    "ramification_index",
    "rational_in_facet",
    "rho_functionals",
    "transport_weight",
    "ParabolicBundleData",
    "ParabolicPoint",
    "SubbundleCandidate",
    "chi_candidate",
    "gl_sl_normalize",
    "par_dual",
    "par_hom",
    "par_tensor",
    "pardeg",
    "polystability_verdict",
    "stability_verdict",
    "StabilityFunctional",
    "StabilityWallSystem",
    "build_stability_functionals",
    "equivalent_rational_weight",
    "stability_radius",
    "MonodromyClass",
    "ResidueSpec",
    "SurfaceGroupRep",
    "adjoint_invariants_dim",
    "assemble_rep_bundle",
    "deligne_degree",
    "monodromy_to_residue",
    "residue_to_monodromy",
    "validate_connection_residues",
]
