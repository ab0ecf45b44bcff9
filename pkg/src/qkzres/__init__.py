"""Exact construction and verification of null-residue solution spaces of the rational qKZ system."""

from .polyring import MPoly, delta_plus, delta_plus_e, e_gen, elementary, to_e_rep, to_x_rep
from .wedge import WedgeElement, deg1, deg2, wedge_product
from .construct import BasisIndex, basis_element, enumerate_basis, generator, p_rs
from .nullres import coordinates, det_identity_check, in_U, residue_components
from .combinat import GammaWedge, express_in_span, omega, span_rank, specialization_bridge
from .qchar import QSeries, branching, ch_M, ch_U, qbinom, qtetra, verify_tetranomial, virasoro_product
from .resolution import bas_partition_check, graded_quotient_dims, phi_map, xi1_injectivity

__all__ = [
    "BasisIndex", "GammaWedge", "MPoly", "QSeries", "WedgeElement",
    "bas_partition_check", "basis_element", "branching", "ch_M", "ch_U", "coordinates",
    "deg1", "deg2", "delta_plus", "delta_plus_e", "det_identity_check", "e_gen", "elementary",
    "enumerate_basis", "express_in_span", "generator", "graded_quotient_dims", "in_U", "omega",
    "p_rs", "phi_map", "qbinom", "qtetra", "residue_components", "span_rank",
    "specialization_bridge", "to_e_rep", "to_x_rep", "verify_tetranomial", "virasoro_product",
    "wedge_product", "xi1_injectivity",
]
