"""Exact enumeration of walks on weighted graphs, lattices and their products."""
from __future__ import annotations

from .algebra import A, B, EgfMatrix, EgfSeq, OrderMismatchError, Poly, egf_hadamard, egf_mul
from .characters import partitions, sn_character
from .closed_forms import (
    bessel_coeffs,
    bessel_P_coeffs,
    check_identity,
    closed_composite_R,
    closed_composite_R_ab,
    closed_P,
    closed_P_ab,
    closed_R,
    closed_R2,
    closed_R_ab,
    closed_RxP,
    closed_RxP_from_axis,
    determinant_egf,
    hadamard_determinant,
    hadamard_immanant,
    hadamard_permanent,
    immanant_egf,
    permanent_egf,
    wave_graph_count,
)
from .constructions import (
    biproduct,
    cartesian_power,
    cartesian_product,
    exterior_bipower,
    exterior_power,
    parity_product,
    symmetric_bipower,
    symmetric_power,
)
from .graph import Edge, LatticeWindow, WeightedGraph, load_graph, materialize_lattice, weight_matrix
from .groups import AbelianGroup, CayleySpec, VertexMap, cayley_counts, quotient_counts, semicovering_transfer
from .walks import count_composite_walks, count_walks, count_walks_oracle, egf_matrix

__version__ = "0.1.0"
