"""Exact quasimap counts, excess-intersection corrections, and smooth-count Monte Carlo."""
__version__ = "0.1.0"

from .cohomology import Class, TruncatedRing, add, integrate, invert_unit, mul, substitute
from .quasimap import CountingData, CyclePair, km_easy, n_knd, n_multi, qm_number, virtual_dimension
from .excess import (Ledger, Stratum, build_ledger, excess_chern, point_stratum, pqm_contribution,
                     product_ring, product_stratum, projective_stratum)
from .strata import StratumRow, freckle_codim, scar_closure_shape, scar_locus_dim, stratification_table
from .frobenius import FrobeniusElement, QGeometry, cqp, eta, kernel_witness_check, pairing_matrix

__all__ = [
    "Class", "TruncatedRing", "add", "integrate", "invert_unit", "mul", "substitute",
    "CountingData", "CyclePair", "km_easy", "n_knd", "n_multi", "qm_number", "virtual_dimension",
    "Ledger", "Stratum", "build_ledger", "excess_chern", "point_stratum", "pqm_contribution",
    "product_ring", "product_stratum", "projective_stratum",
    "StratumRow", "freckle_codim", "scar_closure_shape", "scar_locus_dim", "stratification_table",
    "FrobeniusElement", "QGeometry", "cqp", "eta", "kernel_witness_check", "pairing_matrix",
]
