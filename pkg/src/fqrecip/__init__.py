"""Power residue symbols and the reciprocity law in F_q[t], with an executable coset-product proof."""

from .field import FieldElement, FieldSpec, element_order, eta_of, field_arith, make_field_spec, unity_dlog
from .polyparse import ParseDiagnostic, format_poly, parse_field_spec, parse_poly
from .polyring import (
    IrreduciblePoly,
    LeadInSetDegLt,
    MonicDegLt,
    MonicDegLtCoprime,
    NonzeroDegLt,
    Poly,
    count_monic_irreducible,
    enumerate_polys,
    is_irreducible,
    monic_irreducibles,
    norm,
    poly_arith,
    poly_modexp,
)
from .residue import (
    SymbolValue,
    check_reciprocity,
    dth_power_oracle,
    power_residue_symbol,
    reciprocity_rhs,
)
from .rousseau import (
    CosetSystem,
    ProofReport,
    build_coset_systems,
    check_transversals,
    crt_combine,
    crt_split,
    decomposition_identity,
    eta_sign_identity,
    product_pi_S1,
    product_pi_S2,
    sq_power_identity,
    verify_proof,
)

__version__ = "0.1.0"
