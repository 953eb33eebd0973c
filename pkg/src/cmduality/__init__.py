"""Graded modules over F_p[x1..xn]: Groebner bases, resolutions, Ext, Matlis
duality and Cohen-Macaulayfication checks."""
from .poly import (
    DEFAULT_PRIME,
    InhomogeneousError,
    ParseError,
    Polynomial,
    PolyRing,
    StructureError,
    grevlex_cmp,
    parse_polynomial,
    render_polynomial,
)
from .free import FreeElement, FreeMap, FreeModule, map_compose, map_degree_check
from .groebner import GroebnerBasis, groebner_basis, minimal_generators, normal_form, syzygies
from .modules import (
    FPModule,
    IsoResult,
    ModuleMap,
    annihilator,
    cokernel,
    direct_sum,
    find_isomorphism,
    hilbert_function,
    hom_module,
    image,
    is_isomorphic,
    kernel,
    minimalize,
    present,
    quotient_ring,
    render_module,
)
from .homology import (
    Complex,
    betti_table,
    complex_homology,
    free_resolution,
    hilbert_numerator,
    koszul_complex,
    pd,
)
from .invariants import (
    InvariantReport,
    depth,
    ext_module,
    invariants,
    is_cohen_macaulay,
    is_finite_length,
    krull_dim,
    matlis_dual_finite,
)
from .duality import (
    F1,
    F2,
    G1,
    G2,
    SOP,
    ArtinianRep,
    find_sop,
    is_co_cm,
    is_coregular,
    koszul_homology_artinian,
    local_homology_top,
    ndim,
    width,
)
from .cmfication import (
    CMficationReport,
    cmfication_candidate,
    corollary2_check,
    goto_pattern_check,
    hom_into_gorenstein,
    paper_example,
    theorem3_check,
    theorem4_check,
    verify_cmfication,
)
from .cli import parse_session, run_session

from types import ModuleType as _ModuleType

__all__ = sorted(n for n, v in globals().items() if not n.startswith("_") and not isinstance(v, _ModuleType))
