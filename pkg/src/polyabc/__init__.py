"""Exact, executable checks of the polynomial abc (Mason-Stothers) theorem."""

from polyabc.abc import (
    MsVerdict,
    VerdictKind,
    mason_stothers_verdict,
    ms_noncoprime_verdict_char0,
    ms_subcall_bound,
    noncoprime_bound,
    wronskian,
    wronskian_common,
    wronskian_degree_bound_holds,
)
from polyabc.corollaries import (
    CatalanParams,
    ConstancyKind,
    ConstancyReport,
    DavenportResult,
    RatFunc,
    associated_pow_witness,
    davenport_check,
    davenport_prime_check,
    descend,
    elliptic_parametrization_check,
    flt_catalan_check,
    flt_check,
)
from polyabc.field import GF, Q, FieldDesc, FieldElem, FieldKind, field_arithmetic, make_field
from polyabc.harness import (
    SearchConfig,
    SearchReport,
    Target,
    enumerate_polys,
    random_suite,
    reproduce_worked_examples,
    run_search,
    search_flt,
    search_mason_stothers,
)
from polyabc.parser import format_poly, parse_poly
from polyabc.poly import Poly, divides, gcd_monic, is_coprime
from polyabc.radical import (
    SquareFreeDecomposition,
    div_radical,
    is_squarefree,
    pth_root,
    radical,
    squarefree_decompose,
)

__version__ = "0.1.0"
