"""Ratio criteria, certificates, and counterexample constructions for
multiply positive matrices.

Everything is pure and deterministic: exact rational arithmetic wherever the
inputs are rational, certified rational enclosures for the algebraic
constants, and an explicit Hadamard-relative tolerance policy for floats.
"""

from .chebyshev import FSequence, f_closed, f_recurrence, f_roots, f_trig, t4_margin
from .constructions import (
    Lemma4Report,
    WitnessResult,
    det_mn_closed,
    epsilon_cascade,
    hankel_dn,
    hankel_witness,
    lemma4_exponents,
    lemma4_leading_check,
    toeplitz_mn,
    toeplitz_tn,
    toeplitz_witness,
)
from .errors import TotalposError
from .matrices import (
    BandProfile,
    Matrix,
    SubmatrixSelector,
    band_profile,
    hankel_from,
    matrix_to_csv,
    matrix_to_json_dict,
    parse_matrix,
    submatrix,
    toeplitz_from,
)
from .numerics import (
    DEFAULT_TOL,
    RationalInterval,
    Scalar,
    Sign,
    SignClass,
    ck_enclosure,
    constant_c_tilde,
    constant_d,
    det_exact,
    det_float,
    format_scalar,
    parse_scalar,
)
from .positivity import (
    Certificate,
    ChainInequality,
    MinorScan,
    Verdict,
    is_stp,
    is_stpk,
    is_tp,
    is_tpk,
    minor_scan,
    proof_chain_check,
    theorem1_check,
    theorem2_check,
    theorem3_check,
    theorem5_check,
    theorem6_bound,
)
from .ratio import (
    Membership,
    RatioReport,
    critical_ratio,
    generate_tp2c,
    is_member,
    lemma_a_margin,
)
from .sequences import (
    corollary3_moment_check,
    corollary5_check,
    hankel_moment_check,
    hutchinson_ratio,
    parse_sequence,
    pfm_check,
    toeplitz_truncation,
)

__version__ = "0.1.0"
