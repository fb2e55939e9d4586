"""frobcong: exact arithmetic for m-colored generalized Frobenius partition
counts, eta-quotient cusp-form constructions, and congruence certificates."""

from .rings import GF, ZZ, ExtField, FFElement, PrimeField
from .series import QExpansion, eta_power, euler_power, partition_series
from .eta import EtaQuotient
from .frobenius import (
    A_m_series,
    FrobeniusParams,
    brute_force_cphi,
    cphi_closed_form,
    cphi_grid_series,
    cphi_mod_table,
    cphi_series,
    r_m_series,
)
from .hecke import T_p, U_p, V_p, WeightTag, filtration_u_bound, target_weight
from .spaces import (
    EchelonBasis,
    ExpressFailure,
    basis_weight4_level13,
    basis_weight12_level5,
    basis_weight16_level13,
    basis_weight48_level13,
    express_in_basis,
    level1_basis,
    level1_dimension,
    load_basis_file,
    seed_h_weight4_level13,
    sturm_bound,
)
from .pipeline import (
    CongruenceCertificate,
    HypothesisError,
    admissible_residue,
    build_h_ell,
    construct_f_ell,
    divide_by_eta_power,
    ell_bar,
    hypothesis_holds,
    run_pipeline,
    scan_atkin_congruence,
    verify_linear_congruence,
)
from .suitability import (
    NewformRecord,
    al_eigenvalue,
    audit_suitability,
    dihedral_witness,
    epsilon_pair,
    epsilon_space,
    exception_pairs,
    exceptional_test,
    load_newform_records,
    suitability_conditions,
    u_invariant,
)
from .fastseries import (
    LongCongruenceForm,
    atkin_provider,
    big_prime_values,
    cphi_point_mod,
    probe_candidate_primes,
    scan_provider,
    validate_big_prime_path,
)

__version__ = "0.1.0"

__all__ = [
    "GF", "ZZ", "ExtField", "FFElement", "PrimeField",
    "QExpansion", "eta_power", "euler_power", "partition_series",
    "EtaQuotient",
    "A_m_series", "FrobeniusParams", "brute_force_cphi", "cphi_closed_form",
    "cphi_grid_series", "cphi_mod_table", "cphi_series", "r_m_series",
    "T_p", "U_p", "V_p", "WeightTag", "filtration_u_bound", "target_weight",
    "EchelonBasis", "ExpressFailure", "basis_weight4_level13",
    "basis_weight12_level5", "basis_weight16_level13", "basis_weight48_level13",
    "express_in_basis", "level1_basis", "level1_dimension", "load_basis_file",
    "seed_h_weight4_level13", "sturm_bound",
    "CongruenceCertificate", "HypothesisError", "admissible_residue",
    "build_h_ell", "construct_f_ell", "divide_by_eta_power", "ell_bar",
    "hypothesis_holds", "run_pipeline", "scan_atkin_congruence",
    "verify_linear_congruence",
    "NewformRecord", "al_eigenvalue", "audit_suitability", "dihedral_witness",
    "epsilon_pair", "epsilon_space", "exception_pairs", "exceptional_test",
    "load_newform_records", "suitability_conditions", "u_invariant",
    "LongCongruenceForm", "atkin_provider", "big_prime_values",
    "cphi_point_mod", "probe_candidate_primes", "scan_provider",
    "validate_big_prime_path",
    "__version__",
]
