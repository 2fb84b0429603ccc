//! Exact matrix models: eigenvalue data, the twisting element and
//! tridiagonal pairs.

mod matrix;
mod spectral;
mod tdpair;

pub use matrix::{eval_poly, generated_dimension, ExactMatrix};
pub use spectral::{
    higher_dg_matrix, matrix_badprod, matrix_lusztig, matrix_s, p_value, random_a1_matrix, random_matrix,
    scalar_s_ratio, spectral_data, theta_sequence, theta_sequence_in, verify_conjugation, Eigenbasis, SpectralData,
    HIGHER_DG_ANCHOR,
};
pub use tdpair::{
    check_dg_spectral, check_dg_spectral_with, dg_residue, dg_witness, import_td_pair, import_td_pair_str,
    leonard_pair, td_pair_d1, twist_module, untwist_module, TDPair,
};
