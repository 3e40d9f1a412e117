//! Divisibility bounds for SL_k(Z) at desk scale, both directions: congruence
//! upper-bound witnesses and Heisenberg/Mal'cev lower-bound certificates.

mod congruence;
mod heisenberg;
mod matrix;
mod table;

pub use congruence::{congruence_witness, CongruenceWitness, CongruenceWitnessSpec, CONGRUENCE_KIND};
pub use heisenberg::{
    h3_divisibility_by_enumeration, heisenberg_divisibility, HeisenbergBasis,
};
pub use matrix::{elementary, g_n, lcm_1_to, size_proxy, IntMatrix};
pub use table::{fit_exponent, slk_bounds_table, SlkRow, SlkTable};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SlkError {
    #[error("BadIndices: elementary matrix needs 1 ≤ i,j ≤ k with i ≠ j (got i={i}, j={j}, k={k})")]
    BadIndices { k: usize, i: usize, j: usize },
    #[error("BadDimension: {0}")]
    BadDimension(String),
    #[error("IdentityInput: the identity has no size proxy")]
    IdentityInput,
    #[error("CentralInput: central elements admit no congruence witness")]
    CentralInput,
    #[error("NotUnimodular: determinant is {0}, not 1")]
    NotUnimodular(String),
    #[error("ParseError: {0}")]
    Parse(String),
}
