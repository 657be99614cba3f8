//! The algebra H(1,n) in the (u,v)-presentation `g_i^2 = (u - 1/u) g_i + 1`.
//!
//! Elements are stored on the basis `t_0^{l_0} ... t_{n-1}^{l_{n-1}} T_w` of unprimed
//! looping generators times type-A Hecke basis elements, which is a normal form:
//! every element has exactly one representation.

mod element;
mod ideal;
mod monomial;
pub mod perm;

use thiserror::Error;

pub use element::{project, AlgebraElement, BasisKey, Loops};
pub use ideal::{ideal_element, IdealKind};
pub use monomial::{compare_exps, compare_order, homologous, index, key_index, LoopMonomial, Tail};

pub(crate) use element::c;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HeckeError {
    #[error("level mismatch: {0} vs {1}")]
    LevelMismatch(usize, usize),
    #[error("cannot compare primed and unprimed monomials")]
    MixedPrimed,
    #[error("index {index} out of range at level {level}")]
    IndexOutOfRange { index: usize, level: usize },
    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("{0}")]
    Braid(String),
}

/// Normal form on the looping basis. Elements are always kept normalized, so
/// this is the identity; it exists to make the contract explicit.
pub fn normal_form(a: &AlgebraElement) -> AlgebraElement {
    a.clone()
}

/// A basis word: unprimed loop part plus a positive braiding tail in
/// descending-segment form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisWordSigma {
    pub loops: Vec<(usize, i32)>,
    pub tail: Vec<usize>,
}

impl From<&BasisKey> for BasisWordSigma {
    fn from(k: &BasisKey) -> Self {
        BasisWordSigma {
            loops: k.loops.iter().enumerate().filter(|(_, e)| **e != 0).map(|(i, e)| (i, *e)).collect(),
            tail: perm::reduced_word(&k.perm),
        }
    }
}

impl AlgebraElement {
    pub fn basis_words(&self) -> impl Iterator<Item = (BasisWordSigma, &crate::coeffring::LaurentRational)> {
        self.terms().iter().map(|(k, c)| (BasisWordSigma::from(k), c))
    }
}
