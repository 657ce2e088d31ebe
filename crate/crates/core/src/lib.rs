//! Exact computation of the cyclotomic numbers `(a,b)_{q-1}` over `F_{q^r}`.
//!
//! Five independent evaluation routes are provided and cross-checked:
//!
//! - [`oracle`]: brute-force counting, once from the coset definition and once
//!   from the norm-fibre characterisation.
//! - [`rank`]: `k - rank` of the `k x k` matrix `C^(a,b)` over `F_{q^r}`.
//! - [`characters`]: the exact Jacobi-sum formula, lifted from `F_q`.
//! - [`digraph`]: walk counts in the Cayley digraph on `F_q^x x F_q^x`.
//! - [`prime_ell`]: rational points plus irreducible minimal polynomials when
//!   `r` is an odd prime.
//!
//! [`closed_forms`] carries every closed-form evaluation and the verifier for
//! the `ceil(k/2)` classification, and [`consistency`] drives all of the above
//! over a grid of fields.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod algebra;
pub mod characters;
pub mod closed_forms;
pub mod consistency;
pub mod digraph;
mod error;
pub mod field;
mod limits;
pub mod oracle;
pub mod prime_ell;
pub mod rank;

pub use error::{Error, Result};
pub use field::{build_context, find_irreducible, ExtensionContext, FieldElement, SubfieldView};
pub use limits::Limits;
pub use oracle::{CycloParams, CycloTable};

/// Outcome of one named property check.
///
/// `counterexample` is `None` when the property held on every input tried.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PropertyCheck {
    pub name: &'static str,
    pub counterexample: Option<alloc::string::String>,
}

impl PropertyCheck {
    pub(crate) fn from_result(
        name: &'static str,
        result: core::result::Result<(), alloc::string::String>,
    ) -> Self {
        PropertyCheck {
            name,
            counterexample: result.err(),
        }
    }

    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}
