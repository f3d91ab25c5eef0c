//! Extended arc algebras and their homological invariants, in exact arithmetic.
//!
//! ```
//! use arcalg::algebra::ArcAlgebra;
//! use arcalg::field::Rationals;
//! use arcalg::hh::hochschild_diagonal;
//!
//! let k = ArcAlgebra::k(1, 3)?;
//! let hh = hochschild_diagonal(&k, &Rationals, 3)?;
//! assert_eq!(hh.ranks[&0], 3);
//! # Ok::<(), arcalg::Error>(())
//! ```

pub mod algebra;
pub mod bimodule;
pub mod braid;
pub mod complex;
pub mod diagram;
pub mod error;
pub mod field;
pub mod hh;
pub mod khovanov;
pub mod linalg;
pub mod modules;
pub mod poly;
pub mod structure;
pub mod tqft;
pub mod verify;
pub mod weight;

pub use error::{Error, Result};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/weights.md")]
    mod weights {}
    #[doc = include_str!("../../../book/src/multiplication.md")]
    mod multiplication {}
    #[doc = include_str!("../../../book/src/modules.md")]
    mod modules {}
    #[doc = include_str!("../../../book/src/hochschild.md")]
    mod hochschild {}
    #[doc = include_str!("../../../book/src/braids.md")]
    mod braids {}
    #[doc = include_str!("../../../book/src/khovanov.md")]
    mod khovanov {}
    #[doc = include_str!("../../../book/src/verification.md")]
    mod verification {}
}
