//! Exact characters of simple algebraic groups and their Frobenius
//! contractions.
//!
//! The crate is `no_std` (it needs `alloc`). It provides root data and Weyl
//! groups, a sparse character ring with Frobenius contraction and twist,
//! good-filtration multiplicity computations by three independent routes,
//! the Littelmann path model, and a rank-one oracle over 𝔽ₚ.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod charring;
pub mod error;
pub mod filtration;
pub mod lspaths;
pub mod rootdata;
pub mod sl2oracle;
pub mod weight;
pub mod weyl;

pub use charring::{Character, CharacterMemo, DecompositionResult, LocalMemo, NoMemo, WeylCharacters};
pub use error::{Error, ErrorKind, Result};
pub use lspaths::{LsPath, PathCensus};
pub use rootdata::{CartanType, DotNormal, Family, RootDatum};
pub use weight::{Coroot, Prime, Weight, MAX_RANK};
pub use filtration::{AgreementRow, BoundReport, LambdaAgreement, MultiplicityTable};
pub use sl2oracle::{FpRep, InvariantReport};
pub use weyl::{dot_action, weyl_elements, WeylElement};
