//! Exact computations for planar diagram monoids and their rigid
//! (non-pivotal) analogues.
//!
//! The crate covers six families: Temperley–Lieb, Motzkin and planar rook
//! monoids on a self-dual strand (`TL`, `Mo`, `pRo`) and their rigid
//! counterparts on the alternating word `(1 2)^n` (`rTL`, `rMo`, `rpRo`).
//! For each family it provides
//!
//! * the diagram calculus ([`diagram`]): validation, composition, tensor
//!   product, the upside-down flip and sandwich factorisation,
//! * direct enumeration of the endomorphism monoids ([`monoids`]),
//! * brute-force Green's relations and eggbox rendering ([`green`]),
//! * exact closed-form cell counts and hypergeometric identities
//!   ([`combinat`]),
//! * cell modules, Gram matrices, exact ranks and representation gaps
//!   ([`repr`], [`linalg`]),
//! * the asymptotic bound expressions and figure series ([`asymptotics`]).
//!
//! The crate is `no_std` and only needs `alloc`. File formats, the command
//! line and parallel drivers live in the `repgap` crate.
#![cfg_attr(not(test), no_std)]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod asymptotics;
pub mod combinat;
pub mod diagram;
pub mod family;
pub mod green;
pub mod linalg;
pub mod monoids;
pub mod numeric;
pub mod repr;

pub use diagram::{CanonicalKey, Diagram, DiagramError, Letter, Pairing, Word};
pub use family::Family;
pub use green::GreenStructure;
pub use monoids::MonoidTable;
