//! Cyclic codes over the non-commutative ring `M2(Z4)` and its reduction `M2(Z2)`.
//!
//! The crate is organised bottom-up:
//!
//! * [`linalg`]: Howell normal form, kernels and span tests over `Z4` / `Z2`.
//! * [`ring`]: `F4`, `GR(4,2)`, `M2(Z4)` and `M2(Z2)` element types.
//! * [`poly`]: polynomials over those rings, factorization of `x^n - 1` and Hensel lifting.
//! * [`cyclic`]: factor assignments, code construction, duals, self-duality and search.
//! * [`gray`]: Gray map, Lee weight and minimum distance enumeration.
//! * [`verify`]: the reproducibility checks behind `m2z4 verify-paper`.

pub mod cyclic;
pub mod error;
pub mod gray;
pub mod linalg;
pub mod poly;
pub mod ring;
pub mod verify;

pub use cyclic::{
    CyclicCode, DualKind, FactorAssignment, FactorTable, MPolicy, RingKind, SubmoduleType, TypeTag,
};
pub use error::{Error, Result};
pub use gray::{GrayParams, GrayWord, MinWeight};
pub use linalg::{HowellBasis, Modulus, Z4Matrix};
pub use poly::{Poly, PolyF4, PolyGr, PolyR};
pub use ring::{Gr42, RElem, F4, M2Z2};
