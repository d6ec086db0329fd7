//! String C-groups generated by symmetries of quadratic spaces in characteristic 2.
//!
//! Arithmetic in GF(2^k), quadratic forms and their invariants, generator strings for
//! the orthogonal and symplectic groups, and machine checks of the string condition,
//! the intersection property and group orders, together with the coset polytopes the
//! verified groups act on. The crate is `no_std` and needs only `alloc`.

#![no_std]
extern crate alloc;

pub mod error;
pub mod field;
pub mod forms;
pub mod groups;
pub mod linalg;
pub mod polytope;
pub mod schreier;
pub mod strings;
pub mod verify;

pub use error::{Error, Result};
pub use field::{Field, FieldElement};
pub use forms::{build_phi, LineClass, QuadraticSpace, WittType};
pub use groups::{enumerate, EnumeratedGroup, DEFAULT_CAP};
pub use linalg::{Matrix, Vector};
pub use polytope::{build_polytope, PolytopeData};
pub use strings::{GeneratorString, StringKind, StringMeta};
pub use verify::{verify, IpMode, OrderMethod, VerificationReport, VerifyOptions};
