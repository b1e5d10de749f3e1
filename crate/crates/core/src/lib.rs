//! Elementary-abelian regular covers of the doubled cycle `C_n^(2)` built from
//! divisors of `x^n - (-1)^eps` over Z_p, with symmetry predictions and an
//! independent permutation-group verifier.

pub mod arith;
pub mod census;
pub mod cover;
pub mod dcycle;
pub mod fpoly;
pub mod lift;
pub mod linalg;
pub mod permgrp;
pub mod reflex;

pub use dcycle::{DCAut, Dart, DoubledCycle, HomologyMatrix};
pub use fpoly::{FpPoly, PolyError};
pub use reflex::{DivisorInfo, DivisorLattice, Reflexibility};
