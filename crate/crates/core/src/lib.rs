//! Exact arithmetic on Catalan triangles.
//!
//! Three triangles share one formula. With `C(m,k) = (m-2k)/m binom(m,k)`,
//! the tables `B(n,k) = C(2n, n-k)` and `A(n,k) = C(2n+1, n+1-k)` are its
//! even and odd slices. The crate evaluates their entries exactly, checks a
//! registry of sum identities over finite domains, and searches for
//! counterexamples to two conjectures.
//!
//! ```
//! use catalan_core::{b_number, catalan, seq_b};
//! assert_eq!(catalan(10).unwrap(), 16796.into());
//! assert_eq!(b_number(3, 2).unwrap(), 4.into());
//! assert_eq!(seq_b(4).unwrap(), 163.into());
//! ```

pub mod conjectures;
pub mod error;
pub mod exact;
pub mod identities;
pub mod numbers;

pub use num_bigint::BigInt;

pub use conjectures::{
    check_mixed_cube, divisibility_claim, load_checkpoint, run_scan, save_checkpoint,
    scan_divisibility, Cell, Conjecture, Counterexample, DivisibilityClaim, ScanDomain,
    ScanOptions, ScanState,
};
pub use error::{Error, Result};
pub use exact::{binomial, binomial_row, exact_div, harmonic, Rational};
pub use identities::{
    evaluate_sides, find_identity, list_identities, verify, verify_identity, IdentityDescriptor,
    IntRange, Ranges, Status, SweepOptions, VerificationReport,
};
pub use numbers::{
    a_number, b_number, c_number, catalan, gen_catalan, generate, seq_a, seq_b, SequenceKind,
    SequenceSpec, Triangle,
};
