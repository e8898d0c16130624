//! Committee selection under the minimax approval voting rule.
//!
//! Given `n` approval ballots over `m` candidates and a committee size `k`,
//! find a `k`-member committee minimizing the largest Hamming distance to any
//! ballot. The crate provides an exhaustive solver, the minisum and
//! k-completion baselines, and a `(1 + ε)` approximation scheme built on
//! vote-subset patterns, a small dense simplex solver and randomized
//! rounding.
//!
//! ```
//! use mav_core::{oracle, ptas, Election};
//!
//! let e = Election::from_strs(&["1100", "1010", "1001"], 2).unwrap();
//! let exact = oracle::exact_opt(&e, &Default::default()).unwrap();
//! let approx = ptas::ptas_solve(&e, 0.9, 42).unwrap();
//! assert_eq!(exact.opt_value, 2);
//! assert!(approx.objective as f64 <= 1.9 * exact.opt_value as f64);
//! ```

pub mod auxiliary;
pub mod baselines;
pub mod bits;
pub mod election;
pub mod error;
pub mod lp;
pub mod oracle;
pub mod pattern;
pub mod ptas;

pub use bits::{hamming, k_completion, BitVector};
pub use election::{objective, Committee, Election};
pub use error::{MavError, Result};
pub use pattern::{apply_permutation, pattern, star_permutation, Pattern, Permutation, Symbol};
