//! Exact combinatorics of the rook monoid `R_n` of partial permutations:
//! the Bruhat-Chevalley order on its `W × W` orbits, descent sets,
//! R-polynomials, Möbius functions and the Hecke-algebra bar involution.
//!
//! ```
//! use renner::{rpoly, PartialPerm};
//!
//! let theta: PartialPerm = "0001".parse().unwrap();
//! let sigma: PartialPerm = "0003".parse().unwrap();
//! assert_eq!(rpoly(&theta, &sigma).unwrap().to_string(), "q^2 - q");
//! ```

pub mod analysis;
pub mod error;
pub mod hecke;
pub mod order;
pub mod poly;
pub mod renner;
pub mod report;
pub mod rpoly;
pub mod weyl;

pub use analysis::{
    classify_interval, descent_sets, descent_sets_direct, embeddable_in_weyl_necessary, find_linear_length2,
    format_reflections, verify_putcha_conjecture, DescentSets, IntervalClassification, OrbitData, Shape,
};
pub use error::{Error, Result};
pub use hecke::{rpoly_via_bar, HeckeElement};
pub use order::{interval, leq, mobius_direct, IntervalPoset, OrbitPoset};
pub use poly::{IntPolynomial, LaurentPolynomial};
pub use renner::{cross_section_lattice, orbit, standard_form, PartialPerm, RankIdempotent, StandardForm};
pub use report::Report;
pub use rpoly::{mobius_via_r, rpoly, RPolyTable};
pub use weyl::{bruhat_leq, ParabolicSubset, Permutation, Side};
