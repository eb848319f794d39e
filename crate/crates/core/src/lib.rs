//! Exact mixed Hodge data of Milnor fibers of plane line arrangements.
//!
//! For an arrangement of `d` lines in the projective plane whose only
//! singularities are double and triple points, three integers determine the
//! whole equivariant Poincaré–Deligne polynomial of the Milnor fiber `F`:
//! the number of lines `d`, the number of triple points `n₃`, and the
//! Papadima–Suciu invariant `β₃ ∈ {0, 1, 2}`. This crate computes all three
//! from exact line coefficients over a cyclotomic field, evaluates the
//! closed-form spectrum and Hodge-number formulas, and cross-checks them
//! against the definitions.
//!
//! The pipeline:
//!
//! 1. [`field`]: exact arithmetic in `Q(ζ_m)`.
//! 2. [`arrangement`]: lines, intersection lattice, combinatorial summary.
//! 3. [`defect`]: `β₃` as the corank of an evaluation map at the triple points.
//! 4. [`spectrum`]: the spectrum `Sp(A)` from `(d, n₃)`.
//! 5. [`hodge`]: the equivariant Hodge table, its Hodge–Deligne
//!    specialization, the inverse reconstruction and Betti/Euler checks.
//!
//! ```
//! use arrhodge::{arrangement, defect, hodge, spectrum};
//!
//! let a = arrangement::builtin("ceva3").unwrap();
//! let lattice = arrangement::build_lattice(&a);
//! let summary = arrangement::summarize(&a, &lattice);
//! assert_eq!(summary.n3(), 12);
//!
//! let beta3 = defect::beta3(&summary, &lattice.triple_points()).unwrap().beta3;
//! assert_eq!(beta3, 2);
//!
//! let sp = spectrum::spectrum(9, 12);
//! assert_eq!(sp.len(), 19);
//!
//! let table = hodge::assemble_pd(9, 12, beta3).unwrap();
//! let betti = hodge::betti_and_euler(&table, &summary, beta3).unwrap();
//! assert_eq!((betti.b0, betti.b1, betti.b2), (1, 12, 92));
//! ```

pub mod arrangement;
pub mod defect;
pub mod field;
pub mod hodge;
pub mod spectrum;

// The guide under `book/` doubles as a doctest suite.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/exact-field.md")]
    mod exact_field {}
    #[doc = include_str!("../../../book/src/arrangements.md")]
    mod arrangements {}
    #[doc = include_str!("../../../book/src/defect.md")]
    mod defect {}
    #[doc = include_str!("../../../book/src/spectrum.md")]
    mod spectrum {}
    #[doc = include_str!("../../../book/src/hodge-table.md")]
    mod hodge_table {}
    #[doc = include_str!("../../../book/src/reconstruction.md")]
    mod reconstruction {}
}
