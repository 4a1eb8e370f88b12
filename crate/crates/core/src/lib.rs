//! Eigenvalue sets of symmetric tridiagonal interval matrices.
//!
//! For an interval matrix `𝐀 = [A̲, Ā]` the set of `k`-th largest eigenvalues
//! over all symmetric members is a compact interval `[λ̲_k, λ̄_k]`. This crate
//! computes the endpoints, decides when they are exact, and answers derived
//! questions such as positive definiteness and stability of every member.
//!
//! ```
//! use tridiag_interval::{analyze, AnalysisOptions, Status, SymTriInterval};
//!
//! let m = SymTriInterval::from_pairs(
//!     &[(2975.0, 3025.0), (4965.0, 5035.0), (6955.0, 7045.0), (8945.0, 9055.0)],
//!     &[(-2015.0, -1985.0), (-3020.0, -2980.0), (-4025.0, -3975.0)],
//! )?;
//! let a = analyze(&m, &AnalysisOptions::default())?;
//! assert_eq!(a.report.status, Status::Exact);
//! assert!((a.report.intervals[0].hi() - 12720.2273).abs() < 1e-3);
//! # Ok::<(), tridiag_interval::Error>(())
//! ```

pub mod bounds;
pub mod error;
pub mod interval;
pub mod invariance;
pub mod matrix;
pub mod normalize;
pub mod oracle;
pub mod pipeline;
pub mod sturm;

pub use bounds::{
    cardinality_of_upper_selection, eigenvalue_bounds, extremal_bounds,
    lower_bounds_sign_invariant, property_checks, upper_bounds_sign_invariant, Decision,
    EigBoundsReport, ExtremalBounds, OneSidedBounds, PropertyReport, Status,
};
pub use error::{Error, Result};
pub use interval::Interval;
pub use invariance::{
    admissible_index_sets, check_sign_invariance, check_sign_invariance_with, disjoint_refinement,
    membership_test, outer_estimate, Certificate, IndexSet, InvarianceOptions, InvarianceStatus,
    InvarianceVerdict, Membership, MembershipTester, NonInvarianceWitness, OuterEstimate,
};
pub use matrix::{SymTri, SymTriInterval};
pub use normalize::{denormalize_bounds, normalize, split_blocks, Block, NormalizationRecord};
pub use pipeline::{analyze, default_tolerance, invariance_verdict, Analysis, AnalysisOptions};
pub use sturm::{
    all_eigenvalues, eigenvector, eigenvector_signs, kth_eigenvalue, sturm_count, Sign,
    SignPattern, SturmEvaluation,
};
