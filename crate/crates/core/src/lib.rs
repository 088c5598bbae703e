//! Combinatorial tools for dynamical branched covers of the sphere and torus.
//!
//! A cover is described by a finite [`skeleton::CoverSkeleton`]: its marked
//! points, its critical points and their local degrees, and where each of
//! them goes. From that data the crate computes orbifold signatures,
//! infinitely stable points, and transition matrices of labeled multicurves.
//! It decides whether a strong reduction system exists and extracts minimal
//! ones as Levy cycles. Linear torus maps are classified as holomorphic,
//! strongly reducible or Anosov, and can be pushed down to exceptional
//! sphere maps through the elliptic involution.
//!
//! ```
//! use branchcover::orbifold::{orbifold_signature, OrbifoldType};
//! use branchcover::skeleton::samples::rabbit;
//!
//! let sig = orbifold_signature(&rabbit());
//! assert_eq!(sig.kind, OrbifoldType::Hyperbolic);
//! assert_eq!(sig.euler().to_string(), "-2");
//! ```

pub mod cli;
pub mod exact;
pub mod generate;
pub mod graph;
pub mod hyperelliptic;
pub mod levy;
pub mod lp;
pub mod obstruction;
pub mod orbifold;
pub mod skeleton;
pub mod stability;
pub mod torus;

pub use hyperelliptic::{descend, descend_srs, weierstrass_permutation};
pub use levy::{check_prop_levy, find_levy_cycles, lifting_graph, minimal_srs};
pub use obstruction::{decide_srs, proof_constants, pullback_labels, transition_matrix, LabeledMulticurve, LiftingData};
pub use orbifold::{is_exceptional, lifts_to_torus, orbifold_signature};
pub use skeleton::{validate, CoverSkeleton, SkeletonBuilder, SkeletonDoc, Surface};
pub use stability::{check_prop_stable, infinitely_stable_points};
pub use torus::{classify, construct_srs, teich_action, teich_distance, translation_length, TorusMapSpec};
