//! Flip graphs of colorful triangulations and rotation Gray codes for
//! k-ary trees.
//!
//! The library has two faces. The generators ([`gray`], [`colorful_gray`])
//! stream combinatorial Gray codes: all n-vertex k-ary trees by rotations in
//! amortized O(k) per tree, and all colorful triangulations of an N-gon by
//! flips in amortized O(1) per triangulation. The oracle ([`oracle`],
//! [`tricolor`]) builds the corresponding flip graphs by brute force at desk
//! scale and decides Hamiltonicity and connectivity, so every structural
//! claim the generators rely on can be checked against ground truth.

pub mod colorful;
pub mod colorful_gray;
pub mod cube;
pub mod dissection;
pub mod error;
pub mod gray;
pub mod kary;
pub mod oracle;
pub mod tables;
pub mod tricolor;

pub use error::{Error, Result};
pub use kary::{Direction, KAryTree, Rotation};
