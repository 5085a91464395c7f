#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod cones;
pub mod embeddings;
pub mod error;
pub mod geodesics;
pub mod isometries;
pub mod jordan;
mod linalg;
pub mod point;
pub mod sampling;
pub mod uniqueness;

pub use cones::{ConeSpec, Family, LineBoundary, Membership, MembershipClass, OrderRatios};
pub use error::{Error, Result};
pub use geodesics::{GeodesicLeg, GeodesicPath, LegOrder};
pub use jordan::{JordanAlgebra, SpectralDecomp};
pub use point::Point;
pub use uniqueness::{Method, Status, UniquenessVerdict};
