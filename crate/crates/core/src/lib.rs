//! Exact computation of the topology of hyperplane arrangement complements.
//!
//! This crate computes Betti numbers and minimal CW cell counts of the
//! complement `C^n \ V` of a finite arrangement of affine hyperplanes defined
//! over the rationals. Two independent pipelines are provided:
//!
//! * a combinatorial oracle ([`arrangement::betti_os`]) that reads the Betti
//!   numbers off the Möbius function of the intersection poset, and
//! * a geometric pipeline ([`polar::betti_slicing`]) that certifies a generic
//!   pencil of hyperplanes, slices the arrangement down one dimension at a
//!   time, and recovers the top Betti number from polar numbers attached to
//!   the point strata.
//!
//! For plane arrangements (`n = 2`) there is additionally a literal polar
//! curve engine ([`curve_engine`]) which computes the polar curve of the
//! defining polynomial by exact elimination and counts intersection drops
//! fiber by fiber; it cross-validates the combinatorial polar numbers and
//! also runs on non-linear plane curves such as the cusp `x^2 - y^3`.
//!
//! All arithmetic is exact over arbitrary-precision rationals; there is no
//! floating point anywhere.

pub mod arrangement;
pub mod curve_engine;
pub mod families;
pub mod pencil;
pub mod polar;
pub mod qpoly;
