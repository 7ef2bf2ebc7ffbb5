//! Exact computation of rank-2 scattering-diagram wall functions, two ways:
//! order-by-order consistency completion and tight-grading enumeration on
//! maximal Dyck paths, with closed-formula and tiling cross-checks.

pub mod cli;
pub mod dyck;
pub mod grading;
pub mod exact;
pub mod scatter;
pub mod conjectures;
pub mod tiling;
pub mod wallcoeffs;
pub mod weyl;
