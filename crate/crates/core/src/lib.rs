//! Exact direct limits of graded vector spaces and generic-parameter
//! ribbon fusion data for Virasoro, affine sl2 and their coset extensions.

pub mod catdata;
pub mod dirlim;
pub mod exact;
pub mod fusion;
pub mod induction;

