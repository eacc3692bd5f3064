//! Exact computation of the type-1 chamber zeta function of the quotient of
//! the Bruhat–Tits building of PGL₃ over F_q((1/t)) by PGL₃(F_q[t]).
//!
//! Three independent routes meet in this crate: brute-force enumeration of
//! closed galleries ([`gallery`]), traces of the truncated transfer operator
//! ([`transfer`]), and block determinants with a Schur-complement recursion
//! ([`determinant`]). [`zeta`] holds the closed form they are checked against.

pub mod algebra;
pub mod complex;
pub mod determinant;
pub mod gallery;
mod qmode;
pub mod transfer;
pub mod zeta;

pub use qmode::QMode;
