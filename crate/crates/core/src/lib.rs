//! Monomial bijections and exact determinant certificates for the weighted
//! polynomial ring `k[x,y,z]` with `wt(x)=1, wt(y)=2, wt(z)=3`.
//!
//! Fix `m >= 2` and let `R = k[x,y,z]/(x,y)^{3m-2}` and
//! `M = (x,y,z)^{3m-2}/(x,y)^{3m-2}`. A weight-`3m` form `g` induces
//! multiplication maps `g·: R_w -> M_{w+3m}` whose matrices `A_w` have
//! entries indexed by monomial pairs `(v, u)` with value `coeff(v/u)` when
//! `u` divides `v`. This crate constructs explicit weight- and
//! `t`-invariant-preserving bijections between the reduced monomial bases
//! `R'_w` and `M'_w`, with divisible images, and uses them to certify that
//! `det(A_w)` does not vanish identically:
//!
//! * [`arith`] — integer residue helpers (`eps`, `eta`, `lambda`, `rho`);
//! * [`monomial`] — graded monomial bases, the degree-shift isomorphism
//!   `psi`, and the rectangular/triangular region split;
//! * [`bijection`] — the parametrizations of both regions, the glued
//!   bijection `phi`, the order on the rectangular region, and marker
//!   monomials;
//! * [`blocks`] — special blocks where uniqueness fails in a controlled
//!   way, the block bijection family, filtrations, and the closed-form
//!   tables of low-`a'` multipliers;
//! * [`verify`] — brute-force oracles: enumerate every divisibility-
//!   respecting bijection with a prescribed multiplier multiset, together
//!   with permutation parities;
//! * [`linalg`] — the matrices `A_w`, exact symbolic determinants at small
//!   sizes, and randomized modular non-vanishing certificates.

pub mod arith;
pub mod bijection;
pub mod blocks;
pub mod error;
pub mod fp;
pub mod linalg;
pub mod monomial;
pub mod poly;
pub mod verify;

pub use arith::{lambda_rho, residues, LambdaRho, ResiduePair};
pub use bijection::{phi, phi_inverse, phi_rect, phi_tri, Multiplier, RectParam, TriParam};
pub use blocks::{special_block, LowAprimeRow, SpecialBlock};
pub use error::{Error, Result};
pub use monomial::{
    enumerate_basis, ModelParams, Monomial, Offset, Region, Side, WeightConstants,
};
pub use verify::{BijectionTable, MultiplierMultiset, SignedCount};
