//! Residue and decomposition helpers used by every formula in the crate.
//!
//! For an integer `n`, `eps(n)` is the residue of `n` mod 2 and `eta(n)`
//! the residue mod 3, both taken non-negative so that the identities
//! `n = 2*floor(n/2) + eps(n)` and `n = 3*floor(n/3) + eta(n)` hold for
//! negative `n` as well. The pair `(lambda(n), rho(n))` is the unique
//! decomposition `n = 6*lambda + rho` with `rho` in `{-6,-4,-3,-2,-1,1}`.

/// Residues of an integer modulo 2 and modulo 3.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ResiduePair {
    /// `n mod 2`, in `{0, 1}`.
    pub eps: i64,
    /// `n mod 3`, in `{0, 1, 2}`.
    pub eta: i64,
}

/// The decomposition `n = 6*lambda + rho` with `rho` in `{-6,-4,-3,-2,-1,1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LambdaRho {
    pub lambda: i64,
    pub rho: i64,
}

/// Non-negative residue of `n` modulo 2.
#[inline]
pub fn eps(n: i64) -> i64 {
    n.rem_euclid(2)
}

/// Non-negative residue of `n` modulo 3.
#[inline]
pub fn eta(n: i64) -> i64 {
    n.rem_euclid(3)
}

/// Both residues of `n` at once.
#[inline]
pub fn residues(n: i64) -> ResiduePair {
    ResiduePair {
        eps: eps(n),
        eta: eta(n),
    }
}

/// The unique pair `(lambda, rho)` with `n = 6*lambda + rho` and
/// `rho` in `{-6,-4,-3,-2,-1,1}`.
///
/// Characterized by `lambda(1) = 0`, `lambda(n) = 1` for `n` in `0..=5`
/// except `1`, and `lambda(n+6) = lambda(n) + 1`.
#[inline]
pub fn lambda_rho(n: i64) -> LambdaRho {
    let rho = match n.rem_euclid(6) {
        0 => -6,
        1 => 1,
        2 => -4,
        3 => -3,
        4 => -2,
        5 => -1,
        _ => unreachable!(),
    };
    LambdaRho {
        lambda: (n - rho) / 6,
        rho,
    }
}

/// `lambda(n)` alone.
#[inline]
pub fn lambda(n: i64) -> i64 {
    lambda_rho(n).lambda
}

/// `rho(n)` alone.
#[inline]
pub fn rho(n: i64) -> i64 {
    lambda_rho(n).rho
}

/// Ceiling of `a / b` for positive `b`.
#[inline]
pub fn ceil_div(a: i64, b: i64) -> i64 {
    debug_assert!(b > 0);
    (a + b - 1).div_euclid(b)
}
