//! Monomial bases of the graded rings `R`, `M`, `R'`, `M'`, the shift
//! isomorphism `psi`, and the region split driven by the threshold number.
//!
//! Monomials `x^a y^b z^c` are identified with triples `(a, b, c)` and
//! weighted by `wt(x)=1, wt(y)=2, wt(z)=3`. Throughout, `m >= 2` is the
//! model parameter: `R = k[x,y,z]/(x,y)^{3m-2}` and
//! `M = (x,y,z)^{3m-2}/(x,y)^{3m-2}`. Elements of `M`-side bases are
//! written `(i, j, k)` in the comments and carry their `M`-weight
//! `i + 2j + 3k - 3m`.

use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};

/// A monomial `x^a y^b z^c` with non-negative exponents.
///
/// The derived ordering is lexicographic on `(a, b, c)`; it is the
/// canonical storage order for every basis in this crate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Monomial {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

/// An integer exponent vector that may have negative entries, used for
/// differences of monomials and for the abstract special-block offsets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Offset {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

impl Monomial {
    pub fn new(a: i64, b: i64, c: i64) -> Result<Self> {
        if a < 0 || b < 0 || c < 0 {
            return Err(domain(format!(
                "monomial exponents must be non-negative, got ({a}, {b}, {c})"
            )));
        }
        Ok(Self { a, b, c })
    }

    /// The weight `a + 2b + 3c`.
    #[inline]
    pub fn weight(&self) -> i64 {
        self.a + 2 * self.b + 3 * self.c
    }

    /// The `M`-weight `i + 2j + 3k - 3m` of a monomial read on the `M` side.
    #[inline]
    pub fn weight_m(&self, m: i64) -> i64 {
        self.weight() - 3 * m
    }

    /// The `R`-side invariant `t = floor(c / 2)`.
    #[inline]
    pub fn t_r(&self) -> i64 {
        self.c.div_euclid(2)
    }

    /// The `M`-side invariant `t = floor((3(m-1) - (i+j)) / 3)`.
    #[inline]
    pub fn t_m(&self, m: i64) -> i64 {
        (3 * (m - 1) - (self.a + self.b)).div_euclid(3)
    }

    /// Componentwise difference `self - other`.
    #[inline]
    pub fn sub(&self, other: &Monomial) -> Offset {
        Offset {
            a: self.a - other.a,
            b: self.b - other.b,
            c: self.c - other.c,
        }
    }

    /// `self + off` when the result has non-negative entries.
    #[inline]
    pub fn checked_add(&self, off: Offset) -> Option<Monomial> {
        let (a, b, c) = (self.a + off.a, self.b + off.b, self.c + off.c);
        if a < 0 || b < 0 || c < 0 {
            None
        } else {
            Some(Monomial { a, b, c })
        }
    }

    /// Whether `self` divides `other` as a monomial.
    #[inline]
    pub fn divides(&self, other: &Monomial) -> bool {
        self.a <= other.a && self.b <= other.b && self.c <= other.c
    }

    /// Exponents as a triple, the JSON wire form.
    #[inline]
    pub fn as_triple(&self) -> [i64; 3] {
        [self.a, self.b, self.c]
    }

    /// Standard (total) degree `a + b + c`.
    #[inline]
    pub fn degree(&self) -> i64 {
        self.a + self.b + self.c
    }
}

impl Offset {
    pub const E1: Offset = Offset { a: 1, b: 1, c: -1 };
    pub const E2: Offset = Offset { a: 0, b: 3, c: -2 };

    #[inline]
    pub fn weight(&self) -> i64 {
        self.a + 2 * self.b + 3 * self.c
    }

    #[inline]
    pub fn is_nonneg(&self) -> bool {
        self.a >= 0 && self.b >= 0 && self.c >= 0
    }

    #[inline]
    pub fn scaled(&self, k: i64) -> Offset {
        Offset {
            a: self.a * k,
            b: self.b * k,
            c: self.c * k,
        }
    }

    pub fn into_monomial(self) -> Result<Monomial> {
        Monomial::new(self.a, self.b, self.c)
    }
}

impl std::ops::Add for Offset {
    type Output = Offset;
    fn add(self, rhs: Offset) -> Offset {
        Offset {
            a: self.a + rhs.a,
            b: self.b + rhs.b,
            c: self.c + rhs.c,
        }
    }
}

/// The model parameter `m` together with the derived `ell = 3m - 2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ModelParams {
    pub m: i64,
    pub ell: i64,
}

impl ModelParams {
    pub fn new(m: i64) -> Result<Self> {
        if m < 2 {
            return Err(domain(format!("model parameter must satisfy m >= 2, got {m}")));
        }
        Ok(Self { m, ell: 3 * m - 2 })
    }
}

/// Per-weight constants derived from `(m, w)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WeightConstants {
    pub m: i64,
    pub w: i64,
    /// Threshold number `tau_w = floor(w/3) - (m-1)`.
    pub tau: i64,
    /// Largest first coordinate on either reduced basis, `delta_w = 6m-9-w`.
    pub delta: i64,
    /// Smallest triangular third coordinate, `c_w = 2(tau_w + 1)`.
    pub c_w: i64,
    /// Largest block index, `n_max = floor((6m-9-w)/6)`.
    pub n_max: i64,
}

impl WeightConstants {
    pub fn new(m: i64, w: i64) -> Self {
        let tau = w.div_euclid(3) - (m - 1);
        let delta = 6 * m - 9 - w;
        WeightConstants {
            m,
            w,
            tau,
            delta,
            c_w: 2 * (tau + 1),
            n_max: delta.div_euclid(6),
        }
    }

    /// `delta_{w,n} = delta_w - 6n`.
    #[inline]
    pub fn delta_n(&self, n: i64) -> i64 {
        self.delta - 6 * n
    }
}

/// Which monomial basis to enumerate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    R,
    M,
    Rprime,
    Mprime,
}

/// Rectangular/triangular split of the reduced bases by the `t`-invariant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Region {
    Rectangular,
    Triangular,
}

/// Membership in the basis of `R`: `a + b <= 3m - 3`.
#[inline]
pub fn in_r(u: &Monomial, m: i64) -> bool {
    u.a + u.b <= 3 * m - 3
}

/// Membership in the basis of `M`: `i + j <= 3(m-1)` and `i + j + k >= 3m - 2`.
#[inline]
pub fn in_m(v: &Monomial, m: i64) -> bool {
    v.a + v.b <= 3 * (m - 1) && v.a + v.b + v.c >= 3 * m - 2
}

/// Membership in the reduced basis `R'`: `2a + 2b + 3c <= 6m - 9`.
#[inline]
pub fn in_rprime(u: &Monomial, m: i64) -> bool {
    2 * u.a + 2 * u.b + 3 * u.c <= 6 * m - 9
}

/// Membership in the reduced basis `M'`.
#[inline]
pub fn in_mprime(v: &Monomial, m: i64) -> bool {
    in_m(v, m) && 2 * v.a + 2 * v.b + 3 * v.c <= 9 * (m - 1)
}

fn check_m(m: i64) -> Result<()> {
    if m < 2 {
        return Err(domain(format!("m >= 2 required, got {m}")));
    }
    Ok(())
}

/// Enumerate a weight slice of one of the four bases, in lexicographic
/// order on `(a, b, c)`.
///
/// For the `R` sides `w` is the plain weight; for the `M` sides it is the
/// `M`-weight, so the raw weight of the listed monomials is `w + 3m`. The
/// reduced slices are empty unless `0 <= w <= 6m - 9`.
pub fn enumerate_basis(m: i64, w: i64, side: Side) -> Result<Vec<Monomial>> {
    check_m(m)?;
    let raw = match side {
        Side::R | Side::Rprime => w,
        Side::M | Side::Mprime => w + 3 * m,
    };
    let mut out = Vec::new();
    if raw < 0 {
        return Ok(out);
    }
    for a in 0..=raw {
        let rest = raw - a;
        for b in 0..=rest / 2 {
            let r3 = rest - 2 * b;
            if r3 % 3 != 0 {
                continue;
            }
            let mono = Monomial { a, b, c: r3 / 3 };
            let keep = match side {
                Side::R => in_r(&mono, m),
                Side::Rprime => in_rprime(&mono, m),
                Side::M => in_m(&mono, m),
                Side::Mprime => in_mprime(&mono, m),
            };
            if keep {
                out.push(mono);
            }
        }
    }
    Ok(out)
}

/// Region of a monomial of `R'`: rectangular iff `t_R(u) <= tau_w`.
pub fn classify_region_r(u: &Monomial, m: i64) -> Result<Region> {
    check_m(m)?;
    if !in_rprime(u, m) {
        return Err(domain(format!(
            "({}, {}, {}) violates 2a+2b+3c <= 6m-9, not in R'",
            u.a, u.b, u.c
        )));
    }
    let tau = WeightConstants::new(m, u.weight()).tau;
    Ok(if u.t_r() <= tau {
        Region::Rectangular
    } else {
        Region::Triangular
    })
}

/// Region of a monomial of `M'`: rectangular iff `t_M(v) <= tau_w`.
pub fn classify_region_m(v: &Monomial, m: i64) -> Result<Region> {
    check_m(m)?;
    if !in_mprime(v, m) {
        return Err(domain(format!(
            "({}, {}, {}) is not in M'",
            v.a, v.b, v.c
        )));
    }
    let tau = WeightConstants::new(m, v.weight_m(m)).tau;
    Ok(if v.t_m(m) <= tau {
        Region::Rectangular
    } else {
        Region::Triangular
    })
}

/// Dimensions of the full weight slices: `(dim R_w, dim M_{w+3m})`.
///
/// Both are computed by direct enumeration; they agree by the graded
/// isomorphism realized by [`psi`].
pub fn dims_check(m: i64, w: i64) -> Result<(usize, usize)> {
    let r = enumerate_basis(m, w, Side::R)?.len();
    let mm = enumerate_basis(m, w, Side::M)?.len();
    Ok((r, mm))
}

/// Dimensions of the reduced weight slices: `(|R'_w|, |M'_w|)`.
pub fn dims_check_reduced(m: i64, w: i64) -> Result<(usize, usize)> {
    let r = enumerate_basis(m, w, Side::Rprime)?.len();
    let mm = enumerate_basis(m, w, Side::Mprime)?.len();
    Ok((r, mm))
}

/// The graded isomorphism `psi(x^a y^b z^c) = x^{3(m-1)-a-b} y^a z^{1+b+c}`,
/// raising weight by exactly `3m` and sending the basis of `R` onto the
/// basis of `M`.
pub fn psi(u: &Monomial, m: i64) -> Result<Monomial> {
    check_m(m)?;
    if !in_r(u, m) {
        return Err(domain(format!(
            "psi requires a + b <= 3(m-1); got a + b = {}",
            u.a + u.b
        )));
    }
    Ok(Monomial {
        a: 3 * (m - 1) - u.a - u.b,
        b: u.a,
        c: 1 + u.b + u.c,
    })
}

/// Inverse of [`psi`]: defined on the basis of `M`.
pub fn psi_inverse(v: &Monomial, m: i64) -> Result<Monomial> {
    check_m(m)?;
    if !in_m(v, m) {
        return Err(domain(format!(
            "psi_inverse requires i + j <= 3(m-1) and i + j + k >= 3m - 2; got i+j = {}, i+j+k = {}",
            v.a + v.b,
            v.a + v.b + v.c
        )));
    }
    Ok(Monomial {
        a: v.b,
        b: 3 * (m - 1) - v.a - v.b,
        c: v.a + v.b + v.c - 3 * m + 2,
    })
}

/// The generator `v_0 = x^{3(m-1)} z`, the unique weight-`3m` monomial of `M`.
pub fn m_generator(m: i64) -> Monomial {
    Monomial {
        a: 3 * (m - 1),
        b: 0,
        c: 1,
    }
}
