//! The bijection `phi: R'_w -> M'_w` and everything it is built from.
//!
//! The rectangular region is parametrized by `(w, t, a)` on both sides;
//! composing one parametrization with the inverse of the other yields
//! `phi_rect(u) = u + q_{lambda(u)}` where `q_h = (0, 3h, m-2h)` and
//! `lambda(u) = lambda(delta_w - a(u))`. The triangular region is handled
//! through the `(w, r, s)` multigrading coming from viewing `k[x,y,z]` as
//! a free module over `k[y, x^3, z^2]`, giving `phi_tri`. The glued map
//! dispatches on the region and preserves weight, `t`-invariant, and
//! divisibility.

use std::cmp::Ordering;

use crate::arith::{eps, eta, lambda_rho, LambdaRho};
use crate::error::{domain, Result};
use crate::monomial::{
    classify_region_r, in_m, in_mprime, Monomial, Offset, Region, WeightConstants,
};

/// A multiplier: a monomial of weight exactly `3m`, arising as
/// `phi(u) - u` for some `u`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Multiplier(Monomial);

impl Multiplier {
    pub fn new(m: i64, mono: Monomial) -> Result<Self> {
        if mono.weight() != 3 * m {
            return Err(domain(format!(
                "multiplier must have weight 3m = {}, got weight {}",
                3 * m,
                mono.weight()
            )));
        }
        Ok(Multiplier(mono))
    }

    pub fn from_triple(m: i64, a: i64, b: i64, c: i64) -> Result<Self> {
        Multiplier::new(m, Monomial::new(a, b, c)?)
    }

    /// The quotient `v / u`, which must be a genuine monomial.
    pub fn from_quotient(m: i64, v: &Monomial, u: &Monomial) -> Result<Self> {
        let off = v.sub(u);
        if !off.is_nonneg() {
            return Err(domain(format!(
                "{:?} does not divide {:?}",
                u.as_triple(),
                v.as_triple()
            )));
        }
        Multiplier::new(m, off.into_monomial()?)
    }

    #[inline]
    pub fn as_monomial(&self) -> Monomial {
        self.0
    }

    #[inline]
    pub fn as_triple(&self) -> [i64; 3] {
        self.0.as_triple()
    }

    #[inline]
    pub fn as_offset(&self) -> Offset {
        Offset {
            a: self.0.a,
            b: self.0.b,
            c: self.0.c,
        }
    }
}

/// `q_h = (0, 3h, m - 2h)`, the multiplier family of the rectangular
/// region. Defined for `0 <= h <= m/2`.
pub fn q_multiplier(m: i64, h: i64) -> Result<Multiplier> {
    Multiplier::from_triple(m, 0, 3 * h, m - 2 * h)
}

/// `lambda` and `rho` of a monomial of `R'_w`, taken at `delta_w - a`.
pub fn lambda_rho_of(m: i64, u: &Monomial) -> LambdaRho {
    let wc = WeightConstants::new(m, u.weight());
    lambda_rho(wc.delta - u.a)
}

/// Parameters `(w, t, a)` of the rectangular-side parametrizations; `a`
/// doubles as the first coordinate `i` on the `M` side.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RectParam {
    pub w: i64,
    pub t: i64,
    pub a: i64,
}

impl RectParam {
    pub fn new(w: i64, t: i64, a: i64) -> Self {
        RectParam { w, t, a }
    }

    /// Membership in the parameter space of `R'`:
    /// `w + a <= 6m - 9` and `w - a - 6t - 3*eps(w+a) >= 0`, over `N^3`.
    pub fn in_p_r(&self, m: i64) -> bool {
        self.w >= 0
            && self.t >= 0
            && self.a >= 0
            && self.w + self.a <= 6 * m - 9
            && self.w - self.a - 6 * self.t - 3 * eps(self.w + self.a) >= 0
    }

    /// Membership in the parameter space of `M'`:
    /// `w + i <= 6m - 9` and
    /// `3(m-1+t) - w + eta(w+i) <= i <= 3(m-1-t) - eta(w+i)`, over `N^3`.
    pub fn in_p_m(&self, m: i64) -> bool {
        let (w, t, i) = (self.w, self.t, self.a);
        let e = eta(w + i);
        w >= 0
            && t >= 0
            && i >= 0
            && w + i <= 6 * m - 9
            && 3 * (m - 1 + t) - w + e <= i
            && i <= 3 * (m - 1 - t) - e
    }

    /// Membership in the common rectangle `0 <= t <= tau_w`,
    /// `0 <= a <= delta_w`, `3(m-1) <= w <= 6m-9`, where the two parameter
    /// spaces coincide.
    pub fn in_p_rect(&self, m: i64) -> bool {
        let wc = WeightConstants::new(m, self.w);
        self.w >= 3 * (m - 1)
            && self.w <= 6 * m - 9
            && (0..=wc.tau).contains(&self.t)
            && (0..=wc.delta).contains(&self.a)
    }
}

/// The parametrization `u_R(w,t,a) = (a, -3t + (w-a-3*eps(w+a))/2, 2t + eps(w+a))`
/// of `R'` by weight, `t`-invariant, and first coordinate.
pub fn param_rect_u(m: i64, p: RectParam) -> Result<Monomial> {
    if !p.in_p_r(m) {
        return Err(domain(format!(
            "(w,t,a) = ({}, {}, {}) violates P_R: need w+a <= 6m-9 and w-a-6t-3*eps(w+a) >= 0",
            p.w, p.t, p.a
        )));
    }
    let e = eps(p.w + p.a);
    Ok(Monomial {
        a: p.a,
        b: -3 * p.t + (p.w - p.a - 3 * e) / 2,
        c: 2 * p.t + e,
    })
}

/// Inverse of [`param_rect_u`]: total on monomials.
pub fn rect_param_of_u(u: &Monomial) -> RectParam {
    RectParam {
        w: u.weight(),
        t: u.t_r(),
        a: u.a,
    }
}

/// The parametrization
/// `v_M(w,t,i) = (i, -3t + 3(m-1) - i - eta(w+i), 2t - (m-2) + (w+i+2*eta(w+i))/3)`
/// of `M'` by `M`-weight, `t`-invariant, and first coordinate.
pub fn param_rect_v(m: i64, p: RectParam) -> Result<Monomial> {
    if !p.in_p_m(m) {
        return Err(domain(format!(
            "(w,t,i) = ({}, {}, {}) violates P_M: need w+i <= 6m-9 and 3(m-1+t)-w+eta(w+i) <= i <= 3(m-1-t)-eta(w+i)",
            p.w, p.t, p.a
        )));
    }
    let e = eta(p.w + p.a);
    Ok(Monomial {
        a: p.a,
        b: -3 * p.t + 3 * (m - 1) - p.a - e,
        c: 2 * p.t - (m - 2) + (p.w + p.a + 2 * e) / 3,
    })
}

/// Inverse of [`param_rect_v`]: total on monomials.
pub fn rect_param_of_v(v: &Monomial, m: i64) -> RectParam {
    RectParam {
        w: v.weight_m(m),
        t: v.t_m(m),
        a: v.a,
    }
}

fn require_rect_r(m: i64, u: &Monomial) -> Result<WeightConstants> {
    let region = classify_region_r(u, m)?;
    if region != Region::Rectangular {
        return Err(domain(format!(
            "{:?} lies in the triangular region",
            u.as_triple()
        )));
    }
    Ok(WeightConstants::new(m, u.weight()))
}

/// The rectangular bijection `phi_rect(u) = u + q_{lambda(delta_w - a)}`.
pub fn phi_rect(m: i64, u: &Monomial) -> Result<Monomial> {
    let wc = require_rect_r(m, u)?;
    let lam = lambda_rho(wc.delta - u.a).lambda;
    let q = q_multiplier(m, lam)?;
    u.checked_add(q.as_offset())
        .ok_or_else(|| domain("rectangular multiplier left the positive octant".to_string()))
}

/// Sort key realizing the total order on the rectangular region: compare
/// `(lambda(delta_w - a), rho(delta_w - a), t)` lexicographically.
fn prec_key(delta: i64, a: i64, t: i64) -> (i64, i64, i64) {
    let LambdaRho { lambda, rho } = lambda_rho(delta - a);
    (lambda, rho, t)
}

/// The total order on `R^rect_w`. Errors unless both arguments lie in the
/// rectangular region of the same weight slice.
pub fn prec_compare_r(m: i64, u1: &Monomial, u2: &Monomial) -> Result<Ordering> {
    if u1.weight() != u2.weight() {
        return Err(domain(format!(
            "order is defined per weight slice; got weights {} and {}",
            u1.weight(),
            u2.weight()
        )));
    }
    let wc = require_rect_r(m, u1)?;
    require_rect_r(m, u2)?;
    Ok(prec_key(wc.delta, u1.a, u1.t_r()).cmp(&prec_key(wc.delta, u2.a, u2.t_r())))
}

/// The induced order on `M^rect_w`, via `(t_M, i)`.
pub fn prec_compare_m(m: i64, v1: &Monomial, v2: &Monomial) -> Result<Ordering> {
    if v1.weight_m(m) != v2.weight_m(m) {
        return Err(domain(format!(
            "order is defined per weight slice; got M-weights {} and {}",
            v1.weight_m(m),
            v2.weight_m(m)
        )));
    }
    for v in [v1, v2] {
        if crate::monomial::classify_region_m(v, m)? != Region::Rectangular {
            return Err(domain(format!(
                "{:?} lies in the triangular region",
                v.as_triple()
            )));
        }
    }
    let wc = WeightConstants::new(m, v1.weight_m(m));
    Ok(prec_key(wc.delta, v1.a, v1.t_m(m)).cmp(&prec_key(wc.delta, v2.a, v2.t_m(m))))
}

/// The marker monomial `u^(r) = (delta_w - 2r, r + eta(w), 2*tau_w + 1)`,
/// the largest monomial of `R^rect_w` whose second entry is at most
/// `r + eta(w)`.
pub fn marker_monomial(m: i64, w: i64, r: i64) -> Result<Monomial> {
    let wc = WeightConstants::new(m, w);
    if !(3 * (m - 1) <= w && w <= 6 * m - 9) {
        return Err(domain(format!(
            "marker monomials need 3(m-1) <= w <= 6m-9, got w = {w}"
        )));
    }
    if !(0 <= r && r <= wc.delta.div_euclid(2)) {
        return Err(domain(format!(
            "marker index must satisfy 0 <= r <= floor(delta_w/2) = {}, got {r}",
            wc.delta.div_euclid(2)
        )));
    }
    param_rect_u(
        m,
        RectParam {
            w,
            t: wc.tau,
            a: wc.delta - 2 * r,
        },
    )
}

/// Parameters `(w, r, s)` of the triangular-side parametrizations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TriParam {
    pub w: i64,
    pub r: i64,
    pub s: i64,
}

impl TriParam {
    pub fn new(w: i64, r: i64, s: i64) -> Self {
        TriParam { w, r, s }
    }

    /// Membership in `D`: non-negative with `2r + 3s <= w`.
    pub fn in_d(&self) -> bool {
        self.w >= 0 && self.r >= 0 && self.s >= 0 && 2 * self.r + 3 * self.s <= self.w
    }

    /// `t_D = floor((w - 2r - 3s) / 6)`.
    pub fn t_d(&self) -> i64 {
        (self.w - 2 * self.r - 3 * self.s).div_euclid(6)
    }

    /// Membership in `D^T`: additionally `t_D >= tau_w + 1`.
    pub fn in_d_t(&self, m: i64) -> bool {
        self.in_d() && self.t_d() >= WeightConstants::new(m, self.w).tau + 1
    }
}

fn require_d_t(m: i64, d: TriParam) -> Result<()> {
    if !d.in_d_t(m) {
        return Err(domain(format!(
            "(w,r,s) = ({}, {}, {}) violates D^T: need 2r+3s <= w and floor((w-2r-3s)/6) >= tau_w + 1",
            d.w, d.r, d.s
        )));
    }
    Ok(())
}

/// The triangular parametrization
/// `u_tri(w,r,s) = (3s + eta(w+r), r, (w - 2r - 3s - eta(w+r))/3)`.
pub fn param_tri_u(m: i64, d: TriParam) -> Result<Monomial> {
    require_d_t(m, d)?;
    let e = eta(d.w + d.r);
    Ok(Monomial {
        a: 3 * d.s + e,
        b: d.r,
        c: (d.w - 2 * d.r - 3 * d.s - e) / 3,
    })
}

/// Inverse of [`param_tri_u`]: `(w, r, s) = (wt(u), b, floor(a/3))`.
pub fn tri_param_of_u(u: &Monomial) -> TriParam {
    TriParam {
        w: u.weight(),
        r: u.b,
        s: u.a.div_euclid(3),
    }
}

/// The triangular parametrization of the `M` side,
/// `v_tri(w,r,s) = ((6(m-1)-w-2r+3s-eps(w+s))/2, 2r+eps(w+s), (w-2r-s+2-eps(w+s))/2)`.
pub fn param_tri_v(m: i64, d: TriParam) -> Result<Monomial> {
    require_d_t(m, d)?;
    let e = eps(d.w + d.s);
    Ok(Monomial {
        a: (6 * (m - 1) - d.w - 2 * d.r + 3 * d.s - e) / 2,
        b: 2 * d.r + e,
        c: (d.w - 2 * d.r - d.s + 2 - e) / 2,
    })
}

/// Inverse of [`param_tri_v`] on the extended triangular region of `M`.
pub fn tri_param_of_v(m: i64, v: &Monomial) -> TriParam {
    let w = v.weight_m(m);
    let r = v.b.div_euclid(2);
    let e = v.b - 2 * r; // eps(w + s)
    TriParam {
        w,
        r,
        s: (2 * v.a - 6 * (m - 1) + w + 2 * r + e) / 3,
    }
}

/// Membership in the extended triangular region `R^T` (a subset of `N^3`;
/// the condition `t_R >= tau_w + 1` already forces `a + b <= 3m - 4`).
pub fn in_r_t(u: &Monomial, m: i64) -> bool {
    u.t_r() >= WeightConstants::new(m, u.weight()).tau + 1
}

/// Membership in the extended triangular region `M^T`.
pub fn in_m_t(v: &Monomial, m: i64) -> bool {
    in_m(v, m) && v.t_m(m) >= WeightConstants::new(m, v.weight_m(m)).tau + 1
}

/// The triangular bijection `phi_tri: R^T -> M^T`, defined on the extended
/// region; it restricts to `R^tri -> M^tri` inside the reduced bases.
pub fn phi_tri(m: i64, u: &Monomial) -> Result<Monomial> {
    if !in_r_t(u, m) {
        return Err(domain(format!(
            "{:?} violates t_R >= tau_w + 1, not in the extended triangular region",
            u.as_triple()
        )));
    }
    param_tri_v(m, tri_param_of_u(u))
}

/// The glued bijection `phi: R'_w -> M'_w`, acting as [`phi_rect`] on the
/// rectangular region and as [`phi_tri`] on the triangular region.
pub fn phi(m: i64, u: &Monomial) -> Result<Monomial> {
    match classify_region_r(u, m)? {
        Region::Rectangular => phi_rect(m, u),
        Region::Triangular => phi_tri(m, u),
    }
}

/// Inverse of the glued bijection, defined on `M'`.
pub fn phi_inverse(m: i64, v: &Monomial) -> Result<Monomial> {
    match crate::monomial::classify_region_m(v, m)? {
        Region::Rectangular => param_rect_u(m, rect_param_of_v(v, m)),
        Region::Triangular => param_tri_u(m, tri_param_of_v(m, v)),
    }
}

/// The multiplier `phi(u) / u` of a monomial of `R'`.
pub fn multiplier_of(m: i64, u: &Monomial) -> Result<Multiplier> {
    let v = phi(m, u)?;
    Multiplier::from_quotient(m, &v, u)
}

/// The residue `h` entering the first multiplier coordinate on the
/// triangular region; it depends only on `eta(a)` and `eps(c)`.
pub fn h_residue(a: i64, c: i64) -> i64 {
    (2 + 3 * eps(c) - eta(a) - eps(c + eta(a))) / 2
}

/// First coordinate of the triangular multiplier:
/// `a' = 3(t - tau_w - 1) + h(a, c) + 2 - eta(w)`.
pub fn aprime_of(m: i64, u: &Monomial) -> Result<i64> {
    if !in_r_t(u, m) {
        return Err(domain(format!(
            "{:?} is not in the extended triangular region",
            u.as_triple()
        )));
    }
    let wc = WeightConstants::new(m, u.weight());
    Ok(3 * (u.t_r() - wc.tau - 1) + h_residue(u.a, u.c) + 2 - eta(wc.w))
}

/// The exceptional monomials `u_w = (6m-8-w, 0, (2w-6m+8)/3)` of
/// `R^T \ R^tri`, present for `w = 2 mod 3` in `[3m-4, 6m-10]`, together
/// with their images `u_w + (0,0,m)`.
pub fn exceptional_pair(m: i64, w: i64) -> Result<(Monomial, Monomial)> {
    if eta(w) != 2 || !(3 * m - 4 <= w && w <= 6 * m - 10) {
        return Err(domain(format!(
            "exceptional monomials need w = 2 mod 3 and 3m-4 <= w <= 6m-10, got w = {w}"
        )));
    }
    let u = Monomial::new(6 * m - 8 - w, 0, (2 * w - 6 * m + 8) / 3)?;
    let v = u
        .checked_add(Offset { a: 0, b: 0, c: m })
        .expect("adding z^m keeps exponents non-negative");
    Ok((u, v))
}

/// Check that the glued `phi` really is a weight-slice bijection with the
/// stated invariants; used by tests and the batch driver.
pub fn phi_is_bijection_on_slice(m: i64, w: i64) -> Result<bool> {
    let domain_list = crate::monomial::enumerate_basis(m, w, crate::monomial::Side::Rprime)?;
    let image_list = crate::monomial::enumerate_basis(m, w, crate::monomial::Side::Mprime)?;
    let mut images = Vec::with_capacity(domain_list.len());
    for u in &domain_list {
        let v = phi(m, u)?;
        if !in_mprime(&v, m) || v.weight_m(m) != w || v.t_m(m) != u.t_r() {
            return Ok(false);
        }
        if !u.divides(&v) {
            return Ok(false);
        }
        if phi_inverse(m, &v)? != *u {
            return Ok(false);
        }
        images.push(v);
    }
    images.sort();
    Ok(images == image_list)
}
