//! Special blocks, the filtrations supporting the inductive argument for
//! `w = 1, 2 mod 3`, and the closed-form tables of triangular monomials
//! with small first multiplier coordinate.
//!
//! For `w = 1, 2 mod 3` uniqueness of `phi` fails exactly along the
//! special blocks `B_n`: translated copies of a fixed `2*tau_w + 3`
//! element configuration built from the weight-zero offsets
//! `e1 = (1,1,-1)` and `e2 = (0,3,-2)`. On each block there is a family
//! of `tau_w + 2` bijections `B_n -> C_n` sharing one multiplier
//! multiset, any two differing by a 3-cycle, which is what makes the
//! determinant coefficient add up instead of cancelling.

use crate::arith::eta;
use crate::bijection::{q_multiplier, Multiplier};
use crate::error::{domain, Result};
use crate::monomial::{in_mprime, in_rprime, Monomial, Offset, WeightConstants};
use crate::verify::BijectionTable;

/// The `n`-th special block pair `(B_n, C_n)` of the slice `(m, w)`.
///
/// `B_n` consists of the monomials `u = (a,b,c)` of `R'_w` with
/// `a` in `{delta_{w,n} - 1, delta_{w,n}}` and `b >= 3n - 1 + eta(w)`;
/// the corner monomial is its unique triangular-region member. Within
/// each element list the index `l` increases along `e2` translates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpecialBlock {
    pub m: i64,
    pub w: i64,
    pub n: i64,
    /// The corner monomial `u0_{n,0} = (delta_{w,n}-1, 3n-1+eta(w), c_w)`.
    pub corner: Monomial,
    b_zero: Vec<Monomial>,
    b_one: Vec<Monomial>,
    c_zero: Vec<Monomial>,
    c_one: Vec<Monomial>,
}

impl SpecialBlock {
    pub fn tau(&self) -> i64 {
        WeightConstants::new(self.m, self.w).tau
    }

    /// `u0_{n,l}` for `0 <= l <= tau + 1`.
    pub fn u0(&self, l: i64) -> Option<&Monomial> {
        self.b_zero.get(usize::try_from(l).ok()?)
    }

    /// `u1_{n,l}` for `0 <= l <= tau`.
    pub fn u1(&self, l: i64) -> Option<&Monomial> {
        self.b_one.get(usize::try_from(l).ok()?)
    }

    /// `v0_{n,l}` for `1 <= l <= tau + 1`.
    pub fn v0(&self, l: i64) -> Option<&Monomial> {
        self.c_zero.get(usize::try_from(l.checked_sub(1)?).ok()?)
    }

    /// `v1_{n,l}` for `0 <= l <= tau + 1`.
    pub fn v1(&self, l: i64) -> Option<&Monomial> {
        self.c_one.get(usize::try_from(l).ok()?)
    }

    /// Ordered elements of `B_n`: `u0_0, ..., u0_{tau+1}, u1_0, ..., u1_tau`.
    pub fn b_elems(&self) -> Vec<Monomial> {
        let mut out = self.b_zero.clone();
        out.extend_from_slice(&self.b_one);
        out
    }

    /// Ordered elements of `C_n`: `v0_1, ..., v0_{tau+1}, v1_0, ..., v1_{tau+1}`.
    pub fn c_elems(&self) -> Vec<Monomial> {
        let mut out = self.c_zero.clone();
        out.extend_from_slice(&self.c_one);
        out
    }

    /// Block size `2*tau_w + 3`.
    pub fn size(&self) -> usize {
        self.b_zero.len() + self.b_one.len()
    }

    /// `q_n + e1`, the multiplier of the corner monomial.
    pub fn q_corner(&self) -> Result<Multiplier> {
        let q = q_multiplier(self.m, self.n)?;
        Multiplier::new(
            self.m,
            q.as_monomial()
                .checked_add(Offset::E1)
                .ok_or_else(|| domain("q_n + e1 left the positive octant"))?,
        )
    }

    /// `q_n`, of multiplicity `tau_w + 1` on the block.
    pub fn q_low(&self) -> Result<Multiplier> {
        q_multiplier(self.m, self.n)
    }

    /// `q_{n+1}`, of multiplicity `tau_w + 1` on the block.
    pub fn q_high(&self) -> Result<Multiplier> {
        q_multiplier(self.m, self.n + 1)
    }
}

fn check_block_params(m: i64, w: i64, n: i64) -> Result<WeightConstants> {
    if m < 2 {
        return Err(domain(format!("m >= 2 required, got {m}")));
    }
    if eta(w) == 0 {
        return Err(domain(format!(
            "special blocks exist only for w = 1, 2 mod 3, got w = {w}"
        )));
    }
    let wc = WeightConstants::new(m, w);
    if wc.tau < 0 || w > 6 * m - 10 {
        return Err(domain(format!(
            "special blocks need 3m-2 <= w <= 6m-10, got w = {w}"
        )));
    }
    if n < 0 || n > wc.n_max {
        return Err(domain(format!(
            "block index must satisfy 0 <= n <= n_max = {}, got {n}",
            wc.n_max
        )));
    }
    if 2 * n + 2 > m {
        return Err(domain(format!("block index {n} violates 2n + 2 <= m")));
    }
    Ok(wc)
}

/// Construct the `n`-th special block of the slice `(m, w)`.
pub fn special_block(m: i64, w: i64, n: i64) -> Result<SpecialBlock> {
    let wc = check_block_params(m, w, n)?;
    let tau = wc.tau;
    let corner = Monomial::new(wc.delta_n(n) - 1, 3 * n - 1 + eta(w), wc.c_w)?;

    let translate = |base: Offset, l: i64| -> Result<Monomial> {
        corner
            .checked_add(base + Offset::E2.scaled(l))
            .ok_or_else(|| domain("special block element left the positive octant"))
    };

    let zero = Offset { a: 0, b: 0, c: 0 };
    let q_n = q_multiplier(m, n)?.as_offset();

    let mut b_zero = Vec::new();
    for l in 0..=tau + 1 {
        b_zero.push(translate(zero, l)?);
    }
    let mut b_one = Vec::new();
    for l in 0..=tau {
        b_one.push(translate(Offset::E1, l)?);
    }
    let mut c_zero = Vec::new();
    for l in 1..=tau + 1 {
        c_zero.push(translate(q_n, l)?);
    }
    let mut c_one = Vec::new();
    for l in 0..=tau + 1 {
        c_one.push(translate(q_n + Offset::E1, l)?);
    }

    let block = SpecialBlock {
        m,
        w,
        n,
        corner,
        b_zero,
        b_one,
        c_zero,
        c_one,
    };
    debug_assert!(block.b_elems().iter().all(|u| in_rprime(u, m)));
    debug_assert!(block.c_elems().iter().all(|v| in_mprime(v, m)));
    Ok(block)
}

/// The block bijection `phihat_{n, l0}: B_n -> C_n`, for `0 <= l0 <= tau + 1`.
///
/// It sends `u0_{l0}` to `v1_{l0}` and otherwise respects the `l`-indexing:
/// `u0_l -> v0_{l+1}` below `l0`, `u0_l -> v0_l` above, `u1_l -> v1_l`
/// below `l0`, and `u1_l -> v1_{l+1}` from `l0` on. All members of the
/// family share one multiplier multiset, and the restriction of `phi`
/// to `B_n` is `phihat_{n, 0}`.
pub fn phihat(m: i64, w: i64, n: i64, l0: i64) -> Result<BijectionTable> {
    let block = special_block(m, w, n)?;
    let tau = block.tau();
    if l0 < 0 || l0 > tau + 1 {
        return Err(domain(format!(
            "family index must satisfy 0 <= l0 <= tau_w + 1 = {}, got {l0}",
            tau + 1
        )));
    }
    let mut domain_list = Vec::new();
    let mut image_list = Vec::new();
    for l in 0..=tau + 1 {
        domain_list.push(*block.u0(l).expect("u0 range"));
        let image = if l < l0 {
            *block.v0(l + 1).expect("v0 range")
        } else if l == l0 {
            *block.v1(l0).expect("v1 range")
        } else {
            *block.v0(l).expect("v0 range")
        };
        image_list.push(image);
    }
    for l in 0..=tau {
        domain_list.push(*block.u1(l).expect("u1 range"));
        let image = if l < l0 {
            *block.v1(l).expect("v1 range")
        } else {
            *block.v1(l + 1).expect("v1 range")
        };
        image_list.push(image);
    }
    BijectionTable::new(m, w, domain_list, image_list)
}

/// Membership of `u` in the filtration step `H_n` of `R'_w`:
/// `a >= delta_{w,n} - 5` or `b <= 3n + 2`.
pub fn filtration_member_h(m: i64, w: i64, n: i64, u: &Monomial) -> Result<bool> {
    let wc = check_filtration_params(m, w, n)?;
    Ok(in_rprime(u, m)
        && u.weight() == w
        && (u.a >= wc.delta_n(n) - 5 || u.b <= 3 * n + 2))
}

/// Membership of `v` in the filtration step `K_n` of `M'_w`:
/// `i >= delta_{w,n} - 5` or `j <= 6n + 5`.
pub fn filtration_member_k(m: i64, w: i64, n: i64, v: &Monomial) -> Result<bool> {
    let wc = check_filtration_params(m, w, n)?;
    Ok(in_mprime(v, m)
        && v.weight_m(m) == w
        && (v.a >= wc.delta_n(n) - 5 || v.b <= 6 * n + 5))
}

fn check_filtration_params(m: i64, w: i64, n: i64) -> Result<WeightConstants> {
    if m < 2 {
        return Err(domain(format!("m >= 2 required, got {m}")));
    }
    if eta(w) == 0 {
        return Err(domain(format!(
            "filtrations are defined for w = 1, 2 mod 3, got w = {w}"
        )));
    }
    let wc = WeightConstants::new(m, w);
    if n < 0 || n > wc.n_max {
        return Err(domain(format!(
            "filtration index must satisfy 0 <= n <= n_max = {}, got {n}",
            wc.n_max
        )));
    }
    Ok(wc)
}

/// One row of the closed-form tables: a triangular monomial whose
/// multiplier has small first coordinate, with the multiplier and image.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LowAprimeRow {
    pub u: Monomial,
    pub multiplier: Multiplier,
    pub image: Monomial,
}

/// The triangular monomials of `R^tri_w` whose multiplier has
/// `a' in {0, 1}` (for `w = 2 mod 3`) or `a' in {1, 2}` (for
/// `w = 1 mod 3`; `a' = 0` never occurs there), generated from the
/// closed-form row families rather than from `phi`. Rows are sorted by
/// `u`.
pub fn low_aprime_rows(m: i64, w: i64) -> Result<Vec<LowAprimeRow>> {
    if m < 2 {
        return Err(domain(format!("m >= 2 required, got {m}")));
    }
    let wc = WeightConstants::new(m, w);
    if eta(w) == 0 {
        return Err(domain(format!(
            "low-a' tables exist only for w = 1, 2 mod 3, got w = {w}"
        )));
    }
    if wc.tau < 0 || w > 6 * m - 10 {
        return Err(domain(format!(
            "low-a' tables need the rectangular range 3m-2 <= w <= 6m-10, got w = {w}"
        )));
    }

    let e1 = Offset::E1;
    let n_max = wc.n_max;
    let c_w = wc.c_w;
    let mut rows: Vec<LowAprimeRow> = Vec::new();
    let mut push = |u: Monomial, q: Multiplier, v: Monomial| -> Result<()> {
        debug_assert_eq!(u.checked_add(q.as_offset()), Some(v));
        rows.push(LowAprimeRow {
            u,
            multiplier: q,
            image: v,
        });
        Ok(())
    };

    // the n-ranges below shrink by one at the top exactly when the
    // congruence class of w mod 6 makes the first coordinate go negative
    let full = |cond: bool| if cond { n_max } else { n_max - 1 };

    if eta(w) == 2 {
        let top14 = full(w.rem_euclid(6) == 5);
        for n in 0..=top14 {
            let d = wc.delta_n(n);
            push(
                Monomial::new(d - 3, 3 * n + 2, c_w)?,
                q_multiplier(m, n + 1)?,
                Monomial::new(d - 3, 6 * n + 5, c_w + m - 2 * n - 2)?,
            )?;
        }
        for n in 0..=n_max - 1 {
            let d = wc.delta_n(n);
            push(
                Monomial::new(d - 5, 3 * n + 3, c_w)?,
                q_multiplier(m, n + 1)?,
                Monomial::new(d - 5, 6 * n + 6, c_w + m - 2 * n - 2)?,
            )?;
        }
        for n in 0..=n_max {
            let d = wc.delta_n(n);
            let q = Multiplier::new(
                m,
                q_multiplier(m, n)?
                    .as_monomial()
                    .checked_add(e1)
                    .expect("q_n + e1 is effective"),
            )?;
            push(
                Monomial::new(d - 1, 3 * n + 1, c_w)?,
                q,
                Monomial::new(d, 6 * n + 2, c_w + m - 2 * n - 1)?,
            )?;
        }
        for n in 0..=top14 {
            let d = wc.delta_n(n);
            let q = Multiplier::new(
                m,
                q_multiplier(m, n)?
                    .as_monomial()
                    .checked_add(e1)
                    .expect("q_n + e1 is effective"),
            )?;
            push(
                Monomial::new(d - 2, 3 * n, c_w + 1)?,
                q,
                Monomial::new(d - 1, 6 * n + 1, c_w + m - 2 * n)?,
            )?;
        }
    } else {
        let top67 = full(w.rem_euclid(6) == 4);
        for n in 0..=n_max {
            let d = wc.delta_n(n);
            let q = Multiplier::new(
                m,
                q_multiplier(m, n)?
                    .as_monomial()
                    .checked_add(e1)
                    .expect("q_n + e1 is effective"),
            )?;
            push(
                Monomial::new(d - 1, 3 * n, c_w)?,
                q,
                Monomial::new(d, 6 * n + 1, c_w + m - 2 * n - 1)?,
            )?;
        }
        for n in 0..=top67 {
            let d = wc.delta_n(n);
            let q = Multiplier::new(
                m,
                q_multiplier(m, n)?
                    .as_monomial()
                    .checked_add(e1)
                    .expect("q_n + e1 is effective"),
            )?;
            push(
                Monomial::new(d - 3, 3 * n + 1, c_w)?,
                q,
                Monomial::new(d - 2, 6 * n + 2, c_w + m - 2 * n - 1)?,
            )?;
        }
        for n in 0..=top67 {
            let d = wc.delta_n(n);
            let q = Multiplier::new(
                m,
                q_multiplier(m, n)?
                    .as_monomial()
                    .checked_add(e1)
                    .and_then(|x| x.checked_add(e1))
                    .expect("q_n + 2*e1 is effective"),
            )?;
            push(
                Monomial::new(d - 5, 3 * n + 2, c_w)?,
                q,
                Monomial::new(d - 3, 6 * n + 4, c_w + m - 2 * n - 2)?,
            )?;
        }
        for n in 0..=n_max - 1 {
            let d = wc.delta_n(n);
            let q = Multiplier::new(
                m,
                q_multiplier(m, n)?
                    .as_monomial()
                    .checked_add(e1)
                    .and_then(|x| x.checked_add(e1))
                    .expect("q_n + 2*e1 is effective"),
            )?;
            push(
                Monomial::new(d - 6, 3 * n + 1, c_w + 1)?,
                q,
                Monomial::new(d - 4, 6 * n + 3, c_w + m - 2 * n - 1)?,
            )?;
        }
    }
    rows.sort_by_key(|row| row.u);
    Ok(rows)
}

/// The index of the special block containing `u`, when there is one.
/// Corner monomials are block members; everything else in a block lies in
/// the rectangular region.
pub fn block_index_of(m: i64, w: i64, u: &Monomial) -> Result<Option<i64>> {
    if eta(w) == 0 {
        return Ok(None);
    }
    let wc = WeightConstants::new(m, w);
    if wc.tau < 0 || w > 6 * m - 10 {
        return Ok(None);
    }
    if !in_rprime(u, m) || u.weight() != w {
        return Ok(None);
    }
    for n in 0..=wc.n_max {
        let d = wc.delta_n(n);
        if (u.a == d || u.a == d - 1) && u.b >= 3 * n - 1 + eta(w) {
            let block = special_block(m, w, n)?;
            return Ok(block.b_elems().contains(u).then_some(n));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bijection::{phi, phi_inverse};
    use crate::monomial::{enumerate_basis, Side};
    use crate::monomial::{classify_region_m, classify_region_r, Region};
    use crate::verify::{multiset_of, perm_sign, MultiplierMultiset};

    fn mono(a: i64, b: i64, c: i64) -> Monomial {
        Monomial::new(a, b, c).unwrap()
    }

    fn valid_block_weights(m: i64) -> impl Iterator<Item = i64> {
        (3 * m - 2..=6 * m - 10).filter(|w| eta(*w) != 0)
    }

    #[test]
    fn block_m3_w8() {
        let block = special_block(3, 8, 0).unwrap();
        assert_eq!(block.corner, mono(0, 1, 2));
        let mut b = block.b_elems();
        b.sort();
        assert_eq!(b, vec![mono(0, 1, 2), mono(0, 4, 0), mono(1, 2, 1)]);
        let mut c = block.c_elems();
        c.sort();
        assert_eq!(c, vec![mono(0, 4, 3), mono(1, 2, 4), mono(1, 5, 2)]);
        assert_eq!(block.size(), 3);
    }

    #[test]
    fn block_multiplier_multiset() {
        let block = special_block(3, 8, 0).unwrap();
        let tau = block.tau();
        let mut expected = MultiplierMultiset::new(3);
        expected.insert(block.q_corner().unwrap());
        expected.insert_n(block.q_low().unwrap(), (tau + 1) as usize);
        expected.insert_n(block.q_high().unwrap(), (tau + 1) as usize);
        let on_block = BijectionTable::new(
            3,
            8,
            block.b_elems(),
            block
                .b_elems()
                .iter()
                .map(|u| phi(3, u).unwrap())
                .collect(),
        )
        .unwrap();
        assert_eq!(multiset_of(&on_block).unwrap(), expected);
    }

    #[test]
    fn block_sizes_and_membership() {
        for m in 2..=8 {
            for w in valid_block_weights(m) {
                let wc = WeightConstants::new(m, w);
                for n in 0..=wc.n_max {
                    let block = special_block(m, w, n).unwrap();
                    assert_eq!(block.size() as i64, 2 * wc.tau + 3, "m={m} w={w} n={n}");
                    assert_eq!(block.c_elems().len(), block.size());
                    // set-level characterization inside the slice
                    let b_set = block.b_elems();
                    for u in enumerate_basis(m, w, Side::Rprime).unwrap() {
                        let member = (u.a == wc.delta_n(n) || u.a == wc.delta_n(n) - 1)
                            && u.b >= 3 * n - 1 + eta(w);
                        assert_eq!(b_set.contains(&u), member, "m={m} w={w} n={n} u={u:?}");
                    }
                    let c_set = block.c_elems();
                    for v in enumerate_basis(m, w, Side::Mprime).unwrap() {
                        let member = (v.a == wc.delta_n(n) || v.a == wc.delta_n(n) - 1)
                            && v.b >= 6 * n + eta(w);
                        assert_eq!(c_set.contains(&v), member, "m={m} w={w} n={n} v={v:?}");
                    }
                    // the corner is the unique triangular member
                    for u in &b_set {
                        let region = classify_region_r(u, m).unwrap();
                        assert_eq!(region == Region::Triangular, *u == block.corner);
                    }
                }
            }
        }
    }

    #[test]
    fn phi_restricted_to_block_is_phihat_zero() {
        for m in 2..=6 {
            for w in valid_block_weights(m) {
                let n_max = WeightConstants::new(m, w).n_max;
                for n in 0..=n_max {
                    let table = phihat(m, w, n, 0).unwrap();
                    for (u, v) in table.pairs() {
                        assert_eq!(phi(m, u).unwrap(), *v, "m={m} w={w} n={n}");
                    }
                    let block = special_block(m, w, n).unwrap();
                    let mut image: Vec<Monomial> = table.image().to_vec();
                    image.sort();
                    let mut c = block.c_elems();
                    c.sort();
                    assert_eq!(image, c, "phi(B_n) = C_n");
                }
            }
        }
    }

    #[test]
    fn phihat_family_shares_multiset_and_parity() {
        for m in 2..=6 {
            for w in valid_block_weights(m) {
                let wc = WeightConstants::new(m, w);
                for n in 0..=wc.n_max {
                    let base = phihat(m, w, n, 0).unwrap();
                    let base_ms = multiset_of(&base).unwrap();
                    let c = base.image().to_vec();
                    let index_of = |v: &Monomial| c.iter().position(|x| x == v).unwrap();
                    let base_perm: Vec<usize> =
                        base.image().iter().map(index_of).collect();
                    for l0 in 0..=wc.tau + 1 {
                        let t = phihat(m, w, n, l0).unwrap();
                        assert_eq!(multiset_of(&t).unwrap(), base_ms);
                        let perm: Vec<usize> = t.image().iter().map(index_of).collect();
                        assert_eq!(
                            perm_sign(&perm),
                            perm_sign(&base_perm),
                            "m={m} w={w} n={n} l0={l0}"
                        );
                    }
                    assert!(phihat(m, w, n, wc.tau + 2).is_err());
                }
            }
        }
    }

    #[test]
    fn phihat_example_l0_one() {
        let t = phihat(3, 8, 0, 1).unwrap();
        assert_eq!(t.apply(&mono(0, 1, 2)), Some(mono(0, 4, 3)));
        assert_eq!(t.apply(&mono(0, 4, 0)), Some(mono(1, 5, 2)));
        assert_eq!(t.apply(&mono(1, 2, 1)), Some(mono(1, 2, 4)));
    }

    #[test]
    fn successive_family_members_differ_by_three_cycle() {
        for m in 3..=6 {
            for w in valid_block_weights(m) {
                let wc = WeightConstants::new(m, w);
                for n in 0..=wc.n_max {
                    for l0 in 0..=wc.tau {
                        let s = phihat(m, w, n, l0).unwrap();
                        let t = phihat(m, w, n, l0 + 1).unwrap();
                        // count domain monomials where the two maps differ
                        let moved = s
                            .domain()
                            .iter()
                            .filter(|u| s.apply(u) != t.apply(u))
                            .count();
                        assert_eq!(moved, 3, "m={m} w={w} n={n} l0={l0}");
                    }
                }
            }
        }
    }

    #[test]
    fn filtrations_increase_and_exhaust() {
        for m in 2..=6 {
            for w in valid_block_weights(m) {
                let wc = WeightConstants::new(m, w);
                let slice = enumerate_basis(m, w, Side::Rprime).unwrap();
                let mut previous: Vec<Monomial> = Vec::new();
                for n in 0..=wc.n_max {
                    let current: Vec<Monomial> = slice
                        .iter()
                        .copied()
                        .filter(|u| filtration_member_h(m, w, n, u).unwrap())
                        .collect();
                    for u in &previous {
                        assert!(current.contains(u), "H_n increases with n");
                    }
                    previous = current;
                }
                assert_eq!(previous.len(), slice.len(), "H_nmax = R'_w");
            }
        }
    }

    #[test]
    fn phi_maps_h_onto_k() {
        for m in 2..=6 {
            for w in valid_block_weights(m) {
                let wc = WeightConstants::new(m, w);
                for n in 0..=wc.n_max {
                    let h: Vec<Monomial> = enumerate_basis(m, w, Side::Rprime)
                        .unwrap()
                        .into_iter()
                        .filter(|u| filtration_member_h(m, w, n, u).unwrap())
                        .collect();
                    let mut images: Vec<Monomial> =
                        h.iter().map(|u| phi(m, u).unwrap()).collect();
                    images.sort();
                    let mut k: Vec<Monomial> = enumerate_basis(m, w, Side::Mprime)
                        .unwrap()
                        .into_iter()
                        .filter(|v| filtration_member_k(m, w, n, v).unwrap())
                        .collect();
                    k.sort();
                    assert_eq!(images, k, "m={m} w={w} n={n}");
                }
            }
        }
    }

    #[test]
    fn filtration_region_intersections() {
        // the four items describing H_n and K_n against the region split
        for m in 2..=6 {
            for w in valid_block_weights(m) {
                let wc = WeightConstants::new(m, w);
                for n in 0..=wc.n_max {
                    let d = wc.delta_n(n);
                    let exceptional_u = Monomial::new(d - 5, 3 * n + 3, wc.c_w).ok();
                    for u in enumerate_basis(m, w, Side::Rprime).unwrap() {
                        let member = filtration_member_h(m, w, n, &u).unwrap();
                        match classify_region_r(&u, m).unwrap() {
                            Region::Rectangular => {
                                assert_eq!(member, u.a >= d - 5, "m={m} w={w} n={n} u={u:?}")
                            }
                            Region::Triangular => {
                                let mut expected = u.b <= 3 * n + 2;
                                if eta(w) == 2 && Some(u) == exceptional_u {
                                    expected = true;
                                }
                                assert_eq!(member, expected, "m={m} w={w} n={n} u={u:?}");
                            }
                        }
                    }
                    for v in enumerate_basis(m, w, Side::Mprime).unwrap() {
                        let member = filtration_member_k(m, w, n, &v).unwrap();
                        match classify_region_m(&v, m).unwrap() {
                            Region::Rectangular => {
                                assert_eq!(member, v.a >= d - 5, "m={m} w={w} n={n} v={v:?}")
                            }
                            Region::Triangular => {
                                let mut expected = v.b <= 6 * n + 5;
                                if eta(w) == 2 {
                                    if let Some(exceptional) = exceptional_u {
                                        if phi(m, &exceptional).ok() == Some(v) {
                                            expected = true;
                                        }
                                    }
                                }
                                assert_eq!(member, expected, "m={m} w={w} n={n} v={v:?}");
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn low_aprime_rows_match_phi() {
        for m in 2..=8 {
            for w in valid_block_weights(m) {
                let rows = low_aprime_rows(m, w).unwrap();
                // each row is consistent with phi
                for row in &rows {
                    assert_eq!(
                        phi(m, &row.u).unwrap(),
                        row.image,
                        "m={m} w={w} u={:?}",
                        row.u
                    );
                    assert_eq!(
                        row.u.checked_add(row.multiplier.as_offset()),
                        Some(row.image)
                    );
                }
                // and the rows are exactly the triangular monomials with
                // small a'
                let limit = if eta(w) == 2 { 1 } else { 2 };
                let mut expected: Vec<Monomial> = Vec::new();
                for u in enumerate_basis(m, w, Side::Rprime).unwrap() {
                    if classify_region_r(&u, m).unwrap() != Region::Triangular {
                        continue;
                    }
                    let aprime = phi(m, &u).unwrap().sub(&u).a;
                    if eta(w) == 1 {
                        assert_ne!(aprime, 0, "no a' = 0 for w = 1 mod 3");
                    }
                    if aprime <= limit {
                        expected.push(u);
                    }
                }
                expected.sort();
                let got: Vec<Monomial> = rows.iter().map(|r| r.u).collect();
                assert_eq!(got, expected, "m={m} w={w}");
            }
        }
    }

    #[test]
    fn corner_rows_use_corner_multiplier() {
        // u_tri_{3,n} (w = 2 mod 3) and u_tri_{5,n} (w = 1 mod 3) are the
        // corner monomials and carry q_n + e1
        for m in 3..=6 {
            for w in valid_block_weights(m) {
                let wc = WeightConstants::new(m, w);
                let rows = low_aprime_rows(m, w).unwrap();
                for n in 0..=wc.n_max {
                    let block = special_block(m, w, n).unwrap();
                    let row = rows
                        .iter()
                        .find(|r| r.u == block.corner)
                        .expect("corner appears in the table");
                    assert_eq!(row.multiplier, block.q_corner().unwrap());
                }
            }
        }
    }

    #[test]
    fn q_n_plus_2e1_rows_only_for_w_1_mod_3() {
        for m in 3..=8 {
            for w in valid_block_weights(m) {
                let rows = low_aprime_rows(m, w).unwrap();
                let has_two = rows.iter().any(|r| r.multiplier.as_monomial().a == 2);
                if eta(w) == 2 {
                    assert!(!has_two);
                }
            }
        }
    }

    #[test]
    fn block_index_lookup() {
        assert_eq!(block_index_of(3, 8, &mono(0, 1, 2)).unwrap(), Some(0));
        assert_eq!(block_index_of(3, 8, &mono(0, 4, 0)).unwrap(), Some(0));
        // weight-9 slice has no blocks
        for u in enumerate_basis(3, 9, Side::Rprime).unwrap() {
            assert_eq!(block_index_of(3, 9, &u).unwrap(), None);
        }
    }

    #[test]
    fn phihat_images_invert_under_phi_inverse_only_at_l0_zero() {
        // sanity: for l0 > 0 the block bijection genuinely differs from phi
        let t = phihat(3, 8, 0, 1).unwrap();
        let differs = t
            .pairs()
            .filter(|(u, v)| phi_inverse(3, v).unwrap() != **u)
            .count();
        assert!(differs > 0);
    }
}
