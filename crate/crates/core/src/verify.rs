//! Brute-force oracles, independent of the closed-form bijection.
//!
//! The central primitive enumerates every bijection from a list of domain
//! monomials onto a list of image monomials whose multiplier multiset
//! (the multiset of quotients `image/preimage`) equals a prescribed
//! target, recording for each one the sign of the permutation it induces.
//! Everything else — uniqueness, non-cancellation, block families — is a
//! query against this enumeration.
//!
//! Enumeration is exhaustive backtracking over image candidates grouped
//! by multiplier key, with a hard node cap that turns infeasible
//! instances into explicit resource errors.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::bijection::{phi, Multiplier};
use crate::blocks::{phihat, special_block};
use crate::error::{domain as domain_error, resource, Result};
use crate::monomial::{classify_region_m, enumerate_basis, Monomial, Region, Side};

/// Default backtracking node cap.
pub const DEFAULT_NODE_CAP: u64 = 10_000_000;

/// A bijection between aligned lists of `R'_w` and `M'_w` monomials.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BijectionTable {
    pub m: i64,
    pub w: i64,
    domain: Vec<Monomial>,
    image: Vec<Monomial>,
}

impl BijectionTable {
    /// Validates: equal lengths, rowwise weight match, distinct rows.
    pub fn new(m: i64, w: i64, domain: Vec<Monomial>, image: Vec<Monomial>) -> Result<Self> {
        if domain.len() != image.len() {
            return Err(domain_err_len(domain.len(), image.len()));
        }
        for (u, v) in domain.iter().zip(&image) {
            if u.weight() != w {
                return Err(domain_error(format!(
                    "domain monomial {:?} has weight {}, expected {w}",
                    u.as_triple(),
                    u.weight()
                )));
            }
            if v.weight_m(m) != w {
                return Err(domain_error(format!(
                    "image monomial {:?} has M-weight {}, expected {w}",
                    v.as_triple(),
                    v.weight_m(m)
                )));
            }
        }
        let mut seen = domain.clone();
        seen.sort();
        seen.dedup();
        if seen.len() != domain.len() {
            return Err(domain_error("domain entries are not pairwise distinct"));
        }
        let mut seen = image.clone();
        seen.sort();
        seen.dedup();
        if seen.len() != image.len() {
            return Err(domain_error("image entries are not pairwise distinct"));
        }
        Ok(BijectionTable {
            m,
            w,
            domain,
            image,
        })
    }

    pub fn len(&self) -> usize {
        self.domain.len()
    }

    pub fn is_empty(&self) -> bool {
        self.domain.is_empty()
    }

    pub fn domain(&self) -> &[Monomial] {
        &self.domain
    }

    pub fn image(&self) -> &[Monomial] {
        &self.image
    }

    pub fn pairs(&self) -> impl Iterator<Item = (&Monomial, &Monomial)> {
        self.domain.iter().zip(self.image.iter())
    }

    /// Image of a domain monomial, if present.
    pub fn apply(&self, u: &Monomial) -> Option<Monomial> {
        self.domain.iter().position(|x| x == u).map(|i| self.image[i])
    }
}

fn domain_err_len(d: usize, i: usize) -> crate::error::Error {
    domain_error(format!("domain has {d} entries but image has {i}"))
}

/// The closed-form bijection `phi` on the slice `R'_w`, domain in
/// lexicographic order.
pub fn phi_table(m: i64, w: i64) -> Result<BijectionTable> {
    let dom = enumerate_basis(m, w, Side::Rprime)?;
    let img = dom.iter().map(|u| phi(m, u)).collect::<Result<Vec<_>>>()?;
    BijectionTable::new(m, w, dom, img)
}

/// Divisibility: every image is divisible by its preimage.
pub fn check_divisible(table: &BijectionTable) -> bool {
    table.pairs().all(|(u, v)| u.divides(v))
}

/// A multiset of multipliers with multiplicities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiplierMultiset {
    pub m: i64,
    counts: BTreeMap<Multiplier, usize>,
}

impl MultiplierMultiset {
    pub fn new(m: i64) -> Self {
        MultiplierMultiset {
            m,
            counts: BTreeMap::new(),
        }
    }

    pub fn insert(&mut self, q: Multiplier) {
        *self.counts.entry(q).or_insert(0) += 1;
    }

    pub fn insert_n(&mut self, q: Multiplier, n: usize) {
        if n > 0 {
            *self.counts.entry(q).or_insert(0) += n;
        }
    }

    pub fn total(&self) -> usize {
        self.counts.values().sum()
    }

    pub fn count(&self, q: &Multiplier) -> usize {
        self.counts.get(q).copied().unwrap_or(0)
    }

    pub fn entries(&self) -> impl Iterator<Item = (&Multiplier, &usize)> {
        self.counts.iter()
    }

    /// Canonical encoding, sorted by multiplier.
    pub fn to_sorted_vec(&self) -> Vec<(Multiplier, usize)> {
        self.counts.iter().map(|(q, n)| (*q, *n)).collect()
    }

    /// Wire form for reports.
    pub fn to_triples(&self) -> Vec<([i64; 3], usize)> {
        self.counts
            .iter()
            .map(|(q, n)| (q.as_triple(), *n))
            .collect()
    }
}

/// Multiplier multiset of a divisible table.
pub fn multiset_of(table: &BijectionTable) -> Result<MultiplierMultiset> {
    let mut out = MultiplierMultiset::new(table.m);
    for (u, v) in table.pairs() {
        out.insert(Multiplier::from_quotient(table.m, v, u)?);
    }
    Ok(out)
}

/// Sign of the permutation `perm` (a bijection `i -> perm[i]`).
pub fn perm_sign(perm: &[usize]) -> i64 {
    let mut inversions = 0usize;
    for i in 0..perm.len() {
        for j in i + 1..perm.len() {
            if perm[i] > perm[j] {
                inversions += 1;
            }
        }
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Core backtracking enumeration: all assignments `domain[i] -> image[a_i]`
/// such that the multiset of quotients equals `target`. Candidates per
/// domain element are grouped by multiplier key, and image indices are
/// explored in increasing order, so the output order is deterministic.
fn enumerate_assignments(
    m: i64,
    domain: &[Monomial],
    image: &[Monomial],
    target: &MultiplierMultiset,
    cap: u64,
) -> Result<(Vec<Vec<usize>>, u64)> {
    let n = domain.len();
    if image.len() != n {
        return Err(domain_err_len(n, image.len()));
    }
    if n > 128 {
        return Err(resource(format!("instance size {n} exceeds the 128-slot mask")));
    }
    if target.total() != n {
        return Ok((Vec::new(), 0));
    }
    let keys: Vec<Multiplier> = target.counts.keys().copied().collect();
    let key_index: BTreeMap<Multiplier, usize> = keys
        .iter()
        .enumerate()
        .map(|(idx, q)| (*q, idx))
        .collect();
    let remaining: Vec<usize> = keys.iter().map(|q| target.count(q)).collect();

    // candidates[i]: (image index, key index), in increasing image order
    let mut candidates: Vec<Vec<(usize, usize)>> = Vec::with_capacity(n);
    for u in domain {
        let mut row = Vec::new();
        for (vi, v) in image.iter().enumerate() {
            if !u.divides(v) {
                continue;
            }
            let q = Multiplier::from_quotient(m, v, u)?;
            if let Some(&ki) = key_index.get(&q) {
                row.push((vi, ki));
            }
        }
        row.sort();
        candidates.push(row);
    }

    // order domain positions by ascending candidate count, ties by index;
    // results are re-sorted afterwards so the output stays canonical
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&i| (candidates[i].len(), i));

    struct Search {
        order: Vec<usize>,
        candidates: Vec<Vec<(usize, usize)>>,
        remaining: Vec<usize>,
        used: u128,
        assignment: Vec<usize>,
        results: Vec<Vec<usize>>,
        nodes: u64,
        cap: u64,
    }

    impl Search {
        fn dfs(&mut self, depth: usize) -> Result<()> {
            if depth == self.order.len() {
                self.results.push(self.assignment.clone());
                return Ok(());
            }
            let i = self.order[depth];
            for ci in 0..self.candidates[i].len() {
                let (vi, ki) = self.candidates[i][ci];
                if self.remaining[ki] == 0 || self.used & (1u128 << vi) != 0 {
                    continue;
                }
                self.nodes += 1;
                if self.nodes > self.cap {
                    return Err(resource(format!(
                        "backtracking exceeded cap of {} nodes",
                        self.cap
                    )));
                }
                self.remaining[ki] -= 1;
                self.used |= 1u128 << vi;
                self.assignment[i] = vi;
                self.dfs(depth + 1)?;
                self.assignment[i] = usize::MAX;
                self.used &= !(1u128 << vi);
                self.remaining[ki] += 1;
            }
            Ok(())
        }
    }

    let mut search = Search {
        order,
        candidates,
        remaining,
        used: 0,
        assignment: vec![usize::MAX; n],
        results: Vec::new(),
        nodes: 0,
        cap,
    };
    search.dfs(0)?;
    let mut results = search.results;
    results.sort();
    Ok((results, search.nodes))
}

/// Every bijection `R'_w -> M'_w` whose multiplier multiset equals
/// `target`, paired with the sign of `candidate^{-1} . phi` (the parity
/// relative to the closed-form bijection).
pub fn enumerate_matching_bijections(
    m: i64,
    w: i64,
    target: &MultiplierMultiset,
    cap: u64,
) -> Result<Vec<(BijectionTable, i64)>> {
    let dom = enumerate_basis(m, w, Side::Rprime)?;
    let img = enumerate_basis(m, w, Side::Mprime)?;
    let reference = phi_table(m, w)?;
    let ref_assignment: Vec<usize> = reference
        .image()
        .iter()
        .map(|v| img.binary_search(v).expect("phi image lies in M'_w"))
        .collect();
    let ref_sign = perm_sign(&ref_assignment);
    let (assignments, _) = enumerate_assignments(m, &dom, &img, target, cap)?;
    assignments
        .into_iter()
        .map(|assignment| {
            let sign = perm_sign(&assignment) * ref_sign;
            let image = assignment.iter().map(|&vi| img[vi]).collect();
            Ok((BijectionTable::new(m, w, dom.clone(), image)?, sign))
        })
        .collect()
}

/// Count and signed count of bijections matching a target multiset; the
/// sign convention is the permutation sign relative to the lexicographic
/// basis orders, so it agrees with determinant coefficients.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SignedCount {
    pub count: usize,
    pub signed: i64,
    pub parity_uniform: bool,
}

fn signed_count_for(
    m: i64,
    w: i64,
    target: &MultiplierMultiset,
    cap: u64,
) -> Result<SignedCount> {
    let dom = enumerate_basis(m, w, Side::Rprime)?;
    let img = enumerate_basis(m, w, Side::Mprime)?;
    let (assignments, _) = enumerate_assignments(m, &dom, &img, target, cap)?;
    let mut signed = 0i64;
    let mut pos = 0usize;
    for a in &assignments {
        if perm_sign(a) > 0 {
            pos += 1;
        }
    }
    let count = assignments.len();
    signed += pos as i64 - (count - pos) as i64;
    Ok(SignedCount {
        count,
        signed,
        parity_uniform: pos == 0 || pos == count,
    })
}

/// Uniqueness of `phi` on the slice: no other divisible bijection shares
/// its multiplier multiset.
pub fn check_uniqueness(m: i64, w: i64, cap: u64) -> Result<bool> {
    let target = multiset_of(&phi_table(m, w)?)?;
    Ok(signed_count_for(m, w, &target, cap)?.count == 1)
}

/// Non-cancellation data for the multiset of `phi` on the slice.
pub fn check_noncancellation(m: i64, w: i64, cap: u64) -> Result<SignedCount> {
    let target = multiset_of(&phi_table(m, w)?)?;
    signed_count_for(m, w, &target, cap)
}

/// Census of all divisibility-respecting bijections on the slice, grouped
/// by multiplier multiset.
pub fn divisible_bijection_census(
    m: i64,
    w: i64,
    cap: u64,
) -> Result<BTreeMap<Vec<(Multiplier, usize)>, usize>> {
    let dom = enumerate_basis(m, w, Side::Rprime)?;
    let img = enumerate_basis(m, w, Side::Mprime)?;
    let n = dom.len();
    if n > 128 {
        return Err(resource(format!("instance size {n} exceeds the 128-slot mask")));
    }
    let mut candidates: Vec<Vec<usize>> = Vec::with_capacity(n);
    for u in &dom {
        candidates.push(
            img.iter()
                .enumerate()
                .filter(|(_, v)| u.divides(v))
                .map(|(vi, _)| vi)
                .collect(),
        );
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&i| (candidates[i].len(), i));

    struct Census<'a> {
        m: i64,
        dom: &'a [Monomial],
        img: &'a [Monomial],
        order: Vec<usize>,
        candidates: Vec<Vec<usize>>,
        used: u128,
        assignment: Vec<usize>,
        groups: BTreeMap<Vec<(Multiplier, usize)>, usize>,
        nodes: u64,
        cap: u64,
    }

    impl Census<'_> {
        fn dfs(&mut self, depth: usize) -> Result<()> {
            if depth == self.order.len() {
                let mut ms = MultiplierMultiset::new(self.m);
                for (i, &vi) in self.assignment.iter().enumerate() {
                    ms.insert(Multiplier::from_quotient(self.m, &self.img[vi], &self.dom[i])?);
                }
                *self.groups.entry(ms.to_sorted_vec()).or_insert(0) += 1;
                return Ok(());
            }
            let i = self.order[depth];
            for ci in 0..self.candidates[i].len() {
                let vi = self.candidates[i][ci];
                if self.used & (1u128 << vi) != 0 {
                    continue;
                }
                self.nodes += 1;
                if self.nodes > self.cap {
                    return Err(resource(format!(
                        "backtracking exceeded cap of {} nodes",
                        self.cap
                    )));
                }
                self.used |= 1u128 << vi;
                self.assignment[i] = vi;
                self.dfs(depth + 1)?;
                self.assignment[i] = usize::MAX;
                self.used &= !(1u128 << vi);
            }
            Ok(())
        }
    }

    let mut census = Census {
        m,
        dom: &dom,
        img: &img,
        order,
        candidates,
        used: 0,
        assignment: vec![usize::MAX; n],
        groups: BTreeMap::new(),
        nodes: 0,
        cap,
    };
    census.dfs(0)?;
    Ok(census.groups)
}

/// Whether some divisible bijection on the slice satisfies uniqueness,
/// i.e. some multiplier multiset is realized by exactly one bijection.
pub fn divisible_unique_exists(m: i64, w: i64, cap: u64) -> Result<bool> {
    Ok(divisible_bijection_census(m, w, cap)?
        .values()
        .any(|&count| count == 1))
}

/// Checks the family of block bijections: the bijections `B_n -> C_n`
/// realizing the block multiset `{q_n + e1, q_n x (tau+1), q_{n+1} x (tau+1)}`
/// are exactly the `tau_w + 2` shifted bijections, pairwise of equal parity.
pub fn block_family_check(m: i64, w: i64, n: i64, cap: u64) -> Result<bool> {
    let block = special_block(m, w, n)?;
    let tau = block.tau();
    let dom = block.b_elems();
    let img = block.c_elems();

    let mut target = MultiplierMultiset::new(m);
    target.insert(block.q_corner()?);
    target.insert_n(block.q_low()?, (tau + 1) as usize);
    target.insert_n(block.q_high()?, (tau + 1) as usize);

    let (assignments, _) = enumerate_assignments(m, &dom, &img, &target, cap)?;

    // expected: the translated family, as assignments into img
    let mut expected = Vec::new();
    for l0 in 0..=tau + 1 {
        let table = phihat(m, w, n, l0)?;
        let assignment: Vec<usize> = dom
            .iter()
            .map(|u| {
                let v = table.apply(u).expect("family covers the block");
                img.iter().position(|x| *x == v).expect("image in C_n")
            })
            .collect();
        expected.push(assignment);
    }
    expected.sort();
    if assignments != expected {
        return Ok(false);
    }
    let signs: Vec<i64> = assignments.iter().map(|a| perm_sign(a)).collect();
    Ok(signs.windows(2).all(|s| s[0] == s[1]))
}

/// `(nu_plus, nu_minus)`: counts of monomials of the triangular region
/// `M^tri_w` with `floor(j/2) = r` split by the parity of `j`.
pub fn nu_counts(m: i64, w: i64, r: i64) -> Result<(usize, usize)> {
    let mut plus = 0;
    let mut minus = 0;
    for v in enumerate_basis(m, w, Side::Mprime)? {
        if classify_region_m(&v, m)? != Region::Triangular {
            continue;
        }
        if v.b == 2 * r {
            plus += 1;
        } else if v.b == 2 * r + 1 {
            minus += 1;
        }
    }
    Ok((plus, minus))
}

/// Serializable per-slice verification report.
#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub m: i64,
    pub w: i64,
    pub mode: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub multiset: Option<Vec<([i64; 3], usize)>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub count: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub signed: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub parity_uniform: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}
