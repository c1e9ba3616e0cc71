//! The matrices `A_w` of the multiplication maps, exact symbolic
//! determinants at small sizes, and randomized modular certificates.
//!
//! Rows are indexed by the `M`-side basis of a weight slice, columns by
//! the `R`-side basis, both in lexicographic order; the entry at `(v, u)`
//! is the coefficient of the quotient monomial `v/u` when `u` divides `v`
//! and zero otherwise. The reduced variant uses `R'_w` and `M'_w`, the
//! full variant `R_w` and `M_{w+3m}`.
//!
//! Symbolic entries share one variable per distinct quotient monomial, so
//! repeated entries are equal as polynomials; this is what makes the
//! determinant expansion comparable with bijection counts: the
//! coefficient of the monomial determined by a multiplier multiset equals
//! the signed number of divisible bijections realizing that multiset.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::bijection::Multiplier;
use crate::error::{domain, resource, Result};
use crate::fp::{det_mod, rank_mod, SplitMix64};
use crate::monomial::{enumerate_basis, Monomial, Side};
use crate::poly::{default_names, MultiPoly};
use crate::verify::{multiset_of, phi_table};

/// A coefficient assignment for a weight-`3m` form over a prime field.
/// Monomials absent from the map have coefficient zero.
#[derive(Debug, Clone)]
pub struct FormCoeffs {
    pub m: i64,
    pub prime: u64,
    coeffs: BTreeMap<Monomial, u64>,
}

impl FormCoeffs {
    pub fn zero(m: i64, prime: u64) -> Result<Self> {
        if m < 2 {
            return Err(domain(format!("m >= 2 required, got {m}")));
        }
        if prime < 2 {
            return Err(domain(format!("prime must be at least 2, got {prime}")));
        }
        Ok(FormCoeffs {
            m,
            prime,
            coeffs: BTreeMap::new(),
        })
    }

    /// All monomials of weight `3m`, the support of a generic form.
    pub fn support_monomials(m: i64) -> Vec<Monomial> {
        let mut out = Vec::new();
        for a in 0..=3 * m {
            for b in 0..=(3 * m - a) / 2 {
                let rest = 3 * m - a - 2 * b;
                if rest % 3 == 0 {
                    out.push(Monomial {
                        a,
                        b,
                        c: rest / 3,
                    });
                }
            }
        }
        out
    }

    /// Uniform random coefficients for every weight-`3m` monomial, with
    /// the coefficient of `z^m` forced nonzero. Deterministic in `seed`.
    pub fn random(m: i64, prime: u64, seed: u64) -> Result<Self> {
        let mut out = FormCoeffs::zero(m, prime)?;
        let mut rng = SplitMix64::new(seed);
        for mono in Self::support_monomials(m) {
            out.coeffs.insert(mono, rng.below(prime));
        }
        let z_m = Monomial { a: 0, b: 0, c: m };
        if out.get(&z_m) == 0 {
            let value = rng.nonzero_below(prime);
            out.coeffs.insert(z_m, value);
        }
        Ok(out)
    }

    /// The form `g = z^m` alone.
    pub fn z_m_only(m: i64, prime: u64) -> Result<Self> {
        let mut out = FormCoeffs::zero(m, prime)?;
        out.set(Monomial { a: 0, b: 0, c: m }, 1)?;
        Ok(out)
    }

    pub fn set(&mut self, mono: Monomial, value: u64) -> Result<()> {
        if mono.weight() != 3 * self.m {
            return Err(domain(format!(
                "coefficient keys must have weight 3m = {}, got {}",
                3 * self.m,
                mono.weight()
            )));
        }
        self.coeffs.insert(mono, value % self.prime);
        Ok(())
    }

    pub fn get(&self, mono: &Monomial) -> u64 {
        self.coeffs.get(mono).copied().unwrap_or(0)
    }

    pub fn z_m_coeff(&self) -> u64 {
        self.get(&Monomial {
            a: 0,
            b: 0,
            c: self.m,
        })
    }

    pub fn entries(&self) -> impl Iterator<Item = (&Monomial, &u64)> {
        self.coeffs.iter()
    }
}

fn bases_for(m: i64, w: i64, reduced: bool) -> Result<(Vec<Monomial>, Vec<Monomial>)> {
    if w < 0 {
        return Err(domain(format!("weight must be non-negative, got {w}")));
    }
    let (rows, cols) = if reduced {
        (
            enumerate_basis(m, w, Side::Mprime)?,
            enumerate_basis(m, w, Side::Rprime)?,
        )
    } else {
        (
            enumerate_basis(m, w, Side::M)?,
            enumerate_basis(m, w, Side::R)?,
        )
    };
    if rows.len() != cols.len() {
        return Err(domain(format!(
            "slice (m={m}, w={w}) is not square: {} rows, {} columns",
            rows.len(),
            cols.len()
        )));
    }
    Ok((rows, cols))
}

/// The matrix `A_w` with symbolic entries: one variable per distinct
/// quotient monomial appearing in any entry.
#[derive(Debug, Clone)]
pub struct SymbolicMatrix {
    pub m: i64,
    pub w: i64,
    pub reduced: bool,
    pub rows: Vec<Monomial>,
    pub cols: Vec<Monomial>,
    /// Row-major; `Some(var)` is an index into `vars`.
    pub entries: Vec<Option<usize>>,
    /// Distinct entry multipliers, sorted; index = variable id.
    pub vars: Vec<Multiplier>,
}

impl SymbolicMatrix {
    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn entry(&self, row: usize, col: usize) -> Option<usize> {
        self.entries[row * self.cols.len() + col]
    }

    /// Names for the variables: `a`, `b`, `c`, ... in sorted multiplier
    /// order.
    pub fn var_names(&self) -> Vec<String> {
        default_names(self.vars.len())
    }
}

/// Build the symbolic `A_w`.
pub fn build_matrix_symbolic(m: i64, w: i64, reduced: bool) -> Result<SymbolicMatrix> {
    let (rows, cols) = bases_for(m, w, reduced)?;
    let mut quotients: Vec<Multiplier> = Vec::new();
    for v in &rows {
        for u in &cols {
            if u.divides(v) {
                quotients.push(Multiplier::from_quotient(m, v, u)?);
            }
        }
    }
    quotients.sort();
    quotients.dedup();
    let vars = quotients;
    let var_of: BTreeMap<Multiplier, usize> =
        vars.iter().enumerate().map(|(i, q)| (*q, i)).collect();
    let mut entries = Vec::with_capacity(rows.len() * cols.len());
    for v in &rows {
        for u in &cols {
            if u.divides(v) {
                entries.push(Some(var_of[&Multiplier::from_quotient(m, v, u)?]));
            } else {
                entries.push(None);
            }
        }
    }
    Ok(SymbolicMatrix {
        m,
        w,
        reduced,
        rows,
        cols,
        entries,
        vars,
    })
}

/// The matrix `A_w` evaluated at a coefficient assignment.
#[derive(Debug, Clone)]
pub struct ModularMatrix {
    pub m: i64,
    pub w: i64,
    pub reduced: bool,
    pub prime: u64,
    pub rows: Vec<Monomial>,
    pub cols: Vec<Monomial>,
    pub entries: Vec<Vec<u64>>,
}

impl ModularMatrix {
    pub fn dim(&self) -> usize {
        self.rows.len()
    }
}

/// Build `A_w` over `F_p` from a coefficient assignment. The reduced path
/// requires the coefficient of `z^m` to be nonzero.
pub fn build_matrix_mod(
    m: i64,
    w: i64,
    coeffs: &FormCoeffs,
    reduced: bool,
) -> Result<ModularMatrix> {
    if coeffs.m != m {
        return Err(domain(format!(
            "coefficient assignment is for m = {}, matrix requested for m = {m}",
            coeffs.m
        )));
    }
    if reduced && coeffs.z_m_coeff() == 0 {
        return Err(domain(
            "reduced matrices require a nonzero z^m coefficient".to_string(),
        ));
    }
    let (rows, cols) = bases_for(m, w, reduced)?;
    let entries = rows
        .iter()
        .map(|v| {
            cols.iter()
                .map(|u| {
                    if u.divides(v) {
                        let q = v.sub(u).into_monomial().expect("divisible");
                        coeffs.get(&q)
                    } else {
                        0
                    }
                })
                .collect()
        })
        .collect();
    Ok(ModularMatrix {
        m,
        w,
        reduced,
        prime: coeffs.prime,
        rows,
        cols,
        entries,
    })
}

/// A symbolic determinant with its variable table.
#[derive(Debug, Clone)]
pub struct SymbolicDet {
    pub m: i64,
    pub w: i64,
    pub dim: usize,
    pub vars: Vec<Multiplier>,
    pub poly: MultiPoly,
}

impl SymbolicDet {
    pub fn var_names(&self) -> Vec<String> {
        default_names(self.vars.len())
    }

    /// Deterministic rendering in the canonical monomial order.
    pub fn render(&self) -> String {
        self.poly.render(&self.var_names())
    }
}

/// Exact determinant of the reduced `A_w` as a polynomial in the entry
/// variables. Sign convention: rows and columns in lexicographic basis
/// order, so comparisons against presentations in other orders hold up to
/// a global sign.
pub fn symbolic_det(m: i64, w: i64, size_cap: usize) -> Result<SymbolicDet> {
    let matrix = build_matrix_symbolic(m, w, true)?;
    let n = matrix.dim();
    if n > size_cap {
        return Err(resource(format!(
            "matrix dimension {n} exceeds the symbolic cap {size_cap}"
        )));
    }
    if n > 20 {
        return Err(resource(format!(
            "matrix dimension {n} is beyond exact expansion"
        )));
    }
    let nvars = matrix.vars.len();
    // minor(mask) = det of rows (n - popcount)..n on the columns in mask,
    // memoized over column masks
    let mut memo: Vec<Option<MultiPoly>> = vec![None; 1 << n];
    memo[0] = Some(MultiPoly::one(nvars));
    let full: u32 = ((1u64 << n) - 1) as u32;

    fn minor(
        mask: u32,
        n: usize,
        matrix: &SymbolicMatrix,
        nvars: usize,
        memo: &mut Vec<Option<MultiPoly>>,
    ) -> MultiPoly {
        if let Some(p) = &memo[mask as usize] {
            return p.clone();
        }
        let row = n - mask.count_ones() as usize;
        let mut acc = MultiPoly::zero(nvars);
        let mut sign = 1i64;
        for col in 0..n {
            if mask & (1 << col) == 0 {
                continue;
            }
            if let Some(var) = matrix.entry(row, col) {
                let sub = minor(mask & !(1 << col), n, matrix, nvars, memo);
                acc.add_assign_signed(&sub.mul_var(var), sign);
            }
            sign = -sign;
        }
        memo[mask as usize] = Some(acc.clone());
        acc
    }

    let poly = minor(full, n, &matrix, nvars, &mut memo);
    Ok(SymbolicDet {
        m,
        w,
        dim: n,
        vars: matrix.vars,
        poly,
    })
}

/// Determinant of the reduced (or full) `A_w` at a random coefficient
/// assignment drawn from `seed`, over `F_prime`.
pub fn det_mod_p(m: i64, w: i64, prime: u64, seed: u64, reduced: bool) -> Result<u64> {
    let coeffs = FormCoeffs::random(m, prime, seed)?;
    det_mod_with(m, w, &coeffs, reduced)
}

/// Determinant of `A_w` at a given coefficient assignment. The prime must
/// exceed twice the matrix dimension, a safety margin for the
/// nonzero-evaluation argument.
pub fn det_mod_with(m: i64, w: i64, coeffs: &FormCoeffs, reduced: bool) -> Result<u64> {
    let matrix = build_matrix_mod(m, w, coeffs, reduced)?;
    guarded_det(matrix)
}

fn guarded_det(matrix: ModularMatrix) -> Result<u64> {
    if matrix.prime <= 2 * matrix.dim() as u64 {
        return Err(domain(format!(
            "prime {} is too small: need prime > 2 * dimension = {}",
            matrix.prime,
            2 * matrix.dim()
        )));
    }
    let prime = matrix.prime;
    Ok(det_mod(matrix.entries, prime))
}

/// One weight slice of a certification run.
#[derive(Debug, Clone, Serialize)]
pub struct ConjectureSlice {
    pub w: i64,
    pub dim: usize,
    pub det_nonzero: bool,
}

/// Report of a non-vanishing certification sweep: a witness form with
/// nonzero `z^m` coefficient whose reduced matrices are nonsingular on
/// every weight slice certifies the generic statement at this `m` over
/// the prime field, and by a nonzero-evaluation argument over the
/// rationals.
#[derive(Debug, Clone, Serialize)]
pub struct ConjectureReport {
    pub m: i64,
    pub prime: u64,
    pub seed: u64,
    pub slices: Vec<ConjectureSlice>,
    pub verdict: bool,
}

/// Certify non-vanishing of every reduced `det(A_w)`, `0 <= w <= 6m-9`,
/// at one random form drawn from `seed`.
pub fn verify_conjecture(m: i64, prime: u64, seed: u64) -> Result<ConjectureReport> {
    let coeffs = FormCoeffs::random(m, prime, seed)?;
    let mut report = verify_conjecture_with(m, &coeffs)?;
    report.seed = seed;
    Ok(report)
}

/// The same sweep at a caller-supplied form (seed reported as 0).
pub fn verify_conjecture_with(m: i64, coeffs: &FormCoeffs) -> Result<ConjectureReport> {
    if m < 2 {
        return Err(domain(format!("m >= 2 required, got {m}")));
    }
    let mut slices = Vec::new();
    let mut verdict = true;
    for w in 0..=6 * m - 9 {
        let matrix = build_matrix_mod(m, w, coeffs, true)?;
        let dim = matrix.dim();
        let det = guarded_det(matrix)?;
        let det_nonzero = det != 0;
        verdict &= det_nonzero;
        slices.push(ConjectureSlice {
            w,
            dim,
            det_nonzero,
        });
    }
    Ok(ConjectureReport {
        m,
        prime: coeffs.prime,
        seed: 0,
        slices,
        verdict,
    })
}

/// All monomials of a given weight, lexicographic.
fn weight_slice_monomials(w: i64) -> Vec<Monomial> {
    let mut out = Vec::new();
    if w < 0 {
        return out;
    }
    for a in 0..=w {
        for b in 0..=(w - a) / 2 {
            let rest = w - a - 2 * b;
            if rest % 3 == 0 {
                out.push(Monomial {
                    a,
                    b,
                    c: rest / 3,
                });
            }
        }
    }
    out
}

/// Direct low-degree membership oracle: true iff no weight slice of the
/// ideal generated by the weight-`(3m-2)` power of `(x, y)` together with
/// the form contains a nonzero polynomial of standard degree `<= 3m - 3`.
///
/// Each slice is an exact rank computation over `F_p`: the span of the
/// slice generators meets the span of the low-degree monomials trivially
/// iff deleting the low-degree rows preserves the rank.
pub fn low_degree_member_check(m: i64, coeffs: &FormCoeffs, cap_m: i64) -> Result<bool> {
    if m < 2 {
        return Err(domain(format!("m >= 2 required, got {m}")));
    }
    if m > cap_m {
        return Err(resource(format!(
            "low-degree membership check capped at m <= {cap_m}, got {m}"
        )));
    }
    if coeffs.m != m {
        return Err(domain(format!(
            "coefficient assignment is for m = {}, check requested for m = {m}",
            coeffs.m
        )));
    }
    let p = coeffs.prime;
    // beyond w = 9(m-1) there are no monomials of degree <= 3m-3 at all
    for w in 0..=9 * (m - 1) {
        let slice = weight_slice_monomials(w);
        let index: BTreeMap<Monomial, usize> =
            slice.iter().enumerate().map(|(i, mono)| (*mono, i)).collect();
        let mut columns: Vec<Vec<u64>> = Vec::new();
        // monomial generators of the power ideal in this slice
        for mono in &slice {
            if mono.a + mono.b >= 3 * m - 2 {
                let mut col = vec![0u64; slice.len()];
                col[index[mono]] = 1;
                columns.push(col);
            }
        }
        // multiples g * u for u of weight w - 3m
        for u in weight_slice_monomials(w - 3 * m) {
            let mut col = vec![0u64; slice.len()];
            for (q, &coeff) in coeffs.entries() {
                if coeff == 0 {
                    continue;
                }
                let product = u
                    .checked_add(q.sub(&Monomial { a: 0, b: 0, c: 0 }))
                    .expect("products of monomials stay non-negative");
                col[index[&product]] = coeff;
            }
            columns.push(col);
        }
        if columns.is_empty() {
            continue;
        }
        // transpose: rank works on row lists
        let full_rows: Vec<Vec<u64>> = (0..slice.len())
            .map(|r| columns.iter().map(|col| col[r]).collect())
            .collect();
        let high_rows: Vec<Vec<u64>> = (0..slice.len())
            .filter(|&r| slice[r].degree() > 3 * m - 3)
            .map(|r| columns.iter().map(|col| col[r]).collect())
            .collect();
        let full_rank = rank_mod(full_rows, p);
        let punctured_rank = rank_mod(high_rows, p);
        if punctured_rank < full_rank {
            // some combination is supported entirely on low-degree monomials
            return Ok(false);
        }
    }
    Ok(true)
}

/// Whether a monomial vector lies in the span of the slice generated by
/// the power ideal and the form, over `F_p` — the membership test behind
/// the trimming identity `J_0` contained in `I_g`.
pub fn slice_contains_monomial(m: i64, coeffs: &FormCoeffs, target: &Monomial) -> Result<bool> {
    let p = coeffs.prime;
    let w = target.weight();
    let slice = weight_slice_monomials(w);
    let index: BTreeMap<Monomial, usize> =
        slice.iter().enumerate().map(|(i, mono)| (*mono, i)).collect();
    let mut columns: Vec<Vec<u64>> = Vec::new();
    for mono in &slice {
        if mono.a + mono.b >= 3 * m - 2 {
            let mut col = vec![0u64; slice.len()];
            col[index[mono]] = 1;
            columns.push(col);
        }
    }
    for u in weight_slice_monomials(w - 3 * m) {
        let mut col = vec![0u64; slice.len()];
        for (q, &coeff) in coeffs.entries() {
            if coeff == 0 {
                continue;
            }
            let product = u
                .checked_add(q.sub(&Monomial { a: 0, b: 0, c: 0 }))
                .expect("products of monomials stay non-negative");
            col[index[&product]] = coeff;
        }
        columns.push(col);
    }
    let rows: Vec<Vec<u64>> = (0..slice.len())
        .map(|r| columns.iter().map(|col| col[r]).collect())
        .collect();
    let base_rank = rank_mod(rows.clone(), p);
    let mut extended = rows;
    for (r, row) in extended.iter_mut().enumerate() {
        row.push(if slice[r] == *target { 1 } else { 0 });
    }
    Ok(rank_mod(extended, p) == base_rank)
}

/// Weighted Hilbert function of `k[x,y,z]/I_g` at weight `w`, by exact
/// rank over `F_p`.
pub fn quotient_dim(m: i64, coeffs: &FormCoeffs, w: i64) -> Result<usize> {
    let p = coeffs.prime;
    let slice = weight_slice_monomials(w);
    let index: BTreeMap<Monomial, usize> =
        slice.iter().enumerate().map(|(i, mono)| (*mono, i)).collect();
    let mut rows: Vec<Vec<u64>> = Vec::new();
    for mono in &slice {
        if mono.a + mono.b >= 3 * m - 2 {
            let mut row = vec![0u64; slice.len()];
            row[index[mono]] = 1;
            rows.push(row);
        }
    }
    for u in weight_slice_monomials(w - 3 * m) {
        let mut row = vec![0u64; slice.len()];
        for (q, &coeff) in coeffs.entries() {
            if coeff == 0 {
                continue;
            }
            let product = u
                .checked_add(q.sub(&Monomial { a: 0, b: 0, c: 0 }))
                .expect("products of monomials stay non-negative");
            row[index[&product]] = coeff;
        }
        rows.push(row);
    }
    Ok(slice.len() - rank_mod(rows, p))
}

/// Weighted Hilbert function of `k[x,y,z]/(x,y,z)^{3m-2}` at weight `w`:
/// the number of weight-`w` monomials of standard degree `<= 3m - 3`.
pub fn monomial_quotient_dim(m: i64, w: i64) -> usize {
    weight_slice_monomials(w)
        .iter()
        .filter(|mono| mono.degree() <= 3 * m - 3)
        .count()
}

/// The exponent vector of the term determined by the multiplier multiset
/// of `phi` in the variables of a symbolic determinant.
fn gamma_exponents(det: &SymbolicDet) -> Result<Vec<u32>> {
    let qphi = multiset_of(&phi_table(det.m, det.w)?)?;
    let mut exps = vec![0u32; det.vars.len()];
    for (q, count) in qphi.entries() {
        match det.vars.iter().position(|v| v == q) {
            Some(i) => exps[i] = *count as u32,
            None => {
                return Err(domain(
                    "a multiplier of phi does not appear among the matrix entries".to_string(),
                ))
            }
        }
    }
    Ok(exps)
}

/// The coefficient of the term determined by the multiplier multiset of
/// `phi` in the symbolic determinant of the reduced `A_w`. Agrees exactly
/// with the signed bijection count of the matching oracle.
pub fn gamma_coefficient(m: i64, w: i64, size_cap: usize) -> Result<i64> {
    let det = symbolic_det(m, w, size_cap)?;
    let exps = gamma_exponents(&det)?;
    Ok(det.poly.coeff(&exps))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fp::DEFAULT_PRIME;
    use crate::verify::check_noncancellation;

    fn mono(a: i64, b: i64, c: i64) -> Monomial {
        Monomial::new(a, b, c).unwrap()
    }

    #[test]
    fn symbolic_matrix_m3_w8() {
        let mx = build_matrix_symbolic(3, 8, true).unwrap();
        assert_eq!(mx.dim(), 3);
        // variables sorted: a=(0,0,3), b=(0,3,1), c=(1,1,2), d=(1,4,0)
        let triples: Vec<[i64; 3]> = mx.vars.iter().map(|q| q.as_triple()).collect();
        assert_eq!(
            triples,
            vec![[0, 0, 3], [0, 3, 1], [1, 1, 2], [1, 4, 0]]
        );
        // rows (0,4,3), (1,2,4), (1,5,2); cols (0,1,2), (0,4,0), (1,2,1)
        let by_name: Vec<Vec<Option<usize>>> = (0..3)
            .map(|r| (0..3).map(|c| mx.entry(r, c)).collect())
            .collect();
        assert_eq!(
            by_name,
            vec![
                vec![Some(1), Some(0), None],
                vec![Some(2), None, Some(0)],
                vec![Some(3), Some(2), Some(1)],
            ]
        );
    }

    #[test]
    fn matrices_are_square() {
        for m in 2..=6 {
            for w in 0..=6 * m - 5 {
                let reduced = build_matrix_symbolic(m, w, true).unwrap();
                assert_eq!(reduced.rows.len(), reduced.cols.len());
                let full = build_matrix_symbolic(m, w, false).unwrap();
                assert_eq!(full.rows.len(), full.cols.len());
            }
        }
    }

    #[test]
    fn symbolic_det_m3_w8() {
        let det = symbolic_det(3, 8, 8).unwrap();
        assert_eq!(det.render(), "-2*a*b*c + a^2*d");
        assert_eq!(det.poly.coeff(&[1, 1, 1, 0]), -2);
        assert_eq!(det.poly.coeff(&[2, 0, 0, 1]), 1);
        assert_eq!(det.poly.num_terms(), 2);
    }

    #[test]
    fn symbolic_det_m4_w14_structure() {
        let det = symbolic_det(4, 14, 8).unwrap();
        assert_eq!(det.dim, 5);
        assert_eq!(det.poly.num_terms(), 3);
        let mut magnitudes: Vec<i64> = det.poly.terms().map(|(_, c)| c.abs()).collect();
        magnitudes.sort();
        assert_eq!(magnitudes, vec![2, 2, 3]);
        // every term divisible by a^2, where a = z^4 is the first variable
        assert_eq!(det.vars[0].as_triple(), [0, 0, 4]);
        for (exps, _) in det.poly.terms() {
            assert!(exps[0] >= 2);
        }
        // permutation degree: every term is a product of dim entries
        for (exps, _) in det.poly.terms() {
            assert_eq!(exps.iter().sum::<u32>(), 5);
        }
    }

    #[test]
    fn symbolic_det_one_by_one() {
        let det = symbolic_det(3, 0, 8).unwrap();
        assert_eq!(det.dim, 1);
        assert_eq!(det.poly.num_terms(), 1);
        assert_eq!(det.vars.len(), 1);
        assert_eq!(det.vars[0].as_triple(), [6, 0, 1]);
        assert_eq!(det.render(), "a");
    }

    #[test]
    fn symbolic_cap_is_enforced() {
        assert!(matches!(
            symbolic_det(4, 14, 3),
            Err(crate::error::Error::Resource(_))
        ));
    }

    #[test]
    fn det_mod_examples() {
        for seed in 0..5 {
            assert_ne!(det_mod_p(3, 8, DEFAULT_PRIME, seed, true).unwrap(), 0);
        }
        // the prime safety margin is enforced
        assert!(matches!(
            det_mod_p(3, 8, 5, 1, true),
            Err(crate::error::Error::Domain(_))
        ));
        // killing the z^3 coefficient kills both determinant terms
        let mut coeffs = FormCoeffs::random(3, DEFAULT_PRIME, 1).unwrap();
        coeffs.set(mono(0, 0, 3), 0).unwrap();
        assert_eq!(det_mod_with(3, 8, &coeffs, false).unwrap(), 0);
        // dimension-zero slice: empty product
        let coeffs = FormCoeffs::random(3, DEFAULT_PRIME, 1).unwrap();
        assert_eq!(det_mod_with(3, 12, &coeffs, true).unwrap(), 1);
    }

    #[test]
    fn conjecture_reports() {
        let report = verify_conjecture(3, DEFAULT_PRIME, 1).unwrap();
        assert!(report.verdict);
        assert_eq!(report.slices.len(), 10);
        assert!(report.slices.iter().all(|s| s.det_nonzero));
        let report = verify_conjecture(2, DEFAULT_PRIME, 7).unwrap();
        assert!(report.verdict);
        assert!(verify_conjecture(1, DEFAULT_PRIME, 1).is_err());
    }

    #[test]
    fn low_degree_check_examples() {
        let coeffs = FormCoeffs::random(3, DEFAULT_PRIME, 11).unwrap();
        assert!(low_degree_member_check(3, &coeffs, 6).unwrap());
        // g = z^m alone: z^m itself has degree m <= 3m - 3
        let degenerate = FormCoeffs::z_m_only(3, DEFAULT_PRIME).unwrap();
        assert!(!low_degree_member_check(3, &degenerate, 6).unwrap());
        assert!(matches!(
            low_degree_member_check(3, &coeffs, 2),
            Err(crate::error::Error::Resource(_))
        ));
    }

    #[test]
    fn low_degree_agrees_with_determinant_sweep() {
        // equivalence of the ideal condition and slicewise nonsingularity,
        // at random forms and at the degenerate form z^m
        for m in 2..=4 {
            for seed in 0..100 {
                let coeffs = FormCoeffs::random(m, DEFAULT_PRIME, seed).unwrap();
                let by_det = verify_conjecture_with(m, &coeffs).unwrap().verdict;
                let by_ideal = low_degree_member_check(m, &coeffs, 6).unwrap();
                assert_eq!(by_det, by_ideal, "m={m} seed={seed}");
            }
            let degenerate = FormCoeffs::z_m_only(m, DEFAULT_PRIME).unwrap();
            let by_det = verify_conjecture_with(m, &degenerate).unwrap().verdict;
            let by_ideal = low_degree_member_check(m, &degenerate, 6).unwrap();
            assert_eq!(by_det, by_ideal, "m={m} z^m");
        }
    }

    #[test]
    fn z_m_determinant_matches_shift_bijection() {
        // for g = z^m the slice matrix is a permutation matrix iff
        // u -> u + (0,0,m) maps R'_w onto M'_w
        let m = 3;
        let coeffs = FormCoeffs::z_m_only(m, DEFAULT_PRIME).unwrap();
        for w in 0..=6 * m - 9 {
            let det = det_mod_with(m, w, &coeffs, true).unwrap();
            let dom = enumerate_basis(m, w, Side::Rprime).unwrap();
            let img = enumerate_basis(m, w, Side::Mprime).unwrap();
            let mut shifted: Vec<Monomial> = dom
                .iter()
                .filter_map(|u| {
                    u.checked_add(crate::monomial::Offset { a: 0, b: 0, c: m })
                })
                .collect();
            shifted.sort();
            let is_bijection = shifted == img;
            assert_eq!(det != 0, is_bijection, "m={m} w={w}");
        }
    }

    #[test]
    fn hilbert_identity() {
        // the quotient by I_g has the Hilbert function of the monomial
        // quotient, slice by slice
        for m in 2..=5 {
            let coeffs = FormCoeffs::random(m, DEFAULT_PRIME, 23).unwrap();
            for w in 0..=9 * (m - 1) + 3 {
                assert_eq!(
                    quotient_dim(m, &coeffs, w).unwrap(),
                    monomial_quotient_dim(m, w),
                    "m={m} w={w}"
                );
            }
        }
    }

    #[test]
    fn trimming_inclusion() {
        // every monomial with 2i + 2j + 3k > 9(m-1) of bounded weight lies
        // in the ideal
        for m in 2..=4 {
            let coeffs = FormCoeffs::random(m, DEFAULT_PRIME, 5).unwrap();
            for w in 0..=9 * (m - 1) + 3 {
                for v in weight_slice_monomials(w) {
                    if 2 * v.a + 2 * v.b + 3 * v.c > 9 * (m - 1) {
                        assert!(
                            slice_contains_monomial(m, &coeffs, &v).unwrap(),
                            "m={m} w={w} v={v:?}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn gamma_examples() {
        assert_eq!(gamma_coefficient(3, 8, 8).unwrap(), -2);
        assert_eq!(gamma_coefficient(4, 14, 8).unwrap().abs(), 3);
        for w in [0, 3, 6, 9] {
            assert_eq!(gamma_coefficient(3, w, 12).unwrap().abs(), 1, "w={w}");
        }
    }

    #[test]
    fn gamma_matches_signed_count() {
        for (m, w) in [(3, 8), (4, 14)] {
            let gamma = gamma_coefficient(m, w, 8).unwrap();
            let sc = check_noncancellation(m, w, crate::verify::DEFAULT_NODE_CAP).unwrap();
            assert_eq!(gamma, sc.signed);
        }
    }
}
