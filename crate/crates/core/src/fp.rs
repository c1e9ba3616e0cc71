//! Prime-field arithmetic and the deterministic PRNG used for modular
//! determinant certificates.
//!
//! Primes up to 63 bits are supported; products go through `u128`. The
//! default prime is the Mersenne prime `2^61 - 1`, chosen above `10^18`
//! so a single nonzero evaluation is an overwhelming witness.

/// Default certification prime, `2^61 - 1`.
pub const DEFAULT_PRIME: u64 = 2_305_843_009_213_693_951;

/// SplitMix64 stream; the seed is recorded in every report so runs are
/// reproducible.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform value in `[0, p)` by rejection on 63-bit samples.
    pub fn below(&mut self, p: u64) -> u64 {
        debug_assert!(p > 0 && p < 1 << 63);
        loop {
            let x = self.next_u64() >> 1;
            if x < (u64::MAX >> 1) / p * p {
                return x % p;
            }
        }
    }

    /// Uniform nonzero value in `[1, p)`.
    pub fn nonzero_below(&mut self, p: u64) -> u64 {
        1 + self.below(p - 1)
    }
}

#[inline]
pub fn add_mod(a: u64, b: u64, p: u64) -> u64 {
    let s = a + b; // a, b < p < 2^63, no overflow
    if s >= p {
        s - p
    } else {
        s
    }
}

#[inline]
pub fn sub_mod(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + p - b
    }
}

#[inline]
pub fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

/// Inverse modulo a prime `p` via Fermat.
pub fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(a % p != 0);
    pow_mod(a, p - 2, p)
}

/// Determinant of a square matrix over `F_p` by Gaussian elimination.
/// The matrix is consumed. An empty matrix has determinant 1.
pub fn det_mod(mut mat: Vec<Vec<u64>>, p: u64) -> u64 {
    let n = mat.len();
    let mut det = 1 % p;
    for col in 0..n {
        let pivot = (col..n).find(|&r| mat[r][col] % p != 0);
        let Some(pivot) = pivot else {
            return 0;
        };
        if pivot != col {
            mat.swap(pivot, col);
            det = sub_mod(0, det, p);
        }
        let pv = mat[col][col] % p;
        det = mul_mod(det, pv, p);
        let inv = inv_mod(pv, p);
        let pivot_row: Vec<u64> = mat[col][col..].iter().map(|&x| x % p).collect();
        for row in mat.iter_mut().skip(col + 1) {
            let factor = mul_mod(row[col] % p, inv, p);
            if factor == 0 {
                continue;
            }
            for (offset, &pivot_entry) in pivot_row.iter().enumerate() {
                let sub = mul_mod(factor, pivot_entry, p);
                let cell = &mut row[col + offset];
                *cell = sub_mod(*cell % p, sub, p);
            }
        }
    }
    det
}

/// Rank of a rectangular matrix over `F_p`. The matrix is consumed.
pub fn rank_mod(mut mat: Vec<Vec<u64>>, p: u64) -> usize {
    let rows = mat.len();
    if rows == 0 {
        return 0;
    }
    let cols = mat[0].len();
    let mut rank = 0;
    for col in 0..cols {
        let pivot = (rank..rows).find(|&r| mat[r][col] % p != 0);
        let Some(pivot) = pivot else {
            continue;
        };
        mat.swap(pivot, rank);
        let inv = inv_mod(mat[rank][col] % p, p);
        let pivot_row: Vec<u64> = mat[rank][col..].iter().map(|&x| x % p).collect();
        for (r, row) in mat.iter_mut().enumerate() {
            if r == rank {
                continue;
            }
            let factor = mul_mod(row[col] % p, inv, p);
            if factor == 0 {
                continue;
            }
            for (offset, &pivot_entry) in pivot_row.iter().enumerate() {
                let sub = mul_mod(factor, pivot_entry, p);
                let cell = &mut row[col + offset];
                *cell = sub_mod(*cell % p, sub, p);
            }
        }
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn splitmix_is_deterministic() {
        let mut a = SplitMix64::new(42);
        let mut b = SplitMix64::new(42);
        for _ in 0..100 {
            assert_eq!(a.next_u64(), b.next_u64());
        }
    }

    #[test]
    fn field_ops() {
        let p = DEFAULT_PRIME;
        let mut rng = SplitMix64::new(7);
        for _ in 0..200 {
            let a = rng.nonzero_below(p);
            assert_eq!(mul_mod(a, inv_mod(a, p), p), 1);
        }
        assert_eq!(pow_mod(2, 61, p), 1); // 2^61 = 1 mod 2^61 - 1
    }

    #[test]
    fn small_determinants() {
        let p = 101;
        assert_eq!(det_mod(vec![], p), 1);
        assert_eq!(det_mod(vec![vec![5]], p), 5);
        // det [[1,2],[3,4]] = -2
        assert_eq!(det_mod(vec![vec![1, 2], vec![3, 4]], p), p - 2);
        // singular
        assert_eq!(det_mod(vec![vec![1, 2], vec![2, 4]], p), 0);
    }

    #[test]
    fn ranks() {
        let p = 101;
        assert_eq!(rank_mod(vec![vec![1, 2], vec![2, 4]], p), 1);
        assert_eq!(rank_mod(vec![vec![1, 0, 1], vec![0, 1, 1]], p), 2);
        assert_eq!(rank_mod(vec![vec![0, 0], vec![0, 0]], p), 0);
    }
}
