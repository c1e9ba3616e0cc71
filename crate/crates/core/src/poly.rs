//! Sparse multivariate polynomials with integer coefficients, exactly as
//! needed for small symbolic determinants: every matrix entry is a single
//! variable, so the only ring operations required are multiplication by a
//! variable and signed addition.
//!
//! Terms live in a `BTreeMap` keyed by exponent vectors; iteration order
//! is therefore a fixed monomial order and printing is deterministic.

use std::collections::BTreeMap;

/// A polynomial in `nvars` variables over the integers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiPoly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, i64>,
}

impl MultiPoly {
    pub fn zero(nvars: usize) -> Self {
        MultiPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(vec![0; nvars], 1);
        MultiPoly { nvars, terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Coefficient of the given exponent vector.
    pub fn coeff(&self, exps: &[u32]) -> i64 {
        debug_assert_eq!(exps.len(), self.nvars);
        self.terms.get(exps).copied().unwrap_or(0)
    }

    /// Terms in the canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &i64)> {
        self.terms.iter()
    }

    /// `self += sign * other`.
    pub fn add_assign_signed(&mut self, other: &MultiPoly, sign: i64) {
        debug_assert_eq!(self.nvars, other.nvars);
        for (exps, coeff) in &other.terms {
            let entry = self.terms.entry(exps.clone()).or_insert(0);
            *entry += sign * coeff;
            if *entry == 0 {
                self.terms.remove(exps);
            }
        }
    }

    /// Product with a single variable.
    pub fn mul_var(&self, var: usize) -> MultiPoly {
        debug_assert!(var < self.nvars);
        let mut terms = BTreeMap::new();
        for (exps, coeff) in &self.terms {
            let mut e = exps.clone();
            e[var] += 1;
            terms.insert(e, *coeff);
        }
        MultiPoly {
            nvars: self.nvars,
            terms,
        }
    }

    /// Render with the given variable names, e.g. `a^2*d - 2*a*b*c`.
    pub fn render(&self, names: &[String]) -> String {
        debug_assert_eq!(names.len(), self.nvars);
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (idx, (exps, coeff)) in self.terms.iter().enumerate() {
            let mag = coeff.abs();
            if idx == 0 {
                if *coeff < 0 {
                    out.push('-');
                }
            } else if *coeff < 0 {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            let mut factors = Vec::new();
            if mag != 1 || exps.iter().all(|&e| e == 0) {
                factors.push(mag.to_string());
            }
            for (v, &e) in exps.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(names[v].clone()),
                    _ => factors.push(format!("{}^{}", names[v], e)),
                }
            }
            out.push_str(&factors.join("*"));
        }
        out
    }
}

/// Default variable names: letters for the first 26 variables, then `v26`,
/// `v27`, and so on.
pub fn default_names(nvars: usize) -> Vec<String> {
    (0..nvars)
        .map(|i| {
            if i < 26 {
                char::from(b'a' + i as u8).to_string()
            } else {
                format!("v{i}")
            }
        })
        .collect()
}
