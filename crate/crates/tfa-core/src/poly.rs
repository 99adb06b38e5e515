//! Dense-map multivariate polynomials with complex coefficients (d ≤ 2).

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// Multivariate polynomial Σ c_α x^α over real variables, complex
/// coefficients, stored as a multi-index → coefficient map. The second
/// exponent is unused (zero) when dim = 1.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Poly {
    pub dim: usize,
    pub terms: BTreeMap<(u32, u32), Complex64>,
}

impl Poly {
    pub fn zero(dim: usize) -> Poly {
        Poly { dim, terms: BTreeMap::new() }
    }

    pub fn constant(dim: usize, c: Complex64) -> Poly {
        let mut p = Poly::zero(dim);
        if c != Complex64::new(0.0, 0.0) {
            p.terms.insert((0, 0), c);
        }
        p
    }

    pub fn one(dim: usize) -> Poly {
        Poly::constant(dim, Complex64::new(1.0, 0.0))
    }

    pub fn monomial(dim: usize, alpha: (u32, u32), c: Complex64) -> Poly {
        let mut p = Poly::zero(dim);
        if c != Complex64::new(0.0, 0.0) {
            p.terms.insert(alpha, c);
        }
        p
    }

    pub fn add_term(&mut self, alpha: (u32, u32), c: Complex64) {
        let entry = self.terms.entry(alpha).or_insert(Complex64::new(0.0, 0.0));
        *entry += c;
        if entry.norm() == 0.0 {
            self.terms.remove(&alpha);
        }
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|(a, b)| a + b).max().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (&a, &c) in &other.terms {
            out.add_term(a, c);
        }
        out
    }

    pub fn scale(&self, s: Complex64) -> Poly {
        let mut out = Poly::zero(self.dim);
        for (&a, &c) in &self.terms {
            out.add_term(a, c * s);
        }
        out
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut out = Poly::zero(self.dim);
        for (&(a1, b1), &c1) in &self.terms {
            for (&(a2, b2), &c2) in &other.terms {
                out.add_term((a1 + a2, b1 + b2), c1 * c2);
            }
        }
        out
    }

    /// Partial derivative along `axis` (0 or 1).
    pub fn derivative(&self, axis: usize) -> Poly {
        let mut out = Poly::zero(self.dim);
        for (&(a, b), &c) in &self.terms {
            match axis {
                0 if a > 0 => out.add_term((a - 1, b), c * a as f64),
                1 if b > 0 => out.add_term((a, b - 1), c * b as f64),
                _ => {}
            }
        }
        out
    }

    /// Composition x ↦ x − a (real shift), via binomial expansion.
    pub fn shift(&self, a: &[f64]) -> Poly {
        let mut out = Poly::zero(self.dim);
        for (&(e1, e2), &c) in &self.terms {
            // (x1 - a1)^e1 (x2 - a2)^e2
            for k1 in 0..=e1 {
                for k2 in 0..=e2 {
                    let b1 = binomial(e1, k1) * (-a[0]).powi((e1 - k1) as i32);
                    let b2 = if self.dim > 1 {
                        binomial(e2, k2) * (-a[1]).powi((e2 - k2) as i32)
                    } else {
                        1.0
                    };
                    out.add_term((k1, k2), c * b1 * b2);
                }
            }
        }
        out
    }

    /// Composition x ↦ λx: coefficient of x^α scaled by λ^{|α|}.
    pub fn dilate(&self, lambda: f64) -> Poly {
        let mut out = Poly::zero(self.dim);
        for (&(a, b), &c) in &self.terms {
            out.add_term((a, b), c * lambda.powi((a + b) as i32));
        }
        out
    }

    /// Composition x ↦ −x.
    pub fn reflect(&self) -> Poly {
        let mut out = Poly::zero(self.dim);
        for (&(a, b), &c) in &self.terms {
            let sign = if (a + b) % 2 == 0 { 1.0 } else { -1.0 };
            out.add_term((a, b), c * sign);
        }
        out
    }

    /// Complex-conjugated coefficients (equals conj(P(x)) for real x).
    pub fn conj(&self) -> Poly {
        let mut out = Poly::zero(self.dim);
        for (&a, &c) in &self.terms {
            out.add_term(a, c.conj());
        }
        out
    }

    pub fn eval(&self, x: &[f64]) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (&(a, b), &c) in &self.terms {
            let mut v = c * x[0].powi(a as i32);
            if b > 0 {
                v *= x[1].powi(b as i32);
            }
            acc += v;
        }
        acc
    }
}

fn binomial(n: u32, k: u32) -> f64 {
    let mut r = 1.0;
    for i in 0..k.min(n - k) {
        r = r * (n - i) as f64 / (i + 1) as f64;
    }
    r
}
