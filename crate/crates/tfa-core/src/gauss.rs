//! Closed-form calculus for polynomial × Gaussian functions
//! P(x)·exp(−π⟨Mx,x⟩ + ⟨l,x⟩ + c) with complex symmetric M.
//!
//! These forms are closed under translation, modulation, dilation,
//! reflection, conjugation, pointwise products and the continuous Fourier
//! transform, which makes exact tail evaluation possible where FFT output
//! is below the double-precision noise floor.

use crate::error::{precondition, Result};
use crate::poly::Poly;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// One polynomial-Gaussian term f(x) = P(x)·exp(−π⟨Mx,x⟩ + ⟨l,x⟩ + c),
/// where ⟨·,·⟩ is the real-bilinear pairing and M is complex symmetric
/// with positive-definite real part.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussForm {
    pub dim: usize,
    pub poly: Poly,
    pub m: [[Complex64; 2]; 2],
    pub lin: [Complex64; 2],
    pub c: Complex64,
}

impl GaussForm {
    pub fn new(dim: usize, poly: Poly, m: [[Complex64; 2]; 2], lin: [Complex64; 2], c: Complex64) -> GaussForm {
        GaussForm { dim, poly, m, lin, c }
    }

    /// The standard Gaussian e^{−π‖x‖²}.
    pub fn standard(dim: usize) -> GaussForm {
        let mut m = [[ZERO; 2]; 2];
        m[0][0] = Complex64::new(1.0, 0.0);
        m[1][1] = Complex64::new(1.0, 0.0);
        GaussForm::new(dim, Poly::one(dim), m, [ZERO; 2], ZERO)
    }

    fn det(&self) -> Complex64 {
        match self.dim {
            1 => self.m[0][0],
            _ => self.m[0][0] * self.m[1][1] - self.m[0][1] * self.m[1][0],
        }
    }

    fn inv(&self) -> [[Complex64; 2]; 2] {
        let mut out = [[ZERO; 2]; 2];
        match self.dim {
            1 => {
                out[0][0] = 1.0 / self.m[0][0];
                out[1][1] = Complex64::new(1.0, 0.0);
            }
            _ => {
                let d = self.det();
                out[0][0] = self.m[1][1] / d;
                out[1][1] = self.m[0][0] / d;
                out[0][1] = -self.m[0][1] / d;
                out[1][0] = -self.m[1][0] / d;
            }
        }
        out
    }

    /// Exponent −π⟨Mx,x⟩ + ⟨l,x⟩ + c at a real point.
    pub fn exponent(&self, x: &[f64]) -> Complex64 {
        let mut q = ZERO;
        let mut l = ZERO;
        for i in 0..self.dim {
            l += self.lin[i] * x[i];
            for j in 0..self.dim {
                q += self.m[i][j] * x[i] * x[j];
            }
        }
        -std::f64::consts::PI * q + l + self.c
    }

    pub fn eval(&self, x: &[f64]) -> Complex64 {
        self.poly.eval(x) * self.exponent(x).exp()
    }

    /// log|f(x)|, finite even far below the double-precision underflow
    /// threshold; −inf exactly at polynomial zeros.
    pub fn log_abs(&self, x: &[f64]) -> f64 {
        let p = self.poly.eval(x).norm();
        if p == 0.0 {
            return f64::NEG_INFINITY;
        }
        p.ln() + self.exponent(x).re
    }

    /// Continuous Fourier transform with sign convention
    /// f̂(y) = ∫ f(x) e^{2iπσ⟨x,y⟩} dx (the paper transform is σ = −1).
    pub fn fourier(&self, sigma: f64) -> GaussForm {
        let mi = self.inv();
        let mut lin2 = [ZERO; 2];
        let i = Complex64::new(0.0, 1.0);
        let mut mil = [ZERO; 2];
        for j in 0..self.dim {
            for k in 0..self.dim {
                mil[j] += mi[j][k] * self.lin[k];
            }
            lin2[j] = sigma * i * mil[j];
        }
        let mut lml = ZERO;
        for j in 0..self.dim {
            lml += mil[j] * self.lin[j];
        }
        // Principal branch is valid: the eigenvalues of M have arguments in
        // (−π/2, π/2) because Re M is positive definite, so arg(det M) stays
        // inside (−π, π).
        let c2 = self.c + lml / (4.0 * std::f64::consts::PI) - 0.5 * self.det().ln();

        // P(x) ↔ P((2iπσ)^{-1} ∂_y) applied to the transformed Gaussian:
        // each ∂_j maps Q e^E to (∂_j Q + Q ∂_j E) e^E with
        // ∂_j E(y) = l2_j − 2π (M⁻¹ y)_j.
        let fac = 1.0 / (sigma * 2.0 * std::f64::consts::PI * i);
        let mut de = Vec::new();
        for j in 0..self.dim {
            let mut p = Poly::constant(self.dim, lin2[j]);
            p.add_term((1, 0), -2.0 * std::f64::consts::PI * mi[j][0]);
            if self.dim > 1 {
                p.add_term((0, 1), -2.0 * std::f64::consts::PI * mi[j][1]);
            }
            de.push(p);
        }
        let deriv = |q: &Poly, j: usize| -> Poly { q.derivative(j).add(&q.mul(&de[j])) };
        let mut acc = Poly::zero(self.dim);
        for (&(a, b), &coeff) in &self.poly.terms.clone() {
            let mut q = Poly::one(self.dim);
            for _ in 0..a {
                q = deriv(&q, 0);
            }
            for _ in 0..b {
                q = deriv(&q, 1);
            }
            acc = acc.add(&q.scale(coeff * fac.powu(a + b)));
        }
        GaussForm::new(self.dim, acc, mi, lin2, c2)
    }

    /// f(x − a).
    pub fn translate(&self, a: &[f64]) -> GaussForm {
        let mut lin2 = self.lin;
        let mut c2 = self.c;
        let pi = std::f64::consts::PI;
        for j in 0..self.dim {
            let mut ma = ZERO;
            for k in 0..self.dim {
                ma += self.m[j][k] * a[k];
            }
            lin2[j] = self.lin[j] + 2.0 * pi * ma;
            c2 -= pi * ma * a[j] + self.lin[j] * a[j];
        }
        let mut av = [0.0; 2];
        av[..self.dim].copy_from_slice(&a[..self.dim]);
        GaussForm::new(self.dim, self.poly.shift(&av), self.m, lin2, c2)
    }

    /// e^{2iπ⟨ω,x⟩} f(x).
    pub fn modulate(&self, omega: &[f64]) -> GaussForm {
        let mut lin2 = self.lin;
        for j in 0..self.dim {
            lin2[j] += Complex64::new(0.0, 2.0 * std::f64::consts::PI * omega[j]);
        }
        GaussForm::new(self.dim, self.poly.clone(), self.m, lin2, self.c)
    }

    /// λ^{d/2} f(λx).
    pub fn dilate(&self, lambda: f64) -> GaussForm {
        let amp = lambda.powf(self.dim as f64 / 2.0);
        let mut m2 = self.m;
        let mut lin2 = self.lin;
        for j in 0..self.dim {
            lin2[j] *= lambda;
            for k in 0..self.dim {
                m2[j][k] *= lambda * lambda;
            }
        }
        GaussForm::new(self.dim, self.poly.dilate(lambda).scale(amp.into()), m2, lin2, self.c)
    }

    /// f(−x).
    pub fn reflect(&self) -> GaussForm {
        let mut lin2 = self.lin;
        for j in 0..self.dim {
            lin2[j] = -lin2[j];
        }
        GaussForm::new(self.dim, self.poly.reflect(), self.m, lin2, self.c)
    }

    /// conj(f(x)) for real x.
    pub fn conj(&self) -> GaussForm {
        let mut m2 = self.m;
        let mut lin2 = self.lin;
        for j in 0..2 {
            lin2[j] = lin2[j].conj();
            for k in 0..2 {
                m2[j][k] = m2[j][k].conj();
            }
        }
        GaussForm::new(self.dim, self.poly.conj(), m2, lin2, self.c.conj())
    }

    /// Pointwise product f·g.
    pub fn mul(&self, other: &GaussForm) -> GaussForm {
        let mut m2 = self.m;
        let mut lin2 = self.lin;
        for j in 0..2 {
            lin2[j] += other.lin[j];
            for k in 0..2 {
                m2[j][k] += other.m[j][k];
            }
        }
        GaussForm::new(self.dim, self.poly.mul(&other.poly), m2, lin2, self.c + other.c)
    }

    pub fn scale(&self, s: Complex64) -> GaussForm {
        GaussForm::new(self.dim, self.poly.scale(s), self.m, self.lin, self.c)
    }
}

/// Sum-of-forms helpers (a signal's exact symbolic description is a sum of
/// `GaussForm` terms, e.g. a superposition of shifted/modulated packets).
pub fn eval_forms(forms: &[GaussForm], x: &[f64]) -> Complex64 {
    forms.iter().map(|f| f.eval(x)).sum()
}

/// log|Σ forms(x)| with care for underflow: terms are combined relative to
/// the largest exponent so magnitudes near e^{−2000} stay meaningful.
pub fn log_abs_forms(forms: &[GaussForm], x: &[f64]) -> f64 {
    if forms.is_empty() {
        return f64::NEG_INFINITY;
    }
    if forms.len() == 1 {
        return forms[0].log_abs(x);
    }
    let exps: Vec<Complex64> = forms.iter().map(|f| f.exponent(x)).collect();
    let max_re = exps.iter().map(|e| e.re).fold(f64::NEG_INFINITY, f64::max);
    if !max_re.is_finite() {
        return f64::NEG_INFINITY;
    }
    let mut acc = ZERO;
    for (f, e) in forms.iter().zip(&exps) {
        acc += f.poly.eval(x) * (e - max_re).exp();
    }
    if acc.norm() == 0.0 {
        f64::NEG_INFINITY
    } else {
        max_re + acc.norm().ln()
    }
}

/// Exact symbolic generator of Theorem-1-type signals:
/// f(x) = P(x)·e^{2iπ⟨w,x⟩}·e^{−π⟨A(x−a),x−a⟩ − iπ⟨Bx,x⟩}
/// with A real symmetric positive definite and B real symmetric.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussHermiteSpec {
    pub dim: usize,
    pub poly: Poly,
    /// row-major d×d
    pub a_mat: Vec<f64>,
    pub b_mat: Vec<f64>,
    pub center: Vec<f64>,
    pub modulation: Vec<f64>,
}

impl GaussHermiteSpec {
    pub fn new(
        dim: usize,
        poly: Poly,
        a_mat: Vec<f64>,
        b_mat: Vec<f64>,
        center: Vec<f64>,
        modulation: Vec<f64>,
    ) -> Result<GaussHermiteSpec> {
        let d = dim;
        if poly.dim != d || a_mat.len() != d * d || b_mat.len() != d * d || center.len() != d || modulation.len() != d {
            return Err(precondition("GaussHermiteSpec dimension mismatch"));
        }
        for i in 0..d {
            for j in 0..d {
                if (a_mat[i * d + j] - a_mat[j * d + i]).abs() > 1e-12 {
                    return Err(precondition("matrix A must be symmetric"));
                }
                if (b_mat[i * d + j] - b_mat[j * d + i]).abs() > 1e-12 {
                    return Err(precondition("matrix B must be symmetric"));
                }
            }
        }
        let eigs = sym_eigenvalues(&a_mat, d);
        if eigs.iter().any(|&e| e <= 0.0) {
            return Err(precondition("matrix A must be positive definite"));
        }
        Ok(GaussHermiteSpec { dim, poly, a_mat, b_mat, center, modulation })
    }

    /// Pure Gaussian e^{−πx²} spec.
    pub fn gaussian(dim: usize) -> GaussHermiteSpec {
        let d = dim;
        let mut a = vec![0.0; d * d];
        for i in 0..d {
            a[i * d + i] = 1.0;
        }
        GaussHermiteSpec::new(dim, Poly::one(dim), a, vec![0.0; d * d], vec![0.0; d], vec![0.0; d]).unwrap()
    }

    /// Conversion to a single `GaussForm`:
    /// M = A + iB, l = 2πAa + 2iπw, c = −π⟨Aa,a⟩.
    pub fn to_form(&self) -> GaussForm {
        let d = self.dim;
        let pi = std::f64::consts::PI;
        let mut m = [[ZERO; 2]; 2];
        m[1][1] = Complex64::new(1.0, 0.0);
        for i in 0..d {
            for j in 0..d {
                m[i][j] = Complex64::new(self.a_mat[i * d + j], self.b_mat[i * d + j]);
            }
        }
        let mut lin = [ZERO; 2];
        let mut c = ZERO;
        for i in 0..d {
            let mut aa = 0.0;
            for j in 0..d {
                aa += self.a_mat[i * d + j] * self.center[j];
            }
            lin[i] = Complex64::new(2.0 * pi * aa, 2.0 * pi * self.modulation[i]);
            c -= pi * aa * self.center[i];
        }
        GaussForm::new(d, self.poly.clone(), m, lin, c)
    }

    pub fn degree(&self) -> u32 {
        self.poly.total_degree()
    }
}

/// Eigenvalues of a small (d ≤ 2) real symmetric matrix, ascending.
pub fn sym_eigenvalues(m: &[f64], d: usize) -> Vec<f64> {
    match d {
        1 => vec![m[0]],
        2 => {
            let tr = m[0] + m[3];
            let det = m[0] * m[3] - m[1] * m[2];
            let disc = (tr * tr / 4.0 - det).max(0.0).sqrt();
            vec![tr / 2.0 - disc, tr / 2.0 + disc]
        }
        _ => unreachable!(),
    }
}

/// JSON-facing mirror of `GaussHermiteSpec`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SpecJson {
    pub dim: usize,
    pub poly: Vec<TermJson>,
    #[serde(rename = "A")]
    pub a: Vec<Vec<f64>>,
    #[serde(rename = "B")]
    pub b: Vec<Vec<f64>>,
    #[serde(rename = "a")]
    pub center: Vec<f64>,
    #[serde(rename = "w")]
    pub modulation: Vec<f64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TermJson {
    pub k: Vec<u32>,
    pub re: f64,
    #[serde(default)]
    pub im: f64,
}

impl GaussHermiteSpec {
    pub fn from_json(j: &SpecJson) -> Result<GaussHermiteSpec> {
        let d = j.dim;
        let mut poly = Poly::zero(d);
        for t in &j.poly {
            let k0 = *t.k.first().unwrap_or(&0);
            let k1 = if d > 1 { *t.k.get(1).unwrap_or(&0) } else { 0 };
            poly.add_term((k0, k1), Complex64::new(t.re, t.im));
        }
        let flat = |m: &Vec<Vec<f64>>| -> Vec<f64> { m.iter().flatten().copied().collect() };
        GaussHermiteSpec::new(d, poly, flat(&j.a), flat(&j.b), j.center.clone(), j.modulation.clone())
    }

    pub fn to_json(&self) -> SpecJson {
        let d = self.dim;
        let poly = self
            .poly
            .terms
            .iter()
            .map(|(&(a, b), &c)| TermJson {
                k: if d > 1 { vec![a, b] } else { vec![a] },
                re: c.re,
                im: c.im,
            })
            .collect();
        let unflat = |m: &Vec<f64>| -> Vec<Vec<f64>> {
            (0..d).map(|i| m[i * d..(i + 1) * d].to_vec()).collect()
        };
        SpecJson {
            dim: d,
            poly,
            a: unflat(&self.a_mat),
            b: unflat(&self.b_mat),
            center: self.center.clone(),
            modulation: self.modulation.clone(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn quad_ft(f: &GaussForm, y: f64, sigma: f64) -> Complex64 {
        // brute-force quadrature oracle on a fine wide grid
        let n = 200_000;
        let l = 20.0;
        let dx = 2.0 * l / n as f64;
        let mut acc = ZERO;
        for k in 0..n {
            let x = -l + k as f64 * dx;
            let ph = Complex64::new(0.0, sigma * 2.0 * std::f64::consts::PI * x * y).exp();
            acc += f.eval(&[x]) * ph * dx;
        }
        acc
    }

    #[test]
    fn fourier_matches_quadrature_1d() {
        let mut poly = Poly::zero(1);
        poly.add_term((0, 0), Complex64::new(1.0, 0.5));
        poly.add_term((1, 0), Complex64::new(1.0, 0.0));
        poly.add_term((2, 0), Complex64::new(2.0, 0.0));
        let mut m = [[ZERO; 2]; 2];
        m[0][0] = Complex64::new(1.3, 0.4);
        m[1][1] = Complex64::new(1.0, 0.0);
        let f = GaussForm::new(1, poly, m, [Complex64::new(0.2, -0.1), ZERO], Complex64::new(0.15, 0.05));
        let fh = f.fourier(-1.0);
        for &y in &[0.0, 0.7, -1.3, 2.1] {
            let q = quad_ft(&f, y, -1.0);
            let s = fh.eval(&[y]);
            assert!((q - s).norm() < 1e-10, "y={y}: {q} vs {s}");
        }
    }

    #[test]
    fn gaussian_is_self_dual() {
        let g = GaussForm::standard(1);
        let gh = g.fourier(-1.0);
        for &x in &[0.0, 1.0, -2.5] {
            assert!((gh.eval(&[x]) - g.eval(&[x])).norm() < 1e-14);
        }
        // and in 2-D
        let g2 = GaussForm::standard(2);
        let gh2 = g2.fourier(-1.0);
        assert!((gh2.eval(&[0.5, -1.0]) - g2.eval(&[0.5, -1.0])).norm() < 1e-14);
    }

    #[test]
    fn fourier_inversion_round_trip() {
        let mut poly = Poly::zero(1);
        poly.add_term((3, 0), Complex64::new(0.7, -0.2));
        poly.add_term((0, 0), Complex64::new(1.0, 0.0));
        let mut m = [[ZERO; 2]; 2];
        m[0][0] = Complex64::new(0.8, -0.3);
        m[1][1] = Complex64::new(1.0, 0.0);
        let f = GaussForm::new(1, poly, m, [Complex64::new(-0.4, 0.6), ZERO], ZERO);
        let back = f.fourier(-1.0).fourier(1.0);
        for &x in &[0.0, 0.9, -1.7, 3.0] {
            assert!((back.eval(&[x]) - f.eval(&[x])).norm() < 1e-10);
        }
    }

    #[test]
    fn operator_rules_match_pointwise() {
        let spec = GaussHermiteSpec::gaussian(1);
        let f = spec.to_form();
        let t = f.translate(&[0.75]);
        assert!((t.eval(&[0.75]) - f.eval(&[0.0])).norm() < 1e-14);
        let md = f.modulate(&[2.0]);
        let expect = f.eval(&[0.5]) * Complex64::new(0.0, 2.0 * std::f64::consts::PI).exp();
        assert!((md.eval(&[0.5]) - expect).norm() < 1e-14);
        let dl = f.dilate(2.0);
        assert!((dl.eval(&[0.5]) - 2f64.sqrt() * f.eval(&[1.0])).norm() < 1e-14);
        let rf = f.translate(&[1.0]).reflect();
        assert!((rf.eval(&[-0.3]) - f.translate(&[1.0]).eval(&[0.3])).norm() < 1e-14);
    }

    #[test]
    fn ft_of_translate_is_modulation() {
        // translation ↔ phase: FT_{-1}[f(·−a)](y) = e^{−2iπay} f̂(y)
        let spec = GaussHermiteSpec::gaussian(1);
        let f = spec.to_form();
        let a = 0.5;
        let lhs = f.translate(&[a]).fourier(-1.0);
        let fh = f.fourier(-1.0);
        for &y in &[0.3, -1.1] {
            let ph = Complex64::new(0.0, -2.0 * std::f64::consts::PI * a * y).exp();
            assert!((lhs.eval(&[y]) - ph * fh.eval(&[y])).norm() < 1e-13);
        }
    }

    #[test]
    fn spec_validation() {
        assert!(GaussHermiteSpec::new(1, Poly::one(1), vec![-1.0], vec![0.0], vec![0.0], vec![0.0]).is_err());
        assert!(GaussHermiteSpec::new(
            2,
            Poly::one(2),
            vec![1.0, 0.5, 0.4, 1.0],
            vec![0.0; 4],
            vec![0.0; 2],
            vec![0.0; 2]
        )
        .is_err());
        let ok = GaussHermiteSpec::new(
            2,
            Poly::one(2),
            vec![1.0, 0.3, 0.3, 2.0],
            vec![0.0; 4],
            vec![0.0; 2],
            vec![0.0; 2],
        );
        assert!(ok.is_ok());
    }

    #[test]
    fn log_abs_deep_tail() {
        let f = GaussForm::standard(1);
        let la = f.log_abs(&[30.0]);
        assert_abs_diff_eq!(la, -std::f64::consts::PI * 900.0, epsilon = 1e-9);
    }

    #[test]
    fn spec_json_round_trip() {
        let mut poly = Poly::zero(1);
        poly.add_term((2, 0), Complex64::new(1.5, -0.25));
        let spec = GaussHermiteSpec::new(1, poly, vec![1.2], vec![0.1], vec![0.5], vec![-1.0]).unwrap();
        let j = spec.to_json();
        let s = serde_json::to_string(&j).unwrap();
        let back = GaussHermiteSpec::from_json(&serde_json::from_str(&s).unwrap()).unwrap();
        assert_eq!(back, spec);
    }
}
