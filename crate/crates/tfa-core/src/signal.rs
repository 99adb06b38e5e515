//! Sampled complex signals on a `Grid`, with L² bookkeeping, elementary
//! unitary operators, and optional exact symbolic provenance.

use crate::error::{precondition, Result};
use crate::gauss::{eval_forms, GaussForm, GaussHermiteSpec};
use crate::grid::Grid;
use crate::sum::{pairwise_sum, pairwise_sum_c};
use num_complex::Complex64;

/// Shift / modulation / dilation parameters of the covariance operators
/// S(a), M(ω), D_λ.
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorParams {
    pub shift: Vec<f64>,
    pub modulation: Vec<f64>,
    pub dilation: f64,
}

impl OperatorParams {
    pub fn identity(dim: usize) -> OperatorParams {
        OperatorParams { shift: vec![0.0; dim], modulation: vec![0.0; dim], dilation: 1.0 }
    }
}

/// Complex samples of a function on a grid (row-major axis order).
///
/// `forms`, when present, is the exact symbolic description of the signal
/// as a sum of polynomial-Gaussian terms; operators keep it in sync so
/// that tail values below the FFT noise floor can be evaluated exactly.
#[derive(Debug, Clone)]
pub struct Signal {
    pub grid: Grid,
    pub samples: Vec<Complex64>,
    pub forms: Option<Vec<GaussForm>>,
    /// set when the samples passed through a lossy (interpolating) resample
    pub lossy: bool,
}

impl Signal {
    pub fn from_samples(grid: Grid, samples: Vec<Complex64>) -> Result<Signal> {
        if samples.len() != grid.total_points() {
            return Err(precondition(format!(
                "sample count {} does not match grid ({} points)",
                samples.len(),
                grid.total_points()
            )));
        }
        if samples.iter().any(|s| !s.re.is_finite() || !s.im.is_finite()) {
            return Err(precondition("samples must be finite"));
        }
        Ok(Signal { grid, samples, forms: None, lossy: false })
    }

    pub fn zeros(grid: Grid) -> Signal {
        Signal { samples: vec![Complex64::new(0.0, 0.0); grid.total_points()], grid, forms: None, lossy: false }
    }

    pub fn from_fn(grid: Grid, f: impl Fn(&[f64]) -> Complex64) -> Signal {
        let samples = (0..grid.total_points()).map(|k| f(&grid.coords(k))).collect();
        Signal { grid, samples, forms: None, lossy: false }
    }

    /// Strips symbolic provenance (used by consumers that must work from
    /// samples alone, e.g. the detector).
    pub fn raw(&self) -> Signal {
        Signal { grid: self.grid, samples: self.samples.clone(), forms: None, lossy: self.lossy }
    }

    pub fn with_forms(mut self, forms: Vec<GaussForm>) -> Signal {
        self.forms = Some(forms);
        self
    }

    pub fn is_zero(&self) -> bool {
        self.samples.iter().all(|s| s.norm() == 0.0)
    }

    pub fn l2_norm(&self) -> f64 {
        let sq: Vec<f64> = self.samples.iter().map(|s| s.norm_sqr()).collect();
        (self.grid.cell_weight() * pairwise_sum(&sq)).sqrt()
    }

    /// ⟨s1, s2⟩ = Δ^d Σ s1·conj(s2) — conjugate-linear in the second
    /// argument, matching the conjugation of v in A(u,v).
    pub fn inner_product(&self, other: &Signal) -> Result<Complex64> {
        if self.grid != other.grid {
            return Err(precondition("inner_product requires matching grids"));
        }
        let prods: Vec<Complex64> =
            self.samples.iter().zip(&other.samples).map(|(a, b)| a * b.conj()).collect();
        Ok(self.grid.cell_weight() * pairwise_sum_c(&prods))
    }

    /// Δ^d Σ Π_j (x_j − c_j)^{k_j} |s(x)|², total order ≤ 4.
    pub fn moment(&self, multi_index: &[u32], center: &[f64]) -> Result<f64> {
        if multi_index.len() != self.grid.dim || center.len() != self.grid.dim {
            return Err(precondition("moment multi-index/center dimension mismatch"));
        }
        if multi_index.iter().sum::<u32>() > 4 {
            return Err(precondition("moment total order must be <= 4"));
        }
        let terms: Vec<f64> = (0..self.grid.total_points())
            .map(|k| {
                let x = self.grid.coords(k);
                let mut w = self.samples[k].norm_sqr();
                for j in 0..self.grid.dim {
                    w *= (x[j] - center[j]).powi(multi_index[j] as i32);
                }
                w
            })
            .collect();
        Ok(self.grid.cell_weight() * pairwise_sum(&terms))
    }

    fn permute(&self, map: impl Fn(&[usize]) -> Vec<usize>) -> Vec<Complex64> {
        let n = self.grid.points_per_axis;
        let mut out = vec![Complex64::new(0.0, 0.0); self.samples.len()];
        match self.grid.dim {
            1 => {
                for k in 0..n {
                    out[k] = self.samples[map(&[k])[0]];
                }
            }
            _ => {
                for i in 0..n {
                    for j in 0..n {
                        let src = map(&[i, j]);
                        out[i * n + j] = self.samples[src[0] * n + src[1]];
                    }
                }
            }
        }
        out
    }

    /// S(a)u(t) = u(t−a); `a` must be an on-lattice shift. Exact cyclic
    /// sample permutation.
    pub fn translate(&self, a: &[f64]) -> Result<Signal> {
        let n = self.grid.points_per_axis as i64;
        let d = self.grid.spacing();
        let mut steps = vec![0i64; self.grid.dim];
        for j in 0..self.grid.dim {
            steps[j] = self.grid.lattice_steps(a[j], d)?;
        }
        let samples = self.permute(|idx| {
            idx.iter()
                .enumerate()
                .map(|(j, &k)| (((k as i64 - steps[j]) % n + n) % n) as usize)
                .collect()
        });
        Ok(Signal {
            grid: self.grid,
            samples,
            forms: self.forms.as_ref().map(|fs| fs.iter().map(|f| f.translate(a)).collect()),
            lossy: self.lossy,
        })
    }

    /// M(ω)u(t) = e^{2iπ⟨ω,t⟩}u(t). Exact pointwise multiplication.
    pub fn modulate(&self, omega: &[f64]) -> Signal {
        let samples = (0..self.grid.total_points())
            .map(|k| {
                let x = self.grid.coords(k);
                let phase: f64 = omega.iter().zip(&x).map(|(w, t)| w * t).sum();
                self.samples[k] * Complex64::new(0.0, 2.0 * std::f64::consts::PI * phase).exp()
            })
            .collect();
        Signal {
            grid: self.grid,
            samples,
            forms: self.forms.as_ref().map(|fs| fs.iter().map(|f| f.modulate(omega)).collect()),
            lossy: self.lossy,
        }
    }

    /// Zu(t) = u(−t). Exact permutation k ↦ n−k mod n per axis.
    pub fn reflect(&self) -> Signal {
        let n = self.grid.points_per_axis;
        let samples = self.permute(|idx| idx.iter().map(|&k| (n - k) % n).collect());
        Signal {
            grid: self.grid,
            samples,
            forms: self.forms.as_ref().map(|fs| fs.iter().map(|f| f.reflect()).collect()),
            lossy: self.lossy,
        }
    }

    /// D_λu(t) = λ^{d/2} u(λt). Exact re-evaluation for spec-backed
    /// signals; linear interpolation (lossy) otherwise.
    pub fn dilate(&self, lambda: f64) -> Result<Signal> {
        if !(lambda > 0.0) {
            return Err(precondition("dilation factor must be positive"));
        }
        if let Some(fs) = &self.forms {
            let forms: Vec<GaussForm> = fs.iter().map(|f| f.dilate(lambda)).collect();
            let samples =
                (0..self.grid.total_points()).map(|k| eval_forms(&forms, &self.grid.coords(k))).collect();
            return Ok(Signal { grid: self.grid, samples, forms: Some(forms), lossy: self.lossy });
        }
        let amp = lambda.powf(self.grid.dim as f64 / 2.0);
        let samples = (0..self.grid.total_points())
            .map(|k| {
                let x = self.grid.coords(k);
                let xs: Vec<f64> = x.iter().map(|t| lambda * t).collect();
                amp * self.interp(&xs)
            })
            .collect();
        Ok(Signal { grid: self.grid, samples, forms: None, lossy: true })
    }

    /// Re-evaluates the signal on another grid: exact for spec-backed
    /// signals, multilinear interpolation (lossy) otherwise.
    pub fn resample(&self, grid: Grid) -> Result<Signal> {
        if grid.dim != self.grid.dim {
            return Err(precondition("resample requires matching dimension"));
        }
        if let Some(fs) = &self.forms {
            let samples = (0..grid.total_points()).map(|k| eval_forms(fs, &grid.coords(k))).collect();
            return Ok(Signal { grid, samples, forms: Some(fs.clone()), lossy: self.lossy });
        }
        let samples = (0..grid.total_points()).map(|k| self.interp(&grid.coords(k))).collect();
        Ok(Signal { grid, samples, forms: None, lossy: true })
    }

    /// Multilinear interpolation; zero outside the box.
    fn interp(&self, x: &[f64]) -> Complex64 {
        let n = self.grid.points_per_axis;
        let d = self.grid.spacing();
        let l = self.grid.half_extent;
        let mut base = [0usize; 2];
        let mut frac = [0.0f64; 2];
        for j in 0..self.grid.dim {
            let t = (x[j] + l) / d;
            if t < 0.0 || t > (n - 1) as f64 {
                return Complex64::new(0.0, 0.0);
            }
            let f = t.floor();
            base[j] = f as usize;
            frac[j] = t - f;
        }
        match self.grid.dim {
            1 => {
                let k = base[0];
                let a = self.samples[k];
                let b = if k + 1 < n { self.samples[k + 1] } else { Complex64::new(0.0, 0.0) };
                a * (1.0 - frac[0]) + b * frac[0]
            }
            _ => {
                let at = |i: usize, j: usize| -> Complex64 {
                    if i < n && j < n {
                        self.samples[i * n + j]
                    } else {
                        Complex64::new(0.0, 0.0)
                    }
                };
                let (i, j) = (base[0], base[1]);
                let (fi, fj) = (frac[0], frac[1]);
                at(i, j) * (1.0 - fi) * (1.0 - fj)
                    + at(i + 1, j) * fi * (1.0 - fj)
                    + at(i, j + 1) * (1.0 - fi) * fj
                    + at(i + 1, j + 1) * fi * fj
            }
        }
    }

    pub fn conj(&self) -> Signal {
        Signal {
            grid: self.grid,
            samples: self.samples.iter().map(|s| s.conj()).collect(),
            forms: self.forms.as_ref().map(|fs| fs.iter().map(|f| f.conj()).collect()),
            lossy: self.lossy,
        }
    }

    pub fn scale(&self, alpha: Complex64) -> Signal {
        Signal {
            grid: self.grid,
            samples: self.samples.iter().map(|s| s * alpha).collect(),
            forms: self.forms.as_ref().map(|fs| fs.iter().map(|f| f.scale(alpha)).collect()),
            lossy: self.lossy,
        }
    }

    pub fn add(&self, other: &Signal) -> Result<Signal> {
        if self.grid != other.grid {
            return Err(precondition("add requires matching grids"));
        }
        let samples = self.samples.iter().zip(&other.samples).map(|(a, b)| a + b).collect();
        let forms = match (&self.forms, &other.forms) {
            (Some(a), Some(b)) => Some(a.iter().chain(b.iter()).cloned().collect()),
            _ => None,
        };
        Ok(Signal { grid: self.grid, samples, forms, lossy: self.lossy || other.lossy })
    }
}

/// Pointwise evaluation of a `GaussHermiteSpec` on a grid, with the exact
/// symbolic form attached as provenance.
pub fn sample_spec(spec: &GaussHermiteSpec, grid: Grid) -> Result<Signal> {
    if spec.dim != grid.dim {
        return Err(precondition("spec dimension does not match grid"));
    }
    let form = spec.to_form();
    let samples = (0..grid.total_points()).map(|k| form.eval(&grid.coords(k))).collect();
    Ok(Signal { grid, samples, forms: Some(vec![form]), lossy: false })
}
