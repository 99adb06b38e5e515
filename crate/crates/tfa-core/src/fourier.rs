//! Discrete approximation of the continuous Fourier transform
//! f̂(y) = ∫ f(t) e^{−2iπ⟨t,y⟩} dt on centered grids.
//!
//! With coordinate 0 at index n/2 the continuous transform factors through
//! the plain FFT as f̂(y_j) = Δ·(−1)^{n/2}·(−1)^j·FFT[(−1)^k f_k]_j per
//! axis, and lands on the dual grid (spacing 1/(2L)). Δ·n·Δ_y = 1 makes
//! the map unitary, and e^{−πx²} numerically self-dual.

use crate::gauss::eval_forms;
use crate::grid::Grid;
use crate::signal::Signal;
use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};
use std::cell::RefCell;
use std::sync::Arc;

thread_local! {
    static PLANNER: RefCell<FftPlanner<f64>> = RefCell::new(FftPlanner::new());
}

fn plan(n: usize, sigma: f64) -> Arc<dyn Fft<f64>> {
    PLANNER.with(|p| {
        let mut p = p.borrow_mut();
        if sigma < 0.0 {
            p.plan_fft_forward(n)
        } else {
            p.plan_fft_inverse(n)
        }
    })
}

/// In-place continuous-convention transform of raw row-major samples on a
/// centered grid with the given axis count/spacing. Kernel e^{2iπσ⟨t,y⟩}.
pub(crate) fn ft_in_place(buf: &mut [Complex64], dim: usize, n: usize, delta: f64, sigma: f64) {
    let half_sign = if (n / 2) % 2 == 1 { -1.0 } else { 1.0 };
    let fft = plan(n, sigma);
    match dim {
        1 => {
            for (k, v) in buf.iter_mut().enumerate() {
                if k % 2 == 1 {
                    *v = -*v;
                }
            }
            fft.process(buf);
            for (j, v) in buf.iter_mut().enumerate() {
                let sign = if j % 2 == 1 { -half_sign } else { half_sign };
                *v *= sign * delta;
            }
        }
        _ => {
            for i in 0..n {
                for j in 0..n {
                    if (i + j) % 2 == 1 {
                        buf[i * n + j] = -buf[i * n + j];
                    }
                }
            }
            for row in buf.chunks_exact_mut(n) {
                fft.process(row);
            }
            let mut col = vec![Complex64::new(0.0, 0.0); n];
            for j in 0..n {
                for i in 0..n {
                    col[i] = buf[i * n + j];
                }
                fft.process(&mut col);
                for i in 0..n {
                    buf[i * n + j] = col[i];
                }
            }
            for i in 0..n {
                for j in 0..n {
                    let mut sign = half_sign * half_sign;
                    if (i + j) % 2 == 1 {
                        sign = -sign;
                    }
                    buf[i * n + j] *= sign * delta * delta;
                }
            }
        }
    }
}

/// Continuous-convention transform with kernel e^{2iπσ⟨t,y⟩}; the paper's
/// forward transform is σ = −1, its inverse σ = +1.
pub fn fourier_signed(s: &Signal, sigma: f64) -> Signal {
    let grid = s.grid;
    let n = grid.points_per_axis;
    let delta = grid.spacing();
    let mut buf: Vec<Complex64> = s.samples.clone();
    ft_in_place(&mut buf, grid.dim, n, delta, sigma);
    Signal {
        grid: grid.dual(),
        samples: buf,
        forms: s.forms.as_ref().map(|fs| fs.iter().map(|f| f.fourier(sigma)).collect()),
        lossy: s.lossy,
    }
}

/// The paper's Fourier transform f̂(y) = ∫ f(t) e^{−2iπ⟨t,y⟩} dt.
pub fn fourier(s: &Signal) -> Signal {
    fourier_signed(s, -1.0)
}

/// Inverse transform (kernel e^{+2iπ⟨t,y⟩}).
pub fn inverse_fourier(s: &Signal) -> Signal {
    fourier_signed(s, 1.0)
}

/// Exact transform of a spec-backed signal: the symbolic forms are
/// transformed in closed form and re-evaluated on the dual grid. Returns
/// `None` when no provenance is available.
pub fn fourier_exact(s: &Signal) -> Option<Signal> {
    let fs = s.forms.as_ref()?;
    let forms: Vec<_> = fs.iter().map(|f| f.fourier(-1.0)).collect();
    let dual = s.grid.dual();
    let samples = (0..dual.total_points()).map(|k| eval_forms(&forms, &dual.coords(k))).collect();
    Some(Signal { grid: dual, samples, forms: Some(forms), lossy: s.lossy })
}

/// Gaussian mollification g = e^{−π‖x‖²} ∗ f, computed as
/// forward transform, multiply by e^{−π‖y‖²}, inverse transform.
pub fn gaussian_mollify(s: &Signal) -> Signal {
    let mut hat = fourier(s);
    for k in 0..hat.grid.total_points() {
        let y = hat.grid.coords(k);
        let r2: f64 = y.iter().map(|t| t * t).sum();
        hat.samples[k] *= (-std::f64::consts::PI * r2).exp();
    }
    // keep the exact provenance in sync: ĝ = f̂·e^{−π‖y‖²}
    hat.forms = s.forms.as_ref().map(|fs| {
        fs.iter()
            .map(|f| f.fourier(-1.0).mul(&crate::gauss::GaussForm::standard(s.grid.dim)))
            .collect()
    });
    inverse_fourier(&hat)
}

/// Samples of |f̂| with exact tails when provenance exists, FFT otherwise.
/// Returns (dual grid, log|f̂| per lattice point).
pub fn log_abs_fourier(s: &Signal) -> (Grid, Vec<f64>) {
    let dual = s.grid.dual();
    match &s.forms {
        Some(fs) => {
            let forms: Vec<_> = fs.iter().map(|f| f.fourier(-1.0)).collect();
            let logs = (0..dual.total_points())
                .map(|k| crate::gauss::log_abs_forms(&forms, &dual.coords(k)))
                .collect();
            (dual, logs)
        }
        None => {
            let hat = fourier(s);
            let logs = hat
                .samples
                .iter()
                .map(|v| {
                    let n = v.norm();
                    if n == 0.0 {
                        f64::NEG_INFINITY
                    } else {
                        n.ln()
                    }
                })
                .collect();
            (dual, logs)
        }
    }
}
