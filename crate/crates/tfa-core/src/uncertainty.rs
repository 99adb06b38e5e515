//! Heisenberg-type uncertainty evaluators: the sharp Fourier inequality,
//! its ambiguity-surface analogue, and the full covariance analysis of the
//! density |A(u,v)|² (gap matrix 4π²V_X − V_Y⁻¹, determinant and trace
//! bounds).

use crate::error::{numerical, precondition, Result};
use crate::fourier::fourier;
use crate::gauss::sym_eigenvalues;
use crate::signal::Signal;
use crate::sum::pairwise_sum;
use crate::surface::Surface;
use crate::transforms::ambiguity;
use serde::Serialize;

const FOUR_PI_SQ: f64 = 4.0 * std::f64::consts::PI * std::f64::consts::PI;

/// One sharp uncertainty inequality: product of two second-moment factors
/// against the theorem's lower bound, along a single axis.
#[derive(Debug, Clone, Serialize)]
pub struct HeisenbergReport {
    pub factor1: f64,
    pub factor2: f64,
    pub product: f64,
    pub bound: f64,
    pub ratio: f64,
    pub axis: usize,
    pub a: f64,
    pub b: f64,
}

/// Second moment Σ (c_i − center)²·w(k)·weight over a grid, with the
/// optional center defaulting to the weighted mean.
fn axis_moment(
    grid: &crate::grid::Grid,
    weights: &[f64],
    axis: usize,
    center: Option<f64>,
) -> (f64, f64) {
    let w = grid.cell_weight();
    let mass: Vec<f64> = weights.to_vec();
    let total = pairwise_sum(&mass) * w;
    let center = center.unwrap_or_else(|| {
        let m1: Vec<f64> = (0..weights.len())
            .map(|k| grid.coords(k)[axis] * weights[k])
            .collect();
        pairwise_sum(&m1) * w / total
    });
    let m2: Vec<f64> = (0..weights.len())
        .map(|k| {
            let t = grid.coords(k)[axis] - center;
            t * t * weights[k]
        })
        .collect();
    (pairwise_sum(&m2) * w, center)
}

/// Sharp Fourier-side inequality along axis `i`:
/// ∫(x_i−a)²|f|² · ∫(ξ_i−b)²|f̂|² ≥ ‖f‖⁴/(16π²). Omitted centers default
/// to the minimizing ones (the density means).
pub fn heisenberg_fourier(
    f: &Signal,
    i: usize,
    a: Option<f64>,
    b: Option<f64>,
) -> Result<HeisenbergReport> {
    if i >= f.grid.dim {
        return Err(precondition("axis out of range"));
    }
    let norm = f.l2_norm();
    if norm == 0.0 {
        return Err(precondition("heisenberg_fourier requires a nonzero signal"));
    }
    let hat = fourier(f);
    let wf: Vec<f64> = f.samples.iter().map(|z| z.norm_sqr()).collect();
    let wh: Vec<f64> = hat.samples.iter().map(|z| z.norm_sqr()).collect();
    let (factor1, a) = axis_moment(&f.grid, &wf, i, a);
    let (factor2, b) = axis_moment(&hat.grid, &wh, i, b);
    let bound = norm.powi(4) / (16.0 * std::f64::consts::PI.powi(2));
    let product = factor1 * factor2;
    Ok(HeisenbergReport { factor1, factor2, product, bound, ratio: product / bound, axis: i, a, b })
}

/// Moments of |A(u,v)|² along one product-lattice axis (x side when
/// `on_x`, y side otherwise).
fn surface_axis_moment(
    surf: &Surface,
    density: &[f64],
    axis: usize,
    on_x: bool,
    center: Option<f64>,
) -> (f64, f64) {
    let w = surf.x_grid.cell_weight() * surf.y_grid.cell_weight();
    let ny = surf.y_grid.total_points();
    let total = pairwise_sum(density) * w;
    let coord = |k: usize| -> f64 {
        if on_x {
            surf.x_grid.coords(k / ny)[axis]
        } else {
            surf.y_grid.coords(k % ny)[axis]
        }
    };
    let center = center.unwrap_or_else(|| {
        let m1: Vec<f64> = (0..density.len()).map(|k| coord(k) * density[k]).collect();
        pairwise_sum(&m1) * w / total
    });
    let m2: Vec<f64> = (0..density.len())
        .map(|k| {
            let t = coord(k) - center;
            t * t * density[k]
        })
        .collect();
    (pairwise_sum(&m2) * w, center)
}

/// Sharp ambiguity-surface inequality along axis `i`:
/// ∫∫(x_i−a)²|A|² · ∫∫(y_i−b)²|A|² ≥ ‖u‖⁴‖v‖⁴/(4π²).
pub fn heisenberg_ambiguity(
    u: &Signal,
    v: &Signal,
    i: usize,
    a: Option<f64>,
    b: Option<f64>,
) -> Result<HeisenbergReport> {
    if i >= u.grid.dim {
        return Err(precondition("axis out of range"));
    }
    let nu = u.l2_norm();
    let nv = v.l2_norm();
    if nu == 0.0 || nv == 0.0 {
        return Err(precondition("heisenberg_ambiguity requires nonzero signals"));
    }
    let surf = ambiguity(u, v)?;
    let density: Vec<f64> = surf.samples.iter().map(|z| z.norm_sqr()).collect();
    let (factor1, a) = surface_axis_moment(&surf, &density, i, true, a);
    let (factor2, b) = surface_axis_moment(&surf, &density, i, false, b);
    let bound = (nu * nv).powi(4) / FOUR_PI_SQ;
    let product = factor1 * factor2;
    Ok(HeisenbergReport { factor1, factor2, product, bound, ratio: product / bound, axis: i, a, b })
}

/// Full second-moment analysis of the normalized density
/// |A(u,v)|²/(‖u‖‖v‖)². Matrices are row-major d×d.
#[derive(Debug, Clone, Serialize)]
pub struct CovarianceReport {
    pub dim: usize,
    pub mean_x: Vec<f64>,
    pub mean_y: Vec<f64>,
    pub v_x: Vec<f64>,
    pub v_y: Vec<f64>,
    pub cross_cov: Vec<f64>,
    /// 4π²V_X − V_Y⁻¹
    pub gap_matrix: Vec<f64>,
    pub min_eigenvalue: f64,
    /// det(V_X)·det(V_Y)
    pub det_product: f64,
    pub trace_x: f64,
    pub trace_y: f64,
    /// lower bound d²/(4π²) for trace_x·trace_y
    pub trace_bound: f64,
    /// |Σ|A|²·w − (‖u‖‖v‖)²| before normalization
    pub mass_error: f64,
    pub correlated: bool,
    pub semidefinite: bool,
    pub equality_case: bool,
}

fn det_small(m: &[f64], d: usize) -> f64 {
    match d {
        1 => m[0],
        _ => m[0] * m[3] - m[1] * m[2],
    }
}

fn inv_small(m: &[f64], d: usize) -> Vec<f64> {
    match d {
        1 => vec![1.0 / m[0]],
        _ => {
            let det = det_small(m, 2);
            vec![m[3] / det, -m[1] / det, -m[2] / det, m[0] / det]
        }
    }
}

/// Means, covariance matrices, cross-covariance and the gap matrix
/// 4π²V_X − V_Y⁻¹ of the density |A(u,v)|², with the determinant and trace
/// diagnostics. Fails on zero input and on numerically singular V_Y.
pub fn covariance_report(u: &Signal, v: &Signal) -> Result<CovarianceReport> {
    let nu = u.l2_norm();
    let nv = v.l2_norm();
    if nu == 0.0 || nv == 0.0 {
        return Err(precondition("covariance_report requires nonzero signals"));
    }
    let d = u.grid.dim;
    let surf = ambiguity(u, v)?;
    let density: Vec<f64> = surf.samples.iter().map(|z| z.norm_sqr()).collect();
    let w = surf.x_grid.cell_weight() * surf.y_grid.cell_weight();
    let ny = surf.y_grid.total_points();
    let mass = pairwise_sum(&density) * w;
    if !mass.is_finite() || mass == 0.0 {
        return Err(numerical("overflow or underflow in |A(u,v)|² mass"));
    }
    let mass_error = (mass - (nu * nv).powi(2)).abs();

    let moment = |fx: &dyn Fn(&[f64], &[f64]) -> f64| -> f64 {
        let vals: Vec<f64> = (0..density.len())
            .map(|k| {
                let x = surf.x_grid.coords(k / ny);
                let y = surf.y_grid.coords(k % ny);
                fx(&x, &y) * density[k]
            })
            .collect();
        pairwise_sum(&vals) * w / mass
    };

    let mean_x: Vec<f64> = (0..d).map(|i| moment(&|x, _| x[i])).collect();
    let mean_y: Vec<f64> = (0..d).map(|i| moment(&|_, y| y[i])).collect();
    let mut v_x = vec![0.0; d * d];
    let mut v_y = vec![0.0; d * d];
    let mut cross = vec![0.0; d * d];
    for i in 0..d {
        for j in 0..d {
            v_x[i * d + j] = moment(&|x, _| (x[i] - mean_x[i]) * (x[j] - mean_x[j]));
            v_y[i * d + j] = moment(&|_, y| (y[i] - mean_y[i]) * (y[j] - mean_y[j]));
            cross[i * d + j] = moment(&|x, y| (x[i] - mean_x[i]) * (y[j] - mean_y[j]));
        }
    }

    let eig_y = sym_eigenvalues(&v_y, d);
    let max_eig = eig_y.iter().cloned().fold(0.0, f64::max);
    if eig_y[0] < 1e-12 * max_eig {
        return Err(numerical("V_Y is numerically singular; cannot form V_Y^{-1}"));
    }
    let v_y_inv = inv_small(&v_y, d);
    let gap: Vec<f64> =
        (0..d * d).map(|k| FOUR_PI_SQ * v_x[k] - v_y_inv[k]).collect();
    let min_eigenvalue = sym_eigenvalues(&gap, d)[0];
    let det_product = det_small(&v_x, d) * det_small(&v_y, d);
    let trace_x: f64 = (0..d).map(|i| v_x[i * d + i]).sum();
    let trace_y: f64 = (0..d).map(|i| v_y[i * d + i]).sum();
    let gap_max = gap.iter().map(|t| t.abs()).fold(0.0, f64::max);
    let cross_max = cross.iter().map(|t| t.abs()).fold(0.0, f64::max);

    Ok(CovarianceReport {
        dim: d,
        mean_x,
        mean_y,
        v_x,
        v_y,
        cross_cov: cross,
        gap_matrix: gap,
        min_eigenvalue,
        det_product,
        trace_x,
        trace_y,
        trace_bound: (d * d) as f64 / FOUR_PI_SQ,
        mass_error,
        correlated: cross_max > 1e-5,
        semidefinite: min_eigenvalue > -1e-5 * (1.0 + gap_max),
        equality_case: gap_max < 1e-4,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::Grid;
    use crate::hermite::{h1d, hermite_function, HermiteIndex};
    use approx::assert_abs_diff_eq;

    const PI: f64 = std::f64::consts::PI;

    fn default_grid() -> Grid {
        Grid::new(1, 8.0, 256).unwrap()
    }

    #[test]
    fn fourier_gaussian_is_sharp() {
        let h0 = h1d(0, default_grid());
        let r = heisenberg_fourier(&h0, 0, Some(0.0), Some(0.0)).unwrap();
        assert_abs_diff_eq!(r.factor1, 1.0 / (4.0 * PI), epsilon = 1e-10);
        assert_abs_diff_eq!(r.factor2, 1.0 / (4.0 * PI), epsilon = 1e-10);
        assert_abs_diff_eq!(r.ratio, 1.0, epsilon = 1e-8);
    }

    #[test]
    fn fourier_h1_ratio_nine() {
        let h1 = h1d(1, default_grid());
        let r = heisenberg_fourier(&h1, 0, None, None).unwrap();
        assert_abs_diff_eq!(r.factor1, 3.0 / (4.0 * PI), epsilon = 1e-9);
        assert_abs_diff_eq!(r.ratio, 9.0, epsilon = 1e-6);
    }

    #[test]
    fn fourier_scale_invariance_and_zero() {
        let g = default_grid();
        let h1 = h1d(1, g);
        let r1 = heisenberg_fourier(&h1, 0, None, None).unwrap();
        let r2 = heisenberg_fourier(&h1.scale(num_complex::Complex64::new(2.0, 1.0)), 0, None, None)
            .unwrap();
        assert_abs_diff_eq!(r1.ratio, r2.ratio, epsilon = 1e-12);
        assert!(heisenberg_fourier(&Signal::zeros(g), 0, None, None).is_err());
        assert!(heisenberg_fourier(&h1, 1, None, None).is_err());
    }

    #[test]
    fn fourier_offcenter_exceeds_centered() {
        let h0 = h1d(0, default_grid());
        let centered = heisenberg_fourier(&h0, 0, None, None).unwrap();
        let shifted = heisenberg_fourier(&h0, 0, Some(1.0), None).unwrap();
        assert!(shifted.ratio > centered.ratio + 1.0);
    }

    #[test]
    fn ambiguity_gaussian_is_sharp() {
        let h0 = h1d(0, default_grid());
        let r = heisenberg_ambiguity(&h0, &h0, 0, Some(0.0), Some(0.0)).unwrap();
        assert_abs_diff_eq!(r.factor1, 1.0 / (2.0 * PI), epsilon = 1e-8);
        assert_abs_diff_eq!(r.factor2, 1.0 / (2.0 * PI), epsilon = 1e-8);
        assert_abs_diff_eq!(r.ratio, 1.0, epsilon = 1e-5);
    }

    #[test]
    fn ambiguity_h1_strict_and_swap_symmetric() {
        let g = default_grid();
        let (u, v) = (h1d(1, g), h1d(1, g));
        let r = heisenberg_ambiguity(&u, &v, 0, None, None).unwrap();
        assert!(r.ratio > 1.0 + 1e-3, "ratio {}", r.ratio);
        let m = h1d(2, g);
        let a = heisenberg_ambiguity(&u, &m, 0, None, None).unwrap();
        let b = heisenberg_ambiguity(&m, &u, 0, None, None).unwrap();
        assert_abs_diff_eq!(a.ratio, b.ratio, epsilon = 1e-10);
    }

    #[test]
    fn covariance_gaussian_equality() {
        let h0 = h1d(0, default_grid());
        let r = covariance_report(&h0, &h0).unwrap();
        assert_abs_diff_eq!(r.v_x[0], 1.0 / (2.0 * PI), epsilon = 1e-8);
        assert_abs_diff_eq!(r.v_y[0], 1.0 / (2.0 * PI), epsilon = 1e-8);
        assert!(r.cross_cov[0].abs() < 1e-6);
        assert!(r.gap_matrix[0].abs() < 1e-4);
        assert!(r.equality_case && r.semidefinite && !r.correlated);
        assert!(r.mass_error < 1e-7);
        assert_abs_diff_eq!(r.det_product, 1.0 / FOUR_PI_SQ, epsilon = 1e-8);
    }

    #[test]
    fn covariance_h1_strictly_positive_gap() {
        let h1 = h1d(1, default_grid());
        let r = covariance_report(&h1, &h1).unwrap();
        assert!(r.min_eigenvalue > 1e-3, "min eig {}", r.min_eigenvalue);
        assert!(!r.equality_case);
        assert!(r.det_product >= (1.0 / FOUR_PI_SQ.powi(2)) * (1.0 - 1e-4));
        assert!(r.trace_x * r.trace_y >= r.trace_bound * (1.0 - 1e-4));
    }

    #[test]
    fn covariance_dim2_gaussian() {
        // n=48 pushes the dual extent to 3 so the y-moment truncation of
        // the Gaussian density stays below the 1e-4 gap tolerance
        let g = Grid::new(2, 4.0, 48).unwrap();
        let h0 = hermite_function(&HermiteIndex::new(vec![0, 0]).unwrap(), g).unwrap();
        let r = covariance_report(&h0, &h0).unwrap();
        let cmax = r.cross_cov.iter().map(|t| t.abs()).fold(0.0, f64::max);
        let gmax = r.gap_matrix.iter().map(|t| t.abs()).fold(0.0, f64::max);
        assert!(cmax < 1e-6, "cross {cmax}");
        assert!(gmax < 1e-4, "gap {gmax}");
        // det V_X = det V_Y = (2π)^{-2}, so the product is (4π²)^{-2}
        assert_abs_diff_eq!(r.det_product, 1.0 / FOUR_PI_SQ.powi(2), epsilon = 1e-6);
        assert!(r.trace_x * r.trace_y >= r.trace_bound * (1.0 - 1e-4));
    }

    #[test]
    fn covariance_zero_rejected() {
        let g = default_grid();
        assert!(covariance_report(&Signal::zeros(g), &h1d(0, g)).is_err());
    }
}
