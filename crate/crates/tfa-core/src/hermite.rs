//! Orthonormal Hermite basis in the π-normalized Fourier convention:
//! h_m(x) = c_m·H_m(√(2π)x)·e^{−πx²}, c_m = 2^{1/4}/√(2^m·m!),
//! so that ⟨h_m, h_k⟩ = δ_{mk} and ĥ_m = (−i)^m h_m.

use crate::error::{precondition, Result};
use crate::gauss::GaussForm;
use crate::grid::Grid;
use crate::poly::Poly;
use crate::signal::Signal;
use num_complex::Complex64;
use std::collections::BTreeMap;

/// Guard: beyond this order the recurrence values at |x| ≤ 8 leave the
/// comfortable double-precision range.
pub const MAX_ORDER: u32 = 32;

/// Multi-index of a tensor-product Hermite function.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct HermiteIndex {
    pub k: Vec<u32>,
}

impl HermiteIndex {
    pub fn new(k: Vec<u32>) -> Result<HermiteIndex> {
        let idx = HermiteIndex { k };
        if idx.order() > MAX_ORDER {
            return Err(precondition(format!(
                "Hermite order {} exceeds the overflow guard {MAX_ORDER}",
                idx.order()
            )));
        }
        Ok(idx)
    }

    pub fn order(&self) -> u32 {
        self.k.iter().sum()
    }
}

/// Values of h_0..h_max at one point, by the normalized three-term
/// recurrence ψ_{m+1} = s√(2/(m+1))ψ_m − √(m/(m+1))ψ_{m−1}, s = √(2π)x.
fn axis_values(max: u32, x: f64) -> Vec<f64> {
    let s = (2.0 * std::f64::consts::PI).sqrt() * x;
    let gauss = 2f64.powf(0.25) * (-std::f64::consts::PI * x * x).exp();
    let mut out = Vec::with_capacity(max as usize + 1);
    let mut prev = 1.0f64;
    out.push(prev * gauss);
    if max == 0 {
        return out;
    }
    let mut cur = 2f64.sqrt() * s;
    out.push(cur * gauss);
    for m in 1..max {
        let mf = m as f64;
        let next = s * (2.0 / (mf + 1.0)).sqrt() * cur - (mf / (mf + 1.0)).sqrt() * prev;
        prev = cur;
        cur = next;
        out.push(cur * gauss);
    }
    out
}

/// Monomial coefficients of c_m·H_m(√(2π)x) (the polynomial factor of h_m).
pub fn hermite_poly_coeffs(m: u32) -> Vec<f64> {
    // physicists' recurrence H_{k+1}(t) = 2t·H_k − 2k·H_{k−1} in t = √(2π)x
    let mut h_prev = vec![1.0f64];
    let mut h_cur = vec![0.0, 2.0];
    let h = if m == 0 {
        h_prev.clone()
    } else {
        for k in 1..m {
            let mut next = vec![0.0; k as usize + 2];
            for (i, &c) in h_cur.iter().enumerate() {
                next[i + 1] += 2.0 * c;
            }
            for (i, &c) in h_prev.iter().enumerate() {
                next[i] -= 2.0 * k as f64 * c;
            }
            h_prev = h_cur;
            h_cur = next;
        }
        h_cur.clone()
    };
    let mut cm = 2f64.powf(0.25);
    for k in 1..=m {
        cm /= (2.0 * k as f64).sqrt();
    }
    let root = (2.0 * std::f64::consts::PI).sqrt();
    h.iter().enumerate().map(|(k, &c)| c * cm * root.powi(k as i32)).collect()
}

/// The exact symbolic form of the tensor-product Hermite function.
pub fn hermite_form(idx: &HermiteIndex) -> GaussForm {
    let dim = idx.k.len();
    let mut poly = Poly::one(dim);
    for (axis, &m) in idx.k.iter().enumerate() {
        let coeffs = hermite_poly_coeffs(m);
        let mut p = Poly::zero(dim);
        for (k, &c) in coeffs.iter().enumerate() {
            let alpha = if axis == 0 { (k as u32, 0) } else { (0, k as u32) };
            p.add_term(alpha, Complex64::new(c, 0.0));
        }
        poly = poly.mul(&p);
    }
    let mut f = GaussForm::standard(dim);
    f.poly = poly;
    f
}

/// Sampled tensor-product Hermite function h_k on the grid, evaluated by
/// the stable recurrence, with exact provenance attached.
pub fn hermite_function(idx: &HermiteIndex, grid: Grid) -> Result<Signal> {
    if idx.k.len() != grid.dim {
        return Err(precondition("Hermite index dimension does not match grid"));
    }
    if idx.order() > MAX_ORDER {
        return Err(precondition("Hermite order exceeds overflow guard"));
    }
    let n = grid.points_per_axis;
    // per-axis value tables
    let tables: Vec<Vec<f64>> = idx
        .k
        .iter()
        .map(|&m| {
            (0..n)
                .map(|j| axis_values(m, grid.axis_coord(j))[m as usize])
                .collect()
        })
        .collect();
    let samples = (0..grid.total_points())
        .map(|flat| match grid.dim {
            1 => Complex64::new(tables[0][flat], 0.0),
            _ => Complex64::new(tables[0][flat / n] * tables[1][flat % n], 0.0),
        })
        .collect();
    Ok(Signal { grid, samples, forms: Some(vec![hermite_form(idx)]), lossy: false })
}

/// Convenience: 1-D Hermite function of order m on the grid.
pub fn h1d(m: u32, grid: Grid) -> Signal {
    hermite_function(&HermiteIndex::new(vec![m]).unwrap(), grid).unwrap()
}

/// All multi-indices of the grid dimension with order ≤ max_order.
pub fn indices_up_to(dim: usize, max_order: u32) -> Vec<HermiteIndex> {
    let mut out = Vec::new();
    match dim {
        1 => {
            for m in 0..=max_order {
                out.push(HermiteIndex { k: vec![m] });
            }
        }
        _ => {
            for total in 0..=max_order {
                for a in 0..=total {
                    out.push(HermiteIndex { k: vec![a, total - a] });
                }
            }
        }
    }
    out
}

/// c_k = ⟨s, h_k⟩ for all multi-indices of order ≤ max_order.
pub fn hermite_coefficients(s: &Signal, max_order: u32) -> Result<BTreeMap<Vec<u32>, Complex64>> {
    if max_order > MAX_ORDER {
        return Err(precondition("max_order exceeds overflow guard"));
    }
    let mut out = BTreeMap::new();
    for idx in indices_up_to(s.grid.dim, max_order) {
        let h = hermite_function(&idx, s.grid)?;
        out.insert(idx.k.clone(), s.inner_product(&h)?);
    }
    Ok(out)
}

/// Linear combination Σ c_k h_k; the symbolic provenance is merged into a
/// single polynomial×Gaussian form (all terms share the exponent −π‖x‖²).
pub fn hermite_synthesize(coeffs: &BTreeMap<Vec<u32>, Complex64>, grid: Grid) -> Result<Signal> {
    let mut acc = Signal::zeros(grid);
    let mut poly = Poly::zero(grid.dim);
    for (k, &c) in coeffs {
        if c.norm() == 0.0 {
            continue;
        }
        let idx = HermiteIndex::new(k.clone())?;
        let h = hermite_function(&idx, grid)?;
        acc = acc.add(&h.scale(c))?;
        poly = poly.add(&hermite_form(&idx).poly.scale(c));
    }
    let mut form = GaussForm::standard(grid.dim);
    form.poly = poly;
    acc.forms = Some(vec![form]);
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fourier::fourier;
    use approx::assert_abs_diff_eq;

    fn default_grid() -> Grid {
        Grid::new(1, 8.0, 256).unwrap()
    }

    #[test]
    fn values_at_zero() {
        let g = default_grid();
        let h0 = h1d(0, g);
        assert_abs_diff_eq!(h0.samples[128].re, 2f64.powf(0.25), epsilon = 1e-14);
        let h1 = h1d(1, g);
        assert_abs_diff_eq!(h1.samples[128].re, 0.0, epsilon = 1e-14);
    }

    #[test]
    fn orthonormal_up_to_16() {
        let g = default_grid();
        for m in 0..=16u32 {
            let h = h1d(m, g);
            assert_abs_diff_eq!(h.inner_product(&h).unwrap().re, 1.0, epsilon = 1e-9);
        }
        let h0 = h1d(0, g);
        let h1 = h1d(1, g);
        assert!(h0.inner_product(&h1).unwrap().norm() < 1e-9);
    }

    #[test]
    fn gram_matrix_identity_up_to_12() {
        let g = default_grid();
        let hs: Vec<Signal> = (0..=12).map(|m| h1d(m, g)).collect();
        let mut worst = 0.0f64;
        for (i, a) in hs.iter().enumerate() {
            for (j, b) in hs.iter().enumerate() {
                let ip = a.inner_product(b).unwrap();
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((ip - target).norm());
            }
        }
        assert!(worst < 1e-8, "gram deviation {worst}");
    }

    #[test]
    fn fourier_eigenfunctions() {
        let g = default_grid();
        for m in 0..=12u32 {
            let h = h1d(m, g);
            let hat = fourier(&h);
            let eig = Complex64::new(0.0, -1.0).powu(m);
            let err = hat
                .samples
                .iter()
                .zip(&h.samples)
                .map(|(a, b)| (a - eig * b).norm())
                .fold(0.0, f64::max);
            assert!(err < 1e-8, "m={m}: error {err}");
        }
    }

    #[test]
    fn recurrence_matches_symbolic_form() {
        // dual-route: stable recurrence vs monomial-basis closed form
        let g = default_grid();
        for m in [0u32, 1, 3, 6] {
            let h = h1d(m, g);
            let form = hermite_form(&HermiteIndex::new(vec![m]).unwrap());
            let err = (0..g.total_points())
                .map(|k| (h.samples[k] - form.eval(&g.coords(k))).norm())
                .fold(0.0, f64::max);
            assert!(err < 1e-10, "m={m}: error {err}");
        }
    }

    #[test]
    fn coefficients_pick_out_basis() {
        let g = default_grid();
        let h3 = h1d(3, g);
        let coeffs = hermite_coefficients(&h3, 6).unwrap();
        for (k, c) in &coeffs {
            if k == &vec![3] {
                assert_abs_diff_eq!(c.re, 1.0, epsilon = 1e-8);
            } else {
                assert!(c.norm() < 1e-8, "k={k:?} leaked {c}");
            }
        }
        let zero = hermite_coefficients(&Signal::zeros(g), 4).unwrap();
        assert!(zero.values().all(|c| c.norm() == 0.0));
    }

    #[test]
    fn superposition_coefficients() {
        let g = default_grid();
        let mut coeffs = BTreeMap::new();
        let r = 2f64.powf(-0.5);
        coeffs.insert(vec![0], Complex64::new(r, 0.0));
        coeffs.insert(vec![1], Complex64::new(r, 0.0));
        let s = hermite_synthesize(&coeffs, g).unwrap();
        let back = hermite_coefficients(&s, 3).unwrap();
        assert_abs_diff_eq!(back[&vec![0]].re, r, epsilon = 1e-9);
        assert_abs_diff_eq!(back[&vec![1]].re, r, epsilon = 1e-9);
    }

    #[test]
    fn analyze_synthesize_round_trip() {
        let g = default_grid();
        let h5 = h1d(5, g);
        let coeffs = hermite_coefficients(&h5, 8).unwrap();
        let back = hermite_synthesize(&coeffs, g).unwrap();
        let err = back
            .samples
            .iter()
            .zip(&h5.samples)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max);
        assert!(err < 1e-8, "round-trip error {err}");
        let empty = hermite_synthesize(&BTreeMap::new(), g).unwrap();
        assert!(empty.is_zero());
    }

    #[test]
    fn order_guard() {
        assert!(HermiteIndex::new(vec![33]).is_err());
        assert!(HermiteIndex::new(vec![16, 16]).is_ok());
        assert!(HermiteIndex::new(vec![20, 16]).is_err());
    }

    #[test]
    fn dim2_tensor_product() {
        let g = Grid::new(2, 6.0, 64).unwrap();
        let idx = HermiteIndex::new(vec![1, 2]).unwrap();
        let h = hermite_function(&idx, g).unwrap();
        assert_abs_diff_eq!(h.inner_product(&h).unwrap().re, 1.0, epsilon = 1e-9);
        let other = hermite_function(&HermiteIndex::new(vec![2, 1]).unwrap(), g).unwrap();
        assert!(h.inner_product(&other).unwrap().norm() < 1e-9);
    }
}
