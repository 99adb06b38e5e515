//! The bilinear time-frequency transforms — ambiguity A(u,v), windowed
//! Fourier S_vu, Wigner W(u,v) — plus the covariance identities
//! (Lemma-style checks) and the Moyal norm identity.

use crate::error::{numerical, precondition, Result};
use crate::fourier::{fourier, ft_in_place};
use crate::gauss::GaussForm;
use crate::grid::Grid;
use crate::signal::{OperatorParams, Signal};
use crate::surface::Surface;
use num_complex::Complex64;
use rayon::prelude::*;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

fn axis_indices(grid: &Grid, flat: usize) -> [usize; 2] {
    let n = grid.points_per_axis;
    match grid.dim {
        1 => [flat, 0],
        _ => [flat / n, flat % n],
    }
}

/// u(t + x/2)·conj(v(t − x/2)) on the signal grid, with zero-filled (not
/// wrapped) out-of-box shifts; `half_steps[j]` is (x/2)/Δ along axis j.
fn padded_product(u: &Signal, v: &Signal, half_steps: &[i64]) -> Vec<Complex64> {
    let g = u.grid;
    let n = g.points_per_axis as i64;
    let mut out = vec![ZERO; g.total_points()];
    match g.dim {
        1 => {
            let s = half_steps[0];
            for k in 0..n {
                let a = k + s;
                let b = k - s;
                if a >= 0 && a < n && b >= 0 && b < n {
                    out[k as usize] = u.samples[a as usize] * v.samples[b as usize].conj();
                }
            }
        }
        _ => {
            let (s0, s1) = (half_steps[0], half_steps[1]);
            for i in 0..n {
                let (a0, b0) = (i + s0, i - s0);
                if a0 < 0 || a0 >= n || b0 < 0 || b0 >= n {
                    continue;
                }
                for j in 0..n {
                    let (a1, b1) = (j + s1, j - s1);
                    if a1 >= 0 && a1 < n && b1 >= 0 && b1 < n {
                        out[(i * n + j) as usize] = u.samples[(a0 * n + a1) as usize]
                            * v.samples[(b0 * n + b1) as usize].conj();
                    }
                }
            }
        }
    }
    out
}

/// Exact symbolic slice u(t+x/2)·conj(v(t−x/2)) as a product of forms.
fn slice_forms(u: &Signal, v: &Signal, x: &[f64]) -> Option<Vec<GaussForm>> {
    let fu = u.forms.as_ref()?;
    let fv = v.forms.as_ref()?;
    let minus_half: Vec<f64> = x.iter().map(|t| -t / 2.0).collect();
    let plus_half: Vec<f64> = x.iter().map(|t| t / 2.0).collect();
    let mut out = Vec::with_capacity(fu.len() * fv.len());
    for a in fu {
        let at = a.translate(&minus_half);
        for b in fv {
            out.push(at.mul(&b.translate(&plus_half).conj()));
        }
    }
    Some(out)
}

/// Cross-section h_x(t) = u(t + x/2)·conj(v(t − x/2)); x must be an even
/// multiple of the grid spacing so the half-shifts stay on the lattice.
pub fn cross_section(u: &Signal, v: &Signal, x: &[f64]) -> Result<Signal> {
    if u.grid != v.grid {
        return Err(precondition("cross_section requires matching grids"));
    }
    let d = u.grid.spacing();
    let mut half_steps = vec![0i64; u.grid.dim];
    for j in 0..u.grid.dim {
        half_steps[j] = u.grid.lattice_steps(x[j], 2.0 * d)?;
    }
    let samples = padded_product(u, v, &half_steps);
    let mut s = Signal::from_samples(u.grid, samples)?;
    if let Some(fs) = slice_forms(u, v, x) {
        s.forms = Some(fs);
    }
    Ok(s)
}

/// Wraps surface construction inside a transform: non-finite samples here
/// mean the computation overflowed, a numerical failure rather than a
/// caller error.
fn transform_surface(xg: Grid, yg: Grid, samples: Vec<Complex64>) -> Result<Surface> {
    if samples.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(numerical("transform overflow: non-finite surface samples"));
    }
    Surface::new(xg, yg, samples)
}

/// The surface x-lattice: even multiples of Δ covering [−2L, 2L).
pub fn ambiguity_x_grid(g: &Grid) -> Grid {
    Grid { dim: g.dim, half_extent: 2.0 * g.half_extent, points_per_axis: g.points_per_axis }
}

/// Ambiguity function A(u,v)(x,y) = ∫ u(t+x/2) conj(v(t−x/2)) e^{−2iπ⟨y,t⟩} dt.
pub fn ambiguity(u: &Signal, v: &Signal) -> Result<Surface> {
    if u.grid != v.grid {
        return Err(precondition("ambiguity requires matching grids"));
    }
    let g = u.grid;
    let n = g.points_per_axis;
    let xg = ambiguity_x_grid(&g);
    let yg = g.dual();
    let with_forms = u.forms.is_some() && v.forms.is_some();
    let rows: Vec<(Vec<Complex64>, Option<Vec<GaussForm>>)> = (0..xg.total_points())
        .into_par_iter()
        .map(|ix| {
            let idx = axis_indices(&xg, ix);
            let half_steps: Vec<i64> =
                (0..g.dim).map(|j| idx[j] as i64 - (n / 2) as i64).collect();
            let mut buf = padded_product(u, v, &half_steps);
            ft_in_place(&mut buf, g.dim, n, g.spacing(), -1.0);
            let forms = if with_forms {
                let x = xg.coords(ix);
                slice_forms(u, v, &x).map(|fs| fs.iter().map(|f| f.fourier(-1.0)).collect())
            } else {
                None
            };
            (buf, forms)
        })
        .collect();
    let mut samples = Vec::with_capacity(xg.total_points() * yg.total_points());
    let mut forms = if with_forms { Some(Vec::with_capacity(xg.total_points())) } else { None };
    for (row, f) in rows {
        samples.extend(row);
        if let (Some(all), Some(f)) = (&mut forms, f) {
            all.push(f);
        }
    }
    let mut surf = transform_surface(xg, yg, samples)?;
    surf.slice_forms = forms;
    Ok(surf)
}

/// Windowed Fourier transform S_vu(x,y) = ∫ u(t) conj(v(t−x)) e^{2iπ⟨t,y⟩} dt,
/// on the same product lattice as `ambiguity`. Satisfies
/// S_vu(x,y) = e^{iπ⟨x,y⟩} A(u,v)(x,−y).
pub fn stft(u: &Signal, v: &Signal) -> Result<Surface> {
    if u.grid != v.grid {
        return Err(precondition("stft requires matching grids"));
    }
    let g = u.grid;
    let n = g.points_per_axis;
    let xg = ambiguity_x_grid(&g);
    let yg = g.dual();
    let with_forms = u.forms.is_some() && v.forms.is_some();
    let rows: Vec<(Vec<Complex64>, Option<Vec<GaussForm>>)> = (0..xg.total_points())
        .into_par_iter()
        .map(|ix| {
            let idx = axis_indices(&xg, ix);
            // v(t − x): full shift, 2·(half step) lattice units
            let steps: Vec<i64> = (0..g.dim).map(|j| 2 * (idx[j] as i64 - (n / 2) as i64)).collect();
            let ni = n as i64;
            let mut buf = vec![ZERO; g.total_points()];
            match g.dim {
                1 => {
                    for k in 0..ni {
                        let b = k - steps[0];
                        if b >= 0 && b < ni {
                            buf[k as usize] = u.samples[k as usize] * v.samples[b as usize].conj();
                        }
                    }
                }
                _ => {
                    for i in 0..ni {
                        let b0 = i - steps[0];
                        if b0 < 0 || b0 >= ni {
                            continue;
                        }
                        for j in 0..ni {
                            let b1 = j - steps[1];
                            if b1 >= 0 && b1 < ni {
                                buf[(i * ni + j) as usize] = u.samples[(i * ni + j) as usize]
                                    * v.samples[(b0 * ni + b1) as usize].conj();
                            }
                        }
                    }
                }
            }
            ft_in_place(&mut buf, g.dim, n, g.spacing(), 1.0);
            let forms = if with_forms {
                let x = xg.coords(ix);
                let fu = u.forms.as_ref().unwrap();
                let fv = v.forms.as_ref().unwrap();
                let mut fs = Vec::new();
                for a in fu {
                    for b in fv {
                        fs.push(a.mul(&b.translate(&x).conj()).fourier(1.0));
                    }
                }
                Some(fs)
            } else {
                None
            };
            (buf, forms)
        })
        .collect();
    let mut samples = Vec::with_capacity(xg.total_points() * yg.total_points());
    let mut forms = if with_forms { Some(Vec::with_capacity(xg.total_points())) } else { None };
    for (row, f) in rows {
        samples.extend(row);
        if let (Some(all), Some(f)) = (&mut forms, f) {
            all.push(f);
        }
    }
    let mut surf = transform_surface(xg, yg, samples)?;
    surf.slice_forms = forms;
    Ok(surf)
}

/// Wigner y-lattice: spacing 1/(4L), half extent n/(8L).
pub fn wigner_y_grid(g: &Grid) -> Grid {
    Grid {
        dim: g.dim,
        half_extent: g.points_per_axis as f64 / (8.0 * g.half_extent),
        points_per_axis: g.points_per_axis,
    }
}

/// Wigner transform W(u,v)(x,y) = ∫ u(x+t/2) conj(v(x−t/2)) e^{+2iπ⟨t,y⟩} dt,
/// computed from the definition via the substitution t = 2s:
/// W(x,y) = 2^d · ∫ u(x+s)conj(v(x−s)) e^{4iπ⟨s,y⟩} ds. The x-lattice is
/// the signal grid and the y-spacing 1/(4L), so the relation
/// W(u,v)(x,y) = 2^d A(u,Zv)(2x,−2y) holds without interpolation.
pub fn wigner(u: &Signal, v: &Signal) -> Result<Surface> {
    if u.grid != v.grid {
        return Err(precondition("wigner requires matching grids"));
    }
    let g = u.grid;
    let n = g.points_per_axis;
    let yg = wigner_y_grid(&g);
    let amp = 2f64.powi(g.dim as i32);
    let rows: Vec<Vec<Complex64>> = (0..g.total_points())
        .into_par_iter()
        .map(|ixf| {
            let idx = axis_indices(&g, ixf);
            let ni = n as i64;
            let half = (n / 2) as i64;
            let mut buf = vec![ZERO; g.total_points()];
            // g_x(s) = u(x+s)·conj(v(x−s)) with zero fill outside the box
            match g.dim {
                1 => {
                    let kx = idx[0] as i64;
                    for ks in 0..ni {
                        let a = kx + ks - half;
                        let b = kx - ks + half;
                        if a >= 0 && a < ni && b >= 0 && b < ni {
                            buf[ks as usize] = u.samples[a as usize] * v.samples[b as usize].conj();
                        }
                    }
                }
                _ => {
                    let (kx0, kx1) = (idx[0] as i64, idx[1] as i64);
                    for s0 in 0..ni {
                        let a0 = kx0 + s0 - half;
                        let b0 = kx0 - s0 + half;
                        if a0 < 0 || a0 >= ni || b0 < 0 || b0 >= ni {
                            continue;
                        }
                        for s1 in 0..ni {
                            let a1 = kx1 + s1 - half;
                            let b1 = kx1 - s1 + half;
                            if a1 >= 0 && a1 < ni && b1 >= 0 && b1 < ni {
                                buf[(s0 * ni + s1) as usize] = u.samples[(a0 * ni + a1) as usize]
                                    * v.samples[(b0 * ni + b1) as usize].conj();
                            }
                        }
                    }
                }
            }
            ft_in_place(&mut buf, g.dim, n, g.spacing(), 1.0);
            // FT lands on the dual grid = {2y : y in the Wigner y-lattice}
            buf.iter().map(|z| amp * z).collect()
        })
        .collect();
    let samples = rows.into_iter().flatten().collect();
    transform_surface(g, yg, samples)
}

/// Looks a coordinate pair up in a surface; `None` when off-lattice or out
/// of range.
pub fn lookup(surf: &Surface, x: &[f64], y: &[f64]) -> Option<Complex64> {
    let to_index = |grid: &Grid, c: &[f64]| -> Option<usize> {
        let mut idx = [0usize; 2];
        for j in 0..grid.dim {
            let t = (c[j] + grid.half_extent) / grid.spacing();
            let r = t.round();
            if (t - r).abs() > 1e-6 || r < 0.0 || r >= grid.points_per_axis as f64 {
                return None;
            }
            idx[j] = r as usize;
        }
        Some(grid.flat_index(&idx[..grid.dim]))
    };
    let ix = to_index(&surf.x_grid, x)?;
    let iy = to_index(&surf.y_grid, y)?;
    Some(surf.at(ix, iy))
}

/// Max pointwise errors of the five covariance identities of the ambiguity
/// function (shift, modulation, dilation, reflection, Fourier/swap).
#[derive(Debug, Clone)]
pub struct Lem0Report {
    /// identity (i): A(S(a)u,S(b)v)(x,y) = e^{−iπ⟨a+b,y⟩} A(u,v)(x+b−a, y)
    pub shift_error: f64,
    /// identity (ii): A(M(ω₁)u,M(ω₂)v)(x,y) = e^{iπ⟨ω₁+ω₂,x⟩} A(u,v)(x, y−ω₁+ω₂)
    pub modulation_error: f64,
    /// identity (iii): A(D_λu,D_λv)(x,y) = A(u,v)(λx, y/λ)
    pub dilation_error: f64,
    /// identity (iv): A(Zu,Zv)(x,y) = A(u,v)(−x,−y)
    pub reflection_error: f64,
    /// identity (v): A(û,v̂)(x,y) = A(u,v)(−y,x) and
    /// A(u,v)(x,y) = conj(A(v,u)(−x,−y))
    pub fourier_error: f64,
}

impl Lem0Report {
    pub fn max_error(&self) -> f64 {
        self.shift_error
            .max(self.modulation_error)
            .max(self.dilation_error)
            .max(self.reflection_error)
            .max(self.fourier_error)
    }
}

/// Verifies the five covariance identities (i)–(v) by evaluating both
/// sides on the common lattice. The parameter set is used as a = shift, b = 2·shift
/// (so shifts must lie on the 2Δ lattice), ω₁ = modulation,
/// ω₂ = 2·modulation (on the dual lattice), λ = dilation (1, 1/2 or 2).
pub fn verify_lem0(u: &Signal, v: &Signal, params: &OperatorParams) -> Result<Lem0Report> {
    if u.grid != v.grid {
        return Err(precondition("verify_lem0 requires matching grids"));
    }
    let g = u.grid;
    let d = g.dim;
    let base = ambiguity(u, v)?;
    let xg = base.x_grid;
    let yg = base.y_grid;
    let pi = std::f64::consts::PI;

    let a = params.shift.clone();
    let b: Vec<f64> = a.iter().map(|t| 2.0 * t).collect();
    let w1 = params.modulation.clone();
    let w2: Vec<f64> = w1.iter().map(|t| 2.0 * t).collect();
    let lambda = params.dilation;
    if ![0.5, 1.0, 2.0].contains(&lambda) {
        return Err(precondition("verify_lem0 supports dilation λ in {1/2, 1, 2}"));
    }

    let dot = |p: &[f64], q: &[f64]| -> f64 { p.iter().zip(q).map(|(x, y)| x * y).sum() };

    // (i) shifts
    let lhs_i = ambiguity(&u.translate(&a)?, &v.translate(&b)?)?;
    let mut err_i = 0.0f64;
    for ix in 0..xg.total_points() {
        let x = xg.coords(ix);
        let xs: Vec<f64> = (0..d).map(|j| x[j] + b[j] - a[j]).collect();
        for iy in 0..yg.total_points() {
            let y = yg.coords(iy);
            if let Some(rhs) = lookup(&base, &xs, &y) {
                let phase = Complex64::new(0.0, -pi * (dot(&a, &y) + dot(&b, &y))).exp();
                err_i = err_i.max((lhs_i.at(ix, iy) - phase * rhs).norm());
            }
        }
    }

    // (ii) modulations
    let lhs_ii = ambiguity(&u.modulate(&w1), &v.modulate(&w2))?;
    let mut err_ii = 0.0f64;
    for ix in 0..xg.total_points() {
        let x = xg.coords(ix);
        let phase = Complex64::new(0.0, pi * (dot(&w1, &x) + dot(&w2, &x))).exp();
        for iy in 0..yg.total_points() {
            let y = yg.coords(iy);
            let ys: Vec<f64> = (0..d).map(|j| y[j] - w1[j] + w2[j]).collect();
            if let Some(rhs) = lookup(&base, &x, &ys) {
                err_ii = err_ii.max((lhs_ii.at(ix, iy) - phase * rhs).norm());
            }
        }
    }

    // (iii) dilation
    let mut err_iii = 0.0f64;
    if lambda == 1.0 {
        // both sides are the same computation; compare bitwise anyway
        for (l, r) in base.samples.iter().zip(&base.samples) {
            err_iii = err_iii.max((l - r).norm());
        }
    } else {
        // a compressing dilation doubles the bandwidth of the bilinear
        // product, so evaluate the left side at a doubled sampling rate
        // (the dual lattice spacing only depends on the extent, so the
        // lookup into the base surface is unaffected)
        let (mut ud, mut vd) = (u.dilate(lambda)?, v.dilate(lambda)?);
        if lambda > 1.0 {
            let fine = Grid::new(d, g.half_extent, 2 * g.points_per_axis)?;
            ud = ud.resample(fine)?;
            vd = vd.resample(fine)?;
        }
        let lhs = ambiguity(&ud, &vd)?;
        for ix in 0..lhs.x_grid.total_points() {
            let x = lhs.x_grid.coords(ix);
            let xs: Vec<f64> = x.iter().map(|t| lambda * t).collect();
            for iy in 0..lhs.y_grid.total_points() {
                let y = lhs.y_grid.coords(iy);
                let ys: Vec<f64> = y.iter().map(|t| t / lambda).collect();
                if let Some(rhs) = lookup(&base, &xs, &ys) {
                    err_iii = err_iii.max((lhs.at(ix, iy) - rhs).norm());
                }
            }
        }
    }

    // (iv) reflection
    let lhs_iv = ambiguity(&u.reflect(), &v.reflect())?;
    let mut err_iv = 0.0f64;
    for ix in 0..xg.total_points() {
        let x = xg.coords(ix);
        let mx: Vec<f64> = x.iter().map(|t| -t).collect();
        for iy in 0..yg.total_points() {
            let y = yg.coords(iy);
            let my: Vec<f64> = y.iter().map(|t| -t).collect();
            if let Some(rhs) = lookup(&base, &mx, &my) {
                err_iv = err_iv.max((lhs_iv.at(ix, iy) - rhs).norm());
            }
        }
    }

    // (v) Fourier rotation and argument swap
    let mut err_v = 0.0f64;
    if g.is_self_dual() {
        let lhs = ambiguity(&fourier(u), &fourier(v))?;
        for ix in 0..xg.total_points() {
            let x = xg.coords(ix);
            for iy in 0..yg.total_points() {
                let y = yg.coords(iy);
                let my: Vec<f64> = y.iter().map(|t| -t).collect();
                if let Some(rhs) = lookup(&base, &my, &x) {
                    err_v = err_v.max((lhs.at(ix, iy) - rhs).norm());
                }
            }
        }
    }
    let swapped = ambiguity(v, u)?;
    for ix in 0..xg.total_points() {
        let x = xg.coords(ix);
        let mx: Vec<f64> = x.iter().map(|t| -t).collect();
        for iy in 0..yg.total_points() {
            let y = yg.coords(iy);
            let my: Vec<f64> = y.iter().map(|t| -t).collect();
            if let Some(rhs) = lookup(&swapped, &mx, &my) {
                err_v = err_v.max((base.at(ix, iy) - rhs.conj()).norm());
            }
        }
    }

    Ok(Lem0Report {
        shift_error: err_i,
        modulation_error: err_ii,
        dilation_error: err_iii,
        reflection_error: err_iv,
        fourier_error: err_v,
    })
}

/// Verifies the ambiguity-product Fourier identity
/// ∫∫ A(u,v)(s,t)·conj(A(v,w)(s,t))·e^{2iπ(⟨s,x⟩+⟨t,y⟩)} ds dt
///   = A(u,v)(y,−x)·conj(A(v,w)(y,−x))
/// by iterated continuous transforms of the product surface; returns the
/// max error over the overlap lattice. 1-D signals only.
///
/// The rotation direction on the right-hand side depends on the sign of
/// the ambiguity kernel: with A's e^{−2iπ⟨y,t⟩} it is (y,−x), not the
/// (−y,x) of the opposite convention. Triples of Hermite functions whose
/// order sums are both odd cannot tell the two apart (the two rotations
/// differ by (−1)^{order sum} per factor), so tests must include a
/// parity-sensitive triple such as (h₀,h₀,h₁).
pub fn verify_fouramb(u: &Signal, v: &Signal, w: &Signal) -> Result<f64> {
    if u.grid.dim != 1 {
        return Err(precondition("verify_fouramb is implemented for d = 1"));
    }
    if u.grid != v.grid || v.grid != w.grid {
        return Err(precondition("verify_fouramb requires matching grids"));
    }
    let a1 = ambiguity(u, v)?;
    let a2 = ambiguity(v, w)?;
    let n = u.grid.points_per_axis;
    let mut prod: Vec<Complex64> = a1
        .samples
        .iter()
        .zip(&a2.samples)
        .map(|(p, q)| p * q.conj())
        .collect();
    // transform over s (columns fixed t): s-grid spacing 2Δ
    let sx = a1.x_grid.spacing();
    let mut col = vec![ZERO; n];
    for it in 0..n {
        for is in 0..n {
            col[is] = prod[is * n + it];
        }
        ft_in_place(&mut col, 1, n, sx, 1.0);
        for is in 0..n {
            prod[is * n + it] = col[is];
        }
    }
    // transform over t (rows fixed new-x)
    let st = a1.y_grid.spacing();
    for row in prod.chunks_exact_mut(n) {
        ft_in_place(row, 1, n, st, 1.0);
    }
    let xg = a1.x_grid.dual(); // output x lattice
    let yg = a1.y_grid.dual(); // output y lattice
    let mut err = 0.0f64;
    for ix in 0..n {
        let x = xg.axis_coord(ix);
        for iy in 0..n {
            let y = yg.axis_coord(iy);
            let p = lookup(&a1, &[y], &[-x]);
            let q = lookup(&a2, &[y], &[-x]);
            if let (Some(p), Some(q)) = (p, q) {
                err = err.max((prod[ix * n + iy] - p * q.conj()).norm());
            }
        }
    }
    Ok(err)
}

/// Both sides of the Moyal identity: the quadrature L² norm of the
/// ambiguity surface and the product ‖u‖·‖v‖.
pub fn moyal_norm(u: &Signal, v: &Signal) -> Result<(f64, f64)> {
    let surf = ambiguity(u, v)?;
    let (sn, pn) = (surf.l2_norm(), u.l2_norm() * v.l2_norm());
    if !sn.is_finite() || !pn.is_finite() {
        return Err(numerical("norm overflow in Moyal comparison"));
    }
    Ok((sn, pn))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gauss::GaussHermiteSpec;
    use crate::hermite::h1d;
    use crate::signal::sample_spec;
    use approx::assert_abs_diff_eq;

    fn default_grid() -> Grid {
        Grid::new(1, 8.0, 256).unwrap()
    }

    #[test]
    fn cross_section_basics() {
        let g = default_grid();
        let h0 = h1d(0, g);
        let cs = cross_section(&h0, &h0, &[0.0]).unwrap();
        // u·conj(v) at t=0: (2^{1/4})² = √2
        assert_abs_diff_eq!(cs.samples[128].re, 2f64.sqrt(), epsilon = 1e-12);
        // conjugate symmetry in x
        let d = g.spacing();
        let plus = cross_section(&h0, &h0, &[4.0 * d]).unwrap();
        let minus = cross_section(&h0, &h0, &[-4.0 * d]).unwrap();
        let err = plus
            .samples
            .iter()
            .zip(&minus.samples)
            .map(|(a, b)| (a - b.conj()).norm())
            .fold(0.0, f64::max);
        assert!(err < 1e-15);
        // off-lattice x rejected (must be an even multiple of Δ)
        assert!(cross_section(&h0, &h0, &[d]).is_err());
    }

    #[test]
    fn gaussian_ambiguity_closed_form() {
        let g = default_grid();
        let h0 = h1d(0, g);
        let surf = ambiguity(&h0, &h0).unwrap();
        let mut err = 0.0f64;
        for ix in 0..256 {
            let x = surf.x_grid.axis_coord(ix);
            for iy in 0..256 {
                let y = surf.y_grid.axis_coord(iy);
                let expect = (-std::f64::consts::PI * (x * x + y * y) / 2.0).exp();
                err = err.max((surf.at(ix, iy) - Complex64::new(expect, 0.0)).norm());
            }
        }
        assert!(err < 1e-8, "max error {err}");
    }

    #[test]
    fn ambiguity_at_origin_is_inner_product() {
        let g = default_grid();
        let u = h1d(0, g);
        let v = h1d(1, g);
        let s = ambiguity(&u, &v).unwrap();
        assert!((s.at(128, 128) - u.inner_product(&v).unwrap()).norm() < 1e-10);
        assert!(s.at(128, 128).norm() < 1e-9); // orthogonality
        let uu = ambiguity(&u, &u).unwrap();
        assert!((uu.at(128, 128) - u.inner_product(&u).unwrap()).norm() < 1e-10);
    }

    #[test]
    fn exact_slice_forms_match_fft() {
        let g = default_grid();
        let u = h1d(2, g);
        let v = h1d(1, g);
        let surf = ambiguity(&u, &v).unwrap();
        assert!(surf.slice_forms.is_some());
        // compare log-magnitudes where the FFT value is well above noise
        let mut err = 0.0f64;
        for ix in (0..256).step_by(17) {
            for iy in (0..256).step_by(13) {
                let v_fft = surf.at(ix, iy).norm();
                if v_fft > 1e-9 {
                    let exact = surf.log_abs_at(ix, iy).exp();
                    err = err.max((v_fft - exact).abs());
                }
            }
        }
        assert!(err < 1e-10, "max error {err}");
    }

    #[test]
    fn stft_modulus_relation() {
        let g = default_grid();
        let u = h1d(1, g);
        let v = h1d(0, g);
        let s = stft(&u, &v).unwrap();
        let a = ambiguity(&u, &v).unwrap();
        let n = 256;
        let mut err = 0.0f64;
        for ix in 0..n {
            let x = s.x_grid.axis_coord(ix);
            for iy in 0..n {
                let y = s.y_grid.axis_coord(iy);
                // S_vu(x,y) = e^{iπxy} A(u,v)(x,−y); −y on-lattice except iy=0
                if iy == 0 {
                    continue;
                }
                let av = a.at(ix, n - iy);
                let phase = Complex64::new(0.0, std::f64::consts::PI * x * y).exp();
                err = err.max((s.at(ix, iy) - phase * av).norm());
            }
        }
        assert!(err < 1e-9, "max error {err}");
        assert!((s.at(128, 128) - u.inner_product(&v).unwrap()).norm() < 1e-10);
    }

    #[test]
    fn wigner_gaussian_and_relation() {
        let g = default_grid();
        let h0 = h1d(0, g);
        let w = wigner(&h0, &h0).unwrap();
        // W(h0,h0)(x,y) = 2 e^{−2π(x²+y²)}
        let mut err = 0.0f64;
        for ix in 0..256 {
            let x = w.x_grid.axis_coord(ix);
            for iy in 0..256 {
                let y = w.y_grid.axis_coord(iy);
                let expect = 2.0 * (-2.0 * std::f64::consts::PI * (x * x + y * y)).exp();
                err = err.max((w.at(ix, iy) - Complex64::new(expect, 0.0)).norm());
            }
        }
        assert!(err < 1e-8, "closed form error {err}");
    }

    #[test]
    fn wigner_matches_ambiguity_relation() {
        let g = default_grid();
        let u = h1d(2, g);
        let v = h1d(1, g);
        let w = wigner(&u, &v).unwrap();
        let a = ambiguity(&u, &v.reflect()).unwrap();
        let n = 256usize;
        let mut err = 0.0f64;
        for ix in 0..n {
            let x = w.x_grid.axis_coord(ix);
            for iy in 1..n {
                let y = w.y_grid.axis_coord(iy);
                if let Some(av) = lookup(&a, &[2.0 * x], &[-2.0 * y]) {
                    err = err.max((w.at(ix, iy) - 2.0 * av).norm());
                }
            }
        }
        assert!(err < 1e-8, "relation error {err}");
    }

    #[test]
    fn wigner_of_pair_with_itself_is_real() {
        let g = default_grid();
        let spec = GaussHermiteSpec::new(
            1,
            crate::poly::Poly::monomial(1, (1, 0), Complex64::new(0.6, 0.8)),
            vec![1.0],
            vec![0.0],
            vec![0.25],
            vec![0.5],
        )
        .unwrap();
        let u = sample_spec(&spec, g).unwrap();
        let w = wigner(&u, &u).unwrap();
        let im = w.samples.iter().map(|z| z.im.abs()).fold(0.0, f64::max);
        assert!(im < 1e-10, "imag part {im}");
        let z = wigner(&Signal::zeros(g), &u).unwrap();
        assert!(z.samples.iter().all(|s| s.norm() == 0.0));
    }

    #[test]
    fn lem0_identity_params_are_exact() {
        let g = default_grid();
        let u = h1d(0, g);
        let v = h1d(0, g);
        let r = verify_lem0(&u, &v, &OperatorParams::identity(1)).unwrap();
        assert!(r.shift_error < 1e-12);
        assert!(r.modulation_error < 1e-12);
        assert_eq!(r.dilation_error, 0.0);
        assert!(r.reflection_error < 1e-12);
        assert!(r.fourier_error < 1e-9);
    }

    #[test]
    fn lem0_shift_case() {
        let g = default_grid();
        let u = h1d(0, g);
        let v = h1d(0, g);
        let p = OperatorParams {
            shift: vec![4.0 * g.spacing()],
            modulation: vec![0.0],
            dilation: 1.0,
        };
        let r = verify_lem0(&u, &v, &p).unwrap();
        assert!(r.shift_error < 1e-9, "shift error {}", r.shift_error);
    }

    #[test]
    fn lem0_fourier_case() {
        let g = default_grid();
        let u = h1d(0, g);
        let v = h1d(1, g);
        let r = verify_lem0(&u, &v, &OperatorParams::identity(1)).unwrap();
        assert!(r.fourier_error < 1e-9, "fourier error {}", r.fourier_error);
    }

    #[test]
    fn lem0_modulation_case() {
        let g = default_grid();
        let u = h1d(1, g);
        let v = h1d(0, g);
        let p = OperatorParams {
            shift: vec![0.0],
            modulation: vec![4.0 * g.dual().spacing()],
            dilation: 1.0,
        };
        let r = verify_lem0(&u, &v, &p).unwrap();
        assert!(r.modulation_error < 1e-9, "modulation error {}", r.modulation_error);
        assert!(r.reflection_error < 1e-9, "reflection error {}", r.reflection_error);
    }

    #[test]
    fn lem0_dilation_case() {
        let g = default_grid();
        let u = h1d(0, g);
        let v = h1d(2, g);
        let p = OperatorParams { shift: vec![0.0], modulation: vec![0.0], dilation: 2.0 };
        let r = verify_lem0(&u, &v, &p).unwrap();
        assert!(r.dilation_error < 1e-9, "dilation error {}", r.dilation_error);
    }

    #[test]
    fn fouramb_identity() {
        let g = default_grid();
        let h0 = h1d(0, g);
        let err = verify_fouramb(&h0, &h0, &h0).unwrap();
        assert!(err < 1e-6, "error {err}");
        // asymmetric triple so sign conventions are actually exercised
        let err2 = verify_fouramb(&h1d(2, g), &h1d(1, g), &h0).unwrap();
        assert!(err2 < 1e-6, "asymmetric error {err2}");
        // parity-sensitive triple: distinguishes the rotation direction
        let err3 = verify_fouramb(&h0, &h0, &h1d(1, g)).unwrap();
        assert!(err3 < 1e-6, "parity-sensitive error {err3}");
        let z = Signal::zeros(g);
        let err0 = verify_fouramb(&h0, &h0, &z).unwrap();
        assert!(err0 < 1e-15);
    }

    #[test]
    fn moyal_gaussian() {
        let g = default_grid();
        let h0 = h1d(0, g);
        let (s, p) = moyal_norm(&h0, &h0).unwrap();
        assert_abs_diff_eq!(s, 1.0, epsilon = 1e-8);
        assert_abs_diff_eq!(p, 1.0, epsilon = 1e-8);
        let (sz, pz) = moyal_norm(&Signal::zeros(g), &h0).unwrap();
        assert_eq!(sz, 0.0);
        assert_eq!(pz, 0.0);
    }

    #[test]
    fn moyal_hermite_pair() {
        let g = default_grid();
        let u = h1d(3, g);
        let v = h1d(5, g);
        let (s, p) = moyal_norm(&u, &v).unwrap();
        assert!((s - p).abs() < 1e-7 * p, "gap {}", (s - p).abs() / p);
    }

    #[test]
    fn cauchy_schwarz_bound_pointwise() {
        let g = default_grid();
        let u = h1d(2, g);
        let v = h1d(4, g);
        let bound = u.l2_norm() * v.l2_norm();
        let surf = ambiguity(&u, &v).unwrap();
        assert!(surf.max_abs() <= bound * (1.0 + 1e-10));
    }
}
