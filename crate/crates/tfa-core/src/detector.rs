//! Detection of the polynomial-times-Gaussian form P(x)e^{−π⟨A(x−a),x−a⟩}
//! from raw samples: mollified coarse fit, tail refinement of the
//! Gaussian rate, alternating polynomial/rate fits, and a finiteness
//! cross-check with the weighted functional dichotomy.

use crate::error::{precondition, Result, TfaError};
use crate::fourier::gaussian_mollify;
use crate::functionals::{bh_functional, default_radii, Verdict};
use crate::gauss::{sym_eigenvalues, GaussHermiteSpec};
use crate::poly::Poly;
use crate::signal::{sample_spec, Signal};
use crate::sum::pairwise_sum;
use crate::uncertainty::{covariance_report, CovarianceReport};
use num_complex::Complex64;
use serde::Serialize;

const PI: f64 = std::f64::consts::PI;
const RESIDUAL_THRESHOLD: f64 = 1e-4;
const DEGREE_CAP: u32 = 10;

/// Outcome of the form detection pipeline. `a_est` is the estimated rate
/// matrix (row-major d×d), `residual` the relative L² misfit of the best
/// reconstruction, and `bh_verdicts` the finiteness cross-check at the
/// three probing weights.
#[derive(Debug, Clone, Serialize)]
pub struct DetectionResult {
    pub is_gauss_hermite: bool,
    pub a_est: Vec<f64>,
    pub degree_est: u32,
    pub residual: f64,
    pub bh_verdicts: Vec<(f64, Verdict)>,
    /// quadratic phase detected (Gaussian chirp rather than real-rate form)
    pub chirped: bool,
    pub center_est: Vec<f64>,
    pub modulation_est: Vec<f64>,
}

/// Gaussian elimination with partial pivoting for small dense complex
/// systems; `None` when numerically singular.
fn solve_complex(mut a: Vec<Complex64>, mut b: Vec<Complex64>, n: usize) -> Option<Vec<Complex64>> {
    for col in 0..n {
        let (pivot, mag) = (col..n)
            .map(|r| (r, a[r * n + col].norm()))
            .max_by(|x, y| x.1.total_cmp(&y.1))?;
        if mag < 1e-300 {
            return None;
        }
        if pivot != col {
            for j in 0..n {
                a.swap(col * n + j, pivot * n + j);
            }
            b.swap(col, pivot);
        }
        let diag = a[col * n + col];
        for r in (col + 1)..n {
            let factor = a[r * n + col] / diag;
            if factor.norm() == 0.0 {
                continue;
            }
            for j in col..n {
                let v = a[col * n + j];
                a[r * n + j] -= factor * v;
            }
            let v = b[col];
            b[r] -= factor * v;
        }
    }
    let mut x = vec![Complex64::new(0.0, 0.0); n];
    for r in (0..n).rev() {
        let mut acc = b[r];
        for j in (r + 1)..n {
            acc -= a[r * n + j] * x[j];
        }
        x[r] = acc / a[r * n + r];
    }
    Some(x)
}

/// Weighted least squares of `target ≈ Σ c_j basis_j` via normal
/// equations; `basis[j]` and `target` are per-point values.
fn lstsq(basis: &[Vec<Complex64>], target: &[Complex64], weights: &[f64]) -> Option<Vec<Complex64>> {
    let n = basis.len();
    let mut gram = vec![Complex64::new(0.0, 0.0); n * n];
    let mut rhs = vec![Complex64::new(0.0, 0.0); n];
    for i in 0..n {
        for j in i..n {
            let s: Complex64 = basis[i]
                .iter()
                .zip(&basis[j])
                .zip(weights)
                .map(|((p, q), w)| p.conj() * q * w)
                .sum();
            gram[i * n + j] = s;
            gram[j * n + i] = s.conj();
        }
        rhs[i] = basis[i]
            .iter()
            .zip(target)
            .zip(weights)
            .map(|((p, y), w)| p.conj() * y * w)
            .sum();
    }
    solve_complex(gram, rhs, n)
}

fn lstsq_real(basis: &[Vec<f64>], target: &[f64], weights: &[f64]) -> Option<Vec<f64>> {
    let cb: Vec<Vec<Complex64>> = basis
        .iter()
        .map(|col| col.iter().map(|&v| Complex64::new(v, 0.0)).collect())
        .collect();
    let ct: Vec<Complex64> = target.iter().map(|&v| Complex64::new(v, 0.0)).collect();
    lstsq(&cb, &ct, weights).map(|c| c.iter().map(|z| z.re).collect())
}

fn median(mut v: Vec<f64>) -> f64 {
    if v.is_empty() {
        return 0.0;
    }
    v.sort_by(f64::total_cmp);
    v[v.len() / 2]
}

/// Fits t(x) ≈ b₀ + ⟨λ,x⟩ − π⟨Gx,x⟩ over the given points; returns
/// (G row-major, λ, b₀).
fn quad_fit(
    points: &[Vec<f64>],
    target: &[f64],
    weights: &[f64],
    d: usize,
) -> Option<(Vec<f64>, Vec<f64>, f64)> {
    let mut basis: Vec<Vec<f64>> = vec![vec![1.0; points.len()]];
    for i in 0..d {
        basis.push(points.iter().map(|p| p[i]).collect());
    }
    for i in 0..d {
        for j in i..d {
            basis.push(points.iter().map(|p| p[i] * p[j]).collect());
        }
    }
    let c = lstsq_real(&basis, target, weights)?;
    let b0 = c[0];
    let lambda = c[1..1 + d].to_vec();
    let q = &c[1 + d..];
    let g = match d {
        1 => vec![-q[0] / PI],
        _ => vec![-q[0] / PI, -q[1] / (2.0 * PI), -q[1] / (2.0 * PI), -q[2] / PI],
    };
    Some((g, lambda, b0))
}

fn mat_mul(a: &[f64], b: &[f64], d: usize) -> Vec<f64> {
    let mut out = vec![0.0; d * d];
    for i in 0..d {
        for j in 0..d {
            out[i * d + j] = (0..d).map(|k| a[i * d + k] * b[k * d + j]).sum();
        }
    }
    out
}

fn mat_inv(m: &[f64], d: usize) -> Option<Vec<f64>> {
    match d {
        1 => (m[0].abs() > 1e-300).then(|| vec![1.0 / m[0]]),
        _ => {
            let det = m[0] * m[3] - m[1] * m[2];
            (det.abs() > 1e-300).then(|| vec![m[3] / det, -m[1] / det, -m[2] / det, m[0] / det])
        }
    }
}

fn quad_form(m: &[f64], x: &[f64], d: usize) -> f64 {
    let mut s = 0.0;
    for i in 0..d {
        for j in 0..d {
            s += m[i * d + j] * x[i] * x[j];
        }
    }
    s
}

fn is_pd(m: &[f64], d: usize) -> bool {
    sym_eigenvalues(m, d)[0] > 0.0
}

/// Monomial multi-indices of total degree ≤ deg.
fn monomials(d: usize, deg: u32) -> Vec<(u32, u32)> {
    let mut out = Vec::new();
    for total in 0..=deg {
        if d == 1 {
            out.push((total, 0));
        } else {
            for i in 0..=total {
                out.push((total - i, i));
            }
        }
    }
    out
}

/// One weighted fit of P against the samples with the Gaussian factor
/// folded into the basis (so nothing is ever exponentiated upward):
/// minimizes ‖P(x−c)e^{−π⟨A(x−c),x−c⟩} − f‖₂. Returns the relative
/// residual and the coefficients per monomial.
fn poly_fit_at_degree(
    f: &[Complex64],
    points: &[Vec<f64>],
    a_mat: &[f64],
    center: &[f64],
    d: usize,
    deg: u32,
) -> Option<(f64, Vec<((u32, u32), Complex64)>)> {
    let idx = monomials(d, deg);
    let shifted: Vec<Vec<f64>> = points
        .iter()
        .map(|p| (0..d).map(|i| p[i] - center[i]).collect())
        .collect();
    let envelope: Vec<f64> =
        shifted.iter().map(|u| (-PI * quad_form(a_mat, u, d)).exp()).collect();
    let basis: Vec<Vec<Complex64>> = idx
        .iter()
        .map(|&(e1, e2)| {
            shifted
                .iter()
                .zip(&envelope)
                .map(|(u, env)| {
                    let mut v = u[0].powi(e1 as i32);
                    if d > 1 {
                        v *= u[1].powi(e2 as i32);
                    }
                    Complex64::new(v * env, 0.0)
                })
                .collect()
        })
        .collect();
    let weights = vec![1.0; f.len()];
    let coeffs = lstsq(&basis, f, &weights)?;
    let resid: Vec<f64> = (0..f.len())
        .map(|k| {
            let model: Complex64 = coeffs.iter().zip(&basis).map(|(c, b)| c * b[k]).sum();
            (model - f[k]).norm_sqr()
        })
        .collect();
    let fnorm: Vec<f64> = f.iter().map(|z| z.norm_sqr()).collect();
    let rel = (pairwise_sum(&resid) / pairwise_sum(&fnorm)).sqrt();
    Some((rel, idx.into_iter().zip(coeffs).collect()))
}

/// Sweeps the degree upward, stopping at the first fit below the residual
/// threshold; falls back to the best fit found. The accepted polynomial
/// has negligible leading terms trimmed before the degree is read off.
fn poly_sweep(
    f: &[Complex64],
    points: &[Vec<f64>],
    a_mat: &[f64],
    center: &[f64],
    d: usize,
) -> (f64, u32, Poly) {
    let mut best: Option<(f64, Vec<((u32, u32), Complex64)>)> = None;
    for deg in 0..=DEGREE_CAP {
        if let Some((rel, coeffs)) = poly_fit_at_degree(f, points, a_mat, center, d, deg) {
            let better = best.as_ref().is_none_or(|(r, _)| rel < *r);
            if better {
                best = Some((rel, coeffs));
            }
            if rel < RESIDUAL_THRESHOLD {
                break;
            }
        }
    }
    match best {
        Some((rel, coeffs)) => {
            let cmax = coeffs.iter().map(|(_, c)| c.norm()).fold(0.0, f64::max);
            let mut poly = Poly::zero(d);
            for (alpha, c) in coeffs {
                if c.norm() > 1e-8 * cmax {
                    poly.add_term(alpha, c);
                }
            }
            (rel, poly.total_degree(), poly)
        }
        None => (1.0, DEGREE_CAP, Poly::zero(d)),
    }
}

/// The finiteness cross-check at N ∈ {d, 2m+d, 2m+d+2}: for a genuine
/// degree-m form the first two weights sit on the divergent side of the
/// dichotomy and the third just inside convergence. The middle (margin-0)
/// probe is only log-divergent and its finite-box slope scales with the
/// tail/bulk ratio of the integrand — large Hermite-sized polynomial
/// coefficients make it register (slope ≈ 1) while generic O(1)
/// coefficients leave it flat — so consistency rests on the two robust
/// probes: clear divergence at N = d (true for every form in the class)
/// and clearly bounded growth at the margin-1 probe, which still catches
/// an underestimated degree (that probe then lands deep in the divergent
/// range, slope ≥ 1, for every coefficient scale). The margin-0 verdict
/// is reported but not scored. A sum that overflows f64 is recorded as
/// divergent-fast.
fn bh_cross_check(f: &Signal, degree: u32) -> Result<(Vec<(f64, Verdict)>, bool)> {
    let d = f.grid.dim as f64;
    let m = degree as f64;
    let radii = default_radii(f.grid.half_extent);
    let ns = [d, 2.0 * m + d, 2.0 * m + d + 2.0];
    let mut verdicts = Vec::new();
    let mut slopes = Vec::new();
    for &n in &ns {
        let (v, s) = match bh_functional(f, n, &radii) {
            Ok(t) => (t.verdict, t.growth_exponent),
            Err(TfaError::Numerical(_)) => (Verdict::DivergentFast, f64::INFINITY),
            Err(e) => return Err(e),
        };
        verdicts.push((n, v));
        slopes.push(s);
    }
    let consistent = slopes[0] >= 0.3 && slopes[2] < 1.0;
    Ok((verdicts, consistent))
}

/// Classifies a sampled signal against the form P(x)e^{−π⟨A(x−a),x−a⟩}
/// (with an optional modulation) and estimates (A, deg P).
///
/// Pipeline: Gaussian mollification and a weighted quadratic fit of
/// log|g| give a coarse rate (deconvolved through the Gaussian⋆Gaussian
/// composition A = G(I−G)⁻¹) and the center/modulation/chirp estimates;
/// a tail fit of log|f| refines the rate; three alternating rounds of
/// polynomial fit and rate refit polish both; a finiteness cross-check
/// validates the claimed degree.
pub fn detect(f: &Signal) -> Result<DetectionResult> {
    let grid = f.grid;
    let d = grid.dim;
    if f.is_zero() {
        return Err(precondition("detect requires a nonzero signal"));
    }
    // provenance is deliberately ignored: detection works from samples
    let mut work = f.raw();
    let max = work.samples.iter().map(|z| z.norm()).fold(0.0, f64::max);
    for z in work.samples.iter_mut() {
        *z /= max;
    }

    // (1) mollify, (2) coarse quadratic fit of log|g|
    let g = gaussian_mollify(&work);
    let gmax = g.samples.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let region: Vec<usize> =
        (0..grid.total_points()).filter(|&k| g.samples[k].norm() > 1e-6 * gmax).collect();
    if region.len() < 50 {
        return Err(precondition("mollified fit region has fewer than 50 lattice points"));
    }
    let pts: Vec<Vec<f64>> = region.iter().map(|&k| grid.coords(k)).collect();
    let logs: Vec<f64> = region.iter().map(|&k| g.samples[k].norm().ln()).collect();
    let wts: Vec<f64> = region.iter().map(|&k| g.samples[k].norm()).collect();
    let (g_fit, lambda, _) =
        quad_fit(&pts, &logs, &wts, d).ok_or_else(|| precondition("degenerate quadratic fit"))?;

    // deconvolve the unit mollifier: g has rate G = A(A+I)^{-1}
    let eye: Vec<f64> = (0..d * d).map(|k| if k % (d + 1) == 0 { 1.0 } else { 0.0 }).collect();
    let i_minus_g: Vec<f64> = (0..d * d).map(|k| eye[k] - g_fit[k]).collect();
    let mut a_est = match mat_inv(&i_minus_g, d) {
        Some(inv) if is_pd(&g_fit, d) => mat_mul(&g_fit, &inv, d),
        _ => eye.clone(),
    };
    if !is_pd(&a_est, d) {
        a_est = eye.clone();
    }
    // center from the linear part: λ = 2πGc
    let mut center = match mat_inv(&g_fit, d) {
        Some(ginv) => (0..d)
            .map(|i| (0..d).map(|j| ginv[i * d + j] * lambda[j]).sum::<f64>() / (2.0 * PI))
            .collect(),
        None => vec![0.0; d],
    };
    if center.iter().any(|c| !c.is_finite() || c.abs() > grid.half_extent) {
        center = vec![0.0; d];
    }

    // (2b) modulation (linear phase) and chirp (quadratic phase) from
    // magnitude-weighted phase increments of the raw samples: for
    // f = |f|e^{i(2πwx + bx²)} the increment phase per step is
    // (2πw + 2bx)Δ, and the |f_k f_{k+1}| weights suppress the π-jumps
    // a real sign change would otherwise inject
    let mut modulation = vec![0.0; d];
    let mut chirp_slope = false;
    if d == 1 {
        let delta = grid.spacing();
        let mut pts_p = Vec::new();
        let mut tgt_p = Vec::new();
        let mut wt_p = Vec::new();
        for k in 0..grid.total_points() - 1 {
            let (p, q) = (work.samples[k], work.samples[k + 1]);
            let step = (q * p.conj()).arg();
            // increments near ±π are sign changes of a real factor, not
            // modulation; drop them outright
            if p.norm() > 1e-6 && q.norm() > 1e-6 && step.abs() < 0.75 * PI {
                pts_p.push(vec![grid.axis_coord(k) + delta / 2.0]);
                tgt_p.push(step / delta);
                wt_p.push(p.norm() * q.norm());
            }
        }
        if pts_p.len() >= 8 {
            let basis = vec![vec![1.0; pts_p.len()], pts_p.iter().map(|p| p[0]).collect()];
            if let Some(c) = lstsq_real(&basis, &tgt_p, &wt_p) {
                modulation[0] = c[0] / (2.0 * PI);
                // a genuine chirp has an exactly linear increment profile;
                // the localized phase sweeps of a complex polynomial factor
                // leave a large misfit, so the quadratic-phase flag is only
                // trusted when the linear model actually fits
                let wsum: f64 = wt_p.iter().sum();
                let ssr: f64 = pts_p
                    .iter()
                    .zip(&tgt_p)
                    .zip(&wt_p)
                    .map(|((p, t), w)| w * (t - c[0] - c[1] * p[0]).powi(2))
                    .sum();
                let rms = (ssr / wsum).sqrt();
                chirp_slope = rms < 0.1 && (c[1] / 2.0).abs() > 1e-2;
            }
        }
    }
    // The phase-increment fit cannot separate genuine modulation from the
    // slowly rotating phase of a complex-coefficient polynomial factor
    // (each near-axis zero of P contributes a localized ±π phase sweep),
    // so the refinement below runs both with the estimated modulation and
    // without; the candidate that explains the signal with lower degree
    // (or lower residual) wins.
    let mut candidates = vec![vec![0.0; d]];
    if modulation.iter().any(|w| w.abs() > 1e-9) {
        candidates.push(modulation.clone());
    }
    let mut chosen: Option<(f64, u32, Poly, Vec<f64>, Vec<f64>, Vec<f64>, Signal)> = None;
    for cand in candidates {
        let mut demod = work.clone();
        for k in 0..grid.total_points() {
            let x = grid.coords(k);
            let ip: f64 = cand.iter().zip(&x).map(|(w, t)| w * t).sum();
            demod.samples[k] *= Complex64::new(0.0, -2.0 * PI * ip).exp();
        }
        let (res, deg, poly, a_ref, c_ref) =
            refine_fit(&demod, a_est.clone(), center.clone());
        let better = match &chosen {
            None => true,
            Some((r0, d0, ..)) => {
                if res < RESIDUAL_THRESHOLD && *r0 < RESIDUAL_THRESHOLD {
                    deg < *d0 || (deg == *d0 && res < *r0)
                } else {
                    res < *r0
                }
            }
        };
        if better {
            chosen = Some((res, deg, poly, a_ref, c_ref, cand, demod));
        }
    }
    let (residual, degree_est, poly, a_est, center, modulation, work) =
        chosen.expect("at least one modulation candidate");
    // a complex leading coefficient of even degree also produces a
    // locally linear increment profile over a narrow envelope, so the
    // phase flag alone is not conclusive: a genuine chirp additionally
    // defeats the real-rate fit (residual stuck at the threshold and/or
    // polynomial degree pushed to the cap), while a genuine form fits
    // exactly at its true degree
    let chirped = chirp_slope && (residual >= RESIDUAL_THRESHOLD || degree_est == DEGREE_CAP);
    let form_ok = residual < RESIDUAL_THRESHOLD && !chirped;

    // (4) finiteness cross-check. The joint-weight condition is only
    // translation/modulation-free in its centered form (a shift tilts the
    // diagonal strip and forces divergence for every N), so the check
    // runs on the centered, demodulated reconstruction.
    // The joint weight is additionally dilation-balanced only at unit
    // rate (a narrow envelope widens the Fourier factor and the strip
    // |y| = a|x| exits the shell geometry the dichotomy thresholds were
    // set in), so for d = 1 the check runs on the rate-normalized
    // reconstruction f(x/√a) — same form class and degree, rate 1.
    let check_signal = if form_ok {
        let (ck_rate, ck_poly) = if d == 1 && a_est[0] > 0.0 {
            (vec![1.0], poly.dilate(1.0 / a_est[0].sqrt()))
        } else {
            (a_est.clone(), poly.clone())
        };
        let spec = GaussHermiteSpec::new(
            d,
            ck_poly,
            ck_rate,
            vec![0.0; d * d],
            vec![0.0; d],
            vec![0.0; d],
        )?;
        sample_spec(&spec, grid)?
    } else {
        work.clone()
    };
    let (bh_verdicts, consistent) = bh_cross_check(&check_signal, degree_est)?;

    Ok(DetectionResult {
        is_gauss_hermite: form_ok && consistent,
        a_est,
        degree_est,
        residual,
        bh_verdicts,
        chirped,
        center_est: center,
        modulation_est: modulation,
    })
}

/// Rate/center/polynomial refinement of a demodulated signal starting
/// from the coarse quadratic-fit estimates: a 1-D tail fit of log|f|,
/// then alternating polynomial fit and rate refit.
fn refine_fit(
    work: &Signal,
    mut a_est: Vec<f64>,
    mut center: Vec<f64>,
) -> (f64, u32, Poly, Vec<f64>, Vec<f64>) {
    let grid = work.grid;
    let d = grid.dim;
    // (2c) 1-D tail refinement of the rate on |x| ≥ L/2: log|f| against
    // [x², x, log|x|, 1, 1/x, 1/x²] with median outlier rejection (the
    // log|x| term absorbs the polynomial factor, the reciprocal terms its
    // subleading corrections; outlier rejection drops zeros of P)
    if d == 1 {
        let mut tail: Vec<(f64, f64)> = (0..grid.total_points())
            .filter_map(|k| {
                let x = grid.axis_coord(k);
                let a = work.samples[k].norm();
                (x.abs() >= grid.half_extent / 2.0 && a > 0.0).then(|| (x, a.ln()))
            })
            .collect();
        for _ in 0..3 {
            if tail.len() < 12 {
                break;
            }
            let basis: Vec<Vec<f64>> = vec![
                tail.iter().map(|p| p.0 * p.0).collect(),
                tail.iter().map(|p| p.0).collect(),
                tail.iter().map(|p| p.0.abs().ln()).collect(),
                vec![1.0; tail.len()],
                tail.iter().map(|p| 1.0 / p.0).collect(),
                tail.iter().map(|p| 1.0 / (p.0 * p.0)).collect(),
            ];
            let target: Vec<f64> = tail.iter().map(|p| p.1).collect();
            let w = vec![1.0; tail.len()];
            let Some(c) = lstsq_real(&basis, &target, &w) else { break };
            if -c[0] / PI > 0.0 {
                a_est = vec![-c[0] / PI];
                let ctr = c[1] / (2.0 * PI * a_est[0]);
                if ctr.is_finite() && ctr.abs() <= grid.half_extent {
                    center = vec![ctr];
                }
            }
            let res: Vec<f64> = tail
                .iter()
                .enumerate()
                .map(|(k, p)| {
                    let fit: f64 = (0..6).map(|j| c[j] * basis[j][k]).sum();
                    (p.1 - fit).abs()
                })
                .collect();
            let med = median(res.clone());
            let keep: Vec<(f64, f64)> = tail
                .iter()
                .zip(&res)
                .filter(|(_, &r)| r <= 5.0 * med + 1e-12)
                .map(|(p, _)| *p)
                .collect();
            if keep.len() == tail.len() {
                break;
            }
            tail = keep;
        }
    }

    // (3) alternate polynomial fit and rate refit
    let all_pts: Vec<Vec<f64>> = (0..grid.total_points()).map(|k| grid.coords(k)).collect();
    let mut fit = poly_sweep(&work.samples, &all_pts, &a_est, &center, d);
    for _ in 0..3 {
        if fit.0 < RESIDUAL_THRESHOLD && fit.2.is_zero() {
            break;
        }
        // refit the rate on log|f| − log|P| away from zeros of P
        let pvals: Vec<f64> = all_pts
            .iter()
            .map(|p| {
                let u: Vec<f64> = (0..d).map(|i| p[i] - center[i]).collect();
                fit.2.eval(&u).norm()
            })
            .collect();
        let pmed = median(
            pvals
                .iter()
                .zip(&work.samples)
                .filter(|(_, f)| f.norm() > 1e-6)
                .map(|(&p, _)| p)
                .collect(),
        );
        let sel: Vec<usize> = (0..all_pts.len())
            .filter(|&k| {
                let a = work.samples[k].norm();
                a > 1e-13 && pvals[k] > 0.05 * pmed
            })
            .collect();
        if sel.len() < 20 {
            break;
        }
        let rp: Vec<Vec<f64>> = sel.iter().map(|&k| all_pts[k].clone()).collect();
        let rt: Vec<f64> =
            sel.iter().map(|&k| work.samples[k].norm().ln() - pvals[k].ln()).collect();
        let rw = vec![1.0; sel.len()];
        if let Some((g2, lam2, _)) = quad_fit(&rp, &rt, &rw, d) {
            if is_pd(&g2, d) {
                a_est = g2;
                if let Some(ainv) = mat_inv(&a_est, d) {
                    let c2: Vec<f64> = (0..d)
                        .map(|i| {
                            (0..d).map(|j| ainv[i * d + j] * lam2[j]).sum::<f64>() / (2.0 * PI)
                        })
                        .collect();
                    if c2.iter().all(|c| c.is_finite() && c.abs() <= grid.half_extent) {
                        center = c2;
                    }
                }
            }
        }
        let next = poly_sweep(&work.samples, &all_pts, &a_est, &center, d);
        if next.0 >= fit.0 {
            break;
        }
        fit = next;
    }
    let (residual, degree_est, poly) = fit;
    (residual, degree_est, poly, a_est, center)
}

/// Equality-case probe: the pair attains the covariance equality exactly
/// when the gap matrix vanishes, which forces both inputs Gaussian.
#[derive(Debug, Clone, Serialize)]
pub struct EqualityProbe {
    pub is_equality_pair: bool,
    pub evidence: CovarianceReport,
}

pub fn equality_case_probe(u: &Signal, v: &Signal) -> Result<EqualityProbe> {
    let evidence = covariance_report(u, v)?;
    let mut is_equality_pair = evidence.equality_case;
    if is_equality_pair {
        // cross-validate: a genuine equality pair must be degree-0 forms
        for s in [u, v] {
            let det = detect(s)?;
            if det.degree_est != 0 || det.residual >= RESIDUAL_THRESHOLD {
                is_equality_pair = false;
            }
        }
    }
    Ok(EqualityProbe { is_equality_pair, evidence })
}
