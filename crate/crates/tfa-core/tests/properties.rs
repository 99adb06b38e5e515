//! Property-based invariants on random Hermite superpositions: transform
//! unitarity, exact symmetries, and the sharp bilinear bounds.

use num_complex::Complex64;
use proptest::prelude::*;
use tfa_core::fourier::{fourier, inverse_fourier};
use tfa_core::hermite::h1d;
use tfa_core::signal::Signal;
use tfa_core::transforms::{ambiguity, moyal_norm, stft};
use tfa_core::Grid;

fn grid() -> Grid {
    Grid::new(1, 8.0, 256).unwrap()
}

/// Superposition Σ cₖ·h_k from up to 5 complex coefficients; filtered to
/// stay well away from the zero signal.
fn superposition() -> impl Strategy<Value = Signal> {
    proptest::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 1..=5)
        .prop_filter("nontrivial signal", |cs| {
            cs.iter().map(|(re, im)| re * re + im * im).sum::<f64>() > 1e-2
        })
        .prop_map(|cs| {
            let g = grid();
            let mut s = Signal::zeros(g);
            for (m, (re, im)) in cs.into_iter().enumerate() {
                s = s.add(&h1d(m as u32, g).scale(Complex64::new(re, im))).unwrap();
            }
            s
        })
}

fn max_diff(a: &Signal, b: &Signal) -> f64 {
    a.samples.iter().zip(&b.samples).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn parseval(s in superposition()) {
        let hat = fourier(&s);
        let gap = (hat.l2_norm() - s.l2_norm()).abs();
        prop_assert!(gap < 1e-10 * s.l2_norm(), "Parseval gap {gap}");
    }

    #[test]
    fn fourier_inverse_round_trip(s in superposition()) {
        let back = inverse_fourier(&fourier(&s));
        prop_assert!(max_diff(&s, &back) < 1e-10);
    }

    #[test]
    fn double_fourier_is_reflection(s in superposition()) {
        let ff = fourier(&fourier(&s));
        let r = s.reflect();
        prop_assert!(max_diff(&ff, &r) < 1e-10);
    }

    #[test]
    fn double_reflection_is_identity_bitwise(s in superposition()) {
        let rr = s.reflect().reflect();
        for (a, b) in rr.samples.iter().zip(&s.samples) {
            prop_assert_eq!(a.re.to_bits(), b.re.to_bits());
            prop_assert_eq!(a.im.to_bits(), b.im.to_bits());
        }
    }

    #[test]
    fn moyal_identity(u in superposition(), v in superposition()) {
        let (sn, pn) = moyal_norm(&u, &v).unwrap();
        prop_assert!((sn - pn).abs() < 1e-7 * pn, "‖A‖={sn} vs ‖u‖‖v‖={pn}");
    }

    #[test]
    fn ambiguity_hermitian_symmetry(u in superposition(), v in superposition()) {
        // A(u,v)(x,y) = conj(A(v,u)(−x,−y)); both lattices are symmetric
        // under negation except for the extreme row/column
        let a = ambiguity(&u, &v).unwrap();
        let b = ambiguity(&v, &u).unwrap();
        let (nx, ny) = (a.x_grid.total_points(), a.y_grid.total_points());
        let mut err = 0.0f64;
        for ix in 1..nx {
            for iy in 1..ny {
                let d = (a.at(ix, iy) - b.at(nx - ix, ny - iy).conj()).norm();
                err = err.max(d);
            }
        }
        prop_assert!(err < 1e-10, "Hermitian symmetry error {err}");
    }

    #[test]
    fn ambiguity_cauchy_schwarz_bound(u in superposition(), v in superposition()) {
        let bound = u.l2_norm() * v.l2_norm();
        let peak = ambiguity(&u, &v).unwrap().max_abs();
        prop_assert!(peak <= bound * (1.0 + 1e-10), "peak {peak} > bound {bound}");
    }

    #[test]
    fn stft_modulus_matches_ambiguity(u in superposition(), v in superposition()) {
        // |S_vu(x,y)| = |A(u,v)(x,−y)|; compare against the reflected row
        let s = stft(&u, &v).unwrap();
        let a = ambiguity(&u, &v).unwrap();
        let (nx, ny) = (a.x_grid.total_points(), a.y_grid.total_points());
        let mut err = 0.0f64;
        for ix in 0..nx {
            for iy in 1..ny {
                err = err.max((s.at(ix, iy).norm() - a.at(ix, ny - iy).norm()).abs());
            }
        }
        prop_assert!(err < 1e-9, "modulus relation error {err}");
    }

    #[test]
    fn moment_linearity_in_mass(s in superposition(), c in 0.1f64..4.0) {
        // second moments of |f|² scale by c² under f → c·f
        let scaled = s.scale(Complex64::new(c, 0.0));
        let m1 = s.moment(&[2], &[0.0]).unwrap();
        let m2 = scaled.moment(&[2], &[0.0]).unwrap();
        prop_assert!((m2 - c * c * m1).abs() < 1e-9 * (1.0 + m2.abs()));
    }

    #[test]
    fn translation_preserves_norm(s in superposition(), k in -8i64..8) {
        let d = grid().spacing();
        let t = s.translate(&[k as f64 * d]).unwrap();
        prop_assert!((t.l2_norm() - s.l2_norm()).abs() < 1e-9);
    }
}
