//! Bilinear time-frequency surfaces: complex samples indexed by a product
//! lattice (x, y) ∈ R^d × R^d, with optional exact per-slice provenance.

use crate::error::{precondition, Result};
use crate::gauss::{log_abs_forms, GaussForm};
use crate::grid::Grid;
use crate::sum::pairwise_sum;
use num_complex::Complex64;

/// Complex samples of a bilinear transform on x_grid × y_grid, row-major
/// with the x index outermost.
///
/// `slice_forms[ix]`, when present, is the exact symbolic description (in
/// the y variable) of the surface slice at x-lattice point ix; it is used
/// for tail evaluation in the weighted functionals.
#[derive(Debug, Clone)]
pub struct Surface {
    pub x_grid: Grid,
    pub y_grid: Grid,
    pub samples: Vec<Complex64>,
    pub slice_forms: Option<Vec<Vec<GaussForm>>>,
}

impl Surface {
    pub fn new(x_grid: Grid, y_grid: Grid, samples: Vec<Complex64>) -> Result<Surface> {
        if samples.len() != x_grid.total_points() * y_grid.total_points() {
            return Err(precondition("surface sample count does not match grids"));
        }
        if samples.iter().any(|s| !s.re.is_finite() || !s.im.is_finite()) {
            return Err(precondition("surface samples must be finite"));
        }
        Ok(Surface { x_grid, y_grid, samples, slice_forms: None })
    }

    pub fn at(&self, ix: usize, iy: usize) -> Complex64 {
        self.samples[ix * self.y_grid.total_points() + iy]
    }

    /// Quadrature L² norm over the product lattice.
    pub fn l2_norm(&self) -> f64 {
        let w = self.x_grid.cell_weight() * self.y_grid.cell_weight();
        let sq: Vec<f64> = self.samples.iter().map(|s| s.norm_sqr()).collect();
        (w * pairwise_sum(&sq)).sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.samples.iter().map(|s| s.norm()).fold(0.0, f64::max)
    }

    /// log|surface(x,y)| with exact tails when per-slice provenance exists.
    pub fn log_abs_at(&self, ix: usize, iy: usize) -> f64 {
        if let Some(forms) = &self.slice_forms {
            let y = self.y_grid.coords(iy);
            return log_abs_forms(&forms[ix], &y);
        }
        let n = self.at(ix, iy).norm();
        if n == 0.0 {
            f64::NEG_INFINITY
        } else {
            n.ln()
        }
    }
}
