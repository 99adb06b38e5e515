//! Uniform centered sampling lattices for boxes [-L, L)^d.

use crate::error::{precondition, Result};
use serde::{Deserialize, Serialize};

/// Uniform sampling lattice of the centered box [-L, L)^d.
///
/// Axis coordinates are x_k = -L + k*Δ with Δ = 2L/n; since n is even,
/// the coordinate 0 is always the sample at index n/2.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Grid {
    pub dim: usize,
    pub half_extent: f64,
    pub points_per_axis: usize,
}

impl Grid {
    pub fn new(dim: usize, half_extent: f64, points_per_axis: usize) -> Result<Grid> {
        if dim != 1 && dim != 2 {
            return Err(precondition(format!("unsupported dimension {dim} (must be 1 or 2)")));
        }
        if !(half_extent > 0.0) || !half_extent.is_finite() {
            return Err(precondition(format!("half extent must be positive, got {half_extent}")));
        }
        if !points_per_axis.is_multiple_of(2) || points_per_axis < 8 {
            return Err(precondition(format!(
                "points per axis must be even and >= 8, got {points_per_axis}"
            )));
        }
        Ok(Grid { dim, half_extent, points_per_axis })
    }

    /// Axis spacing Δ = 2L/n.
    pub fn spacing(&self) -> f64 {
        2.0 * self.half_extent / self.points_per_axis as f64
    }

    /// Coordinate of index k along one axis.
    pub fn axis_coord(&self, k: usize) -> f64 {
        -self.half_extent + k as f64 * self.spacing()
    }

    /// Total number of lattice points n^d.
    pub fn total_points(&self) -> usize {
        self.points_per_axis.pow(self.dim as u32)
    }

    /// Quadrature weight Δ^d of one lattice cell.
    pub fn cell_weight(&self) -> f64 {
        self.spacing().powi(self.dim as i32)
    }

    /// Coordinates of the flat (row-major) index.
    pub fn coords(&self, flat: usize) -> Vec<f64> {
        let n = self.points_per_axis;
        match self.dim {
            1 => vec![self.axis_coord(flat)],
            2 => vec![self.axis_coord(flat / n), self.axis_coord(flat % n)],
            _ => unreachable!(),
        }
    }

    /// Flat index from per-axis indices.
    pub fn flat_index(&self, idx: &[usize]) -> usize {
        match self.dim {
            1 => idx[0],
            2 => idx[0] * self.points_per_axis + idx[1],
            _ => unreachable!(),
        }
    }

    /// The dual grid of the continuous-convention Fourier transform:
    /// spacing 1/(2L), same point count, half extent n/(4L).
    pub fn dual(&self) -> Grid {
        Grid {
            dim: self.dim,
            half_extent: self.points_per_axis as f64 / (4.0 * self.half_extent),
            points_per_axis: self.points_per_axis,
        }
    }

    /// True when the dual grid coincides with the grid itself (n = 4L²).
    pub fn is_self_dual(&self) -> bool {
        (self.dual().half_extent - self.half_extent).abs() < 1e-12 * self.half_extent
    }

    /// Nearest lattice step count for a shift along one axis; errors if the
    /// shift is not an integer multiple of `unit` within 1e-9.
    pub fn lattice_steps(&self, shift: f64, unit: f64) -> Result<i64> {
        let steps = shift / unit;
        let rounded = steps.round();
        if (steps - rounded).abs() > 1e-9 {
            return Err(precondition(format!(
                "shift {shift} is not on the lattice (unit {unit})"
            )));
        }
        Ok(rounded as i64)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spacing_and_counts() {
        let g = Grid::new(1, 8.0, 256).unwrap();
        assert_eq!(g.spacing(), 0.0625);
        assert_eq!(g.total_points(), 256);
        let g2 = Grid::new(2, 4.0, 64).unwrap();
        assert_eq!(g2.spacing(), 0.125);
        assert_eq!(g2.total_points(), 4096);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(Grid::new(1, 8.0, 255).is_err());
        assert!(Grid::new(1, -1.0, 256).is_err());
        assert!(Grid::new(3, 8.0, 256).is_err());
        assert!(Grid::new(1, 8.0, 6).is_err());
    }

    #[test]
    fn zero_is_a_sample() {
        let g = Grid::new(1, 8.0, 256).unwrap();
        assert_eq!(g.axis_coord(128), 0.0);
        assert_eq!(g.axis_coord(0), -8.0);
    }

    #[test]
    fn dual_of_default_is_self() {
        let g = Grid::new(1, 8.0, 256).unwrap();
        assert!(g.is_self_dual());
        let d = g.dual();
        assert_eq!(d.half_extent, 8.0);
        let g2 = Grid::new(2, 4.0, 32).unwrap();
        assert_eq!(g2.dual().half_extent, 2.0);
        assert!(!g2.is_self_dual());
    }

    #[test]
    fn row_major_coords() {
        let g = Grid::new(2, 4.0, 8).unwrap();
        let c = g.coords(3 * 8 + 5);
        assert_eq!(c[0], g.axis_coord(3));
        assert_eq!(c[1], g.axis_coord(5));
        assert_eq!(g.flat_index(&[3, 5]), 29);
    }
}
