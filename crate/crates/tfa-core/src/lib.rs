//! Time-frequency analysis toolkit: ambiguity, windowed Fourier and
//! Wigner transforms of sampled signals, Hermite bases, uncertainty
//! inequalities, weighted integrability functionals with finiteness
//! diagnostics, and a Gauss–Hermite form detector.

// index-based loops and tuple-heavy signatures are idiomatic in the dense
// matrix/lattice code here; `!(x > 0)` deliberately rejects NaN
#![allow(clippy::needless_range_loop, clippy::type_complexity, clippy::neg_cmp_op_on_partial_ord)]

pub mod detector;
pub mod error;
pub mod fourier;
pub mod functionals;
pub mod gauss;
pub mod grid;
pub mod hermite;
pub mod io;
pub mod poly;
pub mod report;
pub mod signal;
pub mod sum;
pub mod surface;
pub mod transforms;
pub mod uncertainty;
pub mod verify;

pub use error::{Result, TfaError};
pub use gauss::{GaussForm, GaussHermiteSpec};
pub use grid::Grid;
pub use hermite::HermiteIndex;
pub use signal::{OperatorParams, Signal};
pub use surface::Surface;
