//! Two-qubit density matrices, Werner states and the X-state / Bloch
//! parameterisations.
//!
//! Basis order is |00⟩, |01⟩, |10⟩, |11⟩ with qubit A as the left
//! (most significant) tensor factor.

use crate::error::{invalid, Error, Result};
use crate::linalg::{self, ComplexMatrix, C64};

/// Tolerance for the X-pattern check in [`to_x_params`].
pub const X_PATTERN_TOL: f64 = 1e-8;
/// Tolerance used by [`DensityMatrix4::checked`] and [`ValidationReport::is_valid`].
pub const STATE_TOL: f64 = 1e-10;

/// A 4×4 two-qubit density matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix4(ComplexMatrix);

impl DensityMatrix4 {
    /// Wraps a 4×4 matrix without checking the density-matrix invariants.
    /// Use [`validate`] or [`DensityMatrix4::checked`] when they matter.
    pub fn new(mat: ComplexMatrix) -> Result<Self> {
        if mat.rows() != 4 || mat.cols() != 4 {
            return Err(invalid(format!(
                "density matrix must be 4x4, got {}x{}",
                mat.rows(),
                mat.cols()
            )));
        }
        Ok(Self(mat))
    }

    /// Wraps a 4×4 matrix, rejecting it unless it is Hermitian, unit-trace
    /// and PSD within [`STATE_TOL`].
    pub fn checked(mat: ComplexMatrix) -> Result<Self> {
        let rho = Self::new(mat)?;
        let report = validate(&rho);
        if !report.is_valid(STATE_TOL) {
            return Err(Error::InvalidState(format!("{report:?}")));
        }
        Ok(rho)
    }

    pub fn maximally_mixed() -> Self {
        Self(ComplexMatrix::identity(4).scale(0.25))
    }

    /// Projector onto the computational basis state `index` (0..4).
    pub fn basis(index: usize) -> Self {
        let mut diag = [0.0; 4];
        diag[index] = 1.0;
        Self(ComplexMatrix::from_diag(&diag))
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.0
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.0
    }

    /// Entry ρ_ij with 0-based indices.
    pub fn get(&self, i: usize, j: usize) -> C64 {
        self.0[(i, j)]
    }
}

/// Werner state p|φ⁻⟩⟨φ⁻| + (1−p)I/4 with |φ⁻⟩ = (|01⟩ − |10⟩)/√2.
pub fn werner(p: f64) -> Result<DensityMatrix4> {
    if !(0.0..=1.0).contains(&p) {
        return Err(invalid(format!("Werner parameter p = {p} outside [0, 1]")));
    }
    Ok(XStateParams::werner(p).to_density())
}

/// The seven real entries of an X-shaped two-qubit state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct XStateParams {
    pub rho11: f64,
    pub rho22: f64,
    pub rho33: f64,
    pub rho44: f64,
    pub rho14: f64,
    pub rho23: f64,
}

impl XStateParams {
    pub fn werner(p: f64) -> Self {
        let outer = (1.0 - p) / 4.0;
        let inner = (1.0 + p) / 4.0;
        Self {
            rho11: outer,
            rho22: inner,
            rho33: inner,
            rho44: outer,
            rho14: 0.0,
            rho23: -p / 2.0,
        }
    }

    pub fn populations(&self) -> [f64; 4] {
        [self.rho11, self.rho22, self.rho33, self.rho44]
    }

    /// The X-shaped matrix with these entries.
    pub fn to_density(&self) -> DensityMatrix4 {
        let mut m = ComplexMatrix::from_diag(&self.populations());
        m[(0, 3)] = C64::new(self.rho14, 0.0);
        m[(3, 0)] = C64::new(self.rho14, 0.0);
        m[(1, 2)] = C64::new(self.rho23, 0.0);
        m[(2, 1)] = C64::new(self.rho23, 0.0);
        DensityMatrix4(m)
    }

    /// Checks nonnegative normalised populations and positivity of both
    /// 2×2 blocks.
    pub fn validate(&self, tol: f64) -> Result<()> {
        let pops = self.populations();
        if let Some(p) = pops.iter().find(|&&p| p < -tol) {
            return Err(Error::InvalidState(format!("negative population {p}")));
        }
        let sum: f64 = pops.iter().sum();
        if (sum - 1.0).abs() > tol {
            return Err(Error::InvalidState(format!("populations sum to {sum}")));
        }
        let outer = (self.rho11.max(0.0) * self.rho44.max(0.0)).sqrt();
        let inner = (self.rho22.max(0.0) * self.rho33.max(0.0)).sqrt();
        if self.rho14.abs() > outer + tol || self.rho23.abs() > inner + tol {
            return Err(Error::InvalidState(format!(
                "coherence exceeds its population bound: {self:?}"
            )));
        }
        Ok(())
    }
}

/// Extracts the X-state parameters, failing if any entry outside the X
/// pattern (or the imaginary part of ρ14, ρ23) exceeds `tol`.
pub fn to_x_params(rho: &DensityMatrix4, tol: f64) -> Result<XStateParams> {
    let m = rho.matrix();
    for i in 0..4 {
        for j in 0..4 {
            let on_pattern = i == j || i + j == 3;
            let z = m[(i, j)];
            let stray = if on_pattern { z.im.abs() } else { z.norm() };
            if stray >= tol {
                return Err(Error::NotXState {
                    row: i,
                    col: j,
                    magnitude: stray,
                });
            }
        }
    }
    Ok(XStateParams {
        rho11: m[(0, 0)].re,
        rho22: m[(1, 1)].re,
        rho33: m[(2, 2)].re,
        rho44: m[(3, 3)].re,
        rho14: m[(0, 3)].re,
        rho23: m[(1, 2)].re,
    })
}

/// Correlation coefficients c1..c3 and local z-polarisations r (qubit A)
/// and s (qubit B) of an X-state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochXParams {
    pub c1: f64,
    pub c2: f64,
    pub c3: f64,
    pub r: f64,
    pub s: f64,
}

impl BlochXParams {
    /// Rebuilds the X-state entries from the Bloch form.
    pub fn to_x_params(&self) -> XStateParams {
        let Self { c1, c2, c3, r, s } = *self;
        XStateParams {
            rho11: (1.0 + c3 + s + r) / 4.0,
            rho22: (1.0 - c3 + r - s) / 4.0,
            rho33: (1.0 - c3 - r + s) / 4.0,
            rho44: (1.0 + c3 - r - s) / 4.0,
            rho14: (c1 - c2) / 4.0,
            rho23: (c1 + c2) / 4.0,
        }
    }

    /// The four combinations 1 ± c3 ± r ± s that appear as 4× populations.
    pub fn population_terms(&self) -> [f64; 4] {
        let Self { c3, r, s, .. } = *self;
        [
            1.0 + c3 + r + s,
            1.0 + c3 - r - s,
            1.0 - c3 - r + s,
            1.0 - c3 + r - s,
        ]
    }
}

pub fn bloch_from_x(x: &XStateParams) -> BlochXParams {
    BlochXParams {
        c1: 2.0 * (x.rho23 + x.rho14),
        c2: 2.0 * (x.rho23 - x.rho14),
        c3: x.rho11 - x.rho22 - x.rho33 + x.rho44,
        r: x.rho11 + x.rho22 - x.rho33 - x.rho44,
        s: x.rho11 - x.rho22 + x.rho33 - x.rho44,
    }
}

/// Defects of a candidate density matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ValidationReport {
    pub hermiticity_defect: f64,
    /// |tr ρ − 1|
    pub trace_defect: f64,
    /// NaN if the eigensolver failed.
    pub min_eigenvalue: f64,
}

impl ValidationReport {
    pub fn is_valid(&self, tol: f64) -> bool {
        self.hermiticity_defect <= tol && self.trace_defect <= tol && self.min_eigenvalue >= -tol
    }
}

pub fn validate(rho: &DensityMatrix4) -> ValidationReport {
    let m = rho.matrix();
    let hermiticity_defect = m.hermiticity_defect();
    let tr = m.trace();
    let trace_defect = (tr - C64::new(1.0, 0.0)).norm();
    // Eigenvalues of the Hermitian part; a large hermiticity defect is
    // reported separately.
    let herm = (m + &m.adjoint()).scale(0.5);
    let min_eigenvalue = linalg::eig_hermitian(&herm, f64::INFINITY)
        .map(|e| e.values[3])
        .unwrap_or(f64::NAN);
    ValidationReport {
        hermiticity_defect,
        trace_defect,
        min_eigenvalue,
    }
}
