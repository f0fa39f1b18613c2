//! Entanglement, steering and fidelity measures for two-qubit states.
//!
//! All logarithms are base 2, with 0·log 0 = 0.

use crate::error::{Error, Result};
use crate::linalg::{self, pauli, ComplexMatrix, PSD_TOL};
use crate::qstate::{
    bloch_from_x, to_x_params, BlochXParams, DensityMatrix4, XStateParams, X_PATTERN_TOL,
};

/// Upper end of the steering functional, reached by maximally entangled
/// pure states.
pub const SI_MAX: f64 = 6.0;
/// Steering bound for local-hidden-state models.
pub const SI_BOUND: f64 = 2.0;

/// Arguments of the entropy terms may dip this far below zero from rounding
/// before they are rejected.
const LOG_ARG_TOL: f64 = 1e-9;

fn xlog2x(x: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else {
        x * x.log2()
    }
}

/// Shannon entropy (bits) of a distribution; tiny negative entries from
/// rounding count as zero.
fn shannon(probs: &[f64]) -> f64 {
    -probs.iter().map(|&p| xlog2x(p)).sum::<f64>()
}

/// Descending eigenvalues of the Hermitian form √ρ ρ̃ √ρ, which is
/// isospectral to ρ(σ_y⊗σ_y)ρ*(σ_y⊗σ_y).
fn wootters_eigenvalues(rho: &DensityMatrix4) -> Result<Vec<f64>> {
    let m = rho.matrix();
    let yy = pauli::y().kron(&pauli::y());
    let spin_flipped = &(&yy * &m.conj()) * &yy;
    let root = linalg::sqrt_psd(m, PSD_TOL)?;
    let r = &(&root * &spin_flipped) * &root;
    // tolerance widened for the rounding of three products
    linalg::psd_eigenvalues(&r, 1e-9)
}

/// √λ₁ − √λ₂ − √λ₃ − √λ₄ without the clamp at zero; positive exactly when
/// the state is entangled.
pub fn concurrence_witness(rho: &DensityMatrix4) -> Result<f64> {
    let lambdas = wootters_eigenvalues(rho)?;
    let roots: Vec<f64> = lambdas.iter().map(|l| l.sqrt()).collect();
    Ok(roots[0] - roots[1] - roots[2] - roots[3])
}

/// Wootters concurrence, in [0, 1].
pub fn concurrence(rho: &DensityMatrix4) -> Result<f64> {
    Ok(concurrence_witness(rho)?.clamp(0.0, 1.0))
}

/// Concurrence of an X-state from its entries:
/// 2·max{0, |ρ14| − √(ρ22ρ33), |ρ23| − √(ρ11ρ44)}.
pub fn concurrence_x(x: &XStateParams) -> f64 {
    let outer = x.rho14.abs() - (x.rho22 * x.rho33).max(0.0).sqrt();
    let inner = x.rho23.abs() - (x.rho11 * x.rho44).max(0.0).sqrt();
    2.0 * outer.max(inner).max(0.0)
}

fn log_arg(x: f64) -> Result<f64> {
    if x < -LOG_ARG_TOL {
        return Err(Error::InvalidState(format!(
            "negative entropy argument {x:e} in steering functional"
        )));
    }
    Ok(x.max(0.0))
}

fn pair_term(c: f64) -> Result<f64> {
    Ok(xlog2x(log_arg(1.0 + c)?) + xlog2x(log_arg(1.0 - c)?))
}

/// The entropic steering functional SI of an X-state in Bloch form, in
/// [0, 6]. The state violates the three-Pauli entropic steering inequality
/// iff SI > 2.
pub fn steering_si(b: &BlochXParams) -> Result<f64> {
    let mut si = pair_term(b.c1)? + pair_term(b.c2)? - pair_term(b.r)?;
    let mut joint = 0.0;
    for term in b.population_terms() {
        joint += xlog2x(log_arg(term)?);
    }
    si += 0.5 * joint;
    Ok(si)
}

/// Normalised steering S = max{0, (SI − 2)/(SI_max − 2)}.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SteeringReport {
    pub si: f64,
    pub s: f64,
    pub steerable: bool,
}

impl SteeringReport {
    pub fn from_si(si: f64) -> Self {
        let s = ((si - SI_BOUND) / (SI_MAX - SI_BOUND)).clamp(0.0, 1.0);
        Self {
            si,
            s,
            steerable: s > 0.0,
        }
    }
}

pub fn steering_s(b: &BlochXParams) -> Result<SteeringReport> {
    steering_si(b).map(SteeringReport::from_si)
}

/// Steering of an X-shaped density matrix.
pub fn steering_of(rho: &DensityMatrix4) -> Result<SteeringReport> {
    steering_s(&bloch_from_x(&to_x_params(rho, X_PATTERN_TOL)?))
}

/// Σ_W [H(A_W B_W) − H(A_W)] over W ∈ {x, y, z}: the conditional Shannon
/// entropies of B's Pauli outcomes given A's.
///
/// For X-states this equals (6 − SI)/2, which makes it an independent check
/// of [`steering_si`].
pub fn conditional_entropy_sum(rho: &DensityMatrix4) -> f64 {
    let id = ComplexMatrix::identity(2);
    let mut total = 0.0;
    for sigma in [pauli::x(), pauli::y(), pauli::z()] {
        let proj = [(&id + &sigma).scale(0.5), (&id - &sigma).scale(0.5)];
        let mut joint = [0.0; 4];
        for (a, pa) in proj.iter().enumerate() {
            for (b, pb) in proj.iter().enumerate() {
                let op = pa.kron(pb);
                joint[2 * a + b] = (&op * rho.matrix()).trace().re;
            }
        }
        let marginal = [joint[0] + joint[1], joint[2] + joint[3]];
        total += shannon(&joint) - shannon(&marginal);
    }
    total
}

/// Bures fidelity (tr √(√ρ₀ ξ √ρ₀))² without clamping.
pub fn bures_fidelity_raw(rho0: &DensityMatrix4, xi: &DensityMatrix4) -> Result<f64> {
    let root = linalg::sqrt_psd(rho0.matrix(), PSD_TOL)?;
    let inner = &(&root * xi.matrix()) * &root;
    let lambdas = linalg::psd_eigenvalues(&inner, 1e-9)?;
    let tr: f64 = lambdas.iter().map(|l| l.sqrt()).sum();
    Ok(tr * tr)
}

/// Bures fidelity, clamped to [0, 1].
pub fn bures_fidelity(rho0: &DensityMatrix4, xi: &DensityMatrix4) -> Result<f64> {
    let raw = bures_fidelity_raw(rho0, xi)?;
    if !(0.0..=1.0).contains(&raw) {
        log::debug!(
            "bures fidelity clamped, raw value {raw:.17} (defect {:e})",
            raw - 1.0
        );
    }
    Ok(raw.clamp(0.0, 1.0))
}
