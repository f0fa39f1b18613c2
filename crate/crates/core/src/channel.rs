//! Amplitude damping driven by a Lorentzian reservoir, and the weak
//! measurement / reversal operations that bracket it.

use crate::error::{invalid, Error, Result};
use crate::linalg::ComplexMatrix;
use crate::qstate::DensityMatrix4;

/// Success probabilities below this are treated as an impossible outcome.
pub const MIN_SUCCESS_PROB: f64 = 1e-15;

/// Lorentzian reservoir: excited-state decay rate `gamma0` and spectral
/// width `lambda`, both in inverse time units.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReservoirParams {
    pub gamma0: f64,
    pub lambda: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    /// λ < 2γ₀: oscillating decay factor.
    NonMarkovian,
    /// λ = 2γ₀.
    Critical,
    /// λ > 2γ₀.
    Markovian,
}

impl Default for ReservoirParams {
    fn default() -> Self {
        Self {
            gamma0: 1.0,
            lambda: 0.1,
        }
    }
}

impl ReservoirParams {
    pub fn new(gamma0: f64, lambda: f64) -> Result<Self> {
        if !(gamma0 > 0.0 && gamma0.is_finite()) || !(lambda > 0.0 && lambda.is_finite()) {
            return Err(invalid(format!(
                "reservoir needs gamma0 > 0 and lambda > 0, got gamma0 = {gamma0}, lambda = {lambda}"
            )));
        }
        Ok(Self { gamma0, lambda })
    }

    pub fn regime(&self) -> Regime {
        let edge = 2.0 * self.gamma0;
        if self.lambda < edge {
            Regime::NonMarkovian
        } else if self.lambda > edge {
            Regime::Markovian
        } else {
            Regime::Critical
        }
    }
}

/// Decay factor G_t = e^{−λt}[cos(dt/2) + (λ/d) sin(dt/2)]², d = √(2γ₀λ − λ²).
///
/// With `allow_markovian` set and λ > 2γ₀ the hyperbolic continuation
/// e^{−λt}[cosh(d′t/2) + (λ/d′) sinh(d′t/2)]², d′ = √(λ² − 2γ₀λ), is returned.
/// λ = 2γ₀ is always rejected.
pub fn decay_factor(res: &ReservoirParams, t: f64, allow_markovian: bool) -> Result<f64> {
    if t.is_nan() || t < 0.0 || !t.is_finite() {
        return Err(invalid(format!("time must be finite and >= 0, got {t}")));
    }
    let ReservoirParams { gamma0, lambda } = *res;
    let envelope = (-lambda * t).exp();
    let g = match res.regime() {
        Regime::NonMarkovian => {
            let d = (2.0 * gamma0 * lambda - lambda * lambda).sqrt();
            let half = 0.5 * d * t;
            let amp = half.cos() + lambda / d * half.sin();
            envelope * amp * amp
        }
        Regime::Markovian if allow_markovian => {
            let d = (lambda * lambda - 2.0 * gamma0 * lambda).sqrt();
            let half = 0.5 * d * t;
            let amp = half.cosh() + lambda / d * half.sinh();
            envelope * amp * amp
        }
        _ => return Err(Error::Regime { gamma0, lambda }),
    };
    Ok(g.clamp(0.0, 1.0))
}

/// Which qubit(s) a local operation acts on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Target {
    A,
    B,
    Both,
}

/// Lifts a single-qubit operator onto the two-qubit space.
pub fn lift(op: &ComplexMatrix, target: Target) -> ComplexMatrix {
    let id = ComplexMatrix::identity(2);
    match target {
        Target::A => op.kron(&id),
        Target::B => id.kron(op),
        Target::Both => op.kron(op),
    }
}

/// Single-qubit amplitude-damping Kraus pair for decay factor `g`:
/// K₀ = |0⟩⟨0| + √g|1⟩⟨1|, K₁ = √(1−g)|0⟩⟨1|.
pub fn damping_kraus(g: f64) -> [ComplexMatrix; 2] {
    let k0 = ComplexMatrix::from_diag(&[1.0, g.sqrt()]);
    let k1 = ComplexMatrix::from_real(2, 2, &[0.0, (1.0 - g).sqrt(), 0.0, 0.0]).unwrap();
    [k0, k1]
}

fn apply_kraus(rho: &ComplexMatrix, kraus: &[ComplexMatrix]) -> ComplexMatrix {
    let mut out = ComplexMatrix::zeros(4, 4);
    for k in kraus {
        out = &out + &k.sandwich(rho).expect("4x4 Kraus operator");
    }
    out
}

/// Amplitude damping with decay factor `g` on the selected qubit(s).
pub fn amplitude_damp(rho: &DensityMatrix4, target: Target, g: f64) -> Result<DensityMatrix4> {
    if !(0.0..=1.0).contains(&g) {
        return Err(invalid(format!("decay factor g = {g} outside [0, 1]")));
    }
    let kraus = damping_kraus(g);
    let qubits: &[Target] = match target {
        Target::Both => &[Target::A, Target::B],
        Target::A => &[Target::A],
        Target::B => &[Target::B],
    };
    let mut m = rho.matrix().clone();
    for &q in qubits {
        let lifted: Vec<_> = kraus.iter().map(|k| lift(k, q)).collect();
        m = apply_kraus(&m, &lifted);
    }
    DensityMatrix4::new(m)
}

/// Post-selected state of a local operation and its probability.
#[derive(Debug, Clone, PartialEq)]
pub struct LocalOpResult {
    pub state: DensityMatrix4,
    pub success_prob: f64,
}

/// M_wk = |0⟩⟨0| + √(1−m)|1⟩⟨1|.
pub fn weak_measurement_operator(m: f64) -> ComplexMatrix {
    ComplexMatrix::from_diag(&[1.0, (1.0 - m).sqrt()])
}

/// M_rev = √(1−m_r)|0⟩⟨0| + |1⟩⟨1|.
pub fn reversal_operator(mr: f64) -> ComplexMatrix {
    ComplexMatrix::from_diag(&[(1.0 - mr).sqrt(), 1.0])
}

fn check_strength(name: &str, x: f64) -> Result<()> {
    if !(0.0..1.0).contains(&x) {
        return Err(invalid(format!("{name} strength {x} outside [0, 1)")));
    }
    Ok(())
}

fn post_select(rho: &DensityMatrix4, op: &ComplexMatrix) -> Result<LocalOpResult> {
    let out = op.sandwich(rho.matrix())?;
    let weight = out.trace().re;
    let prob = (weight / rho.matrix().trace().re).min(1.0);
    if prob.is_nan() || prob < MIN_SUCCESS_PROB {
        return Err(Error::DegenerateOutcome { prob });
    }
    Ok(LocalOpResult {
        state: DensityMatrix4::new(out.scale(1.0 / weight))?,
        success_prob: prob,
    })
}

/// Weak measurement of strength `m`, post-selected on the non-collapsing
/// outcome. For [`Target::Both`] the product operator is applied once.
pub fn weak_measure(rho: &DensityMatrix4, target: Target, m: f64) -> Result<LocalOpResult> {
    check_strength("weak measurement", m)?;
    post_select(rho, &lift(&weak_measurement_operator(m), target))
}

/// Weak measurement reversal of strength `mr`.
pub fn measure_reverse(rho: &DensityMatrix4, target: Target, mr: f64) -> Result<LocalOpResult> {
    check_strength("reversal", mr)?;
    post_select(rho, &lift(&reversal_operator(mr), target))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{mat_mul, C64};
    use crate::qstate::{to_x_params, validate, werner, STATE_TOL};
    use crate::test_util::{random_state, random_x_state};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    const DEFAULT: ReservoirParams = ReservoirParams {
        gamma0: 1.0,
        lambda: 0.1,
    };

    fn non_x_residual(rho: &DensityMatrix4) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..4 {
            for j in 0..4 {
                if i != j && i + j != 3 {
                    worst = worst.max(rho.get(i, j).norm());
                }
            }
        }
        worst
    }

    #[test]
    fn decay_factor_anchors() {
        assert_eq!(decay_factor(&DEFAULT, 0.0, false).unwrap(), 1.0);
        // 30-digit evaluation of the closed form
        let g1 = decay_factor(&DEFAULT, 1.0, false).unwrap();
        assert!((g1 - 0.952_405_882_652_670_8).abs() < 1e-14, "{g1}");
        let g5 = decay_factor(&DEFAULT, 5.0, false).unwrap();
        assert!((g5 - 0.269_116_245_495_553_6).abs() < 1e-14, "{g5}");
    }

    #[test]
    fn decay_factor_first_zero() {
        // Bisection on the bracket cos(dt/2) + (λ/d) sin(dt/2).
        let d = 0.19f64.sqrt();
        let bracket = |t: f64| (0.5 * d * t).cos() + 0.1 / d * (0.5 * d * t).sin();
        let (mut lo, mut hi) = (5.0, 10.0);
        assert!(bracket(lo) > 0.0 && bracket(hi) < 0.0);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if bracket(mid) > 0.0 {
                lo = mid
            } else {
                hi = mid
            }
        }
        assert!((lo - 8.242034311692072).abs() < 1e-12);
        assert!(decay_factor(&DEFAULT, lo, false).unwrap() < 1e-25);
    }

    #[test]
    fn decay_factor_oscillates() {
        let gs: Vec<f64> = (0..=3000)
            .map(|k| decay_factor(&DEFAULT, k as f64 * 0.01, false).unwrap())
            .collect();
        let local_min = (1..gs.len() - 1).find(|&i| gs[i] < gs[i - 1] && gs[i] < gs[i + 1]);
        let i = local_min.expect("a local minimum");
        assert!(gs[i + 1..].iter().any(|&g| g > gs[i] + 1e-3));
        assert!(gs.iter().all(|g| (0.0..=1.0).contains(g)));
    }

    #[test]
    fn decay_factor_errors() {
        assert!(matches!(
            decay_factor(&DEFAULT, -1.0, false),
            Err(Error::InvalidArgument(_))
        ));
        let markov = ReservoirParams::new(1.0, 3.0).unwrap();
        assert_eq!(markov.regime(), Regime::Markovian);
        assert!(matches!(
            decay_factor(&markov, 1.0, false),
            Err(Error::Regime { .. })
        ));
        let critical = ReservoirParams::new(1.0, 2.0).unwrap();
        assert!(matches!(
            decay_factor(&critical, 1.0, true),
            Err(Error::Regime { .. })
        ));
        assert!(ReservoirParams::new(0.0, 1.0).is_err());
    }

    #[test]
    fn markovian_continuation() {
        let markov = ReservoirParams::new(1.0, 3.0).unwrap();
        let g = decay_factor(&markov, 1.0, true).unwrap();
        assert!((g - 0.476_507_778_091_944_17).abs() < 1e-14, "{g}");
        // monotone decay without oscillation
        let gs: Vec<f64> = (0..200)
            .map(|k| decay_factor(&markov, k as f64 * 0.1, true).unwrap())
            .collect();
        assert!(gs.windows(2).all(|w| w[1] <= w[0]));
    }

    #[test]
    fn kraus_completeness() {
        for g in [0.0, 0.25, 0.5, 0.75, 1.0, 0.123] {
            let [k0, k1] = damping_kraus(g);
            let sum = &mat_mul(&k0.adjoint(), &k0).unwrap() + &mat_mul(&k1.adjoint(), &k1).unwrap();
            assert!((&sum - &ComplexMatrix::identity(2)).max_abs() < 1e-15);
        }
    }

    #[test]
    fn damping_g_one_is_identity() {
        let rho = werner(0.7).unwrap();
        let out = amplitude_damp(&rho, Target::Both, 1.0).unwrap();
        assert!((out.matrix() - rho.matrix()).max_abs() < 1e-15);
    }

    #[test]
    fn full_decay_collapses_target() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let rho = random_state(&mut rng);
        let out = amplitude_damp(&rho, Target::A, 0.0).unwrap();
        // qubit A in |0⟩: rows/cols 2,3 vanish
        for i in 0..4 {
            for j in 0..4 {
                if i >= 2 || j >= 2 {
                    assert!(out.get(i, j).norm() < 1e-15);
                }
            }
        }
        // populations transferred: ρ'00,00 = ρ00,00 + ρ10,10 etc.
        assert!((out.get(0, 0) - (rho.get(0, 0) + rho.get(2, 2))).norm() < 1e-15);
        assert!((out.get(0, 1) - (rho.get(0, 1) + rho.get(2, 3))).norm() < 1e-15);

        let both = amplitude_damp(&rho, Target::Both, 0.0).unwrap();
        assert!((both.matrix() - DensityMatrix4::basis(0).matrix()).max_abs() < 1e-14);
    }

    #[test]
    fn damping_scales_werner_coherence() {
        for (p, g) in [(0.8, 0.3), (0.5, 0.9), (1.0, 0.01)] {
            let out = amplitude_damp(&werner(p).unwrap(), Target::A, g).unwrap();
            let want = -p * g.sqrt() / 2.0;
            assert!((out.get(1, 2).re - want).abs() < 1e-15);
        }
    }

    #[test]
    fn damping_is_cptp_on_random_states() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..200 {
            let rho = random_state(&mut rng);
            for g in [0.0, 0.25, 0.5, 0.75, 1.0] {
                for target in [Target::A, Target::B, Target::Both] {
                    let out = amplitude_damp(&rho, target, g).unwrap();
                    let rep = validate(&out);
                    assert!(rep.trace_defect < 1e-12);
                    assert!(rep.min_eigenvalue >= -1e-10);
                }
            }
        }
    }

    #[test]
    fn damping_order_commutes() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let rho = random_state(&mut rng);
        let ab = amplitude_damp(
            &amplitude_damp(&rho, Target::A, 0.3).unwrap(),
            Target::B,
            0.6,
        )
        .unwrap();
        let ba = amplitude_damp(
            &amplitude_damp(&rho, Target::B, 0.6).unwrap(),
            Target::A,
            0.3,
        )
        .unwrap();
        assert!((ab.matrix() - ba.matrix()).max_abs() < 1e-15);
    }

    #[test]
    fn damp_rejects_bad_g() {
        let rho = werner(0.5).unwrap();
        assert!(amplitude_damp(&rho, Target::A, 1.1).is_err());
        assert!(amplitude_damp(&rho, Target::A, -0.1).is_err());
    }

    #[test]
    fn weak_measure_examples() {
        let rho = werner(0.6).unwrap();
        let out = weak_measure(&rho, Target::A, 0.0).unwrap();
        assert_eq!(out.success_prob, 1.0);
        assert!((out.state.matrix() - rho.matrix()).max_abs() < 1e-15);

        // |1⟩ on A (|10⟩⟨10|) is an eigenstate
        let excited = DensityMatrix4::basis(2);
        let out = weak_measure(&excited, Target::A, 0.3).unwrap();
        assert!((out.success_prob - 0.7).abs() < 1e-15);
        assert!((out.state.matrix() - excited.matrix()).max_abs() < 1e-15);

        for (p, m) in [(0.2, 0.5), (0.9, 0.8), (1.0, 0.1)] {
            let out = weak_measure(&werner(p).unwrap(), Target::A, m).unwrap();
            assert!((out.success_prob - (2.0 - m) / 2.0).abs() < 1e-15);
        }
    }

    #[test]
    fn weak_measure_errors() {
        let rho = werner(0.5).unwrap();
        assert!(matches!(
            weak_measure(&rho, Target::A, 1.0),
            Err(Error::InvalidArgument(_))
        ));
        assert!(measure_reverse(&rho, Target::A, -0.2).is_err());
        // |11⟩ under an almost complete measurement on both qubits
        let excited = DensityMatrix4::basis(3);
        let out = weak_measure(&excited, Target::Both, 1.0 - 1e-16);
        assert!(matches!(out, Err(Error::DegenerateOutcome { .. })));
    }

    #[test]
    fn reversal_examples() {
        let rho = werner(0.4).unwrap();
        let out = measure_reverse(&rho, Target::B, 0.0).unwrap();
        assert_eq!(out.success_prob, 1.0);
        assert!((out.state.matrix() - rho.matrix()).max_abs() < 1e-15);

        let ground = DensityMatrix4::basis(1); // |01⟩: A in |0⟩
        let out = measure_reverse(&ground, Target::A, 0.35).unwrap();
        assert!((out.success_prob - 0.65).abs() < 1e-15);
        assert!((out.state.matrix() - ground.matrix()).max_abs() < 1e-15);
    }

    #[test]
    fn matched_reversal_restores_pure_qubit() {
        // |ψ⟩ = (|0⟩ + |1⟩)/√2 on A, |0⟩ on B
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let psi = [
            C64::new(s, 0.0),
            C64::new(0.0, 0.0),
            C64::new(0.0, s),
            C64::new(0.0, 0.0),
        ];
        let rho = DensityMatrix4::new(ComplexMatrix::outer(&psi, &psi)).unwrap();
        let m = 0.6;
        let wm = weak_measure(&rho, Target::A, m).unwrap();
        let rev = measure_reverse(&wm.state, Target::A, m).unwrap();
        assert!((rev.state.matrix() - rho.matrix()).max_abs() < 1e-15);
        assert!((wm.success_prob * rev.success_prob - (1.0 - m)).abs() < 1e-15);
    }

    #[test]
    fn matched_reversal_restores_any_input() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for _ in 0..200 {
            let rho = random_state(&mut rng);
            let m = rng.gen_range(0.0..0.95);
            for target in [Target::A, Target::B, Target::Both] {
                let wm = weak_measure(&rho, target, m).unwrap();
                let damped = amplitude_damp(&wm.state, target, 1.0).unwrap();
                let rev = measure_reverse(&damped, target, m).unwrap();
                assert!((rev.state.matrix() - rho.matrix()).max_abs() < 1e-12);
            }
        }
    }

    #[test]
    fn operations_preserve_x_pattern() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..200 {
            let rho = random_x_state(&mut rng);
            let x: f64 = rng.gen_range(0.0..0.99);
            for target in [Target::A, Target::B, Target::Both] {
                let outs = [
                    amplitude_damp(&rho, target, x).unwrap(),
                    weak_measure(&rho, target, x).unwrap().state,
                    measure_reverse(&rho, target, x).unwrap().state,
                ];
                for out in &outs {
                    assert!(non_x_residual(out) < 1e-14);
                    to_x_params(out, 1e-8).unwrap();
                    assert!(validate(out).is_valid(STATE_TOL));
                }
            }
        }
    }
}
