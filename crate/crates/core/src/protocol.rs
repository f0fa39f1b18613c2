//! The weak measurement → amplitude damping → reversal protocol in its two
//! scenarios:
//!
//! * case A: only qubit A is exposed to the reservoir, and WM/WMR act on A;
//! * case B: both qubits see independent identical reservoirs, and WM/WMR
//!   act on both.
//!
//! Each scenario is built by composing the channel operations (the
//! canonical route, [`evolve`]) and from closed-form expressions for the
//! final X-state. For case B the reference closed forms
//! ([`closed_form_case_b`], [`concurrence_case_b`]) do not agree with the
//! composition; they are kept verbatim for comparison and
//! [`composed_form_case_b`] gives the exact expressions.

use crate::channel::{self, decay_factor, ReservoirParams, Target};
use crate::error::{invalid, Error, Result};
use crate::measures;
use crate::optimize::grid_then_golden_max;
use crate::qstate::{werner, DensityMatrix4, XStateParams};

/// Reversal strengths are clamped to `[0, MR_MAX]`; the reversal operator
/// is singular at 1.
pub const MR_MAX: f64 = 1.0 - 1e-9;
/// Closed-form denominators smaller than this are treated as singular.
const SINGULAR_TOL: f64 = 1e-12;
const NUMERIC_GRID_POINTS: usize = 256;
const NUMERIC_XTOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Case {
    A,
    B,
}

impl Case {
    pub fn target(self) -> Target {
        match self {
            Case::A => Target::A,
            Case::B => Target::Both,
        }
    }
}

/// What the numeric reversal optimiser maximises.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Objective {
    Concurrence,
    Steering,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProtocolOutcome {
    pub state: DensityMatrix4,
    /// Product of the WM and WMR post-selection probabilities.
    pub success_prob: f64,
    pub mr_used: f64,
    pub g_used: f64,
}

pub fn clamp_mr(mr: f64) -> f64 {
    mr.clamp(0.0, MR_MAX)
}

fn check_unit(name: &str, x: f64, closed: bool) -> Result<()> {
    let ok = if closed {
        (0.0..=1.0).contains(&x)
    } else {
        (0.0..1.0).contains(&x)
    };
    if !ok {
        let range = if closed { "[0, 1]" } else { "[0, 1)" };
        return Err(invalid(format!("{name} = {x} outside {range}")));
    }
    Ok(())
}

fn check_params(p: f64, m: f64, mr: f64, g: f64) -> Result<()> {
    check_unit("p", p, true)?;
    check_unit("m", m, false)?;
    check_unit("mr", mr, false)?;
    check_unit("g", g, true)
}

/// Werner(p) → WM(m) → damping(g) → WMR(mr) on the qubits of `case`.
pub fn evolve(case: Case, p: f64, m: f64, mr: f64, g: f64) -> Result<ProtocolOutcome> {
    check_params(p, m, mr, g)?;
    let target = case.target();
    let wm = channel::weak_measure(&werner(p)?, target, m)?;
    let damped = channel::amplitude_damp(&wm.state, target, g)?;
    let rev = channel::measure_reverse(&damped, target, mr)?;
    Ok(ProtocolOutcome {
        state: rev.state,
        success_prob: wm.success_prob * rev.success_prob,
        mr_used: mr,
        g_used: g,
    })
}

pub fn evolve_case_a(p: f64, m: f64, mr: f64, g: f64) -> Result<ProtocolOutcome> {
    evolve(Case::A, p, m, mr, g)
}

pub fn evolve_case_b(p: f64, m: f64, mr: f64, g: f64) -> Result<ProtocolOutcome> {
    evolve(Case::B, p, m, mr, g)
}

fn case_a_denominator(m: f64, mr: f64, g: f64) -> Result<f64> {
    let den = m - 2.0 + (2.0 + g * (m - 1.0) - m) * mr;
    if den.abs() <= SINGULAR_TOL {
        return Err(Error::SingularConfiguration(format!(
            "case A denominator {den:e} (m = {m}, mr = {mr}, g = {g})"
        )));
    }
    Ok(den)
}

/// Final case-A state from its closed form.
pub fn closed_form_case_a(p: f64, m: f64, mr: f64, g: f64) -> Result<XStateParams> {
    check_params(p, m, mr, g)?;
    let den = case_a_denominator(m, mr, g)?;
    let half = 2.0 * den;
    Ok(XStateParams {
        rho11: (mr - 1.0) * (2.0 + g * (m - 1.0) * (1.0 + p) - m * (1.0 + p)) / half,
        rho22: (1.0 - mr) * (m - 2.0 + g * (m - 1.0) * (p - 1.0) - m * p) / half,
        rho33: g * (m - 1.0) * (1.0 + p) / half,
        rho44: g * (1.0 - m) * (p - 1.0) / half,
        rho14: 0.0,
        rho23: p * g.sqrt() * (1.0 - m).sqrt() * (1.0 - mr).sqrt() / den,
    })
}

/// Closed-form concurrence of the case-A state.
pub fn concurrence_case_a(p: f64, m: f64, mr: f64, g: f64) -> Result<f64> {
    check_params(p, m, mr, g)?;
    let den = case_a_denominator(m, mr, g)?;
    let theta = g * (1.0 - mr) * (m - 1.0) * (p - 1.0) * (2.0 + (1.0 + p) * (g * (m - 1.0) - m));
    let theta = nonnegative("Θ", theta)?;
    let coherence = 2.0 * p * g.sqrt() * (1.0 - m).sqrt() * (1.0 - mr).sqrt();
    Ok(((theta.sqrt() - coherence) / den).max(0.0))
}

fn nonnegative(name: &str, x: f64) -> Result<f64> {
    if x < -SINGULAR_TOL {
        return Err(Error::InvalidState(format!("{name} = {x:e} is negative")));
    }
    Ok(x.max(0.0))
}

/// Reversal strength that balances qubit A's populations after damping,
/// (2 − 2g − m + 2gm)/(2 − g − m + gm); it maximises the case-A
/// concurrence.
pub fn optimal_mr_a(m: f64, g: f64) -> f64 {
    clamp_mr((2.0 - 2.0 * g - m + 2.0 * g * m) / (2.0 - g - m + g * m))
}

/// The case-B normaliser Q of the reference form.
fn case_b_q(p: f64, m: f64, mr: f64, g: f64) -> f64 {
    2.0 * m * (2.0 + (g * (2.0 + g - g * p - 2.0 * mr) + 2.0 * (-2.0 + mr)) * mr)
        - 4.0
        - m * m * (-1.0 + p) * ((1.0 - g) * (2.0 + g - mr) * mr - 1.0)
        + mr * (8.0 - 4.0 * mr + g * (-4.0 + (4.0 + g * (-1.0 + p)) * mr))
}

/// The bracket shared by the reference ρ11, Υ and optimal-reversal formula.
fn case_b_bracket(p: f64, m: f64, g: f64) -> f64 {
    m * (4.0 + m * (p - 1.0)) - 4.0 + g * g * (p - 1.0) + g * (4.0 + m * (m - 4.0 - m * p))
}

fn case_b_q_checked(p: f64, m: f64, mr: f64, g: f64) -> Result<f64> {
    let q = case_b_q(p, m, mr, g);
    if q.abs() <= SINGULAR_TOL {
        return Err(Error::SingularConfiguration(format!(
            "case B normaliser Q = {q:e} (p = {p}, m = {m}, mr = {mr}, g = {g})"
        )));
    }
    Ok(q)
}

/// Case-B state from the reference closed forms, transcribed term by term.
///
/// These disagree with [`evolve_case_b`] in ρ11, ρ22 and Q (ρ33, ρ44 and
/// ρ23 have the right numerators); see [`composed_form_case_b`].
pub fn closed_form_case_b(p: f64, m: f64, mr: f64, g: f64) -> Result<XStateParams> {
    check_params(p, m, mr, g)?;
    let q = case_b_q_checked(p, m, mr, g)?;
    let x = XStateParams {
        rho11: (mr - 1.0).powi(2) * case_b_bracket(p, m, g) / q,
        rho22: g * (g - 2.0 + m - p * g + m * p) * (1.0 - mr) / q,
        rho33: g * (m - 1.0) * (m - 2.0 + g * (m - 1.0) * (p - 1.0) - m * p) * (mr - 1.0) / q,
        rho44: g * g * (1.0 - m).powi(2) * (p - 1.0) / q,
        rho14: 0.0,
        rho23: 2.0 * g * (m - 1.0) * p * (mr - 1.0) / q,
    };
    nonnegative("case B rho44", x.rho44)?;
    let recovered = 1.0 - x.rho22 - x.rho33 - x.rho44;
    if (recovered - x.rho11).abs() > 1e-9 {
        log::debug!(
            "case B closed form: rho11 = {} but 1 - rho22 - rho33 - rho44 = {recovered}",
            x.rho11
        );
    }
    Ok(x)
}

/// Case-B concurrence from the reference closed form, transcribed term by
/// term.
pub fn concurrence_case_b(p: f64, m: f64, mr: f64, g: f64) -> Result<f64> {
    check_params(p, m, mr, g)?;
    let q = case_b_q_checked(p, m, mr, g)?;
    let upsilon =
        g * g * (1.0 - m).powi(2) * (p - 1.0) * case_b_bracket(p, m, g) * (mr - 1.0).powi(2);
    let upsilon = nonnegative("Υ", upsilon)?;
    let c = (2.0 * upsilon.sqrt() - 4.0 * g * (-1.0 + m) * p * (mr - 1.0)) / q;
    Ok(c.max(0.0))
}

/// Approximate optimal reversal strength for case B (reference form),
/// 1 − √[g²(1−m)²(p−1) / bracket], clamped to `[0, MR_MAX]`.
pub fn optimal_mr_b(m: f64, g: f64, p: f64) -> Result<f64> {
    if g == 1.0 {
        // radicand reduces to (1 − m)², also at p = 1 where it reads 0/0
        return Ok(clamp_mr(m));
    }
    let radicand = g * g * (1.0 - m).powi(2) * (p - 1.0) / case_b_bracket(p, m, g);
    if radicand.is_nan() || radicand < 0.0 {
        return Err(Error::ApproximationDomain { radicand });
    }
    Ok(clamp_mr(1.0 - radicand.sqrt()))
}

/// Unnormalised case-B populations and coherence before the reversal:
/// (ρ11, ρ22 = ρ33, ρ44, ρ23).
fn case_b_damped(p: f64, m: f64, g: f64) -> (f64, f64, f64, f64) {
    let k = 1.0 - m;
    let outer = (1.0 - p) / 4.0;
    let inner = (1.0 + p) * k / 4.0;
    let excited = (1.0 - p) * k * k / 4.0;
    let coherence = -p * k / 2.0;
    let decay = 1.0 - g;
    (
        outer + 2.0 * decay * inner + decay * decay * excited,
        g * inner + g * decay * excited,
        g * g * excited,
        g * coherence,
    )
}

/// Exact case-B state, obtained by composing the protocol on the X-state
/// entries by hand.
pub fn composed_form_case_b(p: f64, m: f64, mr: f64, g: f64) -> Result<XStateParams> {
    check_params(p, m, mr, g)?;
    let (r11, r22, r44, r23) = case_b_damped(p, m, g);
    let x = 1.0 - mr;
    let (r11, r22, r23) = (x * x * r11, x * r22, x * r23);
    let tr = r11 + 2.0 * r22 + r44;
    if tr.is_nan() || tr < channel::MIN_SUCCESS_PROB {
        return Err(Error::DegenerateOutcome { prob: tr });
    }
    Ok(XStateParams {
        rho11: r11 / tr,
        rho22: r22 / tr,
        rho33: r22 / tr,
        rho44: r44 / tr,
        rho14: 0.0,
        rho23: r23 / tr,
    })
}

/// Reversal strength maximising the case-B concurrence exactly: it equalises
/// ρ11 and ρ44 of the final state.
pub fn optimal_mr_b_exact(m: f64, g: f64, p: f64) -> f64 {
    let (r11, _, r44, _) = case_b_damped(p, m, g);
    if r11 <= 0.0 {
        return 0.0;
    }
    clamp_mr(1.0 - (r44 / r11).sqrt())
}

/// Unclamped objective used by the numeric optimiser: the concurrence
/// witness or the steering functional SI. Both are continuous in mr and
/// stay informative where the clamped measures are flat at zero.
pub fn raw_objective(state: &DensityMatrix4, objective: Objective) -> Result<f64> {
    match objective {
        Objective::Concurrence => measures::concurrence_witness(state),
        Objective::Steering => measures::steering_of(state).map(|r| r.si),
    }
}

/// Clamped measure reported for an objective: concurrence or S.
pub fn objective_measure(state: &DensityMatrix4, objective: Objective) -> Result<f64> {
    match objective {
        Objective::Concurrence => measures::concurrence(state),
        Objective::Steering => measures::steering_of(state).map(|r| r.s),
    }
}

/// Numerically optimal reversal strength: a 256-point scan of
/// `[0, MR_MAX]` followed by golden-section refinement to 1e−8.
///
/// Returns `(mr, value)` where `value` is the clamped measure (concurrence
/// or S) at `mr`.
pub fn optimal_mr_numeric(
    case: Case,
    p: f64,
    m: f64,
    g: f64,
    objective: Objective,
) -> Result<(f64, f64)> {
    check_params(p, m, 0.0, g)?;
    let f = |mr: f64| {
        evolve(case, p, m, mr, g)
            .and_then(|out| raw_objective(&out.state, objective))
            .unwrap_or(f64::NEG_INFINITY)
    };
    let (mr, _) = grid_then_golden_max(f, 0.0, MR_MAX, NUMERIC_GRID_POINTS, NUMERIC_XTOL);
    let mr = clamp_mr(mr);
    let value = objective_measure(&evolve(case, p, m, mr, g)?.state, objective)?;
    Ok((mr, value))
}

/// How the reversal strength is chosen.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MrPolicy {
    Explicit(f64),
    /// Closed-form optimum for the case; case B falls back to the numeric
    /// concurrence optimum outside the formula's domain.
    AnalyticOptimal,
    NumericOptimal(Objective),
}

/// One protocol configuration; time enters through the reservoir.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScenarioConfig {
    pub case: Case,
    pub p: f64,
    pub m: f64,
    pub mr_policy: MrPolicy,
    pub reservoir: ReservoirParams,
    pub allow_markovian: bool,
}

impl ScenarioConfig {
    pub fn validate(&self) -> Result<()> {
        check_unit("p", self.p, true)?;
        check_unit("m", self.m, false)?;
        if let MrPolicy::Explicit(mr) = self.mr_policy {
            check_unit("mr", mr, false)?;
        }
        ReservoirParams::new(self.reservoir.gamma0, self.reservoir.lambda)?;
        if !self.allow_markovian && self.reservoir.regime() != channel::Regime::NonMarkovian {
            return Err(Error::Regime {
                gamma0: self.reservoir.gamma0,
                lambda: self.reservoir.lambda,
            });
        }
        Ok(())
    }

    pub fn decay_factor(&self, t: f64) -> Result<f64> {
        decay_factor(&self.reservoir, t, self.allow_markovian)
    }

    /// Reversal strength for decay factor `g`.
    pub fn resolve_mr(&self, g: f64) -> Result<f64> {
        let (p, m) = (self.p, self.m);
        match self.mr_policy {
            MrPolicy::Explicit(mr) => {
                check_unit("mr", mr, false)?;
                Ok(clamp_mr(mr))
            }
            MrPolicy::AnalyticOptimal => match self.case {
                Case::A => Ok(optimal_mr_a(m, g)),
                Case::B => match optimal_mr_b(m, g, p) {
                    Ok(mr) => Ok(mr),
                    Err(Error::ApproximationDomain { radicand }) => {
                        log::debug!(
                            "analytic case B reversal outside its domain (radicand {radicand:e}), \
                             using the numeric optimum"
                        );
                        optimal_mr_numeric(Case::B, p, m, g, Objective::Concurrence)
                            .map(|(mr, _)| mr)
                    }
                    Err(e) => Err(e),
                },
            },
            MrPolicy::NumericOptimal(objective) => {
                optimal_mr_numeric(self.case, p, m, g, objective).map(|(mr, _)| mr)
            }
        }
    }

    /// Protocol outcome at time `t`.
    pub fn outcome_at(&self, t: f64) -> Result<ProtocolOutcome> {
        let g = self.decay_factor(t)?;
        let mr = self.resolve_mr(g)?;
        evolve(self.case, self.p, self.m, mr, g)
    }
}
