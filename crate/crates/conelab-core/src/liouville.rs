//! Explicit Liouville-type bounds from the Riccati variable.
//!
//! On a cone with φ′ ≤ β and link eigenvalue λ, put k = β(n−2) and
//!
//! ```text
//! a(n, β, λ) = (−k + √(k² + 4λ²)) / 2.
//! ```
//!
//! Then the Riccati variable of mode m obeys x_m ≥ (a_m/λ_m²) φ^{n−2}, which
//! exponentiates to the growth bound φ_m ≥ exp(a_m ∫₁ 1/φ). The coefficient
//! is increasing in λ, and for β = 1 it coincides with the flat indicial
//! exponent γ_m — on φ = r the bound is an equality, which pins the constant
//! down: a factor λ²/k² more (a form that sometimes circulates from
//! rationalizing the defining quadratic carelessly) already fails on the
//! half-sine metric at n = 3.
//!
//! Consequences implemented here:
//! * every non-constant harmonic function grows at least like
//!   A(r) = exp(a₁ ∫₁^r 1/φ), so ∫ 1/φ = ∞ forces Liouville;
//! * for the round link and β = 1 this yields a minimal polynomial growth
//!   exponent (n−1)/(√2 β²(n−2)) once n clears an explicit threshold;
//! * with φ′ ≤ β the spaces H_d of harmonic functions of growth r^d are
//!   finite-dimensional, while an r·log r tail caps every mode at
//!   logarithmic growth and H_d is infinite-dimensional for every d ≥ 1
//!   (evidence, not a proof, at desk scale).

use crate::float;
use crate::geometry::{ConeError, ConeSpec};
use crate::modes::{self, GrowthClass, ModeError, ModeOptions, RadialMode};
use crate::quad::{self, QuadError};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

#[derive(Debug, Clone, PartialEq)]
pub enum LiouvilleError {
    /// The Riccati coefficient degenerates at n = 2; surfaces are handled by
    /// the exact 2-d closed form instead.
    TwoDimensional,
    /// The operation needs a declared slope bound φ′ ≤ β.
    BetaUndeclared,
    /// Preconditions on n/β are not met; carries the reason.
    NotApplicable { detail: String },
    BadInput { detail: String },
    Mode(ModeError),
    Cone(ConeError),
    Quad(QuadError),
}

impl From<ModeError> for LiouvilleError {
    fn from(e: ModeError) -> Self {
        LiouvilleError::Mode(e)
    }
}

impl From<ConeError> for LiouvilleError {
    fn from(e: ConeError) -> Self {
        LiouvilleError::Cone(e)
    }
}

impl From<QuadError> for LiouvilleError {
    fn from(e: QuadError) -> Self {
        LiouvilleError::Quad(e)
    }
}

impl core::fmt::Display for LiouvilleError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            LiouvilleError::TwoDimensional => {
                write!(f, "the Riccati coefficient requires n >= 3 (surfaces have an exact closed form)")
            }
            LiouvilleError::BetaUndeclared => {
                write!(f, "the warp declares no slope bound beta")
            }
            LiouvilleError::NotApplicable { detail } => write!(f, "not applicable: {detail}"),
            LiouvilleError::BadInput { detail } => write!(f, "{detail}"),
            LiouvilleError::Mode(e) => write!(f, "{e}"),
            LiouvilleError::Cone(e) => write!(f, "{e}"),
            LiouvilleError::Quad(e) => write!(f, "{e}"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for LiouvilleError {}

/// Growth coefficient a(n, β, λ) = (−βk + √(β²k² + 4λ²))/2, k = n−2,
/// computed in the cancellation-free conjugate form 2λ²/(βk + √(β²k² + 4λ²)).
pub fn riccati_coefficient_a(n: u32, beta: f64, lambda: f64) -> Result<f64, LiouvilleError> {
    if n < 3 {
        return Err(LiouvilleError::TwoDimensional);
    }
    if !(beta > 0.0) || !(lambda > 0.0) {
        return Err(LiouvilleError::BadInput {
            detail: format!("beta and lambda must be positive, got beta={beta}, lambda={lambda}"),
        });
    }
    let k = beta * (n as f64 - 2.0);
    Ok(2.0 * lambda * lambda / (k + float::sqrt(k * k + 4.0 * lambda * lambda)))
}

/// Real dimension threshold 2q + 2√(q² − q), q = 1 + 1/β²; the minimal
/// integer dimension is its ceiling. At β = 1 this is 4 + 2√2 ≈ 6.83, so
/// the polynomial growth estimate starts at n = 7.
pub fn corollary_dimension_threshold(beta: f64) -> f64 {
    let q = 1.0 + 1.0 / (beta * beta);
    2.0 * q + 2.0 * float::sqrt(q * (q - 1.0))
}

/// Minimal polynomial growth exponent (n−1)/(√2 β² (n−2)) of a non-constant
/// harmonic function, valid once n ≥ ⌈threshold(β)⌉.
pub fn min_growth_exponent(n: u32, beta: f64) -> Result<f64, LiouvilleError> {
    let threshold = corollary_dimension_threshold(beta);
    if (n as f64) < threshold {
        return Err(LiouvilleError::NotApplicable {
            detail: format!("n = {n} is below the dimension threshold {threshold:.4} for beta = {beta}"),
        });
    }
    let k = n as f64 - 2.0;
    Ok((n as f64 - 1.0) / (core::f64::consts::SQRT_2 * beta * beta * k))
}

/// Max over a uniform grid on [0, 1] of x/(2√2) − (√(1+x) − 1); the
/// inequality √(1+x) − 1 ≥ x/(2√2) on [0, 1] means the result is ≤ 0
/// (0 exactly at x = 0).
pub fn verify_sqrt_inequality(samples: usize) -> f64 {
    let samples = samples.max(100);
    let mut worst = f64::NEG_INFINITY;
    for i in 0..samples {
        let x = i as f64 / (samples - 1) as f64;
        let violation = x / (2.0 * core::f64::consts::SQRT_2) - (float::sqrt(1.0 + x) - 1.0);
        worst = worst.max(violation);
    }
    worst
}

#[derive(Debug, Clone)]
pub struct ModeSlack {
    pub m: u32,
    pub lambda_sq: f64,
    /// Growth coefficient a_m for this mode.
    pub a: f64,
    /// min over the sampled grid (r ≥ 1) of x_m − (a_m/λ_m²) φ^{n−2}.
    pub min_slack: f64,
    pub argmin_r: f64,
}

#[derive(Debug, Clone)]
pub struct RiccatiBoundReport {
    pub rows: Vec<ModeSlack>,
    /// min over all modes; ≥ −1e−9 certifies the bound on the samples.
    pub worst_slack: f64,
}

/// Check x_m ≥ (a_m/λ_m²) φ^{n−2} on [1, r_max] for modes 1..=m_max.
/// The bound propagates from the vertex only for r ≥ 0 as an inequality
/// seeded at x(0) = 0; it is checked from r = 1 outward, past any startup
/// transients.
pub fn verify_riccati_lower_bound(
    c: &ConeSpec,
    m_max: u32,
    r_max: f64,
) -> Result<RiccatiBoundReport, LiouvilleError> {
    let beta = c.warp().beta().ok_or(LiouvilleError::BetaUndeclared)?;
    if c.n() < 3 {
        return Err(LiouvilleError::TwoDimensional);
    }
    let opts = ModeOptions::default();
    let mut rows = Vec::with_capacity(m_max as usize);
    let mut worst = f64::INFINITY;
    for m in 1..=m_max {
        let mode = modes::integrate_mode(c, m, r_max, &opts)?;
        let lambda = float::sqrt(mode.lambda_sq);
        let a = riccati_coefficient_a(c.n(), beta, lambda)?;
        let coeff = a / mode.lambda_sq;
        let mut min_slack = f64::INFINITY;
        let mut argmin = f64::NAN;
        for (i, &r) in mode.grid.iter().enumerate() {
            if r < 1.0 {
                continue;
            }
            let bound = coeff * float::powi(mode.phi[i], c.n() as i32 - 2);
            let slack = mode.x[i] - bound;
            if slack < min_slack {
                min_slack = slack;
                argmin = r;
            }
        }
        worst = worst.min(min_slack);
        rows.push(ModeSlack { m, lambda_sq: mode.lambda_sq, a, min_slack, argmin_r: argmin });
    }
    Ok(RiccatiBoundReport { rows, worst_slack: worst })
}

/// Tail behavior of ∫₁^r 1/φ, classified from the last two decades.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TailClass {
    /// Increments per decade are flat: I ~ log r (diverges).
    Log,
    /// I ~ r^α with the fitted α > 0 (diverges).
    Power(f64),
    /// Increments decay geometrically: the improper integral converges.
    Bounded(f64),
}

impl TailClass {
    pub fn diverges(&self) -> bool {
        !matches!(self, TailClass::Bounded(_))
    }
}

#[derive(Debug, Clone)]
pub struct LiouvilleVerdict {
    /// ∫₁^{r_max} 1/φ.
    pub integral_value: f64,
    pub tail: TailClass,
    /// Divergence evidence for the improper integral (with the class as the
    /// evidence; never a bare boolean from finite data).
    pub integral_diverges: bool,
    /// Coefficient of the minimal growth function A(r) = exp(a₁ ∫ 1/φ):
    /// a₁ for n ≥ 3 (needs β), the first 2-d mode coefficient 1 for n = 2.
    pub growth_coefficient: Option<f64>,
    /// (r, log A(r)) samples; logarithms because A itself overflows on
    /// sub-linear warps long before r_max.
    pub log_a_samples: Vec<(f64, f64)>,
    /// Minimal polynomial growth exponent when the dimension threshold is
    /// met.
    pub min_growth_poly: Option<f64>,
    pub notes: Vec<String>,
}

/// Exponent band |α| below which the tail is classified as logarithmic.
pub const TAIL_LOG_BAND: f64 = 0.15;

/// Evaluate the divergence criterion ∫ 1/φ = ∞ and attach the minimal
/// growth data. `r_max` ≥ 10³ so the tail fit has two clean decades.
pub fn liouville_verdict(c: &ConeSpec, r_max: f64) -> Result<LiouvilleVerdict, LiouvilleError> {
    if !(r_max >= 1e3) {
        return Err(LiouvilleError::BadInput {
            detail: format!("r_max must be at least 1e3 for the tail fit, got {r_max}"),
        });
    }
    let w = c.warp().clone();
    let inv_phi = move |s: f64| match w.eval(s) {
        Ok((phi, _, _)) => 1.0 / phi,
        Err(_) => f64::NAN,
    };

    // Sample log-spaced radii including the two tail decades.
    let mut nodes = alloc::vec![1.0f64];
    let count = 48;
    for i in 1..=count {
        nodes.push(float::pow(r_max, i as f64 / count as f64));
    }
    let cum = quad::cumulative(&inv_phi, &nodes, 1e-11)?;
    let integral_value = cum[cum.len() - 1];

    // Increment ratio across (r_max/100, r_max/10, r_max).
    let i_at = |r: f64| -> f64 {
        // nodes are r_max^{i/count}: invert by logarithm
        let t = float::ln(r) / float::ln(r_max);
        let i = float::round(t * count as f64) as usize;
        cum[i.min(cum.len() - 1)]
    };
    let (i_lo, i_mid, i_hi) = (i_at(r_max / 100.0), i_at(r_max / 10.0), i_at(r_max));
    let d_lo = i_mid - i_lo;
    let d_hi = i_hi - i_mid;
    let tail = if d_lo <= 0.0 || d_hi <= 0.0 {
        TailClass::Bounded(0.0)
    } else {
        let alpha = float::ln(d_hi / d_lo) / core::f64::consts::LN_10;
        if float::abs(alpha) < TAIL_LOG_BAND {
            TailClass::Log
        } else if alpha > 0.0 {
            TailClass::Power(alpha)
        } else {
            TailClass::Bounded(alpha)
        }
    };

    let mut notes = Vec::new();
    let growth_coefficient = if c.n() == 2 {
        // 2-d: φ_m = exp(m ∫ 1/φ); the slowest non-constant mode has m = 1.
        Some(1.0)
    } else {
        match c.warp().beta() {
            Some(beta) => {
                let (l1sq, _) = c.eigendata(1)?;
                Some(riccati_coefficient_a(c.n(), beta, float::sqrt(l1sq))?)
            }
            None => {
                notes.push("no declared beta: growth coefficient unavailable for n >= 3".into());
                None
            }
        }
    };

    let log_a_samples = match growth_coefficient {
        Some(a) => nodes.iter().zip(cum.iter()).map(|(&r, &i)| (r, a * i)).collect(),
        None => Vec::new(),
    };

    let min_growth_poly = match c.warp().beta() {
        Some(beta) if c.n() >= 3 => match min_growth_exponent(c.n(), beta) {
            Ok(v) => Some(v),
            Err(LiouvilleError::NotApplicable { detail }) => {
                notes.push(detail);
                None
            }
            Err(e) => return Err(e),
        },
        _ => None,
    };

    match tail {
        TailClass::Log => notes.push("integral grows like log r: Liouville holds".into()),
        TailClass::Power(a) => {
            notes.push(format!("integral grows like r^{a:.3}: Liouville holds"))
        }
        TailClass::Bounded(_) => notes.push(
            "integral converges: no Liouville certificate from this criterion".into(),
        ),
    }

    Ok(LiouvilleVerdict {
        integral_value,
        tail,
        integral_diverges: tail.diverges(),
        growth_coefficient,
        log_a_samples,
        min_growth_poly,
        notes,
    })
}

// ---------------------------------------------------------------------------
// Strong Liouville property: dimension counting
// ---------------------------------------------------------------------------

/// A fitted polynomial exponent within this slack of d still counts into H_d
/// (fit noise tolerance).
pub const EXPONENT_TOL: f64 = 0.05;

#[derive(Debug, Clone)]
pub struct SlpModeRow {
    pub m: u32,
    pub lambda_sq: f64,
    pub multiplicity: u64,
    pub class: GrowthClass,
    /// Local log φ / log r slope over the last third of the window.
    pub end_slope: f64,
    /// Whether this mode grows at most like r^d.
    pub sub_d: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub enum SlpVerdict {
    /// All slower-than-r^d modes are accounted for: dim H_d is the count.
    Finite { dim: u64 },
    /// Every examined mode grows slower than r^d and the warp tail is
    /// super-linear: the count keeps growing with m, so H_d cannot be
    /// finite-dimensional. Desk-scale evidence, not a proof.
    InfiniteEvidence,
    /// The examined range cannot settle the question; raise m_max.
    Inconclusive { guidance: String },
}

#[derive(Debug, Clone)]
pub struct SlpReport {
    pub d: f64,
    /// 1 (constants) + Σ multiplicities of modes with growth ≤ r^d.
    pub counted_dim: u64,
    pub truncation_m: u32,
    pub rows: Vec<SlpModeRow>,
    pub verdict: SlpVerdict,
}

/// Count dim H_d from modes 1..=m_max, fitting growth over the last three
/// decades of [1, r_max].
pub fn slp_dimension(
    c: &ConeSpec,
    d: f64,
    m_max: u32,
    r_max: f64,
) -> Result<SlpReport, LiouvilleError> {
    if m_max < 2 {
        return Err(LiouvilleError::BadInput {
            detail: format!("m_max must be at least 2, got {m_max}"),
        });
    }
    if !(d > 0.0) {
        return Err(LiouvilleError::BadInput { detail: format!("d must be positive, got {d}") });
    }
    let window = (r_max / 1e3, r_max);
    if !(window.0 > 1.0) {
        return Err(LiouvilleError::BadInput {
            detail: format!("r_max = {r_max} leaves no fit window above r = 1"),
        });
    }

    let opts = ModeOptions::default();
    let mut rows = Vec::with_capacity(m_max as usize);
    let mut counted: u64 = 1; // constants
    for m in 1..=m_max {
        let (_, multiplicity) = c.eigendata(m)?;
        let mode = modes::integrate_mode(c, m, r_max, &opts)?;
        let fit = modes::fit_growth(&mode, window)?;
        let end_slope = end_slope_loglog(&mode, window);
        let sub_d = match fit.class {
            GrowthClass::Polynomial(e) => e <= d + EXPONENT_TOL,
            GrowthClass::LogPower(_) => true,
            GrowthClass::ExpIntegral(_) => end_slope <= d - EXPONENT_TOL,
        };
        if sub_d {
            counted += multiplicity;
        }
        rows.push(SlpModeRow {
            m,
            lambda_sq: mode.lambda_sq,
            multiplicity,
            class: fit.class,
            end_slope,
            sub_d,
        });
    }

    let last_sub = rows.last().map(|r| r.sub_d).unwrap_or(false);
    let all_sub = rows.iter().all(|r| r.sub_d);
    let verdict = if !last_sub {
        // Larger eigenvalues grow at least as fast, so every m > m_max also
        // exceeds r^d and the count is complete.
        SlpVerdict::Finite { dim: counted }
    } else if all_sub {
        if warp_tail_superlinear(c, r_max)? {
            SlpVerdict::InfiniteEvidence
        } else {
            SlpVerdict::Inconclusive {
                guidance: format!(
                    "all modes up to m = {m_max} stay below r^{d}; raise m_max to find the cutoff"
                ),
            }
        }
    } else {
        SlpVerdict::Inconclusive {
            guidance: "non-monotone fit classes across m; raise m_max or widen the window".into(),
        }
    };

    Ok(SlpReport { d, counted_dim: counted, truncation_m: m_max, rows, verdict })
}

fn end_slope_loglog(mode: &RadialMode, window: (f64, f64)) -> f64 {
    let idx = mode.window_indices(window.0, window.1);
    let third = &idx[idx.len() - (idx.len() / 3).max(2)..];
    let xs: Vec<f64> = third.iter().map(|&i| float::ln(mode.grid[i])).collect();
    let ys: Vec<f64> = third.iter().map(|&i| mode.log_phi[i]).collect();
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let mut sxx = 0.0;
    let mut sxy = 0.0;
    for (x, y) in xs.iter().zip(ys.iter()) {
        sxx += (x - mx) * (x - mx);
        sxy += (x - mx) * (y - my);
    }
    if sxx > 0.0 {
        sxy / sxx
    } else {
        0.0
    }
}

/// φ(r)/r increasing across the last decade signals a super-linear tail.
fn warp_tail_superlinear(c: &ConeSpec, r_max: f64) -> Result<bool, LiouvilleError> {
    let mut prev = f64::NEG_INFINITY;
    for i in 0..=8 {
        let r = r_max / 10.0 * float::pow(10.0, i as f64 / 8.0);
        let (phi, _, _) = c.warp().eval(r).map_err(ConeError::from)?;
        let ratio = phi / r;
        if ratio <= prev * (1.0 + 1e-12) {
            return Ok(false);
        }
        prev = ratio;
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::warp::WarpFn;

    #[test]
    fn riccati_coefficient_values() {
        // β = 1 makes a equal the flat indicial exponent.
        for n in [3u32, 5, 9] {
            for &lsq in &[1.0f64, 2.0, 17.0] {
                let a = riccati_coefficient_a(n, 1.0, lsq.sqrt()).unwrap();
                let gamma = modes::indicial_exponent(n, lsq);
                assert!((a - gamma).abs() < 1e-14, "n={n} λ²={lsq}");
            }
        }
        // exact value at (3, 1, √2): (−1 + 3)/2 = 1
        let a = riccati_coefficient_a(3, 1.0, 2f64.sqrt()).unwrap();
        assert!((a - 1.0).abs() < 1e-15);
        // small λ limit: a → λ²/k → 0
        let a = riccati_coefficient_a(10, 1.0, 1e-8).unwrap();
        assert!((a - 1e-16 / 8.0).abs() < 1e-30);
        assert!(matches!(riccati_coefficient_a(2, 1.0, 1.0), Err(LiouvilleError::TwoDimensional)));
    }

    #[test]
    fn coefficient_increases_in_lambda() {
        for &(n, beta) in &[(3u32, 1.0f64), (7, 1.0), (7, 2.0)] {
            let mut prev = 0.0;
            for &lambda in &[0.5, 1.0, 2.0, 4.0, 8.0, 16.0] {
                let a = riccati_coefficient_a(n, beta, lambda).unwrap();
                assert!(a > prev, "n={n} beta={beta} lambda={lambda}: {a} <= {prev}");
                prev = a;
            }
        }
    }

    #[test]
    fn dimension_threshold() {
        let t = corollary_dimension_threshold(1.0);
        assert!((t - (4.0 + 2.0 * 2f64.sqrt())).abs() < 1e-12);
        assert_eq!(t.ceil() as u32, 7);
        // β = 1/2: 10 + 4√5, minimal n = 19
        let t = corollary_dimension_threshold(0.5);
        assert!((t - (10.0 + 4.0 * 5f64.sqrt())).abs() < 1e-12);
        assert_eq!(t.ceil() as u32, 19);
        // huge β: threshold → 2⁺
        assert!(corollary_dimension_threshold(1e8) - 2.0 < 1e-7);
    }

    #[test]
    fn min_growth_values() {
        let v = min_growth_exponent(7, 1.0).unwrap();
        assert!((v - 6.0 / (5.0 * 2f64.sqrt())).abs() < 1e-14);
        let v = min_growth_exponent(7, 2.0).unwrap();
        assert!((v - 6.0 / (20.0 * 2f64.sqrt())).abs() < 1e-14);
        // limit for large n: → 1/√2
        let v = min_growth_exponent(4000, 1.0).unwrap();
        assert!((v - 1.0 / 2f64.sqrt()).abs() < 1e-3);
        assert!(matches!(
            min_growth_exponent(5, 1.0),
            Err(LiouvilleError::NotApplicable { .. })
        ));
    }

    #[test]
    fn sqrt_inequality_on_grid() {
        assert!(verify_sqrt_inequality(10_000) <= 0.0);
        // boundary values
        assert!((2f64.sqrt() - 1.0) >= 1.0 / (2.0 * 2f64.sqrt()));
    }

    #[test]
    fn riccati_bound_on_flat_cone_is_tight() {
        // φ = r with β = 1: x = γ r^{n−2}/λ² exactly; slack ~ 0 but not
        // negative beyond integrator noise.
        let c = ConeSpec::round(3, WarpFn::euclidean()).unwrap();
        let rep = verify_riccati_lower_bound(&c, 3, 50.0).unwrap();
        assert!(rep.worst_slack >= -1e-9, "slack {}", rep.worst_slack);
        assert!(rep.worst_slack < 1e-3, "flat cone should be near equality");
    }

    #[test]
    fn riccati_bound_on_half_sin() {
        let c = ConeSpec::round(3, WarpFn::half_sin()).unwrap();
        let rep = verify_riccati_lower_bound(&c, 5, 100.0).unwrap();
        assert!(rep.worst_slack >= -1e-9, "slack {}", rep.worst_slack);
    }

    #[test]
    fn rationalized_display_form_fails_on_flat_cone() {
        // The naive rationalization a·λ²/k² (so that x ≥ (a λ²/k²)(φ^{n−2}/λ²)
        // becomes x ≥ √2·r at n = 3, λ = √2, β = 1) is violated by the flat
        // cone, where x = r/2. Pinning this down is what fixes the constant.
        let c = ConeSpec::round(3, WarpFn::euclidean()).unwrap();
        let mode = modes::integrate_mode(&c, 1, 10.0, &ModeOptions::default()).unwrap();
        let idx = mode.grid.iter().position(|&r| (r - 10.0).abs() < 1e-9).unwrap();
        let x10 = mode.x[idx];
        assert!((x10 - 5.0).abs() < 1e-6, "x(10) = {x10}");
        let wrong_coeff = 2f64.sqrt(); // would demand x ≥ √2·φ^{n−2}
        assert!(x10 < wrong_coeff * 10.0, "the discarded constant would wrongly pass");
    }

    #[test]
    fn verdict_flat_disk() {
        let c = ConeSpec::round(2, WarpFn::euclidean()).unwrap();
        let v = liouville_verdict(&c, 1e3).unwrap();
        assert_eq!(v.tail, TailClass::Log);
        assert!(v.integral_diverges);
        assert!((v.integral_value - 1e3f64.ln()).abs() < 1e-8);
        // A(r) = r: log A = log r
        let (r, la) = v.log_a_samples[v.log_a_samples.len() - 1];
        assert!((la - r.ln()).abs() < 1e-8);
    }

    #[test]
    fn verdict_convergent_tail() {
        let w = WarpFn::parse("steep", "r^1.5", None, None).unwrap();
        let c = ConeSpec::round(2, w).unwrap();
        let v = liouville_verdict(&c, 1e3).unwrap();
        assert!(matches!(v.tail, TailClass::Bounded(_)));
        assert!(!v.integral_diverges);
    }

    #[test]
    fn verdict_half_sin_quadratic() {
        let c = ConeSpec::round(2, WarpFn::half_sin()).unwrap();
        let v = liouville_verdict(&c, 1e3).unwrap();
        assert_eq!(v.tail, TailClass::Log);
        assert!(v.integral_diverges);
        // A(r) ~ r²: the log-A slope against log r tends to 2
        let (r1, a1) = v.log_a_samples[30];
        let (r2, a2) = v.log_a_samples[v.log_a_samples.len() - 1];
        let slope = (a2 - a1) / (r2.ln() - r1.ln());
        assert!((slope - 2.0).abs() < 0.05, "slope {slope}");
    }

    #[test]
    fn verdict_power_beta_diverges_as_power() {
        let c = ConeSpec::round(2, WarpFn::power_beta(0.5).unwrap()).unwrap();
        let v = liouville_verdict(&c, 1e3).unwrap();
        match v.tail {
            TailClass::Power(alpha) => assert!((alpha - 0.5).abs() < 0.05, "{alpha}"),
            other => panic!("expected power tail, got {other:?}"),
        }
    }

    #[test]
    fn slp_flat_counts() {
        // n=3, d=1: constants + the 3 linear harmonics.
        let c = ConeSpec::round(3, WarpFn::euclidean()).unwrap();
        let rep = slp_dimension(&c, 1.0, 6, 1e4).unwrap();
        assert_eq!(rep.counted_dim, 4);
        assert_eq!(rep.verdict, SlpVerdict::Finite { dim: 4 });

        // n=2, d=2.5: 1 + 2 + 2.
        let c = ConeSpec::round(2, WarpFn::euclidean()).unwrap();
        let rep = slp_dimension(&c, 2.5, 8, 1e4).unwrap();
        assert_eq!(rep.counted_dim, 5);
        assert_eq!(rep.verdict, SlpVerdict::Finite { dim: 5 });
    }

    #[test]
    fn slp_r_log_r_infinite_evidence() {
        let c = ConeSpec::round(3, WarpFn::r_log_r()).unwrap();
        let rep = slp_dimension(&c, 1.0, 6, 1e6).unwrap();
        assert_eq!(rep.verdict, SlpVerdict::InfiniteEvidence);
        for row in &rep.rows {
            assert!(row.sub_d, "mode {} should be slow-growing", row.m);
        }
    }

    #[test]
    fn slp_inconclusive_when_d_above_examined_modes() {
        let c = ConeSpec::round(2, WarpFn::euclidean()).unwrap();
        let rep = slp_dimension(&c, 50.0, 3, 1e4).unwrap();
        assert!(matches!(rep.verdict, SlpVerdict::Inconclusive { .. }));
    }

    #[test]
    fn slp_input_validation() {
        let c = ConeSpec::round(2, WarpFn::euclidean()).unwrap();
        assert!(matches!(slp_dimension(&c, 1.0, 1, 1e4), Err(LiouvilleError::BadInput { .. })));
        assert!(matches!(slp_dimension(&c, 1.0, 4, 100.0), Err(LiouvilleError::BadInput { .. })));
    }
}
