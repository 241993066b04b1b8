//! Radial p-Laplacian and the (z, h) barrier pair for nonlinear Liouville
//! theorems on surfaces with a pole.
//!
//! For a radial function u on dr² + φ(θ, r)²dθ², the p-Laplacian collapses to
//!
//! ```text
//! Δ_p u = |u′|^{p−2} [ (p−1) u″ + (φ_r/φ) u′ ].
//! ```
//!
//! The barrier construction takes z(r) = (r log(r/R))^{p−1} for r > R and
//! h(r) = ∫_{Re}^r z^{−1/(p−1)} ds. Since z^{−1/(p−1)} = 1/(s log(s/R))
//! regardless of p, h grows like log log r. The closed form
//!
//! ```text
//! −z″/z = −(p−1) [ (p−2)((log(r/R)+1)/(r log(r/R)))² + 1/(r² log(r/R)) ]
//! ```
//!
//! dominates the two curvature thresholds −(p−1)/(r² log r) (for R ≥ 1) and,
//! for p > 2, −(p−1)(p−2)/r². Whenever the Gaussian curvature satisfies
//! K ≥ −z″/z and the slope comparison z′/z ≥ φ_r/φ holds at the inner edge,
//! the comparison argument gives φ_r/φ ≤ z′/z outward, and then
//!
//! ```text
//! Δ_p h = |h′|^{p−2} h′ (φ_r/φ − z′/z) ≤ 0,
//! ```
//!
//! i.e. h is a p-supersolution: the growth barrier that forces slowly
//! growing p-subharmonic functions to be constant. At p = 2 the two
//! curvature thresholds degenerate to −1/(r² log r) and 0 respectively.

use crate::float;
use crate::quad::{self, QuadError};
use crate::warp::{WarpError, WarpFn};
use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;

#[derive(Debug, Clone, PartialEq)]
pub enum BarrierError {
    BadInput { detail: String },
    /// The curvature hypothesis K ≥ −z″/z fails on the requested range.
    NotApplicable { r: f64, detail: String },
    Warp(WarpError),
    Quad(QuadError),
}

impl From<WarpError> for BarrierError {
    fn from(e: WarpError) -> Self {
        BarrierError::Warp(e)
    }
}

impl From<QuadError> for BarrierError {
    fn from(e: QuadError) -> Self {
        BarrierError::Quad(e)
    }
}

impl core::fmt::Display for BarrierError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            BarrierError::BadInput { detail } => write!(f, "{detail}"),
            BarrierError::NotApplicable { r, detail } => {
                write!(f, "not applicable at r = {r}: {detail}")
            }
            BarrierError::Warp(e) => write!(f, "{e}"),
            BarrierError::Quad(e) => write!(f, "{e}"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for BarrierError {}

/// The comparison pair (z, h) for a given p ≥ 2 and inner radius R.
#[derive(Debug, Clone, Copy)]
pub struct BarrierSpec {
    p: f64,
    radius: f64,
}

impl BarrierSpec {
    pub fn new(p: f64, radius: f64) -> Result<Self, BarrierError> {
        if !(p >= 2.0) {
            return Err(BarrierError::BadInput {
                detail: format!("barrier requires p >= 2, got {p}"),
            });
        }
        if !(radius > 0.0) {
            return Err(BarrierError::BadInput {
                detail: format!("barrier radius must be positive, got {radius}"),
            });
        }
        Ok(BarrierSpec { p, radius })
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    /// Base point of h: r₀ = R·e, the radius where log(r/R) = 1. Fixing it
    /// here makes h(r₀) = 0 and keeps the integrable z → 0 endpoint out of
    /// every quadrature.
    pub fn h_base(&self) -> f64 {
        self.radius * core::f64::consts::E
    }

    fn check_domain(&self, r: f64) -> Result<f64, BarrierError> {
        let l = float::ln(r / self.radius);
        if !(r > self.radius) || l <= 0.0 {
            return Err(BarrierError::BadInput {
                detail: format!("barrier functions live on r > R = {}, got {r}", self.radius),
            });
        }
        Ok(l)
    }

    /// z(r) = (r log(r/R))^{p−1}.
    pub fn z(&self, r: f64) -> Result<f64, BarrierError> {
        let l = self.check_domain(r)?;
        Ok(float::pow(r * l, self.p - 1.0))
    }

    /// (z, z′, z″) from the product/chain rules:
    /// z′ = (p−1)(rL)^{p−2}(L+1), z″ = (p−1)(p−2)(rL)^{p−3}(L+1)² + (p−1)(rL)^{p−2}/r.
    pub fn z_parts(&self, r: f64) -> Result<(f64, f64, f64), BarrierError> {
        let l = self.check_domain(r)?;
        let p = self.p;
        let rl = r * l;
        let z = float::pow(rl, p - 1.0);
        let z1 = (p - 1.0) * float::pow(rl, p - 2.0) * (l + 1.0);
        let z2 = (p - 1.0) * (p - 2.0) * float::pow(rl, p - 3.0) * (l + 1.0) * (l + 1.0)
            + (p - 1.0) * float::pow(rl, p - 2.0) / r;
        Ok((z, z1, z2))
    }

    /// z′/z = (p−1)(log(r/R)+1)/(r log(r/R)); blows up as r → R⁺, which is
    /// what lets the comparison start at any inner edge.
    pub fn z_log_deriv(&self, r: f64) -> Result<f64, BarrierError> {
        let l = self.check_domain(r)?;
        Ok((self.p - 1.0) * (l + 1.0) / (r * l))
    }

    /// h(r) = ∫_{Re}^r ds/(s log(s/R)) by quadrature (negative below the base
    /// point). For every p this integrand is the same, and the analytic
    /// antiderivative log log(r/R) is kept in the tests as the oracle.
    pub fn h(&self, r: f64, tol: f64) -> Result<f64, BarrierError> {
        self.check_domain(r)?;
        let radius = self.radius;
        let v = quad::integrate(
            move |s: f64| 1.0 / (s * float::ln(s / radius)),
            self.h_base(),
            r,
            tol,
        )?;
        Ok(v)
    }

    /// (h′, h″) analytically: h′ = z^{−1/(p−1)} = 1/(rL) and
    /// h″ = −(1/(p−1)) z^{−1/(p−1)−1} z′ = −(L+1)/(rL)².
    pub fn h_parts(&self, r: f64) -> Result<(f64, f64), BarrierError> {
        let (z, z1, _) = self.z_parts(r)?;
        let e = -1.0 / (self.p - 1.0);
        let h1 = float::pow(z, e);
        let h2 = e * float::pow(z, e - 1.0) * z1;
        Ok((h1, h2))
    }
}

/// Δ_p u at radius r from the point values (u′, u″):
/// |u′|^{p−2}[(p−1)u″ + (φ′/φ)u′]. Requires p > 1; at a critical point
/// u′ = 0 the value is 0 for p > 2 and u″ for p = 2 (the |u′|^{p−2} factor
/// is singular there for p < 2).
pub fn radial_p_laplacian(
    w: &WarpFn,
    p: f64,
    r: f64,
    du: f64,
    ddu: f64,
) -> Result<f64, BarrierError> {
    if !(p > 1.0) {
        return Err(BarrierError::BadInput { detail: format!("p must exceed 1, got {p}") });
    }
    let (phi, dphi, _) = w.eval(r)?;
    if phi <= 0.0 {
        return Err(BarrierError::BadInput { detail: format!("warp not positive at r = {r}") });
    }
    let bracket = (p - 1.0) * ddu + dphi / phi * du;
    if du == 0.0 {
        if p == 2.0 {
            return Ok(bracket);
        }
        if p > 2.0 {
            return Ok(0.0);
        }
        return Err(BarrierError::BadInput {
            detail: format!("|u'|^{{p-2}} is singular at a critical point for p = {p}"),
        });
    }
    Ok(float::pow(float::abs(du), p - 2.0) * bracket)
}

/// The closed form −z″/z = −(p−1)[(p−2)((L+1)/(rL))² + 1/(r²L)], L = log(r/R).
pub fn neg_z_ratio(spec: &BarrierSpec, r: f64) -> Result<f64, BarrierError> {
    let l = spec.check_domain(r)?;
    let p = spec.p;
    let q = (l + 1.0) / (r * l);
    Ok(-(p - 1.0) * ((p - 2.0) * q * q + 1.0 / (r * r * l)))
}

/// Curvature thresholds of the barrier theorem.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CurvatureCondition {
    /// K ≥ −(p−1)/(r² log r); at p = 2 this is the log-weighted
    /// inverse-square threshold for harmonic Liouville on surfaces.
    LogWeighted,
    /// K ≥ −(p−1)(p−2)/r²; at p = 2 it degenerates to K ≥ 0.
    InverseSquare,
}

impl CurvatureCondition {
    pub fn bound(&self, p: f64, r: f64) -> f64 {
        match self {
            CurvatureCondition::LogWeighted => -(p - 1.0) / (r * r * float::ln(r)),
            CurvatureCondition::InverseSquare => -(p - 1.0) * (p - 2.0) / (r * r),
        }
    }
}

#[derive(Debug, Clone)]
pub struct ConditionVerdict {
    pub which: CurvatureCondition,
    /// Per-sample (r, K(r) − bound(r) ≥ 0?).
    pub holds_on: Vec<(f64, bool)>,
    /// min over samples of K − bound; nonnegative means the condition holds.
    pub margin: f64,
    pub holds: bool,
}

/// Sample K against the selected curvature threshold on [r_lo, r_hi]
/// (log-spaced). The log-weighted bound needs r > 1.
pub fn check_condition(
    curvature: impl Fn(f64) -> f64,
    p: f64,
    which: CurvatureCondition,
    r_range: (f64, f64),
    samples: usize,
) -> Result<ConditionVerdict, BarrierError> {
    if !(p >= 2.0) {
        return Err(BarrierError::BadInput { detail: format!("condition check needs p >= 2, got {p}") });
    }
    let (lo, hi) = r_range;
    if !(lo > 1.0 && hi > lo) {
        return Err(BarrierError::BadInput {
            detail: format!("range must satisfy 1 < r_lo < r_hi, got [{lo}, {hi}]"),
        });
    }
    let samples = samples.max(64);
    let mut holds_on = Vec::with_capacity(samples);
    let mut margin = f64::INFINITY;
    for i in 0..samples {
        let t = i as f64 / (samples - 1) as f64;
        let r = float::exp(float::ln(lo) + t * (float::ln(hi) - float::ln(lo)));
        let k = curvature(r);
        let gap = k - which.bound(p, r);
        margin = margin.min(gap);
        holds_on.push((r, gap >= 0.0));
    }
    Ok(ConditionVerdict { which, holds_on, margin, holds: margin >= 0.0 })
}

/// Verify the two domination chains of the barrier on samples:
/// (a) −z″/z ≤ −(p−1)/(r² log r) for R ≥ 1, and
/// (b) −z″/z ≤ −(p−1)(p−2)/r².
/// Returns the largest violation normalized by the bound's magnitude
/// (expected ≪ 1e−12; the inequalities are strict).
pub fn verify_inequality_chain(
    p: f64,
    radius: f64,
    r_range: (f64, f64),
    samples: usize,
) -> Result<f64, BarrierError> {
    if !(radius >= 1.0) {
        return Err(BarrierError::BadInput {
            detail: format!("chain (a) needs R >= 1, got {radius}"),
        });
    }
    let spec = BarrierSpec::new(p, radius)?;
    let (lo, hi) = r_range;
    if !(lo > radius * (1.0 + 1e-3)) || !(hi > lo) {
        return Err(BarrierError::BadInput {
            detail: format!("range must start past R(1+1e-3), got [{lo}, {hi}]"),
        });
    }
    let samples = samples.max(64);
    let mut worst = f64::NEG_INFINITY;
    for i in 0..samples {
        let t = i as f64 / (samples - 1) as f64;
        let r = float::exp(float::ln(lo) + t * (float::ln(hi) - float::ln(lo)));
        let lhs = neg_z_ratio(&spec, r)?;
        let bound_a = CurvatureCondition::LogWeighted.bound(p, r);
        let bound_b = CurvatureCondition::InverseSquare.bound(p, r);
        let va = (lhs - bound_a) / float::abs(bound_a).max(1e-300);
        let vb = (lhs - bound_b) / float::abs(bound_b).max(f64::MIN_POSITIVE);
        worst = worst.max(va);
        if p > 2.0 {
            worst = worst.max(vb);
        } else {
            // p = 2: bound (b) is 0; check the sign directly.
            worst = worst.max(lhs);
        }
    }
    Ok(worst)
}

/// Sturm-type slope comparison: given K ≥ −z″/z on [a, r_max] (verified on
/// samples first; [`BarrierError::NotApplicable`] otherwise), return
/// min(z′/z − φ′/φ). Nonnegative certifies φ′/φ ≤ z′/z on the samples.
pub fn sturm_check(
    w: &WarpFn,
    spec: &BarrierSpec,
    a: f64,
    r_max: f64,
) -> Result<f64, BarrierError> {
    if !(a > spec.radius) || !(r_max > a) {
        return Err(BarrierError::BadInput {
            detail: format!("need R < a < r_max, got R={}, a={a}, r_max={r_max}", spec.radius),
        });
    }
    let samples = 512;
    let mut min_slack = f64::INFINITY;
    for i in 0..samples {
        let t = i as f64 / (samples - 1) as f64;
        let r = float::exp(float::ln(a) + t * (float::ln(r_max) - float::ln(a)));
        let (phi, dphi, ddphi) = w.eval(r)?;
        let k = -ddphi / phi;
        let hypothesis = neg_z_ratio(spec, r)?;
        if k < hypothesis - 1e-12 * float::abs(hypothesis) {
            return Err(BarrierError::NotApplicable {
                r,
                detail: format!("curvature {k:e} falls below -z''/z = {hypothesis:e}"),
            });
        }
        min_slack = min_slack.min(spec.z_log_deriv(r)? - dphi / phi);
    }
    Ok(min_slack)
}

/// Evaluate Δ_p h on samples of [a, r_max] with the analytic h′, h″, after
/// requiring the slope comparison to hold. Returns the max of Δ_p h
/// normalized by the magnitude of its two competing terms — a nonpositive
/// result certifies that h is a p-supersolution on the samples.
pub fn verify_supersolution(
    w: &WarpFn,
    spec: &BarrierSpec,
    a: f64,
    r_max: f64,
    samples: usize,
) -> Result<f64, BarrierError> {
    let slack = sturm_check(w, spec, a, r_max)?;
    if slack < -1e-10 {
        return Err(BarrierError::NotApplicable {
            r: a,
            detail: format!("slope comparison failed with slack {slack:e}"),
        });
    }
    let p = spec.p;
    let samples = samples.max(64);
    let mut worst = f64::NEG_INFINITY;
    for i in 0..samples {
        let t = i as f64 / (samples - 1) as f64;
        let r = float::exp(float::ln(a) + t * (float::ln(r_max) - float::ln(a)));
        let (h1, h2) = spec.h_parts(r)?;
        let value = radial_p_laplacian(w, p, r, h1, h2)?;
        let (phi, dphi, _) = w.eval(r)?;
        let scale = float::pow(float::abs(h1), p - 2.0)
            * ((p - 1.0) * float::abs(h2) + float::abs(dphi / phi * h1))
            + f64::MIN_POSITIVE;
        worst = worst.max(value / scale);
    }
    Ok(worst)
}

/// For p > 2 the inverse-square threshold implies the log-weighted one once
/// log r > 1/(p−2); check (p−2) > 1/log r on samples of a range inside that
/// regime.
pub fn remark_check(p: f64, r_range: (f64, f64), samples: usize) -> Result<bool, BarrierError> {
    if !(p > 2.0) {
        return Err(BarrierError::BadInput { detail: format!("remark needs p > 2, got {p}") });
    }
    let valid_from = float::exp(1.0 / (p - 2.0));
    let (lo, hi) = r_range;
    if !(lo > valid_from) || !(hi > lo) {
        return Err(BarrierError::BadInput {
            detail: format!("range must start past e^{{1/(p-2)}} = {valid_from:.4}, got [{lo}, {hi}]"),
        });
    }
    let samples = samples.max(64);
    for i in 0..samples {
        let t = i as f64 / (samples - 1) as f64;
        let r = float::exp(float::ln(lo) + t * (float::ln(hi) - float::ln(lo)));
        if !((p - 2.0) > 1.0 / float::ln(r)) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The borderline metric φ = z itself, wrapped as a warp through arithmetic
/// independent of [`BarrierSpec::z_log_deriv`] so self-comparison tests stay
/// meaningful. Only valid for r > R·(1 + ε); there is no vertex behavior.
pub fn z_metric_warp(spec: &BarrierSpec) -> WarpFn {
    let spec = *spec;
    WarpFn::from_parts(
        "z_metric",
        Arc::new(move |r: f64| {
            spec.z_parts(r).unwrap_or((f64::NAN, f64::NAN, f64::NAN))
        }),
        None,
        None,
    )
}
