//! Warping functions φ(r) for the cone metric dr² + φ(r)² g_ω.
//!
//! A valid warp has φ(0) = 0, φ′(0) = 1, φ > 0 for r > 0, and φ′ ≥ 0. An
//! optional declared bound β asserts φ′ ≤ β everywhere; several growth
//! estimates are only available when such a bound exists.
//!
//! The catalog entries carry exact closed-form derivatives. User-supplied
//! warps come from the expression language ([`crate::expr`]) and are
//! differentiated symbolically — second derivatives feed curvature, and
//! numeric differentiation of bump shoulders is too ill-conditioned to trust.
//!
//! `bump_counterexample` is the alternating-plateau metric
//!
//! ```text
//! φ(r) = Σ_k r·ψ(r − 6k) + Σ_k e^r·ψ(r − (6k + 3)),
//! ```
//!
//! with ψ the unit bump. Neighboring supports overlap, so φ > 0 throughout;
//! the e^r plateaus destroy volume doubling while ∫ 1/φ still grows like
//! log r. This φ is deliberately *not* monotone — validation reports that
//! honestly.

use crate::bump;
use crate::expr::{self, EvalError, Expr};
use crate::float;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec::Vec;

/// Monotonicity slack: φ′ ≥ −ε is accepted as "non-decreasing".
pub const EPS_MONO: f64 = 1e-12;
/// Slack for the declared slope bound φ′ ≤ β.
pub const EPS_BETA: f64 = 1e-12;
/// Below this radius, φ is evaluated by its vertex series (r, 1, 0).
pub const DEFAULT_DOMAIN_FLOOR: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq)]
pub enum WarpError {
    NonPositiveRadius { r: f64 },
    Eval(EvalError),
}

impl From<EvalError> for WarpError {
    fn from(e: EvalError) -> Self {
        WarpError::Eval(e)
    }
}

impl core::fmt::Display for WarpError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            WarpError::NonPositiveRadius { r } => {
                write!(f, "warp evaluation requires r > 0, got {r}")
            }
            WarpError::Eval(e) => write!(f, "{e}"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for WarpError {}

type CustomEval = Arc<dyn Fn(f64) -> (f64, f64, f64) + Send + Sync>;

#[derive(Clone)]
enum WarpKind {
    /// φ = r.
    Euclidean,
    /// φ = (r + sin r)/2.
    HalfSin,
    /// φ = r near 0, φ = 2^{(1−β₀)/2} r^{β₀} for r ≥ 2, glued so that the
    /// log-log slope descends monotonically from 1 to β₀ across r ∈ [1, 2].
    PowerBeta { exponent: f64 },
    /// φ = r near 0, φ = r·log r for r ≥ e, with a C² monotone splice on
    /// [3/2, e].
    RLogR,
    /// The alternating r / e^r plateau metric described in the module docs.
    BumpChain,
    /// Parsed expression with symbolic first and second derivatives.
    Expression { value: Arc<Expr>, d1: Arc<Expr>, d2: Arc<Expr> },
    /// Arbitrary evaluator returning (φ, φ′, φ″).
    Custom(CustomEval),
}

impl core::fmt::Debug for WarpKind {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            WarpKind::Euclidean => f.write_str("Euclidean"),
            WarpKind::HalfSin => f.write_str("HalfSin"),
            WarpKind::PowerBeta { exponent } => write!(f, "PowerBeta({exponent})"),
            WarpKind::RLogR => f.write_str("RLogR"),
            WarpKind::BumpChain => f.write_str("BumpChain"),
            WarpKind::Expression { value, .. } => write!(f, "Expression({value})"),
            WarpKind::Custom(_) => f.write_str("Custom(..)"),
        }
    }
}

/// A warping function with exact first and second derivatives.
#[derive(Debug, Clone)]
pub struct WarpFn {
    name: String,
    kind: WarpKind,
    beta: Option<f64>,
    domain_floor: f64,
}

impl WarpFn {
    pub fn euclidean() -> Self {
        WarpFn {
            name: "euclidean".into(),
            kind: WarpKind::Euclidean,
            beta: Some(1.0),
            domain_floor: DEFAULT_DOMAIN_FLOOR,
        }
    }

    pub fn half_sin() -> Self {
        WarpFn {
            name: "half_sin".into(),
            kind: WarpKind::HalfSin,
            beta: Some(1.0),
            domain_floor: DEFAULT_DOMAIN_FLOOR,
        }
    }

    /// Sub-linear tail φ ~ r^β₀, requires β₀ ∈ (0, 1]. The slope bound is
    /// still β = 1 because φ′ = 1 near the vertex.
    pub fn power_beta(exponent: f64) -> Option<Self> {
        if !(exponent > 0.0 && exponent <= 1.0) {
            return None;
        }
        Some(WarpFn {
            name: format!("power_beta_{exponent}"),
            kind: WarpKind::PowerBeta { exponent },
            beta: Some(1.0),
            domain_floor: DEFAULT_DOMAIN_FLOOR,
        })
    }

    /// φ = r·log r for large r; φ′ is unbounded, so no β is declared.
    pub fn r_log_r() -> Self {
        WarpFn {
            name: "r_log_r".into(),
            kind: WarpKind::RLogR,
            beta: None,
            domain_floor: DEFAULT_DOMAIN_FLOOR,
        }
    }

    /// The doubling counterexample metric.
    pub fn bump_counterexample() -> Self {
        WarpFn {
            name: "bump_counterexample".into(),
            kind: WarpKind::BumpChain,
            beta: None,
            domain_floor: DEFAULT_DOMAIN_FLOOR,
        }
    }

    /// Build a warp from a parsed expression; derivatives are symbolic.
    pub fn from_expr(
        name: &str,
        value: Expr,
        beta: Option<f64>,
        domain_floor: Option<f64>,
    ) -> Result<Self, expr::DiffError> {
        let d1 = value.derivative()?;
        let d2 = d1.derivative()?;
        Ok(WarpFn {
            name: name.into(),
            kind: WarpKind::Expression {
                value: Arc::new(value),
                d1: Arc::new(d1),
                d2: Arc::new(d2),
            },
            beta,
            domain_floor: domain_floor.unwrap_or(DEFAULT_DOMAIN_FLOOR),
        })
    }

    /// Parse `text` and build the warp from the resulting expression.
    pub fn parse(
        name: &str,
        text: &str,
        beta: Option<f64>,
        domain_floor: Option<f64>,
    ) -> Result<Self, WarpParseError> {
        let e = expr::parse(text).map_err(WarpParseError::Parse)?;
        WarpFn::from_expr(name, e, beta, domain_floor).map_err(WarpParseError::Diff)
    }

    /// Wrap an arbitrary (φ, φ′, φ″) evaluator.
    pub fn from_parts(
        name: &str,
        eval: CustomEval,
        beta: Option<f64>,
        domain_floor: Option<f64>,
    ) -> Self {
        WarpFn {
            name: name.into(),
            kind: WarpKind::Custom(eval),
            beta,
            // Custom evaluators define their own vertex behavior; the series
            // fallback would clobber warps that are not φ ≈ r near 0.
            domain_floor: domain_floor.unwrap_or(0.0),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn beta(&self) -> Option<f64> {
        self.beta
    }

    pub fn domain_floor(&self) -> f64 {
        self.domain_floor
    }

    /// Human-readable formula for listings.
    pub fn formula(&self) -> String {
        match &self.kind {
            WarpKind::Euclidean => "r".into(),
            WarpKind::HalfSin => "(r+sin(r))/2".into(),
            WarpKind::PowerBeta { exponent } => {
                format!("r near 0, ~ r^{exponent} for r >= 2")
            }
            WarpKind::RLogR => "r near 0, r*log(r) for r >= e".into(),
            WarpKind::BumpChain => {
                "sum_k r*bump(r,6k,1,2) + exp(r)*bump(r,6k+3,1,2)".into()
            }
            WarpKind::Expression { value, .. } => expr::print(value),
            WarpKind::Custom(_) => "<custom evaluator>".into(),
        }
    }

    /// (φ, φ′, φ″) at r > 0. Below the domain floor the vertex series
    /// (r, 1, 0) is returned; every catalog warp equals r to second order
    /// there.
    pub fn eval(&self, r: f64) -> Result<(f64, f64, f64), WarpError> {
        if !(r > 0.0) {
            return Err(WarpError::NonPositiveRadius { r });
        }
        if r < self.domain_floor {
            return Ok((r, 1.0, 0.0));
        }
        match &self.kind {
            WarpKind::Euclidean => Ok((r, 1.0, 0.0)),
            WarpKind::HalfSin => Ok((
                0.5 * (r + float::sin(r)),
                0.5 * (1.0 + float::cos(r)),
                -0.5 * float::sin(r),
            )),
            WarpKind::PowerBeta { exponent } => Ok(power_beta_parts(r, *exponent)),
            WarpKind::RLogR => Ok(r_log_r_parts(r)),
            WarpKind::BumpChain => Ok(bump_chain_parts(r)),
            WarpKind::Expression { value, d1, d2 } => {
                Ok((value.eval(r)?, d1.eval(r)?, d2.eval(r)?))
            }
            WarpKind::Custom(f) => Ok(f(r)),
        }
    }

    pub fn value(&self, r: f64) -> Result<f64, WarpError> {
        Ok(self.eval(r)?.0)
    }

    pub fn d1(&self, r: f64) -> Result<f64, WarpError> {
        Ok(self.eval(r)?.1)
    }

    pub fn d2(&self, r: f64) -> Result<f64, WarpError> {
        Ok(self.eval(r)?.2)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum WarpParseError {
    Parse(expr::ParseError),
    Diff(expr::DiffError),
}

impl core::fmt::Display for WarpParseError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            WarpParseError::Parse(e) => write!(f, "{e}"),
            WarpParseError::Diff(e) => write!(f, "{e}"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for WarpParseError {}

/// The standard unit bump ψ: 1 on [−1, 1], supported in [−2, 2], smooth,
/// symmetric, ψ(±3/2) = 1/2.
pub fn smooth_bump(x: f64) -> f64 {
    bump::unit_bump_parts(x).0
}

// ---------------------------------------------------------------------------
// Catalog closed forms
// ---------------------------------------------------------------------------

/// Assemble (φ, φ′, φ″) from L = log φ as a function of ρ = log r.
/// φ′ = (φ/r) L′ and φ″ = (φ/r²)(L′² − L′ + L″).
fn from_log_log(r: f64, l: f64, l1: f64, l2: f64) -> (f64, f64, f64) {
    let phi = float::exp(l);
    (phi, phi * l1 / r, phi * (l1 * l1 - l1 + l2) / (r * r))
}

/// power_beta: the log-log slope is 1 − (1−β₀)P(ρ/ln2) on ρ ∈ [0, ln 2],
/// with P the quintic smoothstep. The slope stays in [β₀, 1], so φ′ ∈ (0, 1].
fn power_beta_parts(r: f64, b0: f64) -> (f64, f64, f64) {
    let rho = float::ln(r);
    let h = core::f64::consts::LN_2;
    if rho <= 0.0 {
        return (r, 1.0, 0.0);
    }
    let drop = 1.0 - b0;
    if rho >= h {
        // L = h(1+β₀)/2 + β₀(ρ − h)
        let l = 0.5 * h * (1.0 + b0) + b0 * (rho - h);
        return from_log_log(r, l, b0, 0.0);
    }
    let t = rho / h;
    let (p, p1, _) = bump::smoothstep_parts(t);
    let l = rho - drop * h * bump::smoothstep_integral(t);
    let l1 = 1.0 - drop * p;
    let l2 = -drop * p1 / h;
    from_log_log(r, l, l1, l2)
}

/// r_log_r: L = ρ + W(ρ)·ln ρ with W a quintic step from 0 at ρ = ln(3/2) to
/// 1 at ρ = 1. The window endpoints keep L′ = 1 + W′ ln ρ + W/ρ positive
/// (checked exhaustively in tests), and the C² contact at ρ = 1 makes
/// φ = r·log r hold with exact derivatives from r = e on.
fn r_log_r_parts(r: f64) -> (f64, f64, f64) {
    let rho = float::ln(r);
    let rho_a = float::ln(1.5);
    if rho <= rho_a {
        return (r, 1.0, 0.0);
    }
    if rho >= 1.0 {
        // φ = r ln r directly; cheaper and exactly the advertised tail.
        let ln_r = rho;
        return (r * ln_r, ln_r + 1.0, 1.0 / r);
    }
    let h = 1.0 - rho_a;
    let t = (rho - rho_a) / h;
    let (w, wp, wpp) = bump::smoothstep_parts(t);
    let w1 = wp / h;
    let w2 = wpp / (h * h);
    let ln_rho = float::ln(rho);
    let l = rho + w * ln_rho;
    let l1 = 1.0 + w1 * ln_rho + w / rho;
    let l2 = w2 * ln_rho + 2.0 * w1 / rho - w / (rho * rho);
    from_log_log(r, l, l1, l2)
}

/// Sum the ≤ 2 active terms of each plateau family at radius r. Supports have
/// width 4 and spacing 6, so a point meets at most one r-term and one e-term.
fn bump_chain_parts(r: f64) -> (f64, f64, f64) {
    let mut phi = 0.0;
    let mut d1 = 0.0;
    let mut d2 = 0.0;

    // r-plateaus centered at 6k
    let k_lo = ((r - 2.0) / 6.0).max(0.0) as i64;
    let k_hi = ((r + 2.0) / 6.0) as i64;
    for k in k_lo..=k_hi {
        let c = 6.0 * k as f64;
        let (b, b1, b2) = bump::profile_parts(r, c, 1.0, 2.0);
        if b != 0.0 || b1 != 0.0 {
            phi += r * b;
            d1 += b + r * b1;
            d2 += 2.0 * b1 + r * b2;
        }
    }

    // e^r-plateaus centered at 6k + 3
    let k_lo = ((r - 5.0) / 6.0).max(0.0) as i64;
    let k_hi = ((r - 1.0) / 6.0) as i64;
    for k in k_lo..=k_hi {
        let c = 6.0 * k as f64 + 3.0;
        let (b, b1, b2) = bump::profile_parts(r, c, 1.0, 2.0);
        if b != 0.0 || b1 != 0.0 {
            let er = float::exp(r);
            phi += er * b;
            d1 += er * (b + b1);
            d2 += er * (b + 2.0 * b1 + b2);
        }
    }
    (phi, d1, d2)
}

// ---------------------------------------------------------------------------
// Catalog
// ---------------------------------------------------------------------------

/// The built-in warp catalog. `power_beta` is included at its default
/// exponent 1/2; other exponents via [`WarpFn::power_beta`] or the
/// `power_beta_<x>` lookup form.
pub fn builtin_catalog() -> Vec<WarpFn> {
    alloc::vec![
        WarpFn::euclidean(),
        WarpFn::half_sin(),
        WarpFn::power_beta(0.5).unwrap(),
        WarpFn::r_log_r(),
        WarpFn::bump_counterexample(),
    ]
}

/// Look up a catalog warp by name. `power_beta_<x>` selects the tail
/// exponent, e.g. `power_beta_0.25`.
pub fn catalog_lookup(name: &str) -> Option<WarpFn> {
    match name {
        "euclidean" => Some(WarpFn::euclidean()),
        "half_sin" => Some(WarpFn::half_sin()),
        "r_log_r" => Some(WarpFn::r_log_r()),
        "bump_counterexample" => Some(WarpFn::bump_counterexample()),
        "power_beta" => WarpFn::power_beta(0.5),
        other => {
            let exponent = other.strip_prefix("power_beta_")?.parse::<f64>().ok()?;
            WarpFn::power_beta(exponent)
        }
    }
}

// ---------------------------------------------------------------------------
// Validation
// ---------------------------------------------------------------------------

#[derive(Debug, Clone)]
pub struct InvariantCheck {
    pub name: &'static str,
    /// False when the check does not apply (no declared β, say).
    pub applicable: bool,
    pub passed: bool,
    pub worst_r: f64,
    pub worst_value: f64,
    pub detail: String,
}

#[derive(Debug, Clone)]
pub struct ValidationReport {
    pub warp: String,
    pub checks: Vec<InvariantCheck>,
}

impl ValidationReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| !c.applicable || c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&InvariantCheck> {
        self.checks.iter().find(|c| c.name == name)
    }
}

/// Check the warp invariants on a log-spaced grid of `samples` points in
/// [max(10⁻⁵, floor), r_max], plus the fixed vertex probes r = 10⁻⁴, 10⁻⁶.
/// Failures are report rows, never errors.
pub fn validate_warp(w: &WarpFn, r_max: f64, samples: usize) -> ValidationReport {
    let samples = samples.max(16);
    let lo = 1e-5f64.max(w.domain_floor());
    let hi = r_max.max(lo * 10.0);
    let log_lo = float::ln(lo);
    let log_hi = float::ln(hi);

    let mut grid = Vec::with_capacity(samples);
    for i in 0..samples {
        let t = i as f64 / (samples - 1) as f64;
        grid.push(float::exp(log_lo + t * (log_hi - log_lo)));
    }

    let mut positivity = Worst::new();
    let mut monotone = Worst::new();
    let mut slope = Worst::new();
    let mut eval_failure: Option<(f64, WarpError)> = None;

    for &r in &grid {
        match w.eval(r) {
            Ok((phi, dphi, _)) => {
                positivity.observe(r, phi); // want min > 0
                monotone.observe(r, dphi); // want min ≥ −ε
                slope.observe_max(r, dphi); // want max ≤ β + ε
            }
            Err(e) => {
                eval_failure = Some((r, e));
                break;
            }
        }
    }

    let mut checks = Vec::new();

    if let Some((r, e)) = &eval_failure {
        checks.push(InvariantCheck {
            name: "evaluates",
            applicable: true,
            passed: false,
            worst_r: *r,
            worst_value: f64::NAN,
            detail: format!("{e}"),
        });
    } else {
        checks.push(InvariantCheck {
            name: "evaluates",
            applicable: true,
            passed: true,
            worst_r: hi,
            worst_value: 0.0,
            detail: "all grid evaluations finite".into(),
        });

        checks.push(InvariantCheck {
            name: "positivity",
            applicable: true,
            passed: positivity.min > 0.0,
            worst_r: positivity.argmin,
            worst_value: positivity.min,
            detail: format!("min phi = {:e}", positivity.min),
        });

        checks.push(InvariantCheck {
            name: "monotone_slope",
            applicable: true,
            passed: monotone.min >= -EPS_MONO,
            worst_r: monotone.argmin,
            worst_value: monotone.min,
            detail: format!("min phi' = {:e}", monotone.min),
        });

        let (applicable, passed, detail) = match w.beta() {
            Some(beta) => (
                true,
                slope.max <= beta + EPS_BETA,
                format!("max phi' = {:e} vs beta = {beta}", slope.max),
            ),
            None => (false, true, "no declared slope bound".into()),
        };
        checks.push(InvariantCheck {
            name: "slope_bound",
            applicable,
            passed,
            worst_r: slope.argmax,
            worst_value: slope.max,
            detail,
        });
    }

    // Vertex limit φ(r)/r → 1, probed at fixed radii within 1% relative.
    let mut vertex_dev = Worst::new();
    let mut vertex_ok = true;
    let mut vertex_detail = String::new();
    for &r in &[1e-4, 1e-6] {
        match w.eval(r) {
            Ok((phi, _, _)) => {
                let dev = float::abs(phi / r - 1.0);
                vertex_dev.observe_max(r, dev);
                if dev > 0.01 {
                    vertex_ok = false;
                }
            }
            Err(e) => {
                vertex_ok = false;
                vertex_detail = format!("{e}");
            }
        }
    }
    if vertex_detail.is_empty() {
        vertex_detail = format!("max |phi/r - 1| = {:e}", vertex_dev.max);
    }
    checks.push(InvariantCheck {
        name: "vertex_limit",
        applicable: true,
        passed: vertex_ok,
        worst_r: vertex_dev.argmax,
        worst_value: vertex_dev.max,
        detail: vertex_detail,
    });

    ValidationReport { warp: w.name().to_string(), checks }
}

struct Worst {
    min: f64,
    argmin: f64,
    max: f64,
    argmax: f64,
}

impl Worst {
    fn new() -> Self {
        Worst { min: f64::INFINITY, argmin: f64::NAN, max: f64::NEG_INFINITY, argmax: f64::NAN }
    }

    fn observe(&mut self, r: f64, v: f64) {
        if v < self.min {
            self.min = v;
            self.argmin = r;
        }
    }

    fn observe_max(&mut self, r: f64, v: f64) {
        if v > self.max {
            self.max = v;
            self.argmax = r;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::{E, PI};

    #[test]
    fn euclidean_and_half_sin_values() {
        let e = WarpFn::euclidean();
        assert_eq!(e.eval(2.0).unwrap(), (2.0, 1.0, 0.0));
        assert_eq!(e.value(3.0).unwrap(), 3.0);

        let hs = WarpFn::half_sin();
        let (phi, d1, d2) = hs.eval(PI).unwrap();
        assert!((phi - PI / 2.0).abs() < 1e-15);
        assert!(d1.abs() < 1e-15);
        assert!(d2.abs() < 1e-15);
        assert_eq!(hs.beta(), Some(1.0));
    }

    #[test]
    fn r_log_r_matches_closed_form_on_tail() {
        let w = WarpFn::r_log_r();
        let (phi, d1, d2) = w.eval(E).unwrap();
        assert!((phi - E).abs() < 1e-12);
        assert!((d1 - 2.0).abs() < 1e-12);
        assert!((d2 - 1.0 / E).abs() < 1e-12);
        for &r in &[3.0, 10.0, 1e4, 1e6] {
            let (phi, d1, d2) = w.eval(r).unwrap();
            assert!((phi - r * r.ln()).abs() < 1e-12 * phi);
            assert!((d1 - (r.ln() + 1.0)).abs() < 1e-12 * d1);
            assert!((d2 - 1.0 / r).abs() < 1e-12 / r);
        }
        // below the splice it is exactly r
        assert_eq!(w.eval(1.2).unwrap(), (1.2, 1.0, 0.0));
    }

    #[test]
    fn r_log_r_is_monotone_through_the_splice() {
        let w = WarpFn::r_log_r();
        let mut min_slope = f64::INFINITY;
        for i in 0..=20_000 {
            let r = 1.4 + i as f64 * (E - 1.35) / 20_000.0;
            let (_, d1, _) = w.eval(r).unwrap();
            min_slope = min_slope.min(d1);
        }
        assert!(min_slope > 0.0, "min slope {min_slope}");
    }

    #[test]
    fn power_beta_tail_and_slope_bound() {
        for &b0 in &[0.1, 0.5, 0.9, 1.0] {
            let w = WarpFn::power_beta(b0).unwrap();
            let c = 2f64.powf((1.0 - b0) / 2.0);
            for &r in &[2.0, 5.0, 100.0] {
                let (phi, d1, d2) = w.eval(r).unwrap();
                assert!((phi - c * r.powf(b0)).abs() < 1e-12 * phi, "b0={b0} r={r}");
                assert!((d1 - b0 * phi / r).abs() < 1e-12);
                assert!((d2 - b0 * (b0 - 1.0) * phi / (r * r)).abs() < 1e-12);
            }
            // φ′ ∈ (0, 1] everywhere, including the glue region
            for i in 0..=4000 {
                let r = 0.5 + i as f64 * 2.0 / 4000.0;
                let (_, d1, _) = w.eval(r).unwrap();
                assert!(d1 > 0.0 && d1 <= 1.0 + 1e-14, "b0={b0} r={r} d1={d1}");
            }
        }
        assert!(WarpFn::power_beta(0.0).is_none());
        assert!(WarpFn::power_beta(1.5).is_none());
    }

    #[test]
    fn bump_chain_plateaus() {
        let w = WarpFn::bump_counterexample();
        // first r-plateau and the example point r = 6
        assert!((w.value(0.5).unwrap() - 0.5).abs() < 1e-15);
        assert!((w.value(6.0).unwrap() - 6.0).abs() < 1e-12);
        // e-plateau at the center r = 3
        assert!((w.value(3.0).unwrap() - 3f64.exp()).abs() < 1e-12);
        // positivity across gaps and overlaps
        let mut min_phi = f64::INFINITY;
        for i in 0..=20_000 {
            let r = 0.1 + i as f64 * (200.0 - 0.1) / 20_000.0;
            min_phi = min_phi.min(w.value(r).unwrap());
        }
        assert!(min_phi > 0.0, "min phi {min_phi}");
    }

    #[test]
    fn bump_chain_dominates_r_after_one() {
        // φ ≥ r/2 on overlaps and ≥ r on plateaus keeps ∫1/φ ≤ ~log r;
        // sampled check that the e-terms actually cover the r-bump decay.
        let w = WarpFn::bump_counterexample();
        for i in 0..=5000 {
            let r = 1.0 + i as f64 * 99.0 / 5000.0;
            let phi = w.value(r).unwrap();
            assert!(phi > 0.49 * r, "phi({r}) = {phi}");
        }
    }

    #[test]
    fn expression_warp_and_derivatives() {
        let w = WarpFn::parse("w", "(r + sin(r))/2", Some(1.0), None).unwrap();
        let exact = WarpFn::half_sin();
        for &r in &[0.3, 2.0, 7.7] {
            let (a, b, c) = w.eval(r).unwrap();
            let (x, y, z) = exact.eval(r).unwrap();
            assert!((a - x).abs() < 1e-14);
            assert!((b - y).abs() < 1e-14);
            assert!((c - z).abs() < 1e-14);
        }
        // below the domain floor the series kicks in
        let tiny = w.eval(1e-8).unwrap();
        assert_eq!(tiny, (1e-8, 1.0, 0.0));
    }

    #[test]
    fn eval_rejects_nonpositive_radius() {
        let w = WarpFn::euclidean();
        assert!(matches!(w.eval(0.0), Err(WarpError::NonPositiveRadius { .. })));
        assert!(matches!(w.eval(-1.0), Err(WarpError::NonPositiveRadius { .. })));
    }

    #[test]
    fn catalog_contents_and_lookup() {
        let names: Vec<_> = builtin_catalog().iter().map(|w| w.name().to_string()).collect();
        for required in
            ["euclidean", "half_sin", "power_beta_0.5", "r_log_r", "bump_counterexample"]
        {
            assert!(names.iter().any(|n| n == required), "missing {required}");
        }
        assert_eq!(catalog_lookup("euclidean").unwrap().value(3.0).unwrap(), 3.0);
        assert_eq!(catalog_lookup("half_sin").unwrap().beta(), Some(1.0));
        assert!((catalog_lookup("bump_counterexample").unwrap().value(6.0).unwrap() - 6.0).abs() < 1e-12);
        assert!(catalog_lookup("power_beta_0.25").is_some());
        assert!(catalog_lookup("nope").is_none());
    }

    #[test]
    fn smooth_bump_api_points() {
        assert_eq!(smooth_bump(0.0), 1.0);
        assert!((smooth_bump(1.5) - 0.5).abs() < 1e-15);
        assert_eq!(smooth_bump(2.5), 0.0);
    }

    #[test]
    fn validation_verdicts() {
        for w in [WarpFn::euclidean(), WarpFn::half_sin(), WarpFn::power_beta(0.5).unwrap()] {
            let rep = validate_warp(&w, 100.0, 64);
            assert!(rep.all_passed(), "{}: {:?}", rep.warp, rep.checks);
        }
        // r_log_r has no beta: slope check inapplicable but everything passes
        let rep = validate_warp(&WarpFn::r_log_r(), 1e4, 64);
        assert!(rep.all_passed());
        assert!(!rep.check("slope_bound").unwrap().applicable);

        // exp(r) fails the vertex limit
        let w = WarpFn::parse("exp", "exp(r)", None, None).unwrap();
        let rep = validate_warp(&w, 100.0, 64);
        assert!(!rep.check("vertex_limit").unwrap().passed);

        // the plateau metric is honest about non-monotonicity
        let rep = validate_warp(&WarpFn::bump_counterexample(), 50.0, 512);
        assert!(rep.check("positivity").unwrap().passed);
        assert!(!rep.check("monotone_slope").unwrap().passed);
    }

    fn check_derivatives_fd(w: &WarpFn, r_lo: f64, r_hi: f64, h_scale: f64, skip: impl Fn(f64) -> bool) {
        let lo = r_lo.ln();
        let hi = r_hi.ln();
        for i in 0..64 {
            let r = (lo + (hi - lo) * i as f64 / 63.0).exp();
            if skip(r) {
                continue;
            }
            let h = h_scale * r.max(1.0);
            let (_, d1, d2) = w.eval(r).unwrap();
            let up = w.eval(r + h).unwrap();
            let dn = w.eval(r - h).unwrap();
            let fd1 = (up.0 - dn.0) / (2.0 * h);
            let fd2 = (up.1 - dn.1) / (2.0 * h);
            let tol1 = 1e-6f64.max(1e-6 * d1.abs());
            let tol2 = 1e-4f64.max(1e-4 * d2.abs());
            assert!((d1 - fd1).abs() <= tol1, "{} d1 at r={r}: {d1} vs {fd1}", w.name());
            assert!((d2 - fd2).abs() <= tol2, "{} d2 at r={r}: {d2} vs {fd2}", w.name());
        }
    }

    #[test]
    fn catalog_derivatives_match_finite_differences() {
        // Central differences of φ against φ′ within max(1e−6, 1e−6·|φ′|),
        // and of φ′ against φ″ within max(1e−4, 1e−4·|φ″|), 64 log-spaced
        // points.
        for w in builtin_catalog() {
            if w.name() == "bump_counterexample" {
                continue;
            }
            check_derivatives_fd(&w, 1e-2, 1e3, 2e-6, |_| false);
        }
        // The plateau metric needs care: e^r rules out r ≫ 700 outright, and
        // within 0.1 of a cutoff edge the derivative RATIOS φ‴/φ′ blow up
        // like t⁻⁴, which no finite-difference step can certify to 1e−6
        // relative. Checked on [1e−2, 100] with a smaller step, skipping a
        // 0.1-neighborhood of the cutoff radii (integers ≢ 0 mod 3).
        let w = WarpFn::bump_counterexample();
        check_derivatives_fd(&w, 1e-2, 100.0, 1e-7, |r| {
            let nearest = r.round();
            (nearest as i64).rem_euclid(3) != 0 && (r - nearest).abs() < 0.1
        });
    }
}
