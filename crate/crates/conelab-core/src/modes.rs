//! Radial eigenfunction modes and their growth classes.
//!
//! For a link eigenvalue λ_m², the radial mode φ_m is the nondecreasing
//! solution of
//!
//! ```text
//! φ_m″ + (n−1)(φ′/φ) φ_m′ − (λ_m²/φ²) φ_m = 0,     φ_m(r) ~ r^γ at 0,
//! ```
//!
//! with γ the nonnegative indicial root of γ(γ−1) + (n−1)γ = λ². The
//! substitution x_m = φ_m′/φ_m · φ^{n−1}/λ² (so that
//! φ_m = B·exp(∫ λ²x_m/φ^{n−1})) turns this into the Riccati equation
//!
//! ```text
//! x′ + (λ²/φ^{n−1}) x² = φ^{n−3},
//! ```
//!
//! whose solution is positive and nondecreasing. That is the form actually
//! integrated, in logarithmic time τ = log r and with x in log scale too:
//! the state is (u, v) = (log φ_m, log x_m). Three things fall out of this
//! choice: modes that grow super-polynomially never overflow; the vertex is
//! an equilibrium of the transformed system (v′ = n − 2 exactly on φ = r),
//! so the regular singular point costs nothing; and φ′ does not appear in
//! the flow at all, which keeps plateau metrics with violent φ′/φ swings
//! non-stiff. The indicial seed carries an O(r²) error for non-flat warps;
//! the growing solution is attracting in increasing r, so the seed error
//! decays relative to the mode.
//!
//! The explicit growth bounds in [`crate::liouville`] are statements about
//! x_m.

use crate::float;
use crate::geometry::{ConeError, ConeSpec};
use crate::ode::{self, OdeError, OdeOptions};
use crate::quad::{self, QuadError};
use crate::warp::WarpFn;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

/// (λ_m², multiplicity) on the round unit (n−1)-sphere: λ_m² = m(m+n−2),
/// multiplicity = C(n+m−1, m) − C(n+m−3, m−2) (degree-m harmonic
/// polynomials in n variables).
pub fn sphere_eigendata(n: u32, m: u32) -> (f64, u64) {
    let lambda_sq = m as f64 * (m as f64 + n as f64 - 2.0);
    if m == 0 {
        return (0.0, 1);
    }
    let first = binom((n + m - 1) as u64, m as u64);
    let second = if m >= 2 { binom((n + m - 3) as u64, (m - 2) as u64) } else { 0 };
    (lambda_sq, (first - second) as u64)
}

fn binom(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// Nonnegative indicial exponent at the vertex: the root of
/// γ(γ−1) + (n−1)γ − λ² = 0, written in its cancellation-free form
/// 2λ² / ((n−2) + √((n−2)² + 4λ²)).
pub fn indicial_exponent(n: u32, lambda_sq: f64) -> f64 {
    if lambda_sq == 0.0 {
        return 0.0;
    }
    let k = n as f64 - 2.0;
    2.0 * lambda_sq / (k + float::sqrt(k * k + 4.0 * lambda_sq))
}

#[derive(Debug, Clone, PartialEq)]
pub enum ModeError {
    /// Mode 0 is the constant; only m ≥ 1 has a radial profile to integrate.
    ZeroMode,
    BadRange { detail: String },
    Cone(ConeError),
    Ode(OdeError),
    Quad(QuadError),
    InsufficientSamples { found: usize, need: usize },
}

impl From<ConeError> for ModeError {
    fn from(e: ConeError) -> Self {
        ModeError::Cone(e)
    }
}

impl From<OdeError> for ModeError {
    fn from(e: OdeError) -> Self {
        ModeError::Ode(e)
    }
}

impl From<QuadError> for ModeError {
    fn from(e: QuadError) -> Self {
        ModeError::Quad(e)
    }
}

impl core::fmt::Display for ModeError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            ModeError::ZeroMode => write!(f, "mode index must be at least 1"),
            ModeError::BadRange { detail } => write!(f, "{detail}"),
            ModeError::Cone(e) => write!(f, "{e}"),
            ModeError::Ode(e) => write!(f, "{e}"),
            ModeError::Quad(e) => write!(f, "{e}"),
            ModeError::InsufficientSamples { found, need } => {
                write!(f, "only {found} samples in fit window, need {need}")
            }
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for ModeError {}

#[derive(Debug, Clone)]
pub struct ModeOptions {
    /// Startup radius for the indicial seed.
    pub r_start: f64,
    /// Output grid density (geometric; exact powers of 10^{1/ppd}).
    pub points_per_decade: u32,
    /// Local relative tolerance of the integrator.
    pub tol: f64,
}

impl Default for ModeOptions {
    fn default() -> Self {
        ModeOptions { r_start: 1e-3, points_per_decade: 64, tol: 1e-10 }
    }
}

/// One integrated radial mode on a geometric grid.
#[derive(Debug, Clone)]
pub struct RadialMode {
    pub m: u32,
    pub lambda_sq: f64,
    /// Indicial exponent used for the startup seed.
    pub gamma: f64,
    /// Increasing radii; contains r = 1 exactly.
    pub grid: Vec<f64>,
    /// log φ_m, normalized so that log φ_m(1) = 0.
    pub log_phi: Vec<f64>,
    /// Riccati variable x_m ≥ 0, nondecreasing.
    pub x: Vec<f64>,
    /// Warp values φ(r) along the grid (convenience for bound checks).
    pub phi: Vec<f64>,
    /// ∫_{grid[0]}^{r} ds/φ(s) along the grid.
    pub inv_phi_integral: Vec<f64>,
}

impl RadialMode {
    /// log φ_m at a grid point of radius `r` (exact node match).
    pub fn log_phi_at(&self, r: f64) -> Option<f64> {
        self.grid
            .iter()
            .position(|&g| (g - r).abs() <= 1e-12 * r.max(1.0))
            .map(|i| self.log_phi[i])
    }

    /// Indices of grid points inside [r_lo, r_hi].
    pub fn window_indices(&self, r_lo: f64, r_hi: f64) -> Vec<usize> {
        self.grid
            .iter()
            .enumerate()
            .filter(|(_, &r)| r >= r_lo * (1.0 - 1e-12) && r <= r_hi * (1.0 + 1e-12))
            .map(|(i, _)| i)
            .collect()
    }
}

/// Geometric output grid 10^{i/ppd} covering [r_start, r_max], with r = 1
/// an exact node and r_max appended exactly.
fn geometric_grid(r_start: f64, r_max: f64, ppd: u32) -> (Vec<i64>, Vec<f64>) {
    let k = ppd as f64;
    let i_lo = float::round(k * float::log10(r_start)) as i64;
    let i_hi = float::ceil(k * float::log10(r_max) - 1e-9) as i64;
    let mut idx = Vec::new();
    let mut radii = Vec::new();
    for i in i_lo..=i_hi {
        let r = float::pow(10.0, i as f64 / k);
        if r > r_max * (1.0 + 1e-12) {
            break;
        }
        idx.push(i);
        radii.push(r);
    }
    if radii.last().map(|&r| r < r_max * (1.0 - 1e-12)).unwrap_or(true) {
        idx.push(i64::MAX); // sentinel: an off-lattice node
        radii.push(r_max);
    }
    (idx, radii)
}

/// Integrate mode m of the cone out to `r_max`.
pub fn integrate_mode(
    c: &ConeSpec,
    m: u32,
    r_max: f64,
    opts: &ModeOptions,
) -> Result<RadialMode, ModeError> {
    if m == 0 {
        return Err(ModeError::ZeroMode);
    }
    if !(r_max > 1.0) {
        return Err(ModeError::BadRange { detail: format!("r_max must exceed 1, got {r_max}") });
    }
    if !(opts.r_start > 0.0 && opts.r_start < 1.0) {
        return Err(ModeError::BadRange {
            detail: format!("r_start must lie in (0, 1), got {}", opts.r_start),
        });
    }
    let (lambda_sq, _) = c.eigendata(m)?;
    let n = c.n();
    let gamma = indicial_exponent(n, lambda_sq);

    let (idx, radii) = geometric_grid(opts.r_start, r_max, opts.points_per_decade);
    let ln10 = core::f64::consts::LN_10;
    let k = opts.points_per_decade as f64;
    let tau_nodes: Vec<f64> = idx
        .iter()
        .zip(radii.iter())
        .map(|(&i, &r)| if i == i64::MAX { float::ln(r) } else { ln10 * i as f64 / k })
        .collect();

    let warp = c.warp().clone();
    let n_pow = n as i32 - 1;
    // u′ = r λ² x / φ^{n−1},  v′ = (x′/x)·r with the Riccati x′; x = e^v.
    let rhs = move |tau: f64, y: ode::State| -> Result<ode::State, OdeError> {
        let r = float::exp(tau);
        let (phi, _, _) =
            warp.eval(r).map_err(|e| OdeError::Rhs { t: tau, detail: e_detail(&e) })?;
        let x = float::exp(y[1]);
        let lam_x_over = lambda_sq * x / float::powi(phi, n_pow);
        let du = r * lam_x_over;
        let dv = r * (float::powi(phi, n_pow - 2) / x - lam_x_over);
        Ok([du, dv])
    };

    let guard = |tau: f64, y: ode::State| -> Result<(), OdeError> {
        if y[0].is_finite() && y[1].is_finite() {
            Ok(())
        } else {
            Err(OdeError::InvariantViolated {
                t: tau,
                detail: "state became non-finite".into(),
            })
        }
    };

    let tau0 = float::ln(opts.r_start);
    // x(r₀) = γ r₀^{n−2} / λ² from the indicial series.
    let v0 = float::ln(gamma / lambda_sq) + (n as f64 - 2.0) * tau0;
    let y0 = [gamma * tau0, v0];
    let ode_opts = OdeOptions { rtol: opts.tol, atol: 1e-14, ..OdeOptions::default() };

    let mut u = alloc::vec![0.0f64; tau_nodes.len()];
    let mut v = alloc::vec![0.0f64; tau_nodes.len()];
    ode::integrate_to_nodes(rhs, tau0, y0, &tau_nodes, &ode_opts, guard, |i, _, y| {
        u[i] = y[0];
        v[i] = y[1];
    })?;

    // Normalize log φ_m(1) = 0; the grid contains r = 1 by construction.
    let one = idx
        .iter()
        .position(|&i| i == 0)
        .expect("grid covers [r_start, r_max] with r_start < 1 < r_max");
    let u1 = u[one];

    let mut log_phi = Vec::with_capacity(u.len());
    let mut x = Vec::with_capacity(u.len());
    let mut phi_vals = Vec::with_capacity(u.len());
    for (i, &r) in radii.iter().enumerate() {
        log_phi.push(u[i] - u1);
        let (phi, _, _) = c.warp().eval(r).map_err(ConeError::from)?;
        phi_vals.push(phi);
        x.push(float::exp(v[i]));
    }

    let wq = c.warp().clone();
    let inv_phi_integral = quad::cumulative(
        move |s: f64| match wq.eval(s) {
            Ok((phi, _, _)) => 1.0 / phi,
            Err(_) => f64::NAN,
        },
        &radii,
        opts.tol.min(1e-10),
    )?;

    Ok(RadialMode { m, lambda_sq, gamma, grid: radii, log_phi, x, phi: phi_vals, inv_phi_integral })
}

fn e_detail(e: &crate::warp::WarpError) -> String {
    format!("{e}")
}

/// The 2-dimensional closed form: log φ_m(r) = m ∫₁^r ds/φ(s)
/// (negative for r < 1). On surfaces this solves the radial equation
/// exactly, which makes it the independent oracle for the integrator.
pub fn mode_2d_closed_form(w: &WarpFn, m: u32, r: f64, tol: f64) -> Result<f64, ModeError> {
    if m == 0 {
        return Err(ModeError::ZeroMode);
    }
    if !(r > 0.0) {
        return Err(ModeError::BadRange { detail: format!("radius must be positive, got {r}") });
    }
    let wc = w.clone();
    let v = quad::integrate(
        move |s: f64| match wc.eval(s) {
            Ok((phi, _, _)) => 1.0 / phi,
            Err(_) => f64::NAN,
        },
        1.0,
        r,
        tol,
    )?;
    Ok(m as f64 * v)
}

// ---------------------------------------------------------------------------
// Growth fitting
// ---------------------------------------------------------------------------

/// Growth classes for log φ_m over a window, by fitted abscissa:
/// `Polynomial(d)`: log φ ≈ d·log r; `LogPower(q)`: log φ ≈ q·log log r;
/// `ExpIntegral(c)`: log φ ≈ c·∫ 1/φ.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GrowthClass {
    Polynomial(f64),
    LogPower(f64),
    ExpIntegral(f64),
}

impl GrowthClass {
    pub fn label(&self) -> &'static str {
        match self {
            GrowthClass::Polynomial(_) => "polynomial",
            GrowthClass::LogPower(_) => "log-power",
            GrowthClass::ExpIntegral(_) => "exp-integral",
        }
    }

    pub fn coefficient(&self) -> f64 {
        match self {
            GrowthClass::Polynomial(v) | GrowthClass::LogPower(v) | GrowthClass::ExpIntegral(v) => {
                *v
            }
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct ClassFit {
    pub class: GrowthClass,
    pub residual: f64,
}

#[derive(Debug, Clone)]
pub struct GrowthFit {
    /// The selected class.
    pub class: GrowthClass,
    pub fit_window: (f64, f64),
    /// Max absolute deviation of the selected model over the window.
    pub residual: f64,
    /// |local slope over the last third − local slope over the first third|
    /// in the selected abscissa.
    pub slope_drift: f64,
    /// Set when the top two classes' residuals are within 5% of each other;
    /// `runner_up` then carries the close second.
    pub ambiguous: bool,
    pub runner_up: Option<ClassFit>,
    /// All class fits, for reporting (Polynomial, LogPower, ExpIntegral
    /// order; absent entries had too few valid samples).
    pub all: Vec<ClassFit>,
}

impl GrowthFit {
    /// The fitted polynomial exponent regardless of which class won.
    pub fn polynomial_exponent(&self) -> Option<f64> {
        self.all.iter().find_map(|f| match f.class {
            GrowthClass::Polynomial(d) => Some(d),
            _ => None,
        })
    }
}

/// A class "explains" the window when its max residual is below this
/// fraction of the data's range. Selection walks Polynomial, LogPower,
/// ExpIntegral in that order and takes the first class that explains the
/// data; this keeps the verdict deterministic when two abscissas are
/// affinely related on the window and their residuals tie exactly (∫1/φ is
/// affine in log r on flat cones and in log log r on r·log r tails).
pub const FIT_QUALITY_GATE: f64 = 0.01;

/// Residuals within 5% of each other are reported as ambiguous.
pub const FIT_AMBIGUITY_BAND: f64 = 0.05;

/// Least-squares growth fit of log φ_m over `window` = (r_lo, r_hi), which
/// must span at least a decade and contain ≥ 16 grid samples.
pub fn fit_growth(mode: &RadialMode, window: (f64, f64)) -> Result<GrowthFit, ModeError> {
    let (r_lo, r_hi) = window;
    if !(r_hi >= 10.0 * r_lo) {
        return Err(ModeError::BadRange {
            detail: format!("fit window [{r_lo}, {r_hi}] must span at least a decade"),
        });
    }
    let idx = mode.window_indices(r_lo, r_hi);
    if idx.len() < 16 {
        return Err(ModeError::InsufficientSamples { found: idx.len(), need: 16 });
    }

    let ys: Vec<f64> = idx.iter().map(|&i| mode.log_phi[i]).collect();
    let span = {
        let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
        for &y in &ys {
            lo = lo.min(y);
            hi = hi.max(y);
        }
        (hi - lo).max(1e-9)
    };

    // Abscissas. log log r needs r > e; drop the class if the window loses
    // too many points to that.
    let xs_poly: Vec<f64> = idx.iter().map(|&i| float::ln(mode.grid[i])).collect();
    let xs_exp: Vec<f64> = idx.iter().map(|&i| mode.inv_phi_integral[i]).collect();
    let loglog_ok = mode.grid[idx[0]] > core::f64::consts::E;
    let xs_log: Option<Vec<f64>> = if loglog_ok {
        Some(idx.iter().map(|&i| float::ln(float::ln(mode.grid[i]))).collect())
    } else {
        None
    };

    let mut all = Vec::new();
    let poly = linear_fit(&xs_poly, &ys);
    all.push(ClassFit { class: GrowthClass::Polynomial(poly.slope), residual: poly.residual });
    if let Some(xs) = &xs_log {
        let lf = linear_fit(xs, &ys);
        all.push(ClassFit { class: GrowthClass::LogPower(lf.slope), residual: lf.residual });
    }
    let ef = linear_fit(&xs_exp, &ys);
    all.push(ClassFit { class: GrowthClass::ExpIntegral(ef.slope), residual: ef.residual });

    // Selection: first gate-passing class in parsimony order. If none
    // qualifies, take the smallest residual — but walk the same order and
    // accept anything within the ambiguity band of the minimum, so exact
    // ties (affinely related abscissas) resolve deterministically.
    let gate = FIT_QUALITY_GATE * span;
    let chosen = all.iter().position(|f| f.residual <= gate).unwrap_or_else(|| {
        let min = all.iter().fold(f64::INFINITY, |m, f| m.min(f.residual));
        all.iter()
            .position(|f| f.residual <= (1.0 + FIT_AMBIGUITY_BAND) * min)
            .unwrap_or(0)
    });

    let mut order: Vec<usize> = (0..all.len()).collect();
    order.sort_by(|&a, &b| all[a].residual.partial_cmp(&all[b].residual).unwrap());
    let (ambiguous, runner_up) = if order.len() >= 2 {
        let first = all[order[0]].residual;
        let second = all[order[1]].residual;
        let close = second <= (1.0 + FIT_AMBIGUITY_BAND) * first;
        let ru = order.iter().find(|&&i| i != chosen).map(|&i| all[i]);
        (close, if close { ru } else { None })
    } else {
        (false, None)
    };

    // Slope drift in the chosen abscissa: first third vs last third.
    let xs_chosen: &[f64] = match all[chosen].class {
        GrowthClass::Polynomial(_) => &xs_poly,
        GrowthClass::LogPower(_) => xs_log.as_ref().unwrap(),
        GrowthClass::ExpIntegral(_) => &xs_exp,
    };
    let third = (xs_chosen.len() / 3).max(2);
    let head = linear_fit(&xs_chosen[..third], &ys[..third]);
    let tail = linear_fit(&xs_chosen[xs_chosen.len() - third..], &ys[ys.len() - third..]);
    let slope_drift = float::abs(tail.slope - head.slope);

    Ok(GrowthFit {
        class: all[chosen].class,
        fit_window: window,
        residual: all[chosen].residual,
        slope_drift,
        ambiguous,
        runner_up,
        all,
    })
}

struct LinFit {
    slope: f64,
    residual: f64,
}

fn linear_fit(xs: &[f64], ys: &[f64]) -> LinFit {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let mut sxx = 0.0;
    let mut sxy = 0.0;
    for (x, y) in xs.iter().zip(ys.iter()) {
        sxx += (x - mx) * (x - mx);
        sxy += (x - mx) * (y - my);
    }
    let slope = if sxx > 0.0 { sxy / sxx } else { 0.0 };
    let intercept = my - slope * mx;
    let mut residual: f64 = 0.0;
    for (x, y) in xs.iter().zip(ys.iter()) {
        residual = residual.max(float::abs(y - (slope * x + intercept)));
    }
    LinFit { slope, residual }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::ConeSpec;
    use crate::warp::WarpFn;

    #[test]
    fn sphere_eigendata_table() {
        assert_eq!(sphere_eigendata(3, 1), (2.0, 3));
        assert_eq!(sphere_eigendata(2, 4), (16.0, 2));
        assert_eq!(sphere_eigendata(4, 2), (8.0, 9));
        assert_eq!(sphere_eigendata(3, 0), (0.0, 1));
        assert_eq!(sphere_eigendata(2, 1), (1.0, 2));
        // S²: multiplicity 2m+1
        for m in 1..10u32 {
            assert_eq!(sphere_eigendata(3, m).1, (2 * m + 1) as u64);
        }
    }

    #[test]
    fn indicial_exponents() {
        assert!((indicial_exponent(2, 9.0) - 3.0).abs() < 1e-14);
        assert!((indicial_exponent(3, 2.0) - 1.0).abs() < 1e-14);
        assert!((indicial_exponent(7, 6.0) - 1.0).abs() < 1e-14);
        assert_eq!(indicial_exponent(5, 0.0), 0.0);
        // tiny λ²: no cancellation
        let g = indicial_exponent(9, 1e-18);
        assert!((g - 1e-18 / 7.0).abs() < 1e-32);
    }

    #[test]
    fn flat_modes_are_exact_powers() {
        // Euler equation: log φ_m = γ log r to machine precision.
        for &n in &[2u32, 3, 7] {
            let c = ConeSpec::round(n, WarpFn::euclidean()).unwrap();
            for m in [1u32, 3] {
                let mode = integrate_mode(&c, m, 100.0, &ModeOptions::default()).unwrap();
                for (i, &r) in mode.grid.iter().enumerate() {
                    let want = mode.gamma * r.ln();
                    assert!(
                        (mode.log_phi[i] - want).abs() <= 1e-10 * want.abs().max(1.0),
                        "n={n} m={m} r={r}: {} vs {want}",
                        mode.log_phi[i]
                    );
                }
            }
        }
    }

    #[test]
    fn normalization_and_monotonicity() {
        let c = ConeSpec::round(2, WarpFn::half_sin()).unwrap();
        let mode = integrate_mode(&c, 1, 1000.0, &ModeOptions::default()).unwrap();
        let at_one = mode.log_phi_at(1.0).unwrap();
        assert!(at_one.abs() <= 1e-12, "log phi(1) = {at_one}");
        for w in mode.log_phi.windows(2) {
            assert!(w[1] >= w[0] - 1e-12);
        }
        for w in mode.x.windows(2) {
            assert!(w[1] >= w[0] - 1e-10, "x not monotone: {} -> {}", w[0], w[1]);
        }
        assert!(mode.x.iter().all(|&v| v >= 0.0));
    }

    #[test]
    fn closed_form_2d_examples() {
        let e = WarpFn::euclidean();
        let v = mode_2d_closed_form(&e, 2, 10.0, 1e-12).unwrap();
        assert!((v - 2.0 * 10f64.ln()).abs() < 1e-10);
        // negative below r = 1
        let v = mode_2d_closed_form(&e, 1, 0.5, 1e-12).unwrap();
        assert!((v - 0.5f64.ln()).abs() < 1e-10);
        assert!(mode_2d_closed_form(&e, 0, 2.0, 1e-10).is_err());
    }

    #[test]
    fn integrator_matches_2d_closed_form() {
        for w in [WarpFn::half_sin(), WarpFn::r_log_r(), WarpFn::bump_counterexample()] {
            let c = ConeSpec::round(2, w).unwrap();
            for m in [1u32, 4] {
                let mode = integrate_mode(&c, m, 100.0, &ModeOptions::default()).unwrap();
                for (i, &r) in mode.grid.iter().enumerate() {
                    if r < 2.0 {
                        continue;
                    }
                    let oracle =
                        mode_2d_closed_form(c.warp(), m, r, 1e-12).unwrap();
                    let tol = 1e-6 * oracle.abs().max(1e-6);
                    assert!(
                        (mode.log_phi[i] - oracle).abs() <= tol,
                        "{} m={m} r={r}: {} vs {oracle}",
                        c.warp().name(),
                        mode.log_phi[i]
                    );
                }
            }
        }
    }

    #[test]
    fn mode_ordering_in_lambda() {
        let c = ConeSpec::round(3, WarpFn::half_sin()).unwrap();
        let opts = ModeOptions::default();
        let modes: Vec<RadialMode> =
            (1..=5).map(|m| integrate_mode(&c, m, 100.0, &opts).unwrap()).collect();
        for pair in modes.windows(2) {
            for i in 0..pair[0].grid.len() {
                if pair[0].grid[i] > 1.0 {
                    assert!(pair[1].log_phi[i] >= pair[0].log_phi[i] - 1e-10);
                }
            }
        }
    }

    #[test]
    fn riccati_identity_on_dense_grid() {
        // |x′ + (λ²/φ^{n−1})x² − φ^{n−3}| ≤ 1e−6·(1 + φ^{n−3}) with a
        // nonuniform 3-point stencil for x′; needs a dense grid because the
        // identity residual is dominated by the finite difference.
        let opts = ModeOptions { points_per_decade: 20_000, ..Default::default() };
        for (w, n) in [(WarpFn::half_sin(), 3u32), (WarpFn::power_beta(0.5).unwrap(), 4u32)] {
            let c = ConeSpec::round(n, w).unwrap();
            let mode = integrate_mode(&c, 1, 10.0, &opts).unwrap();
            let start = mode.grid.iter().position(|&r| r >= 1.0).unwrap();
            for i in (start..mode.grid.len() - 1).step_by(97) {
                if i == 0 {
                    continue;
                }
                let (r0, r1, r2) = (mode.grid[i - 1], mode.grid[i], mode.grid[i + 1]);
                let (x0, x1, x2) = (mode.x[i - 1], mode.x[i], mode.x[i + 1]);
                let hm = r1 - r0;
                let hp = r2 - r1;
                let dx = (hm * hm * x2 - hp * hp * x0 + (hp * hp - hm * hm) * x1)
                    / (hm * hp * (hm + hp));
                let phi = mode.phi[i];
                let p3 = phi.powi(n as i32 - 3);
                let p1 = phi.powi(n as i32 - 1);
                let resid = dx + mode.lambda_sq / p1 * x1 * x1 - p3;
                assert!(
                    resid.abs() <= 1e-6 * (1.0 + p3),
                    "{} n={n} r={r1}: residual {resid}",
                    c.warp().name()
                );
            }
        }
    }

    #[test]
    fn growth_fit_classes() {
        // Flat n=2, m=5: exact polynomial of degree 5.
        let c = ConeSpec::round(2, WarpFn::euclidean()).unwrap();
        let mode = integrate_mode(&c, 5, 100.0, &ModeOptions::default()).unwrap();
        let fit = fit_growth(&mode, (10.0, 100.0)).unwrap();
        match fit.class {
            GrowthClass::Polynomial(d) => assert!((d - 5.0).abs() < 1e-8, "{d}"),
            other => panic!("expected polynomial, got {other:?}"),
        }
        assert!(fit.residual < 1e-8);

        // half-sin m=1 on [1e3, 1e4]: quadratic growth.
        let c = ConeSpec::round(2, WarpFn::half_sin()).unwrap();
        let mode = integrate_mode(&c, 1, 1e4, &ModeOptions::default()).unwrap();
        let fit = fit_growth(&mode, (1e3, 1e4)).unwrap();
        match fit.class {
            GrowthClass::Polynomial(d) => assert!((1.9..=2.1).contains(&d), "{d}"),
            other => panic!("expected polynomial, got {other:?}"),
        }

        // r log r, n=3: the mode saturates; log-power is the best of the
        // three classes and must be what the classifier reports.
        let c = ConeSpec::round(3, WarpFn::r_log_r()).unwrap();
        let mode = integrate_mode(&c, 2, 1e6, &ModeOptions::default()).unwrap();
        let fit = fit_growth(&mode, (1e3, 1e6)).unwrap();
        assert!(
            matches!(fit.class, GrowthClass::LogPower(_)),
            "expected log-power, got {:?} (all: {:?})",
            fit.class,
            fit.all
        );

        // power_beta(0.5), n=2: super-polynomial, exp-integral wins.
        let c = ConeSpec::round(2, WarpFn::power_beta(0.5).unwrap()).unwrap();
        let mode = integrate_mode(&c, 1, 1e4, &ModeOptions::default()).unwrap();
        let fit = fit_growth(&mode, (100.0, 1e4)).unwrap();
        assert!(
            matches!(fit.class, GrowthClass::ExpIntegral(_)),
            "expected exp-integral, got {:?} (all: {:?})",
            fit.class,
            fit.all
        );
    }

    #[test]
    fn fit_window_validation() {
        let c = ConeSpec::round(2, WarpFn::euclidean()).unwrap();
        let mode = integrate_mode(&c, 1, 100.0, &ModeOptions::default()).unwrap();
        assert!(matches!(
            fit_growth(&mode, (10.0, 50.0)),
            Err(ModeError::BadRange { .. })
        ));
        let sparse = ModeOptions { points_per_decade: 8, ..Default::default() };
        let mode = integrate_mode(&c, 1, 100.0, &sparse).unwrap();
        assert!(matches!(
            fit_growth(&mode, (10.0, 100.0)),
            Err(ModeError::InsufficientSamples { .. })
        ));
    }

    #[test]
    fn zero_mode_rejected() {
        let c = ConeSpec::round(2, WarpFn::euclidean()).unwrap();
        assert!(matches!(
            integrate_mode(&c, 0, 10.0, &ModeOptions::default()),
            Err(ModeError::ZeroMode)
        ));
    }
}
