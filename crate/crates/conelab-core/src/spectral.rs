//! Two-dimensional harmonic extension from circle Fourier data.
//!
//! On the surface dr² + φ(r)²dθ², a harmonic function restricted to the
//! circle r = R has a Fourier expansion, and its extension inward is
//!
//! ```text
//! u(r, θ) = a₀ + Σ_m (φ_m(r)/φ_m(R)) (a_m cos mθ + b_m sin mθ),
//! ```
//!
//! with φ_m(r) = exp(m ∫₁^r 1/φ) the exact 2-d radial mode, so the mode
//! ratios are exp(−m ∫_r^R 1/φ) ∈ [0, 1] and everything is computed in log
//! space. The λ = 0 radial solution is taken constant (bounded at the
//! vertex), so the angular mean of the field equals a₀ at every radius.
//!
//! [`fd_oracle`] solves the same boundary-value problem by second-order
//! finite differences on the punctured disk — a genuinely independent path
//! to the same field, used to cross-validate the spectral representation.
//! Its linear system block-diagonalizes over the discrete circle modes, so
//! the sparse solve reduces to one tridiagonal solve per boundary mode with
//! the *discrete* angular symbol (2 − 2cos mΔθ)/Δθ², keeping it an honest
//! solution of the 2-d difference operator.

use crate::float;
use crate::quad::{self, QuadError};
use crate::warp::{WarpError, WarpFn};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

#[derive(Debug, Clone, PartialEq)]
pub enum SpectralError {
    /// Sample angles are not a uniform partition of the circle.
    NonUniformGrid { index: usize },
    TooFewSamples { found: usize, need: usize },
    BadInput { detail: String },
    /// Modes in BoundaryData must be strictly increasing.
    ModesNotIncreasing { index: usize },
    /// Boundary data exceeds the band limit of the requested grid.
    BandLimitExceeded { max_mode: u32, limit: u32 },
    /// The assembled finite-difference solution failed its residual check.
    SolveFailed { residual: f64 },
    Warp(WarpError),
    Quad(QuadError),
}

impl From<WarpError> for SpectralError {
    fn from(e: WarpError) -> Self {
        SpectralError::Warp(e)
    }
}

impl From<QuadError> for SpectralError {
    fn from(e: QuadError) -> Self {
        SpectralError::Quad(e)
    }
}

impl core::fmt::Display for SpectralError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            SpectralError::NonUniformGrid { index } => {
                write!(f, "sample {index} is off the uniform circle grid")
            }
            SpectralError::TooFewSamples { found, need } => {
                write!(f, "{found} samples supplied, at least {need} required")
            }
            SpectralError::BadInput { detail } => write!(f, "{detail}"),
            SpectralError::ModesNotIncreasing { index } => {
                write!(f, "Fourier modes must be strictly increasing (entry {index})")
            }
            SpectralError::BandLimitExceeded { max_mode, limit } => {
                write!(f, "mode {max_mode} exceeds the grid band limit {limit}")
            }
            SpectralError::SolveFailed { residual } => {
                write!(f, "finite-difference solve left residual {residual:e}")
            }
            SpectralError::Warp(e) => write!(f, "{e}"),
            SpectralError::Quad(e) => write!(f, "{e}"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for SpectralError {}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FourierCoeff {
    pub m: u32,
    /// cos mθ coefficient.
    pub a: f64,
    /// sin mθ coefficient.
    pub b: f64,
}

/// Fourier data of a function on the circle r = radius.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundaryData {
    pub radius: f64,
    pub a0: f64,
    pub coeffs: Vec<FourierCoeff>,
}

impl BoundaryData {
    pub fn new(radius: f64, a0: f64, coeffs: Vec<FourierCoeff>) -> Result<Self, SpectralError> {
        if !(radius > 0.0) {
            return Err(SpectralError::BadInput {
                detail: format!("boundary radius must be positive, got {radius}"),
            });
        }
        let mut prev = 0u32;
        for (i, c) in coeffs.iter().enumerate() {
            if c.m == 0 || (i > 0 && c.m <= prev) {
                return Err(SpectralError::ModesNotIncreasing { index: i });
            }
            if !c.a.is_finite() || !c.b.is_finite() {
                return Err(SpectralError::BadInput {
                    detail: format!("non-finite coefficient at mode {}", c.m),
                });
            }
            prev = c.m;
        }
        Ok(BoundaryData { radius, a0, coeffs })
    }

    pub fn max_mode(&self) -> u32 {
        self.coeffs.last().map(|c| c.m).unwrap_or(0)
    }

    /// Synthesize the boundary values at angle θ.
    pub fn value_at(&self, theta: f64) -> f64 {
        let mut v = self.a0;
        for c in &self.coeffs {
            let mt = c.m as f64 * theta;
            v += c.a * float::cos(mt) + c.b * float::sin(mt);
        }
        v
    }
}

/// Discrete Fourier analysis of uniform circle samples up to `max_mode`.
/// Exact for band-limited data once the sample count exceeds twice the top
/// mode; the 4× margin is required.
pub fn analyze_boundary(
    radius: f64,
    samples: &[(f64, f64)],
    max_mode: u32,
) -> Result<BoundaryData, SpectralError> {
    let s = samples.len();
    let need = (4 * max_mode.max(1)) as usize;
    if s < need {
        return Err(SpectralError::TooFewSamples { found: s, need });
    }
    let step = 2.0 * core::f64::consts::PI / s as f64;
    let theta0 = samples[0].0;
    for (j, &(theta, _)) in samples.iter().enumerate() {
        let expected = theta0 + j as f64 * step;
        if float::abs(theta - expected) > 1e-9 {
            return Err(SpectralError::NonUniformGrid { index: j });
        }
    }

    let a0 = samples.iter().map(|&(_, v)| v).sum::<f64>() / s as f64;
    let mut coeffs = Vec::new();
    for m in 1..=max_mode {
        let mut a = 0.0;
        let mut b = 0.0;
        for &(theta, v) in samples {
            let mt = m as f64 * theta;
            a += v * float::cos(mt);
            b += v * float::sin(mt);
        }
        coeffs.push(FourierCoeff { m, a: 2.0 * a / s as f64, b: 2.0 * b / s as f64 });
    }
    BoundaryData::new(radius, a0, coeffs)
}

/// A field sampled on a polar grid: `values[i][j] = u(r_grid[i], theta_grid[j])`.
#[derive(Debug, Clone)]
pub struct HarmonicField {
    pub r_grid: Vec<f64>,
    pub theta_grid: Vec<f64>,
    pub values: Vec<Vec<f64>>,
}

impl HarmonicField {
    pub fn min_max(&self) -> (f64, f64) {
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for row in &self.values {
            for &v in row {
                lo = lo.min(v);
                hi = hi.max(v);
            }
        }
        (lo, hi)
    }
}

/// Mode ratios φ_m(r)/φ_m(R) = exp(−m ∫_r^R 1/φ) at each radius of a sorted
/// ascending grid with r ≤ R.
fn mode_ratios(
    w: &WarpFn,
    r_grid: &[f64],
    radius: f64,
    top_mode: u32,
    tol: f64,
) -> Result<Vec<Vec<f64>>, SpectralError> {
    // Cumulative ∫ between consecutive grid radii, then up to R.
    let mut nodes: Vec<f64> = r_grid.to_vec();
    nodes.push(radius);
    let wc = w.clone();
    let cum = quad::cumulative(
        move |s: f64| match wc.eval(s) {
            Ok((phi, _, _)) => 1.0 / phi,
            Err(_) => f64::NAN,
        },
        &nodes,
        tol,
    )?;
    let at_r = cum[cum.len() - 1];
    let mut out = Vec::with_capacity(r_grid.len());
    for (i, _) in r_grid.iter().enumerate() {
        let j = at_r - cum[i]; // ∫_{r_i}^{R} 1/φ ≥ 0
        let mut per_mode = Vec::with_capacity(top_mode as usize);
        for m in 1..=top_mode {
            per_mode.push(float::exp(-(m as f64) * j));
        }
        out.push(per_mode);
    }
    Ok(out)
}

/// Evaluate the harmonic extension of `data` on the tensor grid
/// `r_grid × theta_grid`; radii must be ascending in (0, R].
pub fn extend_harmonic(
    w: &WarpFn,
    data: &BoundaryData,
    r_grid: &[f64],
    theta_grid: &[f64],
) -> Result<HarmonicField, SpectralError> {
    validate_r_grid(r_grid, data.radius)?;
    let ratios = mode_ratios(w, r_grid, data.radius, data.max_mode(), 1e-11)?;
    let mut values = Vec::with_capacity(r_grid.len());
    for ratio_row in &ratios {
        let mut row = Vec::with_capacity(theta_grid.len());
        for &theta in theta_grid {
            let mut v = data.a0;
            for c in &data.coeffs {
                let ratio = ratio_row[(c.m - 1) as usize];
                let mt = c.m as f64 * theta;
                v += ratio * (c.a * float::cos(mt) + c.b * float::sin(mt));
            }
            row.push(v);
        }
        values.push(row);
    }
    Ok(HarmonicField { r_grid: r_grid.to_vec(), theta_grid: theta_grid.to_vec(), values })
}

fn validate_r_grid(r_grid: &[f64], radius: f64) -> Result<(), SpectralError> {
    if r_grid.is_empty() {
        return Err(SpectralError::BadInput { detail: "empty radial grid".into() });
    }
    let mut prev = 0.0;
    for &r in r_grid {
        if !(r > prev) || r > radius * (1.0 + 1e-12) {
            return Err(SpectralError::BadInput {
                detail: format!("radial grid must increase within (0, {radius}], got {r}"),
            });
        }
        prev = r;
    }
    Ok(())
}

/// Extend boundary data given at R = 1 outward to the circle r = r₂ > 1 via
/// the global representation, re-analyze that circle, and return the largest
/// deviation from the predicted coefficient scaling
/// a_m(r₂) = a_m(1)·φ_m(r₂)/φ_m(1).
pub fn coefficient_scaling_check(
    w: &WarpFn,
    data: &BoundaryData,
    r2: f64,
) -> Result<f64, SpectralError> {
    if float::abs(data.radius - 1.0) > 1e-12 {
        return Err(SpectralError::BadInput {
            detail: format!("scaling check expects data at R = 1, got R = {}", data.radius),
        });
    }
    if !(r2 > 1.0) {
        return Err(SpectralError::BadInput {
            detail: format!("target radius must exceed 1, got {r2}"),
        });
    }
    let top = data.max_mode();
    let wc = w.clone();
    let grow = quad::integrate(
        move |s: f64| match wc.eval(s) {
            Ok((phi, _, _)) => 1.0 / phi,
            Err(_) => f64::NAN,
        },
        1.0,
        r2,
        1e-12,
    )?;

    // Synthesize the circle r = r₂ from the representation and re-analyze.
    let s = (8 * top.max(1) as usize).max(64);
    let mut samples = Vec::with_capacity(s);
    for j in 0..s {
        let theta = 2.0 * core::f64::consts::PI * j as f64 / s as f64;
        let mut v = data.a0;
        for c in &data.coeffs {
            let ratio = float::exp(c.m as f64 * grow);
            let mt = c.m as f64 * theta;
            v += ratio * (c.a * float::cos(mt) + c.b * float::sin(mt));
        }
        samples.push((theta, v));
    }
    let measured = analyze_boundary(r2, &samples, top)?;

    let mut worst: f64 = float::abs(measured.a0 - data.a0);
    for c in &data.coeffs {
        let ratio = float::exp(c.m as f64 * grow);
        let got = measured
            .coeffs
            .iter()
            .find(|mc| mc.m == c.m)
            .copied()
            .unwrap_or(FourierCoeff { m: c.m, a: 0.0, b: 0.0 });
        worst = worst.max(float::abs(got.a - ratio * c.a));
        worst = worst.max(float::abs(got.b - ratio * c.b));
    }
    Ok(worst)
}

/// Squared L² norm of the extension over the circle of radius r:
/// 2π·φ(r)·[a₀² + ½ Σ ratio_m²(a_m² + b_m²)] (area density φ on surfaces).
pub fn plancherel_norm(w: &WarpFn, data: &BoundaryData, r: f64) -> Result<f64, SpectralError> {
    if !(r > 0.0) {
        return Err(SpectralError::BadInput { detail: format!("radius must be positive: {r}") });
    }
    let (phi, _, _) = w.eval(r)?;
    let wc = w.clone();
    let j = quad::integrate(
        move |s: f64| match wc.eval(s) {
            Ok((p, _, _)) => 1.0 / p,
            Err(_) => f64::NAN,
        },
        r,
        data.radius,
        1e-12,
    )?;
    let mut sum = data.a0 * data.a0;
    for c in &data.coeffs {
        let ratio = float::exp(-(c.m as f64) * j); // > 1 allowed for r > R
        sum += 0.5 * ratio * ratio * (c.a * c.a + c.b * c.b);
    }
    Ok(2.0 * core::f64::consts::PI * phi * sum)
}

/// Second-order finite-difference solution of
/// u_rr + (φ′/φ)u_r + (1/φ²)u_θθ = 0 on the punctured disk (0, R]×S¹ with
/// the given Dirichlet data at r = R, closed at the vertex by u(0, ·) = a₀
/// and vanishing oscillatory modes. The grid is nr×ntheta with h = R/nr;
/// boundary data must be band-limited to ntheta/8.
pub fn fd_oracle(
    w: &WarpFn,
    data: &BoundaryData,
    nr: usize,
    ntheta: usize,
) -> Result<HarmonicField, SpectralError> {
    if nr < 32 || ntheta < 32 {
        return Err(SpectralError::BadInput {
            detail: format!("grid must be at least 32x32, got {nr}x{ntheta}"),
        });
    }
    let limit = (ntheta / 8) as u32;
    if data.max_mode() > limit {
        return Err(SpectralError::BandLimitExceeded { max_mode: data.max_mode(), limit });
    }

    let radius = data.radius;
    let h = radius / nr as f64;
    let dtheta = 2.0 * core::f64::consts::PI / ntheta as f64;

    // Radial coefficient tables at the interior rings.
    let mut phi = Vec::with_capacity(nr);
    let mut w_adv = Vec::with_capacity(nr); // φ′/(2hφ)
    for i in 1..nr {
        let r = i as f64 * h;
        let (p, dp, _) = w.eval(r)?;
        phi.push(p);
        w_adv.push(dp / (2.0 * h * p));
    }

    // Unit radial profile per mode: boundary value 1 at r = R, vertex value
    // 1 for the mean mode and 0 otherwise.
    let mut modes: Vec<u32> = alloc::vec![0];
    modes.extend(data.coeffs.iter().map(|c| c.m));

    let mut profiles: Vec<Vec<f64>> = Vec::with_capacity(modes.len());
    for &m in &modes {
        let mu = (2.0 - 2.0 * float::cos(m as f64 * dtheta)) / (dtheta * dtheta);
        let inner = nr - 1;
        let mut sub = alloc::vec![0.0; inner];
        let mut diag = alloc::vec![0.0; inner];
        let mut sup = alloc::vec![0.0; inner];
        let mut rhs = alloc::vec![0.0; inner];
        for k in 0..inner {
            let p = phi[k];
            sub[k] = 1.0 / (h * h) - w_adv[k];
            diag[k] = -2.0 / (h * h) - mu / (p * p);
            sup[k] = 1.0 / (h * h) + w_adv[k];
        }
        // Vertex closure at i = 0 and Dirichlet at i = nr.
        let u_vertex = if m == 0 { 1.0 } else { 0.0 };
        rhs[0] -= sub[0] * u_vertex;
        rhs[inner - 1] -= sup[inner - 1] * 1.0;

        let mut prof = thomas_solve(&sub, &diag, &sup, &rhs).ok_or(SpectralError::BadInput {
            detail: "tridiagonal solve hit a zero pivot".into(),
        })?;
        prof.push(1.0); // boundary ring
        profiles.push(prof);
    }

    // Assemble the field.
    let r_grid: Vec<f64> = (1..=nr).map(|i| i as f64 * h).collect();
    let theta_grid: Vec<f64> = (0..ntheta).map(|j| j as f64 * dtheta).collect();
    let mut values = alloc::vec![alloc::vec![0.0f64; ntheta]; nr];
    for (i, row) in values.iter_mut().enumerate() {
        for (j, v) in row.iter_mut().enumerate() {
            let theta = theta_grid[j];
            let mut acc = data.a0 * profiles[0][i];
            for (c, prof) in data.coeffs.iter().zip(profiles.iter().skip(1)) {
                let mt = c.m as f64 * theta;
                acc += prof[i] * (c.a * float::cos(mt) + c.b * float::sin(mt));
            }
            *v = acc;
        }
    }

    // Residual of the assembled 2-d difference operator on the interior.
    let mut worst = 0.0f64;
    for i in 1..nr - 1 {
        let p = phi[i - 1];
        let adv = w_adv[i - 1];
        for j in 0..ntheta {
            let jm = (j + ntheta - 1) % ntheta;
            let jp = (j + 1) % ntheta;
            let u0 = values[i - 1][j];
            // vertex value: oscillatory modes vanish there, leaving the mean
            let um = if i >= 2 { values[i - 2][j] } else { data.a0 };
            let up = values[i][j];
            let lap_r = (up - 2.0 * u0 + um) / (h * h) + adv * (up - um) * 1.0;
            let lap_t = (values[i - 1][jp] - 2.0 * u0 + values[i - 1][jm]) / (dtheta * dtheta);
            let resid = lap_r + lap_t / (p * p);
            let scale = 1.0f64.max(float::abs(u0) / (h * h));
            worst = worst.max(float::abs(resid) / scale);
        }
    }
    if worst > 1e-8 {
        return Err(SpectralError::SolveFailed { residual: worst });
    }

    Ok(HarmonicField { r_grid, theta_grid, values })
}

/// Thomas algorithm for a tridiagonal system; None on a vanishing pivot.
fn thomas_solve(sub: &[f64], diag: &[f64], sup: &[f64], rhs: &[f64]) -> Option<Vec<f64>> {
    let n = diag.len();
    let mut c = alloc::vec![0.0f64; n];
    let mut d = alloc::vec![0.0f64; n];
    let mut pivot = diag[0];
    if pivot == 0.0 {
        return None;
    }
    c[0] = sup[0] / pivot;
    d[0] = rhs[0] / pivot;
    for k in 1..n {
        pivot = diag[k] - sub[k] * c[k - 1];
        if pivot == 0.0 {
            return None;
        }
        c[k] = sup[k] / pivot;
        d[k] = (rhs[k] - sub[k] * d[k - 1]) / pivot;
    }
    let mut x = alloc::vec![0.0f64; n];
    x[n - 1] = d[n - 1];
    for k in (0..n - 1).rev() {
        x[k] = d[k] - c[k] * x[k + 1];
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::PI;

    fn uniform_samples(f: impl Fn(f64) -> f64, s: usize) -> Vec<(f64, f64)> {
        (0..s)
            .map(|j| {
                let theta = 2.0 * PI * j as f64 / s as f64;
                (theta, f(theta))
            })
            .collect()
    }

    #[test]
    fn analysis_recovers_coefficients() {
        let data = analyze_boundary(1.0, &uniform_samples(|t| t.cos(), 64), 4).unwrap();
        assert!(data.a0.abs() < 1e-12);
        assert!((data.coeffs[0].a - 1.0).abs() < 1e-12);
        for c in &data.coeffs {
            if c.m > 1 {
                assert!(c.a.abs() < 1e-12 && c.b.abs() < 1e-12);
            }
        }

        let data = analyze_boundary(1.0, &uniform_samples(|_| 3.0, 16), 2).unwrap();
        assert!((data.a0 - 3.0).abs() < 1e-13);
        assert!(data.coeffs.iter().all(|c| c.a.abs() < 1e-13 && c.b.abs() < 1e-13));

        let data = analyze_boundary(
            1.0,
            &uniform_samples(|t| t.cos() + 0.5 * (3.0 * t).sin(), 64),
            4,
        )
        .unwrap();
        assert!((data.coeffs[0].a - 1.0).abs() < 1e-12);
        assert!((data.coeffs[2].b - 0.5).abs() < 1e-12);
    }

    #[test]
    fn analysis_rejects_bad_grids() {
        let mut samples = uniform_samples(|t| t.cos(), 64);
        samples[5].0 += 1e-6;
        assert!(matches!(
            analyze_boundary(1.0, &samples, 4),
            Err(SpectralError::NonUniformGrid { index: 5 })
        ));
        assert!(matches!(
            analyze_boundary(1.0, &uniform_samples(|t| t.cos(), 8), 4),
            Err(SpectralError::TooFewSamples { .. })
        ));
    }

    fn disk_grids(radius: f64, nr: usize, nt: usize) -> (Vec<f64>, Vec<f64>) {
        let r: Vec<f64> = (1..=nr).map(|i| radius * i as f64 / nr as f64).collect();
        let t: Vec<f64> = (0..nt).map(|j| 2.0 * PI * j as f64 / nt as f64).collect();
        (r, t)
    }

    #[test]
    fn flat_disk_extension_is_r_cos_theta() {
        let data = BoundaryData::new(
            1.0,
            0.0,
            alloc::vec![FourierCoeff { m: 1, a: 1.0, b: 0.0 }],
        )
        .unwrap();
        let (r, t) = disk_grids(1.0, 16, 32);
        let field = extend_harmonic(&WarpFn::euclidean(), &data, &r, &t).unwrap();
        for (i, &ri) in field.r_grid.iter().enumerate() {
            for (j, &tj) in field.theta_grid.iter().enumerate() {
                let want = ri * tj.cos();
                assert!(
                    (field.values[i][j] - want).abs() < 1e-10,
                    "u({ri},{tj}) = {} vs {want}",
                    field.values[i][j]
                );
            }
        }
    }

    #[test]
    fn constants_extend_to_constants() {
        let data = BoundaryData::new(2.0, 7.5, alloc::vec![]).unwrap();
        let (r, t) = disk_grids(2.0, 8, 16);
        let field = extend_harmonic(&WarpFn::half_sin(), &data, &r, &t).unwrap();
        for row in &field.values {
            for &v in row {
                assert_eq!(v, 7.5);
            }
        }
    }

    #[test]
    fn angular_mean_is_a0_and_max_principle() {
        let data = BoundaryData::new(
            5.0,
            1.25,
            alloc::vec![
                FourierCoeff { m: 1, a: 0.7, b: -0.2 },
                FourierCoeff { m: 3, a: 0.0, b: 0.4 }
            ],
        )
        .unwrap();
        let (r, t) = disk_grids(5.0, 20, 64);
        let field = extend_harmonic(&WarpFn::half_sin(), &data, &r, &t).unwrap();
        for row in &field.values {
            let mean = row.iter().sum::<f64>() / row.len() as f64;
            assert!((mean - 1.25).abs() < 1e-8, "mean {mean}");
        }
        // interior range within boundary range
        let boundary: Vec<f64> = t.iter().map(|&th| data.value_at(th)).collect();
        let (blo, bhi) = boundary
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| (lo.min(v), hi.max(v)));
        let (flo, fhi) = field.min_max();
        assert!(flo >= blo - 1e-6 && fhi <= bhi + 1e-6);
    }

    #[test]
    fn ratios_monotone_in_r() {
        let w = WarpFn::half_sin();
        let r: Vec<f64> = (1..=40).map(|i| 10.0 * i as f64 / 40.0).collect();
        let ratios = mode_ratios(&w, &r, 10.0, 3, 1e-11).unwrap();
        for m in 0..3usize {
            let mut prev = 0.0;
            for row in &ratios {
                assert!(row[m] >= prev - 1e-14);
                assert!(row[m] >= 0.0 && row[m] <= 1.0 + 1e-14);
                prev = row[m];
            }
            assert!((ratios[ratios.len() - 1][m] - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn scaling_check_flat_and_half_sin() {
        let data = BoundaryData::new(
            1.0,
            0.0,
            alloc::vec![FourierCoeff { m: 2, a: 1.0, b: 0.0 }],
        )
        .unwrap();
        // flat: a₂(3) = 9·a₂(1), measured against the synthesized circle
        let err = coefficient_scaling_check(&WarpFn::euclidean(), &data, 3.0).unwrap();
        assert!(err < 1e-8, "{err}");

        let data = BoundaryData::new(
            1.0,
            0.5,
            alloc::vec![FourierCoeff { m: 1, a: 1.0, b: 0.0 }],
        )
        .unwrap();
        let err = coefficient_scaling_check(&WarpFn::half_sin(), &data, 5.0).unwrap();
        assert!(err < 1e-6, "{err}");
    }

    #[test]
    fn plancherel_values_and_quadrature_oracle() {
        // flat disk, a₁ = 1 at R = 1: ∫ cos² = π
        let data = BoundaryData::new(
            1.0,
            0.0,
            alloc::vec![FourierCoeff { m: 1, a: 1.0, b: 0.0 }],
        )
        .unwrap();
        let v = plancherel_norm(&WarpFn::euclidean(), &data, 1.0).unwrap();
        assert!((v - PI).abs() < 1e-10);

        // constants: 2π φ(r) a₀²
        let data = BoundaryData::new(3.0, 2.0, alloc::vec![]).unwrap();
        let v = plancherel_norm(&WarpFn::half_sin(), &data, 1.7).unwrap();
        let phi = WarpFn::half_sin().value(1.7).unwrap();
        assert!((v - 2.0 * PI * phi * 4.0).abs() < 1e-10);

        // mixed data against direct θ-quadrature of u² (uniform trapezoid is
        // spectrally exact on the circle)
        let data = BoundaryData::new(
            10.0,
            0.3,
            alloc::vec![
                FourierCoeff { m: 1, a: 1.0, b: 0.5 },
                FourierCoeff { m: 4, a: -0.25, b: 0.1 }
            ],
        )
        .unwrap();
        let w = WarpFn::half_sin();
        let r = 4.0;
        let field = extend_harmonic(&w, &data, &[r], &disk_grids(10.0, 1, 512).1).unwrap();
        let phi = w.value(r).unwrap();
        let dtheta = 2.0 * PI / 512.0;
        let quad_norm: f64 =
            field.values[0].iter().map(|&u| u * u * phi * dtheta).sum();
        let v = plancherel_norm(&w, &data, r).unwrap();
        assert!((v - quad_norm).abs() < 1e-6 * quad_norm.abs().max(1.0), "{v} vs {quad_norm}");
    }

    #[test]
    fn norm_density_monotone_in_r() {
        let data = BoundaryData::new(
            10.0,
            0.3,
            alloc::vec![FourierCoeff { m: 2, a: 1.0, b: 0.0 }],
        )
        .unwrap();
        let w = WarpFn::half_sin();
        let mut prev = 0.0;
        for i in 1..=20 {
            let r = 0.5 * i as f64;
            let v = plancherel_norm(&w, &data, r).unwrap();
            let phi = w.value(r).unwrap();
            let density = v / (2.0 * PI * phi);
            assert!(density >= prev - 1e-12);
            prev = density;
        }
    }

    #[test]
    fn fd_oracle_flat_disk_accuracy_and_convergence() {
        let data = BoundaryData::new(
            1.0,
            0.0,
            alloc::vec![FourierCoeff { m: 1, a: 1.0, b: 0.0 }],
        )
        .unwrap();
        let w = WarpFn::euclidean();
        let mut errs = Vec::new();
        for n in [64usize, 128] {
            let field = fd_oracle(&w, &data, n, n).unwrap();
            let mut worst = 0.0f64;
            for (i, &r) in field.r_grid.iter().enumerate() {
                for (j, &t) in field.theta_grid.iter().enumerate() {
                    worst = worst.max((field.values[i][j] - r * t.cos()).abs());
                }
            }
            errs.push(worst);
        }
        assert!(errs[1] < 5e-3, "err at 128: {}", errs[1]);
        assert!(errs[1] <= 0.35 * errs[0], "halving: {} -> {}", errs[0], errs[1]);
    }

    #[test]
    fn fd_oracle_constants_exact() {
        let data = BoundaryData::new(1.0, 4.0, alloc::vec![]).unwrap();
        let field = fd_oracle(&WarpFn::half_sin(), &data, 32, 32).unwrap();
        for row in &field.values {
            for &v in row {
                assert!((v - 4.0).abs() < 1e-11);
            }
        }
    }

    #[test]
    fn fd_oracle_matches_spectral_on_half_sin() {
        let data = BoundaryData::new(
            10.0,
            0.0,
            alloc::vec![FourierCoeff { m: 1, a: 1.0, b: 0.0 }],
        )
        .unwrap();
        let w = WarpFn::half_sin();
        let field = fd_oracle(&w, &data, 128, 128).unwrap();
        let spectral = extend_harmonic(&w, &data, &field.r_grid, &field.theta_grid).unwrap();
        let mut worst = 0.0f64;
        for i in 0..field.r_grid.len() {
            for j in 0..field.theta_grid.len() {
                worst = worst.max((field.values[i][j] - spectral.values[i][j]).abs());
            }
        }
        assert!(worst <= 1e-2, "spectral vs fd: {worst}");
    }

    #[test]
    fn fd_oracle_validates_inputs() {
        let data = BoundaryData::new(
            1.0,
            0.0,
            alloc::vec![FourierCoeff { m: 9, a: 1.0, b: 0.0 }],
        )
        .unwrap();
        assert!(matches!(
            fd_oracle(&WarpFn::euclidean(), &data, 64, 64),
            Err(SpectralError::BandLimitExceeded { .. })
        ));
        let data = BoundaryData::new(1.0, 0.0, alloc::vec![]).unwrap();
        assert!(matches!(
            fd_oracle(&WarpFn::euclidean(), &data, 16, 64),
            Err(SpectralError::BadInput { .. })
        ));
    }

    #[test]
    fn boundary_data_validation() {
        assert!(BoundaryData::new(
            1.0,
            0.0,
            alloc::vec![
                FourierCoeff { m: 2, a: 1.0, b: 0.0 },
                FourierCoeff { m: 2, a: 0.0, b: 1.0 }
            ]
        )
        .is_err());
        assert!(BoundaryData::new(-1.0, 0.0, alloc::vec![]).is_err());
    }
}
