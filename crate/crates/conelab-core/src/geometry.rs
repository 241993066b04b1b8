//! Cone geometry: curvature, ball volumes, doubling ratios, total curvature.
//!
//! A cone is the warped product dr² + φ(r)² g_ω over a closed (n−1)-manifold
//! link. Geodesic balls about the vertex have
//!
//! ```text
//! Vol(B_R) = Vol(link) · ∫₀^R φ(s)^{n−1} ds,
//! ```
//!
//! and the sectional curvature of planes containing ∂_r is −φ″/φ. For the
//! doubling question only the ratio Vol(B_2R)/Vol(B_R) matters; a metric with
//! exponential plateau bursts fails it while remaining perfectly tame for
//! Liouville-type statements.

use crate::float;
use crate::quad::{self, QuadError};
use crate::warp::{WarpError, WarpFn};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

/// Spectrum of the link: either the round unit sphere (eigenvalues
/// m(m + n − 2) with the harmonic-polynomial multiplicities) or an explicit
/// list of (λ², multiplicity) pairs for m = 1, 2, … (λ₀² = 0 with
/// multiplicity 1 is implicit).
#[derive(Debug, Clone)]
pub enum Link {
    RoundSphere,
    Custom(Vec<(f64, u64)>),
}

#[derive(Debug, Clone, PartialEq)]
pub enum ConeError {
    DimensionTooSmall { n: u32 },
    /// Custom eigenvalues must be positive and strictly increasing.
    BadEigenvalueList { index: usize, detail: String },
    ModeOutOfRange { m: u32, available: usize },
    Warp(WarpError),
    Quad(QuadError),
}

impl From<WarpError> for ConeError {
    fn from(e: WarpError) -> Self {
        ConeError::Warp(e)
    }
}

impl From<QuadError> for ConeError {
    fn from(e: QuadError) -> Self {
        ConeError::Quad(e)
    }
}

impl core::fmt::Display for ConeError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            ConeError::DimensionTooSmall { n } => {
                write!(f, "cone dimension must be at least 2, got {n}")
            }
            ConeError::BadEigenvalueList { index, detail } => {
                write!(f, "bad eigenvalue list at entry {index}: {detail}")
            }
            ConeError::ModeOutOfRange { m, available } => {
                write!(f, "mode {m} requested but only {available} eigenvalues supplied")
            }
            ConeError::Warp(e) => write!(f, "{e}"),
            ConeError::Quad(e) => write!(f, "{e}"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for ConeError {}

/// An n-dimensional cone: warped metric plus link spectrum.
#[derive(Debug, Clone)]
pub struct ConeSpec {
    n: u32,
    warp: WarpFn,
    link: Link,
    link_volume: f64,
}

impl ConeSpec {
    /// Cone over the round unit (n−1)-sphere.
    pub fn round(n: u32, warp: WarpFn) -> Result<Self, ConeError> {
        if n < 2 {
            return Err(ConeError::DimensionTooSmall { n });
        }
        Ok(ConeSpec { n, warp, link: Link::RoundSphere, link_volume: unit_sphere_area(n) })
    }

    /// Cone over a link given by its eigenvalue/multiplicity sequence
    /// (for m ≥ 1, strictly increasing λ²) and its volume.
    pub fn with_link(
        n: u32,
        warp: WarpFn,
        eigenvalues: Vec<(f64, u64)>,
        link_volume: f64,
    ) -> Result<Self, ConeError> {
        if n < 2 {
            return Err(ConeError::DimensionTooSmall { n });
        }
        let mut prev = 0.0;
        for (i, &(lsq, mult)) in eigenvalues.iter().enumerate() {
            if !(lsq > prev) {
                return Err(ConeError::BadEigenvalueList {
                    index: i,
                    detail: format!("lambda^2 = {lsq} not increasing past {prev}"),
                });
            }
            if mult == 0 {
                return Err(ConeError::BadEigenvalueList {
                    index: i,
                    detail: "multiplicity must be positive".into(),
                });
            }
            prev = lsq;
        }
        Ok(ConeSpec { n, warp, link: Link::Custom(eigenvalues), link_volume })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn warp(&self) -> &WarpFn {
        &self.warp
    }

    pub fn link(&self) -> &Link {
        &self.link
    }

    pub fn link_volume(&self) -> f64 {
        self.link_volume
    }

    /// (λ_m², multiplicity) of the m-th link eigenvalue; m = 0 is the
    /// constant eigenfunction.
    pub fn eigendata(&self, m: u32) -> Result<(f64, u64), ConeError> {
        if m == 0 {
            return Ok((0.0, 1));
        }
        match &self.link {
            Link::RoundSphere => Ok(crate::modes::sphere_eigendata(self.n, m)),
            Link::Custom(list) => list
                .get((m - 1) as usize)
                .copied()
                .ok_or(ConeError::ModeOutOfRange { m, available: list.len() }),
        }
    }
}

/// Surface area of the unit (n−1)-sphere, 2 π^{n/2} / Γ(n/2), by the
/// half-integer Γ recurrence.
pub fn unit_sphere_area(n: u32) -> f64 {
    let pi = core::f64::consts::PI;
    // Γ(n/2): walk up from Γ(1) = 1 or Γ(1/2) = √π.
    let mut gamma;
    let mut arg; // current argument of gamma
    if n.is_multiple_of(2) {
        gamma = 1.0;
        arg = 1.0;
    } else {
        gamma = float::sqrt(pi);
        arg = 0.5;
    }
    while arg < n as f64 / 2.0 - 0.25 {
        gamma *= arg;
        arg += 1.0;
    }
    2.0 * float::pow(pi, n as f64 / 2.0) / gamma
}

/// Radial sectional curvature −φ″/φ.
pub fn radial_curvature(w: &WarpFn, r: f64) -> Result<f64, ConeError> {
    let (phi, _, ddphi) = w.eval(r)?;
    if phi <= 0.0 {
        return Err(ConeError::Warp(WarpError::Eval(crate::expr::EvalError::DivByZero { r })));
    }
    Ok(-ddphi / phi)
}

/// Vol(B_R) = link_volume · ∫₀^R φ^{n−1}.
pub fn ball_volume(c: &ConeSpec, radius: f64, tol: f64) -> Result<f64, ConeError> {
    let n = c.n;
    let w = c.warp.clone();
    let integrand = move |s: f64| {
        if s <= 0.0 {
            return 0.0;
        }
        match w.eval(s) {
            Ok((phi, _, _)) => float::powi(phi, n as i32 - 1),
            // Signal through a NaN; quad reports the offending abscissa.
            Err(_) => f64::NAN,
        }
    };
    let v = quad::integrate(integrand, 0.0, radius, tol)?;
    Ok(c.link_volume * v)
}

#[derive(Debug, Clone)]
pub struct DoublingRow {
    pub radius: f64,
    pub vol: f64,
    pub vol_doubled: f64,
    pub ratio: f64,
}

#[derive(Debug, Clone)]
pub enum DoublingVerdict {
    /// Ratios stay bounded; κ is the largest one observed.
    Bounded { kappa: f64 },
    /// Ratios grew past 10× their initial value over the sampled radii.
    Unbounded { growth: f64 },
}

#[derive(Debug, Clone)]
pub struct DoublingReport {
    pub rows: Vec<DoublingRow>,
    pub verdict: DoublingVerdict,
}

/// Growth factor past which the ratio sequence is called unbounded.
pub const DOUBLING_GROWTH_FACTOR: f64 = 10.0;

/// Vol(B_2R)/Vol(B_R) for each listed radius.
pub fn doubling_ratios(c: &ConeSpec, radii: &[f64], tol: f64) -> Result<DoublingReport, ConeError> {
    let mut rows = Vec::with_capacity(radii.len());
    for &radius in radii {
        let vol = ball_volume(c, radius, tol)?;
        let vol_doubled = ball_volume(c, 2.0 * radius, tol)?;
        rows.push(DoublingRow { radius, vol, vol_doubled, ratio: vol_doubled / vol });
    }
    let first = rows.first().map(|r| r.ratio).unwrap_or(1.0);
    let max = rows.iter().fold(f64::NEG_INFINITY, |m, r| m.max(r.ratio));
    let verdict = if max > DOUBLING_GROWTH_FACTOR * first {
        DoublingVerdict::Unbounded { growth: max / first }
    } else {
        DoublingVerdict::Bounded { kappa: max }
    };
    Ok(DoublingReport { rows, verdict })
}

/// Threshold on the running-integral slope (per unit r) that flags a
/// divergent total curvature.
pub const DIVERGENCE_SLOPE: f64 = 1e-3;

#[derive(Debug, Clone, Copy)]
pub struct TotalCurvature {
    /// 2π ∫₀^{r_max} |φ″| ds — the surface integral ∫|K| dA written out with
    /// dA = φ dr dθ, since |K|·φ = |φ″|.
    pub value: f64,
    /// Set when the running integral still grows linearly over the last
    /// decade of r (slope above [`DIVERGENCE_SLOPE`]).
    pub diverges: bool,
    /// The measured tail slope, for reporting.
    pub tail_slope: f64,
}

/// Total curvature of the 2-dimensional cone surface, with a divergence flag.
pub fn total_curvature_2d(w: &WarpFn, r_max: f64, tol: f64) -> Result<TotalCurvature, ConeError> {
    let wc = w.clone();
    let integrand = move |s: f64| {
        if s <= 0.0 {
            return 0.0;
        }
        match wc.eval(s) {
            Ok((_, _, ddphi)) => float::abs(ddphi),
            Err(_) => f64::NAN,
        }
    };
    let two_pi = 2.0 * core::f64::consts::PI;

    // Sample the running integral across the last decade for the slope test.
    let lo = r_max / 10.0;
    let mut nodes = Vec::with_capacity(33);
    for i in 0..33 {
        nodes.push(lo + (r_max - lo) * i as f64 / 32.0);
    }
    let head = quad::integrate(&integrand, 0.0, lo, tol)?;
    let tail = quad::cumulative(&integrand, &nodes, tol)?;
    let value = two_pi * (head + tail[tail.len() - 1]);

    // Least-squares slope of I(r) over the tail nodes.
    let m = nodes.len() as f64;
    let mean_r = nodes.iter().sum::<f64>() / m;
    let mean_i = tail.iter().sum::<f64>() / m;
    let mut num = 0.0;
    let mut den = 0.0;
    for (r, i) in nodes.iter().zip(tail.iter()) {
        num += (r - mean_r) * (two_pi * i - two_pi * mean_i);
        den += (r - mean_r) * (r - mean_r);
    }
    let tail_slope = num / den;
    Ok(TotalCurvature { value, diverges: tail_slope > DIVERGENCE_SLOPE, tail_slope })
}
