//! Transcendental f64 math routed through `libm`.
//!
//! The inherent `f64` methods (`exp`, `ln`, …) live in `std`, not `core`, so
//! a `no_std` build has no access to them. Routing every call through this
//! module keeps the crate portable and makes results bit-identical across
//! platforms, which the deterministic report format relies on.

#[inline]
pub fn exp(x: f64) -> f64 {
    libm::exp(x)
}

#[inline]
pub fn ln(x: f64) -> f64 {
    libm::log(x)
}

#[inline]
pub fn log10(x: f64) -> f64 {
    libm::log10(x)
}

#[inline]
pub fn sqrt(x: f64) -> f64 {
    libm::sqrt(x)
}

#[inline]
pub fn sin(x: f64) -> f64 {
    libm::sin(x)
}

#[inline]
pub fn cos(x: f64) -> f64 {
    libm::cos(x)
}

#[inline]
pub fn sinh(x: f64) -> f64 {
    libm::sinh(x)
}

#[inline]
pub fn cosh(x: f64) -> f64 {
    libm::cosh(x)
}

#[inline]
pub fn tanh(x: f64) -> f64 {
    libm::tanh(x)
}

#[inline]
pub fn pow(x: f64, y: f64) -> f64 {
    libm::pow(x, y)
}

#[inline]
pub fn abs(x: f64) -> f64 {
    libm::fabs(x)
}

#[inline]
pub fn floor(x: f64) -> f64 {
    libm::floor(x)
}

#[inline]
pub fn ceil(x: f64) -> f64 {
    libm::ceil(x)
}

#[inline]
pub fn round(x: f64) -> f64 {
    libm::round(x)
}

/// Integer power by repeated squaring. More accurate than `pow(x, n as f64)`
/// for the small exponents (φ^{n−1} with n ≤ ~20) used throughout.
pub fn powi(x: f64, n: i32) -> f64 {
    if n == 0 {
        return 1.0;
    }
    let mut base = if n < 0 { 1.0 / x } else { x };
    let mut k = n.unsigned_abs();
    let mut acc = 1.0;
    while k > 0 {
        if k & 1 == 1 {
            acc *= base;
        }
        base *= base;
        k >>= 1;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn powi_matches_std() {
        for &x in &[0.3f64, 1.0, 2.5, 17.0] {
            for n in -6..=9 {
                let want = x.powi(n);
                let got = powi(x, n);
                assert!(
                    (got - want).abs() <= 1e-13 * want.abs(),
                    "x={x} n={n}: {got} vs {want}"
                );
            }
        }
    }

    #[test]
    fn libm_agrees_with_std_at_test_points() {
        for &x in &[0.1f64, 0.5, 1.0, 2.0, 10.0] {
            assert!((exp(x) - x.exp()).abs() <= 1e-12 * x.exp());
            assert!((ln(x) - x.ln()).abs() <= 1e-14);
            assert!((sin(x) - x.sin()).abs() <= 1e-15);
        }
    }
}
