//! Smooth cutoff machinery: the exponential bump profile and a quintic
//! smoothstep.
//!
//! Everything here is built from S(t) = exp(−1/t) for t > 0 (zero otherwise),
//! glued as S(t)/(S(t) + S(1−t)). The bump profile is 1 on [−inner, inner]
//! around its center, 0 outside ±outer, strictly monotone on the shoulders,
//! symmetric, and takes the value 1/2 at the shoulder midpoints. First and
//! second derivatives are analytic, which matters because φ″ feeds curvature:
//! finite differences of these shoulders are badly conditioned.

use crate::float;

/// S(t) = exp(−1/t) for t > 0, else 0, with derivatives
/// S′ = S/t², S″ = S(1−2t)/t⁴.
fn s0(t: f64) -> f64 {
    if t <= 1e-6 {
        // exp(−1/t) underflows to 0 long before t reaches 1e−6; the guard
        // only avoids inf/0 artifacts from 1/t at denormal t.
        0.0
    } else {
        float::exp(-1.0 / t)
    }
}

fn s1(t: f64) -> f64 {
    if t <= 1e-6 {
        0.0
    } else {
        float::exp(-1.0 / t) / (t * t)
    }
}

fn s2(t: f64) -> f64 {
    if t <= 1e-6 {
        0.0
    } else {
        float::exp(-1.0 / t) * (1.0 - 2.0 * t) / (t * t * t * t)
    }
}

/// Bump profile value together with its first two derivatives in x.
///
/// Requires 0 < inner < outer. The profile is a function of d = |x − center|:
/// identically 1 for d ≤ inner, identically 0 for d ≥ outer, and the standard
/// two-sided exponential glue on the shoulder.
pub fn profile_parts(x: f64, center: f64, inner: f64, outer: f64) -> (f64, f64, f64) {
    debug_assert!(inner > 0.0 && outer > inner);
    let d = x - center;
    let a = float::abs(d);
    if a <= inner {
        return (1.0, 0.0, 0.0);
    }
    if a >= outer {
        return (0.0, 0.0, 0.0);
    }
    let w = outer - inner;
    let t_out = (outer - a) / w; // > 0, vanishes at the outer edge
    let t_in = (a - inner) / w; // > 0, vanishes at the inner edge

    let pa = s0(t_out);
    let pb = s0(t_in);
    // d/da chain: t_out′ = −1/w, t_in′ = 1/w
    let pa1 = -s1(t_out) / w;
    let pb1 = s1(t_in) / w;
    let pa2 = s2(t_out) / (w * w);
    let pb2 = s2(t_in) / (w * w);

    let den = pa + pb;
    let val = pa / den;
    let num1 = pa1 * pb - pa * pb1;
    let d1_a = num1 / (den * den);
    let num1p = pa2 * pb - pa * pb2; // cross terms cancel
    let d2_a = num1p / (den * den) - 2.0 * num1 * (pa1 + pb1) / (den * den * den);

    let sign = if d < 0.0 { -1.0 } else { 1.0 };
    (val, d1_a * sign, d2_a)
}

/// The standard unit bump: 1 on [−1, 1], supported in [−2, 2], value 1/2 at
/// x = ±3/2.
pub fn unit_bump_parts(x: f64) -> (f64, f64, f64) {
    profile_parts(x, 0.0, 1.0, 2.0)
}

/// Quintic smoothstep P(t) = 6t⁵ − 15t⁴ + 10t³ clamped to [0, 1], with first
/// and second derivatives. C² at both ends (P′ = P″ = 0 there), monotone,
/// and its antiderivative is the closed-form polynomial [`smoothstep_integral`],
/// which is what makes it preferable to the exponential glue when a warp
/// needs ∫P.
pub fn smoothstep_parts(t: f64) -> (f64, f64, f64) {
    if t <= 0.0 {
        return (0.0, 0.0, 0.0);
    }
    if t >= 1.0 {
        return (1.0, 0.0, 0.0);
    }
    let t2 = t * t;
    let t3 = t2 * t;
    let p = ((6.0 * t - 15.0) * t + 10.0) * t3;
    let p1 = 30.0 * t2 * (t - 1.0) * (t - 1.0);
    let p2 = 60.0 * t * (2.0 * t - 1.0) * (t - 1.0);
    (p, p1, p2)
}

/// Q(t) = ∫₀^t P, with Q(t) = t⁶ − 3t⁵ + 5t⁴/2 on [0, 1], Q(1) = 1/2.
pub fn smoothstep_integral(t: f64) -> f64 {
    if t <= 0.0 {
        return 0.0;
    }
    if t >= 1.0 {
        return 0.5 + (t - 1.0);
    }
    let t2 = t * t;
    let t4 = t2 * t2;
    ((t - 3.0) * t + 2.5) * t4
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_bump_plateau_support_and_midpoint() {
        assert_eq!(unit_bump_parts(0.0).0, 1.0);
        assert_eq!(unit_bump_parts(0.999).0, 1.0);
        assert_eq!(unit_bump_parts(2.0).0, 0.0);
        assert_eq!(unit_bump_parts(2.5).0, 0.0);
        let (half, _, _) = unit_bump_parts(1.5);
        assert!((half - 0.5).abs() < 1e-15);
        let (half_neg, _, _) = unit_bump_parts(-1.5);
        assert!((half_neg - 0.5).abs() < 1e-15);
    }

    #[test]
    fn unit_bump_symmetry_and_monotone_shoulders() {
        let mut prev = 1.0;
        for i in 0..=200 {
            let x = 1.0 + i as f64 / 200.0;
            let (v, d1, _) = unit_bump_parts(x);
            let (vm, d1m, _) = unit_bump_parts(-x);
            assert!((v - vm).abs() < 1e-15);
            assert!((d1 + d1m).abs() < 1e-15);
            assert!(v <= prev + 1e-15, "not decreasing at {x}");
            assert!(d1 <= 1e-15);
            prev = v;
        }
    }

    #[test]
    fn bump_derivatives_match_finite_differences() {
        let h = 1e-6;
        for i in 0..400 {
            let x = -2.2 + i as f64 * 0.011;
            let (_, d1, d2) = unit_bump_parts(x);
            let vp = unit_bump_parts(x + h).0;
            let vm = unit_bump_parts(x - h).0;
            let v0 = unit_bump_parts(x).0;
            let fd1 = (vp - vm) / (2.0 * h);
            let fd2 = (vp - 2.0 * v0 + vm) / (h * h);
            assert!((d1 - fd1).abs() < 5e-6 * (1.0 + d1.abs()), "d1 at {x}: {d1} vs {fd1}");
            assert!((d2 - fd2).abs() < 5e-3 * (1.0 + d2.abs()), "d2 at {x}: {d2} vs {fd2}");
        }
    }

    #[test]
    fn smoothstep_endpoints_and_integral() {
        assert_eq!(smoothstep_parts(0.0), (0.0, 0.0, 0.0));
        assert_eq!(smoothstep_parts(1.0), (1.0, 0.0, 0.0));
        let (p, _, _) = smoothstep_parts(0.5);
        assert!((p - 0.5).abs() < 1e-15);
        assert!((smoothstep_integral(1.0) - 0.5).abs() < 1e-15);
        // Q′ = P at interior points
        let h = 1e-6;
        for &t in &[0.2, 0.5, 0.8] {
            let dq = (smoothstep_integral(t + h) - smoothstep_integral(t - h)) / (2.0 * h);
            assert!((dq - smoothstep_parts(t).0).abs() < 1e-9);
        }
    }
}
