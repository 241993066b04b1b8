//! Embedded Runge–Kutta 5(4) integration (Dormand–Prince pair) with
//! proportional–integral step control.
//!
//! The driver steps a two-component system and lands exactly on a sorted
//! list of output nodes by clamping the step, so sampled values carry no
//! interpolation error. Radial mode integration uses it in logarithmic time
//! τ = log r, where the vertex startup is an equilibrium rather than a
//! stiff layer.

use alloc::format;
use alloc::string::String;

/// Two-component state.
pub type State = [f64; 2];

#[derive(Debug, Clone)]
pub struct OdeOptions {
    pub rtol: f64,
    pub atol: f64,
    /// Smallest admissible step; below it integration aborts.
    pub h_min: f64,
    pub max_steps: u64,
}

impl Default for OdeOptions {
    fn default() -> Self {
        OdeOptions { rtol: 1e-10, atol: 1e-12, h_min: 1e-12, max_steps: 50_000_000 }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum OdeError {
    /// Step control pushed the step below `h_min` at time `t`.
    StepUnderflow { t: f64 },
    MaxStepsExceeded { t: f64 },
    /// The right-hand side failed (domain error in a warp, usually).
    Rhs { t: f64, detail: String },
    /// A state invariant was violated; the integration is not trustworthy.
    InvariantViolated { t: f64, detail: String },
}

impl core::fmt::Display for OdeError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            OdeError::StepUnderflow { t } => write!(f, "step size underflow at t = {t}"),
            OdeError::MaxStepsExceeded { t } => write!(f, "step budget exceeded at t = {t}"),
            OdeError::Rhs { t, detail } => write!(f, "right-hand side failed at t = {t}: {detail}"),
            OdeError::InvariantViolated { t, detail } => {
                write!(f, "invariant violated at t = {t}: {detail}")
            }
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for OdeError {}

impl OdeError {
    pub fn detail(&self) -> String {
        format!("{self}")
    }
}

// Dormand–Prince 5(4) coefficients.
const C: [f64; 7] = [0.0, 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];
const A: [[f64; 6]; 6] = [
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0, 0.0, 0.0],
    [9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0, 0.0],
    [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0],
];
const B5: [f64; 7] =
    [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0, 0.0];
/// Fifth-order minus fourth-order weights: the embedded error estimate.
const E: [f64; 7] = [
    71.0 / 57600.0,
    0.0,
    -71.0 / 16695.0,
    71.0 / 1920.0,
    -17253.0 / 339200.0,
    22.0 / 525.0,
    -1.0 / 40.0,
];

// PI controller constants (order-5 error estimate).
const PI_ALPHA: f64 = 0.17;
const PI_BETA: f64 = 0.04;
const SAFETY: f64 = 0.9;
const FAC_MIN: f64 = 0.2;
const FAC_MAX: f64 = 5.0;

/// Integrate from `t0` through every node of the strictly increasing list
/// `nodes`, invoking `on_node(index, t, y)` as each is reached. `rhs` may
/// reject a state (domain errors); `guard` can veto a proposed accepted state
/// to enforce model invariants.
pub fn integrate_to_nodes<F, G>(
    mut rhs: F,
    t0: f64,
    y0: State,
    nodes: &[f64],
    opts: &OdeOptions,
    mut guard: G,
    mut on_node: impl FnMut(usize, f64, State),
) -> Result<(), OdeError>
where
    F: FnMut(f64, State) -> Result<State, OdeError>,
    G: FnMut(f64, State) -> Result<(), OdeError>,
{
    let mut t = t0;
    let mut y = y0;
    let mut k0 = rhs(t, y)?;
    let mut err_prev: f64 = 1.0;
    let mut steps: u64 = 0;

    let mut node_idx = 0;
    while node_idx < nodes.len() && nodes[node_idx] <= t0 {
        on_node(node_idx, t, y);
        node_idx += 1;
    }
    if node_idx >= nodes.len() {
        return Ok(());
    }

    // Initial step: conservative fraction of the total span.
    let span = nodes[nodes.len() - 1] - t0;
    let mut h = (span * 1e-4).max(opts.h_min * 10.0);

    while node_idx < nodes.len() {
        if steps >= opts.max_steps {
            return Err(OdeError::MaxStepsExceeded { t });
        }
        steps += 1;

        let target = nodes[node_idx];
        let mut hitting_node = false;
        if t + h >= target {
            h = target - t;
            hitting_node = true;
        }
        if h < opts.h_min && !hitting_node {
            // A micro-step that merely lands on a node is harmless; a
            // genuine controller underflow is not.
            return Err(OdeError::StepUnderflow { t });
        }

        // Stages.
        let mut k = [[0.0f64; 2]; 7];
        k[0] = k0;
        let mut failed = None;
        for s in 1..7 {
            let mut ys = y;
            for (j, kj) in k.iter().enumerate().take(s) {
                let a = A[s - 1][j];
                if a != 0.0 {
                    ys[0] += h * a * kj[0];
                    ys[1] += h * a * kj[1];
                }
            }
            match rhs(t + C[s] * h, ys) {
                Ok(v) => k[s] = v,
                Err(e) => {
                    failed = Some(e);
                    break;
                }
            }
        }
        if let Some(e) = failed {
            // A stage may have probed outside the domain; retry smaller.
            h *= 0.25;
            if h < opts.h_min {
                return Err(e);
            }
            continue;
        }

        let mut y5 = y;
        let mut err_vec = [0.0f64; 2];
        for s in 0..7 {
            y5[0] += h * B5[s] * k[s][0];
            y5[1] += h * B5[s] * k[s][1];
            err_vec[0] += h * E[s] * k[s][0];
            err_vec[1] += h * E[s] * k[s][1];
        }

        let mut err: f64 = 0.0;
        for i in 0..2 {
            let scale = opts.atol + opts.rtol * y[i].abs().max(y5[i].abs());
            err = err.max((err_vec[i] / scale).abs());
        }

        if err <= 1.0 {
            t += h;
            y = y5;
            guard(t, y)?;
            // FSAL: stage 7 is the derivative at the accepted point.
            k0 = k[6];
            if hitting_node {
                t = target; // clamp away accumulated roundoff
                on_node(node_idx, t, y);
                node_idx += 1;
            }
            let fac = SAFETY
                * libm::pow(err.max(1e-30), -PI_ALPHA)
                * libm::pow(err_prev.max(1e-30), PI_BETA);
            err_prev = err.max(1e-30);
            h *= fac.clamp(FAC_MIN, FAC_MAX);
        } else {
            let fac = (SAFETY * libm::pow(err, -PI_ALPHA)).clamp(FAC_MIN, 1.0);
            h *= fac;
            if h < opts.h_min {
                return Err(OdeError::StepUnderflow { t });
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(
        rhs: impl FnMut(f64, State) -> Result<State, OdeError>,
        t0: f64,
        y0: State,
        nodes: &[f64],
    ) -> alloc::vec::Vec<(f64, State)> {
        let mut out = alloc::vec::Vec::new();
        integrate_to_nodes(rhs, t0, y0, nodes, &OdeOptions::default(), |_, _| Ok(()), |_, t, y| {
            out.push((t, y))
        })
        .unwrap();
        out
    }

    #[test]
    fn exponential_decay_and_growth() {
        // y0′ = y0, y1′ = −2 y1
        let nodes = [0.5, 1.0, 2.0, 3.0];
        let out = run(|_, y| Ok([y[0], -2.0 * y[1]]), 0.0, [1.0, 1.0], &nodes);
        for (t, y) in out {
            assert!((y[0] - t.exp()).abs() < 1e-9 * t.exp(), "t={t}");
            assert!((y[1] - (-2.0 * t).exp()).abs() < 1e-9, "t={t}");
        }
    }

    #[test]
    fn harmonic_oscillator_tracks_cosine() {
        let nodes: alloc::vec::Vec<f64> = (1..=100).map(|i| i as f64 * 0.2).collect();
        let out = run(|_, y| Ok([y[1], -y[0]]), 0.0, [1.0, 0.0], &nodes);
        for (t, y) in out {
            assert!((y[0] - t.cos()).abs() < 1e-8, "t={t}: {} vs {}", y[0], t.cos());
        }
    }

    #[test]
    fn nodes_are_hit_exactly() {
        let nodes = [0.1, 0.4, 1.7, 2.9];
        let out = run(|_, y| Ok([y[1], -y[0]]), 0.0, [1.0, 0.0], &nodes);
        let ts: alloc::vec::Vec<f64> = out.iter().map(|(t, _)| *t).collect();
        assert_eq!(ts, nodes);
    }

    #[test]
    fn guard_violation_aborts() {
        let res = integrate_to_nodes(
            |_, y| Ok([-y[0], 0.0]),
            0.0,
            [1.0, 0.0],
            &[5.0],
            &OdeOptions::default(),
            |t, y| {
                if y[0] < 0.5 {
                    Err(OdeError::InvariantViolated { t, detail: "y too small".into() })
                } else {
                    Ok(())
                }
            },
            |_, _, _| {},
        );
        assert!(matches!(res, Err(OdeError::InvariantViolated { .. })));
    }

    #[test]
    fn rhs_domain_error_surfaces_after_retries() {
        // RHS fails beyond t = 1: the integrator cannot cross it.
        let res = integrate_to_nodes(
            |t, _| {
                if t > 1.0 {
                    Err(OdeError::Rhs { t, detail: "domain".into() })
                } else {
                    Ok([1.0, 0.0])
                }
            },
            0.0,
            [0.0, 0.0],
            &[2.0],
            &OdeOptions::default(),
            |_, _| Ok(()),
            |_, _, _| {},
        );
        assert!(matches!(res, Err(OdeError::Rhs { .. })));
    }
}
