//! Gauss–Legendre rules on dyadic panels clustered at `t = 1`.
//!
//! Panels are laid out in the coordinate `δ = 1 − t`: panel `j` covers
//! `δ ∈ (2^{−j−1}, 2^{−j}]`, so nodes keep full relative precision even when
//! they sit within `1e−200` of the endpoint.

use std::sync::OnceLock;

/// Default number of nodes per panel.
pub const DEFAULT_ORDER: usize = 24;

/// Gauss–Legendre nodes and weights on `[-1, 1]`.
#[derive(Clone, Debug)]
pub struct GaussLegendre {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl GaussLegendre {
    /// Builds the `n`-point rule by Newton iteration on `P_n`.
    pub fn new(n: usize) -> Self {
        assert!(n >= 1, "Gauss-Legendre order must be positive");
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let nf = n as f64;
        for i in 0..n.div_ceil(2) {
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre_with_derivative(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre_with_derivative(n, x);
            dp = if d != 0.0 { d } else { dp };
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        if n % 2 == 1 {
            nodes[n / 2] = 0.0;
        }
        GaussLegendre { nodes, weights }
    }

    /// Shared rule of [`DEFAULT_ORDER`] nodes.
    pub fn default_rule() -> &'static GaussLegendre {
        static RULE: OnceLock<GaussLegendre> = OnceLock::new();
        RULE.get_or_init(|| GaussLegendre::new(DEFAULT_ORDER))
    }

    /// Nodes and weights mapped to `[a, b]`.
    pub fn mapped(&self, a: f64, b: f64) -> impl Iterator<Item = (f64, f64)> + '_ {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(move |(&x, &w)| (mid + half * x, half * w))
    }

    pub fn integrate(&self, a: f64, b: f64, f: impl Fn(f64) -> f64) -> f64 {
        self.mapped(a, b).map(|(x, w)| w * f(x)).sum()
    }
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let nf = n as f64;
    let d = nf * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// One panel `δ ∈ (lo, hi]` in the endpoint coordinate `δ = 1 − t`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Panel {
    pub delta_lo: f64,
    pub delta_hi: f64,
}

/// Deepest dyadic level; beyond this `2^{−j}` leaves the normal range.
pub const MAX_DEPTH: usize = 1000;

/// Dyadic panel `j`, clipped to the window `δ ∈ (clip_lo, clip_hi]`.
pub fn dyadic_panel(j: usize, clip_lo: f64, clip_hi: f64) -> Option<Panel> {
    let hi = if j == 0 { 1.0 } else { 0.5f64.powi(j as i32) };
    let lo = 0.5 * hi;
    let hi = hi.min(clip_hi);
    let lo = lo.max(clip_lo);
    (hi > lo).then_some(Panel {
        delta_lo: lo,
        delta_hi: hi,
    })
}

/// Integrates `g(δ)` over `δ ∈ (clip_lo, clip_hi]` on dyadic panels.
///
/// Panels are visited from `δ = 1` toward `δ = 0`. The walk stops after
/// `min_depth` once a panel contributes less than `rel_tol` of the running
/// sum, or when the window is exhausted. The returned flag is `true` when
/// the stop was caused by [`MAX_DEPTH`] instead of convergence.
pub fn integrate_dyadic(
    rule: &GaussLegendre,
    clip_lo: f64,
    clip_hi: f64,
    min_depth: usize,
    rel_tol: f64,
    g: impl Fn(f64) -> f64,
) -> (f64, bool) {
    let mut total = crate::logvalue::CompensatedSum::new();
    for j in 0..=MAX_DEPTH {
        let hi = if j == 0 { 1.0 } else { 0.5f64.powi(j as i32) };
        if hi <= clip_lo {
            return (total.value(), false);
        }
        let Some(panel) = dyadic_panel(j, clip_lo, clip_hi) else {
            continue;
        };
        let part = rule.integrate(panel.delta_lo, panel.delta_hi, &g);
        total.add(part);
        if j >= min_depth && part.abs() <= rel_tol * total.value().abs() {
            return (total.value(), false);
        }
    }
    (total.value(), true)
}

/// Depth needed before a monomial `t^λ` has passed its mass peak.
pub fn peak_depth(max_exponent: f64) -> usize {
    if max_exponent <= 1.0 {
        8
    } else {
        (max_exponent.log2().ceil() as usize) + 8
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rule_integrates_polynomials_exactly() {
        let rule = GaussLegendre::new(10);
        // exact for degree <= 19
        let v = rule.integrate(0.0, 1.0, |x| x.powi(19));
        assert!((v - 1.0 / 20.0).abs() < 1e-15);
        let wsum: f64 = rule.weights.iter().sum();
        assert!((wsum - 2.0).abs() < 1e-14);
    }

    #[test]
    fn odd_order_has_center_node() {
        let rule = GaussLegendre::new(5);
        assert_eq!(rule.nodes[2], 0.0);
        assert!((rule.weights[2] - 128.0 / 225.0).abs() < 1e-15);
    }

    #[test]
    fn dyadic_walk_captures_spike_at_one() {
        // ∫_0^1 t^λ dt = 1/(λ+1) with λ = 1e6
        let lam = 1e6;
        let (v, capped) = integrate_dyadic(
            GaussLegendre::default_rule(),
            0.0,
            1.0,
            peak_depth(lam),
            1e-14,
            |d: f64| (lam * (-d).ln_1p()).exp(),
        );
        assert!(!capped);
        assert!(((v * (lam + 1.0)) - 1.0).abs() < 1e-11, "{v}");
    }

    #[test]
    fn clipping_restricts_domain() {
        // ∫ over t in [0.5, 1) of 1 dt
        let (v, _) = integrate_dyadic(GaussLegendre::default_rule(), 0.0, 0.5, 8, 1e-16, |_| 1.0);
        assert!((v - 0.5).abs() < 1e-15);
    }
}
