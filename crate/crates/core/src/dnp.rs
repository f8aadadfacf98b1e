//! The mixed-moment sequence
//!
//! ```text
//! D_n(p)^p = ∫ w_n^{−1/p} t^{λ_n} ( Σ_k w_k^{−1/p} t^{λ_k} )^{p−1} dμ
//! ```
//!
//! and the operator bounds it yields for `T_μ : ℓ^p(w) → L^p(μ)`,
//! `b ↦ Σ b_n t^{λ_n}`.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{invalid, Result};
use crate::logvalue::{LogSum, LogValue};
use crate::measures::{Measure, Node};
use crate::quadrature;
use crate::sequences::ExponentSequence;

/// Minimal number of inner-series terms past the diagonal before a cutoff.
pub const CUTOFF_FLOOR: usize = 5;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum WeightKind {
    /// `w_n = 1/λ_n`.
    InverseLambda,
    /// `ω_n = 1/(p λ_n + 1)`.
    Classical,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct WeightScheme {
    pub kind: WeightKind,
    pub p: f64,
}

impl WeightScheme {
    pub fn new(kind: WeightKind, p: f64) -> Result<Self> {
        if !(p >= 1.0 && p.is_finite()) {
            return invalid(format!("p must be >= 1, got {p}"));
        }
        Ok(WeightScheme { kind, p })
    }

    pub fn inverse_lambda(p: f64) -> Result<Self> {
        Self::new(WeightKind::InverseLambda, p)
    }

    pub fn classical(p: f64) -> Result<Self> {
        Self::new(WeightKind::Classical, p)
    }

    /// `w(λ)`.
    pub fn weight(&self, lambda: f64) -> f64 {
        match self.kind {
            WeightKind::InverseLambda => 1.0 / lambda,
            WeightKind::Classical => 1.0 / (self.p * lambda + 1.0),
        }
    }

    /// `w(λ)^{−1/p}` in the log domain.
    pub fn inv_root(&self, lambda: f64) -> LogValue {
        let inv = match self.kind {
            WeightKind::InverseLambda => lambda,
            WeightKind::Classical => self.p * lambda + 1.0,
        };
        LogValue::from_f64(inv).powf(1.0 / self.p)
    }

    fn validate(&self, seq: &ExponentSequence) -> Result<()> {
        if self.kind == WeightKind::InverseLambda && seq.get(0) <= 0.0 {
            return invalid("the weight 1/lambda needs lambda_0 > 0");
        }
        Ok(())
    }
}

/// How the profile was evaluated.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Route {
    /// `p = 1`: a single moment.
    SingleMoment,
    /// `p = 2` with exact moments: the double series of Gram entries.
    DoubleSeries,
    /// Inner series evaluated at every atom or quadrature node.
    NodeSeries,
}

/// Where the inner series was cut and whether the cut was safe.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct Truncation {
    /// Index of the last inner-series term included.
    pub cutoff: usize,
    /// First omitted term (or the last included one when the prefix ran out).
    pub tail_estimate: f64,
    /// False when the prefix ended before the terms fell below `tol · sum`.
    pub safe: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct DnProfile {
    pub values: Vec<f64>,
    pub lambdas: Vec<f64>,
    pub weight: WeightScheme,
    pub route: Route,
    pub truncation: Vec<Truncation>,
}

impl DnProfile {
    pub fn p(&self) -> f64 {
        self.weight.p
    }

    pub fn sup(&self) -> f64 {
        self.values.iter().copied().fold(0.0, f64::max)
    }

    pub fn all_safe(&self) -> bool {
        self.truncation.iter().all(|t| t.safe)
    }

    /// Table `n, lambda_n, D_n, cutoff_K, tail_flag`.
    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["n", "lambda_n", "D_n", "cutoff_K", "tail_flag"])
            .map_err(csv_err)?;
        for (n, ((d, lam), tr)) in self
            .values
            .iter()
            .zip(&self.lambdas)
            .zip(&self.truncation)
            .enumerate()
        {
            w.write_record([
                n.to_string(),
                format!("{lam:e}"),
                format!("{d:e}"),
                tr.cutoff.to_string(),
                if tr.safe { "ok" } else { "unsafe" }.to_string(),
            ])
            .map_err(csv_err)?;
        }
        String::from_utf8(
            w.into_inner()
                .map_err(|e| crate::Error::Parse(e.to_string()))?,
        )
        .map_err(|e| crate::Error::Parse(e.to_string()))
    }
}

pub(crate) fn csv_err(e: csv::Error) -> crate::Error {
    crate::Error::Parse(format!("csv: {e}"))
}

/// Computes `D_0(p), …, D_{n_count−1}(p)`; the inner series runs over the
/// whole of `seq`.
pub fn compute_dn(
    seq: &ExponentSequence,
    mu: &Measure,
    weight: WeightScheme,
    n_count: usize,
    tol: f64,
) -> Result<DnProfile> {
    if n_count == 0 || n_count > seq.len() {
        return invalid(format!(
            "n_count must be in 1..={}, got {n_count}",
            seq.len()
        ));
    }
    if !(tol > 0.0) {
        return invalid(format!("tolerance must be positive, got {tol}"));
    }
    weight.validate(seq)?;
    let p = weight.p;
    let lambdas = seq.as_slice();
    let exact_moments = mu.is_atomic() || mu.is_lebesgue();

    let (route, rows): (Route, Vec<(f64, Truncation)>) = if p == 1.0 {
        let rows = (0..n_count)
            .into_par_iter()
            .map(|n| {
                let lam = lambdas[n];
                let v = weight.inv_root(lam) * mu.moment(lam)?;
                Ok((
                    v.to_f64(),
                    Truncation {
                        cutoff: n,
                        tail_estimate: 0.0,
                        safe: true,
                    },
                ))
            })
            .collect::<Result<Vec<_>>>()?;
        (Route::SingleMoment, rows)
    } else if p == 2.0 && exact_moments {
        let rows = (0..n_count)
            .into_par_iter()
            .map(|n| double_series_row(lambdas, mu, &weight, n, tol))
            .collect::<Result<Vec<_>>>()?;
        (Route::DoubleSeries, rows)
    } else {
        (
            Route::NodeSeries,
            node_series(lambdas, mu, &weight, n_count, tol),
        )
    };

    let (values, truncation) = rows.into_iter().unzip();
    Ok(DnProfile {
        values,
        lambdas: lambdas[..n_count].to_vec(),
        weight,
        route,
        truncation,
    })
}

/// Decreasing-term cutoff shared by both series routes.
///
/// Returns the number of terms consumed and the truncation record. `floor`
/// is the first index at which a stop is allowed.
fn truncated_series(
    len: usize,
    floor: usize,
    tol: f64,
    mut term: impl FnMut(usize) -> Result<LogValue>,
) -> Result<(LogValue, Truncation)> {
    let mut sum = LogSum::new();
    let mut prev = term(0)?;
    sum.add(prev);
    for k in 0..len {
        if k + 1 == len {
            let total = sum.value();
            let safe = total.is_zero() || prev.ln() < tol.ln() + total.ln();
            return Ok((
                total,
                Truncation {
                    cutoff: k,
                    tail_estimate: prev.to_f64(),
                    safe,
                },
            ));
        }
        let next = term(k + 1)?;
        let total = sum.value();
        if k >= floor && next.ln() < tol.ln() + total.ln() && next < prev {
            return Ok((
                total,
                Truncation {
                    cutoff: k,
                    tail_estimate: next.to_f64(),
                    safe: true,
                },
            ));
        }
        sum.add(next);
        prev = next;
    }
    unreachable!("loop returns on its last iteration")
}

fn double_series_row(
    lambdas: &[f64],
    mu: &Measure,
    weight: &WeightScheme,
    n: usize,
    tol: f64,
) -> Result<(f64, Truncation)> {
    let ln = lambdas[n];
    let wn = weight.inv_root(ln);
    let (sq, tr) = truncated_series(lambdas.len(), n + CUTOFF_FLOOR, tol, |k| {
        let lk = lambdas[k];
        Ok(wn * weight.inv_root(lk) * mu.moment(ln + lk)?)
    })?;
    Ok((sq.sqrt().to_f64(), tr))
}

/// Inner series `S(t) = Σ_k w_k^{−1/p} t^{λ_k}` at one node.
pub fn inner_series(
    lambdas: &[f64],
    weight: &WeightScheme,
    node: &Node,
    tol: f64,
) -> (LogValue, Truncation) {
    truncated_series(lambdas.len(), CUTOFF_FLOOR, tol, |k| {
        Ok(weight.inv_root(lambdas[k]) * node.power(lambdas[k]))
    })
    .expect("node powers never fail")
}

fn node_series(
    lambdas: &[f64],
    mu: &Measure,
    weight: &WeightScheme,
    n_count: usize,
    tol: f64,
) -> Vec<(f64, Truncation)> {
    let p = weight.p;
    let depth = quadrature::peak_depth(*lambdas.last().unwrap()) + 45;
    let nodes = mu.nodes(depth);
    let series: Vec<(LogValue, Truncation)> = nodes
        .par_iter()
        .map(|node| inner_series(lambdas, weight, node, tol))
        .collect();
    (0..n_count)
        .into_par_iter()
        .map(|n| {
            let wn = weight.inv_root(lambdas[n]);
            let contributions: Vec<LogValue> = nodes
                .iter()
                .zip(&series)
                .map(|(node, (s, _))| node.weight * wn * node.power(lambdas[n]) * s.powf(p - 1.0))
                .collect();
            let total: LogSum = contributions.iter().copied().collect();
            let total = total.value();
            let mut cutoff = 0;
            let mut safe = true;
            let mut tail: f64 = 0.0;
            for (c, (_, tr)) in contributions.iter().zip(&series) {
                if c.ln() >= tol.ln() + total.ln() {
                    cutoff = cutoff.max(tr.cutoff);
                    tail = tail.max(tr.tail_estimate);
                    safe &= tr.safe;
                }
            }
            (
                total.powf(1.0 / p).to_f64(),
                Truncation {
                    cutoff,
                    tail_estimate: tail,
                    safe,
                },
            )
        })
        .collect()
}

/// Sorted nonincreasing copy.
pub fn decreasing_rearrangement(values: &[f64]) -> Vec<f64> {
    let mut v = values.to_vec();
    v.sort_by(|a, b| b.total_cmp(a));
    v
}

#[derive(Clone, Debug, Serialize)]
pub struct BoundOptions {
    /// Fraction of trailing indices used for the limsup estimate.
    pub window_fraction: f64,
    /// Schatten exponents (used only when `p = 2`).
    pub schatten_r: Vec<f64>,
}

impl Default for BoundOptions {
    fn default() -> Self {
        BoundOptions {
            window_fraction: 0.25,
            schatten_r: vec![1.0, 2.0, 4.0],
        }
    }
}

/// Upper bounds on `T_μ` implied by a profile.
#[derive(Clone, Debug, Serialize)]
pub struct DerivedBounds {
    /// `‖T_μ‖ ≤ sup_n D_n(p)`.
    pub sup_dn: f64,
    /// Trailing-window maximum; an estimate of `limsup D_n(p)` and hence of
    /// the essential norm bound.
    pub limsup_estimate: f64,
    pub window_len: usize,
    /// `rearranged[k]` bounds `a_{k+1}(T_μ)` on the prefix.
    pub rearranged: Vec<f64>,
    /// `Σ_n w_n^{−1/p} ‖t^{λ_n}‖_{L^p(μ)}`.
    pub nuclear_bound: f64,
    /// `(r, (Σ D_n(2)^r)^{1/r})`, empty unless `p = 2`.
    pub schatten_bounds: Vec<(f64, f64)>,
}

pub fn operator_bounds(
    profile: &DnProfile,
    mu: &Measure,
    opts: &BoundOptions,
) -> Result<DerivedBounds> {
    let n = profile.values.len();
    let window_len = ((n as f64 * opts.window_fraction).ceil() as usize).clamp(1, n);
    let limsup_estimate = profile.values[n - window_len..]
        .iter()
        .copied()
        .fold(0.0, f64::max);
    let p = profile.p();
    let mut nuclear = LogSum::new();
    for &lam in &profile.lambdas {
        nuclear.add(profile.weight.inv_root(lam) * mu.moment(p * lam)?.powf(1.0 / p));
    }
    let schatten_bounds = if p == 2.0 {
        opts.schatten_r
            .iter()
            .map(|&r| (r, lr_norm(&profile.values, r)))
            .collect()
    } else {
        Vec::new()
    };
    Ok(DerivedBounds {
        sup_dn: profile.sup(),
        limsup_estimate,
        window_len,
        rearranged: decreasing_rearrangement(&profile.values),
        nuclear_bound: nuclear.value().to_f64(),
        schatten_bounds,
    })
}

/// `(Σ |x|^r)^{1/r}`, scaled to avoid overflow.
pub fn lr_norm(values: &[f64], r: f64) -> f64 {
    let m = values.iter().fold(0.0f64, |a, v| a.max(v.abs()));
    if m == 0.0 {
        return 0.0;
    }
    let s: crate::logvalue::CompensatedSum = values.iter().map(|v| (v.abs() / m).powf(r)).collect();
    m * s.value().powf(1.0 / r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measures::Density;
    use crate::sequences::generate_geometric;

    fn pow2(n: usize) -> ExponentSequence {
        generate_geometric(1.0, 2.0, n).unwrap()
    }

    fn half_atom() -> Measure {
        Measure::atoms_at(&[(0.5, 1.0)]).unwrap()
    }

    #[test]
    fn single_atom_p1() {
        let prof = compute_dn(
            &pow2(10),
            &half_atom(),
            WeightScheme::inverse_lambda(1.0).unwrap(),
            5,
            1e-15,
        )
        .unwrap();
        assert_eq!(prof.route, Route::SingleMoment);
        assert!((prof.values[2] - 0.25).abs() < 1e-15);
    }

    #[test]
    fn single_atom_p2_matches_direct_series() {
        // oracle: Σ_k sqrt(2^k) 2^{-(1+2^k)} summed directly
        let oracle: f64 = (0..12)
            .map(|k| 2f64.powf(k as f64 / 2.0) * 0.5f64.powf(1.0 + 2f64.powi(k)))
            .sum();
        let prof = compute_dn(
            &pow2(20),
            &half_atom(),
            WeightScheme::inverse_lambda(2.0).unwrap(),
            4,
            1e-16,
        )
        .unwrap();
        assert_eq!(prof.route, Route::DoubleSeries);
        assert!((prof.values[0].powi(2) - oracle).abs() < 1e-15);
        assert!((prof.values[0] - 0.70344).abs() < 2e-5);
        assert!(prof.all_safe());
    }

    #[test]
    fn lebesgue_p1_constant_exponent() {
        let seq = ExponentSequence::new(vec![4.0]).unwrap();
        let prof = compute_dn(
            &seq,
            &Measure::lebesgue(),
            WeightScheme::inverse_lambda(1.0).unwrap(),
            1,
            1e-12,
        )
        .unwrap();
        assert!((prof.values[0] - 0.8).abs() < 1e-15);
    }

    #[test]
    fn routes_agree_at_p2_on_atoms() {
        let mu = Measure::atoms_at(&[(0.3, 0.7), (0.8, 0.2), (0.97, 0.05)]).unwrap();
        let seq = pow2(24);
        let w = WeightScheme::inverse_lambda(2.0).unwrap();
        let b = compute_dn(&seq, &mu, w, 12, 1e-16).unwrap();
        let c = node_series(seq.as_slice(), &mu, &w, 12, 1e-16);
        for (x, (y, _)) in b.values.iter().zip(&c) {
            assert!((x * x - y * y).abs() <= 1e-10 * x * x, "{x} vs {y}");
        }
    }

    #[test]
    fn truncation_flags_short_prefix() {
        // atom extremely close to 1: the inner series has not decayed within 6 terms
        let mu = Measure::atoms(vec![crate::Atom::new(1e-9, 1.0).unwrap()]).unwrap();
        let prof = compute_dn(
            &pow2(6),
            &mu,
            WeightScheme::inverse_lambda(2.0).unwrap(),
            3,
            1e-12,
        )
        .unwrap();
        assert!(!prof.all_safe());
    }

    #[test]
    fn cutoff_respects_floor() {
        let prof = compute_dn(
            &pow2(30),
            &half_atom(),
            WeightScheme::inverse_lambda(2.0).unwrap(),
            3,
            1e-3,
        )
        .unwrap();
        for (n, tr) in prof.truncation.iter().enumerate() {
            assert!(tr.cutoff >= n + CUTOFF_FLOOR);
            assert!(tr.safe);
        }
    }

    #[test]
    fn density_uses_node_series() {
        let mu = Measure::density(Density::jacobi(0.0, 2.0).unwrap());
        let prof = compute_dn(
            &pow2(12),
            &mu,
            WeightScheme::inverse_lambda(1.5).unwrap(),
            4,
            1e-12,
        )
        .unwrap();
        assert_eq!(prof.route, Route::NodeSeries);
        assert!(prof.values.iter().all(|v| v.is_finite() && *v > 0.0));
    }

    #[test]
    fn rearrangement_examples() {
        assert_eq!(
            decreasing_rearrangement(&[0.2, 0.5, 0.1]),
            vec![0.5, 0.2, 0.1]
        );
        assert_eq!(decreasing_rearrangement(&[1.0, 1.0, 1.0]), vec![1.0; 3]);
        assert!(decreasing_rearrangement(&[]).is_empty());
    }

    #[test]
    fn bounds_from_profile() {
        let prof = DnProfile {
            values: vec![0.5, 0.5, 0.25],
            lambdas: vec![1.0, 2.0, 4.0],
            weight: WeightScheme::inverse_lambda(2.0).unwrap(),
            route: Route::DoubleSeries,
            truncation: vec![
                Truncation {
                    cutoff: 0,
                    tail_estimate: 0.0,
                    safe: true
                };
                3
            ],
        };
        let b = operator_bounds(&prof, &half_atom(), &BoundOptions::default()).unwrap();
        assert_eq!(b.sup_dn, 0.5);
        assert_eq!(b.rearranged, vec![0.5, 0.5, 0.25]);
        let l2 = b.schatten_bounds.iter().find(|(r, _)| *r == 2.0).unwrap().1;
        assert!((l2 - (0.5f64 * 0.5 + 0.25 + 0.0625).sqrt()).abs() < 1e-15);
    }

    #[test]
    fn nuclear_bound_single_atom() {
        // oracle: Σ λ_n (1/2)^{λ_n}
        let oracle: f64 = (0..20)
            .map(|n| 2f64.powi(n) * 0.5f64.powf(2f64.powi(n)))
            .sum();
        let prof = compute_dn(
            &pow2(20),
            &half_atom(),
            WeightScheme::inverse_lambda(1.0).unwrap(),
            20,
            1e-15,
        )
        .unwrap();
        let b = operator_bounds(&prof, &half_atom(), &BoundOptions::default()).unwrap();
        assert!((b.nuclear_bound - oracle).abs() < 1e-14);
        assert!((b.nuclear_bound - 1.28149).abs() < 1e-4);
        assert!(b.schatten_bounds.is_empty());
    }

    #[test]
    fn rejects_bad_inputs() {
        let seq = ExponentSequence::new(vec![0.0, 1.0]).unwrap();
        assert!(compute_dn(
            &seq,
            &half_atom(),
            WeightScheme::inverse_lambda(2.0).unwrap(),
            2,
            1e-12
        )
        .is_err());
        assert!(compute_dn(
            &seq,
            &half_atom(),
            WeightScheme::classical(2.0).unwrap(),
            2,
            1e-12
        )
        .is_ok());
        assert!(WeightScheme::classical(0.5).is_err());
        assert!(compute_dn(
            &pow2(3),
            &half_atom(),
            WeightScheme::classical(2.0).unwrap(),
            4,
            1e-12
        )
        .is_err());
    }
}
