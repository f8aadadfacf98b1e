//! Exact `p = 2` spectral computations on truncations of order `N`.
//!
//! All matrices are formed in the normalised basis `f_n = t^{λ_n}/‖t^{λ_n}‖₂`,
//! i.e. after the diagonal scaling `diag(√(2λ_n+1))`. This leaves singular
//! values unchanged and keeps every entry of moderate size.

use rayon::prelude::*;
use serde::Serialize;

use crate::dnp::{self, lr_norm, WeightScheme};
use crate::error::{invalid, Result};
use crate::linalg::{self, SquareMatrix};
use crate::logvalue::{LogSum, LogValue};
use crate::measures::Measure;
use crate::quadrature::{self, GaussLegendre};
use crate::sequences::ExponentSequence;

pub const DEFAULT_N: usize = 16;
pub const MAX_N: usize = 64;

/// Entries whose log-magnitude falls below this are flushed to zero.
const FLUSH_LN: f64 = -690.0;

fn check_order(seq: &ExponentSequence, n: usize) -> Result<()> {
    if n == 0 || n > seq.len() {
        return invalid(format!(
            "truncation order must be in 1..={}, got {n}",
            seq.len()
        ));
    }
    if n > MAX_N {
        return invalid(format!(
            "truncation order {n} exceeds the supported maximum {MAX_N}"
        ));
    }
    Ok(())
}

/// Materialises a log-domain entry, counting flushes.
fn materialise(v: LogValue, flushed: &mut usize) -> f64 {
    if v.is_zero() {
        0.0
    } else if v.ln() < FLUSH_LN {
        *flushed += 1;
        0.0
    } else {
        debug_assert!(v.ln() <= 700.0, "Gram entry overflow");
        v.to_f64()
    }
}

/// Normalised Gram matrices of the first `N` monomials under Lebesgue
/// measure and under `μ`.
#[derive(Clone, Debug, Serialize)]
pub struct GramPair {
    pub n: usize,
    /// `√(q_n q_k)/(λ_n+λ_k+1)`, `q = 2λ+1`; unit diagonal.
    pub reference: SquareMatrix,
    /// `√(q_n q_k) ∫ t^{λ_n+λ_k} dμ`.
    pub measure: SquareMatrix,
    /// Entries of `measure` flushed to zero.
    pub flushed: usize,
}

impl GramPair {
    pub fn build(seq: &ExponentSequence, mu: &Measure, n: usize) -> Result<Self> {
        check_order(seq, n)?;
        let reference = normalized_reference_gram(seq, n);
        let lam = seq.as_slice();
        let entries: Vec<LogValue> = (0..n * n)
            .into_par_iter()
            .map(|idx| {
                let (i, j) = (idx / n, idx % n);
                if j < i {
                    return Ok(LogValue::ZERO);
                }
                let q =
                    LogValue::from_f64(2.0 * lam[i] + 1.0) * LogValue::from_f64(2.0 * lam[j] + 1.0);
                Ok(q.sqrt() * mu.moment(lam[i] + lam[j])?)
            })
            .collect::<Result<_>>()?;
        let mut flushed = 0;
        let mut measure = SquareMatrix::zeros(n);
        for i in 0..n {
            for j in i..n {
                let v = materialise(entries[i * n + j], &mut flushed);
                measure[(i, j)] = v;
                measure[(j, i)] = v;
            }
        }
        Ok(GramPair {
            n,
            reference,
            measure,
            flushed,
        })
    }
}

/// The normalised Lebesgue Gram matrix `2√(q_n q_k)/(q_n+q_k)`.
pub fn normalized_reference_gram(seq: &ExponentSequence, n: usize) -> SquareMatrix {
    let q: Vec<f64> = seq.as_slice()[..n].iter().map(|l| 2.0 * l + 1.0).collect();
    SquareMatrix::from_fn(n, |i, j| {
        if i == j {
            1.0
        } else {
            // written as a ratio so λ ~ 1e300 stays finite
            let (a, b) = (q[i].min(q[j]), q[i].max(q[j]));
            2.0 * (a / b).sqrt() / (1.0 + a / b)
        }
    })
}

/// Which operator a spectrum belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Operator {
    /// `T_μ : ℓ²(1/λ) → L²(μ)`.
    TMuInverseLambda,
    /// `i_μ : M_Λ² → L²(μ)`.
    IMuEmbedding,
    /// `J_Λ : ℓ²(ω) → M_Λ²`.
    JLambdaFrame,
}

/// Spectrum at `N` and `N/2`.
#[derive(Clone, Debug, Serialize)]
pub struct Drift {
    pub half_n: usize,
    pub sigma_max_half: f64,
    pub hs_half: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct SpectralResult {
    pub n: usize,
    pub operator: Operator,
    /// Nonincreasing.
    pub singular_values: Vec<f64>,
    /// `(r, (Σ σ^r)^{1/r})`.
    pub schatten: Vec<(f64, f64)>,
    /// `√trace` of the squared operator's matrix.
    pub hs_trace: f64,
    pub drift: Option<Drift>,
    pub flushed: usize,
}

impl SpectralResult {
    pub fn sigma_max(&self) -> f64 {
        self.singular_values.first().copied().unwrap_or(0.0)
    }

    pub fn sigma_min(&self) -> f64 {
        self.singular_values.last().copied().unwrap_or(0.0)
    }

    pub fn schatten_norm(&self, r: f64) -> f64 {
        lr_norm(&self.singular_values, r)
    }

    pub fn hs_norm(&self) -> f64 {
        self.schatten_norm(2.0)
    }
}

pub const DEFAULT_SCHATTEN: [f64; 3] = [1.0, 2.0, 4.0];

/// Eigenvalues of a PSD matrix by Jacobi, clamped and square-rooted.
/// `noise_scale` is the size of the data the matrix was formed from.
fn singular_values_of_square(m: &SquareMatrix, noise_scale: f64) -> Result<Vec<f64>> {
    let mut eig = linalg::symmetric_eigen(m, linalg::DEFAULT_SWEEPS)?.values;
    let norm = eig.first().copied().unwrap_or(0.0).abs();
    linalg::clamp_psd(&mut eig, norm.max(m.frobenius()).max(noise_scale))?;
    Ok(eig.into_iter().map(f64::sqrt).collect())
}

fn assemble(
    n: usize,
    operator: Operator,
    sigma: Vec<f64>,
    trace: f64,
    flushed: usize,
    drift: Option<Drift>,
) -> SpectralResult {
    SpectralResult {
        n,
        operator,
        schatten: DEFAULT_SCHATTEN
            .iter()
            .map(|&r| (r, lr_norm(&sigma, r)))
            .collect(),
        singular_values: sigma,
        hs_trace: trace.max(0.0).sqrt(),
        drift,
        flushed,
    }
}

fn embedding_core(
    seq: &ExponentSequence,
    mu: &Measure,
    n: usize,
) -> Result<(Vec<f64>, f64, usize)> {
    let g = GramPair::build(seq, mu, n)?;
    let l = linalg::cholesky(&g.reference)?;
    let c = linalg::congruence_inverse(&l, &g.measure);
    // rounding in L^{-1} G_μ L^{-T} scales like ‖G_μ‖ ‖L^{-1}‖²
    let inv_sq: f64 = (0..n)
        .map(|j| {
            let mut e = vec![0.0; n];
            e[j] = 1.0;
            linalg::forward_substitute(&l, &e)
                .iter()
                .map(|x| x * x)
                .sum::<f64>()
        })
        .sum();
    let scale = g.measure.frobenius() * inv_sq;
    Ok((singular_values_of_square(&c, scale)?, c.trace(), g.flushed))
}

/// Singular values of `i_μ : M_Λ² → L²(μ)` restricted to the span of
/// the first `N` monomials: `G_μ v = σ² G_ref v` via Cholesky.
pub fn embedding_spectrum(
    seq: &ExponentSequence,
    mu: &Measure,
    n: usize,
) -> Result<SpectralResult> {
    check_order(seq, n)?;
    let (sigma, trace, flushed) = embedding_core(seq, mu, n)?;
    let drift = if n >= 2 {
        let (half, _, _) = embedding_core(seq, mu, n / 2)?;
        Some(Drift {
            half_n: n / 2,
            sigma_max_half: half[0],
            hs_half: lr_norm(&half, 2.0),
        })
    } else {
        None
    };
    Ok(assemble(
        n,
        Operator::IMuEmbedding,
        sigma,
        trace,
        flushed,
        drift,
    ))
}

/// `M[n][k] = √(λ_n λ_k) ∫ t^{λ_n+λ_k} dμ`: the Gram matrix of `T_μ`
/// on an orthonormal basis of `ℓ²(1/λ)`. Row sums are `D_n(2)²` on the prefix.
pub fn build_t_mu_matrix(
    seq: &ExponentSequence,
    mu: &Measure,
    n: usize,
) -> Result<(SquareMatrix, usize)> {
    check_order(seq, n)?;
    let lam = seq.as_slice();
    if lam[0] <= 0.0 {
        return invalid("T_mu with weight 1/lambda needs lambda_0 > 0");
    }
    let mut flushed = 0;
    let mut m = SquareMatrix::zeros(n);
    let rows: Vec<Vec<LogValue>> = (0..n)
        .into_par_iter()
        .map(|i| {
            (i..n)
                .map(|j| {
                    let s = (LogValue::from_f64(lam[i]) * LogValue::from_f64(lam[j])).sqrt();
                    Ok(s * mu.moment(lam[i] + lam[j])?)
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    for (i, row) in rows.into_iter().enumerate() {
        for (off, v) in row.into_iter().enumerate() {
            let j = i + off;
            let x = materialise(v, &mut flushed);
            m[(i, j)] = x;
            m[(j, i)] = x;
        }
    }
    Ok((m, flushed))
}

/// Comparison of `σ_{k+1}(T_μ)` with the `k`-th entry of the rearranged
/// `D(2)` profile.
#[derive(Clone, Debug, Serialize)]
pub struct RearrangementChain {
    pub sigma: Vec<f64>,
    pub bound: Vec<f64>,
    pub holds: bool,
    pub worst_gap: f64,
    /// All inner series were cut safely, so the prefix profile is reliable.
    pub truncation_safe: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct TMuSpectrum {
    pub spectrum: SpectralResult,
    pub chain: RearrangementChain,
}

/// Singular values of the truncated `T_μ` and the approximation-number chain.
///
/// `D_n(2)` is computed over the whole of `seq`; when `seq` is exactly the
/// `N`-prefix the bound is the prefix row sum, for which the chain is exact.
pub fn t_mu_spectrum(
    seq: &ExponentSequence,
    mu: &Measure,
    n: usize,
    tol: f64,
) -> Result<TMuSpectrum> {
    let (m, flushed) = build_t_mu_matrix(seq, mu, n)?;
    let sigma = if mu.is_empty() {
        vec![0.0; n]
    } else {
        singular_values_of_square(&m, 0.0)?
    };
    let trace = m.trace();
    let half = if n >= 2 {
        let (mh, _) = build_t_mu_matrix(seq, mu, n / 2)?;
        let s = if mu.is_empty() {
            vec![0.0; n / 2]
        } else {
            singular_values_of_square(&mh, 0.0)?
        };
        Some(Drift {
            half_n: n / 2,
            sigma_max_half: s[0],
            hs_half: lr_norm(&s, 2.0),
        })
    } else {
        None
    };
    let profile = dnp::compute_dn(seq, mu, WeightScheme::inverse_lambda(2.0)?, n, tol)?;
    let bound = dnp::decreasing_rearrangement(&profile.values);
    let worst_gap = sigma
        .iter()
        .zip(&bound)
        .map(|(s, b)| s - b)
        .fold(f64::NEG_INFINITY, f64::max);
    let chain = RearrangementChain {
        holds: sigma.iter().zip(&bound).all(|(s, b)| *s <= b + 1e-9),
        sigma: sigma.clone(),
        bound,
        worst_gap,
        truncation_safe: profile.all_safe(),
    };
    Ok(TMuSpectrum {
        spectrum: assemble(n, Operator::TMuInverseLambda, sigma, trace, flushed, half),
        chain,
    })
}

/// Extreme singular values of `J_Λ` on `ℓ²(ω)`, `ω_n = 1/(2λ_n+1)`.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct FrameBounds {
    pub sigma_min: f64,
    pub sigma_max: f64,
}

pub fn frame_bounds(seq: &ExponentSequence, n: usize) -> Result<FrameBounds> {
    let sigma = frame_spectrum(seq, n)?.singular_values;
    Ok(FrameBounds {
        sigma_min: *sigma.last().unwrap(),
        sigma_max: sigma[0],
    })
}

/// Full singular spectrum of the truncated `J_Λ`.
pub fn frame_spectrum(seq: &ExponentSequence, n: usize) -> Result<SpectralResult> {
    check_order(seq, n)?;
    let g = normalized_reference_gram(seq, n);
    let sigma = singular_values_of_square(&g, 0.0)?;
    Ok(assemble(
        n,
        Operator::JLambdaFrame,
        sigma,
        g.trace(),
        0,
        None,
    ))
}

/// `sup |f(t)|/‖f‖₂` over the span of the first `N` monomials:
/// `√(vᵀ G_ref^{−1} v)` with `v_n = t^{λ_n}`.
pub fn point_eval_kernel_norm(seq: &ExponentSequence, t: f64, n: usize) -> Result<f64> {
    check_order(seq, n)?;
    if !(0.0..1.0).contains(&t) {
        return invalid(format!("evaluation point must lie in [0, 1), got {t}"));
    }
    let g = normalized_reference_gram(seq, n);
    let l = linalg::cholesky(&g)?;
    let v: Vec<f64> = seq.as_slice()[..n]
        .iter()
        .map(|&lam| {
            let pow = if lam == 0.0 {
                1.0
            } else {
                (lam * t.ln()).exp()
            };
            (2.0 * lam + 1.0).sqrt() * pow
        })
        .collect();
    let y = linalg::forward_substitute(&l, &v);
    Ok(y.iter().map(|x| x * x).sum::<f64>().sqrt())
}

/// `σ_1` of the embedding over `μ|_{[a_j, 1)}` for each cut.
#[derive(Clone, Debug, Serialize)]
pub struct EssentialNormEstimate {
    pub cuts: Vec<(f64, f64)>,
    /// Last cut value, the essential-norm proxy.
    pub limit_proxy: f64,
    /// Ratio of the first to the last `σ_1`.
    pub decay_factor: f64,
}

pub fn essential_norm_estimate(
    seq: &ExponentSequence,
    mu: &Measure,
    n: usize,
    cut_grid: &[f64],
) -> Result<EssentialNormEstimate> {
    if cut_grid.is_empty() {
        return invalid("cut grid is empty");
    }
    if cut_grid.windows(2).any(|w| w[1] <= w[0]) || cut_grid.iter().any(|a| !(0.0..1.0).contains(a))
    {
        return invalid("cuts must increase within [0, 1)");
    }
    let cuts: Vec<(f64, f64)> = cut_grid
        .par_iter()
        .map(|&a| {
            let part = mu.restrict(a, 1.0)?;
            if part.is_empty() {
                return Ok((a, 0.0));
            }
            Ok((a, embedding_spectrum_at(seq, &part, n)?))
        })
        .collect::<Result<_>>()?;
    let first = cuts[0].1;
    let last = cuts.last().unwrap().1;
    Ok(EssentialNormEstimate {
        decay_factor: if last > 0.0 {
            first / last
        } else {
            f64::INFINITY
        },
        limit_proxy: last,
        cuts,
    })
}

fn embedding_spectrum_at(seq: &ExponentSequence, mu: &Measure, n: usize) -> Result<f64> {
    Ok(embedding_core(seq, mu, n)?.0[0])
}

/// Hilbert–Schmidt data side by side.
#[derive(Clone, Debug, Serialize)]
pub struct HsReport {
    pub n: usize,
    /// HS norm of the embedding on the span of the first `N` monomials.
    pub hs_norm_truncated: f64,
    /// `(Σ_{n<N} λ_n ∫ t^{2λ_n} dμ)^{1/2}`, the HS norm of the truncated `T_μ`.
    pub t_mu_hs_truncated: f64,
    pub hs_half: f64,
    /// `∫ dμ/(1−t)`, `None` when divergent.
    pub poisson_value: Option<f64>,
    pub poisson_divergent: bool,
    /// `(q, value or None when divergent)`.
    pub integral_values: Vec<(f64, Option<f64>)>,
    /// `Σ_n D_n(2)²` over the whole sequence.
    pub dn_square_sum: f64,
    pub flags: Vec<String>,
}

/// Truncated HS norm, the Poisson integral and the integral expression
/// `(∫₀¹ (∫ dμ(t)/(1−st)^{2/q+1})^{q/2} ds)^{1/q}` for each `q`.
pub fn hs_criteria(
    seq: &ExponentSequence,
    mu: &Measure,
    n: usize,
    q_list: &[f64],
    tol: f64,
) -> Result<HsReport> {
    if n < 2 {
        return invalid("HS criteria need N >= 2");
    }
    let spec = embedding_spectrum(seq, mu, n)?;
    let poisson = mu.poisson_integral();
    let integral_values = q_list
        .iter()
        .map(|&q| Ok((q, schatten_integral(mu, q)?)))
        .collect::<Result<Vec<_>>>()?;
    let profile = dnp::compute_dn(seq, mu, WeightScheme::inverse_lambda(2.0)?, seq.len(), tol)?;
    let dn_square_sum = profile.values.iter().map(|d| d * d).sum();
    let t_mu_hs: LogSum = seq.as_slice()[..n]
        .iter()
        .map(|&l| Ok(LogValue::from_f64(l) * mu.moment(2.0 * l)?))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .collect();
    let mut flags = Vec::new();
    if poisson.divergent {
        flags.push(
            "poisson integral divergent: expected divergent, truncated value grows with N"
                .to_string(),
        );
    }
    if !profile.all_safe() {
        flags.push("some D_n(2) inner series were truncated unsafely".to_string());
    }
    Ok(HsReport {
        n,
        hs_norm_truncated: spec.hs_norm(),
        t_mu_hs_truncated: t_mu_hs.value().sqrt().to_f64(),
        hs_half: spec.drift.as_ref().map(|d| d.hs_half).unwrap_or(0.0),
        poisson_value: poisson.finite_value(),
        poisson_divergent: poisson.divergent,
        integral_values,
        dn_square_sum,
        flags,
    })
}

/// `(∫₀¹ (∫ dμ(t)/(1−st)^{2/q+1})^{q/2} ds)^{1/q}`; `None` when the outer
/// integral diverges (heuristically detected).
///
/// The outer integral runs on dyadic panels in `u = 1 − s`; with
/// `t = 1 − δ`, `1 − st = u + δ − uδ` is formed without cancellation.
pub fn schatten_integral(mu: &Measure, q: f64) -> Result<Option<f64>> {
    if !(q > 0.0) {
        return invalid(format!("q must be positive, got {q}"));
    }
    let power = 2.0 / q + 1.0;
    let rule = GaussLegendre::default_rule();
    let smallest_delta = mu
        .atom_list()
        .and_then(|a| a.last().map(|x| x.delta.to_f64()))
        .unwrap_or(1.0);
    let min_depth = quadrature::peak_depth(1.0 / smallest_delta.max(1e-300)) + 4;
    let inner = |u: f64| -> LogValue {
        mu.integrate(1.0 / u, 1e-13, |node| {
            let d = node.delta.to_f64();
            LogValue::from_f64(u + d - u * d).powf(-power)
        })
        .value
    };
    let mut total = LogSum::new();
    let mut history: Vec<f64> = Vec::new();
    for j in 0..=quadrature::MAX_DEPTH {
        let Some(panel) = quadrature::dyadic_panel(j, 0.0, 1.0) else {
            continue;
        };
        let mut part = LogSum::new();
        for (u, w) in rule.mapped(panel.delta_lo, panel.delta_hi) {
            part.add(LogValue::from_f64(w) * inner(u).powf(q / 2.0));
        }
        let part = part.value();
        total.add(part);
        history.push(part.ln());
        if j >= min_depth && part.ln() <= (1e-15f64).ln() + total.value().ln() {
            return Ok(Some(total.value().powf(1.0 / q).to_f64()));
        }
        if j >= min_depth.max(16) {
            let tail = &history[history.len() - 8..];
            if tail
                .windows(2)
                .all(|w| w[1] - w[0] > -0.05 * std::f64::consts::LN_2)
            {
                return Ok(None);
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sequences::generate_geometric;

    fn pow2(n: usize) -> ExponentSequence {
        generate_geometric(1.0, 2.0, n).unwrap()
    }

    #[test]
    fn lebesgue_is_identity() {
        let s = embedding_spectrum(&pow2(16), &Measure::lebesgue(), 16).unwrap();
        assert!(s.singular_values.iter().all(|x| (x - 1.0).abs() < 1e-8));
        let half = Measure::lebesgue().scaled(0.5).unwrap();
        let s = embedding_spectrum(&pow2(8), &half, 8).unwrap();
        assert!(s
            .singular_values
            .iter()
            .all(|x| (x - 0.5f64.sqrt()).abs() < 1e-8));
    }

    #[test]
    fn t_mu_matrix_two_by_two() {
        let seq = ExponentSequence::new(vec![1.0, 2.0]).unwrap();
        let (m, _) = build_t_mu_matrix(&seq, &Measure::lebesgue(), 2).unwrap();
        let want = [[1.0 / 3.0, 2f64.sqrt() / 4.0], [2f64.sqrt() / 4.0, 0.4]];
        for i in 0..2 {
            for j in 0..2 {
                assert!((m[(i, j)] - want[i][j]).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn t_mu_two_by_two_closed_form() {
        // oracle: eigenvalues of [[a,b],[b,c]] by the quadratic formula
        let (a, b, c) = (1.0 / 3.0, 2f64.sqrt() / 4.0, 0.4);
        let tr = a + c;
        let det = a * c - b * b;
        assert!((det - 1.0 / 120.0).abs() < 1e-15);
        let disc = (tr * tr / 4.0 - det).sqrt();
        let (l1, l2) = (tr / 2.0 + disc, tr / 2.0 - disc);
        let seq = ExponentSequence::new(vec![1.0, 2.0]).unwrap();
        let r = t_mu_spectrum(&seq, &Measure::lebesgue(), 2, 1e-15).unwrap();
        let s = &r.spectrum.singular_values;
        assert!((s[0] * s[0] - l1).abs() < 1e-14 && (s[1] * s[1] - l2).abs() < 1e-14);
        assert!((r.spectrum.hs_norm() - (11.0f64 / 15.0).sqrt()).abs() < 1e-14);
        assert!((r.spectrum.hs_norm() - 0.85635).abs() < 1e-5);
    }

    #[test]
    fn rank_one_single_atom() {
        let mu = Measure::atoms_at(&[(0.9, 0.3)]).unwrap();
        let seq = pow2(10);
        let s = embedding_spectrum(&seq, &mu, 10).unwrap();
        assert!(s.singular_values[1..]
            .iter()
            .all(|x| x * x < 1e-10 * s.sigma_max().powi(2)));
        let k = point_eval_kernel_norm(&seq, 0.9, 10).unwrap();
        assert!((s.sigma_max().powi(2) - 0.3 * k * k).abs() < 1e-9 * k * k);
        let (m, _) = build_t_mu_matrix(&seq, &mu, 10).unwrap();
        let t = t_mu_spectrum(&seq, &mu, 10, 1e-15).unwrap();
        assert!(t.spectrum.singular_values[1..]
            .iter()
            .all(|x| x * x < 1e-13));
        assert!((t.spectrum.hs_norm().powi(2) - m.trace()).abs() < 1e-12);
    }

    #[test]
    fn empty_measure_has_zero_spectrum() {
        let mu = Measure::atoms_at(&[(0.5, 1.0)])
            .unwrap()
            .restrict(0.6, 1.0)
            .unwrap();
        let r = t_mu_spectrum(&pow2(6), &mu, 6, 1e-12).unwrap();
        assert!(r.spectrum.singular_values.iter().all(|s| *s == 0.0));
    }

    #[test]
    fn frame_bounds_single_and_widely_spaced() {
        let one = ExponentSequence::new(vec![3.0]).unwrap();
        let fb = frame_bounds(&one, 1).unwrap();
        assert!((fb.sigma_min - 1.0).abs() < 1e-15 && (fb.sigma_max - 1.0).abs() < 1e-15);
        let wide = generate_geometric(1000.0, 300.0, 8).unwrap();
        let fb = frame_bounds(&wide, 8).unwrap();
        assert!(fb.sigma_min >= 0.5 && fb.sigma_max <= 1.5);
    }

    #[test]
    fn essential_norm_finite_atoms_hits_zero() {
        let mu = Measure::atoms_at(&[(0.5, 1.0), (0.75, 0.5)]).unwrap();
        let est = essential_norm_estimate(&pow2(12), &mu, 12, &[0.25, 0.6, 0.8]).unwrap();
        assert!(est.cuts[0].1 > 0.0);
        assert_eq!(est.limit_proxy, 0.0);
    }

    #[test]
    fn schatten_integral_q2_is_poisson() {
        let mu = crate::measures::dyadic_atoms(12, |k| 4f64.powi(-(k as i32))).unwrap();
        let p = mu.poisson_integral().finite_value().unwrap();
        let v = schatten_integral(&mu, 2.0).unwrap().unwrap();
        assert!((v * v - p).abs() < 1e-8 * p, "{} vs {p}", v * v);
        assert!(schatten_integral(&Measure::lebesgue(), 2.0)
            .unwrap()
            .is_none());
    }

    #[test]
    fn order_is_validated() {
        assert!(embedding_spectrum(&pow2(4), &Measure::lebesgue(), 5).is_err());
        assert!(frame_bounds(&pow2(4), 0).is_err());
    }
}
