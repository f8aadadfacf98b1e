//! Closed-form constants: the lacunary double-sum bound, the `‖J_Λ‖_p`
//! upper bounds, the near-isometry ratio `r_ε`, the `λ^α t^λ` envelope and
//! the point-evaluation surrogate.

use serde::Serialize;

use crate::error::{invalid, Result};
use crate::logvalue::LogValue;
use crate::measures::Node;
use crate::sequences::{is_r_lacunary, ExponentSequence};

/// Conjugate exponent `p/(p−1)` (`∞` at `p = 1`).
pub fn conjugate(p: f64) -> f64 {
    if p == 1.0 {
        f64::INFINITY
    } else {
        p / (p - 1.0)
    }
}

/// `(lhs, rhs)` of the lacunary double-sum inequality
///
/// ```text
/// sup_n Σ_{k≠n} ( q_n^{1/p} q_k^{1/p'} / (q_n/p + q_k/p') )^α
///     ≤ p'^α/(r^{α/p} − 1) + p^α/(r^{α/p'} − 1).
/// ```
pub fn lemma31_bound(p: f64, alpha: f64, q_seq: &[f64], r: f64) -> Result<(f64, f64)> {
    if !(p > 1.0) {
        return invalid(format!("p must exceed 1, got {p}"));
    }
    if !(alpha > 0.0) {
        return invalid(format!("alpha must be positive, got {alpha}"));
    }
    if !(r > 1.0) {
        return invalid(format!("r must exceed 1, got {r}"));
    }
    if q_seq.iter().any(|q| !(*q > 0.0)) || !is_r_lacunary(q_seq, r) {
        return invalid(format!("q sequence is not {r}-lacunary"));
    }
    let pc = conjugate(p);
    let lhs = (0..q_seq.len())
        .map(|n| {
            q_seq
                .iter()
                .enumerate()
                .filter(|(k, _)| *k != n)
                .map(|(_, &qk)| {
                    // divide through by q_k
                    let x = q_seq[n] / qk;
                    (x.powf(1.0 / p) / (x / p + 1.0 / pc)).powf(alpha)
                })
                .sum::<f64>()
        })
        .fold(0.0, f64::max);
    let rhs =
        pc.powf(alpha) / (r.powf(alpha / p) - 1.0) + p.powf(alpha) / (r.powf(alpha / pc) - 1.0);
    Ok((lhs, rhs))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum NormFormula {
    /// `(1 + 2p^{1/(p−1)}/(r^{1/(p(p−1))} − 1))^{1/p'}`, valid for `p ≥ 2`.
    LargeP,
    /// `(1 + 4/(r^{1/2} − 1))^{1/p'}`, valid for `1 ≤ p ≤ 2`.
    SmallP,
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct NormBoundReport {
    pub p: f64,
    /// Lacunarity ratio of `q_n = pλ_n + 1`.
    pub r: f64,
    pub upper_bound: f64,
    pub formula: NormFormula,
}

/// Upper bound on `‖J_Λ‖_p` when `(pλ_n + 1)` is `r`-lacunary.
pub fn jlambda_upper(p: f64, r: f64) -> Result<NormBoundReport> {
    let formula = if p >= 2.0 {
        NormFormula::LargeP
    } else {
        NormFormula::SmallP
    };
    jlambda_upper_with(formula, p, r)
}

pub fn jlambda_upper_with(formula: NormFormula, p: f64, r: f64) -> Result<NormBoundReport> {
    if !(p >= 1.0) {
        return invalid(format!("p must be >= 1, got {p}"));
    }
    if !(r > 1.0) {
        return invalid(format!("r must exceed 1, got {r}"));
    }
    let inv_pc = 1.0 - 1.0 / p;
    let inner = match formula {
        NormFormula::LargeP => {
            if p < 2.0 {
                return invalid("the large-p bound needs p >= 2");
            }
            1.0 + 2.0 * p.powf(1.0 / (p - 1.0)) / (r.powf(1.0 / (p * (p - 1.0))) - 1.0)
        }
        NormFormula::SmallP => {
            if p > 2.0 {
                return invalid("the small-p bound needs p <= 2");
            }
            1.0 + 4.0 / (r.sqrt() - 1.0)
        }
    };
    Ok(NormBoundReport {
        p,
        r,
        upper_bound: inner.powf(inv_pc),
        formula,
    })
}

/// Lacunarity ratio of `q_n = pλ_n + 1` sufficient for a `(1 ± ε)`
/// two-sided estimate: `(1 + 4 q^{1/(q−1)}/ε)^{q(q−1)}`, `q = max(p, p')`.
pub fn r_epsilon(p: f64, eps: f64) -> Result<f64> {
    if !(p > 1.0) {
        return invalid(format!("p must exceed 1, got {p}"));
    }
    if !(eps > 0.0 && eps < 1.0) {
        return invalid(format!("eps must lie in (0, 1), got {eps}"));
    }
    let q = p.max(conjugate(p));
    Ok((1.0 + 4.0 * q.powf(1.0 / (q - 1.0)) / eps).powf(q * (q - 1.0)))
}

/// `Σ_n c_n t^{λ_n}` in log domain with the decreasing-term cutoff.
/// Returns the sum and whether the cut was safe.
fn weighted_series(
    lambdas: &[f64],
    coeff: impl Fn(f64) -> LogValue,
    node: &Node,
    tol: f64,
) -> (LogValue, bool) {
    let mut sum = crate::logvalue::LogSum::new();
    let mut prev = LogValue::ZERO;
    for (k, &lam) in lambdas.iter().enumerate() {
        let term = coeff(lam) * node.power(lam);
        let total = sum.value();
        if k > crate::dnp::CUTOFF_FLOOR && term.ln() < tol.ln() + total.ln() && term < prev {
            return (total, true);
        }
        sum.add(term);
        prev = term;
    }
    let total = sum.value();
    (total, prev.ln() < tol.ln() + total.ln())
}

/// Grid `t_j = 1 − 2^{−j}`, `j = j_min..=j_max`.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct DyadicGrid {
    pub j_min: u32,
    pub j_max: u32,
}

impl Default for DyadicGrid {
    fn default() -> Self {
        DyadicGrid {
            j_min: 1,
            j_max: 40,
        }
    }
}

impl DyadicGrid {
    pub fn nodes(&self) -> impl Iterator<Item = (f64, Node)> {
        (self.j_min..=self.j_max).map(|j| {
            let delta = LogValue::from_ln(-(j as f64) * std::f64::consts::LN_2);
            (delta.to_f64(), Node::from_delta(delta, LogValue::ONE))
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct EnvelopeReport {
    pub alpha: f64,
    pub ratio_min: f64,
    pub ratio_max: f64,
    /// `(1 − t, (Σ λ^α t^λ)(1−t)^α)`.
    pub samples: Vec<(f64, f64)>,
    pub truncation_safe: bool,
}

/// Empirical bracket of `(1−t)^α Σ_n λ_n^α t^{λ_n}` over a dyadic grid.
pub fn envelope_check(
    seq: &ExponentSequence,
    alpha: f64,
    grid: &DyadicGrid,
    tol: f64,
) -> Result<EnvelopeReport> {
    if !(alpha > 0.0) {
        return invalid(format!("alpha must be positive, got {alpha}"));
    }
    if grid.j_min > grid.j_max {
        return invalid("empty grid");
    }
    let lam = seq.as_slice();
    let mut samples = Vec::new();
    let mut safe = true;
    for (delta, node) in grid.nodes() {
        let (s, ok) = weighted_series(lam, |l| LogValue::from_f64(l).powf(alpha), &node, tol);
        safe &= ok;
        samples.push((delta, (s * node.delta.powf(alpha)).to_f64()));
    }
    let ratio_min = samples.iter().map(|s| s.1).fold(f64::INFINITY, f64::min);
    let ratio_max = samples.iter().map(|s| s.1).fold(0.0, f64::max);
    Ok(EnvelopeReport {
        alpha,
        ratio_min,
        ratio_max,
        samples,
        truncation_safe: safe,
    })
}

/// Surrogate `(Σ_{n<N} λ_n^{p'/p} t^{p'λ_n})^{1/p'}` for the norm of
/// point evaluation at `t` on `M_Λ^p` (`max_n λ_n t^{λ_n}` at `p = 1`).
pub fn point_eval_norm(seq: &ExponentSequence, p: f64, t: f64, n_count: usize) -> Result<f64> {
    if !(p >= 1.0) {
        return invalid(format!("p must be >= 1, got {p}"));
    }
    if !(0.0..1.0).contains(&t) {
        return invalid(format!("t must lie in [0, 1), got {t}"));
    }
    if n_count == 0 || n_count > seq.len() {
        return invalid(format!("n_count must be in 1..={}", seq.len()));
    }
    let lam = &seq.as_slice()[..n_count];
    let node = Node::from_delta(LogValue::from_f64(1.0 - t), LogValue::ONE);
    let power_of = |l: f64, e: f64| -> LogValue {
        if t == 0.0 {
            if l == 0.0 {
                LogValue::ONE
            } else {
                LogValue::ZERO
            }
        } else {
            node.power(e * l)
        }
    };
    if p == 1.0 {
        let m = lam
            .iter()
            .map(|&l| LogValue::from_f64(l) * power_of(l, 1.0))
            .fold(LogValue::ZERO, LogValue::max);
        return Ok(m.to_f64());
    }
    let pc = conjugate(p);
    let s: crate::logvalue::LogSum = lam
        .iter()
        .map(|&l| LogValue::from_f64(l).powf(pc / p) * power_of(l, pc))
        .collect();
    Ok(s.value().powf(1.0 / pc).to_f64())
}
