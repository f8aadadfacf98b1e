//! Exponent sequences `λ_0 < λ_1 < …` and their lacunarity statistics.
//!
//! Only finite prefixes are ever stored, so every statistic here describes the
//! prefix; trends are reported, asymptotic properties are never claimed.

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};

/// A strictly increasing, finite, nonnegative list of exponents.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct ExponentSequence {
    exponents: Vec<f64>,
}

impl TryFrom<Vec<f64>> for ExponentSequence {
    type Error = crate::Error;
    fn try_from(v: Vec<f64>) -> Result<Self> {
        ExponentSequence::new(v)
    }
}

impl From<ExponentSequence> for Vec<f64> {
    fn from(s: ExponentSequence) -> Vec<f64> {
        s.exponents
    }
}

impl ExponentSequence {
    pub fn new(exponents: Vec<f64>) -> Result<Self> {
        if exponents.is_empty() {
            return invalid("exponent sequence must be nonempty");
        }
        if let Some(bad) = exponents.iter().find(|x| !x.is_finite() || **x < 0.0) {
            return invalid(format!("exponents must be finite and >= 0, got {bad}"));
        }
        if let Some(w) = exponents.windows(2).position(|w| w[1] <= w[0]) {
            return invalid(format!(
                "exponents must be strictly increasing: λ_{} = {} >= λ_{} = {}",
                w,
                exponents[w],
                w + 1,
                exponents[w + 1]
            ));
        }
        Ok(ExponentSequence { exponents })
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.exponents
    }

    pub fn len(&self) -> usize {
        self.exponents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exponents.is_empty()
    }

    pub fn get(&self, n: usize) -> f64 {
        self.exponents[n]
    }

    pub fn last(&self) -> f64 {
        *self.exponents.last().expect("nonempty by construction")
    }

    /// First `n` exponents.
    pub fn prefix(&self, n: usize) -> Result<Self> {
        if n == 0 || n > self.len() {
            return invalid(format!("prefix length {n} outside 1..={}", self.len()));
        }
        Ok(ExponentSequence {
            exponents: self.exponents[..n].to_vec(),
        })
    }

    /// Smallest consecutive gap `min (λ_{n+1} − λ_n)`; `None` for a single exponent.
    pub fn min_gap(&self) -> Option<f64> {
        self.exponents
            .windows(2)
            .map(|w| w[1] - w[0])
            .min_by(f64::total_cmp)
    }

    /// The transformed sequence `q_n = p λ_n + 1` (the `L^p` normalisation).
    pub fn shifted(&self, p: f64) -> Vec<f64> {
        self.exponents.iter().map(|l| p * l + 1.0).collect()
    }

    /// Minimal consecutive ratio of `p λ_n + 1`.
    pub fn shifted_ratio(&self, p: f64) -> Option<f64> {
        min_ratio(&self.shifted(p))
    }
}

pub(crate) fn min_ratio(values: &[f64]) -> Option<f64> {
    values
        .windows(2)
        .filter(|w| w[0] > 0.0)
        .map(|w| w[1] / w[0])
        .min_by(f64::total_cmp)
}

/// `λ_n = lambda0 · ratio^n` for `n = 0..count`.
pub fn generate_geometric(lambda0: f64, ratio: f64, count: usize) -> Result<ExponentSequence> {
    if !(lambda0 > 0.0 && lambda0.is_finite()) {
        return invalid(format!("lambda0 must be positive, got {lambda0}"));
    }
    if !(ratio > 1.0 && ratio.is_finite()) {
        return invalid(format!("ratio must exceed 1, got {ratio}"));
    }
    if count == 0 {
        return invalid("count must be positive");
    }
    let mut v = Vec::with_capacity(count);
    for n in 0..count {
        let x = lambda0 * ratio.powi(n as i32);
        if !x.is_finite() {
            return invalid(format!("λ_{n} overflows f64"));
        }
        v.push(x);
    }
    ExponentSequence::new(v)
}

/// Result of [`generate_recursive_power`]: the sequence and how many
/// terms were requested versus produced.
#[derive(Clone, Debug)]
pub struct RecursiveSequence {
    pub sequence: ExponentSequence,
    /// Index attached to the first exponent.
    pub start_index: usize,
    pub requested: usize,
    /// Number of exponents kept before `f64` overflow.
    pub effective_len: usize,
}

impl RecursiveSequence {
    pub fn is_truncated(&self) -> bool {
        self.effective_len < self.requested
    }

    /// Label `n` of the stored exponent at position `i`.
    pub fn label(&self, i: usize) -> usize {
        self.start_index + i
    }
}

/// `λ_{s} = lambda_start`, `λ_n = n^γ λ_{n−1}` for `n > s`.
pub fn generate_recursive_power(
    lambda_start: f64,
    start_index: usize,
    exponent_power: f64,
    count: usize,
) -> Result<RecursiveSequence> {
    if !(lambda_start > 0.0 && lambda_start.is_finite()) {
        return invalid(format!("lambda_start must be positive, got {lambda_start}"));
    }
    if start_index < 2 {
        return invalid(format!("start_index must be >= 2, got {start_index}"));
    }
    if !(exponent_power > 0.0 && exponent_power.is_finite()) {
        return invalid(format!(
            "exponent power must be positive, got {exponent_power}"
        ));
    }
    if count == 0 {
        return invalid("count must be positive");
    }
    let mut v = vec![lambda_start];
    let mut last = lambda_start;
    for n in start_index + 1..start_index + count {
        let next = (n as f64).powf(exponent_power) * last;
        if !next.is_finite() {
            break;
        }
        v.push(next);
        last = next;
    }
    let effective_len = v.len();
    Ok(RecursiveSequence {
        sequence: ExponentSequence::new(v)?,
        start_index,
        requested: count,
        effective_len,
    })
}

/// Prefix lacunarity statistics.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Classification {
    /// Consecutive ratios `λ_{n+1}/λ_n` (from index 1 when `λ_0 = 0`).
    pub ratios: Vec<f64>,
    pub r_inf: f64,
    pub r_sup: f64,
    pub is_lacunary: bool,
    pub is_quasi_geometric: bool,
    /// The last `min(5, N−1)` ratios.
    pub super_lacunary_trend: Vec<f64>,
    /// Set when `λ_0 = 0` forced the ratios to start at index 1.
    pub skipped_zero: bool,
    pub min_gap: f64,
    pub flags: Vec<String>,
}

pub fn classify(seq: &ExponentSequence) -> Result<Classification> {
    let ex = seq.as_slice();
    let skipped_zero = ex[0] == 0.0;
    let body = if skipped_zero { &ex[1..] } else { ex };
    if body.len() < 2 {
        return invalid("classification needs at least two positive exponents");
    }
    let ratios: Vec<f64> = body.windows(2).map(|w| w[1] / w[0]).collect();
    let r_inf = ratios.iter().copied().fold(f64::INFINITY, f64::min);
    let r_sup = ratios.iter().copied().fold(0.0, f64::max);
    let is_lacunary = r_inf > 1.0;
    let is_quasi_geometric = is_lacunary && r_sup.is_finite();
    let k = ratios.len().min(5);
    let super_lacunary_trend = ratios[ratios.len() - k..].to_vec();

    let mut flags = Vec::new();
    if skipped_zero {
        flags.push("lambda_0 = 0: ratios start at index 1".to_string());
    }
    if trend_strictly(&super_lacunary_trend, |a, b| b < a) && super_lacunary_trend.len() >= 2 {
        if is_lacunary {
            flags.push(
                "prefix-lacunary, trend non-lacunary: prefix ratios decreasing toward 1".into(),
            );
        } else {
            flags.push("prefix ratios decreasing toward 1".into());
        }
    }
    if trend_strictly(&super_lacunary_trend, |a, b| b > a) && super_lacunary_trend.len() >= 2 {
        flags.push("ratios strictly increasing on the tail (super-lacunary trend)".into());
    }
    Ok(Classification {
        ratios,
        r_inf,
        r_sup,
        is_lacunary,
        is_quasi_geometric,
        super_lacunary_trend,
        skipped_zero,
        min_gap: seq.min_gap().unwrap_or(f64::INFINITY),
        flags,
    })
}

fn trend_strictly(v: &[f64], ord: impl Fn(f64, f64) -> bool) -> bool {
    v.windows(2).all(|w| ord(w[0], w[1]))
}

/// Checks `values[i+1] >= r · values[i]` for all consecutive pairs.
pub fn is_r_lacunary(values: &[f64], r: f64) -> bool {
    values.windows(2).all(|w| w[1] >= r * w[0])
}

/// Greedy first-fit split into `r`-lacunary parts.
///
/// Each exponent goes to the first part whose last element `e` satisfies
/// `λ ≥ r·e`; otherwise it opens a new part.
pub fn decompose_quasi_lacunary(seq: &ExponentSequence, r: f64) -> Result<Vec<ExponentSequence>> {
    if !(r > 1.0) {
        return invalid(format!("lacunarity ratio must exceed 1, got {r}"));
    }
    let mut parts: Vec<Vec<f64>> = Vec::new();
    for &lam in seq.as_slice() {
        match parts
            .iter_mut()
            .find(|part| lam >= r * part.last().copied().unwrap_or(0.0))
        {
            Some(part) => part.push(lam),
            None => parts.push(vec![lam]),
        }
    }
    parts.into_iter().map(ExponentSequence::new).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn geometric_examples() {
        assert_eq!(
            generate_geometric(1.0, 2.0, 4).unwrap().as_slice(),
            &[1.0, 2.0, 4.0, 8.0]
        );
        assert_eq!(
            generate_geometric(1000.0, 300.0, 3).unwrap().as_slice(),
            &[1000.0, 300000.0, 9e7]
        );
        assert!(generate_geometric(0.5, 1.0, 3).is_err());
        assert!(generate_geometric(0.0, 2.0, 3).is_err());
        assert!(generate_geometric(1.0, 2.0, 0).is_err());
    }

    #[test]
    fn recursive_power_examples() {
        let s = generate_recursive_power(1.0, 2, 2.0, 4).unwrap();
        assert_eq!(s.sequence.as_slice(), &[1.0, 9.0, 144.0, 3600.0]);
        let s = generate_recursive_power(1.0, 2, 4.0, 3).unwrap();
        assert_eq!(s.sequence.as_slice(), &[1.0, 81.0, 20736.0]);
        assert!(!s.is_truncated());
    }

    #[test]
    fn recursive_power_truncates_on_overflow() {
        let s = generate_recursive_power(1.0, 2, 4.0, 200).unwrap();
        assert!(s.is_truncated());
        assert!(s.effective_len > 50 && s.effective_len < 200);
        assert!(s.sequence.last().is_finite());
    }

    #[test]
    fn classify_examples() {
        let c = classify(&generate_geometric(1.0, 2.0, 4).unwrap()).unwrap();
        assert_eq!((c.r_inf, c.r_sup), (2.0, 2.0));
        assert!(c.is_lacunary && c.is_quasi_geometric);

        let c = classify(&ExponentSequence::new(vec![1.0, 4.0, 9.0, 16.0, 25.0]).unwrap()).unwrap();
        assert_eq!(c.ratios, vec![4.0, 2.25, 16.0 / 9.0, 25.0 / 16.0]);
        assert_eq!(c.r_inf, 1.5625);
        assert!(c.is_lacunary);
        assert!(c.flags.iter().any(|f| f.contains("trend non-lacunary")));

        let ex = generate_recursive_power(1.0, 2, 2.0, 6).unwrap();
        let c = classify(&ex.sequence).unwrap();
        assert_eq!(c.ratios, vec![9.0, 16.0, 25.0, 36.0, 49.0]);
        assert!(c.super_lacunary_trend.windows(2).all(|w| w[1] > w[0]));
    }

    #[test]
    fn classify_skips_leading_zero() {
        let c = classify(&ExponentSequence::new(vec![0.0, 1.0, 3.0]).unwrap()).unwrap();
        assert!(c.skipped_zero);
        assert_eq!(c.ratios, vec![3.0]);
        assert!(classify(&ExponentSequence::new(vec![0.0, 1.0]).unwrap()).is_err());
    }

    #[test]
    fn sequence_validation() {
        assert!(ExponentSequence::new(vec![]).is_err());
        assert!(ExponentSequence::new(vec![1.0, 1.0]).is_err());
        assert!(ExponentSequence::new(vec![-1.0, 1.0]).is_err());
        assert!(ExponentSequence::new(vec![1.0, f64::INFINITY]).is_err());
        assert_eq!(
            ExponentSequence::new(vec![1.0, 1.5, 4.0])
                .unwrap()
                .min_gap(),
            Some(0.5)
        );
    }

    #[test]
    fn decompose_examples() {
        let seq =
            ExponentSequence::new(vec![1.0, 2.0, 3.0, 4.0, 6.0, 8.0, 12.0, 16.0, 24.0]).unwrap();
        let parts = decompose_quasi_lacunary(&seq, 2.0).unwrap();
        assert_eq!(parts.len(), 2);
        assert_eq!(parts[0].as_slice(), &[1.0, 2.0, 4.0, 8.0, 16.0]);
        assert_eq!(parts[1].as_slice(), &[3.0, 6.0, 12.0, 24.0]);

        let seq = generate_geometric(1.0, 2.0, 4).unwrap();
        assert_eq!(decompose_quasi_lacunary(&seq, 2.0).unwrap(), vec![seq]);

        let seq = ExponentSequence::new(vec![1.0, 1.1, 1.2]).unwrap();
        assert_eq!(decompose_quasi_lacunary(&seq, 2.0).unwrap().len(), 3);
        assert!(decompose_quasi_lacunary(&seq, 1.0).is_err());
    }
}
