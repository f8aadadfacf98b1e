//! Müntz polynomials, their `L^p(μ)` norms, and the lacunarity probes.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::bounds::conjugate;
use crate::error::{invalid, Result};
use crate::logvalue::{CompensatedSum, LogValue};
use crate::measures::{Measure, Node, DEFAULT_REL_TOL};
use crate::sequences::{classify, ExponentSequence};

/// Largest exponent for which Lebesgue-type norms are computed by quadrature.
pub const MAX_QUADRATURE_EXPONENT: f64 = 1e12;

/// `f(t) = Σ a_n t^{λ_n}` over a prefix of `seq`.
#[derive(Clone, Debug)]
pub struct MuntzPolynomial<'a> {
    pub seq: &'a ExponentSequence,
    pub coefficients: Vec<f64>,
}

impl<'a> MuntzPolynomial<'a> {
    pub fn new(seq: &'a ExponentSequence, coefficients: Vec<f64>) -> Result<Self> {
        if coefficients.len() > seq.len() {
            return invalid(format!(
                "{} coefficients for a sequence of length {}",
                coefficients.len(),
                seq.len()
            ));
        }
        if coefficients.iter().any(|c| !c.is_finite()) {
            return invalid("coefficients must be finite");
        }
        Ok(MuntzPolynomial { seq, coefficients })
    }

    pub fn monomial(seq: &'a ExponentSequence, n: usize) -> Result<Self> {
        let mut c = vec![0.0; n + 1];
        c[n] = 1.0;
        MuntzPolynomial::new(seq, c)
    }

    pub fn scaled(&self, c: f64) -> Self {
        MuntzPolynomial {
            seq: self.seq,
            coefficients: self.coefficients.iter().map(|a| c * a).collect(),
        }
    }

    fn terms(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.coefficients
            .iter()
            .zip(self.seq.as_slice())
            .filter(|(a, _)| **a != 0.0)
            .map(|(&a, &l)| (a, l))
    }

    fn max_exponent(&self) -> f64 {
        self.terms().map(|(_, l)| l).fold(0.0, f64::max)
    }

    fn at_node(&self, node: &Node) -> f64 {
        let mut s = CompensatedSum::new();
        for (a, l) in self.terms() {
            s.add(a * node.power(l).to_f64());
        }
        s.value()
    }
}

/// `f(t)` for `t ∈ [0, 1)`.
pub fn eval_poly(f: &MuntzPolynomial, t: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&t) {
        return invalid(format!("t must lie in [0, 1), got {t}"));
    }
    if t == 0.0 {
        return Ok(f.terms().filter(|(_, l)| *l == 0.0).map(|(a, _)| a).sum());
    }
    let mut s = CompensatedSum::new();
    for (a, l) in f.terms() {
        s.add(a * t.powf(l));
    }
    Ok(s.value())
}

/// `‖f‖_{L^p(μ)}`.
///
/// Atomic measures are summed exactly. Continuous measures use dyadic
/// panels refined past `log₂(max λ) + 8`; exponents beyond
/// [`MAX_QUADRATURE_EXPONENT`] are refused there.
pub fn lp_norm(f: &MuntzPolynomial, mu: &Measure, p: f64) -> Result<f64> {
    if !(p >= 1.0) {
        return invalid(format!("p must be >= 1, got {p}"));
    }
    let terms: Vec<(f64, f64)> = f.terms().collect();
    match terms.as_slice() {
        [] => return Ok(0.0),
        [(a, l)] => return Ok(monomial_pth_power(*a, *l, mu, p)?.powf(1.0 / p)),
        _ => {}
    }
    let lmax = f.max_exponent();
    if !mu.is_atomic() && lmax > MAX_QUADRATURE_EXPONENT {
        return invalid(format!(
            "exponent {lmax:e} is too large for quadrature; use an atomic measure or closed forms"
        ));
    }
    let integral = mu.integrate(lmax, DEFAULT_REL_TOL * 1e-3, |node| {
        LogValue::from_f64(f.at_node(node).abs()).powf(p)
    });
    Ok(integral.value.powf(1.0 / p).to_f64())
}

/// `∫ |a t^λ|^p dμ`, written so that the Lebesgue case reproduces
/// `|a|^p/(pλ+1)` bit for bit.
fn monomial_pth_power(a: f64, lambda: f64, mu: &Measure, p: f64) -> Result<f64> {
    let ap = a.abs().powf(p);
    if mu.is_standard_lebesgue() {
        return Ok(ap / (p * lambda + 1.0));
    }
    Ok(ap * mu.moment(p * lambda)?.to_f64())
}

/// `‖f‖_{L²(μ)}` through the Gram matrix of moments.
pub fn l2_norm_gram(f: &MuntzPolynomial, mu: &Measure) -> Result<f64> {
    let terms: Vec<(f64, f64)> = f.terms().collect();
    if let [(a, l)] = terms.as_slice() {
        return Ok(monomial_pth_power(*a, *l, mu, 2.0)?.sqrt());
    }
    let mut s = CompensatedSum::new();
    for &(ai, li) in &terms {
        for &(aj, lj) in &terms {
            let g = if mu.is_standard_lebesgue() {
                1.0 / (li + lj + 1.0)
            } else {
                mu.moment(li + lj)?.to_f64()
            };
            s.add(ai * aj * g);
        }
    }
    Ok(s.value().max(0.0).sqrt())
}

/// `(Σ |b_n|^p / (pλ_n + 1))^{1/p}`.
pub fn canonical_norm(f: &MuntzPolynomial, p: f64) -> f64 {
    let s: f64 = f
        .terms()
        .map(|(a, l)| a.abs().powf(p) / (p * l + 1.0))
        .sum();
    s.powf(1.0 / p)
}

#[derive(Clone, Debug, Serialize)]
pub struct GmRatio {
    pub min_ratio: f64,
    pub max_ratio: f64,
    pub random_trials: usize,
    pub basis_trials: usize,
    /// `true` when norms came from the exact Gram form.
    pub exact_gram: bool,
    /// The sequence is not lacunary; the bracket need not stay bounded.
    pub non_lacunary_warning: bool,
}

/// Bracket of `‖Σ b_n t^{λ_n}‖_{L^p(μ)} / (Σ |b_n|^p/(pλ_n+1))^{1/p}` over
/// `trials` random vectors with uniform `[−1, 1]` entries plus every
/// canonical basis vector.
pub fn gm_ratio_sample(
    seq: &ExponentSequence,
    p: f64,
    mu: &Measure,
    trials: usize,
    seed: u64,
) -> Result<GmRatio> {
    if !(p >= 1.0) {
        return invalid(format!("p must be >= 1, got {p}"));
    }
    let n = seq.len();
    let exact = p == 2.0;
    let norm = |coeffs: Vec<f64>| -> Result<f64> {
        let f = MuntzPolynomial::new(seq, coeffs)?;
        let num = if exact {
            l2_norm_gram(&f, mu)?
        } else {
            lp_norm(&f, mu, p)?
        };
        Ok(num / canonical_norm(&f, p))
    };
    let random: Vec<f64> = (0..trials)
        .into_par_iter()
        .map(|trial| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(trial as u64);
            let coeffs: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..=1.0)).collect();
            norm(coeffs)
        })
        .collect::<Result<_>>()?;
    let basis: Vec<f64> = (0..n)
        .into_par_iter()
        .map(|k| {
            let mut c = vec![0.0; n];
            c[k] = 1.0;
            norm(c)
        })
        .collect::<Result<_>>()?;
    let all = random.iter().chain(&basis);
    Ok(GmRatio {
        min_ratio: all.clone().copied().fold(f64::INFINITY, f64::min),
        max_ratio: all.copied().fold(0.0, f64::max),
        random_trials: trials,
        basis_trials: n,
        exact_gram: exact,
        non_lacunary_warning: !classify(seq).map(|c| c.is_lacunary).unwrap_or(false),
    })
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct AmGmProbe {
    /// `N^{p+1} / Σ_{j∈A} q_j`, a lower bound for `‖J_Λ 1_A‖_p^p`.
    pub norm_lower_bound: f64,
    /// `(Σ_{j∈A} 1/q_j)^{1/p}`.
    pub coeff_norm: f64,
    /// `norm_lower_bound^{1/p} / coeff_norm`.
    pub ratio: f64,
}

/// AM–GM lower bound for the block `A = {block_start, …, block_start+N−1}`,
/// with `q_j = pλ_j + 1`.
pub fn amgm_probe(
    seq: &ExponentSequence,
    p: f64,
    block_start: usize,
    block_len: usize,
) -> Result<AmGmProbe> {
    if !(p >= 1.0) {
        return invalid(format!("p must be >= 1, got {p}"));
    }
    if block_len == 0 || block_start + block_len > seq.len() {
        return invalid(format!(
            "block [{block_start}, {}) outside the prefix of length {}",
            block_start + block_len,
            seq.len()
        ));
    }
    let q: Vec<f64> = seq.as_slice()[block_start..block_start + block_len]
        .iter()
        .map(|l| p * l + 1.0)
        .collect();
    let n = block_len as f64;
    let lower = n.powf(p + 1.0) / q.iter().sum::<f64>();
    let coeff_norm = q.iter().map(|x| 1.0 / x).sum::<f64>().powf(1.0 / p);
    Ok(AmGmProbe {
        norm_lower_bound: lower,
        coeff_norm,
        ratio: lower.powf(1.0 / p) / coeff_norm,
    })
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct Pairing {
    /// `∫ f_{n+1} f_n^{p−1} dt` for the normalised monomials `f_k = q_k^{1/p} t^{λ_k}`.
    pub value: f64,
    /// `q_n / q_{n+1}`.
    pub lower_bound: f64,
}

pub fn pairing_integral(seq: &ExponentSequence, p: f64, n: usize) -> Result<Pairing> {
    if !(p >= 1.0) {
        return invalid(format!("p must be >= 1, got {p}"));
    }
    if n + 1 >= seq.len() {
        return invalid(format!(
            "n + 1 = {} outside the prefix of length {}",
            n + 1,
            seq.len()
        ));
    }
    let (ln, ln1) = (seq.get(n), seq.get(n + 1));
    let (qn, qn1) = (p * ln + 1.0, p * ln1 + 1.0);
    let inv_pc = 1.0 / conjugate(p);
    let log_value = qn1.ln() / p + qn.ln() * inv_pc - ((p - 1.0) * ln + ln1 + 1.0).ln();
    Ok(Pairing {
        value: log_value.exp(),
        lower_bound: qn / qn1,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sequences::generate_geometric;

    fn seq(v: &[f64]) -> ExponentSequence {
        ExponentSequence::new(v.to_vec()).unwrap()
    }

    #[test]
    fn eval_examples() {
        let s = seq(&[3.0]);
        assert_eq!(
            eval_poly(&MuntzPolynomial::new(&s, vec![1.0]).unwrap(), 0.5).unwrap(),
            0.125
        );
        let s = seq(&[1.0, 2.0]);
        let f = MuntzPolynomial::new(&s, vec![1.0, -1.0]).unwrap();
        assert!((eval_poly(&f, 0.5).unwrap() - 0.25).abs() < 1e-16);
        assert!(eval_poly(&f, 1.0).is_err());
        let s = seq(&[0.0, 1.0]);
        let f = MuntzPolynomial::new(&s, vec![2.5, 7.0]).unwrap();
        assert_eq!(eval_poly(&f, 0.0).unwrap(), 2.5);
    }

    #[test]
    fn norm_examples() {
        let s = seq(&[1.0, 2.0]);
        let f = MuntzPolynomial::new(&s, vec![1.0, -1.0]).unwrap();
        let v = lp_norm(&f, &Measure::lebesgue(), 2.0).unwrap();
        assert!((v - (1.0f64 / 30.0).sqrt()).abs() < 1e-12);
        assert!((v - 0.182574).abs() < 1e-6);
        for (l, p) in [(0.5, 3.0), (1e6, 1.5), (7.0, 1.0)] {
            let s = seq(&[l]);
            let f = MuntzPolynomial::new(&s, vec![1.0]).unwrap();
            let v = lp_norm(&f, &Measure::lebesgue(), p).unwrap();
            assert!((v - (p * l + 1.0).powf(-1.0 / p)).abs() < 1e-15);
        }
    }

    #[test]
    fn quadrature_matches_gram() {
        let s = generate_geometric(1.0, 2.0, 12).unwrap();
        let f = MuntzPolynomial::new(
            &s,
            (0..12).map(|k| ((k * 7 % 5) as f64 - 2.0) / 3.0).collect(),
        )
        .unwrap();
        let q = lp_norm(&f, &Measure::lebesgue(), 2.0).unwrap();
        let g = l2_norm_gram(&f, &Measure::lebesgue()).unwrap();
        assert!((q - g).abs() < 1e-10 * g, "{q} vs {g}");
    }

    #[test]
    fn huge_exponents_refused_on_lebesgue() {
        let s = seq(&[1.0, 1e13]);
        let f = MuntzPolynomial::new(&s, vec![1.0, 1.0]).unwrap();
        assert!(lp_norm(&f, &Measure::lebesgue(), 3.0).is_err());
        let mu = Measure::atoms_at(&[(0.5, 1.0)]).unwrap();
        assert!(lp_norm(&f, &mu, 3.0).is_ok());
    }

    #[test]
    fn gm_single_terms_are_exactly_one() {
        let s = generate_geometric(1.0, 3.0, 6).unwrap();
        for p in [1.0, 2.0, 3.0] {
            let r = gm_ratio_sample(&s, p, &Measure::lebesgue(), 0, 1).unwrap();
            assert_eq!((r.min_ratio, r.max_ratio), (1.0, 1.0));
        }
    }

    #[test]
    fn gm_near_isometry_and_p1_contraction() {
        let s = generate_geometric(1000.0, 300.0, 8).unwrap();
        let r = gm_ratio_sample(&s, 2.0, &Measure::lebesgue(), 200, 7).unwrap();
        assert!(r.min_ratio >= 0.5 && r.max_ratio <= 1.5);
        assert!(r.exact_gram && !r.non_lacunary_warning);
        let s = generate_geometric(1.0, 2.0, 8).unwrap();
        let r = gm_ratio_sample(&s, 1.0, &Measure::lebesgue(), 50, 7).unwrap();
        assert!(r.max_ratio <= 1.0 + 1e-12);
        let again = gm_ratio_sample(&s, 1.0, &Measure::lebesgue(), 50, 7).unwrap();
        assert_eq!(r.min_ratio, again.min_ratio);
    }

    #[test]
    fn amgm_examples() {
        let s = seq(&[0.0, 1.0, 2.0, 3.0, 4.0, 5.0]);
        let a = amgm_probe(&s, 2.0, 1, 4).unwrap();
        assert!((a.norm_lower_bound - 64.0 / 24.0).abs() < 1e-14);
        let expect = (1.0f64 / 3.0 + 0.2 + 1.0 / 7.0 + 1.0 / 9.0).sqrt();
        assert!((a.coeff_norm - expect).abs() < 1e-14);
        let one = amgm_probe(&s, 2.0, 3, 1).unwrap();
        assert!((one.norm_lower_bound - 1.0 / 7.0).abs() < 1e-16);
        assert!((one.ratio - 1.0).abs() < 1e-15);
        assert!(amgm_probe(&s, 2.0, 4, 3).is_err());
    }

    #[test]
    fn amgm_trends() {
        let arith = ExponentSequence::new((0..400).map(f64::from).collect()).unwrap();
        let r: Vec<f64> = [10, 40, 160]
            .iter()
            .map(|&n| amgm_probe(&arith, 2.0, 1, n).unwrap().ratio)
            .collect();
        assert!(r[0] < r[1] && r[1] < r[2]);
        let lac = generate_geometric(1.0, 2.0, 60).unwrap();
        let r: Vec<f64> = [5, 20, 59]
            .iter()
            .map(|&n| amgm_probe(&lac, 2.0, 0, n).unwrap().ratio)
            .collect();
        assert!(r.iter().all(|x| *x < 2.0));
    }

    #[test]
    fn pairing_examples() {
        let s = seq(&[1.0, 2.0]);
        let v = pairing_integral(&s, 2.0, 0).unwrap();
        assert!((v.value - 15f64.sqrt() / 4.0).abs() < 1e-15);
        assert!((v.lower_bound - 0.6).abs() < 1e-16);
        assert!(pairing_integral(&s, 2.0, 1).is_err());
    }
}
