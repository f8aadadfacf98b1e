//! Named verification suites.
//!
//! Every suite returns a [`SuiteReport`] of checks. Exact finite
//! inequalities with explicit constants are `Pass`/`Fail`; asymptotic or
//! constant-free statements are reported as `Evidence` together with the
//! numbers, and turn into `Fail` only when the observed trend contradicts
//! them on the inspected window.

use std::collections::BTreeMap;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::bounds::{envelope_check, jlambda_upper, lemma31_bound, r_epsilon, DyadicGrid};
use crate::counterexamples::{build_example, check_example_claims, ExampleLabel, TrendOptions};
use crate::dnp::{compute_dn, operator_bounds, BoundOptions, WeightScheme};
use crate::error::{invalid, Error, Result};
use crate::hilbert::{
    embedding_spectrum, essential_norm_estimate, frame_spectrum, hs_criteria, t_mu_spectrum,
};
use crate::logvalue::LogValue;
use crate::lpnorm::{
    amgm_probe, gm_ratio_sample, lp_norm, pairing_integral, MuntzPolynomial,
    MAX_QUADRATURE_EXPONENT,
};
use crate::measures::{sublinear_norm, EpsGrid, Measure};
use crate::sequences::{classify, ExponentSequence};

pub const SCHEMA_VERSION: &str = "muntz-report/1";

/// Relative slack for comparisons of two computed floating-point quantities.
pub const COMPARE_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Pass,
    Evidence,
    Fail,
}

impl Status {
    fn exact(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    fn trend(ok: bool) -> Self {
        if ok {
            Status::Evidence
        } else {
            Status::Fail
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    /// The statement being tested, in words.
    pub statement: String,
    /// Library operation that produced the numbers.
    pub operation: String,
    pub values: BTreeMap<String, Value>,
    pub detail: String,
}

impl Check {
    fn new(name: impl Into<String>, status: Status, statement: &str, operation: &str) -> Self {
        Check {
            name: name.into(),
            status,
            statement: statement.to_string(),
            operation: operation.to_string(),
            values: BTreeMap::new(),
            detail: String::new(),
        }
    }

    fn value(mut self, key: &str, v: impl Serialize) -> Self {
        self.values.insert(key.to_string(), json!(v));
        self
    }

    fn detail(mut self, d: impl Into<String>) -> Self {
        self.detail = d.into();
        self
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SuiteId {
    Gm,
    Th35,
    Cor36,
    Lemma27,
    Lemma31,
    Prop26,
    Th34Probe,
    Carleson,
    Compact,
    Hs,
    ExA,
    ExB,
}

impl SuiteId {
    pub const ALL: [SuiteId; 12] = [
        SuiteId::Gm,
        SuiteId::Th35,
        SuiteId::Cor36,
        SuiteId::Lemma27,
        SuiteId::Lemma31,
        SuiteId::Prop26,
        SuiteId::Th34Probe,
        SuiteId::Carleson,
        SuiteId::Compact,
        SuiteId::Hs,
        SuiteId::ExA,
        SuiteId::ExB,
    ];

    pub fn id(&self) -> &'static str {
        match self {
            SuiteId::Gm => "gm",
            SuiteId::Th35 => "th35",
            SuiteId::Cor36 => "cor36",
            SuiteId::Lemma27 => "lemma27",
            SuiteId::Lemma31 => "lemma31",
            SuiteId::Prop26 => "prop26",
            SuiteId::Th34Probe => "th34-probe",
            SuiteId::Carleson => "carleson",
            SuiteId::Compact => "compact",
            SuiteId::Hs => "hs",
            SuiteId::ExA => "ex-a",
            SuiteId::ExB => "ex-b",
        }
    }

    /// Descriptive alias accepted alongside the short id.
    pub fn alias(&self) -> &'static str {
        match self {
            SuiteId::Gm => "frame",
            SuiteId::Th35 => "near-isometry",
            SuiteId::Cor36 => "pairing",
            SuiteId::Lemma27 => "envelope",
            SuiteId::Lemma31 => "double-sum",
            SuiteId::Prop26 => "domination",
            SuiteId::Th34Probe => "amgm",
            SuiteId::Carleson => "bounded",
            SuiteId::Compact => "compactness",
            SuiteId::Hs => "hilbert-schmidt",
            SuiteId::ExA => "example-a",
            SuiteId::ExB => "example-b",
        }
    }

    pub fn needs_measure(&self) -> bool {
        matches!(
            self,
            SuiteId::Prop26 | SuiteId::Carleson | SuiteId::Compact | SuiteId::Hs
        )
    }
}

impl FromStr for SuiteId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        SuiteId::ALL
            .iter()
            .copied()
            .find(|id| id.id() == s || id.alias() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown suite {s:?}")))
    }
}

/// Inputs shared by all suites. Unused fields are ignored.
#[derive(Clone, Debug)]
pub struct SuiteInputs {
    pub seq: ExponentSequence,
    pub seq_label: String,
    pub mu: Measure,
    pub mu_label: String,
    pub p: f64,
    pub q_list: Vec<f64>,
    /// Truncation order `N`.
    pub n: usize,
    pub tol: f64,
    pub seed: u64,
    pub trials: usize,
    /// `ε` of the near-isometry suite.
    pub eps: f64,
    /// Materialised indices of the counterexamples.
    pub count: Option<usize>,
}

impl SuiteInputs {
    pub fn new(seq: ExponentSequence, mu: Measure) -> Self {
        let n = seq.len().min(crate::hilbert::DEFAULT_N);
        SuiteInputs {
            seq_label: format!("explicit({} exponents)", seq.len()),
            mu_label: mu.describe(),
            seq,
            mu,
            p: 2.0,
            q_list: Vec::new(),
            n,
            tol: 1e-14,
            seed: 0,
            trials: 100,
            eps: 0.5,
            count: None,
        }
    }

    fn prefix(&self) -> Result<ExponentSequence> {
        self.seq.prefix(self.n)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct InputSummary {
    pub sequence: String,
    pub sequence_len: usize,
    pub measure: String,
    pub p: f64,
    pub q: Vec<f64>,
    pub n: usize,
    pub tol: f64,
    pub seed: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub schema: &'static str,
    pub suite: SuiteId,
    pub inputs: InputSummary,
    pub status: Status,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.status != Status::Fail
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }
}

pub fn run_suite(id: SuiteId, inputs: &SuiteInputs) -> Result<SuiteReport> {
    if inputs.n == 0 || inputs.n > inputs.seq.len() {
        return invalid(format!(
            "N must be in 1..={}, got {}",
            inputs.seq.len(),
            inputs.n
        ));
    }
    let checks = match id {
        SuiteId::Gm => suite_gm(inputs)?,
        SuiteId::Th35 => suite_near_isometry(inputs)?,
        SuiteId::Cor36 => suite_pairing(inputs)?,
        SuiteId::Lemma27 => suite_envelope(inputs)?,
        SuiteId::Lemma31 => suite_double_sum(inputs)?,
        SuiteId::Prop26 => suite_domination(inputs)?,
        SuiteId::Th34Probe => suite_amgm(inputs)?,
        SuiteId::Carleson => suite_carleson(inputs)?,
        SuiteId::Compact => suite_compact(inputs)?,
        SuiteId::Hs => suite_hs(inputs)?,
        SuiteId::ExA => suite_example(ExampleLabel::A, inputs)?,
        SuiteId::ExB => suite_example(ExampleLabel::B, inputs)?,
    };
    let status = checks
        .iter()
        .map(|c| c.status)
        .max()
        .unwrap_or(Status::Pass);
    let (sequence, measure) = match id {
        SuiteId::ExA | SuiteId::ExB => ("constructed".to_string(), "constructed atoms".to_string()),
        _ => (inputs.seq_label.clone(), inputs.mu_label.clone()),
    };
    Ok(SuiteReport {
        schema: SCHEMA_VERSION,
        suite: id,
        inputs: InputSummary {
            sequence,
            sequence_len: inputs.seq.len(),
            measure,
            p: inputs.p,
            q: inputs.q_list.clone(),
            n: inputs.n,
            tol: inputs.tol,
            seed: inputs.seed,
        },
        status,
        checks,
    })
}

fn le(a: f64, b: f64) -> bool {
    a <= b + COMPARE_TOL * b.abs().max(1.0)
}

fn suite_gm(inp: &SuiteInputs) -> Result<Vec<Check>> {
    let seq = inp.prefix()?;
    let spec = frame_spectrum(&seq, inp.n)?;
    let mut out = Vec::new();
    let r_q = seq.shifted_ratio(2.0).unwrap_or(f64::INFINITY);
    let c = Check::new(
        "frame_upper_bound",
        Status::Evidence,
        "when 2λ_n+1 is r-lacunary, the largest singular value of J_Λ is at most the explicit lacunary constant",
        "hilbert::frame_spectrum, bounds::jlambda_upper",
    )
    .value("sigma_max", spec.sigma_max())
    .value("r_q", r_q);
    out.push(if r_q > 1.0 && r_q.is_finite() {
        let b = jlambda_upper(2.0, r_q)?;
        Check {
            status: Status::exact(spec.sigma_max() <= b.upper_bound),
            ..c.value("upper_bound", b.upper_bound)
        }
    } else {
        c.detail("not lacunary on the prefix; the bound does not apply")
    });
    out.push(
        Check::new(
            "frame_lower_bound",
            Status::trend(spec.sigma_min() > 0.0),
            "normalised monomials over a lacunary sequence have a positive lower Riesz bound",
            "hilbert::frame_spectrum",
        )
        .value("sigma_min", spec.sigma_min())
        .value("sigma_max", spec.sigma_max()),
    );
    let p = inp.p;
    let exceeds = seq.last() > MAX_QUADRATURE_EXPONENT && p != 2.0;
    if exceeds {
        out.push(
            Check::new(
                "basis_equivalence_ratio",
                Status::Evidence,
                "‖Σ b_n t^λ_n‖_p is comparable to (Σ |b_n|^p/(pλ_n+1))^(1/p)",
                "lpnorm::gm_ratio_sample",
            )
            .detail("exponents too large for L^p quadrature; skipped"),
        );
        return Ok(out);
    }
    let gm = gm_ratio_sample(&seq, p, &Measure::lebesgue(), inp.trials, inp.seed)?;
    let mut c = Check::new(
        "basis_equivalence_ratio",
        Status::Evidence,
        "‖Σ b_n t^λ_n‖_p is comparable to (Σ |b_n|^p/(pλ_n+1))^(1/p)",
        "lpnorm::gm_ratio_sample",
    )
    .value("min_ratio", gm.min_ratio)
    .value("max_ratio", gm.max_ratio)
    .value("trials", gm.random_trials + gm.basis_trials)
    .value("non_lacunary_warning", gm.non_lacunary_warning);
    if p == 2.0 {
        let ok = gm.min_ratio >= spec.sigma_min() * (1.0 - COMPARE_TOL)
            && le(gm.max_ratio, spec.sigma_max());
        c.status = Status::exact(ok);
        c.detail = "p = 2: the sampled bracket must lie inside [sigma_min, sigma_max]".into();
    } else if p == 1.0 {
        c.status = Status::exact(le(gm.max_ratio, 1.0));
        c.detail = "p = 1: the triangle inequality caps the ratio at 1".into();
    }
    out.push(c);
    Ok(out)
}

fn suite_near_isometry(inp: &SuiteInputs) -> Result<Vec<Check>> {
    let seq = inp.prefix()?;
    let eps = inp.eps;
    let r_eps = r_epsilon(2.0, eps)?;
    let r_q = seq.shifted_ratio(2.0).unwrap_or(f64::INFINITY);
    let spec = frame_spectrum(&seq, inp.n)?;
    let inside = spec
        .singular_values
        .iter()
        .all(|s| (1.0 - eps..=1.0 + eps).contains(s));
    let c = Check::new(
        "near_isometry",
        Status::Evidence,
        "if 2λ_n+1 is r_ε-lacunary, every singular value of J_Λ lies in [1−ε, 1+ε]",
        "hilbert::frame_spectrum, bounds::r_epsilon",
    )
    .value("eps", eps)
    .value("r_eps", r_eps)
    .value("r_q", r_q)
    .value("sigma_min", spec.sigma_min())
    .value("sigma_max", spec.sigma_max());
    let mut out = vec![if r_q >= r_eps {
        Check {
            status: Status::exact(inside),
            ..c
        }
    } else {
        c.detail(format!(
            "ratio {r_q} below r_eps = {r_eps}; bracket reported only"
        ))
    }];
    let p = inp.p;
    if p != 2.0 && p > 1.0 {
        let r_p = r_epsilon(p, eps)?;
        let r_qp = seq.shifted_ratio(p).unwrap_or(f64::INFINITY);
        let mut c = Check::new(
            "near_isometry_p",
            Status::Evidence,
            "if pλ_n+1 is r_ε-lacunary, the sampled basis-equivalence ratio lies in [1−ε, 1+ε]",
            "lpnorm::gm_ratio_sample, bounds::r_epsilon",
        )
        .value("r_eps", r_p)
        .value("r_q", r_qp);
        if seq.last() > MAX_QUADRATURE_EXPONENT {
            c.detail = "exponents too large for L^p quadrature; skipped".into();
        } else {
            let gm = gm_ratio_sample(&seq, p, &Measure::lebesgue(), inp.trials, inp.seed)?;
            c = c
                .value("min_ratio", gm.min_ratio)
                .value("max_ratio", gm.max_ratio);
            if r_qp >= r_p {
                c.status = Status::exact(gm.min_ratio >= 1.0 - eps && gm.max_ratio <= 1.0 + eps);
            }
        }
        out.push(c);
    }
    Ok(out)
}

fn suite_pairing(inp: &SuiteInputs) -> Result<Vec<Check>> {
    let seq = inp.prefix()?;
    let p = inp.p;
    let pairs: Vec<_> = (0..seq.len().saturating_sub(1))
        .map(|n| pairing_integral(&seq, p, n))
        .collect::<Result<_>>()?;
    if pairs.is_empty() {
        return invalid("the pairing suite needs N >= 2");
    }
    let values: Vec<f64> = pairs.iter().map(|x| x.value).collect();
    let bounds: Vec<f64> = pairs.iter().map(|x| x.lower_bound).collect();
    let ok = pairs
        .iter()
        .all(|x| x.value >= x.lower_bound * (1.0 - 1e-12));
    let mut out = vec![Check::new(
        "pairing_lower_bound",
        Status::exact(ok),
        "∫ f_{n+1} f_n^{p−1} dt ≥ q_n/q_{n+1} for normalised monomials",
        "lpnorm::pairing_integral",
    )
    .value("values", &values)
    .value("lower_bounds", &bounds)];
    let cls = classify(&seq)?;
    let increasing = cls.flags.iter().any(|f| f.contains("super-lacunary"));
    let tail_min = values.iter().copied().fold(f64::INFINITY, f64::min);
    let decreasing = values.windows(2).all(|w| w[1] < w[0]);
    let (ok, detail) = if increasing {
        (
            decreasing,
            "super-lacunary trend: pairings should decrease toward 0",
        )
    } else if cls.is_quasi_geometric {
        (
            tail_min > 0.0,
            "quasi-geometric: pairings stay bounded below, so no asymptotic isometry",
        )
    } else {
        (true, "no trend asserted")
    };
    out.push(
        Check::new(
            "pairing_trend",
            Status::trend(ok),
            "pairings vanish along super-lacunary sequences and stay away from 0 along quasi-geometric ones",
            "lpnorm::pairing_integral, sequences::classify",
        )
        .value("last", values.last())
        .value("min", tail_min)
        .detail(detail),
    );
    Ok(out)
}

fn suite_envelope(inp: &SuiteInputs) -> Result<Vec<Check>> {
    let alphas = if inp.q_list.is_empty() {
        vec![0.5, 1.0, 2.0]
    } else {
        inp.q_list.clone()
    };
    let mut out = Vec::new();
    for a in alphas {
        let rep = envelope_check(&inp.seq, a, &DyadicGrid::default(), inp.tol)?;
        let ok = rep.ratio_min > 0.0 && rep.ratio_max.is_finite();
        let c = Check::new(
            format!("envelope_positive_finite_alpha={a}"),
            if ok && !rep.truncation_safe {
                Status::Evidence
            } else {
                Status::exact(ok)
            },
            "(1−t)^α Σ λ_n^α t^λ_n stays positive and bounded on t = 1 − 2^(−j)",
            "bounds::envelope_check",
        )
        .value("ratio_min", rep.ratio_min)
        .value("ratio_max", rep.ratio_max)
        .value("truncation_safe", rep.truncation_safe);
        out.push(if rep.truncation_safe {
            c
        } else {
            c.detail("the prefix ends before the series settles near t = 1; lengthen the sequence")
        });
        out.push(
            Check::new(
                format!("envelope_bracket_alpha={a}"),
                Status::Evidence,
                "the two-sided bracket of (1−t)^α Σ λ_n^α t^λ_n over the grid",
                "bounds::envelope_check",
            )
            .value("c1", rep.ratio_min)
            .value("c2", rep.ratio_max)
            .value("width", rep.ratio_max / rep.ratio_min),
        );
    }
    Ok(out)
}

fn suite_double_sum(inp: &SuiteInputs) -> Result<Vec<Check>> {
    let p = inp.p;
    if !(p > 1.0) {
        return Ok(vec![Check::new(
            "double_sum_bound",
            Status::Evidence,
            "lacunary double-sum inequality",
            "bounds::lemma31_bound",
        )
        .detail("needs p > 1")]);
    }
    let q = inp.prefix()?.shifted(p);
    let r = crate::sequences::min_ratio(&q).unwrap_or(f64::INFINITY);
    let mut out = Vec::new();
    let mut alphas = vec![1.0 / (p - 1.0), 1.0];
    alphas.dedup();
    for alpha in alphas {
        let c = Check::new(
            format!("double_sum_alpha={alpha}"),
            Status::Evidence,
            "sup_n Σ_{k≠n} (q_n^{1/p} q_k^{1/p'}/(q_n/p + q_k/p'))^α ≤ p'^α/(r^{α/p}−1) + p^α/(r^{α/p'}−1)",
            "bounds::lemma31_bound",
        )
        .value("r", r);
        out.push(if r > 1.0 && r.is_finite() {
            let (lhs, rhs) = lemma31_bound(p, alpha, &q, r)?;
            Check {
                status: Status::exact(lhs <= rhs),
                ..c.value("lhs", lhs).value("rhs", rhs)
            }
        } else {
            c.detail("q_n = pλ_n+1 is not lacunary on the prefix")
        });
    }
    Ok(out)
}

/// `‖Σ b_n t^{λ_n}‖_{L^p(μ)} ≤ (Σ |b_n|^p w_n D_n(p)^p)^{1/p}` on random `b`.
pub fn domination_trials(
    seq: &ExponentSequence,
    mu: &Measure,
    p: f64,
    trials: usize,
    seed: u64,
    tol: f64,
) -> Result<(bool, f64)> {
    let weight = WeightScheme::inverse_lambda(p)?;
    let profile = compute_dn(seq, mu, weight, seq.len(), tol)?;
    let mut worst = f64::NEG_INFINITY;
    let mut ok = true;
    for trial in 0..trials {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(trial as u64);
        let b: Vec<f64> = (0..seq.len()).map(|_| rng.gen_range(-1.0..=1.0)).collect();
        let f = MuntzPolynomial::new(seq, b.clone())?;
        let lhs = lp_norm(&f, mu, p)?;
        let rhs: f64 = b
            .iter()
            .zip(seq.as_slice())
            .zip(&profile.values)
            .map(|((b, l), d)| b.abs().powf(p) * weight.weight(*l) * d.powf(p))
            .sum::<f64>()
            .powf(1.0 / p);
        ok &= lhs <= rhs + 1e-9;
        worst = worst.max(lhs - rhs);
    }
    Ok((ok, worst))
}

fn suite_domination(inp: &SuiteInputs) -> Result<Vec<Check>> {
    let seq = inp.prefix()?;
    let p = inp.p;
    let mut out = Vec::new();
    let profile = compute_dn(
        &seq,
        &inp.mu,
        WeightScheme::inverse_lambda(p)?,
        seq.len(),
        inp.tol,
    )?;
    let bounds = operator_bounds(&profile, &inp.mu, &BoundOptions::default())?;
    if inp.mu.is_atomic() || seq.last() <= MAX_QUADRATURE_EXPONENT {
        let (ok, worst) = domination_trials(&seq, &inp.mu, p, inp.trials, inp.seed, inp.tol)?;
        out.push(
            Check::new(
                "diagonal_domination",
                Status::exact(ok),
                "‖Σ b_n t^λ_n‖_{L^p(μ)} ≤ (Σ |b_n|^p w_n D_n(p)^p)^(1/p) with w_n = 1/λ_n",
                "dnp::compute_dn, lpnorm::lp_norm",
            )
            .value("trials", inp.trials)
            .value("worst_gap", worst),
        );
    }
    out.push(
        Check::new(
            "operator_norm_bound",
            Status::Evidence,
            "‖T_μ‖ ≤ sup_n D_n(p); the trailing maximum estimates the essential-norm bound",
            "dnp::operator_bounds",
        )
        .value("sup_dn", bounds.sup_dn)
        .value("limsup_estimate", bounds.limsup_estimate)
        .value("nuclear_bound", bounds.nuclear_bound)
        .value("truncation_safe", profile.all_safe()),
    );
    if p == 2.0 {
        let t = t_mu_spectrum(&seq, &inp.mu, inp.n, inp.tol)?;
        out.push(
            Check::new(
                "approximation_chain",
                Status::exact(t.chain.holds),
                "σ_{k+1}(T_μ) ≤ k-th entry of the decreasing rearrangement of D_n(2)",
                "hilbert::t_mu_spectrum",
            )
            .value("sigma", &t.chain.sigma)
            .value("bound", &t.chain.bound)
            .value("worst_gap", t.chain.worst_gap),
        );
        let schatten_ok = bounds
            .schatten_bounds
            .iter()
            .all(|(r, b)| le(t.spectrum.schatten_norm(*r), *b));
        out.push(
            Check::new(
                "schatten_bounds",
                Status::exact(schatten_ok && le(t.spectrum.schatten_norm(1.0), bounds.nuclear_bound)),
                "‖T_μ‖_{S^r} ≤ ‖(D_n(2))‖_{ℓ^r}, and the nuclear norm is at most Σ w_n^(−1/2) ‖t^λ_n‖_{L²(μ)}",
                "hilbert::t_mu_spectrum, dnp::operator_bounds",
            )
            .value("schatten", &t.spectrum.schatten)
            .value("bounds", &bounds.schatten_bounds),
        );
    }
    Ok(out)
}

fn suite_amgm(inp: &SuiteInputs) -> Result<Vec<Check>> {
    let seq = &inp.seq;
    let start = 0;
    let mut sizes = Vec::new();
    let mut n = 1;
    while start + n <= seq.len() {
        sizes.push(n);
        n *= 2;
    }
    if *sizes.last().unwrap() != seq.len() {
        sizes.push(seq.len());
    }
    let probes: Vec<_> = sizes
        .iter()
        .map(|&k| amgm_probe(seq, inp.p, start, k))
        .collect::<Result<_>>()?;
    let ratios: Vec<f64> = probes.iter().map(|x| x.ratio).collect();
    let cls = classify(seq)?;
    let growing = ratios.windows(2).all(|w| w[1] > w[0]);
    Ok(vec![Check::new(
        "amgm_growth",
        Status::Evidence,
        "the AM–GM lower bound for ‖J_Λ 1_A‖/‖1_A‖ stays bounded along lacunary sequences and grows otherwise",
        "lpnorm::amgm_probe",
    )
    .value("block_sizes", &sizes)
    .value("ratios", &ratios)
    .value("lacunary", cls.is_lacunary)
    .value("strictly_growing", growing)])
}

/// `‖μ‖_S` over the range of `ε` where the quasi-geometric bound applies:
/// `ε ∈ [1/(pRλ_{N−1}), 1/(pλ_{n₀})]` with `n₀` the first index with
/// `pλ_{n₀} ≥ 6`. Returns `None` when no index qualifies.
pub fn sublinear_window(seq: &ExponentSequence, p: f64, r_sup: f64) -> Option<EpsGrid> {
    let lam = seq.as_slice();
    let first = lam.iter().find(|l| p * **l >= 6.0)?;
    let eps_max = 1.0 / (p * first);
    let eps_min = 1.0 / (p * r_sup * seq.last());
    (eps_min < eps_max).then_some(EpsGrid {
        eps_min,
        eps_max,
        factor: 2.0,
    })
}

/// `sup_n λ_n ∫ t^{pλ_n} dμ` over the sequence.
pub fn bp_constant(seq: &ExponentSequence, mu: &Measure, p: f64) -> Result<Vec<f64>> {
    seq.as_slice()
        .iter()
        .map(|&l| Ok((LogValue::from_f64(l) * mu.moment(p * l)?).to_f64()))
        .collect()
}

fn suite_carleson(inp: &SuiteInputs) -> Result<Vec<Check>> {
    let seq = inp.prefix()?;
    let p = inp.p;
    let mu = &inp.mu;
    let m = bp_constant(&seq, mu, p)?;
    let sup_m = m.iter().copied().fold(0.0, f64::max);
    let cls = classify(&seq)?;
    let mut out = vec![Check::new(
        "monomial_test_constant",
        Status::Evidence,
        "the monomial test constant sup_n λ_n ∫ t^{pλ_n} dμ",
        "measures::moment",
    )
    .value("sup_m", sup_m)
    .value("m", &m)];

    let c = Check::new(
        "sublinear_from_monomial_test",
        Status::Evidence,
        "for quasi-geometric Λ with λ_{n+1} ≤ Rλ_n and small ε, μ([1−ε,1))/ε ≤ 3pR sup_n λ_n ∫ t^{pλ_n} dμ",
        "measures::sublinear_norm",
    );
    out.push(
        match (cls.is_quasi_geometric, sublinear_window(&seq, p, cls.r_sup)) {
            (true, Some(grid)) => {
                let s = sublinear_norm(mu, &grid)?;
                let rhs = 3.0 * p * cls.r_sup * sup_m;
                Check {
                    status: Status::exact(s.norm_s <= rhs),
                    ..c.value("norm_s", s.norm_s)
                        .value("rhs", rhs)
                        .value("r", cls.r_sup)
                        .value("eps_range", (grid.eps_min, grid.eps_max))
                }
            }
            (true, None) => c.detail("no index with pλ_n ≥ 6 on the prefix"),
            (false, _) => c.detail("not quasi-geometric on the prefix"),
        },
    );

    let q_list: Vec<f64> = if inp.q_list.is_empty() {
        vec![p + 1.0]
    } else {
        inp.q_list.clone()
    };
    for q in q_list.iter().copied().filter(|q| *q > p) {
        let prof = compute_dn(
            &seq,
            mu,
            WeightScheme::inverse_lambda(q)?,
            seq.len(),
            inp.tol,
        )?;
        out.push(
            Check::new(
                format!("dn_finite_q={q}"),
                Status::exact(sup_m.is_finite() && prof.sup().is_finite()),
                "a finite monomial test constant at p gives finite sup_n D_n(q) for q > p",
                "dnp::compute_dn",
            )
            .value("sup_dn", prof.sup())
            .value("truncation_safe", prof.all_safe()),
        );
    }
    if p == 2.0 || q_list.contains(&2.0) {
        let t = t_mu_spectrum(&seq, mu, inp.n, inp.tol)?;
        let sup_d2 = t.chain.bound[0];
        out.push(
            Check::new(
                "sigma1_below_sup_dn",
                Status::exact(le(t.chain.sigma[0], sup_d2)),
                "σ_1(T_μ) ≤ sup_n D_n(2)",
                "hilbert::t_mu_spectrum",
            )
            .value("sigma_1", t.chain.sigma[0])
            .value("sup_dn", sup_d2),
        );
    }
    // four-way comparison for quasi-geometric sequences
    let full = sublinear_norm(mu, &EpsGrid::default())?;
    let dp = compute_dn(
        &seq,
        mu,
        WeightScheme::inverse_lambda(p)?,
        seq.len(),
        inp.tol,
    )?;
    let mut c = Check::new(
        "sublinear_equivalence",
        Status::Evidence,
        "for quasi-geometric Λ, sublinearity, the monomial test, bounded D_n(p) and boundedness of the embedding are equivalent",
        "measures::sublinear_norm, dnp::compute_dn, hilbert::embedding_spectrum",
    )
    .value("norm_s", full.norm_s)
    .value("sup_m", sup_m)
    .value("sup_dn", dp.sup());
    if p == 2.0 {
        let e = embedding_spectrum(&seq, mu, inp.n)?;
        c = c.value("embedding_norm", e.sigma_max());
    }
    let finite = full.norm_s.is_finite() && sup_m.is_finite() && dp.sup().is_finite();
    c.status = Status::trend(finite);
    out.push(c);
    Ok(out)
}

fn suite_compact(inp: &SuiteInputs) -> Result<Vec<Check>> {
    let seq = inp.prefix()?;
    let p = inp.p;
    let mu = &inp.mu;
    let m = bp_constant(&seq, mu, p)?;
    let half = m.len() / 2;
    let tail_max = m[half..].iter().copied().fold(0.0, f64::max);
    let head_max = m[..half.max(1)].iter().copied().fold(0.0, f64::max);
    let mut out = vec![Check::new(
        "monomial_test_vanishing",
        Status::Evidence,
        "λ_n ∫ t^{pλ_n} dμ → 0 is necessary for compactness",
        "measures::moment",
    )
    .value("m", &m)
    .value("head_max", head_max)
    .value("tail_max", tail_max)
    .value("decreasing_trend", tail_max < head_max)];

    let cuts: Vec<f64> = (1..=10).map(|j| 1.0 - 0.5f64.powi(j)).collect();
    if p == 2.0 {
        let est = essential_norm_estimate(&seq, mu, inp.n, &cuts)?;
        out.push(
            Check::new(
                "essential_norm_trend",
                Status::Evidence,
                "σ_1 of the embedding over μ restricted near 1 tends to 0 for vanishing sublinear μ",
                "hilbert::essential_norm_estimate",
            )
            .value("cuts", &est.cuts)
            .value("decay_factor", est.decay_factor)
            .value("limit_proxy", est.limit_proxy),
        );
        let prof = compute_dn(
            &seq,
            mu,
            WeightScheme::inverse_lambda(2.0)?,
            seq.len(),
            inp.tol,
        )?;
        let m2 = bp_constant(&seq, mu, 2.0)?;
        let ok = m2.iter().zip(&prof.values).all(|(a, d)| le(*a, d * d));
        out.push(
            Check::new(
                "diagonal_below_dn_square",
                Status::exact(ok),
                "λ_n ∫ t^{2λ_n} dμ ≤ D_n(2)²",
                "dnp::compute_dn, measures::moment",
            )
            .value("m", &m2)
            .value("dn", &prof.values),
        );
    }
    let prof = compute_dn(
        &seq,
        mu,
        WeightScheme::inverse_lambda(p)?,
        seq.len(),
        inp.tol,
    )?;
    let b = operator_bounds(&prof, mu, &BoundOptions::default())?;
    out.push(
        Check::new(
            "dn_limsup",
            Status::Evidence,
            "the essential norm of T_μ is at most limsup_n D_n(p)",
            "dnp::operator_bounds",
        )
        .value("limsup_estimate", b.limsup_estimate)
        .value("window_len", b.window_len),
    );
    Ok(out)
}

fn suite_hs(inp: &SuiteInputs) -> Result<Vec<Check>> {
    let q_list = if inp.q_list.is_empty() {
        vec![2.0]
    } else {
        inp.q_list.clone()
    };
    let rep = hs_criteria(&inp.seq, &inp.mu, inp.n, &q_list, inp.tol)?;
    let mut out = Vec::new();
    let hs2 = rep.t_mu_hs_truncated * rep.t_mu_hs_truncated;
    out.push(
        Check::new(
            "hs_below_dn_squares",
            Status::exact(le(hs2, rep.dn_square_sum)),
            "the truncated Hilbert–Schmidt norm of T_μ satisfies HS² ≤ Σ_n D_n(2)²",
            "hilbert::hs_criteria",
        )
        .value("hs_squared", hs2)
        .value("dn_square_sum", rep.dn_square_sum),
    );
    if let Some((_, v2)) = rep.integral_values.iter().find(|(q, _)| *q == 2.0) {
        let (status, detail) = match (v2, rep.poisson_value) {
            (Some(a), Some(b)) => {
                let rel = ((a * a) - b).abs() / b.abs().max(f64::MIN_POSITIVE);
                (Status::exact(rel <= 1e-6), format!("relative gap {rel:e}"))
            }
            (None, None) => (Status::Pass, "both divergent".to_string()),
            _ => (
                Status::Fail,
                "one side divergent, the other finite".to_string(),
            ),
        };
        out.push(
            Check::new(
                "fubini_identity",
                status,
                "at q = 2 the integral expression squared equals ∫ dμ/(1−t)",
                "hilbert::schatten_integral, measures::poisson_integral",
            )
            .value("integral_q2_squared", v2.map(|a| a * a))
            .value("poisson", rep.poisson_value)
            .detail(detail),
        );
    }
    out.push(
        Check::new(
            "hs_three_way",
            Status::Evidence,
            "HS membership, finiteness of ∫ dμ/(1−t), and the integral expression agree",
            "hilbert::hs_criteria",
        )
        .value("hs_n", rep.hs_norm_truncated)
        .value("t_mu_hs_n", rep.t_mu_hs_truncated)
        .value("hs_half", rep.hs_half)
        .value("poisson", rep.poisson_value)
        .value("poisson_divergent", rep.poisson_divergent)
        .value("integral_values", &rep.integral_values)
        .value("flags", &rep.flags),
    );
    Ok(out)
}

fn suite_example(label: ExampleLabel, inp: &SuiteInputs) -> Result<Vec<Check>> {
    let p = inp.p;
    let count = inp.count.unwrap_or(match label {
        ExampleLabel::A => 20,
        ExampleLabel::B => 15,
    });
    let q_list = if !inp.q_list.is_empty() {
        inp.q_list.clone()
    } else {
        match label {
            ExampleLabel::A => vec![p, p + 1.0],
            ExampleLabel::B => vec![(p - 1.0).max(1.0)],
        }
    };
    let inst = build_example(label, p, count)?;
    let rep = check_example_claims(&inst, &q_list, &TrendOptions::default())?;
    Ok(rep
        .checks
        .iter()
        .map(|c| {
            Check::new(
                c.name.clone(),
                Status::trend(c.passed),
                match label {
                    ExampleLabel::A => "an atomic measure failing the embedding at p while the monomial test vanishes for q > p",
                    ExampleLabel::B => "an atomic measure with compact embedding at p whose monomial test blows up for q < p",
                },
                "counterexamples::check_example_claims",
            )
            .value("count", count)
            .value("truncated", rep.truncated)
            .detail(c.detail.clone())
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sequences::generate_geometric;

    fn inputs(seq: ExponentSequence, mu: Measure) -> SuiteInputs {
        SuiteInputs::new(seq, mu)
    }

    #[test]
    fn ids_roundtrip() {
        for id in SuiteId::ALL {
            assert_eq!(id.id().parse::<SuiteId>().unwrap(), id);
            assert_eq!(id.alias().parse::<SuiteId>().unwrap(), id);
        }
        assert!("nope".parse::<SuiteId>().is_err());
    }

    #[test]
    fn gm_passes_for_dyadic() {
        let inp = inputs(
            generate_geometric(1.0, 2.0, 16).unwrap(),
            Measure::lebesgue(),
        );
        let rep = run_suite(SuiteId::Gm, &inp).unwrap();
        assert!(rep.passed(), "{:#?}", rep.checks);
        assert_eq!(rep.check("frame_upper_bound").unwrap().status, Status::Pass);
    }

    #[test]
    fn carleson_lebesgue() {
        let mut inp = inputs(
            generate_geometric(1.0, 2.0, 16).unwrap(),
            Measure::lebesgue(),
        );
        inp.p = 1.0;
        let rep = run_suite(SuiteId::Carleson, &inp).unwrap();
        assert!(rep.passed(), "{:#?}", rep.checks);
        let sup = rep.check("monomial_test_constant").unwrap().values["sup_m"]
            .as_f64()
            .unwrap();
        assert!(sup < 1.0);
        assert_eq!(
            rep.check("sublinear_from_monomial_test").unwrap().status,
            Status::Pass
        );
    }

    #[test]
    fn report_json_is_deterministic() {
        let mu = Measure::atoms_at(&[(0.5, 1.0), (0.9, 0.1)]).unwrap();
        let inp = inputs(generate_geometric(1.0, 2.0, 10).unwrap(), mu);
        let a = run_suite(SuiteId::Prop26, &inp).unwrap().to_json().unwrap();
        let b = run_suite(SuiteId::Prop26, &inp).unwrap().to_json().unwrap();
        assert_eq!(a, b);
        assert!(a.contains("\"schema\": \"muntz-report/1\""));
    }
}
