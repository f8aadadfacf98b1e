//! Command-line front end.
//!
//! Exit codes: `0` when every check is PASS or EVIDENCE, `1` when any check
//! FAILs, `2` on usage errors and malformed inputs.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::bounds::{
    envelope_check, jlambda_upper, lemma31_bound, point_eval_norm, r_epsilon, DyadicGrid,
};
use crate::counterexamples::{build_example, check_example_claims, ExampleLabel, TrendOptions};
use crate::dnp::{compute_dn, operator_bounds, BoundOptions, WeightKind, WeightScheme};
use crate::error::{Error, Result};
use crate::hilbert::{embedding_spectrum, frame_spectrum, t_mu_spectrum, SpectralResult};
use crate::logvalue::LogValue;
use crate::lpnorm::{
    amgm_probe, eval_poly, gm_ratio_sample, lp_norm, pairing_integral, MuntzPolynomial,
};
use crate::measures::{sublinear_norm, EpsGrid, Measure};
use crate::sequences::{classify, ExponentSequence};
use crate::specs::{parse_coefficients, parse_measure, parse_sequence};
use crate::verify::{run_suite, Status, SuiteId, SuiteInputs, SuiteReport, SCHEMA_VERSION};

#[derive(Parser, Debug)]
#[command(
    name = "muntz",
    version,
    about = "Numerical laboratory for Müntz spaces"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Sequence spec (`geometric:1,2,16`, `explicit:…`, `recursive_power:…`) or file.
    #[arg(long)]
    pub seq: Option<String>,
    /// Measure spec or file; `atoms-file PATH` reads a line-oriented atom list.
    #[arg(long, num_args = 1..=2)]
    pub measure: Option<Vec<String>>,
    #[arg(long)]
    pub p: Option<f64>,
    /// Comma separated list.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    pub q: Vec<f64>,
    /// Truncation order.
    #[arg(long = "N")]
    pub n: Option<usize>,
    #[arg(long, default_value_t = 1e-14)]
    pub tol: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Directory for report files; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Lacunarity statistics of a sequence.
    Classify(Common),
    /// Moments, the monomial test and sublinearity of a measure.
    Moments(Common),
    /// The D_n(p) profile and its operator bounds.
    Dnp {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value_t = WeightArg::InverseLambda)]
        weight: WeightArg,
    },
    /// Closed-form constants.
    Bounds {
        #[arg(value_enum)]
        kind: BoundKind,
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        r: Option<f64>,
        #[arg(long)]
        eps: Option<f64>,
        #[arg(long)]
        alpha: Option<f64>,
        /// Sequence `q_n` for the double-sum bound.
        #[arg(long, value_delimiter = ',')]
        qseq: Vec<f64>,
        #[arg(long)]
        t: Option<f64>,
    },
    /// L^p(μ) norm of a Müntz polynomial.
    Norm {
        #[command(flatten)]
        common: Common,
        /// Coefficients, inline or a file.
        #[arg(long, allow_hyphen_values = true)]
        coeffs: String,
        /// Also evaluate at this point.
        #[arg(long)]
        t: Option<f64>,
    },
    /// Basis-equivalence, AM–GM and pairing probes.
    Probe {
        #[arg(value_enum)]
        kind: ProbeKind,
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        start: usize,
    },
    /// Singular values of a truncated operator at p = 2.
    Spectrum {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value_t = OperatorArg::Embedding)]
        operator: OperatorArg,
    },
    /// The two atomic counterexamples.
    Example {
        #[arg(long)]
        label: String,
        #[arg(long)]
        count: Option<usize>,
        #[command(flatten)]
        common: Common,
    },
    /// Run one verification suite.
    Verify {
        suite: String,
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 0.5)]
        eps: f64,
        #[arg(long)]
        count: Option<usize>,
    },
    /// Run every suite that applies to the inputs.
    Report {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 100)]
        trials: usize,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum WeightArg {
    InverseLambda,
    Classical,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum BoundKind {
    Jlambda,
    REps,
    Lemma31,
    Envelope,
    PointEval,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ProbeKind {
    Gm,
    Amgm,
    Pairing,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OperatorArg {
    Embedding,
    TMu,
    Frame,
}

/// What a command produced.
struct Output {
    json: serde_json::Value,
    csv: Option<String>,
    status: Status,
    /// File stem used under `--out`.
    stem: String,
}

impl Output {
    fn new(stem: &str, value: impl Serialize) -> Result<Self> {
        Ok(Output {
            json: serde_json::to_value(value)?,
            csv: None,
            status: Status::Pass,
            stem: stem.to_string(),
        })
    }
}

fn usage(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}

impl Common {
    fn sequence(&self) -> Result<(ExponentSequence, String)> {
        let s = self
            .seq
            .as_deref()
            .ok_or_else(|| usage("--seq is required"))?;
        Ok((parse_sequence(s)?, s.to_string()))
    }

    fn measure_or_lebesgue(&self) -> Result<(Measure, String)> {
        match &self.measure {
            Some(args) => Ok((parse_measure(args)?, args.join(" "))),
            None => Ok((Measure::lebesgue(), "lebesgue".to_string())),
        }
    }

    fn measure(&self) -> Result<(Measure, String)> {
        if self.measure.is_none() {
            return Err(usage("--measure is required"));
        }
        self.measure_or_lebesgue()
    }

    fn p_or(&self, default: f64) -> f64 {
        self.p.unwrap_or(default)
    }

    fn n_for(&self, seq: &ExponentSequence) -> usize {
        self.n.unwrap_or(seq.len().min(crate::hilbert::DEFAULT_N))
    }
}

fn csv_of(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).map_err(crate::dnp::csv_err)?;
    for r in rows {
        w.write_record(&r).map_err(crate::dnp::csv_err)?;
    }
    String::from_utf8(w.into_inner().map_err(|e| Error::Parse(e.to_string()))?)
        .map_err(|e| Error::Parse(e.to_string()))
}

fn cmd_classify(c: &Common) -> Result<Output> {
    let (seq, label) = c.sequence()?;
    let cls = classify(&seq)?;
    let mut out = Output::new(
        "classify",
        json!({"schema": SCHEMA_VERSION, "sequence": label, "classification": cls}),
    )?;
    let offset = usize::from(cls.skipped_zero);
    out.csv = Some(csv_of(
        &["n", "lambda_n", "ratio_to_next"],
        cls.ratios.iter().enumerate().map(|(i, r)| {
            vec![
                (i + offset).to_string(),
                format!("{:e}", seq.get(i + offset)),
                format!("{r:e}"),
            ]
        }),
    )?);
    Ok(out)
}

fn cmd_moments(c: &Common) -> Result<Output> {
    let (seq, seq_label) = c.sequence()?;
    let (mu, mu_label) = c.measure()?;
    let p = c.p_or(1.0);
    let rows: Vec<(f64, LogValue)> = seq
        .as_slice()
        .iter()
        .map(|&l| Ok((l, mu.moment(p * l)?)))
        .collect::<Result<_>>()?;
    let test: Vec<f64> = rows
        .iter()
        .map(|(l, m)| (LogValue::from_f64(*l) * *m).to_f64())
        .collect();
    let sub = sublinear_norm(&mu, &EpsGrid::default())?;
    let poisson = mu.poisson_integral();
    let mut out = Output::new(
        "moments",
        json!({
            "schema": SCHEMA_VERSION,
            "sequence": seq_label,
            "measure": mu_label,
            "p": p,
            "total_mass": mu.total_mass(),
            "ln_moments": rows.iter().map(|(_, m)| m.ln()).collect::<Vec<_>>(),
            "monomial_test": test,
            "monomial_test_sup": test.iter().copied().fold(0.0, f64::max),
            "sublinear": sub,
            "poisson": poisson,
        }),
    )?;
    out.csv = Some(csv_of(
        &["n", "lambda_n", "ln_moment", "lambda_n_moment"],
        rows.iter().zip(&test).enumerate().map(|(n, ((l, m), t))| {
            vec![
                n.to_string(),
                format!("{l:e}"),
                format!("{:e}", m.ln()),
                format!("{t:e}"),
            ]
        }),
    )?);
    Ok(out)
}

fn cmd_dnp(c: &Common, weight: WeightArg) -> Result<Output> {
    let (seq, seq_label) = c.sequence()?;
    let (mu, mu_label) = c.measure()?;
    let p = c.p_or(2.0);
    let kind = match weight {
        WeightArg::InverseLambda => WeightKind::InverseLambda,
        WeightArg::Classical => WeightKind::Classical,
    };
    let n = c.n.unwrap_or(seq.len());
    let profile = compute_dn(&seq, &mu, WeightScheme::new(kind, p)?, n, c.tol)?;
    let bounds = operator_bounds(&profile, &mu, &BoundOptions::default())?;
    let mut out = Output::new(
        "dnp",
        json!({"schema": SCHEMA_VERSION, "sequence": seq_label, "measure": mu_label, "profile": profile, "bounds": bounds}),
    )?;
    out.csv = Some(profile.to_csv()?);
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn cmd_bounds(
    kind: BoundKind,
    c: &Common,
    r: Option<f64>,
    eps: Option<f64>,
    alpha: Option<f64>,
    qseq: &[f64],
    t: Option<f64>,
) -> Result<Output> {
    let p = c.p_or(2.0);
    let need = |x: Option<f64>, name: &str| x.ok_or_else(|| usage(format!("--{name} is required")));
    let (formula, inputs, value) = match kind {
        BoundKind::Jlambda => {
            let r = need(r, "r")?;
            let b = jlambda_upper(p, r)?;
            (
                format!("{:?}", b.formula),
                json!({"p": p, "r": r}),
                json!(b.upper_bound),
            )
        }
        BoundKind::REps => {
            let e = need(eps, "eps")?;
            (
                "r_epsilon".to_string(),
                json!({"p": p, "eps": e}),
                json!(r_epsilon(p, e)?),
            )
        }
        BoundKind::Lemma31 => {
            let (a, r) = (need(alpha, "alpha")?, need(r, "r")?);
            let (lhs, rhs) = lemma31_bound(p, a, qseq, r)?;
            (
                "lacunary_double_sum".to_string(),
                json!({"p": p, "alpha": a, "r": r, "q": qseq}),
                json!({"lhs": lhs, "rhs": rhs, "holds": lhs <= rhs}),
            )
        }
        BoundKind::Envelope => {
            let (seq, label) = c.sequence()?;
            let a = need(alpha, "alpha")?;
            let rep = envelope_check(&seq, a, &DyadicGrid::default(), c.tol)?;
            (
                "envelope".to_string(),
                json!({"sequence": label, "alpha": a}),
                serde_json::to_value(rep)?,
            )
        }
        BoundKind::PointEval => {
            let (seq, label) = c.sequence()?;
            let t = need(t, "t")?;
            let n = c.n.unwrap_or(seq.len());
            (
                "point_evaluation".to_string(),
                json!({"sequence": label, "p": p, "t": t, "N": n}),
                json!(point_eval_norm(&seq, p, t, n)?),
            )
        }
    };
    Output::new(
        "bounds",
        json!({"schema": SCHEMA_VERSION, "formula": formula, "inputs": inputs, "value": value}),
    )
}

fn cmd_norm(c: &Common, coeffs: &str, t: Option<f64>) -> Result<Output> {
    let (seq, seq_label) = c.sequence()?;
    let (mu, mu_label) = c.measure_or_lebesgue()?;
    let p = c.p_or(2.0);
    let f = MuntzPolynomial::new(&seq, parse_coefficients(coeffs)?)?;
    let norm = lp_norm(&f, &mu, p)?;
    let value = t.map(|t| eval_poly(&f, t)).transpose()?;
    Output::new(
        "norm",
        json!({
            "schema": SCHEMA_VERSION,
            "sequence": seq_label,
            "measure": mu_label,
            "p": p,
            "coefficients": f.coefficients,
            "norm": norm,
            "value_at_t": t.map(|t| json!({"t": t, "f": value})),
        }),
    )
}

fn cmd_probe(kind: ProbeKind, c: &Common, trials: usize, start: usize) -> Result<Output> {
    let (seq, seq_label) = c.sequence()?;
    let p = c.p_or(2.0);
    let n = c.n.unwrap_or(seq.len());
    let seq = seq.prefix(n)?;
    let body = match kind {
        ProbeKind::Gm => {
            let (mu, _) = c.measure_or_lebesgue()?;
            serde_json::to_value(gm_ratio_sample(&seq, p, &mu, trials, c.seed)?)?
        }
        ProbeKind::Amgm => {
            let rows: Vec<_> = (1..=seq.len() - start)
                .map(|k| amgm_probe(&seq, p, start, k).map(|a| json!({"block_len": k, "probe": a})))
                .collect::<Result<_>>()?;
            json!(rows)
        }
        ProbeKind::Pairing => {
            let rows: Vec<_> = (0..seq.len() - 1)
                .map(|k| pairing_integral(&seq, p, k).map(|a| json!({"n": k, "pairing": a})))
                .collect::<Result<_>>()?;
            json!(rows)
        }
    };
    Output::new(
        "probe",
        json!({"schema": SCHEMA_VERSION, "probe": format!("{kind:?}").to_lowercase(), "sequence": seq_label, "p": p, "result": body}),
    )
}

fn spectrum_json(s: &SpectralResult) -> serde_json::Value {
    json!({
        "operator": s.operator,
        "N": s.n,
        "sigma": s.singular_values,
        "schatten": s.schatten.iter().map(|(r, v)| (r.to_string(), *v)).collect::<std::collections::BTreeMap<_, _>>(),
        "hs_trace": s.hs_trace,
        "drift": s.drift,
        "flushed": s.flushed,
    })
}

fn cmd_spectrum(c: &Common, op: OperatorArg) -> Result<Output> {
    let (seq, seq_label) = c.sequence()?;
    let n = c.n_for(&seq);
    let mut extra = serde_json::Value::Null;
    let s = match op {
        OperatorArg::Frame => frame_spectrum(&seq, n)?,
        OperatorArg::Embedding => embedding_spectrum(&seq, &c.measure()?.0, n)?,
        OperatorArg::TMu => {
            let t = t_mu_spectrum(&seq.prefix(n)?, &c.measure()?.0, n, c.tol)?;
            extra = serde_json::to_value(&t.chain)?;
            t.spectrum
        }
    };
    let mut v = spectrum_json(&s);
    v["schema"] = json!(SCHEMA_VERSION);
    v["sequence"] = json!(seq_label);
    if !extra.is_null() {
        v["chain"] = extra;
    }
    let mut out = Output::new("spectrum", v)?;
    out.csv = Some(csv_of(
        &["k", "sigma"],
        s.singular_values
            .iter()
            .enumerate()
            .map(|(k, x)| vec![(k + 1).to_string(), format!("{x:e}")]),
    )?);
    Ok(out)
}

fn cmd_example(label: &str, count: Option<usize>, c: &Common) -> Result<Output> {
    let label: ExampleLabel = label.parse()?;
    let p = c.p_or(match label {
        ExampleLabel::A => 1.0,
        ExampleLabel::B => 2.0,
    });
    let count = count.unwrap_or(match label {
        ExampleLabel::A => 20,
        ExampleLabel::B => 15,
    });
    let q = if c.q.is_empty() {
        match label {
            ExampleLabel::A => vec![p, p + 1.0],
            ExampleLabel::B => vec![(p - 1.0).max(1.0)],
        }
    } else {
        c.q.clone()
    };
    let inst = build_example(label, p, count)?;
    let rep = check_example_claims(&inst, &q, &TrendOptions::default())?;
    let mut out = Output::new("example", json!({"schema": SCHEMA_VERSION, "report": rep}))?;
    out.csv = Some(rep.to_csv()?);
    out.status = if rep.all_passed() {
        Status::Evidence
    } else {
        Status::Fail
    };
    Ok(out)
}

fn suite_inputs(c: &Common, trials: usize) -> Result<SuiteInputs> {
    let (seq, seq_label) = c.sequence()?;
    let (mu, mu_label) = c.measure_or_lebesgue()?;
    let mut inp = SuiteInputs::new(seq, mu);
    inp.seq_label = seq_label;
    inp.mu_label = mu_label;
    inp.n = c.n_for(&inp.seq);
    inp.p = c.p_or(2.0);
    inp.q_list = c.q.clone();
    inp.tol = c.tol;
    inp.seed = c.seed;
    inp.trials = trials;
    Ok(inp)
}

fn report_output(stem: &str, reports: &[SuiteReport]) -> Result<Output> {
    let status = reports
        .iter()
        .map(|r| r.status)
        .max()
        .unwrap_or(Status::Pass);
    let json = if reports.len() == 1 {
        serde_json::to_value(&reports[0])?
    } else {
        json!({"schema": SCHEMA_VERSION, "status": status, "suites": reports})
    };
    let csv = csv_of(
        &["suite", "check", "status"],
        reports.iter().flat_map(|r| {
            r.checks.iter().map(move |c| {
                vec![
                    r.suite_id().to_string(),
                    c.name.clone(),
                    serde_json::to_value(c.status)
                        .unwrap()
                        .as_str()
                        .unwrap_or("")
                        .to_string(),
                ]
            })
        }),
    )?;
    Ok(Output {
        json,
        csv: Some(csv),
        status,
        stem: stem.to_string(),
    })
}

impl SuiteReport {
    fn suite_id(&self) -> &'static str {
        self.suite.id()
    }
}

fn cmd_verify(
    suite: &str,
    c: &Common,
    trials: usize,
    eps: f64,
    count: Option<usize>,
) -> Result<Output> {
    let id: SuiteId = suite.parse()?;
    let mut inp = match id {
        SuiteId::ExA | SuiteId::ExB => {
            // the example suites build their own sequence and measure
            let mut i = SuiteInputs::new(ExponentSequence::new(vec![1.0])?, Measure::lebesgue());
            i.p = c.p_or(if id == SuiteId::ExA { 1.0 } else { 2.0 });
            i.q_list = c.q.clone();
            i
        }
        _ => {
            if id.needs_measure() && c.measure.is_none() {
                return Err(usage(format!("suite {suite} needs --measure")));
            }
            suite_inputs(c, trials)?
        }
    };
    inp.eps = eps;
    inp.count = count;
    let rep = run_suite(id, &inp)?;
    report_output(&format!("verify-{}", id.id()), std::slice::from_ref(&rep))
}

fn cmd_report(c: &Common, trials: usize) -> Result<Output> {
    let inp = suite_inputs(c, trials)?;
    let reports: Vec<SuiteReport> = SuiteId::ALL
        .iter()
        .filter(|id| !matches!(id, SuiteId::ExA | SuiteId::ExB))
        .filter(|id| c.measure.is_some() || !id.needs_measure())
        .map(|&id| run_suite(id, &inp))
        .collect::<Result<_>>()?;
    report_output("report", &reports)
}

fn dispatch(cmd: &Command) -> Result<(Output, Format, Option<PathBuf>)> {
    let common = match cmd {
        Command::Classify(c) | Command::Moments(c) => c,
        Command::Dnp { common, .. }
        | Command::Bounds { common, .. }
        | Command::Norm { common, .. }
        | Command::Probe { common, .. }
        | Command::Spectrum { common, .. }
        | Command::Example { common, .. }
        | Command::Verify { common, .. }
        | Command::Report { common, .. } => common,
    };
    let out = match cmd {
        Command::Classify(c) => cmd_classify(c)?,
        Command::Moments(c) => cmd_moments(c)?,
        Command::Dnp { common, weight } => cmd_dnp(common, *weight)?,
        Command::Bounds {
            kind,
            common,
            r,
            eps,
            alpha,
            qseq,
            t,
        } => cmd_bounds(*kind, common, *r, *eps, *alpha, qseq, *t)?,
        Command::Norm { common, coeffs, t } => cmd_norm(common, coeffs, *t)?,
        Command::Probe {
            kind,
            common,
            trials,
            start,
        } => cmd_probe(*kind, common, *trials, *start)?,
        Command::Spectrum { common, operator } => cmd_spectrum(common, *operator)?,
        Command::Example {
            label,
            count,
            common,
        } => cmd_example(label, *count, common)?,
        Command::Verify {
            suite,
            common,
            trials,
            eps,
            count,
        } => cmd_verify(suite, common, *trials, *eps, *count)?,
        Command::Report { common, trials } => cmd_report(common, *trials)?,
    };
    Ok((out, common.format, common.out.clone()))
}

fn emit(out: &Output, format: Format, dir: Option<&PathBuf>, stdout: &mut dyn Write) -> Result<()> {
    let json = serde_json::to_string_pretty(&out.json)? + "\n";
    match dir {
        Some(dir) => {
            std::fs::create_dir_all(dir)?;
            std::fs::write(dir.join(format!("{}.json", out.stem)), &json)?;
            if let Some(csv) = &out.csv {
                std::fs::write(dir.join(format!("{}.csv", out.stem)), csv)?;
            }
            writeln!(stdout, "{}: {:?}", out.stem, out.status)?;
        }
        None => match (format, &out.csv) {
            (Format::Csv, Some(csv)) => stdout.write_all(csv.as_bytes())?,
            (Format::Csv, None) => return Err(usage("this command has no CSV output")),
            (Format::Json, _) => stdout.write_all(json.as_bytes())?,
        },
    }
    Ok(())
}

/// Runs the CLI with explicit streams; returns the exit code.
pub fn run_with<I, S>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if code == 0 {
                write!(stdout, "{e}")
            } else {
                write!(stderr, "{e}")
            };
            return code;
        }
    };
    match dispatch(&cli.command).and_then(|(out, format, dir)| {
        emit(&out, format, dir.as_ref(), stdout)?;
        Ok(out.status)
    }) {
        Ok(Status::Fail) => 1,
        Ok(_) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            2
        }
    }
}

pub fn run<I, S>(args: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    run_with(
        args,
        &mut std::io::stdout().lock(),
        &mut std::io::stderr().lock(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_capture(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run_with(
            std::iter::once("muntz").chain(args.iter().copied()),
            &mut out,
            &mut err,
        );
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn classify_explicit() {
        let (code, out, _) = run_capture(&["classify", "--seq", "explicit:1,2,3,4"]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        let r = v["classification"]["r_inf"].as_f64().unwrap();
        assert!((r - 4.0 / 3.0).abs() < 1e-12);
        assert!(out.contains("prefix ratios decreasing toward 1"));
    }

    #[test]
    fn usage_errors_exit_2() {
        assert_eq!(run_capture(&["bogus"]).0, 2);
        assert_eq!(run_capture(&["classify", "--seq", "geometric:x"]).0, 2);
        assert_eq!(
            run_capture(&["verify", "hs", "--seq", "geometric:1,2,16"]).0,
            2
        );
        assert_eq!(run_capture(&["classify", "--unknown"]).0, 2);
    }

    #[test]
    fn verify_gm_passes() {
        let (code, out, err) =
            run_capture(&["verify", "gm", "--seq", "geometric:1,2,16", "--p", "2"]);
        assert_eq!(code, 0, "{out}{err}");
        assert!(out.contains("\"status\": \"PASS\""));
    }

    #[test]
    fn csv_format() {
        let (code, out, _) = run_capture(&[
            "dnp",
            "--seq",
            "geometric:1,2,8",
            "--measure",
            "lebesgue",
            "--format",
            "csv",
        ]);
        assert_eq!(code, 0);
        assert!(out.starts_with("n,lambda_n,D_n,cutoff_K,tail_flag"));
    }
}
