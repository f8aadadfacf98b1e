//! The two atomic counterexamples separating the monomial conditions from
//! boundedness and compactness of the embedding.
//!
//! * `A`: `λ_n = n^{p+1} λ_{n−1}`, atoms at `δ_n = log n/λ_n` with
//!   masses `c_n = n^p log n/λ_n`. The monomial test `λ_n ∫ t^{qλ_n} dμ`
//!   grows like `log n` at `q = p` and vanishes for `q > p`.
//! * `B`: `λ_n = n^{p·max(p,p')} λ_{n−1}`, same atoms, masses
//!   `c_n = n^p/(λ_n log n)`. The test vanishes at `q = p` but blows up like
//!   `n^{p−q}/log n` for `q < p`.
//!
//! Indices start at `n = 2` with `λ_2 = 1`.

use rayon::prelude::*;
use serde::Serialize;

use crate::bounds::conjugate;
use crate::dnp::{compute_dn, WeightScheme};
use crate::error::{invalid, Result};
use crate::logvalue::LogValue;
use crate::measures::{Atom, Measure};
use crate::sequences::{generate_recursive_power, ExponentSequence};

pub const FIRST_INDEX: usize = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ExampleLabel {
    A,
    B,
}

impl std::str::FromStr for ExampleLabel {
    type Err = crate::Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "A" | "a" => Ok(ExampleLabel::A),
            "B" | "b" => Ok(ExampleLabel::B),
            _ => invalid(format!("unknown example label {s:?}, expected A or B")),
        }
    }
}

#[derive(Clone, Debug)]
pub struct ExampleInstance {
    pub label: ExampleLabel,
    pub p: f64,
    pub seq: ExponentSequence,
    pub mu: Measure,
    /// Labels `n` of the materialised indices.
    pub indices: Vec<usize>,
    pub requested: usize,
    /// `δ_n` per index.
    pub deltas: Vec<LogValue>,
    /// `c_n` per index.
    pub masses: Vec<LogValue>,
}

impl ExampleInstance {
    pub fn is_truncated(&self) -> bool {
        self.indices.len() < self.requested
    }

    /// `x = 1 − δ` as a float (rounds to 1 once `δ < 1e−16`).
    pub fn position(&self, i: usize) -> f64 {
        1.0 - self.deltas[i].to_f64()
    }
}

/// Recursion exponent `γ` in `λ_n = n^γ λ_{n−1}`.
pub fn growth_exponent(label: ExampleLabel, p: f64) -> f64 {
    match label {
        ExampleLabel::A => p + 1.0,
        ExampleLabel::B => p * p.max(conjugate(p)),
    }
}

pub fn build_example(label: ExampleLabel, p: f64, count: usize) -> Result<ExampleInstance> {
    if count < 3 {
        return invalid(format!("count must be >= 3, got {count}"));
    }
    match label {
        ExampleLabel::A if !(p >= 1.0) => {
            return invalid(format!("example A needs p >= 1, got {p}"))
        }
        ExampleLabel::B if !(p > 1.0) => return invalid(format!("example B needs p > 1, got {p}")),
        _ => {}
    }
    let rec = generate_recursive_power(1.0, FIRST_INDEX, growth_exponent(label, p), count)?;
    let lam = rec.sequence.as_slice();
    let indices: Vec<usize> = (0..lam.len()).map(|i| rec.label(i)).collect();
    let mut deltas = Vec::with_capacity(lam.len());
    let mut masses = Vec::with_capacity(lam.len());
    let mut atoms = Vec::with_capacity(lam.len());
    for (&n, &l) in indices.iter().zip(lam) {
        let ln_n = (n as f64).ln();
        let ln_lam = l.ln();
        let ln_log_n = ln_n.ln();
        let ln_delta = ln_log_n - ln_lam;
        let ln_mass = match label {
            ExampleLabel::A => p * ln_n + ln_log_n - ln_lam,
            ExampleLabel::B => p * ln_n - ln_lam - ln_log_n,
        };
        atoms.push(Atom::from_logs(ln_delta, ln_mass)?);
        deltas.push(LogValue::from_ln(ln_delta));
        masses.push(LogValue::from_ln(ln_mass));
    }
    Ok(ExampleInstance {
        label,
        p,
        seq: rec.sequence.clone(),
        mu: Measure::atoms(atoms)?,
        indices,
        requested: count,
        deltas,
        masses,
    })
}

/// Windows and thresholds of the trend checks.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct TrendOptions {
    /// Number of trailing indices inspected by ratio windows.
    pub window: usize,
    /// `M_n(p)/log n` bracket for `A`.
    pub a_ratio: (f64, f64),
    /// `M_n(q) log n / n^{p−q}` bracket for `B`.
    pub b_ratio: (f64, f64),
    /// `M_n(q)` at the last index, `q > p`, for `A`.
    pub a_vanish: f64,
    /// `D_n(p)` at the last index for `B`.
    pub b_vanish: f64,
    /// Relative tolerance of `x_n^{λ_n}·n → 1` for `n ≥ 10`.
    pub x_power_tol: f64,
    pub series_tol: f64,
}

impl Default for TrendOptions {
    fn default() -> Self {
        TrendOptions {
            window: 5,
            a_ratio: (0.8, 1.2),
            b_ratio: (0.5, 2.0),
            a_vanish: 0.05,
            b_vanish: 0.1,
            x_power_tol: 0.05,
            series_tol: 1e-14,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ExampleRow {
    pub n: usize,
    pub lambda: f64,
    /// `x_n^{λ_n}`.
    pub x_power: f64,
    /// `M_n(q) = λ_n ∫ t^{qλ_n} dμ` per requested `q`.
    pub m: Vec<f64>,
    /// Diagonal part `λ_n c_n x_n^{qλ_n}` of `M_n(q)`.
    pub diagonal: Vec<f64>,
    pub d_p: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct TrendCheck {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct ExampleReport {
    pub label: ExampleLabel,
    pub p: f64,
    pub q_list: Vec<f64>,
    pub truncated: bool,
    pub rows: Vec<ExampleRow>,
    /// Whether the `D_n(p)` inner series had converged at each index.
    pub d_truncation_safe: Vec<bool>,
    pub checks: Vec<TrendCheck>,
}

impl ExampleReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&TrendCheck> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// Table `n, lambda_n, M_n(q)…, D_n(p)`.
    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let mut header = vec!["n".to_string(), "lambda_n".to_string()];
        header.extend(self.q_list.iter().map(|q| format!("M_n({q})")));
        header.push(format!("D_n({})", self.p));
        w.write_record(&header).map_err(crate::dnp::csv_err)?;
        for r in &self.rows {
            let mut rec = vec![r.n.to_string(), format!("{:e}", r.lambda)];
            rec.extend(r.m.iter().map(|v| format!("{v:e}")));
            rec.push(format!("{:e}", r.d_p));
            w.write_record(&rec).map_err(crate::dnp::csv_err)?;
        }
        String::from_utf8(
            w.into_inner()
                .map_err(|e| crate::Error::Parse(e.to_string()))?,
        )
        .map_err(|e| crate::Error::Parse(e.to_string()))
    }
}

fn strictly_decreasing(v: &[f64]) -> bool {
    v.windows(2).all(|w| w[1] < w[0])
}

fn strictly_increasing(v: &[f64]) -> bool {
    v.windows(2).all(|w| w[1] > w[0])
}

fn fmt_list(v: &[f64]) -> String {
    let parts: Vec<String> = v.iter().map(|x| format!("{x:.4}")).collect();
    format!("[{}]", parts.join(", "))
}

pub fn check_example_claims(
    inst: &ExampleInstance,
    q_list: &[f64],
    opts: &TrendOptions,
) -> Result<ExampleReport> {
    if q_list.iter().any(|q| !(*q >= 1.0)) {
        return invalid("every q must be >= 1");
    }
    let lam = inst.seq.as_slice();
    let len = lam.len();
    let p = inst.p;
    let profile = compute_dn(
        &inst.seq,
        &inst.mu,
        WeightScheme::inverse_lambda(p)?,
        len,
        opts.series_tol,
    )?;
    let rows: Vec<ExampleRow> = (0..len)
        .into_par_iter()
        .map(|i| -> Result<ExampleRow> {
            let l = lam[i];
            let node = crate::measures::Node::from_delta(inst.deltas[i], LogValue::ONE);
            let mut m = Vec::with_capacity(q_list.len());
            let mut diagonal = Vec::with_capacity(q_list.len());
            for &q in q_list {
                m.push((LogValue::from_f64(l) * inst.mu.moment(q * l)?).to_f64());
                diagonal
                    .push((LogValue::from_f64(l) * inst.masses[i] * node.power(q * l)).to_f64());
            }
            Ok(ExampleRow {
                n: inst.indices[i],
                lambda: l,
                x_power: node.power(l).to_f64(),
                m,
                diagonal,
                d_p: profile.values[i],
            })
        })
        .collect::<Result<_>>()?;

    let w = opts.window.min(len);
    let tail = &rows[len - w..];
    let half = &rows[len / 2..];
    let column = |rs: &[ExampleRow], j: usize| -> Vec<f64> { rs.iter().map(|r| r.m[j]).collect() };
    let mut checks = Vec::new();

    let x_dev: Vec<f64> = rows
        .iter()
        .filter(|r| r.n >= 10)
        .map(|r| (r.x_power * r.n as f64 - 1.0).abs())
        .collect();
    checks.push(TrendCheck {
        name: "x_power_asymptotics".into(),
        passed: x_dev.iter().all(|d| *d <= opts.x_power_tol),
        detail: format!(
            "max |x_n^lambda_n * n - 1| over n >= 10: {:.4}",
            x_dev.iter().copied().fold(0.0, f64::max)
        ),
    });

    match inst.label {
        ExampleLabel::A => {
            // the monomial test at q = p, computed directly
            let mp: Vec<f64> = rows
                .iter()
                .enumerate()
                .map(|(i, _)| {
                    Ok((LogValue::from_f64(lam[i]) * inst.mu.moment(p * lam[i])?).to_f64())
                })
                .collect::<Result<_>>()?;
            let ratios: Vec<f64> = rows[len - w..]
                .iter()
                .zip(&mp[len - w..])
                .map(|(r, m)| m / (r.n as f64).ln())
                .collect();
            checks.push(TrendCheck {
                name: "log_growth_at_p".into(),
                passed: ratios
                    .iter()
                    .all(|x| (opts.a_ratio.0..=opts.a_ratio.1).contains(x)),
                detail: format!(
                    "M_n(p)/log n on the last {w} indices: {}",
                    fmt_list(&ratios)
                ),
            });
            // the last index has no atoms beyond it, so its cross terms are cut
            let grow = &mp[len / 2..len - 1];
            checks.push(TrendCheck {
                name: "unbounded_at_p".into(),
                passed: strictly_increasing(grow),
                detail: format!(
                    "M_n(p) over the last half, final index excluded: {}",
                    fmt_list(grow)
                ),
            });
            for (j, &q) in q_list.iter().enumerate().filter(|(_, q)| **q > p) {
                let col = column(tail, j);
                let last = *col.last().expect("non-empty window");
                checks.push(TrendCheck {
                    name: format!("vanishing_at_q={q}"),
                    passed: strictly_decreasing(&col) && last < opts.a_vanish,
                    detail: format!(
                        "M_n({q}) on the last {w} indices: {} (threshold {})",
                        fmt_list(&col),
                        opts.a_vanish
                    ),
                });
            }
        }
        ExampleLabel::B => {
            for (j, &q) in q_list.iter().enumerate().filter(|(_, q)| **q < p) {
                let col = column(tail, j);
                let ratios: Vec<f64> = tail
                    .iter()
                    .zip(&col)
                    .map(|(r, m)| {
                        let n = r.n as f64;
                        m * n.ln() / n.powf(p - q)
                    })
                    .collect();
                checks.push(TrendCheck {
                    name: format!("blow_up_at_q={q}"),
                    passed: strictly_increasing(&column(half, j))
                        && ratios
                            .iter()
                            .all(|x| (opts.b_ratio.0..=opts.b_ratio.1).contains(x)),
                    detail: format!(
                        "M_n({q}) log n / n^(p-q) on the last {w} indices: {}",
                        fmt_list(&ratios)
                    ),
                });
            }
            let d: Vec<f64> = half.iter().map(|r| r.d_p).collect();
            let last = *d.last().expect("non-empty range");
            checks.push(TrendCheck {
                name: "dn_vanishing".into(),
                passed: strictly_decreasing(&d) && last < opts.b_vanish,
                detail: format!(
                    "D_n(p) over the last half: {} (threshold {})",
                    fmt_list(&d),
                    opts.b_vanish
                ),
            });
        }
    }

    Ok(ExampleReport {
        label: inst.label,
        p,
        q_list: q_list.to_vec(),
        truncated: inst.is_truncated(),
        rows,
        d_truncation_safe: profile.truncation.iter().map(|t| t.safe).collect(),
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn construction_examples() {
        let a = build_example(ExampleLabel::A, 1.0, 4).unwrap();
        assert_eq!(a.seq.as_slice(), &[1.0, 9.0, 144.0, 3600.0]);
        assert_eq!(a.indices, vec![2, 3, 4, 5]);
        let ln3 = 3f64.ln();
        assert!((a.position(1) - (1.0 - ln3 / 9.0)).abs() < 1e-15);
        assert!((a.masses[1].to_f64() - 3.0 * ln3 / 9.0).abs() < 1e-15);
        let b = build_example(ExampleLabel::B, 2.0, 4).unwrap();
        assert_eq!(growth_exponent(ExampleLabel::B, 2.0), 4.0);
        assert!((b.seq.get(1) - 81.0).abs() < 1e-12);
        assert!(build_example(ExampleLabel::B, 1.0, 5).is_err());
        assert!(build_example(ExampleLabel::A, 1.0, 2).is_err());
    }

    #[test]
    fn large_counts_stay_finite() {
        let a = build_example(ExampleLabel::A, 1.0, 20).unwrap();
        assert!(!a.is_truncated());
        assert!(a.seq.last() > 1e35);
        assert!(a.deltas.iter().all(|d| d.ln().is_finite()));
    }

    #[test]
    fn x_power_matches_inverse_n() {
        let a = build_example(ExampleLabel::A, 1.0, 20).unwrap();
        let rep = check_example_claims(&a, &[1.0], &TrendOptions::default()).unwrap();
        assert!(rep.check("x_power_asymptotics").unwrap().passed);
        // M_n(1) ≈ log n; the diagonal term alone is n log n x_n^{λ_n}
        let last = rep.rows.last().unwrap();
        assert!((last.diagonal[0] / (last.n as f64).ln() - 1.0).abs() < 0.1);
    }

    #[test]
    fn csv_has_one_row_per_index() {
        let b = build_example(ExampleLabel::B, 2.0, 6).unwrap();
        let rep = check_example_claims(&b, &[1.0], &TrendOptions::default()).unwrap();
        let csv = rep.to_csv().unwrap();
        assert_eq!(csv.lines().count(), 7);
        assert!(csv.starts_with("n,lambda_n,M_n(1),D_n(2)"));
    }
}
