//! Sequence, measure and coefficient descriptions, inline or from files.
//!
//! Inline sequences: `geometric:λ0,ratio,count`, `explicit:λ0,λ1,…`,
//! `recursive_power:λ_start,start_index,γ,count`.
//!
//! Inline measures: `lebesgue`, `jacobi:a,b`, `atoms:δ=c,δ=c,…`,
//! `dyadic:K,b` (atoms at `1 − 2^{−k}` with mass `b^{−k}`, `k = 1..K`),
//! `restrict:a,b:<measure>`.
//!
//! Anything else is read as a file path. JSON files hold a tagged object
//! (`{"kind": "geometric", ...}`); plain text files hold one inline spec,
//! or, for sequences, whitespace separated exponents. An atoms file
//! (`atoms-file PATH`) has one `delta mass` pair per line; either column
//! may be written `e^<ln>` to give its logarithm, and `#` starts a comment.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::measures::{dyadic_atoms, Atom, Density, Measure};
use crate::sequences::{generate_geometric, generate_recursive_power, ExponentSequence};

fn parse_err<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Parse(msg.into()))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SequenceSpec {
    Geometric {
        lambda0: f64,
        ratio: f64,
        count: usize,
    },
    RecursivePower {
        lambda_start: f64,
        start_index: usize,
        gamma: f64,
        count: usize,
    },
    Explicit {
        values: Vec<f64>,
    },
}

impl SequenceSpec {
    pub fn build(&self) -> Result<ExponentSequence> {
        match self {
            SequenceSpec::Geometric {
                lambda0,
                ratio,
                count,
            } => generate_geometric(*lambda0, *ratio, *count),
            SequenceSpec::RecursivePower {
                lambda_start,
                start_index,
                gamma,
                count,
            } => {
                Ok(generate_recursive_power(*lambda_start, *start_index, *gamma, *count)?.sequence)
            }
            SequenceSpec::Explicit { values } => ExponentSequence::new(values.clone()),
        }
    }
}

fn numbers(s: &str) -> Result<Vec<f64>> {
    s.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse::<f64>()
                .map_err(|_| Error::Parse(format!("not a number: {t:?}")))
        })
        .collect()
}

fn count_of(x: f64) -> Result<usize> {
    if x >= 0.0 && x.fract() == 0.0 {
        Ok(x as usize)
    } else {
        parse_err(format!("expected a nonnegative integer, got {x}"))
    }
}

/// Parses an inline sequence description.
pub fn parse_sequence_inline(s: &str) -> Result<SequenceSpec> {
    let (kind, rest) = s
        .trim()
        .split_once(':')
        .ok_or_else(|| Error::Parse(format!("no kind in {s:?}")))?;
    let v = numbers(rest)?;
    let want = |n: usize| -> Result<()> {
        if v.len() == n {
            Ok(())
        } else {
            parse_err(format!("{kind} takes {n} numbers, got {}", v.len()))
        }
    };
    match kind {
        "geometric" => {
            want(3)?;
            Ok(SequenceSpec::Geometric {
                lambda0: v[0],
                ratio: v[1],
                count: count_of(v[2])?,
            })
        }
        "recursive_power" => {
            want(4)?;
            Ok(SequenceSpec::RecursivePower {
                lambda_start: v[0],
                start_index: count_of(v[1])?,
                gamma: v[2],
                count: count_of(v[3])?,
            })
        }
        "explicit" => Ok(SequenceSpec::Explicit { values: v }),
        other => parse_err(format!("unknown sequence kind {other:?}")),
    }
}

/// Inline spec, or a path to a JSON or text file.
pub fn parse_sequence(arg: &str) -> Result<ExponentSequence> {
    sequence_spec(arg)?.build()
}

pub fn sequence_spec(arg: &str) -> Result<SequenceSpec> {
    if let Ok(spec) = parse_sequence_inline(arg) {
        return Ok(spec);
    }
    let path = Path::new(arg);
    if !path.is_file() {
        return parse_err(format!(
            "{arg:?} is neither a sequence spec nor a readable file"
        ));
    }
    let text = std::fs::read_to_string(path)?;
    let trimmed = text.trim();
    if trimmed.starts_with('{') {
        return Ok(serde_json::from_str(trimmed)?);
    }
    if let Ok(spec) = parse_sequence_inline(trimmed) {
        return Ok(spec);
    }
    let body: String = trimmed
        .lines()
        .map(|l| l.split('#').next().unwrap_or(""))
        .collect::<Vec<_>>()
        .join(" ");
    Ok(SequenceSpec::Explicit {
        values: numbers(&body)?,
    })
}

/// An atom position and mass, either plain or in log form.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum AtomSpec {
    Pair(f64, f64),
    Plain { delta: f64, mass: f64 },
    LogDelta { log_delta: f64, mass: f64 },
    Logs { log_delta: f64, log_mass: f64 },
}

impl AtomSpec {
    pub fn build(&self) -> Result<Atom> {
        match *self {
            AtomSpec::Pair(delta, mass) | AtomSpec::Plain { delta, mass } => Atom::new(delta, mass),
            AtomSpec::LogDelta { log_delta, mass } => {
                if !(mass > 0.0) {
                    return crate::error::invalid(format!(
                        "atom mass must be positive, got {mass}"
                    ));
                }
                Atom::from_logs(log_delta, mass.ln())
            }
            AtomSpec::Logs {
                log_delta,
                log_mass,
            } => Atom::from_logs(log_delta, log_mass),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum MeasureSpec {
    Lebesgue,
    Atoms {
        atoms: Vec<AtomSpec>,
    },
    Density {
        name: String,
        #[serde(default)]
        params: Vec<f64>,
    },
    Restrict {
        base: Box<MeasureSpec>,
        a: f64,
        b: f64,
    },
    /// Atoms at `1 − 2^{−k}` with mass `base^{−k}`.
    Dyadic {
        count: usize,
        base: f64,
    },
}

/// Built-in densities by name: `jacobi [a, b]` for `t^a (1−t)^b`,
/// `power [a]` for `t^a`, `endpoint [b]` for `(1−t)^b`.
pub fn builtin_density(name: &str, params: &[f64]) -> Result<Density> {
    match (name, params) {
        ("jacobi", [a, b]) => Density::jacobi(*a, *b),
        ("power", [a]) => Density::jacobi(*a, 0.0),
        ("endpoint", [b]) => Density::jacobi(0.0, *b),
        ("jacobi" | "power" | "endpoint", _) => {
            parse_err(format!("wrong number of parameters for density {name:?}"))
        }
        _ => Err(Error::Unsupported(format!("unknown density {name:?}"))),
    }
}

impl MeasureSpec {
    pub fn build(&self) -> Result<Measure> {
        match self {
            MeasureSpec::Lebesgue => Ok(Measure::lebesgue()),
            MeasureSpec::Atoms { atoms } => {
                Measure::atoms(atoms.iter().map(AtomSpec::build).collect::<Result<_>>()?)
            }
            MeasureSpec::Density { name, params } => {
                Ok(Measure::density(builtin_density(name, params)?))
            }
            MeasureSpec::Restrict { base, a, b } => base.build()?.restrict(*a, *b),
            MeasureSpec::Dyadic { count, base } => {
                let b = *base;
                if !(b > 0.0) {
                    return crate::error::invalid(format!(
                        "dyadic mass base must be positive, got {b}"
                    ));
                }
                dyadic_atoms(*count, |k| b.powi(-(k as i32)))
            }
        }
    }
}

fn parse_measure_inline(s: &str) -> Result<MeasureSpec> {
    let s = s.trim();
    if s == "lebesgue" {
        return Ok(MeasureSpec::Lebesgue);
    }
    let (kind, rest) = s
        .split_once(':')
        .ok_or_else(|| Error::Parse(format!("no kind in {s:?}")))?;
    match kind {
        "jacobi" | "power" | "endpoint" => Ok(MeasureSpec::Density {
            name: kind.to_string(),
            params: numbers(rest)?,
        }),
        "atoms" => {
            let atoms = rest
                .split(',')
                .filter(|t| !t.trim().is_empty())
                .map(|pair| {
                    let (d, c) = pair
                        .split_once('=')
                        .ok_or_else(|| Error::Parse(format!("atom {pair:?} is not delta=mass")))?;
                    atom_from_columns(d.trim(), c.trim())
                })
                .collect::<Result<_>>()?;
            Ok(MeasureSpec::Atoms { atoms })
        }
        "dyadic" => {
            let v = numbers(rest)?;
            if v.len() != 2 {
                return parse_err("dyadic takes count,base");
            }
            Ok(MeasureSpec::Dyadic {
                count: count_of(v[0])?,
                base: v[1],
            })
        }
        "restrict" => {
            let (bounds, inner) = rest
                .split_once(':')
                .ok_or_else(|| Error::Parse("restrict needs a,b:<measure>".into()))?;
            let v = numbers(bounds)?;
            if v.len() != 2 {
                return parse_err("restrict takes a,b");
            }
            Ok(MeasureSpec::Restrict {
                base: Box::new(parse_measure_inline(inner)?),
                a: v[0],
                b: v[1],
            })
        }
        other => parse_err(format!("unknown measure kind {other:?}")),
    }
}

/// A column value, plain or `e^<ln>`; returns its natural log.
fn log_column(tok: &str) -> Result<f64> {
    if let Some(ln) = tok.strip_prefix("e^") {
        return ln
            .parse::<f64>()
            .map_err(|_| Error::Parse(format!("bad log value {tok:?}")));
    }
    let x: f64 = tok
        .parse()
        .map_err(|_| Error::Parse(format!("not a number: {tok:?}")))?;
    if !(x > 0.0) {
        return crate::error::invalid(format!("expected a positive number, got {x}"));
    }
    Ok(x.ln())
}

fn atom_from_columns(d: &str, c: &str) -> Result<AtomSpec> {
    if !d.starts_with("e^") && !c.starts_with("e^") {
        let delta = d
            .parse()
            .map_err(|_| Error::Parse(format!("not a number: {d:?}")))?;
        let mass = c
            .parse()
            .map_err(|_| Error::Parse(format!("not a number: {c:?}")))?;
        return Ok(AtomSpec::Plain { delta, mass });
    }
    Ok(AtomSpec::Logs {
        log_delta: log_column(d)?,
        log_mass: log_column(c)?,
    })
}

/// Reads a line-oriented atoms file.
pub fn read_atoms_file(path: &Path) -> Result<MeasureSpec> {
    let text = std::fs::read_to_string(path)?;
    let mut atoms = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let cols: Vec<&str> = line
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .collect();
        let [d, c] = cols.as_slice() else {
            return parse_err(format!(
                "{}:{}: expected `delta mass`",
                path.display(),
                lineno + 1
            ));
        };
        atoms.push(atom_from_columns(d, c)?);
    }
    Ok(MeasureSpec::Atoms { atoms })
}

/// `[spec]`, `[path]` or `["atoms-file", path]`.
pub fn measure_spec(args: &[String]) -> Result<MeasureSpec> {
    match args {
        [kind, path] if kind == "atoms-file" => read_atoms_file(Path::new(path)),
        [one] => {
            if let Ok(spec) = parse_measure_inline(one) {
                return Ok(spec);
            }
            let path = Path::new(one);
            if !path.is_file() {
                return parse_err(format!(
                    "{one:?} is neither a measure spec nor a readable file"
                ));
            }
            let text = std::fs::read_to_string(path)?;
            let trimmed = text.trim();
            if trimmed.starts_with('{') {
                Ok(serde_json::from_str(trimmed)?)
            } else if let Ok(spec) = parse_measure_inline(trimmed) {
                Ok(spec)
            } else {
                read_atoms_file(path)
            }
        }
        _ => parse_err(format!("cannot read a measure from {args:?}")),
    }
}

pub fn parse_measure(args: &[String]) -> Result<Measure> {
    measure_spec(args)?.build()
}

/// Comma/whitespace separated reals, inline or from a file.
pub fn parse_coefficients(arg: &str) -> Result<Vec<f64>> {
    if let Ok(v) = numbers(arg) {
        if !v.is_empty() {
            return Ok(v);
        }
    }
    let text = std::fs::read_to_string(arg).map_err(|e| {
        Error::Parse(format!(
            "{arg:?} is neither a coefficient list nor a readable file ({e})"
        ))
    })?;
    let body: String = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or(""))
        .collect::<Vec<_>>()
        .join(" ");
    numbers(&body)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    #[test]
    fn inline_sequences() {
        let s = parse_sequence("geometric:1,2,16").unwrap();
        assert_eq!(s.len(), 16);
        assert_eq!(s.get(15), 32768.0);
        assert_eq!(
            parse_sequence("explicit:1,2,3,4").unwrap().as_slice(),
            &[1.0, 2.0, 3.0, 4.0]
        );
        let r = parse_sequence("recursive_power:1,2,2,4").unwrap();
        assert_eq!(r.as_slice(), &[1.0, 9.0, 144.0, 3600.0]);
        assert!(parse_sequence("geometric:1,2").is_err());
        assert!(parse_sequence("explicit:2,1").is_err());
        assert!(parse_sequence("nonsense").is_err());
    }

    #[test]
    fn sequence_files() {
        let dir = tempfile::tempdir().unwrap();
        let json = dir.path().join("s.json");
        std::fs::write(
            &json,
            r#"{"kind": "geometric", "lambda0": 1, "ratio": 3, "count": 4}"#,
        )
        .unwrap();
        assert_eq!(
            parse_sequence(json.to_str().unwrap()).unwrap().as_slice(),
            &[1.0, 3.0, 9.0, 27.0]
        );
        let txt = dir.path().join("s.txt");
        std::fs::write(&txt, "# exponents\n1 2\n5\n").unwrap();
        assert_eq!(
            parse_sequence(txt.to_str().unwrap()).unwrap().as_slice(),
            &[1.0, 2.0, 5.0]
        );
    }

    #[test]
    fn inline_measures() {
        let m = |s: &str| parse_measure(&[s.to_string()]);
        assert!(m("lebesgue").unwrap().is_standard_lebesgue());
        let a = m("atoms:0.5=1,1e-300=2").unwrap();
        assert_eq!(a.atom_list().unwrap().len(), 2);
        let d = m("dyadic:30,4").unwrap();
        assert!((d.total_mass() - 1.0 / 3.0).abs() < 1e-12);
        let r = m("restrict:0.5,1:lebesgue").unwrap();
        assert!((r.total_mass() - 0.5).abs() < 1e-14);
        let j = m("jacobi:1,0").unwrap();
        assert!((j.total_mass() - 0.5).abs() < 1e-14);
        assert!(m("jacobi:1").is_err());
        assert!(m("atoms:0.5").is_err());
    }

    #[test]
    fn measure_files() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("m.txt");
        let mut f = std::fs::File::create(&path).unwrap();
        writeln!(f, "# delta mass\n0.5 0.25\ne^-800 e^-10\n").unwrap();
        let args = vec!["atoms-file".to_string(), path.to_str().unwrap().to_string()];
        let m = parse_measure(&args).unwrap();
        let atoms = m.atom_list().unwrap();
        assert_eq!(atoms.len(), 2);
        assert!((atoms[1].delta.ln() + 800.0).abs() < 1e-12);

        let json = dir.path().join("m.json");
        std::fs::write(
            &json,
            r#"{"kind": "restrict", "a": 0.5, "b": 1.0,
                "base": {"kind": "atoms", "atoms": [[0.25, 1.0], {"log_delta": -700, "mass": 2.0}, {"delta": 0.75, "mass": 1.0}]}}"#,
        )
        .unwrap();
        let m = parse_measure(&[json.to_str().unwrap().to_string()]).unwrap();
        assert!((m.total_mass() - 3.0).abs() < 1e-14);

        let bad = dir.path().join("bad.txt");
        std::fs::write(&bad, "0.5 0.25 7\n").unwrap();
        assert!(parse_measure(&["atoms-file".into(), bad.to_str().unwrap().into()]).is_err());
    }

    #[test]
    fn coefficients() {
        assert_eq!(
            parse_coefficients("1,-1, 0.5").unwrap(),
            vec![1.0, -1.0, 0.5]
        );
        assert!(parse_coefficients("/no/such/file").is_err());
    }
}
