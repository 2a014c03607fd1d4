//! Distribution and Lorenz-curve CSV files.
//!
//! Numbers are written with Rust's shortest round-trip formatting, so
//! identical values always produce identical bytes.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::majorization::LorenzCurve;
use crate::optics::{OccupationVector, Outcome, ProbDist};
use crate::scalar::Real;

pub const DISTRIBUTION_HEADER: &str = "outcome,probability,sigma";
pub const LORENZ_HEADER: &str = "k,cumulative,sigma";

fn num<T: Real>(x: T) -> String {
    format!("{x:?}")
}

/// Writes `outcome,probability,sigma` rows in the distribution's own order.
pub fn write_distribution_csv<T: Real>(dist: &ProbDist<T>) -> Result<String> {
    let mut out = String::new();
    out.push_str(DISTRIBUTION_HEADER);
    out.push('\n');
    for o in dist.outcomes() {
        let sigma = o.sigma.map(num).unwrap_or_default();
        writeln!(out, "{},{},{}", o.state.code()?, num(o.probability), sigma)
            .expect("write to String");
    }
    Ok(out)
}

fn parse_num<T: Real>(field: &str, line: usize) -> Result<T> {
    let v: f64 = field
        .trim()
        .parse()
        .map_err(|_| Error::Parse(format!("line {line}: {field:?} is not a number")))?;
    T::from_f64(v).ok_or_else(|| Error::Parse(format!("line {line}: {v} not representable")))
}

fn rows(text: &str, header: &str) -> Result<Vec<(usize, Vec<String>)>> {
    let mut lines = text
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty());
    match lines.next() {
        Some((_, h)) if h.trim() == header => {}
        Some((_, h)) => {
            return Err(Error::Parse(format!(
                "expected header {header:?}, found {:?}",
                h.trim()
            )))
        }
        None => return Err(Error::Parse("empty CSV".into())),
    }
    lines
        .map(|(i, l)| {
            let fields: Vec<String> = l.split(',').map(|f| f.trim().to_string()).collect();
            if fields.len() != 3 {
                return Err(Error::Parse(format!(
                    "line {}: expected 3 fields, found {}",
                    i + 1,
                    fields.len()
                )));
            }
            Ok((i + 1, fields))
        })
        .collect()
}

pub fn read_distribution_csv<T: Real>(text: &str) -> Result<ProbDist<T>> {
    let outcomes = rows(text, DISTRIBUTION_HEADER)?
        .into_iter()
        .map(|(line, f)| {
            Ok(Outcome {
                state: OccupationVector::parse_code(&f[0])?,
                probability: parse_num(&f[1], line)?,
                sigma: if f[2].is_empty() {
                    None
                } else {
                    Some(parse_num(&f[2], line)?)
                },
            })
        })
        .collect::<Result<Vec<_>>>()?;
    ProbDist::new(outcomes)
}

pub fn write_lorenz_csv<T: Real>(curve: &LorenzCurve<T>) -> String {
    let mut out = String::new();
    out.push_str(LORENZ_HEADER);
    out.push('\n');
    for (k, c) in curve.cumulative.iter().enumerate() {
        let sigma = curve.sigma.as_ref().map(|s| num(s[k])).unwrap_or_default();
        writeln!(out, "{},{},{}", k + 1, num(*c), sigma).expect("write to String");
    }
    out
}

pub fn read_lorenz_csv<T: Real>(text: &str) -> Result<LorenzCurve<T>> {
    let rows = rows(text, LORENZ_HEADER)?;
    let mut cumulative = Vec::with_capacity(rows.len());
    let mut sigma = Vec::with_capacity(rows.len());
    for (i, (line, f)) in rows.iter().enumerate() {
        let k: usize = f[0]
            .parse()
            .map_err(|_| Error::Parse(format!("line {line}: bad k {:?}", f[0])))?;
        if k != i + 1 {
            return Err(Error::Parse(format!(
                "line {line}: expected k = {}, found {k}",
                i + 1
            )));
        }
        cumulative.push(parse_num(&f[1], *line)?);
        sigma.push(if f[2].is_empty() {
            None
        } else {
            Some(parse_num(&f[2], *line)?)
        });
    }
    if cumulative.is_empty() {
        return Err(Error::Parse("Lorenz CSV has no rows".into()));
    }
    Ok(LorenzCurve {
        cumulative,
        sigma: sigma.into_iter().collect(),
    })
}
