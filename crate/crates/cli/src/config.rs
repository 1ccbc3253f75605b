//! Job configuration: one JSON document per run.

use std::path::Path;

use num_complex::Complex64 as C;
use serde::Deserialize;

use stripq_core::geometry::Param;
use stripq_core::{Basepoint, StripGeometry};

use crate::error::CliError;

pub const MAX_X_ORDER: usize = 30;
pub const MAX_T_ORDER: i64 = 120;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Tsv,
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum RawParam {
    Name(String),
    Real(f64),
    Complex([f64; 2]),
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGeometry {
    #[serde(default)]
    alphas: Vec<RawParam>,
    #[serde(default)]
    betas: Vec<RawParam>,
    framing: i64,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTruncation {
    x_order: usize,
    t_order: i64,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawNumeric {
    q: f64,
    x: RawParam,
    #[serde(default = "default_terms")]
    terms: usize,
    #[serde(default = "default_terms")]
    residues: usize,
}

fn default_terms() -> usize {
    25
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    geometry: RawGeometry,
    basepoint: Basepoint,
    truncation: Option<RawTruncation>,
    numeric: Option<RawNumeric>,
    format: Option<Format>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct NumericBlock {
    pub q: f64,
    pub x: C,
    pub terms: usize,
    pub residues: usize,
}

#[derive(Clone, Debug)]
pub struct JobConfig {
    pub geometry: StripGeometry,
    pub basepoint: Basepoint,
    pub x_order: usize,
    pub t_order: i64,
    pub numeric: Option<NumericBlock>,
    pub format: Format,
}

impl JobConfig {
    pub fn load(path: &Path) -> Result<JobConfig, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
        JobConfig::parse(&text)
    }

    pub fn parse(text: &str) -> Result<JobConfig, CliError> {
        let raw: RawConfig = serde_json::from_str(text).map_err(|e| CliError::Config(e.to_string()))?;
        let alphas = params(&raw.geometry.alphas, "alphas", 'a')?;
        let betas = params(&raw.geometry.betas, "betas", 'b')?;
        let symbolic = alphas.iter().chain(&betas).filter(|p| **p == Param::Symbolic).count();
        if symbolic != 0 && symbolic != alphas.len() + betas.len() {
            let first_num = raw
                .geometry
                .alphas
                .iter()
                .map(|p| ("alphas", p))
                .chain(raw.geometry.betas.iter().map(|p| ("betas", p)))
                .find(|(_, p)| !matches!(p, RawParam::Name(_)))
                .map(|(k, _)| k)
                .unwrap_or("alphas");
            return Err(CliError::Config(format!(
                "geometry mixes symbolic names with numbers (first number in {first_num}); use all names or all values"
            )));
        }
        let geometry = StripGeometry::new(alphas, betas, raw.geometry.framing)
            .map_err(|e| CliError::Config(e.to_string()))?;
        let (x_order, t_order) = match raw.truncation {
            Some(t) => (t.x_order, t.t_order),
            None => (6, 16),
        };
        let numeric = raw.numeric.map(numeric_block).transpose()?;
        let cfg = JobConfig {
            geometry,
            basepoint: raw.basepoint,
            x_order,
            t_order,
            numeric,
            format: raw.format.unwrap_or(Format::Json),
        };
        cfg.check_orders()?;
        Ok(cfg)
    }

    pub fn check_orders(&self) -> Result<(), CliError> {
        if self.x_order > MAX_X_ORDER {
            return Err(CliError::Config(format!("x_order {} exceeds {MAX_X_ORDER}", self.x_order)));
        }
        if !(1..=MAX_T_ORDER).contains(&self.t_order) {
            return Err(CliError::Config(format!("t_order {} outside 1..={MAX_T_ORDER}", self.t_order)));
        }
        Ok(())
    }
}

fn params(raw: &[RawParam], field: &str, prefix: char) -> Result<Vec<Param>, CliError> {
    raw.iter()
        .enumerate()
        .map(|(j, p)| match p {
            RawParam::Name(name) => {
                let expect = format!("{prefix}{}", j + 1);
                if *name == expect {
                    Ok(Param::Symbolic)
                } else {
                    Err(CliError::Config(format!("{field}[{j}] = \"{name}\": expected \"{expect}\" or a number")))
                }
            }
            RawParam::Real(v) => finite(C::new(*v, 0.0), field, j).map(Param::Numeric),
            RawParam::Complex([re, im]) => finite(C::new(*re, *im), field, j).map(Param::Numeric),
        })
        .collect()
}

fn finite(c: C, field: &str, j: usize) -> Result<C, CliError> {
    if c.is_finite() {
        Ok(c)
    } else {
        Err(CliError::Config(format!("{field}[{j}] is not finite")))
    }
}

fn numeric_block(raw: RawNumeric) -> Result<NumericBlock, CliError> {
    if !(raw.q > 0.0 && raw.q < 1.0) {
        return Err(CliError::Config(format!("numeric.q = {} must lie in (0, 1)", raw.q)));
    }
    let x = match raw.x {
        RawParam::Real(v) => C::new(v, 0.0),
        RawParam::Complex([re, im]) => C::new(re, im),
        RawParam::Name(n) => return Err(CliError::Config(format!("numeric.x = \"{n}\" must be a number"))),
    };
    if !x.is_finite() {
        return Err(CliError::Config("numeric.x is not finite".into()));
    }
    Ok(NumericBlock {
        q: raw.q,
        x,
        terms: raw.terms,
        residues: raw.residues,
    })
}
