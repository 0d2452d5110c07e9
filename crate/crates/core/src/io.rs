//! Text formats for instances.
//!
//! Points: first line `n d`, then `n` lines of `d` reals.
//! Matrix: first line `n`, then `n` lines of `n` reals.
//! Fields are separated by any whitespace.

use std::fmt::Write as _;
use std::str::FromStr;

use crate::error::{Result, RoapError};
use crate::metric::{MetricKind, PathInstance};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Points,
    Matrix,
}

impl FromStr for Format {
    type Err = RoapError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "points" => Ok(Format::Points),
            "matrix" => Ok(Format::Matrix),
            other => Err(RoapError::Parse(format!("unknown format `{other}`"))),
        }
    }
}

/// Raw instance contents, before any validation.
#[derive(Debug, Clone, PartialEq)]
pub enum InstanceData {
    Points { dim: usize, coords: Vec<f64> },
    Matrix { n: usize, values: Vec<f64> },
}

impl InstanceData {
    pub fn n(&self) -> usize {
        match self {
            InstanceData::Points { dim, coords } => coords.len() / (*dim).max(1),
            InstanceData::Matrix { n, .. } => *n,
        }
    }

    pub fn format(&self) -> Format {
        match self {
            InstanceData::Points { .. } => Format::Points,
            InstanceData::Matrix { .. } => Format::Matrix,
        }
    }

    /// Whether every number is an integer, so exact mode can be used.
    pub fn is_integral(&self) -> bool {
        let vals = match self {
            InstanceData::Points { coords, .. } => coords,
            InstanceData::Matrix { values, .. } => values,
        };
        vals.iter().all(|x| x.fract() == 0.0)
    }

    /// Builds the instance. `metric` only matters for points.
    pub fn build<S: Scalar>(&self, metric: MetricKind) -> Result<PathInstance<S>> {
        match self {
            InstanceData::Points { dim, coords } => {
                PathInstance::from_flat_points(*dim, coords.clone(), metric)
            }
            InstanceData::Matrix { n, values } => {
                let rows: Vec<Vec<f64>> = values.chunks(*n).map(<[f64]>::to_vec).collect();
                PathInstance::from_matrix(&rows)
            }
        }
    }

    pub fn parse(text: &str, format: Format) -> Result<Self> {
        let mut tokens = text.split_whitespace();
        let mut header = |what: &str| -> Result<usize> {
            let tok = tokens
                .next()
                .ok_or_else(|| RoapError::Parse(format!("missing {what} in header")))?;
            tok.parse::<usize>()
                .map_err(|_| RoapError::Parse(format!("bad {what} `{tok}` in header")))
        };
        let (n, width) = match format {
            Format::Points => {
                let n = header("point count")?;
                (n, header("dimension")?)
            }
            Format::Matrix => {
                let n = header("vertex count")?;
                (n, n)
            }
        };
        if n == 0 {
            return Err(RoapError::Parse("instance has no vertices".into()));
        }
        let expected = n
            .checked_mul(width)
            .ok_or_else(|| RoapError::Parse("header sizes overflow".into()))?;
        let mut values = Vec::with_capacity(expected.min(1 << 24));
        for tok in tokens {
            let x: f64 = tok
                .parse()
                .map_err(|_| RoapError::Parse(format!("bad number `{tok}`")))?;
            if !x.is_finite() {
                return Err(RoapError::Parse(format!("non-finite number `{tok}`")));
            }
            values.push(x);
        }
        if values.len() != expected {
            return Err(RoapError::Parse(format!(
                "expected {expected} numbers after the header, found {}",
                values.len()
            )));
        }
        Ok(match format {
            Format::Points => InstanceData::Points {
                dim: width,
                coords: values,
            },
            Format::Matrix => InstanceData::Matrix { n, values },
        })
    }

    /// Serializes in the matching text format. Numbers use the shortest
    /// representation that parses back to the same value.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let (width, vals) = match self {
            InstanceData::Points { dim, coords } => {
                let _ = writeln!(out, "{} {}", self.n(), dim);
                (*dim, coords)
            }
            InstanceData::Matrix { n, values } => {
                let _ = writeln!(out, "{n}");
                (*n, values)
            }
        };
        for row in vals.chunks(width.max(1)) {
            let line: Vec<String> = row
                .iter()
                .map(|x| format!("{x:?}"))
                .map(trim_float)
                .collect();
            let _ = writeln!(out, "{}", line.join(" "));
        }
        out
    }
}

fn trim_float(s: String) -> String {
    match s.strip_suffix(".0") {
        Some(t) => t.to_string(),
        None => s,
    }
}
