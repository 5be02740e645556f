//! Kernel files.
//!
//! A kernel file is TOML. `dim` gives the dimension, an optional `identity`
//! weight turns the file into the element `λI + T`, and every `[[term]]`
//! table holds one term in one of two forms:
//!
//! ```toml
//! dim = 2
//! identity = "1"          # optional
//!
//! [[term]]                # planar: weight · Re(c z^d) / |z|^{2+d}
//! degree = 2
//! coefficient = "-1/2i"   # c as `a`, `bi` or `a ± bi`, rationals only
//! weight = "-1/pi"        # r, r/pi, r*pi^k, ...
//!
//! [[term]]                # monomial: weight · x_j (x_k) / |x|^{n+d}
//! axes = [0, 1]
//! weight = "1"
//! ```

use std::str::FromStr;

use num_complex::Complex;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::{format_gaussian, HarmonicPolynomial, KernelSpec, KernelTerm, Shape, Weight};
use crate::{Error, GaussianRational, Rational, Result};

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFile {
    dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    identity: Option<String>,
    #[serde(default)]
    term: Vec<RawTerm>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTerm {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    degree: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    coefficient: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    axes: Option<Vec<usize>>,
    weight: String,
}

/// Contents of a kernel file.
#[derive(Clone, Debug, PartialEq)]
pub struct KernelFile {
    pub spec: KernelSpec,
    pub identity: Option<Weight>,
}

pub fn parse_gaussian(s: &str) -> Result<GaussianRational> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || Error::Parse(format!("complex coefficient `{s}`"));
    let rat = |x: &str| -> Result<Rational> {
        match x {
            "" | "+" => Ok(Rational::one()),
            "-" => Ok(-Rational::one()),
            _ => Rational::from_str(x.strip_prefix('+').unwrap_or(x)).map_err(|_| bad()),
        }
    };
    let Some(body) = t.strip_suffix('i') else {
        return Ok(Complex::new(rat(&t)?, Rational::zero()));
    };
    let split = body.char_indices().filter(|(i, c)| *i > 0 && (*c == '+' || *c == '-')).map(|(i, _)| i).last();
    match split {
        Some(i) => Ok(Complex::new(rat(&body[..i])?, rat(&body[i..])?)),
        None => Ok(Complex::new(Rational::zero(), rat(body)?)),
    }
}

pub fn parse_kernel_file(text: &str) -> Result<KernelFile> {
    let raw: RawFile = toml::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let mut terms = Vec::with_capacity(raw.term.len());
    for (k, t) in raw.term.iter().enumerate() {
        let weight: Weight = t.weight.parse()?;
        let shape = match (&t.degree, &t.coefficient, &t.axes) {
            (Some(d), Some(c), None) => {
                if raw.dim != 2 {
                    return Err(Error::InvalidKernel(format!("term {k}: complex form needs dim = 2")));
                }
                Shape::Planar(HarmonicPolynomial::from_complex(*d, &parse_gaussian(c)?)?)
            }
            (None, None, Some(axes)) => Shape::Monomial(axes.clone()),
            _ => return Err(Error::Parse(format!("term {k}: give either `degree` and `coefficient`, or `axes`"))),
        };
        terms.push(KernelTerm::new(weight, shape));
    }
    let spec = KernelSpec::new(raw.dim, terms)?;
    let identity = raw.identity.as_deref().map(Weight::from_str).transpose()?;
    Ok(KernelFile { spec, identity })
}

pub fn write_kernel_file(file: &KernelFile) -> Result<String> {
    let term = file
        .spec
        .terms()
        .iter()
        .map(|t| match &t.shape {
            Shape::Planar(p) => RawTerm {
                degree: Some(p.degree()),
                coefficient: Some(format_gaussian(&p.to_complex())),
                axes: None,
                weight: t.weight.to_string(),
            },
            Shape::Monomial(axes) => {
                RawTerm { degree: None, coefficient: None, axes: Some(axes.clone()), weight: t.weight.to_string() }
            }
        })
        .collect();
    let raw = RawFile { dim: file.spec.dim(), identity: file.identity.as_ref().map(ToString::to_string), term };
    toml::to_string(&raw).map_err(|e| Error::Parse(e.to_string()))
}
