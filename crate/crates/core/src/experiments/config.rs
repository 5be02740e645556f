use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::grid::FieldDescriptor;
use crate::kernels::{parse_kernel_file, quartic, KernelSpec, Parity};
use crate::{Error, Rational, Result};

/// Named kernel: `x1x2`, `hilbert`, `lambda:<r>`, `quartic:<alpha>,<beta>`,
/// `failing-quartic` or `file:<path>` (kernel file format).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct KernelChoice(pub String);

impl KernelChoice {
    pub fn new(name: &str) -> Self {
        Self(name.to_string())
    }

    pub fn resolve(&self) -> Result<KernelSpec> {
        let name = self.0.trim();
        if let Some(r) = name.strip_prefix("lambda:") {
            return Ok(KernelSpec::lambda_family(&parse_rational(r)?));
        }
        if let Some(rest) = name.strip_prefix("quartic:") {
            let (a, b) = rest.split_once(',').ok_or_else(|| Error::Config(format!("kernel `{name}`")))?;
            return KernelSpec::with_quartic(Some(quartic(&parse_rational(a)?, &parse_rational(b)?)));
        }
        if let Some(path) = name.strip_prefix("file:") {
            let text = std::fs::read_to_string(path)?;
            let file = parse_kernel_file(&text)?;
            if file.identity.is_some() {
                return Err(Error::Config(format!("kernel file `{path}` carries an identity part")));
            }
            return Ok(file.spec);
        }
        match name {
            "x1x2" => KernelSpec::riesz_second_order(2),
            "hilbert" => Ok(KernelSpec::hilbert()),
            "failing-quartic" => Ok(KernelSpec::failing_quartic()),
            _ => Err(Error::Config(format!("unknown kernel `{name}`"))),
        }
    }
}

/// `p/q`, an integer or a finite decimal, exactly.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let t = text.trim();
    let bad = || Error::Parse(format!("rational `{t}`"));
    if let Some((p, q)) = t.split_once('/') {
        let p: num_bigint::BigInt = p.trim().parse().map_err(|_| bad())?;
        let q: num_bigint::BigInt = q.trim().parse().map_err(|_| bad())?;
        if q == 0.into() {
            return Err(bad());
        }
        return Ok(Rational::new(p, q));
    }
    let (sign, digits) = match t.strip_prefix('-') {
        Some(rest) => (-1, rest),
        None => (1, t.strip_prefix('+').unwrap_or(t)),
    };
    let (whole, frac) = digits.split_once('.').unwrap_or((digits, ""));
    if whole.is_empty() && frac.is_empty() || !(whole.chars().chain(frac.chars())).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let num: num_bigint::BigInt = format!("{whole}{frac}").parse().map_err(|_| bad())?;
    let den = num_bigint::BigInt::from(10).pow(frac.len() as u32);
    Ok(Rational::new(num * sign, den))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields, rename_all = "kebab-case")]
pub struct MeanValueConfig {
    pub kernel: KernelChoice,
    pub side_length: f64,
    pub resolution: usize,
    pub field: FieldDescriptor,
    pub points: Vec<Vec<f64>>,
    pub epsilons: Vec<f64>,
    pub tolerance: f64,
}

impl Default for MeanValueConfig {
    fn default() -> Self {
        Self {
            kernel: KernelChoice::new("x1x2"),
            side_length: 8.0,
            resolution: 512,
            field: FieldDescriptor::Gaussian { center: vec![0.5, 0.3], width: 0.5, amplitude: 1.0 },
            points: vec![vec![0.0, 0.0]],
            epsilons: vec![0.25, 0.5],
            tolerance: 1e-2,
        }
    }
}

/// Which maximal operator bounds `T*f`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MaximalChoice {
    M,
    M2,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields, rename_all = "kebab-case")]
pub struct PointwiseConfig {
    pub parity: Parity,
    pub kernel: KernelChoice,
    /// Defaults to `M` for even kernels and `M²` for odd ones.
    pub maximal: Option<MaximalChoice>,
    pub side_length: f64,
    pub resolutions: Vec<usize>,
    pub base_seed: u64,
    pub seeds: u64,
    pub max_mode: u32,
    pub extra_fields: Vec<FieldDescriptor>,
    pub epsilons: Vec<f64>,
    pub radii: Vec<f64>,
    pub drift_tolerance: f64,
    pub min_valid_fraction: f64,
    /// Domain sizes for the `χ_(0,1)` sweep run when the maximal operator is
    /// weaker than the one the parity calls for.
    pub domain_sizes: Vec<f64>,
}

impl PointwiseConfig {
    pub fn even() -> Self {
        Self {
            parity: Parity::Even,
            kernel: KernelChoice::new("x1x2"),
            maximal: None,
            side_length: 8.0,
            resolutions: vec![256, 512],
            base_seed: 0,
            seeds: 20,
            max_mode: 6,
            extra_fields: Vec::new(),
            epsilons: vec![0.0625, 0.125, 0.25, 0.5, 1.0, 2.0],
            radii: vec![0.0625, 0.125, 0.25, 0.5, 1.0, 2.0],
            drift_tolerance: 0.25,
            min_valid_fraction: 0.9,
            domain_sizes: vec![8.0, 16.0, 32.0, 64.0],
        }
    }

    pub fn odd() -> Self {
        Self { parity: Parity::Odd, kernel: KernelChoice::new("hilbert"), ..Self::even() }
    }

    pub fn maximal_choice(&self) -> MaximalChoice {
        self.maximal.unwrap_or(match self.parity {
            Parity::Even => MaximalChoice::M,
            Parity::Odd => MaximalChoice::M2,
        })
    }
}

impl Default for PointwiseConfig {
    fn default() -> Self {
        Self::even()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields, rename_all = "kebab-case")]
pub struct HilbertConfig {
    pub points: Vec<f64>,
    pub g_band: [f64; 2],
    /// `g(x₂)/g(x₁)` is compared against `g-ratio-band`.
    pub g_ratio_points: [f64; 2],
    pub g_ratio_band: [f64; 2],
    pub growth_per_decade: f64,
    /// Lower limit `m` of the comparison integral `A(x)`.
    pub m: f64,
    pub lower_bound_tolerance: f64,
    pub quadrature_tolerance: f64,
}

impl Default for HilbertConfig {
    fn default() -> Self {
        Self {
            points: vec![10.0, 100.0, 1000.0, 10000.0],
            g_band: [0.05, 20.0],
            g_ratio_points: [100.0, 10000.0],
            g_ratio_band: [0.5, 2.0],
            growth_per_decade: 1.5,
            m: 2.0,
            lower_bound_tolerance: 1e-6,
            quadrature_tolerance: 1e-11,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields, rename_all = "kebab-case")]
pub struct L2FailureConfig {
    pub treatments: Vec<KernelChoice>,
    pub control: KernelChoice,
    pub side_length: f64,
    pub resolution: usize,
    /// `|ξ₀|` of the spectral bump.
    pub frequency: f64,
    pub epsilon: f64,
    pub sigmas: Vec<f64>,
    pub min_growth: f64,
    pub control_band: f64,
}

impl Default for L2FailureConfig {
    fn default() -> Self {
        Self {
            treatments: vec![KernelChoice::new("lambda:1"), KernelChoice::new("failing-quartic")],
            control: KernelChoice::new("lambda:1/2"),
            side_length: 128.0,
            resolution: 256,
            frequency: 3.0,
            epsilon: 1.0,
            sigmas: vec![0.5, 0.25, 0.125],
            min_growth: 3.0,
            control_band: 1.5,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct SurveyEntry {
    pub kernel: KernelChoice,
    /// Expected truth value of the full condition, when known.
    #[serde(default)]
    pub expect: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields, rename_all = "kebab-case")]
pub struct SurveyConfig {
    pub entries: Vec<SurveyEntry>,
    pub pointwise: PointwiseConfig,
}

impl Default for SurveyConfig {
    fn default() -> Self {
        let entry = |k: &str, e: bool| SurveyEntry { kernel: KernelChoice::new(k), expect: Some(e) };
        Self {
            entries: vec![
                entry("lambda:0", true),
                entry("lambda:1/2", true),
                entry("lambda:99/100", true),
                entry("lambda:1", false),
                entry("lambda:2", false),
                entry("failing-quartic", false),
            ],
            pointwise: PointwiseConfig {
                resolutions: vec![128, 256],
                seeds: 4,
                epsilons: vec![0.25, 0.5, 1.0, 2.0],
                radii: vec![0.25, 0.5, 1.0, 2.0],
                ..PointwiseConfig::even()
            },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields, rename_all = "kebab-case")]
pub struct LlogLConfig {
    pub side_length: f64,
    pub resolution: usize,
    pub base_seed: u64,
    pub seeds: u64,
    pub max_mode: u32,
    pub half_widths: Vec<usize>,
    /// Every `stride`-th node along each axis is sampled.
    pub stride: usize,
    pub constant_value: f64,
    pub constant_tolerance: f64,
    pub ratio_band: [f64; 2],
}

impl Default for LlogLConfig {
    fn default() -> Self {
        Self {
            side_length: 8.0,
            resolution: 64,
            base_seed: 0,
            seeds: 20,
            max_mode: 6,
            half_widths: vec![0, 1, 2, 4, 8],
            stride: 8,
            constant_value: 2.5,
            constant_tolerance: 1e-10,
            ratio_band: [0.05, 20.0],
        }
    }
}

/// One section per experiment; missing sections take the defaults.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields, rename_all = "kebab-case")]
pub struct ExperimentConfig {
    pub mean_value: MeanValueConfig,
    pub pointwise_even: PointwiseConfig,
    pub pointwise_odd: PointwiseConfig,
    pub hilbert_counterexample: HilbertConfig,
    pub l2_failure: L2FailureConfig,
    pub condition_survey: SurveyConfig,
    pub llogl: LlogLConfig,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            mean_value: MeanValueConfig::default(),
            pointwise_even: PointwiseConfig::even(),
            pointwise_odd: PointwiseConfig::odd(),
            hilbert_counterexample: HilbertConfig::default(),
            l2_failure: L2FailureConfig::default(),
            condition_survey: SurveyConfig::default(),
            llogl: LlogLConfig::default(),
        }
    }
}

impl ExperimentConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        let config: Self = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        config.validate()?;
        Ok(config)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
        Self::from_toml(&text)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("config serializes")
    }

    /// Resolves every kernel and checks list parameters before any computation.
    pub fn validate(&self) -> Result<()> {
        let mut kernels = vec![&self.mean_value.kernel, &self.pointwise_even.kernel, &self.pointwise_odd.kernel];
        kernels.extend(&self.l2_failure.treatments);
        kernels.push(&self.l2_failure.control);
        kernels.extend(self.condition_survey.entries.iter().map(|e| &e.kernel));
        for k in kernels {
            k.resolve().map_err(|e| Error::Config(format!("kernel `{}`: {e}", k.0)))?;
        }
        let nonempty = |name: &str, len: usize| {
            if len == 0 {
                Err(Error::Config(format!("`{name}` is empty")))
            } else {
                Ok(())
            }
        };
        nonempty("mean-value.epsilons", self.mean_value.epsilons.len())?;
        nonempty("mean-value.points", self.mean_value.points.len())?;
        for p in [&self.pointwise_even, &self.pointwise_odd, &self.condition_survey.pointwise] {
            nonempty("pointwise.resolutions", p.resolutions.len())?;
            nonempty("pointwise.epsilons", p.epsilons.len())?;
            let n = *p.resolutions.iter().min().expect("nonempty");
            above_floor("pointwise.epsilons", &p.epsilons, p.side_length, n)?;
        }
        let mv = &self.mean_value;
        above_floor("mean-value.epsilons", &mv.epsilons, mv.side_length, mv.resolution)?;
        nonempty("hilbert-counterexample.points", self.hilbert_counterexample.points.len())?;
        nonempty("l2-failure.sigmas", self.l2_failure.sigmas.len())?;
        if self.llogl.stride == 0 {
            return Err(Error::Config("`llogl.stride` must be positive".into()));
        }
        Ok(())
    }
}

/// Truncation levels must be at least two grid cells on the coarsest grid.
fn above_floor(name: &str, epsilons: &[f64], side_length: f64, resolution: usize) -> Result<()> {
    let floor = 2.0 * side_length / resolution.max(1) as f64;
    match epsilons.iter().find(|e| !(**e >= floor * (1.0 - 1e-12))) {
        Some(e) => Err(Error::Config(format!("`{name}` contains {e}, below the floor 2h = {floor}"))),
        None => Ok(()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rationals() {
        assert_eq!(parse_rational("0.99").unwrap(), Rational::new(99.into(), 100.into()));
        assert_eq!(parse_rational("-1/2").unwrap(), Rational::new((-1).into(), 2.into()));
        assert_eq!(parse_rational("2").unwrap(), Rational::from_integer(2.into()));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn defaults_round_trip() {
        let d = ExperimentConfig::default();
        let text = d.to_toml();
        assert_eq!(ExperimentConfig::from_toml(&text).unwrap(), d);
        assert_eq!(ExperimentConfig::from_toml("").unwrap(), d);
    }

    #[test]
    fn rejects_unknown_keys_and_kernels() {
        assert!(ExperimentConfig::from_toml("[mean-value]\nbogus = 1\n").is_err());
        assert!(ExperimentConfig::from_toml("[mean-value]\nkernel = \"nope\"\n").is_err());
        let coarse = "[pointwise-even]\nresolutions = [64, 128]\n";
        assert!(matches!(ExperimentConfig::from_toml(coarse), Err(Error::Config(_))));
        let c = ExperimentConfig::from_toml("[l2-failure]\ncontrol = \"lambda:0.25\"\n").unwrap();
        assert_eq!(c.l2_failure.control, KernelChoice::new("lambda:0.25"));
    }
}
