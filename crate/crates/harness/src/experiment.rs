//! Convergence experiments: build the quasi-interpolant for a sequence of
//! uniform refinements and measure the sampled maximum error.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use split_spline::{
    quasi_interpolate, Basis64, Error, FunctionOracle, FunctionalTable, Interval, Interval64, Partition64, PartitionQ,
    PhiMap, QiKind, Rational, Spline64,
};

use crate::functions::TestFunction;
use crate::HarnessError;

pub const DEFAULT_SAMPLES: usize = 201;

/// How the degrees `phi(i)` are assigned to the vertices `v_0..v_n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum PhiPattern {
    /// Cycle through the pattern starting at `v_0`.
    Alternating(Vec<usize>),
    Constant(usize),
    /// One entry per vertex; only usable with a matching `n`.
    List(Vec<usize>),
}

impl PhiPattern {
    pub fn phi_map(&self, n: usize) -> Result<PhiMap, Error> {
        match self {
            PhiPattern::Alternating(pattern) => PhiMap::alternating(n + 1, pattern),
            PhiPattern::Constant(k) => PhiMap::constant(n + 1, *k),
            PhiPattern::List(values) if values.len() == n + 1 => PhiMap::new(values.clone()),
            PhiPattern::List(values) => {
                Err(Error::InvalidArgument(format!("phi list has {} entries but n = {n} needs {}", values.len(), n + 1)))
            }
        }
    }
}

fn parse_list(s: &str) -> Result<Vec<usize>, HarnessError> {
    s.split(',')
        .map(|t| t.trim().parse::<usize>().map_err(|_| HarnessError::Parse(format!("bad phi entry '{t}'"))))
        .collect()
}

impl FromStr for PhiPattern {
    type Err = HarnessError;

    fn from_str(s: &str) -> Result<Self, HarnessError> {
        let (tag, rest) = s.split_once(':').ok_or_else(|| HarnessError::Parse(format!("phi pattern '{s}' needs a tag")))?;
        match tag {
            "alternating" => Ok(PhiPattern::Alternating(parse_list(rest)?)),
            "constant" => Ok(PhiPattern::Constant(parse_list(rest)?.first().copied().unwrap_or(0))),
            "list" => Ok(PhiPattern::List(parse_list(rest)?)),
            _ => Err(HarnessError::Parse(format!("unknown phi pattern '{tag}'"))),
        }
    }
}

impl fmt::Display for PhiPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[usize]| v.iter().map(|k| k.to_string()).collect::<Vec<_>>().join(",");
        match self {
            PhiPattern::Alternating(v) => write!(f, "alternating:{}", join(v)),
            PhiPattern::Constant(k) => write!(f, "constant:{k}"),
            PhiPattern::List(v) => write!(f, "list:{}", join(v)),
        }
    }
}

impl TryFrom<String> for PhiPattern {
    type Error = HarnessError;

    fn try_from(s: String) -> Result<Self, HarnessError> {
        s.parse()
    }
}

impl From<PhiPattern> for String {
    fn from(p: PhiPattern) -> String {
        p.to_string()
    }
}

/// Placement of the split point inside each cell. Only midpoints are supported.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SplitRule {
    #[default]
    Midpoint,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Csv,
    Markdown,
}

mod kind_serde {
    use serde::{Deserialize, Deserializer, Serializer};
    use split_spline::QiKind;

    pub fn serialize<S: Serializer>(kind: &QiKind, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(kind)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<QiKind, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub interval: [f64; 2],
    pub n: Vec<usize>,
    pub phi: PhiPattern,
    #[serde(default)]
    pub split: SplitRule,
    #[serde(with = "kind_serde")]
    pub kind: QiKind,
    pub function: TestFunction,
    #[serde(default = "default_samples")]
    pub samples: usize,
    #[serde(default)]
    pub out: Option<PathBuf>,
    #[serde(default)]
    pub format: OutputFormat,
}

fn default_samples() -> usize {
    DEFAULT_SAMPLES
}

impl ExperimentConfig {
    /// Uniform alternating 3/4 setup on `[0, 1]`.
    pub fn alternating_3_4(kind: QiKind, function: TestFunction, n: Vec<usize>) -> Self {
        Self {
            interval: [0.0, 1.0],
            n,
            phi: PhiPattern::Alternating(vec![3, 4]),
            split: SplitRule::Midpoint,
            kind,
            function,
            samples: DEFAULT_SAMPLES,
            out: None,
            format: OutputFormat::Csv,
        }
    }

    pub fn from_json(text: &str) -> Result<Self, HarnessError> {
        let config: Self = serde_json::from_str(text)?;
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> Result<(), HarnessError> {
        if self.n.is_empty() || self.n[0] == 0 || self.n.windows(2).any(|w| w[0] >= w[1]) {
            return Err(HarnessError::Config(format!("n values must be positive and increasing, got {:?}", self.n)));
        }
        if self.samples < 2 {
            return Err(HarnessError::Config("at least 2 samples are needed".into()));
        }
        Interval::new(self.interval[0], self.interval[1])?;
        Ok(())
    }

    pub fn domain(&self) -> Result<Interval64, Error> {
        Interval::new(self.interval[0], self.interval[1])
    }

    pub fn partition(&self, n: usize) -> Result<Partition64, Error> {
        Partition64::uniform(self.domain()?, n, self.phi.phi_map(n)?)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ResultRow {
    pub n: usize,
    pub error: f64,
    pub nco: Option<f64>,
}

/// Maximum of `|q(x) - f(x)|` over `samples` equally spaced points spanning the
/// spline's domain, both endpoints included.
pub fn estimate_error(q: &Spline64, f: &impl FunctionOracle<f64>, samples: usize) -> Result<f64, Error> {
    if samples < 2 {
        return Err(Error::InvalidArgument("at least 2 samples are needed".into()));
    }
    let domain = q.partition().domain();
    let (a, b) = (domain.a(), domain.b());
    let last = samples - 1;
    (0..samples).try_fold(0.0f64, |worst, l| {
        let x = if l == last { b } else { a + (b - a) * l as f64 / last as f64 };
        Ok(worst.max((q.value(x)? - f.eval(x)).abs()))
    })
}

/// Numerical convergence order between two refinement levels.
pub fn nco(e1: f64, n1: usize, e2: f64, n2: usize) -> Result<f64, Error> {
    if e1 == 0.0 || e2 == 0.0 {
        return Err(Error::Undefined("convergence order of a zero error".into()));
    }
    if !(e1 > 0.0 && e2 > 0.0) || n1 == 0 || n2 <= n1 {
        return Err(Error::InvalidArgument(format!("nco needs positive errors and n2 > n1, got n1={n1}, n2={n2}")));
    }
    Ok((e1 / e2).ln() / (n2 as f64 / n1 as f64).ln())
}

/// Error of the configured operator applied to `f` on the level-`n` partition.
pub fn error_for<F: FunctionOracle<f64>>(config: &ExperimentConfig, n: usize, f: &F) -> Result<f64, Error> {
    let partition = config.partition(n)?;
    let basis = Basis64::new(&partition)?;
    let q = quasi_interpolate(&basis, config.kind, f)?;
    estimate_error(&q, f, config.samples)
}

/// Runs the configured experiment with an arbitrary function in place of the
/// configured test function.
pub fn run_experiment_with<F: FunctionOracle<f64> + Sync>(
    config: &ExperimentConfig,
    f: &F,
) -> Result<Vec<ResultRow>, HarnessError> {
    config.validate()?;
    let errors = config.n.par_iter().map(|&n| error_for(config, n, f)).collect::<Result<Vec<_>, _>>()?;
    let mut rows: Vec<ResultRow> = Vec::with_capacity(errors.len());
    for (k, (&n, &error)) in config.n.iter().zip(&errors).enumerate() {
        let order = match k {
            0 => None,
            _ => nco(errors[k - 1], config.n[k - 1], error, n).ok(),
        };
        rows.push(ResultRow { n, error, nco: order });
    }
    Ok(rows)
}

pub fn run_experiment(config: &ExperimentConfig) -> Result<Vec<ResultRow>, HarnessError> {
    run_experiment_with(config, &config.function)
}

/// Number of distinct scalar inputs (derivative values counted individually,
/// evaluation points deduplicated) the operator consumes at level `n`.
///
/// Computed exactly on the integer partition of `[0, n]`, which has the same
/// combinatorics as any uniform partition.
pub fn data_count(config: &ExperimentConfig, n: usize) -> Result<usize, Error> {
    let domain = Interval::new(Rational::from_integer(0), Rational::from_integer(n as i128))?;
    let partition = PartitionQ::uniform(domain, n, config.phi.phi_map(n)?)?;
    Ok(FunctionalTable::new(&partition, config.kind)?.distinct_inputs())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nco_examples() {
        assert!((nco(16.0e-3, 8, 1.0e-3, 16).unwrap() - 4.0).abs() < 1e-12);
        assert!((nco(1.78188e-6, 16, 1.05981e-7, 32).unwrap() - 4.07153).abs() < 5e-5);
        assert_eq!(nco(2.0, 8, 2.0, 16).unwrap(), 0.0);
        assert!(matches!(nco(0.0, 8, 1.0, 16), Err(Error::Undefined(_))));
        assert!(nco(1.0, 16, 1.0, 8).is_err());
    }

    #[test]
    fn phi_pattern_round_trip() {
        for text in ["alternating:3,4", "constant:2", "list:3,4,3"] {
            let p: PhiPattern = text.parse().unwrap();
            assert_eq!(p.to_string(), text);
        }
        assert!("zigzag:3".parse::<PhiPattern>().is_err());
        assert!("alternating:3,x".parse::<PhiPattern>().is_err());
        let list: PhiPattern = "list:3,4,3".parse().unwrap();
        assert!(list.phi_map(2).is_ok());
        assert!(list.phi_map(3).is_err());
        let alt: PhiPattern = "alternating:3,4".parse().unwrap();
        assert_eq!(alt.phi_map(4).unwrap().values(), &[3, 4, 3, 4, 3]);
    }

    #[test]
    fn config_json_defaults_and_validation() {
        let config = ExperimentConfig::from_json(
            r#"{"interval":[0,1],"n":[4,8],"phi":"alternating:3,4","kind":"point-value","function":"g3"}"#,
        )
        .unwrap();
        assert_eq!(config.samples, DEFAULT_SAMPLES);
        assert_eq!(config.kind, QiKind::PointValue);
        assert_eq!(config.format, OutputFormat::Csv);
        let back = ExperimentConfig::from_json(&serde_json::to_string(&config).unwrap()).unwrap();
        assert_eq!(back, config);
        let bad = r#"{"interval":[0,1],"n":[8,4],"phi":"constant:3","kind":"differential","function":"f1"}"#;
        assert!(matches!(ExperimentConfig::from_json(bad), Err(HarnessError::Config(_))));
    }

    #[test]
    fn error_of_exact_function_is_zero() {
        let partition = Partition64::uniform(Interval::new(0.0, 1.0).unwrap(), 4, PhiMap::constant(5, 3).unwrap()).unwrap();
        let basis = Basis64::new(&partition).unwrap();
        let cubic = split_spline::Derivatives {
            f: |x: f64, j: usize| match j {
                0 => x * x * x - x,
                1 => 3.0 * x * x - 1.0,
                2 => 6.0 * x,
                _ => 6.0,
            },
            max_order: 3,
        };
        let q = quasi_interpolate(&basis, QiKind::Differential, &cubic).unwrap();
        assert!(estimate_error(&q, &cubic, 201).unwrap() < 1e-14);
        assert!(estimate_error(&q, &cubic, 1).is_err());
    }

    #[test]
    fn constant_reproduced_by_every_kind() {
        let one = split_spline::Derivatives { f: |_: f64, j: usize| if j == 0 { 1.0 } else { 0.0 }, max_order: 3 };
        for kind in QiKind::ALL {
            let config = ExperimentConfig::alternating_3_4(kind, TestFunction::F1, vec![4, 8, 16]);
            for row in run_experiment_with(&config, &one).unwrap() {
                assert!(row.error < 1e-13, "{kind} n={}: {}", row.n, row.error);
            }
        }
    }

    #[test]
    fn data_counts_small_cases() {
        let mut config = ExperimentConfig::alternating_3_4(QiKind::Differential, TestFunction::F1, vec![4]);
        config.phi = PhiPattern::Constant(1);
        for n in [1, 3, 6] {
            assert_eq!(data_count(&config, n).unwrap(), n + 1);
        }
    }
}
