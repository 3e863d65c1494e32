//! Parsing of loss names and interval-width policies.

use std::fmt;
use std::path::PathBuf;

use mrc_core::features::theorem3_lambda;
use mrc_core::{FeatureMap, LossKind};

use crate::error::{CliError, CliResult};

/// Default interval width per coordinate.
pub const DEFAULT_LAMBDA: f64 = 0.25;

/// `zero-one`, `log` or `alpha:<a>`.
pub fn parse_loss(text: &str) -> CliResult<LossKind> {
    match text.trim() {
        "zero-one" => Ok(LossKind::ZeroOne),
        "log" => Ok(LossKind::Log),
        other => match other.strip_prefix("alpha:") {
            Some(a) => {
                let alpha: f64 = a
                    .trim()
                    .parse()
                    .map_err(|_| CliError::input(format!("bad alpha `{a}`")))?;
                Ok(LossKind::alpha(alpha)?)
            }
            None => Err(CliError::input(format!(
                "unknown loss `{other}` (expected zero-one, log or alpha:<a>)"
            ))),
        },
    }
}

pub fn loss_label(loss: &LossKind) -> String {
    match loss {
        LossKind::Alpha(a) => format!("alpha:{}", a.alpha()),
        other => other.name().to_string(),
    }
}

/// How the interval widths `lambda` are chosen.
#[derive(Debug, Clone, PartialEq)]
pub enum LambdaPolicy {
    /// The same width for every coordinate.
    Scalar(f64),
    /// One width per coordinate, read from a file of numbers.
    File(PathBuf),
    /// Widths giving coverage with probability `1 - delta`.
    Coverage(f64),
}

impl LambdaPolicy {
    /// `0.25`, `theorem3:0.05`, or a path to a file.
    pub fn parse(text: &str) -> CliResult<Self> {
        let text = text.trim();
        if let Some(delta) = text.strip_prefix("theorem3:") {
            let delta: f64 = delta
                .trim()
                .parse()
                .map_err(|_| CliError::input(format!("bad delta `{delta}`")))?;
            if !(delta > 0.0 && delta < 1.0) {
                return Err(CliError::input(format!("delta must lie in (0, 1), got {delta}")));
            }
            return Ok(LambdaPolicy::Coverage(delta));
        }
        if let Ok(value) = text.parse::<f64>() {
            if !(value.is_finite() && value >= 0.0) {
                return Err(CliError::input(format!("lambda must be non-negative, got {value}")));
            }
            return Ok(LambdaPolicy::Scalar(value));
        }
        let path = text.strip_prefix("file:").unwrap_or(text);
        Ok(LambdaPolicy::File(PathBuf::from(path)))
    }

    pub fn delta(&self) -> Option<f64> {
        match self {
            LambdaPolicy::Coverage(d) => Some(*d),
            _ => None,
        }
    }

    /// Widths for the coordinates of `fm`.
    pub fn resolve(&self, fm: &FeatureMap) -> CliResult<Vec<f64>> {
        let m = fm.len();
        match self {
            LambdaPolicy::Scalar(v) => Ok(vec![*v; m]),
            LambdaPolicy::Coverage(delta) => Ok(theorem3_lambda(fm, *delta)?),
            LambdaPolicy::File(path) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| CliError::input(format!("{}: {e}", path.display())))?;
                let values: Vec<f64> = text
                    .split(|c: char| c == ',' || c.is_whitespace())
                    .filter(|t| !t.is_empty())
                    .map(|t| {
                        t.parse::<f64>()
                            .map_err(|_| CliError::input(format!("bad lambda entry `{t}`")))
                    })
                    .collect::<CliResult<_>>()?;
                if values.len() != m {
                    return Err(CliError::input(format!(
                        "lambda file has {} entries, the feature map has {m} coordinates",
                        values.len()
                    )));
                }
                if let Some(v) = values.iter().find(|v| !(v.is_finite() && **v >= 0.0)) {
                    return Err(CliError::input(format!("lambda entries must be non-negative, got {v}")));
                }
                Ok(values)
            }
        }
    }
}

impl fmt::Display for LambdaPolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LambdaPolicy::Scalar(v) => write!(f, "{v}"),
            LambdaPolicy::File(p) => write!(f, "file:{}", p.display()),
            LambdaPolicy::Coverage(d) => write!(f, "theorem3:{d}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn losses() {
        assert_eq!(parse_loss("zero-one").unwrap(), LossKind::ZeroOne);
        assert_eq!(parse_loss("log").unwrap(), LossKind::Log);
        assert_eq!(loss_label(&parse_loss("alpha:2").unwrap()), "alpha:2");
        assert!(parse_loss("alpha:1").is_err());
        assert!(parse_loss("hinge").is_err());
    }

    #[test]
    fn policies() {
        assert_eq!(LambdaPolicy::parse("0.25").unwrap(), LambdaPolicy::Scalar(0.25));
        assert_eq!(LambdaPolicy::parse("theorem3:0.05").unwrap(), LambdaPolicy::Coverage(0.05));
        assert!(LambdaPolicy::parse("theorem3:2").is_err());
        assert!(LambdaPolicy::parse("-1").is_err());
        assert_eq!(
            LambdaPolicy::parse("widths.txt").unwrap(),
            LambdaPolicy::File(PathBuf::from("widths.txt"))
        );
        for text in ["0.25", "theorem3:0.05", "file:w.txt"] {
            let p = LambdaPolicy::parse(text).unwrap();
            assert_eq!(LambdaPolicy::parse(&p.to_string()).unwrap(), p);
        }
        let fm = FeatureMap::intercept_only(3, 1).unwrap();
        assert_eq!(LambdaPolicy::Scalar(0.5).resolve(&fm).unwrap(), vec![0.5; 3]);
        let t3 = LambdaPolicy::Coverage(0.05).resolve(&fm).unwrap();
        let expected = ((3f64.ln() + 40f64.ln()) / 2.0).sqrt();
        assert!((t3[0] - expected).abs() < 1e-15);
    }

    #[test]
    fn lambda_files() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("l.txt");
        std::fs::write(&path, "0.1, 0.2\n0.3").unwrap();
        let fm = FeatureMap::intercept_only(3, 1).unwrap();
        let policy = LambdaPolicy::File(path.clone());
        assert_eq!(policy.resolve(&fm).unwrap(), vec![0.1, 0.2, 0.3]);
        std::fs::write(&path, "0.1 0.2").unwrap();
        assert!(policy.resolve(&fm).is_err());
    }
}
