//! Versioned JSON schemas for systems, solve results, and ensemble specs.
//!
//! Coefficients travel as exact decimal strings (or JSON numbers, which are
//! exact binary values), never as lossy re-rendered floats. Log-sign values
//! serialize as `{"sign": +-1, "log_abs": "<decimal>"}` with enough digits
//! to reproduce every stored bit, plus a native `value` field when the
//! magnitude fits the f64 exponent range.

use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{ExponentMatrix, IntMatrix};
use crate::logsign::LogSign;
use crate::solver::{BinomialSystem, ExactReal, RootCertificate, SolveResult};

pub const SCHEMA_VERSION: u32 = 1;

fn default_schema() -> u32 {
    SCHEMA_VERSION
}

fn check_schema(version: u32) -> Result<()> {
    if version != SCHEMA_VERSION {
        return Err(Error::InvalidInput(format!(
            "unsupported schema_version {version}, expected {SCHEMA_VERSION}"
        )));
    }
    Ok(())
}

/// A decimal that may arrive as a JSON number or a string literal.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum DecimalValue {
    Number(f64),
    Text(String),
}

impl DecimalValue {
    fn to_exact(&self) -> Result<ExactReal> {
        match self {
            DecimalValue::Number(v) => ExactReal::from_f64(*v),
            DecimalValue::Text(s) => ExactReal::from_decimal(s),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EquationJson {
    pub c0: DecimalValue,
    pub c1: DecimalValue,
    /// Monomial exponent vector of this equation (one column of the
    /// exponent matrix).
    pub exponents: Vec<i64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SystemJson {
    #[serde(default = "default_schema")]
    pub schema_version: u32,
    pub equations: Vec<EquationJson>,
}

/// Parse a system from its JSON text.
pub fn system_from_json(text: &str) -> Result<BinomialSystem> {
    let parsed: SystemJson =
        serde_json::from_str(text).map_err(|e| Error::InvalidInput(format!("bad JSON: {e}")))?;
    check_schema(parsed.schema_version)?;
    let n = parsed.equations.len();
    if n == 0 {
        return Err(Error::InvalidInput("system has no equations".into()));
    }
    let mut rows = vec![vec![0i64; n]; n];
    for (i, eq) in parsed.equations.iter().enumerate() {
        if eq.exponents.len() != n {
            return Err(Error::InvalidInput(format!(
                "equation {i} has {} exponents, expected {n}",
                eq.exponents.len()
            )));
        }
        for (j, &e) in eq.exponents.iter().enumerate() {
            rows[j][i] = e;
        }
    }
    let matrix = ExponentMatrix::new(IntMatrix::from_rows(&rows)?)?;
    let coefficients = parsed
        .equations
        .iter()
        .map(|eq| Ok((eq.c0.to_exact()?, eq.c1.to_exact()?)))
        .collect::<Result<_>>()?;
    BinomialSystem::new(matrix, coefficients)
}

/// Render a system whose coefficients admit exact decimal form (anything
/// built from decimals or floats does).
pub fn system_to_json(f: &BinomialSystem) -> Result<SystemJson> {
    let n = f.n();
    let equations = (0..n)
        .map(|i| {
            let (c0, c1) = &f.coefficients()[i];
            let exponents = (0..n)
                .map(|j| {
                    f.matrix().matrix().get(j, i).to_i64().ok_or_else(|| {
                        Error::InvalidInput("exponent exceeds the JSON integer range".into())
                    })
                })
                .collect::<Result<_>>()?;
            Ok(EquationJson {
                c0: DecimalValue::Text(exact_decimal(c0)?),
                c1: DecimalValue::Text(exact_decimal(c1)?),
                exponents,
            })
        })
        .collect::<Result<_>>()?;
    Ok(SystemJson { schema_version: SCHEMA_VERSION, equations })
}

/// Exact decimal rendering of a rational whose denominator divides a power
/// of ten.
fn exact_decimal(v: &ExactReal) -> Result<String> {
    use num_bigint::BigUint;
    let (sign, num, den) = v.parts();
    let mut twos = 0u32;
    let mut fives = 0u32;
    let mut rest = den.clone();
    let two = BigUint::from(2u32);
    let five = BigUint::from(5u32);
    while (&rest % &two).is_zero() {
        rest /= &two;
        twos += 1;
    }
    while (&rest % &five).is_zero() {
        rest /= &five;
        fives += 1;
    }
    if !rest.is_one() {
        return Err(Error::InvalidInput(
            "coefficient has no finite decimal expansion".into(),
        ));
    }
    let k = twos.max(fives);
    let scaled = num * two.pow(k - twos) * five.pow(k - fives);
    let digits = scaled.to_string();
    let sign = if sign == crate::logsign::Sign::Minus { "-" } else { "" };
    if k == 0 {
        return Ok(format!("{sign}{digits}"));
    }
    let k = k as usize;
    let padded = format!("{digits:0>width$}", width = k + 1);
    let (int_part, frac_part) = padded.split_at(padded.len() - k);
    Ok(format!("{sign}{int_part}.{frac_part}"))
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LogSignJson {
    pub sign: i8,
    pub log_abs: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value: Option<f64>,
}

impl From<&LogSign> for LogSignJson {
    fn from(v: &LogSign) -> Self {
        LogSignJson {
            sign: v.sign().as_i8(),
            log_abs: v.logabs().to_decimal_string(),
            value: v.to_f64(),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CertificateJson {
    pub residuals: Vec<f64>,
    pub sign_ok: Vec<bool>,
    pub contraction_ratios: Vec<f64>,
    pub alpha: Vec<Option<f64>>,
    pub tolerance: f64,
    pub passed: bool,
}

impl From<&RootCertificate> for CertificateJson {
    fn from(c: &RootCertificate) -> Self {
        CertificateJson {
            residuals: c.residuals.clone(),
            sign_ok: c.sign_ok.clone(),
            contraction_ratios: c.contraction_ratios.clone(),
            alpha: c.alpha.clone(),
            tolerance: c.tolerance,
            passed: c.passed,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SmithJson {
    #[serde(rename = "S")]
    pub s: Vec<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SolveOutputJson {
    pub schema_version: u32,
    pub status: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub root: Option<Vec<LogSignJson>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<CertificateJson>,
    pub smith: SmithJson,
}

pub fn solve_result_to_json(result: &SolveResult) -> SolveOutputJson {
    let smith = SmithJson {
        s: result.smith_diag().iter().map(|d| d.to_string()).collect(),
    };
    match result {
        SolveResult::NoRealRoot { .. } => SolveOutputJson {
            schema_version: SCHEMA_VERSION,
            status: "no_real_root".into(),
            root: None,
            certificate: None,
            smith,
        },
        SolveResult::RootFound { root, certificate, .. } => SolveOutputJson {
            schema_version: SCHEMA_VERSION,
            status: "root_found".into(),
            root: Some(root.iter().map(LogSignJson::from).collect()),
            certificate: Some(CertificateJson::from(certificate)),
            smith,
        },
    }
}

/// Variances: the literal string "unit" or one positive pair per equation.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum VarianceSpec {
    Keyword(String),
    Pairs(Vec<(f64, f64)>),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EnsembleJson {
    #[serde(default = "default_schema")]
    pub schema_version: u32,
    pub n: usize,
    pub d: u64,
    pub variances: VarianceSpec,
    pub seed: u64,
}

pub fn ensemble_from_json(text: &str) -> Result<crate::ensemble::GaussianEnsemble> {
    let parsed: EnsembleJson =
        serde_json::from_str(text).map_err(|e| Error::InvalidInput(format!("bad JSON: {e}")))?;
    check_schema(parsed.schema_version)?;
    let variances = match parsed.variances {
        VarianceSpec::Keyword(ref k) if k == "unit" => vec![(1.0, 1.0); parsed.n],
        VarianceSpec::Keyword(k) => {
            return Err(Error::InvalidInput(format!(
                "unknown variance keyword {k:?}, expected \"unit\""
            )))
        }
        VarianceSpec::Pairs(p) => p,
    };
    crate::ensemble::GaussianEnsemble::new(parsed.n, parsed.d, variances, parsed.seed)
}
