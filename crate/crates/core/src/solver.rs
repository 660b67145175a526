//! The binomial-system solving pipeline.
//!
//! A system `c_{i,0} + c_{i,1} x^{a_i} = 0` (with `a_i` the columns of a
//! nonsingular integer matrix) is diagonalized through a Smith factorization
//! `U A V = S`: the targets `t = (-c_{1,0}/c_{1,1}, ...)^V` reduce the
//! problem to univariate equations `z_i^{s_i} = t_i`, whose real solvability
//! is a pure sign condition. Roots are assembled in log-sign arithmetic and
//! mapped back through `U`, then certified by residual, sign, and alpha-test
//! checks.
//!
//! Inside `solve` the diagonal phase runs on integer mantissas scaled by the
//! last diagonal entry, so the division `s_i * y = log t_i` is solved
//! exactly (the divisibility chain makes every `s_last / s_i` an integer)
//! and no rounding error is amplified by the unimodular multipliers. The
//! only inexact steps in the whole pipeline are the logarithms of the input
//! coefficients and one final rounding of each output coordinate.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::bench::OpCounter;
use crate::error::{Error, Result};
use crate::fixed::{ln_rational_f64, parse_decimal, BigFixed};
use crate::linalg::{
    apply_exponent, apply_exponent_counted, smith_normal_form, smith_normal_form_counted,
    ExponentMatrix, IntMatrix, SmithFactorization,
};
use crate::logsign::{precision_budget, LogSign, PrecisionBudget, Sign};

/// Largest dimension accepted by the brute-force orthant enumeration.
pub const ORACLE_DIMENSION_LIMIT: usize = 20;

/// Alpha-test acceptance threshold from standard alpha theory.
pub const ALPHA_THRESHOLD: f64 = 0.157671;

/// Default certification tolerance on log-residuals.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

/// A nonzero real held exactly as `sign * num / den`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactReal {
    sign: Sign,
    num: BigUint,
    den: BigUint,
}

impl ExactReal {
    pub fn new(sign: Sign, num: BigUint, den: BigUint) -> Result<Self> {
        if num.is_zero() {
            return Err(Error::ZeroValue);
        }
        if den.is_zero() {
            return Err(Error::NonFinite);
        }
        let g = num.gcd(&den);
        Ok(ExactReal { sign, num: num / &g, den: den / &g })
    }

    /// Exact conversion of a finite nonzero `f64`.
    pub fn from_f64(v: f64) -> Result<Self> {
        if v == 0.0 {
            return Err(Error::ZeroValue);
        }
        if !v.is_finite() {
            return Err(Error::NonFinite);
        }
        let fixed = BigFixed::from_f64(v.abs(), 1074 + 64)?;
        Self::new(
            Sign::of_f64(v),
            fixed.mant().magnitude().clone(),
            BigUint::one() << fixed.bits(),
        )
    }

    pub fn from_decimal(s: &str) -> Result<Self> {
        let (sign, num, den) = parse_decimal(s)?;
        if sign == 0 {
            return Err(Error::ZeroValue);
        }
        Self::new(if sign < 0 { Sign::Minus } else { Sign::Plus }, num, den)
    }

    pub fn sign(&self) -> Sign {
        self.sign
    }

    pub fn parts(&self) -> (Sign, &BigUint, &BigUint) {
        (self.sign, &self.num, &self.den)
    }

    pub fn mul(&self, other: &ExactReal) -> ExactReal {
        ExactReal::new(
            self.sign.combine(other.sign),
            &self.num * &other.num,
            &self.den * &other.den,
        )
        .expect("operands are nonzero")
    }

    pub fn div(&self, other: &ExactReal) -> ExactReal {
        ExactReal::new(
            self.sign.combine(other.sign),
            &self.num * &other.den,
            &self.den * &other.num,
        )
        .expect("operands are nonzero")
    }

    /// Approximate natural log of the magnitude; safe for astronomically
    /// large or small values.
    pub fn ln_abs_f64(&self) -> f64 {
        ln_rational_f64(&self.num, &self.den)
    }

    /// Nearest `f64`, via the log route when the parts are too large for a
    /// direct division.
    pub fn to_f64(&self) -> f64 {
        let v = if self.num.bits() <= 900 && self.den.bits() <= 900 {
            self.num.to_f64().unwrap_or(f64::INFINITY) / self.den.to_f64().unwrap_or(f64::INFINITY)
        } else {
            self.ln_abs_f64().exp()
        };
        self.sign.as_f64() * v
    }

    pub fn to_logsign(&self, bits: u32) -> LogSign {
        LogSign::new(self.sign, BigFixed::ln_rational(&self.num, &self.den, bits))
    }
}

/// A square binomial system: each equation is `c0 + c1 * x^a = 0` with `a`
/// the corresponding column of the exponent matrix.
#[derive(Debug, Clone)]
pub struct BinomialSystem {
    matrix: ExponentMatrix,
    coefficients: Vec<(ExactReal, ExactReal)>,
}

impl BinomialSystem {
    pub fn new(matrix: ExponentMatrix, coefficients: Vec<(ExactReal, ExactReal)>) -> Result<Self> {
        if coefficients.len() != matrix.n() {
            return Err(Error::InvalidInput(format!(
                "expected {} coefficient pairs, got {}",
                matrix.n(),
                coefficients.len()
            )));
        }
        Ok(BinomialSystem { matrix, coefficients })
    }

    pub fn n(&self) -> usize {
        self.matrix.n()
    }

    pub fn matrix(&self) -> &ExponentMatrix {
        &self.matrix
    }

    pub fn coefficients(&self) -> &[(ExactReal, ExactReal)] {
        &self.coefficients
    }

    /// The exact target ratio `-c0/c1` of equation `i`.
    fn target_ratio(&self, i: usize) -> ExactReal {
        let (c0, c1) = &self.coefficients[i];
        ExactReal::new(
            c0.sign.combine(c1.sign).flip(),
            &c0.num * &c1.den,
            &c0.den * &c1.num,
        )
        .expect("coefficients are nonzero")
    }

    fn target_ratios(&self) -> Vec<ExactReal> {
        (0..self.n()).map(|i| self.target_ratio(i)).collect()
    }
}

/// The diagonal image of a system: `z_i^{exponents[i]} = targets[i]`,
/// together with the factorization that produced it.
#[derive(Debug, Clone)]
pub struct DiagonalSystem {
    exponents: Vec<BigUint>,
    targets: Vec<LogSign>,
    smith: SmithFactorization,
}

impl DiagonalSystem {
    pub fn exponents(&self) -> &[BigUint] {
        &self.exponents
    }

    pub fn targets(&self) -> &[LogSign] {
        &self.targets
    }

    pub fn smith(&self) -> &SmithFactorization {
        &self.smith
    }
}

/// Certification evidence for a candidate root.
#[derive(Debug, Clone)]
pub struct RootCertificate {
    /// Per-equation `| log|c1 * x^a| - log|-c0| |` in natural-log units.
    pub residuals: Vec<f64>,
    /// Per-equation sign opposition `sign(c1 * x^a) == -sign(c0)`.
    pub sign_ok: Vec<bool>,
    /// `|z_{k+1} - r| / |z_k - r|^2` estimates from the native Newton run,
    /// recorded only where the distances are above the f64 noise floor.
    pub contraction_ratios: Vec<f64>,
    /// Alpha-test value per univariate diagonal factor; `None` where the
    /// magnitudes leave the native range.
    pub alpha: Vec<Option<f64>>,
    /// Tolerance the residuals were checked against.
    pub tolerance: f64,
    /// Whether residuals, signs, and every applicable alpha all pass.
    pub passed: bool,
}

impl RootCertificate {
    fn evaluate(&mut self) {
        self.passed = self.residuals.iter().all(|r| *r <= self.tolerance)
            && self.sign_ok.iter().all(|s| *s)
            && self.alpha.iter().flatten().all(|a| *a <= ALPHA_THRESHOLD);
    }
}

/// Outcome of a solve.
#[derive(Debug, Clone)]
pub enum SolveResult {
    NoRealRoot {
        smith_diag: Vec<BigInt>,
    },
    RootFound {
        root: Vec<LogSign>,
        certificate: RootCertificate,
        smith_diag: Vec<BigInt>,
    },
}

impl SolveResult {
    pub fn root(&self) -> Option<&[LogSign]> {
        match self {
            SolveResult::RootFound { root, .. } => Some(root),
            SolveResult::NoRealRoot { .. } => None,
        }
    }

    pub fn certificate(&self) -> Option<&RootCertificate> {
        match self {
            SolveResult::RootFound { certificate, .. } => Some(certificate),
            SolveResult::NoRealRoot { .. } => None,
        }
    }

    pub fn smith_diag(&self) -> &[BigInt] {
        match self {
            SolveResult::RootFound { smith_diag, .. } | SolveResult::NoRealRoot { smith_diag } => {
                smith_diag
            }
        }
    }
}

/// Knobs for `solve`.
#[derive(Debug, Clone, Copy)]
pub struct SolveOptions {
    /// Residual tolerance at the default precision. The certificate uses
    /// `max(tolerance, 2^(12 - fraction_bits))` so the demand always matches
    /// what the precision in force can deliver.
    pub tolerance: f64,
    /// Floor on the derived fraction bits (CLI override hook).
    pub min_fraction_bits: Option<u32>,
    /// How many times to double the fraction bits when certification fails.
    pub max_escalations: u32,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions { tolerance: DEFAULT_TOLERANCE, min_fraction_bits: None, max_escalations: 3 }
    }
}

impl SolveOptions {
    fn effective_tolerance(&self, fraction_bits: u32) -> f64 {
        self.tolerance.max(2f64.powi(12 - fraction_bits.min(2048) as i32))
    }
}

/// Answer of the brute-force orthant enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleAnswer {
    pub exists: bool,
    pub count: u64,
}

fn bits_u32(x: &BigUint) -> u32 {
    x.bits().to_u32().expect("bit length fits u32")
}

/// Working precision for a system given its factorization.
fn budget_for(
    f: &BinomialSystem,
    smith: &SmithFactorization,
    opts: &SolveOptions,
) -> PrecisionBudget {
    let sigma = f
        .target_ratios()
        .iter()
        .map(|r| r.ln_abs_f64().abs())
        .fold(0.0f64, f64::max);
    let mut budget = precision_budget(f.n(), f.matrix().max_abs_entry(), sigma, &smith.max_integer());
    if let Some(floor) = opts.min_fraction_bits {
        budget.fraction_bits = budget.fraction_bits.max(floor);
    }
    budget
}

/// Log-sign targets of the diagonalized system at the given precision.
fn targets_at(
    f: &BinomialSystem,
    smith: &SmithFactorization,
    bits: u32,
    counter: &mut OpCounter,
) -> Vec<LogSign> {
    let ratios: Vec<LogSign> = f
        .target_ratios()
        .iter()
        .map(|r| {
            counter.ring(1);
            r.to_logsign(bits)
        })
        .collect();
    apply_exponent_counted(&ratios, smith.v(), counter)
}

/// Diagonalize: Smith-factor the exponents and push the coefficient ratios
/// through the right multiplier.
pub fn diagonalize(f: &BinomialSystem) -> Result<DiagonalSystem> {
    let smith = smith_normal_form(f.matrix());
    let budget = budget_for(f, &smith, &SolveOptions::default());
    let targets = targets_at(f, &smith, budget.fraction_bits, &mut OpCounter::new());
    let exponents = (0..f.n()).map(|i| smith.diag_unsigned(i)).collect();
    Ok(DiagonalSystem { exponents, targets, smith })
}

fn diagonal_has_real_root(d: &DiagonalSystem) -> bool {
    d.exponents
        .iter()
        .zip(&d.targets)
        .all(|(s, t)| s.bit(0) || t.sign() == Sign::Plus)
}

/// A real root exists iff every even-exponent coordinate of the diagonal
/// image has a positive target.
pub fn has_real_root(f: &BinomialSystem) -> Result<bool> {
    Ok(diagonal_has_real_root(&diagonalize(f)?))
}

/// Number of real roots with all coordinates nonzero: a product of one
/// (odd exponent), two (even exponent, positive target), or zero.
pub fn count_real_roots(f: &BinomialSystem) -> Result<BigUint> {
    let d = diagonalize(f)?;
    let mut count = BigUint::one();
    for (s, t) in d.exponents.iter().zip(&d.targets) {
        if s.bit(0) {
            continue;
        }
        match t.sign() {
            Sign::Plus => count <<= 1,
            Sign::Minus => return Ok(BigUint::zero()),
        }
    }
    Ok(count)
}

/// Approximate real root of `z^s = gamma` in log space: the sign follows the
/// root convention and the log magnitude is `log|gamma| / s`, carried with
/// enough extra bits that the relative error stays below `1/(8s)`.
pub fn solve_univariate(s: &BigUint, gamma: &LogSign, budget: &PrecisionBudget) -> Result<LogSign> {
    solve_univariate_counted(s, gamma, budget, &mut OpCounter::new())
}

fn solve_univariate_counted(
    s: &BigUint,
    gamma: &LogSign,
    budget: &PrecisionBudget,
    counter: &mut OpCounter,
) -> Result<LogSign> {
    debug_assert!(!s.is_zero());
    // Magnitude scan: locate the top bit of the integer part, which both
    // validates the integer budget and prices the log-log term of the
    // univariate solve.
    counter.compare(gamma.logabs().int_bit_length() + 1);
    debug_assert!(gamma.logabs().int_bit_length() <= u64::from(budget.integer_bits));

    let working = gamma.precision().max(budget.fraction_bits);
    let root = gamma.with_precision(working).root_positive(s)?;
    counter.ring(1);

    // Confirm the division by multiplying back through the binary expansion
    // of s; the product must land within one rounding step of the input.
    let back = root.pow_int(&BigInt::from(s.clone()));
    counter.ring(u64::from(bits_u32(s)));
    let slack = BigFixed::from_raw(BigInt::from(s.clone()), root.precision());
    let ok = back
        .logabs()
        .sub(&gamma.logabs().round_to(root.precision()))
        .abs()
        .cmp_value(&slack)
        != std::cmp::Ordering::Greater;
    counter.compare(1);
    assert!(ok, "root verification failed");
    Ok(root)
}

/// Solve the diagonal system coordinatewise. `orthant` selects the sign per
/// coordinate: on odd-exponent coordinates only the forced sign is valid;
/// on even-exponent coordinates either branch may be taken (default `+`).
pub fn solve_diagonal(d: &DiagonalSystem, orthant: Option<&[Sign]>) -> Result<Vec<LogSign>> {
    if !diagonal_has_real_root(d) {
        return Err(Error::NoRealRoot);
    }
    if let Some(choice) = orthant {
        if choice.len() != d.exponents.len() {
            return Err(Error::InvalidOrthant(format!(
                "expected {} signs, got {}",
                d.exponents.len(),
                choice.len()
            )));
        }
    }
    let budget = PrecisionBudget {
        integer_bits: u32::MAX,
        fraction_bits: d.targets.iter().map(LogSign::precision).max().unwrap_or(32),
    };
    let mut out = Vec::with_capacity(d.exponents.len());
    for (i, (s, t)) in d.exponents.iter().zip(&d.targets).enumerate() {
        let mut root = solve_univariate_counted(s, t, &budget, &mut OpCounter::new())?;
        if let Some(choice) = orthant {
            if s.bit(0) {
                if choice[i] != root.sign() {
                    return Err(Error::InvalidOrthant(format!(
                        "coordinate {i} has odd exponent; its sign is forced"
                    )));
                }
            } else if choice[i] == Sign::Minus {
                root = LogSign::new(Sign::Minus, root.logabs().clone());
            }
        }
        out.push(root);
    }
    Ok(out)
}

/// Map a diagonal root back to the original coordinates: `x = mu^u`.
pub fn back_substitute(mu: &[LogSign], u: &IntMatrix) -> Vec<LogSign> {
    debug_assert!(u.is_unimodular());
    apply_exponent(mu, u)
}

/// Full pipeline with default options.
pub fn solve(f: &BinomialSystem) -> Result<SolveResult> {
    solve_with_options(f, &SolveOptions::default())
}

pub fn solve_with_options(f: &BinomialSystem, opts: &SolveOptions) -> Result<SolveResult> {
    solve_counted(f, opts, &mut OpCounter::new())
}

pub(crate) fn solve_counted(
    f: &BinomialSystem,
    opts: &SolveOptions,
    counter: &mut OpCounter,
) -> Result<SolveResult> {
    let smith = smith_normal_form_counted(f.matrix(), counter);
    let base = budget_for(f, &smith, opts);
    for attempt in 0..=opts.max_escalations {
        let budget = PrecisionBudget {
            integer_bits: base.integer_bits,
            fraction_bits: base.fraction_bits.saturating_mul(1 << attempt),
        };
        let tolerance = opts.effective_tolerance(budget.fraction_bits);
        match solve_attempt(f, &smith, &budget, tolerance, counter)? {
            Some(result) => return Ok(result),
            None => continue,
        }
    }
    Err(Error::CertificationFailed { attempts: opts.max_escalations })
}

/// One pipeline pass at a fixed precision. Returns `None` when the
/// certificate fails, so the caller can escalate.
fn solve_attempt(
    f: &BinomialSystem,
    smith: &SmithFactorization,
    budget: &PrecisionBudget,
    tolerance: f64,
    counter: &mut OpCounter,
) -> Result<Option<SolveResult>> {
    let n = f.n();
    let fb = budget.fraction_bits;
    let targets = targets_at(f, smith, fb, counter);

    // Decision rule: an even diagonal exponent demands a positive target.
    for (i, t) in targets.iter().enumerate() {
        if !smith.diag()[i].magnitude().bit(0) {
            counter.compare(1);
            if t.sign() == Sign::Minus {
                return Ok(Some(SolveResult::NoRealRoot { smith_diag: smith.diag().to_vec() }));
            }
        }
    }

    // Diagonal solve on mantissas scaled by the last diagonal entry: every
    // s_last / s_i is an integer, so s_i * y_i = log t_i is solved exactly.
    let s_last = smith.last_diag();
    let mut scaled = Vec::with_capacity(n);
    let mut signs = Vec::with_capacity(n);
    for (i, t) in targets.iter().enumerate() {
        let s_i = smith.diag_unsigned(i);
        counter.compare(t.logabs().int_bit_length() + 1);
        let multiplier = BigInt::from(&s_last / &s_i);
        let m_i = t.logabs().mant() * &multiplier;
        counter.ring(1);
        // Multiply back through the binary expansion of s_i: must equal the
        // target mantissa at the common scale, exactly.
        let back = &m_i * BigInt::from(s_i.clone());
        let expect = t.logabs().mant() * BigInt::from(s_last.clone());
        assert_eq!(back, expect, "diagonal division must be exact");
        counter.ring(u64::from(bits_u32(&s_i)));
        counter.compare(1);
        scaled.push(m_i);
        signs.push(if s_i.bit(0) { t.sign() } else { Sign::Plus });
    }

    // Back-substitution in the same exact scaled space.
    let u = smith.u();
    let out_bits = fb + bits_u32(&s_last) + 8;
    let mut root = Vec::with_capacity(n);
    for i in 0..n {
        let mut acc = BigInt::zero();
        let mut sign = Sign::Plus;
        for j in 0..n {
            let k = u.get(j, i);
            if k.is_zero() {
                continue;
            }
            counter.ring(2);
            acc += &scaled[j] * k;
            sign = sign.combine(signs[j].pow_parity(k.magnitude().bit(0)));
        }
        let logabs = BigFixed::from_scaled_ratio(&acc, &s_last, fb, out_bits);
        root.push(LogSign::new(sign, logabs));
    }

    let mut certificate = certify_with(f, smith, &root, tolerance, counter);
    certificate.evaluate();
    if certificate.passed {
        Ok(Some(SolveResult::RootFound {
            root,
            certificate,
            smith_diag: smith.diag().to_vec(),
        }))
    } else {
        Ok(None)
    }
}

/// Certify a candidate root against the system.
pub fn certify(f: &BinomialSystem, zeta: &[LogSign], tolerance: f64) -> Result<RootCertificate> {
    if zeta.len() != f.n() {
        return Err(Error::InvalidInput(format!(
            "root has {} coordinates, system has {}",
            zeta.len(),
            f.n()
        )));
    }
    let smith = smith_normal_form(f.matrix());
    let mut cert = certify_with(f, &smith, zeta, tolerance, &mut OpCounter::new());
    cert.evaluate();
    Ok(cert)
}

fn certify_with(
    f: &BinomialSystem,
    smith: &SmithFactorization,
    zeta: &[LogSign],
    tolerance: f64,
    counter: &mut OpCounter,
) -> RootCertificate {
    let n = f.n();
    let a = f.matrix().matrix();
    let bits = zeta.iter().map(LogSign::precision).max().unwrap_or(64);
    let ratios = f.target_ratios();

    // Residuals and sign opposition, in exact fixed point.
    let mut residuals = Vec::with_capacity(n);
    let mut sign_ok = Vec::with_capacity(n);
    for (i, ratio) in ratios.iter().enumerate() {
        counter.ring(1);
        let target = ratio.to_logsign(bits);
        let mut acc = BigFixed::zero(bits);
        let mut sign = Sign::Plus;
        for (j, z) in zeta.iter().enumerate() {
            let k = a.get(j, i);
            if k.is_zero() {
                continue;
            }
            counter.pow(k);
            counter.ring(1);
            acc = acc.add(&z.logabs().mul_int(k));
            sign = sign.combine(z.sign().pow_parity(k.magnitude().bit(0)));
        }
        counter.compare(2);
        residuals.push(acc.sub(target.logabs()).abs().to_f64());
        sign_ok.push(sign == target.sign());
    }

    // Native-range Newton evidence and per-factor alpha tests. Recovering
    // the diagonal data is certification plumbing, not solver arithmetic,
    // so it runs on a scratch counter.
    let contraction_ratios = newton_evidence(f, zeta, counter);
    let targets = targets_at(f, smith, bits, &mut OpCounter::new());
    let alpha = alpha_per_factor(smith, &targets, zeta);

    RootCertificate {
        residuals,
        sign_ok,
        contraction_ratios,
        alpha,
        tolerance,
        passed: false,
    }
}

/// All log magnitudes involved in evaluating the system at `zeta` must fit
/// the native exponent range for f64 evidence to be meaningful.
fn native_range_ok(f: &BinomialSystem, zeta: &[LogSign]) -> bool {
    const LIMIT: f64 = 690.0;
    let logs: Vec<f64> = zeta.iter().map(|z| z.logabs().to_f64()).collect();
    if logs.iter().any(|l| l.abs() > LIMIT) {
        return false;
    }
    let a = f.matrix().matrix();
    for (i, (c0, c1)) in f.coefficients().iter().enumerate() {
        if c0.ln_abs_f64().abs() > LIMIT || c1.ln_abs_f64().abs() > LIMIT {
            return false;
        }
        let mono: f64 = (0..f.n())
            .map(|j| a.get(j, i).to_f64().unwrap_or(f64::INFINITY) * logs[j])
            .sum();
        if !mono.is_finite() || mono.abs() > LIMIT {
            return false;
        }
    }
    true
}

fn monomial_values(a: &IntMatrix, z: &[f64]) -> Option<Vec<f64>> {
    let n = a.n();
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let mut log_sum = 0.0f64;
        let mut sign = 1.0f64;
        for (j, zj) in z.iter().enumerate() {
            if *zj == 0.0 {
                return None;
            }
            let k = a.get(j, i);
            if k.is_zero() {
                continue;
            }
            let kf = k.to_f64()?;
            log_sum += kf * zj.abs().ln();
            if k.magnitude().bit(0) && *zj < 0.0 {
                sign = -sign;
            }
        }
        if log_sum.abs() > 700.0 {
            return None;
        }
        out.push(sign * log_sum.exp());
    }
    Some(out)
}

/// Four recorded Newton iterations plus convergence to a reference point,
/// all in f64. Contraction ratios are kept only where the distances are
/// safely above the rounding floor.
fn newton_evidence(f: &BinomialSystem, zeta: &[LogSign], counter: &mut OpCounter) -> Vec<f64> {
    if !native_range_ok(f, zeta) {
        return Vec::new();
    }
    let n = f.n();
    let a = f.matrix().matrix();
    let coeffs: Vec<(f64, f64)> = f
        .coefficients()
        .iter()
        .map(|(c0, c1)| (c0.to_f64(), c1.to_f64()))
        .collect();
    let z0: Vec<f64> = zeta.iter().map(|z| z.to_f64().unwrap_or(0.0)).collect();
    if z0.iter().any(|v| *v == 0.0 || !v.is_finite()) {
        return Vec::new();
    }

    let step = |z: &[f64], counter: &mut OpCounter| -> Option<Vec<f64>> {
        let mono = monomial_values(a, z)?;
        let mut jac = nalgebra::DMatrix::<f64>::zeros(n, n);
        let mut rhs = nalgebra::DVector::<f64>::zeros(n);
        for i in 0..n {
            rhs[i] = coeffs[i].0 + coeffs[i].1 * mono[i];
            for j in 0..n {
                let kf = a.get(j, i).to_f64()?;
                jac[(i, j)] = coeffs[i].1 * kf * mono[i] / z[j];
            }
        }
        let delta = jac.lu().solve(&rhs)?;
        counter.newton(1);
        Some((0..n).map(|j| z[j] - delta[j]).collect())
    };

    let mut iterates = vec![z0.clone()];
    let mut z = z0;
    for _ in 0..4 {
        match step(&z, counter) {
            Some(next) => {
                z = next;
                iterates.push(z.clone());
            }
            None => return Vec::new(),
        }
    }
    // Continue to a converged reference point.
    let mut reference = z.clone();
    for _ in 0..40 {
        let Some(next) = step(&reference, counter) else {
            return Vec::new();
        };
        let moved: f64 = next
            .iter()
            .zip(&reference)
            .map(|(a, b)| (a - b).powi(2))
            .sum::<f64>()
            .sqrt();
        let scale: f64 = next.iter().map(|v| v * v).sum::<f64>().sqrt();
        reference = next;
        if moved <= 1e-15 * (1.0 + scale) {
            break;
        }
    }
    let dist = |z: &[f64]| -> f64 {
        z.iter()
            .zip(&reference)
            .map(|(a, b)| (a - b).powi(2))
            .sum::<f64>()
            .sqrt()
    };
    let scale: f64 = reference.iter().map(|v| v * v).sum::<f64>().sqrt();
    let floor = 1e-13 * (1.0 + scale);
    let mut ratios = Vec::new();
    for k in 0..4 {
        let dk = dist(&iterates[k]);
        let dk1 = dist(&iterates[k + 1]);
        if dk > floor && dk1 > 0.0 {
            ratios.push(dk1 / (dk * dk));
        }
    }
    ratios
}

/// Alpha test for each univariate diagonal factor `z^s = t` at the diagonal
/// image of the root, where the magnitudes allow native evaluation.
fn alpha_per_factor(
    smith: &SmithFactorization,
    targets: &[LogSign],
    zeta: &[LogSign],
) -> Vec<Option<f64>> {
    let mu = apply_exponent(zeta, smith.u_inv());
    mu.iter()
        .zip(targets)
        .enumerate()
        .map(|(i, (m, t))| {
            let s = smith.diag_unsigned(i);
            let s_u = s.to_u64()?;
            if s_u > 1 << 20 {
                return None;
            }
            let log_m = m.logabs().to_f64();
            if log_m.abs() * (s_u as f64) > 690.0 {
                return None;
            }
            let z = m.to_f64()?;
            let t = t.to_f64()?;
            Some(alpha_univariate(s_u, t, z))
        })
        .collect()
}

/// Smale alpha value for `f(z) = z^s - t` at the point `z`.
pub fn alpha_univariate(s: u64, t: f64, z: f64) -> f64 {
    if s == 1 {
        // Newton on a linear factor lands exactly in one step.
        return 0.0;
    }
    let s_f = s as f64;
    let az = z.abs();
    // beta = |f(z) / f'(z)| evaluated through logs to survive large s.
    let log_zs = s_f * az.ln();
    let zs = if z < 0.0 && s % 2 == 1 { -log_zs.exp() } else { log_zs.exp() };
    let beta = (zs - t).abs() / (s_f * ((s_f - 1.0) * az.ln()).exp());
    // gamma = max_k |f^(k)(z) / (k! f'(z))|^(1/(k-1))
    //       = max_k (C(s,k)/s)^(1/(k-1)) / |z|.
    let gamma = if s <= 64 {
        let mut best: f64 = 0.0;
        let mut binom = s_f; // C(s, 1)
        for k in 2..=s {
            binom = binom * (s_f - (k as f64) + 1.0) / (k as f64);
            let term = (binom / s_f).powf(1.0 / ((k - 1) as f64)) / az;
            best = best.max(term);
        }
        best
    } else {
        // The k = 2 coefficient dominates once s >= 6.
        (s_f - 1.0) / (2.0 * az)
    };
    beta * gamma
}

/// Brute-force existence and count by enumerating all sign vectors: a sign
/// pattern is feasible iff it reproduces the target sign in every equation,
/// and each feasible pattern carries exactly one root because the log
/// magnitudes solve a nonsingular linear system.
pub fn sign_enumeration_oracle(f: &BinomialSystem) -> Result<OracleAnswer> {
    let n = f.n();
    if n > ORACLE_DIMENSION_LIMIT {
        return Err(Error::DimensionTooLarge { n, limit: ORACLE_DIMENSION_LIMIT });
    }
    let a = f.matrix().matrix();
    // Equation i constrains the parity of the chosen negative coordinates
    // restricted to its odd exponents.
    let mut odd_mask = vec![0u32; n];
    let mut want_negative = vec![false; n];
    for i in 0..n {
        for j in 0..n {
            if a.get(j, i).magnitude().bit(0) {
                odd_mask[i] |= 1 << j;
            }
        }
        want_negative[i] = f.target_ratio(i).sign() == Sign::Minus;
    }
    let mut count = 0u64;
    for pattern in 0u32..(1u32 << n) {
        let feasible = (0..n).all(|i| {
            let parity = (pattern & odd_mask[i]).count_ones() % 2 == 1;
            parity == want_negative[i]
        });
        if feasible {
            count += 1;
        }
    }
    Ok(OracleAnswer { exists: count > 0, count })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn system(rows: &[Vec<i64>], coeffs: &[(&str, &str)]) -> BinomialSystem {
        let matrix = ExponentMatrix::from_rows(rows).unwrap();
        let coefficients = coeffs
            .iter()
            .map(|(c0, c1)| {
                (ExactReal::from_decimal(c0).unwrap(), ExactReal::from_decimal(c1).unwrap())
            })
            .collect();
        BinomialSystem::new(matrix, coefficients).unwrap()
    }

    /// x1*x2 = 4 and x1/x2 = 1: roots (2, 2) and (-2, -2).
    fn worked_2x2() -> BinomialSystem {
        system(&[vec![1, 1], vec![1, -1]], &[("-4", "1"), ("-1", "1")])
    }

    const LN2_F64: f64 = std::f64::consts::LN_2;

    #[test]
    fn diagonalize_single_square() {
        // x^2 = 2, already diagonal.
        let f = system(&[vec![2]], &[("-2", "1")]);
        let d = diagonalize(&f).unwrap();
        assert_eq!(d.exponents(), &[BigUint::from(2u32)]);
        assert_eq!(d.targets()[0].sign(), Sign::Plus);
        assert!((d.targets()[0].logabs().to_f64() - LN2_F64).abs() < 1e-9);
    }

    #[test]
    fn diagonalize_worked_example_round_trips_through_v() {
        let f = worked_2x2();
        let d = diagonalize(&f).unwrap();
        assert_eq!(
            d.exponents(),
            &[BigUint::from(1u32), BigUint::from(2u32)]
        );
        // Pushing the targets back through v^-1 recovers the input ratios.
        let back = apply_exponent(d.targets(), d.smith().v_inv());
        assert_eq!(back[0].sign(), Sign::Plus);
        assert!((back[0].logabs().to_f64() - 4f64.ln()).abs() < 1e-9);
        assert_eq!(back[1].sign(), Sign::Plus);
        assert!(back[1].logabs().to_f64().abs() < 1e-9);
    }

    #[test]
    fn diagonalize_identity_matrix_keeps_targets() {
        let f = system(&[vec![1, 0], vec![0, 1]], &[("-5", "1"), ("-7", "1")]);
        let d = diagonalize(&f).unwrap();
        assert_eq!(d.exponents(), &[BigUint::from(1u32), BigUint::from(1u32)]);
        let mut logs: Vec<f64> = d.targets().iter().map(|t| t.logabs().to_f64()).collect();
        logs.sort_by(f64::total_cmp);
        assert!((logs[0] - 5f64.ln()).abs() < 1e-9);
        assert!((logs[1] - 7f64.ln()).abs() < 1e-9);
    }

    #[test]
    fn real_root_decision_rule() {
        // 1 + x^2 = 0 has no real root.
        let none = system(&[vec![2]], &[("1", "1")]);
        assert!(!has_real_root(&none).unwrap());
        assert_eq!(count_real_roots(&none).unwrap(), BigUint::zero());

        // -2 + x^2 = 0 has two.
        let two = system(&[vec![2]], &[("-2", "1")]);
        assert!(has_real_root(&two).unwrap());
        assert_eq!(count_real_roots(&two).unwrap(), BigUint::from(2u32));

        let worked = worked_2x2();
        assert!(has_real_root(&worked).unwrap());
        assert_eq!(count_real_roots(&worked).unwrap(), BigUint::from(2u32));
    }

    #[test]
    fn count_on_split_diagonal_system() {
        // x1^2 = 1 and x2^3 = 8: roots (+-1, 2).
        let f = system(&[vec![2, 0], vec![0, 3]], &[("-1", "1"), ("-8", "1")]);
        assert_eq!(count_real_roots(&f).unwrap(), BigUint::from(2u32));
        let oracle = sign_enumeration_oracle(&f).unwrap();
        assert!(oracle.exists);
        assert_eq!(oracle.count, 2);
    }

    #[test]
    fn univariate_examples() {
        let budget = PrecisionBudget { integer_bits: 64, fraction_bits: 96 };
        let eight = LogSign::from_real(8.0, 96).unwrap();
        let r = solve_univariate(&BigUint::from(3u32), &eight, &budget).unwrap();
        assert_eq!(r.sign(), Sign::Plus);
        assert!((r.logabs().to_f64() - LN2_F64).abs() < 1e-20);

        let two = LogSign::from_real(2.0, 96).unwrap();
        let r = solve_univariate(&BigUint::from(2u32), &two, &budget).unwrap();
        assert!((r.logabs().to_f64() - LN2_F64 / 2.0).abs() < 1e-20);
        assert!((r.to_f64().unwrap() - 2f64.sqrt()).abs() < 1e-14);

        let minus_one = LogSign::from_real(-1.0, 96).unwrap();
        assert!(matches!(
            solve_univariate(&BigUint::from(2u32), &minus_one, &budget),
            Err(Error::NegativeEvenRoot)
        ));
    }

    #[test]
    fn diagonal_solve_branches() {
        // s = (1, 2), targets (4, 4): default root (4, 2).
        let f = system(&[vec![1, 0], vec![0, 2]], &[("-4", "1"), ("-4", "1")]);
        let d = diagonalize(&f).unwrap();
        let mu = solve_diagonal(&d, None).unwrap();
        let vals: Vec<f64> = mu.iter().map(|m| m.to_f64().unwrap()).collect();
        assert!((vals[0] - 4.0).abs() < 1e-9);
        assert!((vals[1] - 2.0).abs() < 1e-9);

        // Negative branch on the even coordinate.
        let choice = vec![Sign::Plus, Sign::Minus];
        let mu = solve_diagonal(&d, Some(&choice)).unwrap();
        assert!((mu[1].to_f64().unwrap() + 2.0).abs() < 1e-9);

        // Odd coordinate with a negative target: sign is forced.
        let f = system(&[vec![3]], &[("8", "1")]);
        let d = diagonalize(&f).unwrap();
        let mu = solve_diagonal(&d, None).unwrap();
        assert!((mu[0].to_f64().unwrap() + 2.0).abs() < 1e-9);
        assert!(matches!(
            solve_diagonal(&d, Some(&[Sign::Plus])),
            Err(Error::InvalidOrthant(_))
        ));
    }

    #[test]
    fn diagonal_solve_rejects_infeasible() {
        let f = system(&[vec![2]], &[("1", "1")]);
        let d = diagonalize(&f).unwrap();
        assert!(matches!(solve_diagonal(&d, None), Err(Error::NoRealRoot)));
    }

    #[test]
    fn back_substitute_identity() {
        let mu = vec![LogSign::from_real(3.0, 64).unwrap()];
        let out = back_substitute(&mu, &IntMatrix::identity(1));
        assert_eq!(out[0].logabs().cmp_value(mu[0].logabs()), std::cmp::Ordering::Equal);
    }

    #[test]
    fn solve_no_real_root() {
        let f = system(&[vec![2]], &[("1", "1")]);
        match solve(&f).unwrap() {
            SolveResult::NoRealRoot { smith_diag } => {
                assert_eq!(smith_diag, vec![BigInt::from(2)]);
            }
            SolveResult::RootFound { .. } => panic!("expected no real root"),
        }
    }

    #[test]
    fn solve_sqrt_two() {
        let f = system(&[vec![2]], &[("-2", "1")]);
        let result = solve(&f).unwrap();
        let root = result.root().expect("root expected");
        assert_eq!(root[0].sign(), Sign::Plus);
        assert!((root[0].logabs().to_f64() - LN2_F64 / 2.0).abs() < 1e-11);
        let cert = result.certificate().unwrap();
        assert!(cert.passed);
        assert!(cert.residuals[0] <= 1e-12);
        assert!(cert.sign_ok[0]);
        for a in cert.alpha.iter().flatten() {
            assert!(*a <= ALPHA_THRESHOLD);
        }
    }

    #[test]
    fn solve_worked_2x2() {
        let f = worked_2x2();
        let result = solve(&f).unwrap();
        let root = result.root().expect("root expected");
        let vals: Vec<f64> = root.iter().map(|r| r.to_f64().unwrap()).collect();
        assert!((vals[0] - 2.0).abs() < 1e-9, "got {vals:?}");
        assert!((vals[1] - 2.0).abs() < 1e-9, "got {vals:?}");
        assert!(result.certificate().unwrap().passed);
    }

    #[test]
    fn certify_examples_for_x_squared_minus_four() {
        let f = system(&[vec![2]], &[("-4", "1")]);
        let bits = 128;

        let exact = vec![LogSign::from_real(2.0, bits).unwrap()];
        let cert = certify(&f, &exact, 1e-9).unwrap();
        assert!(cert.passed);
        assert!(cert.residuals[0] <= 1e-30);
        assert!(cert.alpha[0].unwrap() <= 1e-15);

        let off = vec![LogSign::from_real(2.1, bits).unwrap()];
        let cert = certify(&f, &off, 1e-9).unwrap();
        assert!(!cert.passed);
        assert!((cert.residuals[0] - (4.41f64.ln() - 4f64.ln())).abs() < 1e-9);

        let far = vec![LogSign::from_real(10.0, bits).unwrap()];
        let cert = certify(&f, &far, 1e-9).unwrap();
        assert!(!cert.passed);
        assert!((cert.residuals[0] - 25f64.ln()).abs() < 1e-9);
    }

    #[test]
    fn oracle_examples() {
        let none = system(&[vec![2]], &[("1", "1")]);
        assert_eq!(
            sign_enumeration_oracle(&none).unwrap(),
            OracleAnswer { exists: false, count: 0 }
        );

        let worked = worked_2x2();
        assert_eq!(
            sign_enumeration_oracle(&worked).unwrap(),
            OracleAnswer { exists: true, count: 2 }
        );

        // x^3 = -8 has exactly one real root.
        let cube = system(&[vec![3]], &[("8", "1")]);
        assert_eq!(
            sign_enumeration_oracle(&cube).unwrap(),
            OracleAnswer { exists: true, count: 1 }
        );
    }

    #[test]
    fn oracle_dimension_limit() {
        let n = 21;
        let mut rows = vec![vec![0i64; n]; n];
        for (i, row) in rows.iter_mut().enumerate() {
            row[i] = 1;
        }
        let coeffs: Vec<(&str, &str)> = (0..n).map(|_| ("-1", "1")).collect();
        let f = system(&rows, &coeffs);
        assert!(matches!(
            sign_enumeration_oracle(&f),
            Err(Error::DimensionTooLarge { n: 21, limit: 20 })
        ));
    }

    #[test]
    fn exact_real_constructors() {
        assert!(matches!(ExactReal::from_f64(0.0), Err(Error::ZeroValue)));
        assert!(matches!(ExactReal::from_f64(f64::NAN), Err(Error::NonFinite)));
        assert!(matches!(ExactReal::from_decimal("0"), Err(Error::ZeroValue)));
        let x = ExactReal::from_decimal("-2.5e3").unwrap();
        assert_eq!(x.sign(), Sign::Minus);
        assert_eq!(x.to_f64(), -2500.0);
        let y = ExactReal::from_f64(0.1).unwrap();
        assert_eq!(y.to_f64(), 0.1);
    }

    #[test]
    fn coefficient_count_must_match_dimension() {
        let matrix = ExponentMatrix::from_rows(&[vec![1, 0], vec![0, 1]]).unwrap();
        let coeffs = vec![(
            ExactReal::from_f64(1.0).unwrap(),
            ExactReal::from_f64(1.0).unwrap(),
        )];
        assert!(BinomialSystem::new(matrix, coeffs).is_err());
    }

    #[test]
    fn alpha_values_are_small_near_roots_and_large_far_away() {
        // z^2 = 4 at z near 2.
        assert!(alpha_univariate(2, 4.0, 2.0) == 0.0);
        assert!(alpha_univariate(2, 4.0, 2.0 + 1e-12) < 1e-11);
        assert!(alpha_univariate(2, 4.0, 10.0) > ALPHA_THRESHOLD);
        // Large s with the dominant-coefficient shortcut.
        let s = 200u64;
        let root = 2f64.powf(1.0 / s as f64);
        assert!(alpha_univariate(s, 2.0, root * (1.0 + 1e-9)) < 1e-4);
    }

    #[test]
    fn solve_huge_magnitudes_stay_exact() {
        // x^7 = 10^350: far outside f64 range; the root is 10^50.
        let f = system(&[vec![7]], &[("-1e350", "1")]);
        let result = solve(&f).unwrap();
        let root = result.root().unwrap();
        let cert = result.certificate().unwrap();
        assert!(cert.passed);
        assert!(root[0].to_f64().is_none() || root[0].to_f64().unwrap().is_finite());
        let want = 50.0 * 10f64.ln();
        assert!((root[0].logabs().to_f64() - want).abs() < 1e-9);
        // Native evidence is unavailable out of range; residuals still hold.
        assert!(cert.residuals[0] <= 1e-12);
    }
}
