//! Seeded random binomial systems and the variance-rescaling reduction.
//!
//! Sampling is fully deterministic per seed: matrix entries and coefficient
//! draws come from a ChaCha12 stream, and Gaussians are produced by the
//! Box-Muller transform on that stream (documented here so results stay
//! reproducible across platforms and dependency versions). Concurrent
//! trials should derive disjoint seeds as `base_seed + trial_index`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;

use crate::error::{Error, Result};
use crate::linalg::ExponentMatrix;
use crate::logsign::{precision_budget, LogSign};
use crate::solver::{BinomialSystem, ExactReal};

/// Specification of a random system distribution: uniform integer exponents
/// in `[-d, d]` (conditioned on a nonzero determinant) and independent
/// centered Gaussian coefficients with per-entry variances.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussianEnsemble {
    n: usize,
    d: u64,
    variances: Vec<(f64, f64)>,
    seed: u64,
}

impl GaussianEnsemble {
    pub fn new(n: usize, d: u64, variances: Vec<(f64, f64)>, seed: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidInput("dimension must be positive".into()));
        }
        if d == 0 || d > i64::MAX as u64 / 4 {
            return Err(Error::InvalidInput(format!("entry bound {d} out of range")));
        }
        if variances.len() != n {
            return Err(Error::InvalidInput(format!(
                "expected {n} variance pairs, got {}",
                variances.len()
            )));
        }
        if variances.iter().any(|(a, b)| !(*a > 0.0) || !(*b > 0.0)) {
            return Err(Error::InvalidInput("variances must be strictly positive".into()));
        }
        Ok(GaussianEnsemble { n, d, variances, seed })
    }

    /// Unit variances throughout.
    pub fn unit(n: usize, d: u64, seed: u64) -> Result<Self> {
        Self::new(n, d, vec![(1.0, 1.0); n], seed)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> u64 {
        self.d
    }

    pub fn variances(&self) -> &[(f64, f64)] {
        &self.variances
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn with_seed(&self, seed: u64) -> Self {
        GaussianEnsemble { seed, ..self.clone() }
    }
}

/// Standard normal draws via Box-Muller on a seeded ChaCha12 stream.
pub struct NormalSampler {
    rng: ChaCha12Rng,
    spare: Option<f64>,
}

impl NormalSampler {
    pub fn new(seed: u64) -> Self {
        NormalSampler { rng: ChaCha12Rng::seed_from_u64(seed), spare: None }
    }

    pub fn standard_normal(&mut self) -> f64 {
        if let Some(z) = self.spare.take() {
            return z;
        }
        // u1 in (0, 1] keeps the log finite.
        let u1: f64 = 1.0 - self.rng.random::<f64>();
        let u2: f64 = self.rng.random();
        let radius = (-2.0 * u1.ln()).sqrt();
        let angle = 2.0 * std::f64::consts::PI * u2;
        self.spare = Some(radius * angle.sin());
        radius * angle.cos()
    }

    pub fn rng(&mut self) -> &mut ChaCha12Rng {
        &mut self.rng
    }
}

/// Draw one system: the exponent matrix is resampled until its determinant
/// is nonzero, then the coefficients are drawn in row order (`c0` before
/// `c1`). Identical seeds give identical systems.
pub fn sample_system(ensemble: &GaussianEnsemble) -> BinomialSystem {
    let mut sampler = NormalSampler::new(ensemble.seed);
    let n = ensemble.n;
    let d = ensemble.d as i64;
    let matrix = loop {
        let rows: Vec<Vec<i64>> = (0..n)
            .map(|_| (0..n).map(|_| sampler.rng().random_range(-d..=d)).collect())
            .collect();
        if let Ok(m) = ExponentMatrix::from_rows(&rows) {
            break m;
        }
    };
    let coefficients = (0..n)
        .map(|i| {
            let (v0, v1) = ensemble.variances[i];
            (gaussian_coefficient(&mut sampler, v0), gaussian_coefficient(&mut sampler, v1))
        })
        .collect();
    BinomialSystem::new(matrix, coefficients).expect("dimensions agree by construction")
}

/// A nonzero Gaussian draw scaled to the requested variance. An exactly
/// zero draw is a probability-zero event; it is resampled so the system
/// stays a valid binomial system.
fn gaussian_coefficient(sampler: &mut NormalSampler, variance: f64) -> ExactReal {
    let scale = variance.sqrt();
    loop {
        let v = sampler.standard_normal() * scale;
        if let Ok(c) = ExactReal::from_f64(v) {
            return c;
        }
    }
}

/// A system rescaled so its coefficient ratios absorb the variance ratios,
/// together with the coordinatewise scale mapping roots back: a root of the
/// original system is `scale * root(rescaled)`.
#[derive(Debug, Clone)]
pub struct RescaledSystem {
    pub system: BinomialSystem,
    pub scale: Vec<LogSign>,
}

/// Solve `a^T log r = log w` for the variance-ratio vector
/// `w_i = v_{i,1} / v_{i,0}` through the Smith factorization (two exact
/// integer transforms and one division per diagonal entry), and divide the
/// coefficient ratios by `w`. Since `(r x)^a = r^a x^a` with `r^a = w`, the
/// rescaled system's roots multiply coordinatewise by `r` to give the
/// original roots.
pub fn rescale_to_unit_variance(
    f: &BinomialSystem,
    ensemble: &GaussianEnsemble,
) -> Result<RescaledSystem> {
    if ensemble.n != f.n() {
        return Err(Error::InvalidInput(format!(
            "ensemble dimension {} does not match system dimension {}",
            ensemble.n,
            f.n()
        )));
    }
    let smith = crate::linalg::smith_normal_form(f.matrix());
    let ratios: Vec<ExactReal> = ensemble
        .variances
        .iter()
        .map(|(v0, v1)| {
            let v0 = ExactReal::from_f64(*v0)?;
            let v1 = ExactReal::from_f64(*v1)?;
            Ok(v1.div(&v0))
        })
        .collect::<Result<_>>()?;
    let sigma = ratios.iter().map(|r| r.ln_abs_f64().abs()).fold(1.0f64, f64::max);
    let budget = precision_budget(f.n(), f.matrix().max_abs_entry(), sigma, &smith.max_integer());
    let bits = budget.fraction_bits;

    let logs: Vec<LogSign> = ratios.iter().map(|r| r.to_logsign(bits)).collect();
    let transformed = crate::linalg::apply_exponent(&logs, smith.v());
    let divided: Vec<LogSign> = transformed
        .iter()
        .enumerate()
        .map(|(i, t)| t.root_positive(&smith.diag_unsigned(i)))
        .collect::<Result<_>>()?;
    let scale = crate::linalg::apply_exponent(&divided, smith.u());

    let coefficients = f
        .coefficients()
        .iter()
        .zip(&ratios)
        .map(|((c0, c1), w)| (c0.clone(), c1.mul(w)))
        .collect();
    let system = BinomialSystem::new(f.matrix().clone(), coefficients)?;
    Ok(RescaledSystem { system, scale })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{apply_exponent, IntMatrix};
    use crate::logsign::Sign;
    use num_bigint::BigUint;

    #[test]
    fn sampling_is_deterministic() {
        let e = GaussianEnsemble::unit(3, 5, 42).unwrap();
        let a = sample_system(&e);
        let b = sample_system(&e);
        assert_eq!(a.matrix().matrix(), b.matrix().matrix());
        for (x, y) in a.coefficients().iter().zip(b.coefficients()) {
            assert_eq!(x.0, y.0);
            assert_eq!(x.1, y.1);
        }
        let c = sample_system(&e.with_seed(43));
        let same_matrix = a.matrix().matrix() == c.matrix().matrix();
        let same_coeffs = a
            .coefficients()
            .iter()
            .zip(c.coefficients())
            .all(|(x, y)| x.0 == y.0 && x.1 == y.1);
        assert!(!(same_matrix && same_coeffs));
    }

    #[test]
    fn one_dimensional_unit_bound_gives_sign_matrices() {
        for seed in 0..20 {
            let e = GaussianEnsemble::unit(1, 1, seed).unwrap();
            let f = sample_system(&e);
            let entry = f.matrix().matrix().get(0, 0).clone();
            assert!(entry.magnitude() == &BigUint::from(1u32), "got {entry}");
        }
    }

    #[test]
    fn empirical_variance_matches_requested() {
        // 1e5 draws of c_{1,0} with variance 4; the sample variance has
        // standard error ~0.018, so +-0.1 is a 5-sigma band.
        let trials = 100_000;
        let mut sum = 0.0f64;
        let mut sum_sq = 0.0f64;
        for t in 0..trials {
            let e = GaussianEnsemble::new(1, 1, vec![(4.0, 1.0)], 1000 + t).unwrap();
            let f = sample_system(&e);
            let v = f.coefficients()[0].0.to_f64();
            sum += v;
            sum_sq += v * v;
        }
        let mean = sum / trials as f64;
        let var = sum_sq / trials as f64 - mean * mean;
        assert!((var - 4.0).abs() < 0.1, "sample variance {var}");
    }

    #[test]
    fn equal_variances_give_unit_scale() {
        let e = GaussianEnsemble::new(2, 4, vec![(2.5, 2.5), (0.3, 0.3)], 7).unwrap();
        let f = sample_system(&e);
        let r = rescale_to_unit_variance(&f, &e).unwrap();
        for s in &r.scale {
            assert_eq!(s.sign(), Sign::Plus);
            assert!(s.logabs().is_zero());
        }
        for ((a0, a1), (b0, b1)) in f.coefficients().iter().zip(r.system.coefficients()) {
            assert_eq!(a0, b0);
            assert_eq!(a1, b1);
        }
    }

    #[test]
    fn one_dimensional_scale_is_half_log_ratio() {
        // a = [2], variance ratio 4: log r = (ln 4) / 2 = ln 2.
        let e = GaussianEnsemble::new(1, 2, vec![(1.0, 4.0)], 3).unwrap();
        let matrix = ExponentMatrix::from_rows(&[vec![2]]).unwrap();
        let coeffs = vec![(
            ExactReal::from_f64(-3.0).unwrap(),
            ExactReal::from_f64(2.0).unwrap(),
        )];
        let f = BinomialSystem::new(matrix, coeffs).unwrap();
        let r = rescale_to_unit_variance(&f, &e).unwrap();
        let got = r.scale[0].logabs().to_f64();
        assert!((got - std::f64::consts::LN_2).abs() < 1e-9, "got {got}");
    }

    #[test]
    fn rescaled_coefficient_ratios_divide_by_variance_ratio() {
        let e = GaussianEnsemble::new(1, 1, vec![(1.0, 4.0)], 9).unwrap();
        let f = sample_system(&e);
        let r = rescale_to_unit_variance(&f, &e).unwrap();
        let (c0, c1) = &f.coefficients()[0];
        let (d0, d1) = &r.system.coefficients()[0];
        assert_eq!(c0, d0);
        // c1 picked up the factor w = 4.
        assert!((d1.to_f64() - 4.0 * c1.to_f64()).abs() < 1e-12 * c1.to_f64().abs());
    }

    #[test]
    fn scaling_identity_in_log_arithmetic() {
        // (r x)^a = r^a * x^a, checked coordinatewise in log-sign form.
        let bits = 96;
        let m = IntMatrix::from_rows(&[vec![2, -1], vec![1, 3]]).unwrap();
        let r = vec![
            LogSign::from_real(0.5, bits).unwrap(),
            LogSign::from_real(3.0, bits).unwrap(),
        ];
        let x = vec![
            LogSign::from_real(-2.0, bits).unwrap(),
            LogSign::from_real(1.5, bits).unwrap(),
        ];
        let rx: Vec<LogSign> = r.iter().zip(&x).map(|(a, b)| a.mul(b)).collect();
        let lhs = apply_exponent(&rx, &m);
        let ra = apply_exponent(&r, &m);
        let xa = apply_exponent(&x, &m);
        for i in 0..2 {
            let rhs = ra[i].mul(&xa[i]);
            assert_eq!(lhs[i].sign(), rhs.sign());
            assert!(lhs[i].logabs().sub(rhs.logabs()).abs().to_f64() < 1e-25);
        }
    }

    #[test]
    fn ensemble_validation() {
        assert!(GaussianEnsemble::new(0, 1, vec![], 0).is_err());
        assert!(GaussianEnsemble::new(1, 0, vec![(1.0, 1.0)], 0).is_err());
        assert!(GaussianEnsemble::new(1, 1, vec![(0.0, 1.0)], 0).is_err());
        assert!(GaussianEnsemble::new(2, 1, vec![(1.0, 1.0)], 0).is_err());
    }
}
