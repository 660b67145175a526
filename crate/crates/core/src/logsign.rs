//! Log-sign scalars: nonzero reals stored as a sign and `ln|value|`.
//!
//! The representation turns products into sums, integer powers into integer
//! scalings, and root extraction into division, so magnitudes like
//! `exp(10^6)` cost the same as magnitudes near one. Zero is deliberately
//! unrepresentable; constructors reject it.
//!
//! Each value carries its own precision (fractional bits of the stored
//! logarithm). Mixed-precision operands promote to the larger precision.

use num_bigint::{BigInt, BigUint};
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fixed::{parse_decimal, BigFixed};

/// Sign of a nonzero real.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn of_f64(v: f64) -> Self {
        if v < 0.0 {
            Sign::Minus
        } else {
            Sign::Plus
        }
    }

    pub fn flip(self) -> Self {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn combine(self, other: Self) -> Self {
        if self == other {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    /// Sign of `self^k`; only the parity of `k` matters.
    pub fn pow_parity(self, k_is_odd: bool) -> Self {
        if k_is_odd {
            self
        } else {
            Sign::Plus
        }
    }

    pub fn as_i8(self) -> i8 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn as_f64(self) -> f64 {
        f64::from(self.as_i8())
    }
}

/// A nonzero real in log-sign form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LogSign {
    sign: Sign,
    logabs: BigFixed,
}

impl LogSign {
    pub fn new(sign: Sign, logabs: BigFixed) -> Self {
        LogSign { sign, logabs }
    }

    /// The multiplicative identity: sign `+`, log zero.
    pub fn one(bits: u32) -> Self {
        LogSign { sign: Sign::Plus, logabs: BigFixed::zero(bits) }
    }

    pub fn from_real(v: f64, bits: u32) -> Result<Self> {
        if v == 0.0 {
            return Err(Error::ZeroValue);
        }
        if !v.is_finite() {
            return Err(Error::NonFinite);
        }
        let exact = BigFixed::from_f64(v.abs(), 1074 + 64)?;
        let num = exact.mant().magnitude().clone();
        let den = BigUint::from(1u8) << exact.bits();
        Ok(LogSign {
            sign: Sign::of_f64(v),
            logabs: BigFixed::ln_rational(&num, &den, bits),
        })
    }

    /// Log-sign form of the exact rational `num/den` with an explicit sign.
    pub fn from_rational(sign: Sign, num: &BigUint, den: &BigUint, bits: u32) -> Result<Self> {
        if num.is_zero() {
            return Err(Error::ZeroValue);
        }
        if den.is_zero() {
            return Err(Error::NonFinite);
        }
        Ok(LogSign { sign, logabs: BigFixed::ln_rational(num, den, bits) })
    }

    /// Parse an exact decimal literal such as `-2.5e10`.
    pub fn from_decimal(s: &str, bits: u32) -> Result<Self> {
        let (sign, num, den) = parse_decimal(s)?;
        if sign == 0 {
            return Err(Error::ZeroValue);
        }
        let sign = if sign < 0 { Sign::Minus } else { Sign::Plus };
        Self::from_rational(sign, &num, &den, bits)
    }

    pub fn sign(&self) -> Sign {
        self.sign
    }

    pub fn logabs(&self) -> &BigFixed {
        &self.logabs
    }

    /// Fractional bits carried by the stored logarithm.
    pub fn precision(&self) -> u32 {
        self.logabs.bits()
    }

    pub fn with_precision(&self, bits: u32) -> Self {
        LogSign { sign: self.sign, logabs: self.logabs.round_to(bits) }
    }

    pub fn mul(&self, other: &Self) -> Self {
        LogSign {
            sign: self.sign.combine(other.sign),
            logabs: self.logabs.add(&other.logabs),
        }
    }

    pub fn div(&self, other: &Self) -> Self {
        LogSign {
            sign: self.sign.combine(other.sign),
            logabs: self.logabs.sub(&other.logabs),
        }
    }

    pub fn pow_int(&self, k: &BigInt) -> Self {
        LogSign {
            sign: self.sign.pow_parity(k.magnitude().bit(0)),
            logabs: self.logabs.mul_int(k),
        }
    }

    /// Real `s`-th root. For even `s` the operand must be positive and the
    /// positive branch is returned; for odd `s` the sign is preserved.
    ///
    /// The result carries `bits(s)` extra fractional bits so that raising it
    /// back to the `s`-th power stays within one ulp of the operand.
    pub fn root_positive(&self, s: &BigUint) -> Result<Self> {
        debug_assert!(!s.is_zero());
        let s_odd = s.bit(0);
        if !s_odd && self.sign == Sign::Minus {
            return Err(Error::NegativeEvenRoot);
        }
        let out_bits = self.logabs.bits() + s.bits() as u32;
        Ok(LogSign {
            sign: if s_odd { self.sign } else { Sign::Plus },
            logabs: self.logabs.round_to(out_bits).div_int(s),
        })
    }

    /// Native rendering `sign * exp(logabs)`; `None` when the magnitude
    /// leaves the `f64` exponent range.
    pub fn to_f64(&self) -> Option<f64> {
        let l = self.logabs.to_f64();
        if !(-745.0..=709.0).contains(&l) {
            return None;
        }
        Some(self.sign.as_f64() * l.exp())
    }
}

/// Working-precision policy for one solve.
///
/// `integer_bits` is sized so the fixed-point integer part can hold every
/// logarithm the pipeline produces, including the growth from the monomial
/// changes of variables; `fraction_bits` is sized so that half-ulp rounding
/// of the stored logarithms keeps each diagonal root within relative error
/// `1/(8 s)` of the true root after back-substitution.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrecisionBudget {
    pub integer_bits: u32,
    pub fraction_bits: u32,
}

impl PrecisionBudget {
    pub fn total(&self) -> u32 {
        self.integer_bits + self.fraction_bits
    }
}

const INTEGER_GUARD_BITS: u32 = 8;
const FRACTION_FLOOR_BITS: u32 = 32;

/// Ceiling of `log2(1 + m)` for a nonnegative integer `m`, which equals the
/// bit length of `m`.
fn ceil_log2_succ(m: &BigUint) -> u32 {
    m.bits().to_u32().expect("bit length fits u32")
}

/// Derive the working precision for a solve over an `n`-dimensional system
/// whose exponent matrix has entries bounded by `d`, whose coefficient log
/// ratios are bounded by `sigma` in absolute value, and whose diagonalized
/// form involves integers (diagonal entries and multiplier entries) of
/// magnitude at most `max_exponent`.
pub fn precision_budget(
    n: usize,
    d: &BigUint,
    sigma: f64,
    max_exponent: &BigUint,
) -> PrecisionBudget {
    debug_assert!(n >= 1 && !d.is_zero());
    let nf = n as f64;
    let log2_d = if d.bits() <= 53 {
        d.to_f64().expect("small d").log2()
    } else {
        d.bits() as f64
    };
    // Magnitude bound on the diagonalized coefficient logs:
    // n^(4 + 3n/2) * d^(3n) * max(sigma, 1).
    let log2_bound = (4.0 + 1.5 * nf) * nf.log2() + 3.0 * nf * log2_d + sigma.max(1.0).log2();
    let growth = ceil_log2_succ(max_exponent) + ceil_log2_succ(&(d * BigUint::from(n)));
    PrecisionBudget {
        integer_bits: INTEGER_GUARD_BITS + log2_bound.max(0.0).ceil() as u32 + growth,
        // Doubled growth slack: rounding error is amplified once by the
        // diagonal root division and once by each unimodular transform.
        fraction_bits: FRACTION_FLOOR_BITS + 2 * growth,
    }
}
