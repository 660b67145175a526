//! Arbitrary-precision binary fixed-point arithmetic.
//!
//! A [`BigFixed`] stores a value as `mant / 2^bits` with a `BigInt` mantissa,
//! so precision is a per-value property measured in fractional bits. All
//! rounding is round-to-nearest with ties away from zero, which keeps every
//! operation within half an ulp of the exact result.
//!
//! Besides ring operations the module provides the natural logarithm of an
//! exact positive rational, computed by scaling into `[1, 2)` and summing the
//! `atanh` series. This is the only transcendental evaluation the solver
//! needs: everything downstream works additively on logarithms.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Shift right by `k` bits, rounding to nearest with ties away from zero.
pub(crate) fn shr_round(x: &BigInt, k: u32) -> BigInt {
    if k == 0 || x.is_zero() {
        return x.clone();
    }
    let mag = x.magnitude();
    let mut q = mag >> k;
    if mag.bit(u64::from(k) - 1) {
        q += 1u32;
    }
    let q = BigInt::from(q);
    if x.is_negative() {
        -q
    } else {
        q
    }
}

/// Integer division rounding to nearest, ties away from zero.
pub(crate) fn div_round(n: &BigInt, d: &BigInt) -> BigInt {
    debug_assert!(!d.is_zero());
    let q = n / d;
    let r = n - &q * d;
    if r.is_zero() {
        return q;
    }
    let two_r: BigInt = r.abs() * 2;
    if two_r >= d.abs() {
        let step = if (n.is_negative()) == (d.is_negative()) {
            BigInt::one()
        } else {
            -BigInt::one()
        };
        q + step
    } else {
        q
    }
}

/// A signed fixed-point number: `value = mant / 2^bits`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BigFixed {
    mant: BigInt,
    bits: u32,
}

impl BigFixed {
    pub fn zero(bits: u32) -> Self {
        BigFixed { mant: BigInt::zero(), bits }
    }

    pub fn from_bigint(v: BigInt, bits: u32) -> Self {
        BigFixed { mant: v << bits, bits }
    }

    pub fn from_i64(v: i64, bits: u32) -> Self {
        Self::from_bigint(BigInt::from(v), bits)
    }

    /// Raw constructor; `mant` is interpreted at scale `2^-bits`.
    pub fn from_raw(mant: BigInt, bits: u32) -> Self {
        BigFixed { mant, bits }
    }

    /// Exact conversion from a finite `f64`, rounded only if `bits` cannot
    /// hold the dyadic tail.
    pub fn from_f64(v: f64, bits: u32) -> Result<Self> {
        if !v.is_finite() {
            return Err(Error::NonFinite);
        }
        if v == 0.0 {
            return Ok(Self::zero(bits));
        }
        let repr = v.to_bits();
        let negative = repr >> 63 == 1;
        let biased = ((repr >> 52) & 0x7ff) as i64;
        let frac = repr & ((1u64 << 52) - 1);
        let (m, e) = if biased == 0 {
            (frac, -1074i64)
        } else {
            (frac | (1u64 << 52), biased - 1075)
        };
        let mut mant = BigInt::from(m);
        let shift = e + i64::from(bits);
        if shift >= 0 {
            mant <<= shift as u64;
        } else {
            mant = shr_round(&mant, (-shift) as u32);
        }
        if negative {
            mant = -mant;
        }
        Ok(BigFixed { mant, bits })
    }

    /// Rounded value of the exact rational `sign * num / den`.
    pub fn from_rational_value(negative: bool, num: &BigUint, den: &BigUint, bits: u32) -> Self {
        debug_assert!(!den.is_zero());
        let scaled = BigInt::from(num.clone()) << bits;
        let mut mant = div_round(&scaled, &BigInt::from(den.clone()));
        if negative {
            mant = -mant;
        }
        BigFixed { mant, bits }
    }

    /// Value of `z / (scale * 2^scale_bits)` rounded to `bits` fractional
    /// bits. `bits` must be at least `scale_bits`.
    pub fn from_scaled_ratio(z: &BigInt, scale: &BigUint, scale_bits: u32, bits: u32) -> Self {
        debug_assert!(bits >= scale_bits);
        let num = z.clone() << (bits - scale_bits);
        let mant = div_round(&num, &BigInt::from(scale.clone()));
        BigFixed { mant, bits }
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn mant(&self) -> &BigInt {
        &self.mant
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.mant.is_negative()
    }

    /// Re-round to a different number of fractional bits.
    pub fn round_to(&self, bits: u32) -> Self {
        if bits >= self.bits {
            BigFixed { mant: &self.mant << (bits - self.bits), bits }
        } else {
            BigFixed { mant: shr_round(&self.mant, self.bits - bits), bits }
        }
    }

    fn aligned(&self, other: &Self) -> (BigInt, BigInt, u32) {
        let bits = self.bits.max(other.bits);
        let a = &self.mant << (bits - self.bits);
        let b = &other.mant << (bits - other.bits);
        (a, b, bits)
    }

    pub fn add(&self, other: &Self) -> Self {
        let (a, b, bits) = self.aligned(other);
        BigFixed { mant: a + b, bits }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let (a, b, bits) = self.aligned(other);
        BigFixed { mant: a - b, bits }
    }

    pub fn neg(&self) -> Self {
        BigFixed { mant: -&self.mant, bits: self.bits }
    }

    pub fn abs(&self) -> Self {
        BigFixed { mant: self.mant.abs(), bits: self.bits }
    }

    pub fn cmp_value(&self, other: &Self) -> Ordering {
        let (a, b, _) = self.aligned(other);
        a.cmp(&b)
    }

    /// Exact product with an integer.
    pub fn mul_int(&self, k: &BigInt) -> Self {
        BigFixed { mant: &self.mant * k, bits: self.bits }
    }

    /// Quotient by a positive integer, rounded at this value's precision.
    pub fn div_int(&self, k: &BigUint) -> Self {
        BigFixed { mant: div_round(&self.mant, &BigInt::from(k.clone())), bits: self.bits }
    }

    /// Rounded product; the result carries `max` of the operand precisions.
    pub fn mul(&self, other: &Self) -> Self {
        let bits = self.bits.max(other.bits);
        let prod = &self.mant * &other.mant;
        BigFixed { mant: shr_round(&prod, self.bits + other.bits - bits), bits }
    }

    /// Rounded quotient; the result carries `max` of the operand precisions.
    pub fn div(&self, other: &Self) -> Self {
        debug_assert!(!other.is_zero());
        let bits = self.bits.max(other.bits);
        let num = &self.mant << (other.bits + bits - self.bits);
        BigFixed { mant: div_round(&num, &other.mant), bits }
    }

    /// Integer power by repeated squaring, rounding after each step.
    pub fn powi(&self, mut k: u64) -> Self {
        let mut base = self.clone();
        let mut acc = BigFixed::from_i64(1, self.bits);
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Bit length of the integer part of `|value|`; 0 when `|value| < 1`.
    pub fn int_bit_length(&self) -> u64 {
        (self.mant.magnitude() >> self.bits).bits()
    }

    pub fn to_f64(&self) -> f64 {
        if self.mant.is_zero() {
            return 0.0;
        }
        let mag = self.mant.magnitude();
        let bl = mag.bits();
        let shift = bl.saturating_sub(64);
        let top = (mag >> shift).to_u64().expect("top word fits") as f64;
        let exp = shift as i64 - i64::from(self.bits);
        let v = top * 2f64.powi(exp.clamp(i64::from(i32::MIN), i64::from(i32::MAX)) as i32);
        if self.mant.is_negative() {
            -v
        } else {
            v
        }
    }

    /// Decimal rendering with enough digits to reproduce every stored bit.
    pub fn to_decimal_string(&self) -> String {
        let digits = (f64::from(self.bits) * std::f64::consts::LOG10_2).ceil() as u32 + 2;
        let pow10 = BigUint::from(10u32).pow(digits);
        let scaled = BigInt::from(self.mant.magnitude() * &pow10);
        let scaled = shr_round(&scaled, self.bits).magnitude().clone();
        let int_part = &scaled / &pow10;
        let frac_part = &scaled % &pow10;
        let sign = if self.mant.is_negative() { "-" } else { "" };
        format!("{sign}{int_part}.{frac:0>width$}", frac = frac_part, width = digits as usize)
    }

    /// Natural log of the positive rational `num_bits/den`, to `bits`
    /// fractional bits (error below one ulp).
    pub fn ln_rational(num: &BigUint, den: &BigUint, bits: u32) -> Self {
        debug_assert!(!num.is_zero() && !den.is_zero());
        let work = bits + 64;
        ln_biguint(num, work).sub(&ln_biguint(den, work)).round_to(bits)
    }

    /// ln 2 at the requested precision.
    pub fn ln2(bits: u32) -> Self {
        static CACHE: OnceLock<Mutex<HashMap<u32, BigInt>>> = OnceLock::new();
        let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        let mut guard = cache.lock().expect("ln2 cache poisoned");
        let mant = guard
            .entry(bits)
            .or_insert_with(|| {
                // ln 2 = 2 atanh(1/3)
                let third = BigFixed::from_i64(1, bits + 32).div(&BigFixed::from_i64(3, bits + 32));
                let mut v = atanh_small(&third);
                v.mant <<= 1;
                v.round_to(bits).mant
            })
            .clone();
        BigFixed { mant, bits }
    }
}

/// atanh(x) for |x| <= 1/3 by direct series summation.
fn atanh_small(x: &BigFixed) -> BigFixed {
    let x2 = x.mul(x);
    let mut term = x.clone();
    let mut sum = x.clone();
    let mut k = BigUint::from(1u32);
    loop {
        term = term.mul(&x2);
        k += 2u32;
        let contribution = term.div_int(&k);
        if contribution.mant().is_zero() {
            break;
        }
        sum = sum.add(&contribution);
    }
    sum
}

/// Natural log of a positive integer at `bits` fractional bits.
fn ln_biguint(x: &BigUint, bits: u32) -> BigFixed {
    debug_assert!(!x.is_zero());
    if x.is_one() {
        return BigFixed::zero(bits);
    }
    let k = x.bits() - 1;
    // m = x / 2^k lies in [1, 2)
    let mant = if u64::from(bits) >= k {
        BigInt::from(x.clone()) << (u64::from(bits) - k)
    } else {
        shr_round(&BigInt::from(x.clone()), (k - u64::from(bits)) as u32)
    };
    let m = BigFixed { mant, bits };
    let one = BigFixed::from_i64(1, bits);
    let t = m.sub(&one).div(&m.add(&one));
    let mut ln_m = atanh_small(&t);
    ln_m.mant <<= 1;
    ln_m.add(&BigFixed::ln2(bits).mul_int(&BigInt::from(k)))
}

/// Fast approximate natural log of `num/den` in `f64`, for budget sizing and
/// native-range checks on rationals whose parts may be astronomically large.
pub fn ln_rational_f64(num: &BigUint, den: &BigUint) -> f64 {
    approx_ln_biguint(num) - approx_ln_biguint(den)
}

fn approx_ln_biguint(x: &BigUint) -> f64 {
    debug_assert!(!x.is_zero());
    let bl = x.bits();
    let shift = bl.saturating_sub(64);
    let top = (x >> shift).to_u64().expect("top word fits") as f64;
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

/// Parsed exact decimal: `sign * num / den` with `den` a power of ten.
/// Zero parses with `sign == 0`.
pub fn parse_decimal(s: &str) -> Result<(i8, BigUint, BigUint)> {
    let s = s.trim();
    let bad = || Error::InvalidInput(format!("malformed decimal literal {s:?}"));
    let (sign, body) = match s.strip_prefix('-') {
        Some(rest) => (-1i8, rest),
        None => (1i8, s.strip_prefix('+').unwrap_or(s)),
    };
    let (body, exp) = match body.find(['e', 'E']) {
        Some(pos) => {
            let exp: i64 = body[pos + 1..].parse().map_err(|_| bad())?;
            (&body[..pos], exp)
        }
        None => (body, 0),
    };
    let (int_digits, frac_digits) = match body.find('.') {
        Some(pos) => (&body[..pos], &body[pos + 1..]),
        None => (body, ""),
    };
    if int_digits.is_empty() && frac_digits.is_empty() {
        return Err(bad());
    }
    if !int_digits.bytes().all(|b| b.is_ascii_digit())
        || !frac_digits.bytes().all(|b| b.is_ascii_digit())
    {
        return Err(bad());
    }
    let digits: BigUint = format!("{int_digits}{frac_digits}")
        .parse()
        .map_err(|_| bad())?;
    if digits.is_zero() {
        return Ok((0, BigUint::zero(), BigUint::one()));
    }
    let shift = exp - frac_digits.len() as i64;
    let ten = BigUint::from(10u32);
    let (num, den) = if shift >= 0 {
        (digits * ten.pow(shift as u32), BigUint::one())
    } else {
        (digits, ten.pow((-shift) as u32))
    };
    Ok((sign, num, den))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ref_fixed(decimal: &str, bits: u32) -> BigFixed {
        let (sign, num, den) = parse_decimal(decimal).unwrap();
        BigFixed::from_rational_value(sign < 0, &num, &den, bits)
    }

    fn assert_close_ulps(got: &BigFixed, want: &BigFixed, ulps: i64) {
        let diff = got.sub(want).abs();
        let bound = BigFixed::from_raw(BigInt::from(ulps), got.bits().min(want.bits()));
        assert!(
            diff.cmp_value(&bound) != Ordering::Greater,
            "difference {} exceeds {} ulps",
            diff.to_decimal_string(),
            ulps
        );
    }

    // 55-digit references from an independent high-precision evaluation.
    const LN2: &str = "0.6931471805599453094172321214581765680755001343602552541";
    const LN8: &str = "2.079441541679835928251696364374529704226500403080765762";
    const LN10: &str = "2.302585092994045684017991454684364207601101488628772976";
    const LN1_5: &str = "0.4054651081081643819780131154643491365719904234624941976";
    const LN123456789: &str = "18.63140176616801803319393334796320420971368184102040198";

    #[test]
    fn ln2_matches_reference() {
        for bits in [64, 128, 160] {
            assert_close_ulps(&BigFixed::ln2(bits), &ref_fixed(LN2, bits), 2);
        }
    }

    #[test]
    fn ln_rational_matches_reference_table() {
        let cases = [
            (8u64, 1u64, LN8),
            (10, 1, LN10),
            (3, 2, LN1_5),
            (123456789, 1, LN123456789),
        ];
        for (num, den, reference) in cases {
            let got = BigFixed::ln_rational(&BigUint::from(num), &BigUint::from(den), 128);
            assert_close_ulps(&got, &ref_fixed(reference, 128), 2);
        }
    }

    #[test]
    fn ln_of_one_is_exactly_zero() {
        let one = BigUint::one();
        assert!(BigFixed::ln_rational(&one, &one, 96).is_zero());
    }

    #[test]
    fn ln_of_reciprocal_negates() {
        let num = BigUint::from(7u32);
        let den = BigUint::one();
        let a = BigFixed::ln_rational(&num, &den, 128);
        let b = BigFixed::ln_rational(&den, &num, 128);
        assert_close_ulps(&a, &b.neg(), 2);
    }

    #[test]
    fn ln_of_huge_rational_stays_accurate() {
        // ln(10^300) = 300 ln 10
        let num = BigUint::from(10u32).pow(300);
        let got = BigFixed::ln_rational(&num, &BigUint::one(), 128);
        let want = ref_fixed(LN10, 160).mul_int(&BigInt::from(300)).round_to(128);
        assert_close_ulps(&got, &want, 4);
    }

    #[test]
    fn f64_round_trip() {
        for v in [1.0, -2.5, 0.1, 1e300, std::f64::consts::PI] {
            let x = BigFixed::from_f64(v, 80).unwrap();
            assert_eq!(x.to_f64(), v);
        }
        // Tiny magnitudes need enough fractional bits to hold the tail.
        let tiny = BigFixed::from_f64(-3.25e-200, 800).unwrap();
        assert_eq!(tiny.to_f64(), -3.25e-200);
        assert!(matches!(BigFixed::from_f64(f64::NAN, 32), Err(Error::NonFinite)));
        assert!(matches!(BigFixed::from_f64(f64::INFINITY, 32), Err(Error::NonFinite)));
    }

    #[test]
    fn rounding_is_to_nearest_ties_away() {
        // 5/2 at 0 fractional bits -> 3, -5/2 -> -3
        assert_eq!(div_round(&BigInt::from(5), &BigInt::from(2)), BigInt::from(3));
        assert_eq!(div_round(&BigInt::from(-5), &BigInt::from(2)), BigInt::from(-3));
        assert_eq!(div_round(&BigInt::from(7), &BigInt::from(3)), BigInt::from(2));
        assert_eq!(div_round(&BigInt::from(-7), &BigInt::from(3)), BigInt::from(-2));
        assert_eq!(shr_round(&BigInt::from(5), 1), BigInt::from(3));
        assert_eq!(shr_round(&BigInt::from(-5), 1), BigInt::from(-3));
        assert_eq!(shr_round(&BigInt::from(9), 2), BigInt::from(2));
    }

    #[test]
    fn decimal_string_round_trip() {
        let x = BigFixed::ln_rational(&BigUint::from(8u32), &BigUint::one(), 96);
        let s = x.to_decimal_string();
        let back = ref_fixed(&s, 96);
        assert_close_ulps(&back, &x, 1);
        assert!(s.starts_with("2.07944154167983592825"));
    }

    #[test]
    fn parse_decimal_forms() {
        let (s, n, d) = parse_decimal("-12.34e-2").unwrap();
        assert_eq!(s, -1);
        assert_eq!(n, BigUint::from(1234u32));
        assert_eq!(d, BigUint::from(10000u32));
        let (s, n, _) = parse_decimal("2.5e3").unwrap();
        assert_eq!(s, 1);
        assert_eq!(n, BigUint::from(2500u32));
        let (s, ..) = parse_decimal("0.000").unwrap();
        assert_eq!(s, 0);
        assert!(parse_decimal("abc").is_err());
        assert!(parse_decimal("1.2.3").is_err());
        assert!(parse_decimal("").is_err());
    }

    #[test]
    fn value_arithmetic() {
        let a = BigFixed::from_f64(1.5, 64).unwrap();
        let b = BigFixed::from_f64(2.25, 64).unwrap();
        assert_eq!(a.mul(&b).to_f64(), 3.375);
        assert_eq!(b.div(&a).to_f64(), 1.5);
        assert_eq!(a.powi(4).to_f64(), 5.0625);
        assert_eq!(a.sub(&b).to_f64(), -0.75);
        assert_eq!(a.int_bit_length(), 1);
        assert_eq!(BigFixed::from_f64(9.0, 8).unwrap().int_bit_length(), 4);
        assert_eq!(BigFixed::from_f64(0.5, 8).unwrap().int_bit_length(), 0);
    }

    #[test]
    fn sign_helpers() {
        let x = BigFixed::from_f64(-0.75, 16).unwrap();
        assert!(x.is_negative());
        assert!(!x.abs().is_negative());
        assert_eq!(x.neg().to_f64(), 0.75);
    }
}
