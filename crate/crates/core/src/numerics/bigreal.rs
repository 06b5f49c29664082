//! Fixed-point reals `mant / 2^bits` with a running error bound in ulps.

use std::fmt;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Refuse absurd precisions rather than allocate forever.
pub const MAX_DIGITS: u32 = 5000;

const LOG2_10: f64 = std::f64::consts::LOG2_10;

/// Working bits for `digits` correct decimals plus a guard.
pub fn bits_for_digits(digits: u32) -> Result<u32> {
    if digits > MAX_DIGITS {
        return Err(Error::Precision(digits));
    }
    Ok((digits as f64 * LOG2_10).ceil() as u32 + 64)
}

#[derive(Clone, Debug)]
pub struct BigReal {
    mant: BigInt,
    bits: u32,
    /// error bound in units of `2^-bits`
    err: f64,
}

fn shr_floor(x: &BigInt, k: u32) -> BigInt {
    // BigInt >> rounds toward -inf
    x >> k
}

impl BigReal {
    pub fn zero(bits: u32) -> Self {
        BigReal { mant: BigInt::zero(), bits, err: 0.0 }
    }

    pub fn from_int(n: i64, bits: u32) -> Self {
        BigReal { mant: BigInt::from(n) << bits, bits, err: 0.0 }
    }

    pub fn from_rational(q: &BigRational, bits: u32) -> Self {
        let num = q.numer() << bits;
        let (m, r) = num.div_mod_floor(q.denom());
        BigReal { mant: m, bits, err: if r.is_zero() { 0.0 } else { 1.0 } }
    }

    pub(crate) fn from_parts(mant: BigInt, bits: u32, err: f64) -> Self {
        BigReal { mant, bits, err }
    }

    /// Parse a plain decimal such as `-1.25`, with an absolute error bound `10^-err_digits`.
    pub fn from_decimal(s: &str, bits: u32, err_digits: u32) -> Result<Self> {
        let s = s.trim();
        let (neg, body) = match s.strip_prefix('-') {
            Some(b) => (true, b),
            None => (false, s),
        };
        let (ip, fp) = body.split_once('.').unwrap_or((body, ""));
        let digits = format!("{ip}{fp}");
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(Error::parse(0, format!("bad decimal '{s}'")));
        }
        let mut n: BigInt = digits.parse().unwrap();
        if neg {
            n = -n;
        }
        let q = BigRational::new(n, num_traits::pow(BigInt::from(10), fp.len()));
        let mut x = Self::from_rational(&q, bits);
        x.err += 2f64.powf(bits as f64 - err_digits as f64 * LOG2_10);
        Ok(x)
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.mant
    }

    pub fn err_ulps(&self) -> f64 {
        self.err
    }

    /// Exact value of the mantissa as a rational.
    pub fn to_rational(&self) -> BigRational {
        BigRational::new(self.mant.clone(), BigInt::one() << self.bits)
    }

    /// Approximate magnitude as f64.
    pub fn to_f64(&self) -> f64 {
        let shift = self.bits.saturating_sub(60);
        let top = (&self.mant >> shift).to_f64().unwrap_or(f64::INFINITY);
        top * 2f64.powi(shift as i32 - self.bits as i32)
    }

    /// log10 of the absolute error bound.
    pub fn err_log10(&self) -> f64 {
        if self.err == 0.0 {
            return f64::NEG_INFINITY;
        }
        self.err.log10() - self.bits as f64 / LOG2_10
    }

    /// log10 of |value|, `-inf` for an exact zero mantissa.
    pub fn abs_log10(&self) -> f64 {
        if self.mant.is_zero() {
            return f64::NEG_INFINITY;
        }
        let nb = self.mant.bits();
        let shift = nb.saturating_sub(60);
        let top = (self.mant.abs() >> shift).to_f64().unwrap();
        (top.log2() + shift as f64 - self.bits as f64) / LOG2_10
    }

    /// Error bound as a plain f64 (may underflow to 0 at huge precisions).
    pub fn err_abs(&self) -> f64 {
        10f64.powf(self.err_log10())
    }

    pub fn is_negative(&self) -> bool {
        self.mant.sign() == Sign::Minus
    }

    fn check(&self, other: &BigReal) {
        assert_eq!(self.bits, other.bits, "precision mismatch");
    }

    pub fn add(&self, o: &BigReal) -> BigReal {
        self.check(o);
        BigReal { mant: &self.mant + &o.mant, bits: self.bits, err: self.err + o.err }
    }

    pub fn sub(&self, o: &BigReal) -> BigReal {
        self.check(o);
        BigReal { mant: &self.mant - &o.mant, bits: self.bits, err: self.err + o.err }
    }

    pub fn neg(&self) -> BigReal {
        BigReal { mant: -&self.mant, bits: self.bits, err: self.err }
    }

    pub fn abs(&self) -> BigReal {
        BigReal { mant: self.mant.abs(), bits: self.bits, err: self.err }
    }

    pub fn mul(&self, o: &BigReal) -> BigReal {
        self.check(o);
        let prod = &self.mant * &o.mant;
        let mant = shr_floor(&prod, self.bits);
        let a = self.to_f64().abs() * (1.0 + 1e-12);
        let b = o.to_f64().abs() * (1.0 + 1e-12);
        let cross = self.err * o.err * 2f64.powi(-(self.bits as i32).min(1000));
        BigReal { mant, bits: self.bits, err: 1.0 + a * o.err + b * self.err + cross }
    }

    pub fn mul_rational(&self, q: &BigRational) -> BigReal {
        let num = &self.mant * q.numer();
        let mant = num.div_floor(q.denom());
        let qf = (q.numer().to_f64().unwrap_or(f64::INFINITY) / q.denom().to_f64().unwrap_or(f64::INFINITY)).abs();
        let qf = if qf.is_finite() { qf * (1.0 + 1e-12) } else { rational_abs_f64(q) };
        BigReal { mant, bits: self.bits, err: 1.0 + self.err * qf }
    }

    pub fn mul_int(&self, k: i64) -> BigReal {
        BigReal { mant: &self.mant * k, bits: self.bits, err: self.err * (k.unsigned_abs() as f64) }
    }

    pub fn div(&self, o: &BigReal) -> Result<BigReal> {
        self.check(o);
        let b = o.to_f64().abs();
        let eb = o.err * 2f64.powi(-(o.bits as i32).min(1000));
        if b == 0.0 || eb >= 0.01 * b {
            return Err(Error::Invalid("division by a number indistinguishable from 0".into()));
        }
        let num = &self.mant << self.bits;
        let mant = num.div_floor(&o.mant);
        let q = self.to_f64().abs() / b;
        let err = 1.0 + 1.02 * (self.err + q * o.err) / b;
        Ok(BigReal { mant, bits: self.bits, err })
    }

    /// Does the error interval around `self` exclude 0?
    pub fn certainly_nonzero(&self) -> bool {
        self.abs_log10() > self.err_log10() + 0.0001
    }

    /// `digits` decimals after the point, rounded from the mantissa.
    pub fn to_decimal(&self, digits: u32) -> String {
        let scale = num_traits::pow(BigInt::from(10), digits as usize);
        let num = self.mant.abs() * scale;
        let half = BigInt::one() << (self.bits.max(1) - 1);
        let r: BigInt = (num + half) >> self.bits;
        let s = r.to_string();
        let s =
            if s.len() <= digits as usize { format!("{}{}", "0".repeat(digits as usize + 1 - s.len()), s) } else { s };
        let (ip, fp) = s.split_at(s.len() - digits as usize);
        let sign = if self.is_negative() && !r.is_zero() { "-" } else { "" };
        if digits == 0 {
            format!("{sign}{ip}")
        } else {
            format!("{sign}{ip}.{fp}")
        }
    }

    /// Move to another precision, keeping the error bound honest.
    pub fn with_bits(&self, bits: u32) -> BigReal {
        if bits >= self.bits {
            let k = bits - self.bits;
            BigReal { mant: &self.mant << k, bits, err: self.err * 2f64.powi(k as i32) }
        } else {
            let k = self.bits - bits;
            BigReal { mant: shr_floor(&self.mant, k), bits, err: 1.0 + self.err * 2f64.powi(-(k as i32)) }
        }
    }
}

fn rational_abs_f64(q: &BigRational) -> f64 {
    let n = q.numer().abs();
    let d = q.denom();
    let shift = n.bits().max(d.bits()).saturating_sub(900);
    ((&n >> shift).to_f64().unwrap() / (d >> shift).to_f64().unwrap()) * (1.0 + 1e-12)
}

impl fmt::Display for BigReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = ((self.bits as f64 - 64.0) / LOG2_10).max(1.0) as u32;
        write!(f, "{}", self.to_decimal(digits))
    }
}

/// `arctan(1/x)` for integer `x >= 2`.
fn arctan_inv(x: u64, bits: u32) -> BigReal {
    let one = BigInt::one() << bits;
    let x2 = BigInt::from(x * x);
    let mut power = one / x; // 1/x^(2k+1)
    let mut sum = BigInt::zero();
    let mut err = 1.0f64;
    let mut k = 0u64;
    while !power.is_zero() {
        let term = &power / (2 * k + 1);
        if k % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
        power /= &x2;
        err += 2.0;
        k += 1;
    }
    // truncation: the first omitted term is below one ulp
    BigReal { mant: sum, bits, err: err + 1.0 }
}

/// `pi = 16 arctan(1/5) - 4 arctan(1/239)`
pub fn pi(bits: u32) -> BigReal {
    let a = arctan_inv(5, bits).mul_int(16);
    let b = arctan_inv(239, bits).mul_int(4);
    a.sub(&b)
}

pub fn pi_power(bits: u32, e: u32) -> BigReal {
    let p = pi(bits);
    let mut r = BigReal::from_int(1, bits);
    for _ in 0..e {
        r = r.mul(&p);
    }
    r
}

/// Continued-fraction search for a rational within the error bound.
///
/// Accepts `p/q` (`q <= max_den`) when `|x - p/q| + err < 10^-20 / (2 q^2)`.
pub fn recognize_rational(x: &BigReal, max_den: u64) -> Option<BigRational> {
    let target = x.to_rational();
    let err = BigRational::new(BigInt::from((x.err.ceil() as u64).max(1)), BigInt::one() << x.bits);
    let tol_base = BigRational::new(BigInt::one(), num_traits::pow(BigInt::from(10), 20));
    let (mut h0, mut h1) = (BigInt::zero(), BigInt::one());
    let (mut k0, mut k1) = (BigInt::one(), BigInt::zero());
    let mut rest = target.clone();
    for _ in 0..200 {
        let a = rest.floor().to_integer();
        let h = &a * &h1 + &h0;
        let k = &a * &k1 + &k0;
        if k > BigInt::from(max_den) {
            return None;
        }
        let cand = BigRational::new(h.clone(), k.clone());
        let tol = &tol_base / (BigRational::from_integer(&k * &k * 2));
        if (&target - &cand).abs() + &err < tol {
            return Some(cand);
        }
        let frac = &rest - BigRational::from_integer(a);
        if frac.is_zero() {
            return None;
        }
        rest = frac.recip();
        h0 = std::mem::replace(&mut h1, h);
        k0 = std::mem::replace(&mut k1, k);
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linear::rat;

    const PI50: &str = "3.14159265358979323846264338327950288419716939937510";

    #[test]
    fn pi_digits() {
        let bits = bits_for_digits(50).unwrap();
        let p = pi(bits);
        assert_eq!(p.to_decimal(49), PI50[..51]);
        assert!(p.err_log10() < -60.0);
    }

    #[test]
    fn arithmetic_errors_stay_small() {
        let bits = bits_for_digits(40).unwrap();
        let third = BigReal::from_rational(&rat(1, 3), bits);
        let x = third.mul(&BigReal::from_int(3, bits));
        assert_eq!(x.to_decimal(40), format!("1.{}", "0".repeat(40)));
        let y = BigReal::from_int(1, bits).div(&BigReal::from_int(7, bits)).unwrap();
        assert_eq!(y.to_decimal(12), "0.142857142857");
        assert!(y.err_ulps() < 10.0);
        assert_eq!(BigReal::from_int(-2, bits).to_decimal(3), "-2.000");
        assert!(BigReal::zero(bits).div(&BigReal::zero(bits)).is_err());
    }

    #[test]
    fn decimal_round_trip() {
        let bits = bits_for_digits(30).unwrap();
        let x = BigReal::from_decimal("-1.2345678901234567890123456789", bits, 30).unwrap();
        assert_eq!(x.to_decimal(28), "-1.2345678901234567890123456789"[..31].to_string());
        assert!(x.err_log10() < -29.0);
        assert!(BigReal::from_decimal("1.2x", bits, 30).is_err());
    }

    #[test]
    fn rational_recognition() {
        let bits = bits_for_digits(50).unwrap();
        let x = BigReal::from_rational(&rat(-355, 113), bits);
        assert_eq!(recognize_rational(&x, 1000), Some(rat(-355, 113)));
        assert_eq!(recognize_rational(&pi(bits), 1_000_000), None);
        let y = BigReal::from_rational(&rat(7, 1_000_003), bits);
        assert_eq!(recognize_rational(&y, 1_000_000), None);
    }

    #[test]
    fn precision_ceiling() {
        assert!(bits_for_digits(MAX_DIGITS + 1).is_err());
    }
}
