//! Arbitrary precision MZVs.
//!
//! The path `0 -> 1` is split at `1/2`, so every factor is a nested
//! polylogarithm evaluated at `1/2`:
//! `I(0;w;1) = sum_{w=uv} I(0;u;1/2) (-1)^{|v|} I(0; rev(flip v); 1/2)`.

use std::collections::HashMap;
use std::io::{BufRead, Write};
use std::path::{Path, PathBuf};
use std::sync::RwLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rayon::prelude::*;

use super::bigreal::{bits_for_digits, pi_power, BigReal};
use crate::error::{Error, Result};
use crate::linear::LinComb;
use crate::regularise::regularise;
use crate::word::{mzv_to_word, Word, ZetaComposition};

pub const CACHE_ENV: &str = "MZV_CACHE_PATH";

/// Extra decimals carried on top of what a caller asks for.
const GUARD_DIGITS: u32 = 10;

/// Values are computed and cached at multiples of this many digits.
const BUCKET: u32 = 10;

fn bucket(digits: u32) -> u32 {
    (digits + GUARD_DIGITS).div_ceil(BUCKET) * BUCKET
}

/// Truncation index for a depth-`r` sum at `1/2` to be below one ulp at `bits`.
fn truncation(bits: u32, r: usize) -> usize {
    let mut m = (2 * r).max(8);
    loop {
        let tail_log2 = 6f64.log2() - (m as f64 + 1.0) + (r as f64 - 1.0) * (1.0 + ((m + 1) as f64).ln()).log2();
        if tail_log2 <= -(bits as f64) {
            return m;
        }
        m += 1;
    }
}

/// `Li_{n_1..n_r}(1/2) = sum_{0<m_1<..<m_r} 2^{-m_r} / prod m_i^{n_i}` in fixed point.
fn li_half(ns: &[usize], bits: u32) -> BigReal {
    let r = ns.len();
    let m_max = truncation(bits, r);
    let one = BigInt::one() << bits;
    let mut vals: Vec<BigInt> = Vec::with_capacity(m_max);
    let mut errs: Vec<f64> = Vec::with_capacity(m_max);
    for m in 1..=m_max {
        let mut x = one.clone();
        let mut e = 0.0;
        for _ in 0..ns[0] {
            x = x.div_floor(&BigInt::from(m));
            e = e / m as f64 + 1.0;
        }
        vals.push(x);
        errs.push(e);
    }
    for &n in &ns[1..] {
        let mut prefix = BigInt::zero();
        let mut prefix_err = 0.0;
        let mut next = Vec::with_capacity(m_max);
        let mut next_err = Vec::with_capacity(m_max);
        for m in 1..=m_max {
            let mut x = prefix.clone();
            let mut e = prefix_err;
            for _ in 0..n {
                x = x.div_floor(&BigInt::from(m));
                e = e / m as f64 + 1.0;
            }
            prefix += &vals[m - 1];
            prefix_err += errs[m - 1];
            next.push(x);
            next_err.push(e);
        }
        vals = next;
        errs = next_err;
    }
    let mut sum = BigInt::zero();
    let mut err = 1.0; // truncated tail
    for (i, (v, e)) in vals.iter().zip(&errs).enumerate() {
        let m = i as u32 + 1;
        sum += v >> m;
        err += e * 2f64.powi(-(m as i32)) + 1.0;
    }
    BigReal::from_parts(sum, bits, err)
}

/// `I(0; u; 1/2)` for letters `u` starting with 1 (or empty).
fn integral_half(u: &[u8], bits: u32) -> BigReal {
    if u.is_empty() {
        return BigReal::from_int(1, bits);
    }
    debug_assert_eq!(u[0], 1);
    let mut ns = Vec::new();
    for &a in u {
        if a == 1 {
            ns.push(1usize);
        } else {
            *ns.last_mut().unwrap() += 1;
        }
    }
    let v = li_half(&ns, bits);
    if ns.len() % 2 == 1 {
        v.neg()
    } else {
        v
    }
}

#[derive(Default)]
pub struct MzvEvaluator {
    values: RwLock<HashMap<(ZetaComposition, u32), BigReal>>,
    halves: RwLock<HashMap<(Vec<u8>, u32), BigReal>>,
    path: Option<PathBuf>,
}

impl MzvEvaluator {
    pub fn new() -> Self {
        Self::default()
    }

    /// Evaluator backed by the cache file named in `MZV_CACHE_PATH`, if set.
    pub fn from_env() -> Result<Self> {
        match std::env::var_os(CACHE_ENV) {
            Some(p) => Self::with_cache_file(Path::new(&p)),
            None => Ok(Self::new()),
        }
    }

    /// Cache file lines: `z(s1,...,sk) <digits> <decimal>`.
    pub fn with_cache_file(path: &Path) -> Result<Self> {
        let ev = MzvEvaluator { path: Some(path.to_path_buf()), ..Default::default() };
        if path.exists() {
            let f = std::fs::File::open(path).map_err(|e| Error::Io(e.to_string()))?;
            let mut values = ev.values.write().unwrap();
            for (lineno, line) in std::io::BufReader::new(f).lines().enumerate() {
                let line = line.map_err(|e| Error::Io(e.to_string()))?;
                let line = line.trim();
                if line.is_empty() || line.starts_with('#') {
                    continue;
                }
                let bad = || Error::parse(lineno, format!("bad cache line '{line}'"));
                let mut parts = line.split_whitespace();
                let (Some(z), Some(d), Some(v)) = (parts.next(), parts.next(), parts.next()) else {
                    return Err(bad());
                };
                let z: ZetaComposition = z.parse()?;
                let d: u32 = d.parse().map_err(|_| bad())?;
                let bits = bits_for_digits(d)?;
                values.insert((z, d), BigReal::from_decimal(v, bits, d)?);
            }
        }
        Ok(ev)
    }

    pub fn save(&self) -> Result<()> {
        let Some(path) = &self.path else { return Ok(()) };
        let values = self.values.read().unwrap();
        let mut entries: Vec<_> = values.iter().collect();
        entries.sort_by(|a, b| a.0.cmp(b.0));
        let mut out = std::io::BufWriter::new(std::fs::File::create(path).map_err(|e| Error::Io(e.to_string()))?);
        for ((z, d), v) in entries {
            writeln!(out, "{} {} {}", z, d, v.to_decimal(d + 5)).map_err(|e| Error::Io(e.to_string()))?;
        }
        Ok(())
    }

    pub fn cached_count(&self) -> usize {
        self.values.read().unwrap().len()
    }

    fn half(&self, u: &[u8], bits: u32) -> BigReal {
        let key = (u.to_vec(), bits);
        if let Some(v) = self.halves.read().unwrap().get(&key) {
            return v.clone();
        }
        let v = integral_half(u, bits);
        self.halves.write().unwrap().insert(key, v.clone());
        v
    }

    fn compute(&self, s: &ZetaComposition, bits: u32) -> Result<BigReal> {
        let (w, sign) = mzv_to_word(s)?;
        let inner = w.interior();
        let mut total = BigReal::zero(bits);
        for k in 0..=inner.len() {
            let (u, v) = inner.split_at(k);
            let vv: Vec<u8> = v.iter().rev().map(|a| 1 - a).collect();
            let mut t = self.half(u, bits).mul(&self.half(&vv, bits));
            if v.len() % 2 == 1 {
                t = t.neg();
            }
            total = total.add(&t);
        }
        Ok(if sign < 0 { total.neg() } else { total })
    }

    /// `zeta(s)` with absolute error below `10^-digits`.
    ///
    /// The working precision is rounded up to a bucket so that values requested
    /// for the same `digits` can be combined.
    pub fn eval_mzv(&self, s: &ZetaComposition, digits: u32) -> Result<BigReal> {
        if !s.is_convergent() {
            return Err(Error::NotConvergent(s.to_string()));
        }
        let b = bucket(digits);
        let bits = bits_for_digits(b)?;
        if let Some(v) = self.values.read().unwrap().get(&(s.clone(), b)) {
            return Ok(v.clone());
        }
        let v = if s.depth() == 0 { BigReal::from_int(1, bits) } else { self.compute(s, bits)? };
        self.values.write().unwrap().insert((s.clone(), b), v.clone());
        Ok(v)
    }

    pub fn working_bits(digits: u32) -> Result<u32> {
        bits_for_digits(bucket(digits))
    }

    pub fn eval_lincomb(&self, c: &LinComb<ZetaComposition>, digits: u32) -> Result<BigReal> {
        let bits = Self::working_bits(digits)?;
        let zs: Vec<&ZetaComposition> = c.iter().map(|(z, _, _)| z).collect();
        let vals: Vec<BigReal> = zs.par_iter().map(|z| self.eval_mzv(z, digits)).collect::<Result<_>>()?;
        let mut pis: HashMap<u32, BigReal> = HashMap::new();
        let mut total = BigReal::zero(bits);
        for ((_, e, coeff), v) in c.iter().zip(vals) {
            let mut t = v.mul_rational(coeff);
            if e > 0 {
                let p = pis.entry(e).or_insert_with(|| pi_power(bits, e));
                t = t.mul(p);
            }
            total = total.add(&t);
        }
        Ok(total)
    }

    pub fn eval_words(&self, c: &LinComb<Word>, digits: u32) -> Result<BigReal> {
        self.eval_lincomb(&regularise(c)?, digits)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linear::rat;
    use crate::numerics::bigreal::pi;

    fn z(s: &str) -> ZetaComposition {
        s.parse().unwrap()
    }

    const ZETA3: &str = "1.2020569031595942853997381615114499907649862923405";

    #[test]
    fn single_zetas() {
        let ev = MzvEvaluator::new();
        let v = ev.eval_mzv(&z("z(3)"), 50).unwrap();
        assert_eq!(v.to_decimal(49), ZETA3);
        assert!(v.err_log10() < -50.0);
        let bits = MzvEvaluator::working_bits(50).unwrap();
        let z2 = pi(bits).mul(&pi(bits)).mul_rational(&rat(1, 6));
        let d = ev.eval_mzv(&z("z(2)"), 50).unwrap().sub(&z2);
        assert!(d.abs_log10() < -50.0);
    }

    #[test]
    fn euler_relations() {
        let ev = MzvEvaluator::new();
        // zeta(2,1) = zeta(3) in this ordering is zeta(1,2)
        let d = ev.eval_mzv(&z("z(1,2)"), 40).unwrap().sub(&ev.eval_mzv(&z("z(3)"), 40).unwrap());
        assert!(d.abs_log10() < -40.0);
        // zeta(1,3) = pi^4/360
        let mut c = LinComb::term(z("z(1,3)"));
        c.add_term(ZetaComposition::empty(), crate::linear::PiRational::new(rat(-1, 360), 4).unwrap());
        assert!(ev.eval_lincomb(&c, 40).unwrap().abs_log10() < -40.0);
    }

    // Oracle: direct summation with an exact tail-free small case.
    #[test]
    fn brute_force_depth_two() {
        // zeta(2,2) = (zeta(2)^2 - zeta(4)) / 2 = pi^4/120
        let ev = MzvEvaluator::new();
        let mut c = LinComb::term(z("z(2,2)"));
        c.add_term(ZetaComposition::empty(), crate::linear::PiRational::new(rat(-1, 120), 4).unwrap());
        assert!(ev.eval_lincomb(&c, 60).unwrap().abs_log10() < -60.0);
        // slow direct partial sums agree to a few digits
        let mut s = 0f64;
        for m2 in 1..4000u64 {
            let mut inner = 0f64;
            for m1 in 1..m2 {
                inner += 1.0 / (m1 * m1) as f64;
            }
            s += inner / (m2 * m2) as f64;
        }
        let v = ev.eval_mzv(&z("z(2,2)"), 20).unwrap().to_f64();
        assert!((s - v).abs() < 1e-3);
    }

    #[test]
    fn cache_file_round_trip() {
        let dir = std::env::temp_dir().join(format!("mzvcache-{}", std::process::id()));
        let ev = MzvEvaluator::with_cache_file(&dir).unwrap();
        let a = ev.eval_mzv(&z("z(2,3)"), 30).unwrap();
        ev.save().unwrap();
        let ev2 = MzvEvaluator::with_cache_file(&dir).unwrap();
        assert_eq!(ev2.cached_count(), 1);
        let b = ev2.eval_mzv(&z("z(2,3)"), 30).unwrap();
        assert!(a.sub(&b).abs_log10() < -35.0);
        std::fs::remove_file(&dir).unwrap();
    }

    #[test]
    fn rejects_divergent() {
        assert!(MzvEvaluator::new().eval_mzv(&z("z(2,1)"), 10).is_err());
    }
}
