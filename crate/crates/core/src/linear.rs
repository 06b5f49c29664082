//! Formal Q-linear combinations with optional powers of pi.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::hash::Hash;
use std::ops::{Add, AddAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::word::{Word, ZetaComposition};

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub trait Term: Clone + Ord + Hash + fmt::Display + fmt::Debug {
    const KIND: &'static str;
    fn term_weight(&self) -> usize;
    fn parse_term(s: &str) -> Result<Self>;
    fn latex(&self) -> String;
}

impl Term for Word {
    const KIND: &'static str = "word";
    fn term_weight(&self) -> usize {
        self.weight()
    }
    fn parse_term(s: &str) -> Result<Self> {
        s.parse()
    }
    fn latex(&self) -> String {
        let l = self.letters();
        let inner: Vec<String> = l[1..l.len() - 1].iter().map(|a| a.to_string()).collect();
        format!("I({}; {}; {})", l[0], inner.join(","), l[l.len() - 1])
    }
}

impl Term for ZetaComposition {
    const KIND: &'static str = "zeta";
    fn term_weight(&self) -> usize {
        self.weight()
    }
    fn parse_term(s: &str) -> Result<Self> {
        s.parse()
    }
    fn latex(&self) -> String {
        let a: Vec<String> = self.args().iter().map(|a| a.to_string()).collect();
        format!("\\zeta({})", a.join(","))
    }
}

/// Rational multiple of an even power of pi.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PiRational {
    pub coeff: BigRational,
    pub pi_exp: u32,
}

impl PiRational {
    pub fn new(coeff: BigRational, pi_exp: u32) -> Result<Self> {
        if pi_exp % 2 == 1 {
            return Err(Error::Invalid(format!("odd power of pi: {pi_exp}")));
        }
        Ok(PiRational { coeff, pi_exp })
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LinComb<T: Term> {
    terms: BTreeMap<(T, u32), BigRational>,
}

impl<T: Term> Default for LinComb<T> {
    fn default() -> Self {
        LinComb { terms: BTreeMap::new() }
    }
}

impl<T: Term> LinComb<T> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn term(t: T) -> Self {
        let mut c = Self::zero();
        c.add_coeff(t, BigRational::one());
        c
    }

    pub fn add_coeff(&mut self, t: T, coeff: BigRational) {
        self.add_raw(t, 0, coeff);
    }

    pub fn add_term(&mut self, t: T, c: PiRational) {
        self.add_raw(t, c.pi_exp, c.coeff);
    }

    fn add_raw(&mut self, t: T, pi_exp: u32, coeff: BigRational) {
        debug_assert!(pi_exp % 2 == 0);
        if coeff.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry((t, pi_exp)) {
            Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
            Entry::Vacant(v) => {
                v.insert(coeff);
            }
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (&T, u32, &BigRational)> {
        self.terms.iter().map(|((t, e), c)| (t, *e, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, t: &T, pi_exp: u32) -> BigRational {
        self.terms.get(&(t.clone(), pi_exp)).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        LinComb { terms: self.terms.iter().map(|(key, c)| (key.clone(), c * k)).collect() }
    }

    /// Multiply by `pi^e` (`e` even).
    pub fn mul_pi(&self, e: u32) -> Self {
        assert!(e % 2 == 0, "odd power of pi");
        LinComb { terms: self.terms.iter().map(|((t, p), c)| ((t.clone(), p + e), c.clone())).collect() }
    }

    /// Extend `f` linearly; pi powers are carried along.
    pub fn map_linear<U: Term>(&self, mut f: impl FnMut(&T) -> Result<LinComb<U>>) -> Result<LinComb<U>> {
        let mut out = LinComb::zero();
        for ((t, e), c) in &self.terms {
            let image = f(t)?;
            for (u, e2, c2) in image.iter() {
                out.add_raw(u.clone(), e + e2, c * c2);
            }
        }
        Ok(out)
    }

    /// Total weights (term weight plus pi exponent) that occur.
    pub fn weights(&self) -> BTreeSet<usize> {
        self.iter().map(|(t, e, _)| t.term_weight() + e as usize).collect()
    }

    /// The common weight, or an error listing the weights present.
    pub fn homogeneous_weight(&self) -> Result<Option<usize>> {
        let w = self.weights();
        match w.len() {
            0 => Ok(None),
            1 => Ok(w.into_iter().next()),
            _ => Err(Error::MixedWeight(w.into_iter().collect())),
        }
    }

    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> =
            self.iter().map(|(t, e, c)| json!({"term": t.to_string(), "pi": e, "coeff": c.to_string()})).collect();
        json!({"kind": T::KIND, "terms": terms})
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let bad = |m: &str| Error::Invalid(format!("combination json: {m}"));
        if let Some(k) = v.get("kind").and_then(Value::as_str) {
            if k != T::KIND {
                return Err(bad(&format!("expected kind {}, got {k}", T::KIND)));
            }
        }
        let terms = v.get("terms").and_then(Value::as_array).ok_or_else(|| bad("missing terms"))?;
        let mut out = Self::zero();
        for entry in terms {
            let t = entry.get("term").and_then(Value::as_str).ok_or_else(|| bad("missing term"))?;
            let e = entry.get("pi").and_then(Value::as_u64).unwrap_or(0) as u32;
            let c = match entry.get("coeff") {
                Some(Value::String(s)) => parse_rational(s)?,
                Some(Value::Number(n)) => parse_rational(&n.to_string())?,
                _ => return Err(bad("missing coeff")),
            };
            out.add_term(T::parse_term(t)?, PiRational::new(c, e)?);
        }
        Ok(out)
    }

    pub fn latex(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (i, (t, e, c)) in self.iter().enumerate() {
            let neg = c.is_negative();
            if i > 0 {
                s.push_str(if neg { " - " } else { " + " });
            } else if neg {
                s.push('-');
            }
            let a = c.abs();
            if !a.is_one() {
                if a.is_integer() {
                    s.push_str(&a.to_string());
                } else {
                    s.push_str(&format!("\\frac{{{}}}{{{}}}", a.numer(), a.denom()));
                }
            }
            if e > 0 {
                s.push_str(&format!("\\pi^{{{e}}}"));
            }
            s.push_str(&t.latex());
        }
        s
    }
}

pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| Error::parse(0, format!("bad rational '{s}'")))?;
    let d: BigInt = d.parse().map_err(|_| Error::parse(s.find('/').unwrap_or(0) + 1, format!("bad rational '{s}'")))?;
    if d.is_zero() {
        return Err(Error::parse(0, "zero denominator"));
    }
    Ok(BigRational::new(n, d))
}

impl<T: Term> fmt::Display for LinComb<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (t, e, c)) in self.iter().enumerate() {
            let neg = c.is_negative();
            if i > 0 {
                f.write_str(if neg { " - " } else { " + " })?;
            } else if neg {
                f.write_str("-")?;
            }
            let a = c.abs();
            if !a.is_one() {
                write!(f, "{a}*")?;
            }
            if e > 0 {
                write!(f, "pi^{e}*")?;
            }
            write!(f, "{t}")?;
        }
        Ok(())
    }
}

impl<T: Term> AddAssign<&LinComb<T>> for LinComb<T> {
    fn add_assign(&mut self, rhs: &LinComb<T>) {
        for ((t, e), c) in &rhs.terms {
            self.add_raw(t.clone(), *e, c.clone());
        }
    }
}

impl<T: Term> SubAssign<&LinComb<T>> for LinComb<T> {
    fn sub_assign(&mut self, rhs: &LinComb<T>) {
        for ((t, e), c) in &rhs.terms {
            self.add_raw(t.clone(), *e, -c.clone());
        }
    }
}

impl<T: Term> Add for LinComb<T> {
    type Output = LinComb<T>;
    fn add(mut self, rhs: LinComb<T>) -> LinComb<T> {
        self += &rhs;
        self
    }
}

impl<T: Term> Sub for LinComb<T> {
    type Output = LinComb<T>;
    fn sub(mut self, rhs: LinComb<T>) -> LinComb<T> {
        self -= &rhs;
        self
    }
}

impl<T: Term> Neg for LinComb<T> {
    type Output = LinComb<T>;
    fn neg(self) -> LinComb<T> {
        self.scale(&-BigRational::one())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(s: &str) -> ZetaComposition {
        s.parse().unwrap()
    }

    #[test]
    fn arithmetic_and_pruning() {
        let mut a = LinComb::term(z("z(2,3)"));
        a.add_coeff(z("z(3,2)"), int(2));
        let b = LinComb::term(z("z(3,2)")).scale(&int(2));
        let d = a.clone() - b;
        assert_eq!(d, LinComb::term(z("z(2,3)")));
        assert!((a.clone() - a).is_zero());
    }

    #[test]
    fn odd_pi_rejected() {
        assert!(PiRational::new(int(1), 3).is_err());
        assert!(PiRational::new(int(1), 4).is_ok());
    }

    #[test]
    fn json_round_trip() {
        let mut a = LinComb::term(z("z(1,3)"));
        a.add_term(ZetaComposition::empty(), PiRational::new(rat(-1, 360), 4).unwrap());
        let v = a.to_json();
        assert_eq!(LinComb::<ZetaComposition>::from_json(&v).unwrap(), a);
        assert_eq!(a.to_string(), "-1/360*pi^4*z() + z(1,3)");
        assert!(LinComb::<Word>::from_json(&v).is_err());
        assert_eq!(a.homogeneous_weight().unwrap(), Some(4));
    }

    #[test]
    fn mixed_weight_detected() {
        let mut a = LinComb::term(z("z(2)"));
        a.add_coeff(z("z(3)"), int(1));
        assert_eq!(a.homogeneous_weight(), Err(Error::MixedWeight(vec![2, 3])));
    }

    #[test]
    fn latex_output() {
        let mut a = LinComb::term(z("z(2,3)"));
        a.add_coeff(z("z(1,4)"), rat(-1, 2));
        assert_eq!(a.latex(), "-\\frac{1}{2}\\zeta(1,4) + \\zeta(2,3)");
    }
}
