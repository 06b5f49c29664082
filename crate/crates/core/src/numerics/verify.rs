//! Numerical checks of identities.

use std::time::Instant;

use num_rational::BigRational;
use serde::Serialize;
use serde_json::{json, Value};

use super::bigreal::{recognize_rational, BigReal};
use super::mzv::MzvEvaluator;
use crate::error::Result;
use crate::identities::{Identity, Rhs};
use crate::regularise::regularise;
use crate::word::ZetaComposition;

/// Denominator bound used when the right side is an unknown multiple of `zeta(N)`.
pub const DEFAULT_MAX_DEN: u64 = 1_000_000;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Verified,
    Refuted,
    Inconclusive,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Verified => "verified",
            Status::Refuted => "refuted",
            Status::Inconclusive => "inconclusive",
        }
    }
}

#[derive(Clone, Debug)]
pub struct VerificationReport {
    pub identity: String,
    pub family: String,
    pub weight: usize,
    pub digits: u32,
    pub residual: BigReal,
    /// correct leading decimals of the residual that are zero
    pub digits_matched: u32,
    pub status: Status,
    /// the recognised rational for `lhs / zeta(N)`
    pub ratio: Option<BigRational>,
    pub elapsed_ms: u128,
}

impl VerificationReport {
    pub fn to_json(&self) -> Value {
        json!({
            "identity": self.identity,
            "family": self.family,
            "weight": self.weight,
            "digits": self.digits,
            "residual": self.residual.to_decimal(self.digits.min(20) + 10),
            "residual_log10": finite(self.residual.abs_log10()),
            "err_log10": finite(self.residual.err_log10()),
            "digits_matched": self.digits_matched,
            "status": self.status.as_str(),
            "ratio": self.ratio.as_ref().map(|q| q.to_string()),
            "elapsed_ms": self.elapsed_ms as u64,
        })
    }

    pub fn text(&self) -> String {
        let mut s = format!(
            "{}: {} (weight {}, {} digits, residual {}, err {})",
            self.identity,
            self.status.as_str(),
            self.weight,
            self.digits,
            magnitude(self.residual.abs_log10()),
            magnitude(self.residual.err_log10()),
        );
        if let Some(q) = &self.ratio {
            s.push_str(&format!(", ratio to zeta({}) = {q}", self.weight));
        }
        s
    }
}

fn magnitude(log10: f64) -> String {
    if log10.is_finite() {
        format!("~1e{log10:.0}")
    } else {
        "0".into()
    }
}

fn finite(x: f64) -> Option<f64> {
    x.is_finite().then_some(x)
}

/// Classify a residual that should vanish.
pub fn classify(res: &BigReal, digits: u32) -> (Status, u32) {
    let mag = res.abs_log10();
    let err = res.err_log10();
    // |res| + err < 10^-digits
    let bound = 10f64.powf(mag) + 10f64.powf(err);
    let status = if bound < 10f64.powi(-(digits as i32)) || (mag.is_infinite() && err < -(digits as f64)) {
        Status::Verified
    } else if mag > err + 1.0 {
        Status::Refuted
    } else {
        Status::Inconclusive
    };
    let upper = mag.max(err);
    let matched = if upper.is_finite() { (-upper).floor().max(0.0) as u32 } else { digits };
    (status, matched)
}

/// Evaluate `lhs - rhs` and classify it.
pub fn verify(ev: &MzvEvaluator, id: &Identity, digits: u32) -> Result<VerificationReport> {
    verify_with(ev, id, digits, DEFAULT_MAX_DEN)
}

pub fn verify_with(ev: &MzvEvaluator, id: &Identity, digits: u32, max_den: u64) -> Result<VerificationReport> {
    let start = Instant::now();
    let z = regularise(&id.difference())?;
    let value = ev.eval_lincomb(&z, digits)?;
    let (residual, ratio) = match id.rhs {
        Rhs::Pi(_) => (value, None),
        Rhs::ZetaMultiple => {
            let zn = ev.eval_mzv(&ZetaComposition::new(vec![id.weight as u32])?, digits)?;
            let q = value.div(&zn)?;
            match recognize_rational(&q, max_den) {
                Some(r) => (value.sub(&zn.mul_rational(&r)), Some(r)),
                None => (value, None),
            }
        }
    };
    let (mut status, digits_matched) = classify(&residual, digits);
    if id.rhs == Rhs::ZetaMultiple && ratio.is_none() && status != Status::Refuted {
        status = Status::Inconclusive;
    }
    Ok(VerificationReport {
        identity: label(id),
        family: id.family.to_string(),
        weight: id.weight,
        digits,
        residual,
        digits_matched,
        status,
        ratio,
        elapsed_ms: start.elapsed().as_millis(),
    })
}

fn label(id: &Identity) -> String {
    format!("{} {}", id.family, id.params)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::identities::{gen_cyclic_full, gen_hoffman, gen_symmetric};
    use crate::linear::rat;

    #[test]
    fn verifies_and_refutes() {
        let ev = MzvEvaluator::new();
        let r = verify(&ev, &gen_hoffman(0, 0, 0).unwrap(), 30).unwrap();
        assert_eq!(r.status, Status::Verified, "{}", r.text());
        let r = verify(&ev, &gen_cyclic_full(&[1, 1, 2, 3]).unwrap(), 30).unwrap();
        assert_eq!(r.status, Status::Verified, "{}", r.text());
        let mut bad = gen_hoffman(0, 0, 0).unwrap();
        bad.rhs = Rhs::zero();
        let r = verify(&ev, &bad, 30).unwrap();
        assert_eq!(r.status, Status::Refuted);
    }

    #[test]
    fn symmetric_ratio() {
        let ev = MzvEvaluator::new();
        let id = gen_symmetric(&"(0; 2,2,2)".parse().unwrap()).unwrap();
        let r = verify(&ev, &id, 30).unwrap();
        assert_eq!(r.status, Status::Verified);
        // 6 I_bl(2,2,2) = 6 zeta(1,3) = 6/4 zeta(4)
        assert_eq!(r.ratio, Some(rat(3, 2)));
    }
}
