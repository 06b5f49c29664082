//! Identity families on block integrals.
//!
//! An [`Identity`] keeps its left side as a combination of words (possibly with
//! powers of pi attached) and a closed-form right side. The conjectural
//! statement is always `lhs - rhs = 0`, or `lhs in Q zeta(N)` for
//! [`Rhs::ZetaMultiple`].

mod families;
mod generate;
mod zeta123;

use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::linear::{parse_rational, LinComb, PiRational};
use crate::regularise::factorial;
use crate::word::Word;

pub use families::*;
pub use generate::{generate, GenParams};
pub use zeta123::{all_123_of_weight, Arg, Zeta123Form};

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    Symmetric,
    CyclicBasic,
    CyclicFull,
    Bbbl,
    Hoffman,
    GeneralHoffman,
    Cyc123,
    AltoddEven,
    AltoddOdd,
    BowmanBradley,
    Z1333Compsum,
    Z13312Sym,
    Z13312Lead,
}

impl Family {
    pub const ALL: [Family; 13] = [
        Family::Symmetric,
        Family::CyclicBasic,
        Family::CyclicFull,
        Family::Bbbl,
        Family::Hoffman,
        Family::GeneralHoffman,
        Family::Cyc123,
        Family::AltoddEven,
        Family::AltoddOdd,
        Family::BowmanBradley,
        Family::Z1333Compsum,
        Family::Z13312Sym,
        Family::Z13312Lead,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Family::Symmetric => "symmetric",
            Family::CyclicBasic => "cyclic-basic",
            Family::CyclicFull => "cyclic-full",
            Family::Bbbl => "bbbl",
            Family::Hoffman => "hoffman",
            Family::GeneralHoffman => "general-hoffman",
            Family::Cyc123 => "cyc123",
            Family::AltoddEven => "altodd-even",
            Family::AltoddOdd => "altodd-odd",
            Family::BowmanBradley => "bowman-bradley",
            Family::Z1333Compsum => "z1333-compsum",
            Family::Z13312Sym => "z13312-sym",
            Family::Z13312Lead => "z13312-lead",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Family::ALL.into_iter().find(|f| f.as_str() == s).ok_or_else(|| Error::Invalid(format!("unknown family '{s}'")))
    }
}

/// Right-hand side of an identity.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Rhs {
    /// a known rational multiple of `pi^N` (possibly zero)
    Pi(PiRational),
    /// some rational multiple of `zeta(N)`, not pinned down
    ZetaMultiple,
}

impl Rhs {
    pub fn zero() -> Rhs {
        Rhs::Pi(PiRational { coeff: BigRational::zero(), pi_exp: 0 })
    }

    /// `c * pi^N / (N+1)!`
    pub fn pi_over_factorial(c: BigRational, n: usize) -> Rhs {
        if c.is_zero() {
            return Rhs::zero();
        }
        let q = c / BigRational::from_integer(factorial(n as u64 + 1));
        Rhs::Pi(PiRational { coeff: q, pi_exp: n as u32 })
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Rhs::Pi(p) if p.coeff.is_zero())
    }

    pub fn to_json(&self) -> Value {
        match self {
            Rhs::Pi(p) => json!({"type": "pi", "coeff": p.coeff.to_string(), "pi": p.pi_exp}),
            Rhs::ZetaMultiple => json!({"type": "zeta-multiple"}),
        }
    }

    pub fn from_json(v: &Value) -> Result<Rhs> {
        match v.get("type").and_then(Value::as_str) {
            Some("zeta-multiple") => Ok(Rhs::ZetaMultiple),
            Some("pi") => {
                let c =
                    v.get("coeff").and_then(Value::as_str).ok_or_else(|| Error::Invalid("rhs without coeff".into()))?;
                let e = v.get("pi").and_then(Value::as_u64).unwrap_or(0) as u32;
                Ok(Rhs::Pi(PiRational::new(parse_rational(c)?, e)?))
            }
            _ => Err(Error::Invalid("rhs type must be 'pi' or 'zeta-multiple'".into())),
        }
    }

    fn text(&self, weight: usize) -> String {
        match self {
            Rhs::ZetaMultiple => format!("Q*z({weight})"),
            Rhs::Pi(p) if p.coeff.is_zero() => "0".into(),
            Rhs::Pi(p) => format!("{}*pi^{}", p.coeff, p.pi_exp),
        }
    }

    fn latex(&self, weight: usize) -> String {
        match self {
            Rhs::ZetaMultiple => format!("\\in \\mathbb{{Q}}\\,\\zeta({weight})"),
            Rhs::Pi(p) if p.coeff.is_zero() => "\\doteq 0".into(),
            Rhs::Pi(p) => {
                let f = factorial(p.pi_exp as u64 + 1);
                let c = &p.coeff * BigRational::from_integer(f);
                let sign = if c.is_negative() { "-" } else { "" };
                let c = c.abs();
                let lead = if c.is_one() {
                    String::new()
                } else if c.is_integer() {
                    c.to_string()
                } else {
                    format!("\\frac{{{}}}{{{}}}", c.numer(), c.denom())
                };
                format!("\\doteq {sign}{lead}\\frac{{\\pi^{{{e}}}}}{{{n}!}}", e = p.pi_exp, n = p.pi_exp + 1)
            }
        }
    }
}

#[derive(Clone, PartialEq, Debug)]
pub struct Identity {
    pub family: Family,
    pub params: Value,
    pub weight: usize,
    pub lhs: LinComb<Word>,
    pub rhs: Rhs,
    /// the same left side written with 123-MZVs, when the family is stated that way
    pub zeta_side: Vec<(i64, Zeta123Form)>,
}

impl Identity {
    pub(crate) fn new(family: Family, params: Value, weight: usize, lhs: LinComb<Word>, rhs: Rhs) -> Result<Self> {
        for w in lhs.weights() {
            if w != weight {
                return Err(Error::MixedWeight(vec![weight, w]));
            }
        }
        if let Rhs::Pi(p) = &rhs {
            if !p.coeff.is_zero() && p.pi_exp as usize != weight {
                return Err(Error::MixedWeight(vec![weight, p.pi_exp as usize]));
            }
        }
        Ok(Identity { family, params, weight, lhs, rhs, zeta_side: Vec::new() })
    }

    /// `lhs - rhs`, with a pi constant carried on the empty word.
    pub fn difference(&self) -> LinComb<Word> {
        let mut d = self.lhs.clone();
        if let Rhs::Pi(p) = &self.rhs {
            if !p.coeff.is_zero() {
                let mut c = LinComb::zero();
                c.add_term(Word::from_interior(&[]), p.clone());
                d -= &c;
            }
        }
        d
    }

    /// True for identities whose both sides vanish before any evaluation.
    pub fn is_empty(&self) -> bool {
        self.lhs.is_zero() && self.rhs.is_zero()
    }

    pub fn to_json(&self) -> Value {
        let mut v = json!({
            "family": self.family.as_str(),
            "params": self.params,
            "weight": self.weight,
            "lhs": self.lhs.to_json(),
            "rhs": self.rhs.to_json(),
        });
        if !self.zeta_side.is_empty() {
            let z: Vec<Value> =
                self.zeta_side.iter().map(|(c, f)| json!({"coeff": c, "form": f.to_string()})).collect();
            v["zeta"] = Value::Array(z);
        }
        v
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let bad = |m: &str| Error::Invalid(format!("identity json: {m}"));
        let family: Family = v.get("family").and_then(Value::as_str).ok_or_else(|| bad("missing family"))?.parse()?;
        let weight = v.get("weight").and_then(Value::as_u64).ok_or_else(|| bad("missing weight"))? as usize;
        let lhs = LinComb::from_json(v.get("lhs").ok_or_else(|| bad("missing lhs"))?)?;
        let rhs = Rhs::from_json(v.get("rhs").ok_or_else(|| bad("missing rhs"))?)?;
        let params = v.get("params").cloned().unwrap_or(Value::Null);
        let mut id = Identity::new(family, params, weight, lhs, rhs)?;
        if let Some(zs) = v.get("zeta").and_then(Value::as_array) {
            for z in zs {
                let c = z.get("coeff").and_then(Value::as_i64).ok_or_else(|| bad("zeta coeff"))?;
                let f = z.get("form").and_then(Value::as_str).ok_or_else(|| bad("zeta form"))?;
                id.zeta_side.push((c, f.parse()?));
            }
        }
        Ok(id)
    }

    fn zeta_text(&self, latex: bool) -> String {
        let mut s = String::new();
        for (i, (c, f)) in self.zeta_side.iter().enumerate() {
            let neg = *c < 0;
            if i > 0 {
                s.push_str(if neg { " - " } else { " + " });
            } else if neg {
                s.push('-');
            }
            if c.abs() != 1 {
                s.push_str(&c.abs().to_string());
                if !latex {
                    s.push('*');
                }
            }
            s.push_str(&if latex { f.latex() } else { f.to_string() });
        }
        s
    }

    /// One line per side: the block form, then the MZV form if there is one.
    pub fn text(&self) -> String {
        let rhs = self.rhs.text(self.weight);
        let mut s = format!("[{}] weight {}: {} = {}", self.family, self.weight, self.lhs, rhs);
        if !self.zeta_side.is_empty() {
            s.push_str(&format!("\n  as MZVs: {} = {}", self.zeta_text(false), rhs));
        }
        s
    }

    pub fn latex(&self) -> String {
        let rhs = self.rhs.latex(self.weight);
        if self.zeta_side.is_empty() {
            format!("{} {}", self.lhs.latex(), rhs)
        } else {
            format!("{} {}", self.zeta_text(true), rhs)
        }
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.text())
    }
}
