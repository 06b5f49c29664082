//! 123-MZVs written as `z(a_1,..,a_{n-1} | b_1,..,b_n)`, and the `cyc` rewrite.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::parse::Cursor;
use crate::word::{mzv_to_word, Word, ZetaComposition};

/// A structural argument of a 123-MZV.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Arg {
    One,
    Three,
    /// the compound `(1,2)`
    OneTwo,
}

impl Arg {
    pub fn value(self) -> u32 {
        match self {
            Arg::One => 1,
            Arg::Three | Arg::OneTwo => 3,
        }
    }

    /// Number of MZV arguments it expands to.
    pub fn arity(self) -> usize {
        match self {
            Arg::OneTwo => 2,
            _ => 1,
        }
    }
}

impl fmt::Display for Arg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Arg::One => "1",
            Arg::Three => "3",
            Arg::OneTwo => "(1,2)",
        })
    }
}

/// `z(a | b) = z({2}^{b_1}, a_1, {2}^{b_2}, ..., a_{n-1}, {2}^{b_n})`
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct Zeta123Form {
    a: Vec<Arg>,
    b: Vec<u32>,
}

impl Zeta123Form {
    pub fn new(a: Vec<Arg>, b: Vec<u32>) -> Result<Self> {
        if b.len() != a.len() + 1 {
            return Err(Error::Invalid(format!(
                "{} structural arguments need {} exponents, got {}",
                a.len(),
                a.len() + 1,
                b.len()
            )));
        }
        for (i, x) in a.iter().enumerate() {
            let next = a.get(i + 1);
            match x {
                Arg::One if next != Some(&Arg::Three) => {
                    return Err(Error::Invalid(format!("argument {} is 1 but not followed by 3", i + 1)))
                }
                Arg::OneTwo if next == Some(&Arg::Three) => {
                    return Err(Error::Invalid(format!(
                        "(1,2) followed by 3 at argument {}; write 1,3 with an extra 2",
                        i + 1
                    )))
                }
                _ => {}
            }
        }
        let z = Zeta123Form { a, b };
        if z.weight() < 2 {
            return Err(Error::Invalid("weight below 2".into()));
        }
        Ok(z)
    }

    pub fn a(&self) -> &[Arg] {
        &self.a
    }

    pub fn b(&self) -> &[u32] {
        &self.b
    }

    pub fn weight(&self) -> usize {
        self.a.iter().map(|x| x.value() as usize).sum::<usize>() + 2 * self.b.iter().map(|&x| x as usize).sum::<usize>()
    }

    /// Depth of the expanded MZV; `(1,2)` counts twice.
    pub fn depth(&self) -> usize {
        self.a.iter().map(|x| x.arity()).sum::<usize>() + self.b.iter().map(|&x| x as usize).sum::<usize>()
    }

    pub fn block_count(&self) -> usize {
        self.b.len()
    }

    pub fn composition(&self) -> ZetaComposition {
        let mut s = Vec::with_capacity(self.depth());
        for (i, &bi) in self.b.iter().enumerate() {
            s.extend(std::iter::repeat_n(2, bi as usize));
            match self.a.get(i) {
                Some(Arg::One) => s.push(1),
                Some(Arg::Three) => s.push(3),
                Some(Arg::OneTwo) => s.extend([1, 2]),
                None => {}
            }
        }
        ZetaComposition::new(s).unwrap()
    }

    /// Read the structure off a 123-MZV.
    pub fn from_composition(z: &ZetaComposition) -> Result<Self> {
        let s = z.args();
        let bad = |i: usize, m: &str| Error::Invalid(format!("{z} is not a 123-MZV: {m} at argument {}", i + 1));
        let mut a = Vec::new();
        let mut b = vec![0u32];
        let mut i = 0;
        while i < s.len() {
            match s[i] {
                2 => {
                    *b.last_mut().unwrap() += 1;
                    i += 1;
                }
                3 => {
                    a.push(Arg::Three);
                    b.push(0);
                    i += 1;
                }
                1 => {
                    let twos = s[i + 1..].iter().take_while(|&&x| x == 2).count();
                    match s.get(i + 1 + twos) {
                        Some(3) => {
                            a.push(Arg::One);
                            b.push(twos as u32);
                            i += 1 + twos;
                        }
                        _ if twos > 0 => {
                            a.push(Arg::OneTwo);
                            b.push(0);
                            i += 2;
                        }
                        Some(1) => return Err(bad(i, "adjacent 1,1")),
                        _ => return Err(bad(i, "trailing 1")),
                    }
                }
                _ => return Err(bad(i, "argument above 3")),
            }
        }
        Zeta123Form::new(a, b)
    }

    /// `z = sign * I(w)`.
    pub fn word(&self) -> (Word, i32) {
        mzv_to_word(&self.composition()).unwrap()
    }

    pub fn block_lengths(&self) -> Vec<usize> {
        self.word().0.blocks().lengths().to_vec()
    }

    /// One application of `cyc`, with its sign.
    pub fn cyc(&self) -> (Zeta123Form, i32) {
        let a = &self.a;
        let b = &self.b;
        let k = a.iter().take_while(|&&x| x == Arg::OneTwo).count();
        let sign = if k % 2 == 0 { 1 } else { -1 };
        let (na, nb, s) = if a.first() == Some(&Arg::Three) {
            let mut na = a[1..].to_vec();
            na.push(Arg::OneTwo);
            let mut nb = b[1..].to_vec();
            nb.push(b[0]);
            (na, nb, -1)
        } else if k < a.len() {
            // {(1,2)}^k, 1, 3, rest | l, m_1..m_k, n, rest
            debug_assert_eq!(a[k], Arg::One);
            let mut na = a[k + 2..].to_vec();
            na.extend([Arg::One, Arg::Three]);
            na.extend(std::iter::repeat_n(Arg::Three, k));
            let mut nb = b[k + 2..].to_vec();
            nb.extend_from_slice(&b[..k + 2]);
            (na, nb, sign)
        } else {
            let na = vec![Arg::Three; k];
            let mut nb = b[1..].to_vec();
            nb.push(b[0]);
            (na, nb, sign)
        };
        (Zeta123Form { a: na, b: nb }, s)
    }

    /// `cyc^j` for `j = 0..n`, with accumulated signs.
    pub fn orbit(&self) -> Vec<(i32, Zeta123Form)> {
        let mut out = Vec::with_capacity(self.block_count());
        let mut cur = (1, self.clone());
        for _ in 0..self.block_count() {
            let (next, s) = cur.1.cyc();
            out.push(cur);
            cur = (out.last().unwrap().0 * s, next);
        }
        out
    }

    /// `wt/2 - d` computed from the structural arguments alone.
    pub fn sign_exponent_from_a(&self) -> i64 {
        let v: u32 = self.a.iter().map(|x| x.value()).sum();
        let args: usize = self.a.iter().map(|x| x.arity()).sum();
        v as i64 / 2 - args as i64
    }

    pub fn latex(&self) -> String {
        let a: Vec<String> = self.a.iter().map(|x| x.to_string()).collect();
        let b: Vec<String> = self.b.iter().map(|x| x.to_string()).collect();
        format!("\\zeta({} \\mid {})", a.join(", "), b.join(", "))
    }
}

impl fmt::Display for Zeta123Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let a: Vec<String> = self.a.iter().map(|x| x.to_string()).collect();
        let b: Vec<String> = self.b.iter().map(|x| x.to_string()).collect();
        write!(f, "z({} | {})", a.join(","), b.join(","))
    }
}

impl FromStr for Zeta123Form {
    type Err = Error;
    /// `z(1,3,(1,2) | 0,2,0,1)`; without a `|` the input is read as a plain MZV.
    fn from_str(src: &str) -> Result<Self> {
        if !src.contains('|') {
            return Zeta123Form::from_composition(&src.parse()?);
        }
        let mut c = Cursor::new(src);
        if c.peek() == Some(b'z') {
            c.pos += 1;
        } else if src.trim_start().starts_with("ζ") {
            c.skip_ws();
            c.pos += "ζ".len();
        }
        c.expect(b'(')?;
        let mut a = Vec::new();
        if c.peek() != Some(b'|') {
            loop {
                if c.eat(b'(') {
                    let at = c.pos;
                    let (x, y) = (c.number()?, {
                        c.expect(b',')?;
                        c.number()?
                    });
                    if (x, y) != (1, 2) {
                        return Err(Error::parse(at, "only (1,2) may be grouped"));
                    }
                    c.expect(b')')?;
                    a.push(Arg::OneTwo);
                } else {
                    let at = c.pos;
                    a.push(match c.number()? {
                        1 => Arg::One,
                        3 => Arg::Three,
                        _ => return Err(Error::parse(at, "structural arguments are 1, 3 or (1,2)")),
                    });
                }
                if !c.eat(b',') {
                    break;
                }
            }
        }
        c.expect(b'|')?;
        let at = c.pos;
        let b = c.number_list(b')')?;
        c.expect(b')')?;
        c.finish()?;
        Zeta123Form::new(a, b.into_iter().map(|x| x as u32).collect()).map_err(|e| match e {
            Error::Invalid(m) => Error::parse(at, m),
            e => e,
        })
    }
}

impl TryFrom<String> for Zeta123Form {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<Zeta123Form> for String {
    fn from(z: Zeta123Form) -> String {
        z.to_string()
    }
}

/// Every 123-MZV of the given weight.
pub fn all_123_of_weight(w: usize) -> Vec<Zeta123Form> {
    fn rec(left: usize, prev: Option<u32>, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if left == 0 {
            if cur.last() != Some(&1) {
                out.push(cur.clone());
            }
            return;
        }
        for s in 1..=3u32 {
            if s as usize > left || (s == 1 && prev == Some(1)) {
                continue;
            }
            cur.push(s);
            rec(left - s as usize, Some(s), cur, out);
            cur.pop();
        }
    }
    let mut raw = Vec::new();
    rec(w, None, &mut Vec::new(), &mut raw);
    raw.into_iter().filter_map(|s| Zeta123Form::from_composition(&ZetaComposition::new(s).ok()?).ok()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(s: &str) -> Zeta123Form {
        s.parse().unwrap()
    }

    #[test]
    fn parse_and_expand() {
        let f = z("z(1,3,3,(1,2) | 1,0,2,0,1)");
        assert_eq!(f.composition().to_string(), "z(2,1,3,2,2,3,1,2,2)");
        assert_eq!(Zeta123Form::from_composition(&f.composition()).unwrap(), f);
        assert_eq!(f.depth(), 9);
        assert_eq!(z("z(1,2,2,3)"), z("z(1,3 | 0,2,0)"));
        assert_eq!(z("z(1,2,2)"), z("z((1,2) | 0,1)"));
        assert!("z((1,2),3 | 0,0,0)".parse::<Zeta123Form>().is_err());
        assert!("z(1 | 0,0)".parse::<Zeta123Form>().is_err());
        assert!("z(1,1,3)".parse::<Zeta123Form>().is_err());
        assert!("z(2,1)".parse::<Zeta123Form>().is_err());
        assert!("z(4)".parse::<Zeta123Form>().is_err());
    }

    #[test]
    fn blocks_of_forms() {
        // 1,3 gives blocks 2b+2, 2b+2; 3 gives 2b+3
        assert_eq!(z("z(1,3,3,3 | 1,2,3,4,5)").block_lengths(), vec![4, 6, 9, 11, 12]);
        assert_eq!(z("z(3,3,3,(1,2) | 0,0,0,0,0)").block_lengths(), vec![3, 3, 3, 2, 3]);
    }

    #[test]
    fn cyc_examples() {
        let (c, s) = z("z(3,3 | 1,2,3)").cyc();
        assert_eq!((c, s), (z("z(3,(1,2) | 2,3,1)"), -1));
        let (c, s) = z("z(1,3,1,3 | 1,2,3,4,5)").cyc();
        assert_eq!((c, s), (z("z(1,3,1,3 | 3,4,5,1,2)"), 1));
        let (c, s) = z("z((1,2),(1,2) | 1,2,3)").cyc();
        assert_eq!((c, s), (z("z(3,3 | 2,3,1)"), 1));
        let (c, s) = z("z( | 4)").cyc();
        assert_eq!((c, s), (z("z( | 4)"), 1));
    }

    #[test]
    fn orbit_matches_worked_example() {
        let o = z("z(1,3,3,3 | 1,2,3,4,5)").orbit();
        let expect = [
            (1, "z(1,3,3,3 | 1,2,3,4,5)"),
            (1, "z(3,3,1,3 | 3,4,5,1,2)"),
            (-1, "z(3,1,3,(1,2) | 4,5,1,2,3)"),
            (1, "z(1,3,(1,2),(1,2) | 5,1,2,3,4)"),
            (1, "z((1,2),(1,2),1,3 | 2,3,4,5,1)"),
        ];
        for ((s, f), (es, ef)) in o.iter().zip(expect) {
            assert_eq!((*s, f.clone()), (es, z(ef)));
        }
        let o = z("z(1,3,3,(1,2) | 1,2,3,4,5)").orbit();
        let signs: Vec<i32> = o.iter().map(|x| x.0).collect();
        assert_eq!(signs, vec![1, 1, -1, 1, -1]);
        assert_eq!(o[4].1, z("z(3,1,3,3 | 5,1,2,3,4)"));
    }

    #[test]
    fn full_cycle_returns() {
        for w in 2..=10 {
            for f in all_123_of_weight(w) {
                let (s, last) = f.orbit().last().cloned().unwrap();
                let (back, t) = last.cyc();
                assert_eq!(back, f);
                assert_eq!(s * t, 1, "{f}");
            }
        }
    }

    #[test]
    fn enumeration_small_weights() {
        let names: Vec<String> = all_123_of_weight(4).iter().map(|f| f.composition().to_string()).collect();
        assert_eq!(names, vec!["z(1,3)", "z(2,2)"]);
        // z(2,3), z(3,2), z(1,2,2), z(2,1,2), z(1,3,1) is divergent
        assert_eq!(all_123_of_weight(5).len(), 4);
    }
}
