//! Block reflections and cut subsequences.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::parse::Cursor;
use crate::word::{BlockDecomposition, Word};

/// Reverse blocks `j..=k` (1-indexed).
pub fn refl_block(b: &BlockDecomposition, j: usize, k: usize) -> Result<BlockDecomposition> {
    let n = b.block_count();
    if j == 0 || j > k || k > n {
        return Err(Error::OutOfRange(format!("refl_{{{j},{k}}} on {n} blocks")));
    }
    let mut l = b.lengths().to_vec();
    l[j - 1..k].reverse();
    BlockDecomposition::new(b.eps1(), l)
}

/// Everything reachable by reflections, generated by adjacent swaps.
pub fn reflective_closure(start: &[BlockDecomposition]) -> Result<BTreeSet<BlockDecomposition>> {
    let mut seen = BTreeSet::new();
    let Some(first) = start.first() else {
        return Ok(seen);
    };
    for b in start {
        if b.weight() != first.weight() || b.block_count() != first.block_count() {
            return Err(Error::Invalid(format!("{b} and {first} differ in weight or block count")));
        }
    }
    let mut queue: VecDeque<BlockDecomposition> = start.iter().cloned().collect();
    seen.extend(start.iter().cloned());
    while let Some(b) = queue.pop_front() {
        for i in 1..b.block_count() {
            let r = refl_block(&b, i, i + 1)?;
            if seen.insert(r.clone()) {
                queue.push_back(r);
            }
        }
    }
    Ok(seen)
}

/// `(B; s,t; alpha,beta)`: the letters from position `alpha` of block `s`
/// up to `beta` letters before the end of block `t`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct Subsequence {
    pub blocks: BlockDecomposition,
    pub s: usize,
    pub t: usize,
    pub alpha: usize,
    pub beta: usize,
}

impl Subsequence {
    pub fn new(blocks: BlockDecomposition, s: usize, t: usize, alpha: usize, beta: usize) -> Result<Self> {
        let p = Subsequence { blocks, s, t, alpha, beta };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        let l = self.blocks.lengths();
        if self.s == 0 || self.s > self.t || self.t > l.len() {
            return Err(Error::OutOfRange(format!("blocks {}..{} of {}", self.s, self.t, l.len())));
        }
        if self.alpha >= l[self.s - 1] || self.beta >= l[self.t - 1] {
            return Err(Error::Invalid("offset not inside its block".into()));
        }
        if self.s == self.t && self.alpha + self.beta + 2 > l[self.s - 1] {
            return Err(Error::Invalid("cut shorter than two letters".into()));
        }
        Ok(())
    }

    pub fn letter_length(&self) -> usize {
        let l = self.blocks.lengths();
        l[self.s - 1..self.t].iter().sum::<usize>() - self.alpha - self.beta
    }

    fn start(&self) -> usize {
        self.blocks.lengths()[..self.s - 1].iter().sum::<usize>() + self.alpha
    }

    pub fn word(&self) -> Word {
        let w = self.blocks.word();
        let a = self.start();
        Word::new(w.letters()[a..a + self.letter_length()].to_vec()).unwrap()
    }
}

impl fmt::Display for Subsequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}; {},{}; {},{})", self.blocks, self.s, self.t, self.alpha, self.beta)
    }
}

impl FromStr for Subsequence {
    type Err = Error;
    fn from_str(src: &str) -> Result<Self> {
        let mut c = Cursor::new(src);
        c.expect(b'(')?;
        let b = BlockDecomposition::parse_from(&mut c)?;
        c.expect(b';')?;
        let at = c.pos;
        let s = c.number()?;
        c.expect(b',')?;
        let t = c.number()?;
        c.expect(b';')?;
        let alpha = c.number()?;
        c.expect(b',')?;
        let beta = c.number()?;
        c.expect(b')')?;
        c.finish()?;
        Subsequence::new(b, s, t, alpha, beta).map_err(|e| match e {
            Error::Invalid(m) | Error::OutOfRange(m) => Error::parse(at, m),
            e => e,
        })
    }
}

impl TryFrom<String> for Subsequence {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<Subsequence> for String {
    fn from(p: Subsequence) -> String {
        p.to_string()
    }
}

/// `(refl_{s,t} B; s,t; beta,alpha)`
pub fn refl_subsequence(p: &Subsequence) -> Result<Subsequence> {
    Subsequence::new(refl_block(&p.blocks, p.s, p.t)?, p.s, p.t, p.beta, p.alpha)
}

/// All cuts of `len` consecutive letters, in order of their start position.
pub fn enumerate_subsequences(b: &BlockDecomposition, len: usize) -> Vec<Subsequence> {
    let l = b.lengths();
    let total: usize = l.iter().sum();
    if len < 2 || len > total {
        return Vec::new();
    }
    // block index and offset of every letter
    let mut at = Vec::with_capacity(total);
    for (i, &li) in l.iter().enumerate() {
        for j in 0..li {
            at.push((i + 1, j));
        }
    }
    (0..=total - len)
        .map(|p| {
            let (s, alpha) = at[p];
            let (t, off) = at[p + len - 1];
            Subsequence { blocks: b.clone(), s, t, alpha, beta: l[t - 1] - 1 - off }
        })
        .collect()
}
