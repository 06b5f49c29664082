//! Binary words, block decompositions and MZV compositions.
//!
//! A word `a_0 a_1 ... a_N a_{N+1}` stores the two bounds together with the
//! `N` interior letters. Its block decomposition cuts between every pair of
//! equal neighbouring letters.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::parse::Cursor;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct Word(Vec<u8>);

impl Word {
    pub fn new(letters: Vec<u8>) -> Result<Word> {
        if letters.len() < 2 {
            return Err(Error::Invalid(format!("a word needs both bounds, got {} letters", letters.len())));
        }
        if let Some(i) = letters.iter().position(|&a| a > 1) {
            return Err(Error::parse(i, "letters must be 0 or 1"));
        }
        Ok(Word(letters))
    }

    /// `0 interior 1`
    pub fn from_interior(interior: &[u8]) -> Word {
        let mut v = Vec::with_capacity(interior.len() + 2);
        v.push(0);
        v.extend_from_slice(interior);
        v.push(1);
        Word(v)
    }

    pub fn letters(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn weight(&self) -> usize {
        self.0.len() - 2
    }

    pub fn interior(&self) -> &[u8] {
        &self.0[1..self.0.len() - 1]
    }

    pub fn lower(&self) -> u8 {
        self.0[0]
    }

    pub fn upper(&self) -> u8 {
        self.0[self.0.len() - 1]
    }

    pub fn reversed(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    pub fn flipped(&self) -> Word {
        Word(self.0.iter().map(|a| 1 - a).collect())
    }

    /// Reverse and swap letters. Maps `0..1` words to `0..1` words.
    pub fn dual(&self) -> Word {
        Word(self.0.iter().rev().map(|a| 1 - a).collect())
    }

    /// Divergent at one of the ends: `a_0 = a_1` or `a_N = a_{N+1}`.
    pub fn is_divergent(&self) -> bool {
        let n = self.0.len();
        n > 2 && (self.0[0] == self.0[1] || self.0[n - 2] == self.0[n - 1])
    }

    /// Of the shape `0 1 ... 0 1` (or just `01`), i.e. a convergent MZV word.
    pub fn is_convergent_mzv(&self) -> bool {
        self.lower() == 0 && self.upper() == 1 && !self.is_divergent()
    }

    pub fn blocks(&self) -> BlockDecomposition {
        block_decompose(self)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &a in &self.0 {
            f.write_str(if a == 0 { "0" } else { "1" })?;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = Error;
    fn from_str(s: &str) -> Result<Word> {
        let mut letters = Vec::with_capacity(s.len());
        for (i, c) in s.char_indices() {
            match c {
                '0' => letters.push(0),
                '1' => letters.push(1),
                c if c.is_whitespace() => {}
                _ => return Err(Error::parse(i, format!("unexpected '{c}' in word"))),
            }
        }
        if letters.len() < 2 {
            return Err(Error::parse(s.len(), "a word needs at least two letters"));
        }
        Ok(Word(letters))
    }
}

impl TryFrom<String> for Word {
    type Error = Error;
    fn try_from(s: String) -> Result<Word> {
        s.parse()
    }
}

impl From<Word> for String {
    fn from(w: Word) -> String {
        w.to_string()
    }
}

/// `(eps_1; l_1, ..., l_n)`
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct BlockDecomposition {
    eps1: u8,
    lengths: Vec<usize>,
}

impl BlockDecomposition {
    pub fn new(eps1: u8, lengths: Vec<usize>) -> Result<Self> {
        if eps1 > 1 {
            return Err(Error::Invalid("first letter must be 0 or 1".into()));
        }
        if lengths.is_empty() {
            return Err(Error::Invalid("at least one block is needed".into()));
        }
        if lengths.contains(&0) {
            return Err(Error::Invalid("block lengths must be positive".into()));
        }
        if lengths.iter().sum::<usize>() < 2 {
            return Err(Error::Invalid("total length must be at least 2".into()));
        }
        Ok(BlockDecomposition { eps1, lengths })
    }

    /// Blocks starting with 0.
    pub fn from_lengths(lengths: &[usize]) -> Result<Self> {
        Self::new(0, lengths.to_vec())
    }

    pub fn eps1(&self) -> u8 {
        self.eps1
    }

    pub fn lengths(&self) -> &[usize] {
        &self.lengths
    }

    pub fn block_count(&self) -> usize {
        self.lengths.len()
    }

    pub fn weight(&self) -> usize {
        self.lengths.iter().sum::<usize>() - 2
    }

    /// Equal bounds. Determined from parities alone.
    pub fn is_trivial(&self) -> bool {
        self.weight() % 2 == self.block_count() % 2
    }

    pub fn is_divergent(&self) -> bool {
        if !self.is_trivial() && self.weight() > 2 {
            self.lengths[0] == 1 || self.lengths[self.lengths.len() - 1] == 1
        } else {
            self.word().is_divergent()
        }
    }

    pub fn word(&self) -> Word {
        word_of(self)
    }

    /// Block form of the dual word, with the sign `(-1)^N` of the duality relation.
    pub fn dual(&self) -> (BlockDecomposition, i32) {
        let mut lengths = self.lengths.clone();
        lengths.reverse();
        let sign = if self.weight() % 2 == 0 { 1 } else { -1 };
        (BlockDecomposition { eps1: self.eps1, lengths }, sign)
    }
}

impl fmt::Display for BlockDecomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}; {})", self.eps1, join(&self.lengths))
    }
}

pub(crate) fn join<T: fmt::Display>(xs: &[T]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

impl BlockDecomposition {
    pub(crate) fn parse_from(c: &mut Cursor<'_>) -> Result<Self> {
        c.expect(b'(')?;
        let at = c.pos;
        let eps = c.number()?;
        if eps > 1 {
            return Err(Error::parse(at, "first letter must be 0 or 1"));
        }
        c.expect(b';')?;
        let at = c.pos;
        let lengths = c.number_list(b')')?;
        c.expect(b')')?;
        BlockDecomposition::new(eps as u8, lengths).map_err(|e| match e {
            Error::Invalid(m) => Error::parse(at, m),
            e => e,
        })
    }
}

impl FromStr for BlockDecomposition {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let mut c = Cursor::new(s);
        let b = Self::parse_from(&mut c)?;
        c.finish()?;
        Ok(b)
    }
}

impl TryFrom<String> for BlockDecomposition {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<BlockDecomposition> for String {
    fn from(b: BlockDecomposition) -> String {
        b.to_string()
    }
}

pub fn block_decompose(w: &Word) -> BlockDecomposition {
    let a = w.letters();
    let mut lengths = vec![1usize];
    for i in 1..a.len() {
        if a[i] == a[i - 1] {
            lengths.push(1);
        } else {
            *lengths.last_mut().unwrap() += 1;
        }
    }
    BlockDecomposition { eps1: a[0], lengths }
}

/// Inverse of [`block_decompose`]. Block `i+1` starts with the letter
/// `eps_i + l_i - 1 (mod 2)`, that is the last letter of block `i`.
pub fn word_of(b: &BlockDecomposition) -> Word {
    let mut out = Vec::with_capacity(b.lengths.iter().sum());
    let mut eps = b.eps1;
    for &l in &b.lengths {
        for j in 0..l {
            out.push(eps ^ (j as u8 & 1));
        }
        eps = (eps + ((l - 1) % 2) as u8) % 2;
    }
    Word(out)
}

/// Arguments of `zeta(s_1, ..., s_r)` summed over `0 < m_1 < ... < m_r`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct ZetaComposition(Vec<u32>);

impl ZetaComposition {
    pub fn new(args: Vec<u32>) -> Result<Self> {
        if args.contains(&0) {
            return Err(Error::Invalid("zeta arguments must be positive".into()));
        }
        Ok(ZetaComposition(args))
    }

    pub fn empty() -> Self {
        ZetaComposition(Vec::new())
    }

    pub fn args(&self) -> &[u32] {
        &self.0
    }

    pub fn depth(&self) -> usize {
        self.0.len()
    }

    pub fn weight(&self) -> usize {
        self.0.iter().map(|&s| s as usize).sum()
    }

    pub fn is_convergent(&self) -> bool {
        self.0.last().is_none_or(|&s| s >= 2)
    }
}

impl fmt::Display for ZetaComposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "z({})", join(&self.0))
    }
}

impl FromStr for ZetaComposition {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let mut c = Cursor::new(s);
        if c.peek() == Some(b'z') {
            c.pos += 1;
        } else if s.trim_start().starts_with("ζ") {
            c.skip_ws();
            c.pos += "ζ".len();
        }
        c.expect(b'(')?;
        let at = c.pos;
        let args = c.number_list(b')')?;
        c.expect(b')')?;
        c.finish()?;
        if args.contains(&0) {
            return Err(Error::parse(at, "zeta arguments must be positive"));
        }
        Ok(ZetaComposition(args.into_iter().map(|a| a as u32).collect()))
    }
}

impl TryFrom<String> for ZetaComposition {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<ZetaComposition> for String {
    fn from(z: ZetaComposition) -> String {
        z.to_string()
    }
}

/// `zeta(s) = sign * I(0; w; 1)` with `sign = (-1)^depth`.
pub fn mzv_to_word(s: &ZetaComposition) -> Result<(Word, i32)> {
    if !s.is_convergent() {
        return Err(Error::NotConvergent(s.to_string()));
    }
    let mut interior = Vec::with_capacity(s.weight());
    for &n in s.args() {
        interior.push(1);
        interior.extend(std::iter::repeat_n(0, n as usize - 1));
    }
    let sign = if s.depth() % 2 == 0 { 1 } else { -1 };
    Ok((Word::from_interior(&interior), sign))
}

/// `I(0; w; 1) = sign * zeta(s)`.
pub fn word_to_mzv(w: &Word) -> Result<(ZetaComposition, i32)> {
    if !w.is_convergent_mzv() {
        return Err(Error::NotConvergent(w.to_string()));
    }
    let mut args = Vec::new();
    for &a in w.interior() {
        if a == 1 {
            args.push(1u32);
        } else {
            *args.last_mut().unwrap() += 1;
        }
    }
    let sign = if args.len() % 2 == 0 { 1 } else { -1 };
    Ok((ZetaComposition(args), sign))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn worked_decomposition() {
        let b = w("010100111010101").blocks();
        assert_eq!(b.to_string(), "(0; 5,2,1,7)");
        assert_eq!(b.weight(), 13);
        assert!(!b.is_trivial());
        assert_eq!(w("01001").blocks().to_string(), "(0; 3,2)");
        assert_eq!(w("0110001").blocks().to_string(), "(0; 2,2,1,2)");
    }

    #[test]
    fn small_cases() {
        let b: BlockDecomposition = "(0; 3,2)".parse().unwrap();
        assert_eq!(b.word(), w("01001"));
        assert_eq!(b.weight(), 3);
        assert!(!b.is_trivial());
        let b: BlockDecomposition = "(0; 12)".parse().unwrap();
        assert_eq!(b.word().to_string(), "010101010101");
        assert!(!b.is_divergent());
        let b: BlockDecomposition = "(0; 1,3,1)".parse().unwrap();
        assert!(b.is_divergent());
        assert!(b.word().is_divergent());
        let b: BlockDecomposition = "(0; 2,2)".parse().unwrap();
        assert!(b.is_trivial());
        assert_eq!(b.word().to_string(), "0110");
    }

    #[test]
    fn dual_reverses_blocks() {
        let b = w("0110001").blocks();
        let (d, sign) = b.dual();
        assert_eq!(d.lengths(), &[2, 1, 2, 2]);
        assert_eq!(sign, -1);
        assert_eq!(d.word(), w("0110001").dual());
    }

    #[test]
    fn parse_errors_have_positions() {
        match "0120".parse::<Word>() {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 2),
            e => panic!("{e:?}"),
        }
        match "(0; 3,,2)".parse::<BlockDecomposition>() {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 6),
            e => panic!("{e:?}"),
        }
        assert!("(0; 3,0)".parse::<BlockDecomposition>().is_err());
        assert!("(2; 3)".parse::<BlockDecomposition>().is_err());
        assert!("z(1,0)".parse::<ZetaComposition>().is_err());
        assert!("z(1,3".parse::<ZetaComposition>().is_err());
    }

    #[test]
    fn mzv_words() {
        let z: ZetaComposition = "z(1,3)".parse().unwrap();
        let (word, sign) = mzv_to_word(&z).unwrap();
        assert_eq!(word.to_string(), "011001");
        assert_eq!(sign, 1);
        assert_eq!(word_to_mzv(&word).unwrap(), (z, 1));
        let (word, sign) = mzv_to_word(&"z(2)".parse().unwrap()).unwrap();
        assert_eq!((word.to_string().as_str(), sign), ("0101", -1));
        assert!(mzv_to_word(&"z(2,1)".parse().unwrap()).is_err());
        assert_eq!(mzv_to_word(&ZetaComposition::empty()).unwrap().0.to_string(), "01");
        assert!(word_to_mzv(&w("0011")).is_err());
    }

    #[test]
    fn exhaustive_round_trip_small() {
        for len in 2..=12usize {
            for bits in 0u32..(1 << len) {
                let letters: Vec<u8> = (0..len).map(|i| ((bits >> i) & 1) as u8).collect();
                let word = Word::new(letters).unwrap();
                let b = word.blocks();
                assert_eq!(b.word(), word);
                assert_eq!(b.is_trivial(), word.lower() == word.upper());
                assert_eq!(b.is_divergent(), word.is_divergent());
            }
        }
    }

    proptest! {
        #[test]
        fn blocks_round_trip(eps in 0u8..2, lengths in prop::collection::vec(1usize..6, 1..8)) {
            prop_assume!(lengths.iter().sum::<usize>() >= 2);
            let b = BlockDecomposition::new(eps, lengths).unwrap();
            prop_assert_eq!(b.word().blocks(), b.clone());
            let text = b.to_string();
            prop_assert_eq!(text.parse::<BlockDecomposition>().unwrap(), b);
        }

        #[test]
        fn dual_involution(lengths in prop::collection::vec(1usize..6, 1..8)) {
            prop_assume!(lengths.iter().sum::<usize>() >= 2);
            let b = BlockDecomposition::from_lengths(&lengths).unwrap();
            prop_assume!(!b.is_trivial());
            let (d, s1) = b.dual();
            let (dd, s2) = d.dual();
            prop_assert_eq!(dd, b.clone());
            prop_assert_eq!(s1 * s2, 1);
            prop_assert_eq!(d.word(), b.word().dual());
        }
    }
}
