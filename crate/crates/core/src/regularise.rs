//! Regularisation of iterated integrals and the shuffle / stuffle products.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linear::{int, LinComb, PiRational};
use crate::word::{word_to_mzv, Word, ZetaComposition};

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut r = BigInt::one();
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    r
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |a, k| a * k)
}

fn sign(odd: bool) -> BigRational {
    if odd {
        -BigRational::one()
    } else {
        BigRational::one()
    }
}

/// Split `0 0^k 1 0^{n_1-1} ... 1 0^{n_r-1} 1` into `(k, [n_1..n_r])`.
fn leading_zeros_shape(w: &Word) -> Option<(usize, Vec<usize>)> {
    if w.lower() != 0 || w.upper() != 1 {
        return None;
    }
    let inner = w.interior();
    let k = inner.iter().take_while(|&&a| a == 0).count();
    let mut ns = Vec::new();
    for &a in &inner[k..] {
        if a == 1 {
            ns.push(1);
        } else {
            *ns.last_mut().unwrap() += 1;
        }
    }
    if ns.is_empty() {
        None
    } else {
        Some((k, ns))
    }
}

/// All `(i_1..i_r)` with sum `k`.
fn weak_compositions(k: usize, r: usize) -> Vec<Vec<usize>> {
    if r == 0 {
        return if k == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    let mut cur = vec![0; r];
    fn rec(pos: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if pos + 1 == cur.len() {
            cur[pos] = left;
            out.push(cur.clone());
            return;
        }
        for i in 0..=left {
            cur[pos] = i;
            rec(pos + 1, left - i, cur, out);
        }
    }
    rec(0, k, &mut cur, &mut out);
    out
}

fn mzv_word(ns: &[usize]) -> Word {
    let mut inner = Vec::new();
    for &n in ns {
        inner.push(1);
        inner.extend(std::iter::repeat_n(0, n - 1));
    }
    Word::from_interior(&inner)
}

/// Remove `k` leading zeros:
/// `I(0;0^k,1,0^{n_1-1},...;1) = (-1)^k sum prod C(n_j-1+i_j, i_j) I(0;1,0^{n_1+i_1-1},...;1)`.
pub fn divergence_relation(w: &Word) -> Result<LinComb<Word>> {
    let (k, ns) = leading_zeros_shape(w)
        .ok_or_else(|| Error::Invalid(format!("{w} is not of the form 0 0^k 1 ... 1 with a 1 inside")))?;
    let mut out = LinComb::zero();
    if k == 0 {
        out.add_coeff(w.clone(), BigRational::one());
        return Ok(out);
    }
    let s = sign(k % 2 == 1);
    for is in weak_compositions(k, ns.len()) {
        let mut c = BigInt::one();
        let mut shifted = Vec::with_capacity(ns.len());
        for (&n, &i) in ns.iter().zip(&is) {
            c *= binomial((n - 1 + i) as u64, i as u64);
            shifted.push(n + i);
        }
        out.add_coeff(mzv_word(&shifted), &s * BigRational::from_integer(c));
    }
    Ok(out)
}

/// Apply the divergence relation to every term that starts with `0 0`.
fn strip_leading(c: &LinComb<Word>) -> Result<LinComb<Word>> {
    c.map_linear(|w| {
        if w.interior().first() == Some(&0) {
            if w.interior().iter().all(|&a| a == 0) {
                // I(0; 0^k; 1) regularises to 0
                return Ok(LinComb::zero());
            }
            divergence_relation(w)
        } else {
            Ok(LinComb::term(w.clone()))
        }
    })
}

/// Rewrite a single word as a combination of convergent `0 1 .. 0 1` words.
pub fn regularise_word(w: &Word) -> Result<LinComb<Word>> {
    let n = w.weight();
    if n == 0 {
        // empty integral
        return Ok(LinComb::term(Word::from_interior(&[])));
    }
    if w.lower() == w.upper() {
        return Ok(LinComb::zero());
    }
    let (start, s) = if w.lower() == 1 {
        let mut inner = w.interior().to_vec();
        inner.reverse();
        (Word::from_interior(&inner), sign(n % 2 == 1))
    } else {
        (w.clone(), BigRational::one())
    };
    if start.is_convergent_mzv() {
        return Ok(LinComb::term(start).scale(&s));
    }
    let mut c = LinComb::term(start).scale(&s);
    c = strip_leading(&c)?;
    c = c.map_linear(|w| {
        let mut r = LinComb::term(w.dual());
        if w.weight() % 2 == 1 {
            r = -r;
        }
        Ok(r)
    })?;
    strip_leading(&c)
}

pub fn regularise_words(c: &LinComb<Word>) -> Result<LinComb<Word>> {
    let mut memo: HashMap<Word, LinComb<Word>> = HashMap::new();
    c.map_linear(|w| {
        if let Some(r) = memo.get(w) {
            return Ok(r.clone());
        }
        let r = regularise_word(w)?;
        memo.insert(w.clone(), r.clone());
        Ok(r)
    })
}

/// Regularise and rewrite in terms of MZVs. The empty word `01` becomes `z()`.
pub fn regularise(c: &LinComb<Word>) -> Result<LinComb<ZetaComposition>> {
    regularise_words(c)?.map_linear(|w| {
        let (z, s) = word_to_mzv(w)?;
        Ok(LinComb::term(z).scale(&int(s as i64)))
    })
}

/// Convergent MZVs back to integrals.
pub fn zetas_to_words(c: &LinComb<ZetaComposition>) -> Result<LinComb<Word>> {
    c.map_linear(|z| {
        let (w, s) = crate::word::mzv_to_word(z)?;
        Ok(LinComb::term(w).scale(&int(s as i64)))
    })
}

/// Shuffle of two letter sequences, as a map from interleavings to multiplicity.
pub fn shuffle_letters(u: &[u8], v: &[u8]) -> HashMap<Vec<u8>, BigInt> {
    let mut memo: HashMap<(usize, usize), HashMap<Vec<u8>, BigInt>> = HashMap::new();
    fn rec(
        u: &[u8],
        v: &[u8],
        i: usize,
        j: usize,
        memo: &mut HashMap<(usize, usize), HashMap<Vec<u8>, BigInt>>,
    ) -> HashMap<Vec<u8>, BigInt> {
        if let Some(r) = memo.get(&(i, j)) {
            return r.clone();
        }
        let mut out: HashMap<Vec<u8>, BigInt> = HashMap::new();
        if i == u.len() && j == v.len() {
            out.insert(Vec::new(), BigInt::one());
        } else {
            if i < u.len() {
                for (tail, c) in rec(u, v, i + 1, j, memo) {
                    let mut wd = Vec::with_capacity(tail.len() + 1);
                    wd.push(u[i]);
                    wd.extend(tail);
                    *out.entry(wd).or_default() += c;
                }
            }
            if j < v.len() {
                for (tail, c) in rec(u, v, i, j + 1, memo) {
                    let mut wd = Vec::with_capacity(tail.len() + 1);
                    wd.push(v[j]);
                    wd.extend(tail);
                    *out.entry(wd).or_default() += c;
                }
            }
        }
        memo.insert((i, j), out.clone());
        out
    }
    rec(u, v, 0, 0, &mut memo)
}

/// `I(0;u;1) I(0;v;1)` as a combination of integrals over shuffled interiors.
pub fn shuffle_words(u: &Word, v: &Word) -> Result<LinComb<Word>> {
    if u.lower() != v.lower() || u.upper() != v.upper() {
        return Err(Error::Invalid(format!("{u} and {v} have different bounds")));
    }
    let mut out = LinComb::zero();
    for (inner, c) in shuffle_letters(u.interior(), v.interior()) {
        let mut l = vec![u.lower()];
        l.extend(inner);
        l.push(u.upper());
        out.add_coeff(Word::new(l)?, BigRational::from_integer(c));
    }
    Ok(out)
}

/// `zeta(n) * zeta(s)`: insert `n` in every slot plus add it to every entry.
pub fn stuffle_depth1(n: u32, s: &ZetaComposition) -> Result<LinComb<ZetaComposition>> {
    if n == 0 {
        return Err(Error::Invalid("zeta argument 0".into()));
    }
    let a = s.args();
    let mut out = LinComb::zero();
    for i in 0..=a.len() {
        let mut v = a.to_vec();
        v.insert(i, n);
        out.add_coeff(ZetaComposition::new(v)?, BigRational::one());
    }
    for i in 0..a.len() {
        let mut v = a.to_vec();
        v[i] += n;
        out.add_coeff(ZetaComposition::new(v)?, BigRational::one());
    }
    Ok(out)
}

/// Bernoulli numbers with `B_1 = -1/2`.
pub fn bernoulli(n: usize) -> BigRational {
    let mut b: Vec<BigRational> = Vec::with_capacity(n + 1);
    for m in 0..=n {
        if m == 0 {
            b.push(BigRational::one());
            continue;
        }
        let mut s = BigRational::zero();
        for (k, bk) in b.iter().enumerate() {
            s += BigRational::from_integer(binomial((m + 1) as u64, k as u64)) * bk;
        }
        b.push(-s / int(m as i64 + 1));
    }
    b.pop().unwrap()
}

/// `q_k` with `zeta(2k) = q_k pi^{2k}`.
pub fn zeta_even_coeff(k: u32) -> Result<BigRational> {
    if k == 0 {
        return Err(Error::Invalid("zeta(0) is not an MZV".into()));
    }
    let b = bernoulli(2 * k as usize);
    let two = BigRational::from_integer(BigInt::one() << (2 * k - 1));
    let q = sign(k % 2 == 0) * b * two / BigRational::from_integer(factorial(2 * k as u64));
    Ok(q.abs())
}

/// `zeta({2}^m) = pi^{2m} / (2m+1)!`
pub fn zeta_twos(m: u32) -> PiRational {
    PiRational { coeff: BigRational::new(BigInt::one(), factorial(2 * m as u64 + 1)), pi_exp: 2 * m }
}
