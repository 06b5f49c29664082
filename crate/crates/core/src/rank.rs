//! Vectorising identities over the convergent words of weight `N` and exact ranks.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::derivation::min_rotation;
use crate::error::{Error, Result};
use crate::identities::{gen_altodd_even, gen_altodd_odd, gen_cyclic_full, Identity, Rhs};
use crate::linear::{int, LinComb};
use crate::regularise::{factorial, regularise, stuffle_depth1, zeta_even_coeff};
use crate::word::{mzv_to_word, Word, ZetaComposition};

/// Sparse row: column index to coefficient.
pub type Row = BTreeMap<usize, BigRational>;

/// `d_N` from `d_N = d_{N-2} + d_{N-3}`, `d_0 = 1, d_1 = 0, d_2 = 1`.
pub fn zagier_dim(n: usize) -> u64 {
    let mut d = vec![1u64, 0, 1];
    while d.len() <= n {
        let k = d.len();
        d.push(d[k - 2] + d[k - 3]);
    }
    d[n]
}

/// `2^{N-2} - d_N`
pub fn expected_rank(n: usize) -> u64 {
    if n < 2 {
        return 0;
    }
    (1u64 << (n - 2)) - zagier_dim(n)
}

/// The `2^{N-2}` convergent words of weight `N`, ordered as binary numbers.
pub fn basis(n: usize) -> Result<Vec<Word>> {
    if !(2..=24).contains(&n) {
        return Err(Error::OutOfRange(format!("weight {n} outside 2..=24")));
    }
    let mut out = Vec::with_capacity(1 << (n - 2));
    for mid in 0u64..(1 << (n - 2)) {
        let mut inner = vec![1u8];
        for i in (0..n - 2).rev() {
            inner.push(((mid >> i) & 1) as u8);
        }
        inner.push(0);
        out.push(Word::from_interior(&inner));
    }
    Ok(out)
}

/// Column of a convergent word of weight `N`: the middle letters read in binary.
pub fn column(w: &Word) -> Option<usize> {
    if !w.is_convergent_mzv() || w.weight() < 2 {
        return None;
    }
    let inner = w.interior();
    Some(inner[1..inner.len() - 1].iter().fold(0usize, |a, &b| 2 * a + b as usize))
}

/// Replace `pi^e zeta(s)` by `zeta(e) * zeta(s) / q` with the depth one stuffle,
/// and a bare `pi^N` by `(N+1)! zeta({2}^{N/2})`.
fn resolve_pi(c: &LinComb<ZetaComposition>) -> Result<LinComb<ZetaComposition>> {
    let mut out = LinComb::zero();
    for (z, e, coeff) in c.iter() {
        if e == 0 {
            out.add_coeff(z.clone(), coeff.clone());
        } else if z.depth() == 0 {
            let twos = ZetaComposition::new(vec![2; e as usize / 2])?;
            out.add_coeff(twos, coeff * BigRational::from_integer(factorial(e as u64 + 1)));
        } else {
            let q = zeta_even_coeff(e / 2)?;
            out += &stuffle_depth1(e, z)?.scale(&(coeff / q));
        }
    }
    Ok(out)
}

/// Coefficients of `lhs - rhs` on the convergent words of weight `N`.
pub fn vectorize(id: &Identity) -> Result<Row> {
    if id.rhs == Rhs::ZetaMultiple {
        return Err(Error::Invalid("an unknown multiple of zeta(N) has no row".into()));
    }
    if let Rhs::Pi(p) = &id.rhs {
        if id.weight % 2 == 1 && !p.coeff.is_zero() {
            return Err(Error::Invalid("odd weight identity with a power of pi".into()));
        }
    }
    let z = resolve_pi(&regularise(&id.difference())?)?;
    let mut row = Row::new();
    for (s, e, c) in z.iter() {
        debug_assert_eq!(e, 0);
        let (w, sign) = mzv_to_word(s)?;
        let col = column(&w).ok_or_else(|| Error::Invalid(format!("{s} has weight below 2")))?;
        let v = row.entry(col).or_insert_with(BigRational::zero);
        *v += c * int(sign as i64);
    }
    row.retain(|_, v| !v.is_zero());
    Ok(row)
}

/// Compositions of `total` into exactly `parts` positive parts, lexicographic.
pub fn compositions(total: usize, parts: usize) -> Vec<Vec<usize>> {
    fn rec(left: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k == 1 {
            cur.push(left);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for a in 1..=left - (k - 1) {
            cur.push(a);
            rec(left - a, k - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if parts == 0 || parts > total {
        return out;
    }
    rec(total, parts, &mut Vec::new(), &mut out);
    out
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RankFamily {
    Cyclic,
    Altodd,
    Duality,
}

impl RankFamily {
    pub const ALL: [RankFamily; 3] = [RankFamily::Cyclic, RankFamily::Altodd, RankFamily::Duality];

    pub fn as_str(self) -> &'static str {
        match self {
            RankFamily::Cyclic => "cyclic",
            RankFamily::Altodd => "altodd",
            RankFamily::Duality => "duality",
        }
    }
}

impl std::str::FromStr for RankFamily {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        RankFamily::ALL
            .into_iter()
            .find(|f| f.as_str() == s)
            .ok_or_else(|| Error::Invalid(format!("unknown rank family '{s}'")))
    }
}

/// The identities behind a family's rows at weight `N`.
pub fn family_identities(n: usize, family: RankFamily) -> Result<Vec<Identity>> {
    basis(n)?;
    match family {
        RankFamily::Cyclic => {
            // block counts of the opposite parity to N, at least 3
            let reps: Vec<Vec<usize>> = (3..=n + 2)
                .filter(|k| (k + n) % 2 == 1)
                .flat_map(|k| compositions(n + 2, k))
                .filter(|c| min_rotation(c) == *c)
                .collect();
            reps.par_iter().map(|c| gen_cyclic_full(c)).collect()
        }
        RankFamily::Altodd if n % 2 == 0 => {
            let reps: Vec<Vec<usize>> = (3..=n + 2)
                .step_by(2)
                .flat_map(|k| compositions(n + 2, k))
                .filter(|c| {
                    let odd: Vec<usize> = c.iter().step_by(2).copied().collect();
                    odd.windows(2).all(|w| w[0] < w[1])
                })
                .collect();
            reps.par_iter().map(|c| gen_altodd_even(c)).collect()
        }
        RankFamily::Altodd => {
            let mut params = Vec::new();
            for s in 1..=n {
                for k in (2..=s).step_by(2) {
                    for c in compositions(s, k) {
                        let odd: usize = c.iter().step_by(2).sum();
                        if odd < n + 2 {
                            params.push((c, n + 2 - odd));
                        }
                    }
                }
            }
            let ids: Vec<Option<Identity>> = params
                .par_iter()
                .map(|(c, x)| match gen_altodd_odd(c, *x) {
                    Ok(id) => Ok((!id.is_empty()).then_some(id)),
                    Err(Error::Constraint(_)) => Ok(None),
                    Err(e) => Err(e),
                })
                .collect::<Result<_>>()?;
            Ok(ids.into_iter().flatten().collect())
        }
        RankFamily::Duality => Ok(Vec::new()),
    }
}

/// Rows of a family at weight `N`.
pub fn family_rows(n: usize, family: RankFamily) -> Result<Vec<Row>> {
    if family == RankFamily::Duality {
        let sign = if n % 2 == 0 { int(-1) } else { int(1) };
        let mut rows = Vec::new();
        for w in basis(n)? {
            let d = w.dual();
            if d == w {
                continue;
            }
            // I(w) - (-1)^N I(dual w)
            let mut r = Row::new();
            r.insert(column(&w).unwrap(), int(1));
            r.insert(column(&d).unwrap(), sign.clone());
            rows.push(r);
        }
        return Ok(rows);
    }
    family_identities(n, family)?.par_iter().map(vectorize).collect()
}

fn content(v: &[BigInt]) -> BigInt {
    v.iter().fold(BigInt::zero(), |g, x| g.gcd(x))
}

fn integer_row(r: &Row, width: usize) -> Vec<BigInt> {
    let l = r.values().fold(BigInt::one(), |a, q| a.lcm(q.denom()));
    let mut v = vec![BigInt::zero(); width];
    for (&i, q) in r {
        v[i] = (q * BigRational::from_integer(l.clone())).to_integer();
    }
    v
}

/// Incremental echelon form over the integers.
#[derive(Default)]
pub struct Echelon {
    width: usize,
    pivots: BTreeMap<usize, Vec<BigInt>>,
}

impl Echelon {
    pub fn new(width: usize) -> Self {
        Echelon { width, pivots: BTreeMap::new() }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Reduce `r` against the pivots; keep it if independent. Returns whether the rank grew.
    pub fn insert(&mut self, r: &Row) -> bool {
        if r.keys().any(|&i| i >= self.width) {
            panic!("row wider than the basis");
        }
        let mut v = integer_row(r, self.width);
        loop {
            let Some(lead) = v.iter().position(|x| !x.is_zero()) else {
                return false;
            };
            match self.pivots.get(&lead) {
                None => {
                    let g = content(&v);
                    let mut v: Vec<BigInt> = v.iter().map(|x| x / &g).collect();
                    if v[lead].is_negative() {
                        v.iter_mut().for_each(|x| *x = -x.clone());
                    }
                    self.pivots.insert(lead, v);
                    return true;
                }
                Some(p) => {
                    let a = &p[lead];
                    let b = v[lead].clone();
                    let g = a.gcd(&b);
                    let (ma, mb) = (a / &g, &b / &g);
                    for (x, y) in v.iter_mut().zip(p) {
                        *x = &*x * &ma - y * &mb;
                    }
                    let c = content(&v);
                    if !c.is_zero() && !c.is_one() {
                        v.iter_mut().for_each(|x| *x = &*x / &c);
                    }
                }
            }
        }
    }
}

/// Exact rank of a set of rows.
pub fn rank_of(rows: &[Row]) -> usize {
    let width = rows.iter().filter_map(|r| r.keys().next_back()).max().map_or(0, |m| m + 1);
    let mut e = Echelon::new(width);
    for r in rows {
        e.insert(r);
    }
    e.rank()
}

/// `(row, column, value)` triplets.
pub fn triplets(rows: &[Row]) -> Vec<(usize, usize, String)> {
    rows.iter().enumerate().flat_map(|(i, r)| r.iter().map(move |(&j, q)| (i, j, q.to_string()))).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FamilyCount {
    pub init: usize,
    pub rank: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TableRow {
    pub weight: usize,
    pub families: BTreeMap<RankFamily, FamilyCount>,
    pub overall: usize,
    pub expected: u64,
}

impl TableRow {
    pub fn to_json(&self) -> Value {
        let mut v = json!({"weight": self.weight, "overall": self.overall, "expected": self.expected});
        for (f, c) in &self.families {
            v[f.as_str()] = json!({"init": c.init, "rank": c.rank});
        }
        v
    }

    pub fn text(&self) -> String {
        let mut s = format!("weight {}", self.weight);
        for (f, c) in &self.families {
            s.push_str(&format!(" | {} {} {}", f.as_str(), c.init, c.rank));
        }
        s.push_str(&format!(" | overall {} | expected {}", self.overall, self.expected));
        s
    }
}

/// One row of the rank table for the chosen families.
pub fn table_row_for(n: usize, families: &[RankFamily]) -> Result<TableRow> {
    let width = basis(n)?.len();
    let mut all = Echelon::new(width);
    let mut counts = BTreeMap::new();
    for &f in families {
        let rows = family_rows(n, f)?;
        let mut own = Echelon::new(width);
        for r in &rows {
            own.insert(r);
            all.insert(r);
        }
        counts.insert(f, FamilyCount { init: rows.len(), rank: own.rank() });
    }
    Ok(TableRow { weight: n, families: counts, overall: all.rank(), expected: expected_rank(n) })
}

pub fn table_row(n: usize) -> Result<TableRow> {
    table_row_for(n, &RankFamily::ALL)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::identities::gen_hoffman;

    #[test]
    fn dims() {
        let d: Vec<u64> = (0..14).map(zagier_dim).collect();
        assert_eq!(d, vec![1, 0, 1, 1, 1, 2, 2, 3, 4, 5, 7, 9, 12, 16]);
        assert_eq!(expected_rank(13), 2032);
        let e: Vec<u64> = (4..=12).map(expected_rank).collect();
        assert_eq!(e, vec![3, 6, 14, 29, 60, 123, 249, 503, 1012]);
    }

    #[test]
    fn basis_order() {
        let b = basis(4).unwrap();
        let s: Vec<String> = b.iter().map(|w| w.to_string()).collect();
        assert_eq!(s, vec!["010001", "010101", "011001", "011101"]);
        for (i, w) in b.iter().enumerate() {
            assert_eq!(column(w), Some(i));
        }
    }

    #[test]
    fn duality_rows() {
        let r = family_rows(4, RankFamily::Duality).unwrap();
        assert_eq!((r.len(), rank_of(&r)), (2, 1));
        // zeta(4) - zeta(1,1,2): I(0;1000;1) = -zeta(4), I(0;1110;1) = -zeta(1,1,2)
        assert_eq!(r[0].get(&0), Some(&int(1)));
        assert_eq!(r[0].get(&3), Some(&int(-1)));
        let r = family_rows(5, RankFamily::Duality).unwrap();
        assert_eq!((r.len(), rank_of(&r)), (8, 4));
    }

    #[test]
    fn duality_closed_form() {
        for n in 4..=12usize {
            let r = family_rows(n, RankFamily::Duality).unwrap();
            let init = if n % 2 == 0 { (1 << (n - 2)) - (1 << (n / 2 - 1)) } else { 1 << (n - 2) };
            assert_eq!(r.len(), init);
            assert_eq!(rank_of(&r), init / 2);
        }
    }

    #[test]
    fn hoffman_vector() {
        let row = vectorize(&gen_hoffman(0, 0, 0).unwrap()).unwrap();
        assert!(!row.is_empty());
        // zeta(2,2,2) is the basis word 0 101010 1 with middle 01010
        let col = column(&"01010101".parse().unwrap()).unwrap();
        assert!(row.contains_key(&col));
    }

    #[test]
    fn rank_basics() {
        assert_eq!(rank_of(&[]), 0);
        let r = family_rows(6, RankFamily::Duality).unwrap();
        let mut twice = r.clone();
        twice.extend(r.iter().cloned());
        assert_eq!(rank_of(&twice), rank_of(&r));
    }

    #[test]
    fn small_table_rows() {
        let t = table_row(4).unwrap();
        assert_eq!(t.families[&RankFamily::Cyclic], FamilyCount { init: 5, rank: 3 });
        assert_eq!(t.families[&RankFamily::Duality], FamilyCount { init: 2, rank: 1 });
        assert_eq!((t.overall, t.expected), (3, 3));
    }
}
