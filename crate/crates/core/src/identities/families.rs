//! The identity generators.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde_json::json;

use super::{Family, Identity, Rhs, Zeta123Form};
use crate::error::{Error, Result};
use crate::linear::{int, LinComb, PiRational};
use crate::regularise::{
    binomial, factorial, regularise, shuffle_words, stuffle_depth1, zeta_even_coeff, zetas_to_words,
};
use crate::word::{BlockDecomposition, Word, ZetaComposition};

/// Largest block count accepted where all `n!` permutations are expanded.
pub const MAX_PERMUTED_BLOCKS: usize = 8;

fn blocks(lengths: &[usize]) -> Result<BlockDecomposition> {
    if lengths.is_empty() || lengths.contains(&0) {
        return Err(Error::Invalid(format!("block lengths must be positive: {lengths:?}")));
    }
    BlockDecomposition::from_lengths(lengths)
}

pub fn block_word(lengths: &[usize]) -> Result<Word> {
    Ok(blocks(lengths)?.word())
}

fn weight_of(lengths: &[usize]) -> usize {
    lengths.iter().sum::<usize>() - 2
}

fn rotations(l: &[usize]) -> Vec<Vec<usize>> {
    (0..l.len())
        .map(|i| {
            let mut v = l[i..].to_vec();
            v.extend_from_slice(&l[..i]);
            v
        })
        .collect()
}

/// All permutations of `0..n` with their signs, in lexicographic order.
pub fn signed_permutations(n: usize) -> Vec<(Vec<usize>, i64)> {
    fn rec(cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<(Vec<usize>, i64)>) {
        let n = used.len();
        if cur.len() == n {
            let mut inv = 0;
            for i in 0..n {
                for j in i + 1..n {
                    if cur[i] > cur[j] {
                        inv += 1;
                    }
                }
            }
            out.push((cur.clone(), if inv % 2 == 0 { 1 } else { -1 }));
            return;
        }
        for i in 0..n {
            if !used[i] {
                used[i] = true;
                cur.push(i);
                rec(cur, used, out);
                cur.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// Weak compositions of `m` into `parts` parts, lexicographic.
pub fn weak_compositions(m: u32, parts: usize) -> Vec<Vec<u32>> {
    fn rec(left: u32, k: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if k == 1 {
            cur.push(left);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for i in 0..=left {
            cur.push(i);
            rec(left - i, k - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if parts > 0 {
        rec(m, parts, &mut Vec::new(), &mut out);
    } else if m == 0 {
        out.push(Vec::new());
    }
    out
}

fn adjacent_ones(l: &[usize]) -> Option<usize> {
    let n = l.len();
    (0..n).find(|&i| l[i] == 1 && l[(i + 1) % n] == 1)
}

/// `I_bl(N+2)`, or nothing when it is trivial (odd `N`).
fn top_block(n: usize) -> Result<LinComb<Word>> {
    let b = blocks(&[n + 2])?;
    Ok(if b.is_trivial() { LinComb::zero() } else { LinComb::term(b.word()) })
}

fn check_cyclic_input(lengths: &[usize]) -> Result<BlockDecomposition> {
    let b = blocks(lengths)?;
    if lengths.len() < 2 {
        return Err(Error::Invalid("a single block gives the tautology I_bl(N+2) = I_bl(N+2)".into()));
    }
    if b.is_trivial() {
        return Err(Error::Invalid(format!("{b} is trivial")));
    }
    Ok(b)
}

/// Sum over all `n!` orderings of the blocks; conjecturally a rational multiple of `zeta(N)`.
pub fn gen_symmetric(b: &BlockDecomposition) -> Result<Identity> {
    if b.eps1() != 0 {
        return Err(Error::Invalid("symmetric insertion needs eps_1 = 0".into()));
    }
    if b.is_trivial() || b.weight() % 2 == 1 {
        return Err(Error::Invalid(format!("{b} must be non-trivial of even weight")));
    }
    let l = b.lengths();
    if l.len() > MAX_PERMUTED_BLOCKS {
        return Err(Error::OutOfRange(format!("{} blocks, at most {MAX_PERMUTED_BLOCKS}", l.len())));
    }
    let mut lhs = LinComb::zero();
    for (p, _) in signed_permutations(l.len()) {
        let v: Vec<usize> = p.iter().map(|&i| l[i]).collect();
        lhs.add_coeff(block_word(&v)?, BigRational::one());
    }
    Identity::new(Family::Symmetric, json!({"lengths": l}), b.weight(), lhs, Rhs::ZetaMultiple)
}

/// `sum_{C_n} I_bl(l_sigma) - I_bl(N+2)`, with no side conditions beyond non-triviality.
pub fn naive_cyclic_difference(lengths: &[usize]) -> Result<LinComb<Word>> {
    check_cyclic_input(lengths)?;
    let mut c = LinComb::zero();
    for r in rotations(lengths) {
        c.add_coeff(block_word(&r)?, BigRational::one());
    }
    c -= &top_block(weight_of(lengths))?;
    Ok(c)
}

pub fn gen_cyclic_basic(lengths: &[usize]) -> Result<Identity> {
    check_cyclic_input(lengths)?;
    if let Some(i) = adjacent_ones(lengths) {
        return Err(Error::Invalid(format!("lengths {} and {} are both 1", i + 1, (i + 1) % lengths.len() + 1)));
    }
    let lhs = naive_cyclic_difference(lengths)?;
    Identity::new(Family::CyclicBasic, json!({"lengths": lengths}), weight_of(lengths), lhs, Rhs::zero())
}

/// Cyclic permutations starting with `k` ones, with those ones removed. Repeats are kept.
pub fn compute_lk(lengths: &[usize], k: usize) -> Vec<Vec<usize>> {
    rotations(lengths)
        .into_iter()
        .filter(|r| k <= r.len() && r[..k].iter().all(|&x| x == 1))
        .map(|r| r[k..].to_vec())
        .collect()
}

/// `(-1)^k 2^{2k+1} / (2k+2)!`, the coefficient of `pi^{2k}` in the correction.
fn correction_coeff(k: usize) -> BigRational {
    let c = BigRational::new(BigInt::one() << (2 * k + 1), factorial(2 * k as u64 + 2));
    if k % 2 == 1 {
        -c
    } else {
        c
    }
}

fn corrections(lengths: &[usize]) -> Vec<(usize, Vec<usize>)> {
    let mut out = Vec::new();
    for k in 1..=lengths.len() / 2 {
        for m in compute_lk(lengths, 2 * k) {
            if m.iter().sum::<usize>() >= 2 {
                out.push((k, m));
            }
        }
    }
    out
}

/// Full cyclic insertion: corrections carried as `pi^{2k} I_bl(m)` on the left side.
pub fn gen_cyclic_full(lengths: &[usize]) -> Result<Identity> {
    let mut lhs = naive_cyclic_difference(lengths)?;
    for (k, m) in corrections(lengths) {
        let b = blocks(&m)?;
        if b.is_trivial() {
            continue;
        }
        let mut t = LinComb::zero();
        t.add_term(b.word(), PiRational::new(correction_coeff(k), 2 * k as u32)?);
        lhs += &t;
    }
    Identity::new(Family::CyclicFull, json!({"lengths": lengths}), weight_of(lengths), lhs, Rhs::zero())
}

/// How products `I_bl(2k+2) I_bl(m)` are expanded in the symbolic form.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ProductRule {
    Shuffle,
    /// through `zeta(2k) * zeta(s)` with the depth one stuffle
    Stuffle,
}

/// `I_bl(2k+2) * I(w)`.
fn product_with_twos(k: usize, w: &Word, rule: ProductRule) -> Result<LinComb<Word>> {
    let twos = block_word(&[2 * k + 2])?;
    match rule {
        ProductRule::Shuffle => shuffle_words(&twos, w),
        ProductRule::Stuffle => {
            // I_bl(2k+2) = (-1)^k zeta({2}^k) = (-1)^k zeta(2k) / (q_k (2k+1)!)
            let q = zeta_even_coeff(k as u32)?;
            let mut c = BigRational::one() / (q * BigRational::from_integer(factorial(2 * k as u64 + 1)));
            if k % 2 == 1 {
                c = -c;
            }
            let z = regularise(&LinComb::term(w.clone()))?;
            let prod = z.map_linear(|s| {
                if s.depth() == 0 {
                    Ok(LinComb::term(ZetaComposition::new(vec![2 * k as u32])?))
                } else {
                    stuffle_depth1(2 * k as u32, s)
                }
            })?;
            Ok(zetas_to_words(&prod)?.scale(&c))
        }
    }
}

/// Full cyclic insertion with `pi^{2k}` replaced by a multiple of `I_bl(2k+2)` and the
/// products expanded, so that every term is a word.
pub fn gen_cyclic_full_symbolic(lengths: &[usize], rule: ProductRule) -> Result<Identity> {
    let mut lhs = naive_cyclic_difference(lengths)?;
    for (k, m) in corrections(lengths) {
        let b = blocks(&m)?;
        if b.is_trivial() {
            continue;
        }
        let c = BigRational::new(BigInt::one() << (2 * k + 1), BigInt::from(2 * k + 2));
        lhs += &product_with_twos(k, &b.word(), rule)?.scale(&c);
    }
    let rule_name = match rule {
        ProductRule::Shuffle => "shuffle",
        ProductRule::Stuffle => "stuffle",
    };
    Identity::new(
        Family::CyclicFull,
        json!({"lengths": lengths, "symbolic": rule_name}),
        weight_of(lengths),
        lhs,
        Rhs::zero(),
    )
}

/// `sum c * z(form)` as words.
fn zeta_words(terms: &[(i64, Zeta123Form)]) -> LinComb<Word> {
    let mut c = LinComb::zero();
    for (k, f) in terms {
        let (w, s) = f.word();
        c.add_coeff(w, int(k * s as i64));
    }
    c
}

/// Right side coefficient of a single cyc orbit, in units of `pi^wt / (wt+1)!`.
pub fn cyc_rhs_sign(f: &Zeta123Form) -> i64 {
    let wt = f.weight();
    if wt % 2 == 1 {
        return 0;
    }
    if (wt / 2 + f.depth()) % 2 == 0 {
        1
    } else {
        -1
    }
}

/// `sum c * zeta_cyc(form)` over the given forms, all of one weight.
fn orbit_sum(family: Family, params: serde_json::Value, forms: &[(i64, Zeta123Form)]) -> Result<Identity> {
    let Some((_, first)) = forms.first() else {
        return Err(Error::Invalid("no terms".into()));
    };
    let wt = first.weight();
    let mut side = Vec::new();
    let mut rhs = 0i64;
    for (c, f) in forms {
        if f.weight() != wt {
            return Err(Error::MixedWeight(vec![wt, f.weight()]));
        }
        for (s, g) in f.orbit() {
            side.push((c * s as i64, g));
        }
        rhs += c * cyc_rhs_sign(f);
    }
    let mut id = Identity::new(family, params, wt, zeta_words(&side), Rhs::pi_over_factorial(int(rhs), wt))?;
    id.zeta_side = side;
    Ok(id)
}

pub fn gen_cyc123(f: &Zeta123Form) -> Result<Identity> {
    orbit_sum(Family::Cyc123, json!({"form": f.to_string()}), &[(1, f.clone())])
}

fn form(a: &str, b: &[u32]) -> Result<Zeta123Form> {
    let b: Vec<String> = b.iter().map(|x| x.to_string()).collect();
    format!("z({a} | {})", b.join(",")).parse()
}

/// `sum over the 2n+1 cyclic shifts of b of z({1,3}^n | b)`.
pub fn gen_bbbl(b: &[u32]) -> Result<Identity> {
    if b.len() % 2 == 0 {
        return Err(Error::Invalid(format!("need an odd number of exponents, got {}", b.len())));
    }
    let n = b.len() / 2;
    let a = vec!["1,3"; n].join(",");
    let f = form(&a, b)?;
    orbit_sum(Family::Bbbl, json!({"b": b}), &[(1, f)])
}

/// `z(3,3|b1,b2,b3) - z(3,(1,2)|b2,b3,b1) + z((1,2),(1,2)|b3,b1,b2)`
pub fn gen_hoffman(b1: u32, b2: u32, b3: u32) -> Result<Identity> {
    let f = form("3,3", &[b1, b2, b3])?;
    orbit_sum(Family::Hoffman, json!({"b": [b1, b2, b3]}), &[(1, f)])
}

/// `sum_i (-1)^i z({3}^{2n+1-i}, {(1,2)}^{i-1} | b_i..b_2n, c, b_1..b_{i-1})`
pub fn gen_general_hoffman(n: usize, b: &[u32], c: u32) -> Result<Identity> {
    if n == 0 || b.len() != 2 * n {
        return Err(Error::Invalid(format!("need n >= 1 and 2n = {} exponents, got {}", 2 * n, b.len())));
    }
    let mut bb = b.to_vec();
    bb.push(c);
    let f = form(&vec!["3"; 2 * n].join(","), &bb)?;
    orbit_sum(Family::GeneralHoffman, json!({"n": n, "b": b, "c": c}), &[(-1, f)])
}

/// The sums over weak compositions of `m`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CompositionSum {
    /// `sum_{|b|=m} z({1,3}^n | b)`
    BowmanBradley,
    /// `sum_{|b|=m} zeta_cyc(1,3,{3}^{2n-2} | b)`
    Z1333,
    /// a sparse list of `zeta_cyc(1,3,3,3 | ..)` at the compositions listed below
    Further13332n,
}

impl std::str::FromStr for CompositionSum {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "bowman-bradley" => Ok(CompositionSum::BowmanBradley),
            "z1333-compsum" | "z1333" => Ok(CompositionSum::Z1333),
            "further-13332n" => Ok(CompositionSum::Further13332n),
            _ => Err(Error::Invalid(format!("unknown composition sum '{s}'"))),
        }
    }
}

pub fn gen_composition_sums(kind: CompositionSum, m: u32, n: usize) -> Result<Identity> {
    match kind {
        CompositionSum::BowmanBradley => {
            if n == 0 {
                return Err(Error::Invalid("n must be at least 1".into()));
            }
            let a = vec!["1,3"; n].join(",");
            let side: Vec<(i64, Zeta123Form)> =
                weak_compositions(m, 2 * n + 1).iter().map(|b| Ok((1, form(&a, b)?))).collect::<Result<_>>()?;
            let wt = 4 * n + 2 * m as usize;
            let c = BigRational::new(binomial(m as u64 + 2 * n as u64, m as u64), BigInt::from(2 * n + 1));
            let mut id = Identity::new(
                Family::BowmanBradley,
                json!({"n": n, "m": m}),
                wt,
                zeta_words(&side),
                Rhs::pi_over_factorial(c, wt),
            )?;
            id.zeta_side = side;
            Ok(id)
        }
        CompositionSum::Z1333 => {
            if n < 2 {
                return Err(Error::Invalid("n must be at least 2".into()));
            }
            let mut a = vec!["1", "3"];
            a.extend(vec!["3"; 2 * n - 2]);
            let a = a.join(",");
            let forms: Vec<(i64, Zeta123Form)> =
                weak_compositions(m, 2 * n + 1).iter().map(|b| Ok((1, form(&a, b)?))).collect::<Result<_>>()?;
            orbit_sum(Family::Z1333Compsum, json!({"kind": "z1333-compsum", "n": n, "m": m}), &forms)
        }
        CompositionSum::Further13332n => {
            if m < 2 {
                return Err(Error::Invalid("m must be at least 2".into()));
            }
            let mut bs = vec![vec![0, 0, 0, 0, m], vec![0, 0, 0, m, 0]];
            for i in 1..=m.saturating_sub(2) {
                bs.push(vec![0, 0, i, 0, m - i]);
            }
            bs.push(vec![0, 1, 0, m - 1, 0]);
            let forms: Vec<(i64, Zeta123Form)> =
                bs.iter().map(|b| Ok((1, form("1,3,3,3", b)?))).collect::<Result<_>>()?;
            orbit_sum(Family::Z1333Compsum, json!({"kind": "further-13332n", "m": m}), &forms)
        }
    }
}

/// `Sym_{b1,b2,b5} Sym_{b3,b4} (zeta_cyc(1,3,3,3 | b) - zeta_cyc(1,3,3,(1,2) | b1,b2,b3,b5,b4))`
pub fn gen_z13312_sym(b: [u32; 5]) -> Result<Identity> {
    let mut forms = Vec::new();
    let even = [0, 1, 4];
    let odd = [2, 3];
    for (p, _) in signed_permutations(3) {
        for (q, _) in signed_permutations(2) {
            let mut v = b;
            for i in 0..3 {
                v[even[i]] = b[even[p[i]]];
            }
            for i in 0..2 {
                v[odd[i]] = b[odd[q[i]]];
            }
            forms.push((1, form("1,3,3,3", &v)?));
            forms.push((-1, form("1,3,3,(1,2)", &[v[0], v[1], v[2], v[4], v[3]])?));
        }
    }
    orbit_sum(Family::Z13312Sym, json!({"b": b}), &forms)
}

/// `zeta_cyc(1,3,3,(1,2) | m,0,0,0,0)`
pub fn gen_z13312_lead(m: u32) -> Result<Identity> {
    let f = form("1,3,3,(1,2)", &[m, 0, 0, 0, 0])?;
    orbit_sum(Family::Z13312Lead, json!({"m": m}), &[(1, f)])
}

/// `sum_sigma sgn(sigma) I_bl(...)` with `sigma` permuting the entries at `groups[g]` for each group.
fn alternate(lengths: &[usize], groups: &[Vec<usize>]) -> Result<LinComb<Word>> {
    let mut out = LinComb::zero();
    for g in groups {
        let mut vals: Vec<usize> = g.iter().map(|&i| lengths[i]).collect();
        vals.sort_unstable();
        if vals.windows(2).any(|w| w[0] == w[1]) {
            return Ok(out);
        }
    }
    let mut terms: Vec<(Vec<usize>, i64)> = vec![(lengths.to_vec(), 1)];
    for g in groups {
        let perms = signed_permutations(g.len());
        let mut next = Vec::with_capacity(terms.len() * perms.len());
        for (l, s) in &terms {
            for (p, t) in &perms {
                let mut v = l.clone();
                for (i, &pi) in p.iter().enumerate() {
                    v[g[i]] = l[g[pi]];
                }
                next.push((v, s * t));
            }
        }
        terms = next;
    }
    for (v, s) in terms {
        out.add_coeff(block_word(&v)?, int(s));
    }
    Ok(out)
}

/// Antisymmetrise over the odd positions (1st, 3rd, ...).
pub fn gen_altodd_even(lengths: &[usize]) -> Result<Identity> {
    let b = blocks(lengths)?;
    let n = lengths.len();
    if b.is_trivial() || b.weight() % 2 == 1 {
        return Err(Error::Invalid(format!("{b} must be non-trivial of even weight")));
    }
    if n < 3 {
        return Err(Error::Invalid("need at least 3 blocks".into()));
    }
    let odd: Vec<usize> = (0..n).step_by(2).collect();
    if odd.len() > MAX_PERMUTED_BLOCKS {
        return Err(Error::OutOfRange(format!("{} odd positions", odd.len())));
    }
    let lhs = alternate(lengths, &[odd])?;
    Identity::new(Family::AltoddEven, json!({"lengths": lengths}), b.weight(), lhs, Rhs::zero())
}

/// The odd weight candidate built row by row from `l_1..l_{2n}` and `x`.
pub fn gen_altodd_odd(lengths: &[usize], x: usize) -> Result<Identity> {
    if lengths.is_empty() || lengths.len() % 2 == 1 || lengths.contains(&0) {
        return Err(Error::Invalid(format!("need an even number of positive lengths, got {lengths:?}")));
    }
    let n = lengths.len() / 2;
    if n > MAX_PERMUTED_BLOCKS {
        return Err(Error::OutOfRange(format!("{n} odd positions")));
    }
    let o: Vec<usize> = lengths.iter().step_by(2).copied().collect();
    let e: Vec<usize> = lengths.iter().skip(1).step_by(2).copied().collect();
    let total = x + o.iter().sum::<usize>();
    if total % 2 == 0 {
        return Err(Error::Constraint(format!("x + (sum of odd positions) = {total} is even")));
    }
    let esum: usize = e.iter().sum();
    let mut lhs = LinComb::zero();
    for i in 0..n {
        let rest = esum - e[i];
        if x <= rest {
            return Err(Error::Constraint(format!(
                "x - (sum of even positions without l_{}) = {x} - {rest} <= 0",
                2 * i + 2
            )));
        }
        let y = x - rest;
        // interleave O with E minus its i-th entry
        let ei: Vec<usize> = e.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &v)| v).collect();
        let mut a = Vec::with_capacity(2 * n);
        for j in 0..n {
            a.push(o[j]);
            if j < ei.len() {
                a.push(ei[j]);
            }
        }
        let at = 2 * i;
        for pos in [at, at + 1] {
            let mut v = a.clone();
            v.insert(pos, y);
            // the odd-position entries keep their slots after insertion
            let slots: Vec<usize> = (0..n).map(|j| if 2 * j < pos { 2 * j } else { 2 * j + 1 }).collect();
            let mut r = alternate(&v, &[slots])?;
            if i % 2 == 0 {
                r = -r;
            }
            lhs += &r;
        }
    }
    Identity::new(Family::AltoddOdd, json!({"lengths": lengths, "x": x}), total - 2, lhs, Rhs::zero())
}

/// `Alt_{l1,l3} Alt_{l2,l4} I_bl(l1..l4)` and `Alt_{l1,l4,l6} Alt_{l2,l3,l5} I_bl(l1..l6)`.
pub fn gen_altodd_double(lengths: &[usize]) -> Result<Identity> {
    let groups = match lengths.len() {
        4 => vec![vec![0, 2], vec![1, 3]],
        6 => vec![vec![0, 3, 5], vec![1, 2, 4]],
        k => return Err(Error::Invalid(format!("the double alternation needs 4 or 6 blocks, got {k}"))),
    };
    let b = blocks(lengths)?;
    if b.is_trivial() {
        return Err(Error::Invalid(format!("{b} is trivial")));
    }
    let lhs = alternate(lengths, &groups)?;
    Identity::new(Family::AltoddOdd, json!({"lengths": lengths, "double": true}), b.weight(), lhs, Rhs::zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::derivation::kernel_report;
    use crate::identities::all_123_of_weight;
    use crate::linear::rat;

    fn w(l: &[usize]) -> Word {
        block_word(l).unwrap()
    }

    #[test]
    fn lk_examples() {
        assert_eq!(compute_lk(&[1, 1, 1, 2, 3], 2), vec![vec![1, 2, 3], vec![2, 3, 1]]);
        assert_eq!(compute_lk(&[1, 1, 1, 1, 2, 3], 4), vec![vec![2, 3]]);
        assert!(compute_lk(&[2, 1, 6, 1, 2], 2).is_empty());
    }

    #[test]
    fn cyclic_basic_example() {
        let id = gen_cyclic_basic(&[2, 1, 6, 1, 2]).unwrap();
        assert_eq!(id.weight, 10);
        assert_eq!(id.lhs.len(), 6);
        assert_eq!(id.lhs.coeff(&w(&[12]), 0), int(-1));
        assert_eq!(id.lhs.coeff(&w(&[1, 6, 1, 2, 2]), 0), int(1));
        assert!(gen_cyclic_basic(&[1, 1, 2, 3, 3]).is_err());
        assert!(gen_cyclic_basic(&[1, 2, 3, 1]).is_err());
        assert!(gen_cyclic_basic(&[6]).is_err());
        assert!(gen_cyclic_basic(&[2, 2]).is_err());
    }

    #[test]
    fn full_reduces_to_basic_without_adjacent_ones() {
        for l in [vec![2, 1, 6, 1, 2], vec![3, 3, 4], vec![1, 2, 1, 3]] {
            let a = gen_cyclic_basic(&l).unwrap();
            let b = gen_cyclic_full(&l).unwrap();
            assert_eq!(a.lhs, b.lhs);
        }
    }

    #[test]
    fn full_correction_shape() {
        let id = gen_cyclic_full(&[1, 1, 2, 3]).unwrap();
        // -(-1) 2^3/4! pi^2 I_bl(2,3) on the left
        assert_eq!(id.lhs.coeff(&w(&[2, 3]), 2), rat(-1, 3));
        let s = gen_cyclic_full_symbolic(&[1, 1, 2, 3], ProductRule::Shuffle).unwrap();
        assert!(s.lhs.iter().all(|(_, e, _)| e == 0));
        // the two product rules agree after regularisation up to double shuffle
        let t = gen_cyclic_full_symbolic(&[1, 1, 2, 3], ProductRule::Stuffle).unwrap();
        assert_eq!(s.weight, t.weight);
    }

    #[test]
    fn symmetric_examples() {
        let id = gen_symmetric(&"(0; 2,2,2)".parse().unwrap()).unwrap();
        assert_eq!(id.lhs, LinComb::term(w(&[2, 2, 2])).scale(&int(6)));
        let id = gen_symmetric(&"(0; 2,4,4)".parse().unwrap()).unwrap();
        assert_eq!(id.lhs.len(), 3);
        assert!(kernel_report(&id.lhs).unwrap().vanishes);
        assert!(gen_symmetric(&"(0; 2,3)".parse().unwrap()).is_err());
    }

    #[test]
    fn hoffman_blocks_and_sign() {
        let id = gen_hoffman(0, 0, 2).unwrap();
        assert_eq!(id.weight, 10);
        assert_eq!(id.zeta_side.len(), 3);
        assert_eq!(id.rhs, Rhs::pi_over_factorial(int(-1), 10));
        let g = gen_general_hoffman(1, &[0, 0], 2).unwrap();
        assert_eq!(g.lhs, -id.lhs.clone());
        assert_eq!(gen_general_hoffman(2, &[0, 0, 0, 0], 0).unwrap().weight, 12);
    }

    #[test]
    fn hoffman_block_sum_is_cyclic() {
        let id = gen_hoffman(1, 0, 2).unwrap();
        let basic = gen_cyclic_basic(&[5, 3, 6]).unwrap();
        // zeta(3,3|..) = -I_bl(5,3,6) at depth 2 + b = 5
        let mut sum = id.lhs.clone();
        sum += &basic.lhs;
        let top = LinComb::term(w(&[14]));
        assert_eq!(sum, -top);
    }

    #[test]
    fn cyc123_rhs_signs() {
        let f: Zeta123Form = "z(1,3,3,3 | 0,0,0,0,0)".parse().unwrap();
        assert_eq!(gen_cyc123(&f).unwrap().rhs, Rhs::pi_over_factorial(int(-1), 10));
        let f: Zeta123Form = "z(1,3,3,(1,2) | 0,0,0,0,0)".parse().unwrap();
        assert_eq!(gen_cyc123(&f).unwrap().rhs, Rhs::pi_over_factorial(int(1), 10));
        let f: Zeta123Form = "z(1,3,3 | 0,1,0,0)".parse().unwrap();
        let id = gen_cyc123(&f).unwrap();
        assert!(id.rhs.is_zero());
        assert_eq!(id.zeta_side.len(), 4);
    }

    #[test]
    fn orbit_equals_block_cyclic_sum() {
        for wt in 2..=10 {
            for f in all_123_of_weight(wt) {
                let id = gen_cyc123(&f).unwrap();
                let d = f.depth() as i64;
                let lhs = if d % 2 == 0 { id.lhs.clone() } else { -id.lhs.clone() };
                let l = f.block_lengths();
                let mut cyc = LinComb::zero();
                for r in rotations(&l) {
                    cyc.add_coeff(w(&r), BigRational::one());
                }
                assert_eq!(lhs, cyc, "{f}");
                let exp = f.sign_exponent_from_a();
                let s = if wt % 2 == 1 {
                    0
                } else if exp % 2 == 0 {
                    1
                } else {
                    -1
                };
                assert_eq!(cyc_rhs_sign(&f), s, "{f}");
            }
        }
    }

    #[test]
    fn composition_sum_shapes() {
        let bb = gen_composition_sums(CompositionSum::BowmanBradley, 1, 1).unwrap();
        assert_eq!(bb.zeta_side.len(), 3);
        assert_eq!(bb.weight, 6);
        assert_eq!(bb.rhs, Rhs::pi_over_factorial(int(1), 6));
        let z = gen_composition_sums(CompositionSum::Z1333, 0, 2).unwrap();
        assert_eq!(z.rhs, Rhs::pi_over_factorial(int(-1), 10));
        let f = gen_composition_sums(CompositionSum::Further13332n, 4, 0).unwrap();
        assert_eq!(f.rhs, Rhs::pi_over_factorial(int(-5), 18));
        let s = gen_z13312_sym([0; 5]).unwrap();
        assert_eq!(s.rhs, Rhs::pi_over_factorial(int(-24), 10));
        let t = gen_z13312_lead(1).unwrap();
        assert_eq!((t.weight, t.zeta_side.len()), (12, 5));
        assert_eq!(t.rhs, Rhs::pi_over_factorial(int(1), 12));
    }

    #[test]
    fn altodd_even_shapes() {
        let id = gen_altodd_even(&[3, 3, 4]).unwrap();
        assert_eq!(id.lhs.len(), 2);
        assert!(gen_altodd_even(&[3, 4, 3]).unwrap().is_empty());
        assert!(gen_altodd_even(&[2, 3]).is_err());
    }

    #[test]
    fn altodd_odd_rows() {
        // rows for n = 2 written out by hand
        let (l1, l2, l3, l4, x) = (2, 3, 4, 5, 9);
        let id = gen_altodd_odd(&[l1, l2, l3, l4], x).unwrap();
        let mut e = LinComb::zero();
        let mut add = |v: &[usize], s: i64| e.add_coeff(w(v), int(s));
        for (a, c, s) in [(l1, l3, 1), (l3, l1, -1)] {
            add(&[x - l4, a, l4, c], -s);
            add(&[a, x - l4, l4, c], -s);
            add(&[a, l2, x - l2, c], s);
            add(&[a, l2, c, x - l2], s);
        }
        assert_eq!(id.lhs, e);
        assert_eq!(id.weight, 13);
        assert!(matches!(gen_altodd_odd(&[2, 3, 4, 5], 8), Err(Error::Constraint(_))));
        assert!(matches!(gen_altodd_odd(&[2, 9, 4, 5], 9), Err(Error::Constraint(_))));
    }

    #[test]
    fn double_alternation() {
        let id = gen_altodd_double(&[2, 3, 4, 6]).unwrap();
        assert_eq!(id.lhs.len(), 4);
        assert!(gen_altodd_double(&[2, 3, 4]).is_err());
    }
}
