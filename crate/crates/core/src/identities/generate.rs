//! Generation by family name, shared by the front ends.

use super::families::*;
use super::{Family, Identity, Zeta123Form};
use crate::error::{Error, Result};
use crate::word::BlockDecomposition;

/// Parameters of a family; each family reads the ones it needs.
#[derive(Clone, Debug, Default)]
pub struct GenParams {
    pub lengths: Option<Vec<usize>>,
    pub b: Option<Vec<u32>>,
    pub m: Option<u32>,
    pub n: Option<usize>,
    pub x: Option<usize>,
    /// a 123-MZV such as `z(1,3 | 0,0,1)`
    pub zeta: Option<String>,
    /// `shuffle` or `stuffle`: expand the cyclic corrections as words
    pub symbolic: Option<String>,
    /// doubly alternated variant of `altodd-odd`
    pub double: bool,
}

fn need<T: Clone>(v: &Option<T>, flag: &str, family: &str) -> Result<T> {
    v.clone().ok_or_else(|| Error::Invalid(format!("{family} needs {flag}")))
}

/// Family names are the tags of [`Family`] plus `further-13332n`.
pub fn generate(family: &str, p: &GenParams) -> Result<Identity> {
    let lengths = || need(&p.lengths, "lengths", family);
    let b = || need(&p.b, "b", family);
    let m = || need(&p.m, "m", family);
    if family == "further-13332n" {
        return gen_composition_sums(CompositionSum::Further13332n, m()?, 0);
    }
    match family.parse::<Family>()? {
        Family::Symmetric => gen_symmetric(&BlockDecomposition::from_lengths(&lengths()?)?),
        Family::CyclicBasic => gen_cyclic_basic(&lengths()?),
        Family::CyclicFull => match p.symbolic.as_deref() {
            None => gen_cyclic_full(&lengths()?),
            Some("shuffle") => gen_cyclic_full_symbolic(&lengths()?, ProductRule::Shuffle),
            Some("stuffle") => gen_cyclic_full_symbolic(&lengths()?, ProductRule::Stuffle),
            Some(s) => Err(Error::Invalid(format!("unknown product rule '{s}'"))),
        },
        Family::Bbbl => gen_bbbl(&b()?),
        Family::Hoffman => match (&p.b, p.m) {
            (Some(b), None) if b.len() == 3 => gen_hoffman(b[0], b[1], b[2]),
            (None, Some(m)) => gen_hoffman(0, 0, m),
            _ => Err(Error::Invalid("hoffman needs b = b1,b2,b3 or m".into())),
        },
        Family::GeneralHoffman => {
            let n = need(&p.n, "n", family)?;
            let b = b()?;
            if b.len() != 2 * n + 1 {
                return Err(Error::Invalid(format!(
                    "general-hoffman needs {} values in b: b1..b{} then c",
                    2 * n + 1,
                    2 * n
                )));
            }
            gen_general_hoffman(n, &b[..2 * n], b[2 * n])
        }
        Family::Cyc123 => gen_cyc123(&need(&p.zeta, "zeta", family)?.parse::<Zeta123Form>()?),
        Family::AltoddEven => gen_altodd_even(&lengths()?),
        Family::AltoddOdd if p.double => gen_altodd_double(&lengths()?),
        Family::AltoddOdd => gen_altodd_odd(&lengths()?, need(&p.x, "x", family)?),
        Family::BowmanBradley => gen_composition_sums(CompositionSum::BowmanBradley, m()?, need(&p.n, "n", family)?),
        Family::Z1333Compsum => gen_composition_sums(CompositionSum::Z1333, m()?, need(&p.n, "n", family)?),
        Family::Z13312Sym => {
            let b: [u32; 5] = b()?.try_into().map_err(|_| Error::Invalid("z13312-sym needs 5 values in b".into()))?;
            gen_z13312_sym(b)
        }
        Family::Z13312Lead => gen_z13312_lead(m()?),
    }
}
