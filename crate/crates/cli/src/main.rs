//! `blockzeta`: block decompositions, identity families, numerics and rank tables.

use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use blockzeta::derivation::kernel_report;
use blockzeta::identities::{self, GenParams, Identity};
use blockzeta::linear::parse_rational;
use blockzeta::numerics::verify::verify_with;
use blockzeta::numerics::{MzvEvaluator, Status};
use blockzeta::rank::{self, RankFamily};
use blockzeta::regularise::regularise;
use blockzeta::word::{mzv_to_word, BlockDecomposition, Word, ZetaComposition};
use blockzeta::{Error, LinComb};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "blockzeta", version, about = "Multiple zeta values through alternating blocks")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Latex,
}

#[derive(Args)]
struct Out {
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Subcommand)]
enum Cmd {
    /// Block decomposition of a word such as 0101001110101010
    Decompose {
        word: String,
        #[command(flatten)]
        out: Out,
    },
    /// Word of a block decomposition, given as "(0; 5,2,1,7)" or by --lengths
    Word {
        blocks: Option<String>,
        #[arg(long, value_delimiter = ',')]
        lengths: Option<Vec<usize>>,
        #[command(flatten)]
        out: Out,
    },
    /// Word, blocks and numerical value of an MZV such as z(2,3)
    Mzv {
        zeta: String,
        #[arg(long, default_value_t = 50)]
        digits: u32,
        #[command(flatten)]
        out: Out,
    },
    /// Regularise a combination of words, given as terms like 2*0010111, or JSON on stdin
    Regularise {
        terms: Vec<String>,
        #[command(flatten)]
        out: Out,
    },
    /// Generate an identity of one family
    Generate(GenerateArgs),
    /// Verify identities read as JSON from stdin or a file
    Verify {
        input: Option<PathBuf>,
        #[arg(long, default_value_t = 50)]
        digits: u32,
        #[arg(long)]
        jobs: Option<usize>,
        #[arg(long, default_value_t = default_max_den())]
        max_den: u64,
        #[command(flatten)]
        out: Out,
    },
    /// Apply the derivations D_r, r < N, and report whether everything vanishes
    Dkernel {
        terms: Vec<String>,
        #[command(flatten)]
        out: Out,
    },
    /// Rank of the chosen relation families in weight N
    Rank {
        #[arg(long)]
        weight: usize,
        #[arg(long, value_delimiter = ',', default_value = "cyclic,altodd,duality")]
        families: Vec<String>,
        #[arg(long)]
        jobs: Option<usize>,
        /// write the relation matrix as "row col value" lines
        #[arg(long)]
        export: Option<PathBuf>,
        #[command(flatten)]
        out: Out,
    },
    /// Rows of the rank table, for one weight or a range like 4-8
    Table {
        #[arg(long)]
        weight: String,
        #[arg(long)]
        jobs: Option<usize>,
        #[command(flatten)]
        out: Out,
    },
}

const fn default_max_den() -> u64 {
    blockzeta::numerics::verify::DEFAULT_MAX_DEN
}

#[derive(Args)]
struct GenerateArgs {
    /// symmetric, cyclic-basic, cyclic-full, bbbl, hoffman, general-hoffman, cyc123,
    /// altodd-even, altodd-odd, bowman-bradley, z1333-compsum, further-13332n,
    /// z13312-sym, z13312-lead
    family: String,
    #[arg(long, value_delimiter = ',')]
    lengths: Option<Vec<usize>>,
    #[arg(long, value_delimiter = ',')]
    b: Option<Vec<u32>>,
    #[arg(long)]
    m: Option<u32>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    x: Option<usize>,
    /// 123-MZV for cyc123, e.g. "z(1,3 | 0,0,1)"
    #[arg(long)]
    zeta: Option<String>,
    /// cyclic-full: expand the corrections as words with this product
    #[arg(long, value_parser = ["shuffle", "stuffle"])]
    symbolic: Option<String>,
    /// altodd-odd: the doubly alternated 4 or 6 block variant
    #[arg(long)]
    double: bool,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

enum Failure {
    Usage(String),
    Refuted,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Res<T> = std::result::Result<T, Failure>;

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut stdout = std::io::stdout().lock();
    match run(cli.cmd, &mut stdout) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Refuted) => ExitCode::from(1),
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
    }
}

fn emit(w: &mut impl Write, s: &str) -> Res<()> {
    writeln!(w, "{s}").map_err(|e| usage(e.to_string()))
}

fn pool(jobs: Option<usize>) -> Res<rayon::ThreadPool> {
    let mut b = rayon::ThreadPoolBuilder::new();
    if let Some(j) = jobs {
        if j == 0 {
            return Err(usage("--jobs must be positive"));
        }
        b = b.num_threads(j);
    }
    b.build().map_err(|e| usage(e.to_string()))
}

fn read_stdin() -> Res<String> {
    let mut s = String::new();
    std::io::stdin().read_to_string(&mut s).map_err(|e| usage(e.to_string()))?;
    Ok(s)
}

/// All JSON values in a stream: concatenated objects, JSON lines or arrays.
fn json_values(src: &str) -> Res<Vec<Value>> {
    let mut out = Vec::new();
    for v in serde_json::Deserializer::from_str(src).into_iter::<Value>() {
        match v.map_err(|e| usage(format!("bad JSON input: {e}")))? {
            Value::Array(a) => out.extend(a),
            v => out.push(v),
        }
    }
    Ok(out)
}

/// Terms like `0101`, `-3*0110` or `1/2*0011`.
fn parse_terms(terms: &[String]) -> Res<LinComb<Word>> {
    let mut c = LinComb::zero();
    for t in terms {
        let (coeff, w) = match t.rsplit_once('*') {
            Some((k, w)) => (parse_rational(k)?, w),
            None => match t.strip_prefix('-') {
                Some(w) => (parse_rational("-1")?, w),
                None => (parse_rational("1")?, t.as_str()),
            },
        };
        c.add_coeff(w.parse::<Word>()?, coeff);
    }
    Ok(c)
}

/// Words from arguments, else an identity (its left side) or a word combination on stdin.
fn words_input(terms: &[String]) -> Res<LinComb<Word>> {
    if !terms.is_empty() {
        return parse_terms(terms);
    }
    let vals = json_values(&read_stdin()?)?;
    let mut c = LinComb::zero();
    for v in &vals {
        if v.get("family").is_some() {
            c += &Identity::from_json(v)?.lhs;
        } else {
            c += &LinComb::<Word>::from_json(v)?;
        }
    }
    Ok(c)
}

fn blocks_json(b: &BlockDecomposition) -> Value {
    json!({
        "word": b.word().to_string(),
        "blocks": b.to_string(),
        "eps1": b.eps1(),
        "lengths": b.lengths(),
        "weight": b.weight(),
        "trivial": b.is_trivial(),
        "divergent": b.is_divergent(),
    })
}

fn blocks_latex(b: &BlockDecomposition) -> String {
    let l: Vec<String> = b.lengths().iter().map(|x| x.to_string()).collect();
    format!("I^{{\\mathfrak{{m}}}}_{{\\mathrm{{bl}}}}({})", l.join(","))
}

fn run(cmd: Cmd, w: &mut impl Write) -> Res<()> {
    match cmd {
        Cmd::Decompose { word, out } => {
            let b = word.parse::<Word>()?.blocks();
            match out.format {
                Format::Text => emit(w, &b.to_string()),
                Format::Json => emit(w, &blocks_json(&b).to_string()),
                Format::Latex => emit(w, &blocks_latex(&b)),
            }
        }
        Cmd::Word { blocks, lengths, out } => {
            let b = match (blocks, lengths) {
                (Some(s), None) => s.parse::<BlockDecomposition>()?,
                (None, Some(l)) => BlockDecomposition::from_lengths(&l)?,
                _ => return Err(usage("give either a block decomposition or --lengths")),
            };
            match out.format {
                Format::Text => emit(w, &b.word().to_string()),
                Format::Json => emit(w, &blocks_json(&b).to_string()),
                Format::Latex => emit(
                    w,
                    &format!(
                        "I^{{\\mathfrak{{m}}}}(0; {}; 1)",
                        b.word().interior().iter().map(|a| a.to_string()).collect::<Vec<_>>().join(",")
                    ),
                ),
            }
        }
        Cmd::Mzv { zeta, digits, out } => {
            let z: ZetaComposition = zeta.parse()?;
            let (word, sign) = mzv_to_word(&z)?;
            let ev = MzvEvaluator::from_env()?;
            let v = ev.eval_mzv(&z, digits)?;
            ev.save()?;
            let value = v.to_decimal(digits);
            let sign_s = if sign < 0 { "-" } else { "" };
            match out.format {
                Format::Text => {
                    emit(w, &format!("{z} = {sign_s}I({word}) = {sign_s}I_bl{}\n{z} = {value}", word.blocks()))
                }
                Format::Json => emit(
                    w,
                    &json!({"zeta": z.to_string(), "word": word.to_string(), "sign": sign,
                            "blocks": word.blocks().to_string(), "digits": digits, "value": value})
                    .to_string(),
                ),
                Format::Latex => emit(
                    w,
                    &format!(
                        "\\zeta({}) = {value}",
                        z.args().iter().map(|a| a.to_string()).collect::<Vec<_>>().join(",")
                    ),
                ),
            }
        }
        Cmd::Regularise { terms, out } => {
            let c = words_input(&terms)?;
            let r = regularise(&c)?;
            match out.format {
                Format::Text => emit(w, &r.to_string()),
                Format::Json => emit(w, &r.to_json().to_string()),
                Format::Latex => emit(w, &r.latex()),
            }
        }
        Cmd::Generate(g) => {
            let id = generate(&g)?;
            match g.format {
                Format::Text => emit(w, &id.text()),
                Format::Json => emit(w, &id.to_json().to_string()),
                Format::Latex => emit(w, &id.latex()),
            }
        }
        Cmd::Verify { input, digits, jobs, max_den, out } => {
            let src = match input {
                Some(p) => std::fs::read_to_string(&p).map_err(|e| usage(format!("{}: {e}", p.display())))?,
                None => read_stdin()?,
            };
            let ids = json_values(&src)?.iter().map(Identity::from_json).collect::<Result<Vec<_>, _>>()?;
            if ids.is_empty() {
                return Err(usage("no identities on input"));
            }
            let ev = MzvEvaluator::from_env()?;
            let reports = pool(jobs)?.install(|| {
                ids.par_iter().map(|id| verify_with(&ev, id, digits, max_den)).collect::<Result<Vec<_>, _>>()
            })?;
            ev.save()?;
            for r in &reports {
                match out.format {
                    Format::Json => emit(w, &r.to_json().to_string())?,
                    _ => emit(w, &r.text())?,
                }
            }
            if reports.iter().any(|r| r.status == Status::Refuted) {
                return Err(Failure::Refuted);
            }
            Ok(())
        }
        Cmd::Dkernel { terms, out } => {
            let c = words_input(&terms)?;
            let rep = kernel_report(&c)?;
            match out.format {
                Format::Text => {
                    emit(w, &rep.conclusion())?;
                    for (g, d) in &rep.residue {
                        emit(w, &format!("D_{g}: {d}"))?;
                    }
                    Ok(())
                }
                Format::Json => emit(w, &rep.to_json().to_string()),
                Format::Latex => emit(w, &rep.latex()),
            }
        }
        Cmd::Rank { weight, families, jobs, export, out } => {
            let fams = families.iter().map(|f| f.parse::<RankFamily>()).collect::<Result<Vec<_>, _>>()?;
            let p = pool(jobs)?;
            let row = p.install(|| rank::table_row_for(weight, &fams))?;
            if let Some(path) = export {
                let mut rows = Vec::new();
                for &f in &fams {
                    rows.extend(p.install(|| rank::family_rows(weight, f))?);
                }
                let mut s = String::new();
                for (i, j, v) in rank::triplets(&rows) {
                    s.push_str(&format!("{i} {j} {v}\n"));
                }
                std::fs::write(&path, s).map_err(|e| usage(format!("{}: {e}", path.display())))?;
            }
            table_out(w, &[row], out.format)
        }
        Cmd::Table { weight, jobs, out } => {
            let (lo, hi) = match weight.split_once('-') {
                Some((a, b)) => (a.trim().parse(), b.trim().parse()),
                None => (weight.trim().parse(), weight.trim().parse()),
            };
            let (Ok(lo), Ok(hi)) = (lo, hi) else {
                return Err(usage(format!("bad weight '{weight}'")));
            };
            let p = pool(jobs)?;
            let rows = (lo..=hi).map(|n| p.install(|| rank::table_row(n))).collect::<Result<Vec<_>, _>>()?;
            table_out(w, &rows, out.format)
        }
    }
}

fn table_out(w: &mut impl Write, rows: &[rank::TableRow], f: Format) -> Res<()> {
    for r in rows {
        match f {
            Format::Json => emit(w, &r.to_json().to_string())?,
            Format::Text => emit(w, &r.text())?,
            Format::Latex => {
                let mut cells = vec![r.weight.to_string()];
                for c in r.families.values() {
                    cells.push(c.init.to_string());
                    cells.push(c.rank.to_string());
                }
                cells.push(r.overall.to_string());
                cells.push(r.expected.to_string());
                emit(w, &format!("{} \\\\", cells.join(" & ")))?;
            }
        }
    }
    Ok(())
}

fn generate(g: &GenerateArgs) -> Res<Identity> {
    let p = GenParams {
        lengths: g.lengths.clone(),
        b: g.b.clone(),
        m: g.m,
        n: g.n,
        x: g.x,
        zeta: g.zeta.clone(),
        symbolic: g.symbolic.clone(),
        double: g.double,
    };
    Ok(identities::generate(&g.family, &p)?)
}
