use clap::{Parser, Subcommand, ValueEnum};
use hopfmi::algebra::{bilinear_extend, LinComb, Rational};
use hopfmi::alphabet::{Alphabet, Decoration};
use hopfmi::bseries::{bseries_truncated, CoeffMap, FieldFamily, Poly};
use hopfmi::error::AlgebraError;
use hopfmi::fertility::{jmath_lin, phi_forest, verify_identity, IdentityName, PhiFibers};
use hopfmi::forests::{
    coproduct_bck, coproduct_bck_iterated, forest_cuts, gl_forest, graft, Enumerator, Forest,
};
use hopfmi::hopflot::{
    antipode, coproduct_lot_iterated, coproduct_lot_lin, gl_bags, lbar, LotElement,
};
use hopfmi::multiindex::{enumerate_monomials, mi_admissible_cuts, MonomialBag, MultiIndex};
use hopfmi_cli::cache::{self, LoadStatus};
use hopfmi_cli::error::CliError;
use hopfmi_cli::output::{format_monomial, OutputDoc};
use hopfmi_cli::parse::{parse, parse_poly, parse_rational_str, ExprValue, Sort};
use num_traits::One;
use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "hopfmi",
    version,
    about = "Exact computer algebra for the Hopf algebras of decorated multi-indices and decorated rooted forests"
)]
struct Cli {
    /// Decoration alphabet: comma-separated lowercase letters
    #[arg(long, global = true, default_value = "a")]
    alphabet: String,

    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Fertility-fiber cache file
    #[arg(long, global = true, env = "HOPFMI_CACHE")]
    cache: Option<PathBuf>,

    /// Seed for randomized property checks. The named identity checks are
    /// exhaustive and deterministic; the flag is accepted for
    /// reproducibility of any sampled workflow built on top.
    #[arg(long, global = true)]
    seed: Option<u64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum, PartialEq, Eq)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum AlgebraKind {
    /// the multi-index Hopf algebra
    Lot,
    /// the rooted-forest Hopf algebra
    Bck,
}

#[derive(Clone, Copy, ValueEnum)]
enum ProductOp {
    /// Grossman-Larson product
    Gl,
    /// pre-Lie grafting of trees
    Graft,
    /// commutative product of the symmetric algebra
    Odot,
}

#[derive(Clone, Copy, ValueEnum)]
enum SortArg {
    Multiindex,
    Bag,
    Tree,
    Forest,
}

impl From<SortArg> for Sort {
    fn from(s: SortArg) -> Sort {
        match s {
            SortArg::Multiindex => Sort::MultiIndex,
            SortArg::Bag => Sort::Bag,
            SortArg::Tree => Sort::Tree,
            SortArg::Forest => Sort::Forest,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum What {
    Trees,
    Forests,
    Monomials,
}

#[derive(Subcommand)]
enum Command {
    /// Coproduct in the chosen Hopf algebra
    Coproduct {
        #[arg(long, value_enum)]
        algebra: AlgebraKind,
        /// Tensor order (2..=5)
        #[arg(long, default_value_t = 2)]
        order: usize,
        expr: String,
    },
    /// Bilinear products
    Product {
        #[arg(long, value_enum)]
        op: ProductOp,
        /// Sort of the operands (defaults: gl/odot on bags, graft on trees)
        #[arg(long, value_enum)]
        sort: Option<SortArg>,
        left: String,
        right: String,
    },
    /// Embedding of bags into forests
    Embed { expr: String },
    /// Fertility map on forests
    Phi { expr: String },
    /// Antipode of the multi-index Hopf algebra
    Antipode { expr: String },
    /// Transposed mock-cocycle on weight -1 monomials
    Lbar {
        #[arg(long)]
        decoration: char,
        expr: String,
    },
    /// Admissible cuts of one basis element
    Cuts {
        #[arg(long, value_enum)]
        algebra: AlgebraKind,
        expr: String,
    },
    /// Basis enumeration by exact degree
    Enumerate {
        #[arg(long, value_enum)]
        what: What,
        #[arg(long)]
        degree: usize,
    },
    /// Truncated B-series for a polynomial vector field family
    Bseries {
        /// JSON file with {"default": "p/q", "entries": {"<monomial>": "p/q"}}
        #[arg(long)]
        alpha: PathBuf,
        /// Field spec `a=1+y^2,b=y`, or a bare polynomial for a singleton alphabet
        #[arg(long)]
        field: String,
        #[arg(long)]
        degree: usize,
    },
    /// Exhaustive identity verification
    Verify {
        /// Identity name or `all`
        #[arg(long)]
        identity: String,
        #[arg(long)]
        degree: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn parse_alphabet(spec: &str) -> Result<Alphabet, CliError> {
    let mut symbols = Vec::new();
    for part in spec.split(',') {
        let part = part.trim();
        let mut chars = part.chars();
        match (chars.next(), chars.next()) {
            (Some(c), None) => symbols.push(c),
            _ => {
                return Err(CliError::Alphabet(format!(
                    "alphabet entries are single letters, got {part:?}"
                )))
            }
        }
    }
    Alphabet::new(symbols).map_err(|e| CliError::Alphabet(e.to_string()))
}

fn run(cli: Cli) -> Result<ExitCode, CliError> {
    let alphabet = parse_alphabet(&cli.alphabet)?;
    let fibers = PhiFibers::new();
    let mut foreign_cache = false;
    if let Some(path) = &cli.cache {
        match cache::load(path, &alphabet, &fibers)? {
            LoadStatus::Skipped(reason) => {
                eprintln!("warning: ignoring cache {}: {reason}", path.display());
                foreign_cache = true;
            }
            LoadStatus::Missing | LoadStatus::Loaded(_) => {}
        }
    }

    let (doc, status) = dispatch(&cli.command, &alphabet, &fibers)?;

    match cli.format {
        Format::Text => println!("{}", doc.to_text(&alphabet)),
        Format::Json => println!(
            "{}",
            serde_json::to_string_pretty(&doc.to_json(&alphabet)).expect("serializable")
        ),
    }

    // a cache belonging to another alphabet or generator version is left
    // untouched
    if let Some(path) = &cli.cache {
        if !foreign_cache && !fibers.is_empty() {
            cache::save(path, &alphabet, &fibers)?;
        }
    }
    Ok(status)
}

fn dispatch(
    command: &Command,
    alphabet: &Alphabet,
    fibers: &PhiFibers,
) -> Result<(OutputDoc, ExitCode), CliError> {
    let ok = ExitCode::SUCCESS;
    match command {
        Command::Coproduct {
            algebra,
            order,
            expr,
        } => {
            if !(2..=5).contains(order) {
                return Err(CliError::Usage(format!(
                    "--order must be between 2 and 5, got {order}"
                )));
            }
            let doc = match algebra {
                AlgebraKind::Lot => {
                    let x = expect_bag(parse(expr, Sort::Bag, alphabet)?)?;
                    if *order == 2 {
                        OutputDoc::tensor2_bag(&coproduct_lot_lin(&x)?)
                    } else {
                        let mut out = LinComb::zero();
                        for (b, c) in x.iter() {
                            out = out.combine(&coproduct_lot_iterated(b, *order)?, c);
                        }
                        OutputDoc::TensorBag(out)
                    }
                }
                AlgebraKind::Bck => {
                    let x = expect_forest(parse(expr, Sort::Forest, alphabet)?)?;
                    if *order == 2 {
                        OutputDoc::tensor2_forest(&x.linear_map(coproduct_bck))
                    } else {
                        let mut out = LinComb::zero();
                        for (f, c) in x.iter() {
                            out = out.combine(&coproduct_bck_iterated(f, *order), c);
                        }
                        OutputDoc::TensorForest(out)
                    }
                }
            };
            Ok((doc, ok))
        }
        Command::Product {
            op,
            sort,
            left,
            right,
        } => {
            let sort: Sort = sort.map(Sort::from).unwrap_or(match op {
                ProductOp::Graft => Sort::Tree,
                _ => Sort::Bag,
            });
            let doc = match (op, sort) {
                (ProductOp::Gl, Sort::Bag) => {
                    let x = expect_bag(parse(left, Sort::Bag, alphabet)?)?;
                    let y = expect_bag(parse(right, Sort::Bag, alphabet)?)?;
                    OutputDoc::Lin(ExprValue::Bag(bilinear_extend(gl_bags, &x, &y)))
                }
                (ProductOp::Gl, Sort::Forest) => {
                    let x = expect_forest(parse(left, Sort::Forest, alphabet)?)?;
                    let y = expect_forest(parse(right, Sort::Forest, alphabet)?)?;
                    OutputDoc::Lin(ExprValue::Forest(bilinear_extend(
                        gl_forest,
                        &x,
                        &y,
                    )))
                }
                (ProductOp::Graft, Sort::Tree) => {
                    let x = expect_tree(parse(left, Sort::Tree, alphabet)?)?;
                    let y = expect_tree(parse(right, Sort::Tree, alphabet)?)?;
                    OutputDoc::Lin(ExprValue::Tree(bilinear_extend(graft, &x, &y)))
                }
                (ProductOp::Odot, Sort::Bag) => {
                    let x = expect_bag(parse(left, Sort::Bag, alphabet)?)?;
                    let y = expect_bag(parse(right, Sort::Bag, alphabet)?)?;
                    OutputDoc::Lin(ExprValue::Bag(bilinear_extend(
                        |a: &MonomialBag, b: &MonomialBag| LinComb::basis(a.odot(b)),
                        &x,
                        &y,
                    )))
                }
                (ProductOp::Odot, Sort::Forest) => {
                    let x = expect_forest(parse(left, Sort::Forest, alphabet)?)?;
                    let y = expect_forest(parse(right, Sort::Forest, alphabet)?)?;
                    OutputDoc::Lin(ExprValue::Forest(bilinear_extend(
                        |a: &Forest, b: &Forest| LinComb::basis(a.union(b)),
                        &x,
                        &y,
                    )))
                }
                _ => {
                    return Err(CliError::Sort(format!(
                        "this product does not apply to sort {}",
                        sort.as_str()
                    )))
                }
            };
            Ok((doc, ok))
        }
        Command::Embed { expr } => {
            let x = expect_bag(parse(expr, Sort::Bag, alphabet)?)?;
            let embedded = jmath_lin(&x, fibers)?;
            Ok((OutputDoc::Lin(ExprValue::Forest(embedded)), ok))
        }
        Command::Phi { expr } => {
            let x = expect_forest(parse(expr, Sort::Forest, alphabet)?)?;
            Ok((OutputDoc::Lin(ExprValue::Bag(x.map_basis(phi_forest))), ok))
        }
        Command::Antipode { expr } => {
            let x = expect_bag(parse(expr, Sort::Bag, alphabet)?)?;
            Ok((OutputDoc::Lin(ExprValue::Bag(antipode(&x))), ok))
        }
        Command::Lbar { decoration, expr } => {
            let d = Decoration::new(*decoration).map_err(|e| CliError::Alphabet(e.to_string()))?;
            if !alphabet.contains(d) {
                return Err(CliError::Alphabet(format!(
                    "decoration {decoration:?} is not in the alphabet {{{alphabet}}}"
                )));
            }
            let x = expect_multiindex(parse(expr, Sort::MultiIndex, alphabet)?)?;
            let out: LotElement = x.try_linear_map(|k| lbar(k, d))?;
            Ok((OutputDoc::Lin(ExprValue::Bag(out)), ok))
        }
        Command::Cuts { algebra, expr } => {
            let doc = match algebra {
                AlgebraKind::Lot => {
                    let x = expect_multiindex(parse(expr, Sort::MultiIndex, alphabet)?)?;
                    let k = single_basis(&x, "a single monomial")?;
                    OutputDoc::CutsLot(mi_admissible_cuts(&k)?)
                }
                AlgebraKind::Bck => {
                    let x = expect_forest(parse(expr, Sort::Forest, alphabet)?)?;
                    let f = single_basis(&x, "a single forest")?;
                    let mut counts: BTreeMap<(Forest, Forest), u64> = BTreeMap::new();
                    for cut in forest_cuts(&f) {
                        *counts.entry((cut.pruning, cut.trunk)).or_insert(0) += 1;
                    }
                    OutputDoc::CutsBck(counts.into_iter().map(|((p, t), n)| (p, t, n)).collect())
                }
            };
            Ok((doc, ok))
        }
        Command::Enumerate { what, degree } => {
            let doc = match what {
                What::Trees => {
                    let mut en = Enumerator::new(alphabet.clone());
                    OutputDoc::Items {
                        sort: "tree",
                        items: en.trees(*degree)?.iter().map(|t| t.to_string()).collect(),
                    }
                }
                What::Forests => {
                    let mut en = Enumerator::new(alphabet.clone());
                    OutputDoc::Items {
                        sort: "forest",
                        items: en.forests(*degree)?.iter().map(|f| f.to_string()).collect(),
                    }
                }
                What::Monomials => {
                    if *degree > hopfmi::forests::DEFAULT_ENUMERATION_BOUND {
                        return Err(CliError::Algebra(AlgebraError::Bound {
                            requested: *degree,
                            bound: hopfmi::forests::DEFAULT_ENUMERATION_BOUND,
                        }));
                    }
                    OutputDoc::Items {
                        sort: "multiindex",
                        items: enumerate_monomials(*degree, alphabet)
                            .iter()
                            .map(|k| format_monomial(k, alphabet))
                            .collect(),
                    }
                }
            };
            Ok((doc, ok))
        }
        Command::Bseries {
            alpha,
            field,
            degree,
        } => {
            let alpha = read_coeff_map(alpha, alphabet)?;
            let field = parse_field_spec(field, alphabet)?;
            let poly = bseries_truncated(&alpha, &field, *degree, alphabet)?;
            Ok((OutputDoc::Poly(poly), ok))
        }
        Command::Verify { identity, degree } => {
            let names: Vec<IdentityName> = if identity == "all" {
                IdentityName::ALL.to_vec()
            } else {
                vec![identity.parse::<IdentityName>().map_err(CliError::Usage)?]
            };
            let mut reports = Vec::new();
            for name in names {
                reports.push(verify_identity(name, *degree, alphabet, fibers)?);
            }
            let all_pass = reports.iter().all(|r| r.passed());
            let status = if all_pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            };
            Ok((OutputDoc::Verify(reports), status))
        }
    }
}

fn expect_bag(v: ExprValue) -> Result<LinComb<MonomialBag>, CliError> {
    match v {
        ExprValue::Bag(x) => Ok(x),
        other => Err(sort_mismatch("bag", &other)),
    }
}

fn expect_forest(v: ExprValue) -> Result<LinComb<Forest>, CliError> {
    match v {
        ExprValue::Forest(x) => Ok(x),
        other => Err(sort_mismatch("forest", &other)),
    }
}

fn expect_tree(v: ExprValue) -> Result<LinComb<hopfmi::forests::Tree>, CliError> {
    match v {
        ExprValue::Tree(x) => Ok(x),
        other => Err(sort_mismatch("tree", &other)),
    }
}

fn expect_multiindex(v: ExprValue) -> Result<LinComb<MultiIndex>, CliError> {
    match v {
        ExprValue::MultiIndex(x) => Ok(x),
        other => Err(sort_mismatch("multiindex", &other)),
    }
}

fn sort_mismatch(wanted: &str, got: &ExprValue) -> CliError {
    CliError::Sort(format!(
        "expected a {wanted} expression, got sort {}",
        got.sort().as_str()
    ))
}

fn single_basis<B: Ord + Clone>(x: &LinComb<B>, what: &str) -> Result<B, CliError> {
    if x.num_terms() == 1 {
        let (b, c) = x
            .iter()
            .next()
            .map(|(b, c)| (b.clone(), c.clone()))
            .unwrap();
        if c.is_one() {
            return Ok(b);
        }
    }
    Err(CliError::Sort(format!(
        "expected {what} with coefficient 1"
    )))
}

fn read_coeff_map(path: &PathBuf, alphabet: &Alphabet) -> Result<CoeffMap, CliError> {
    let text = std::fs::read_to_string(path)?;
    let value: serde_json::Value = serde_json::from_str(&text)
        .map_err(|e| CliError::Usage(format!("--alpha {}: {e}", path.display())))?;
    let default = match value.get("default") {
        Some(v) => parse_rational_str(v.as_str().ok_or_else(|| {
            CliError::Usage("--alpha: \"default\" must be a rational string".into())
        })?)?,
        None => Rational::from_integer(0.into()),
    };
    let mut entries = Vec::new();
    if let Some(map) = value.get("entries") {
        let map = map
            .as_object()
            .ok_or_else(|| CliError::Usage("--alpha: \"entries\" must be an object".into()))?;
        for (key, coeff) in map {
            let x = expect_multiindex(parse(key, Sort::MultiIndex, alphabet)?)?;
            let k = single_basis(&x, "a single monomial key")?;
            let c = parse_rational_str(coeff.as_str().ok_or_else(|| {
                CliError::Usage("--alpha: coefficients must be rational strings".into())
            })?)?;
            entries.push((k, c));
        }
    }
    CoeffMap::new(default, entries).map_err(CliError::Algebra)
}

fn parse_field_spec(spec: &str, alphabet: &Alphabet) -> Result<FieldFamily, CliError> {
    if !spec.contains('=') {
        if !alphabet.is_singleton() {
            return Err(CliError::Usage(
                "--field must name every decoration (a=...,b=...) unless the alphabet is a singleton"
                    .into(),
            ));
        }
        let poly = parse_poly(spec)?;
        return Ok(FieldFamily::uniform(poly, alphabet));
    }
    let mut entries: Vec<(Decoration, Poly)> = Vec::new();
    for part in spec.split(',') {
        let (d, p) = part.split_once('=').ok_or_else(|| {
            CliError::Usage(format!("--field entry {part:?} is not of the form d=poly"))
        })?;
        let d = d.trim();
        let mut chars = d.chars();
        let sym = match (chars.next(), chars.next()) {
            (Some(c), None) => c,
            _ => {
                return Err(CliError::Usage(format!(
                    "--field decoration {d:?} is not a single letter"
                )))
            }
        };
        let dec = Decoration::new(sym).map_err(|e| CliError::Alphabet(e.to_string()))?;
        if !alphabet.contains(dec) {
            return Err(CliError::Alphabet(format!(
                "decoration {sym:?} is not in the alphabet {{{alphabet}}}"
            )));
        }
        entries.push((dec, parse_poly(p)?));
    }
    FieldFamily::new(entries, alphabet).map_err(CliError::Algebra)
}
