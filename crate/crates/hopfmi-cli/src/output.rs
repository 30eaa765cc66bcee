//! Canonical text and JSON rendering of values, and the JSON parse-back
//! used by the round-trip tests. Term order always follows the total order
//! on basis elements, so output is byte-identical across runs.

use crate::error::CliError;
use crate::parse::{parse, parse_rational_str, ExprValue, Sort};
use hopfmi::algebra::{LinComb, Rational, Tensor2, TensorN};
use hopfmi::alphabet::Alphabet;
use hopfmi::bseries::Poly;
use hopfmi::fertility::VerifyReport;
use hopfmi::forests::Forest;
use hopfmi::multiindex::{MICut, MonomialBag, MultiIndex};
use num_traits::{One, Signed};
use serde_json::{json, Value};

pub fn format_rational(c: &Rational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

/// Text form of a monomial, with the decoration omitted for singleton
/// alphabets.
pub fn format_monomial(k: &MultiIndex, alphabet: &Alphabet) -> String {
    if k.is_unit() {
        return "1".into();
    }
    let singleton = alphabet.is_singleton();
    let mut out = String::new();
    for (d, j, m) in k.entries() {
        if !out.is_empty() {
            out.push(' ');
        }
        if singleton {
            out.push_str(&format!("x{{{j}}}"));
        } else {
            out.push_str(&format!("x{{{d},{j}}}"));
        }
        if m != 1 {
            out.push_str(&format!("^{m}"));
        }
    }
    out
}

pub fn format_bag(b: &MonomialBag, alphabet: &Alphabet) -> String {
    if b.is_unit() {
        return "1".into();
    }
    b.factors()
        .iter_elements()
        .map(|m| format_monomial(m, alphabet))
        .collect::<Vec<_>>()
        .join(" (.) ")
}

pub fn format_basis(v: &ExprValue, alphabet: &Alphabet) -> Vec<(String, Rational)> {
    match v {
        ExprValue::MultiIndex(x) => x
            .iter()
            .map(|(b, c)| (format_monomial(b, alphabet), c.clone()))
            .collect(),
        ExprValue::Bag(x) => x
            .iter()
            .map(|(b, c)| (format_bag(b, alphabet), c.clone()))
            .collect(),
        ExprValue::Tree(x) => x.iter().map(|(b, c)| (b.to_string(), c.clone())).collect(),
        ExprValue::Forest(x) => x.iter().map(|(b, c)| (b.to_string(), c.clone())).collect(),
    }
}

fn join_terms(terms: &[(String, Rational)]) -> String {
    if terms.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, (basis, coeff)) in terms.iter().enumerate() {
        let negative = coeff.is_negative();
        let abs = if negative { -coeff.clone() } else { coeff.clone() };
        if i == 0 {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        if !abs.is_one() {
            out.push_str(&format_rational(&abs));
            out.push(' ');
        }
        out.push_str(basis);
    }
    out
}

/// A renderable result: a linear combination, a tensor, a cut list, an
/// enumeration, a polynomial, or a verification report.
pub enum OutputDoc {
    Lin(ExprValue),
    TensorBag(TensorN<MonomialBag>),
    TensorForest(TensorN<Forest>),
    CutsLot(Vec<MICut>),
    CutsBck(Vec<(Forest, Forest, u64)>),
    Items {
        sort: &'static str,
        items: Vec<String>,
    },
    Poly(Poly),
    Verify(Vec<VerifyReport>),
}

impl OutputDoc {
    /// Wraps a two-leg bag tensor.
    pub fn tensor2_bag(t: &Tensor2<MonomialBag, MonomialBag>) -> Self {
        OutputDoc::TensorBag(t.map_basis(|(l, r)| vec![l.clone(), r.clone()]))
    }

    pub fn tensor2_forest(t: &Tensor2<Forest, Forest>) -> Self {
        OutputDoc::TensorForest(t.map_basis(|(l, r)| vec![l.clone(), r.clone()]))
    }

    pub fn to_text(&self, alphabet: &Alphabet) -> String {
        match self {
            OutputDoc::Lin(v) => join_terms(&format_basis(v, alphabet)),
            OutputDoc::TensorBag(t) => {
                let terms: Vec<(String, Rational)> = t
                    .iter()
                    .map(|(legs, c)| {
                        (
                            legs.iter()
                                .map(|b| format_bag(b, alphabet))
                                .collect::<Vec<_>>()
                                .join(" ⊗ "),
                            c.clone(),
                        )
                    })
                    .collect();
                join_terms(&terms)
            }
            OutputDoc::TensorForest(t) => {
                let terms: Vec<(String, Rational)> = t
                    .iter()
                    .map(|(legs, c)| {
                        (
                            legs.iter()
                                .map(|f| f.to_string())
                                .collect::<Vec<_>>()
                                .join(" ⊗ "),
                            c.clone(),
                        )
                    })
                    .collect();
                join_terms(&terms)
            }
            OutputDoc::CutsLot(cuts) => cuts
                .iter()
                .map(|c| {
                    format!(
                        "bag={} remainder={} r={} multiplicity={}",
                        format_bag(&c.bag, alphabet),
                        format_monomial(&c.remainder, alphabet),
                        c.r,
                        c.multiplicity
                    )
                })
                .collect::<Vec<_>>()
                .join("\n"),
            OutputDoc::CutsBck(cuts) => cuts
                .iter()
                .map(|(p, t, n)| format!("pruning={p} trunk={t} count={n}"))
                .collect::<Vec<_>>()
                .join("\n"),
            OutputDoc::Items { items, .. } => items.join("\n"),
            OutputDoc::Poly(p) => p.to_string(),
            OutputDoc::Verify(reports) => reports
                .iter()
                .map(|r| r.to_string())
                .collect::<Vec<_>>()
                .join("\n"),
        }
    }

    pub fn to_json(&self, alphabet: &Alphabet) -> Value {
        match self {
            OutputDoc::Lin(v) => {
                let terms: Vec<Value> = format_basis(v, alphabet)
                    .into_iter()
                    .map(|(key, coeff)| json!({"coeff": format_rational(&coeff), "key": key}))
                    .collect();
                json!({"sort": v.sort().as_str(), "terms": terms})
            }
            OutputDoc::TensorBag(t) => tensor_json(t, "bag", |b| format_bag(b, alphabet)),
            OutputDoc::TensorForest(t) => tensor_json(t, "forest", |f| f.to_string()),
            OutputDoc::CutsLot(cuts) => {
                let items: Vec<Value> = cuts
                    .iter()
                    .map(|c| {
                        json!({
                            "bag": format_bag(&c.bag, alphabet),
                            "remainder": format_monomial(&c.remainder, alphabet),
                            "r": c.r,
                            "multiplicity": c.multiplicity.to_string(),
                        })
                    })
                    .collect();
                json!({"sort": "cuts-lot", "cuts": items})
            }
            OutputDoc::CutsBck(cuts) => {
                let items: Vec<Value> = cuts
                    .iter()
                    .map(|(p, t, n)| {
                        json!({"pruning": p.to_string(), "trunk": t.to_string(), "count": n})
                    })
                    .collect();
                json!({"sort": "cuts-bck", "cuts": items})
            }
            OutputDoc::Items { sort, items } => json!({"sort": sort, "items": items}),
            OutputDoc::Poly(p) => {
                let coeffs: Vec<String> = p.coeffs().iter().map(format_rational).collect();
                json!({"sort": "poly", "coeffs": coeffs})
            }
            OutputDoc::Verify(reports) => {
                let items: Vec<Value> = reports
                    .iter()
                    .map(|r| {
                        json!({
                            "identity": r.identity.as_str(),
                            "degree": r.max_degree,
                            "alphabet": r.alphabet.to_string(),
                            "cases": r.cases,
                            "failures": r.failures,
                            "pass": r.passed(),
                            "elapsed_ms": r.elapsed.as_millis() as u64,
                        })
                    })
                    .collect();
                json!({
                    "sort": "verify",
                    "pass": reports.iter().all(|r| r.passed()),
                    "reports": items,
                })
            }
        }
    }
}

fn tensor_json<B: Ord + Clone>(
    t: &TensorN<B>,
    sort: &str,
    fmt: impl Fn(&B) -> String,
) -> Value {
    let terms: Vec<Value> = t
        .iter()
        .map(|(legs, c)| {
            let coeff = format_rational(c);
            match legs.len() {
                2 => json!({"coeff": coeff, "key": fmt(&legs[0]), "right": fmt(&legs[1])}),
                _ => json!({
                    "coeff": coeff,
                    "legs": legs.iter().map(&fmt).collect::<Vec<_>>(),
                }),
            }
        })
        .collect();
    json!({"sort": sort, "terms": terms})
}

/// Rebuilds a linear combination from its JSON document.
pub fn parse_json_lincomb(doc: &Value, alphabet: &Alphabet) -> Result<ExprValue, CliError> {
    let sort = match doc.get("sort").and_then(Value::as_str) {
        Some("multiindex") => Sort::MultiIndex,
        Some("bag") => Sort::Bag,
        Some("tree") => Sort::Tree,
        Some("forest") => Sort::Forest,
        other => return Err(CliError::Sort(format!("unsupported sort {other:?}"))),
    };
    let terms = doc
        .get("terms")
        .and_then(Value::as_array)
        .ok_or_else(|| CliError::Sort("missing terms array".into()))?;
    let mut acc = match sort {
        Sort::MultiIndex => ExprValue::MultiIndex(LinComb::zero()),
        Sort::Bag => ExprValue::Bag(LinComb::zero()),
        Sort::Tree => ExprValue::Tree(LinComb::zero()),
        Sort::Forest => ExprValue::Forest(LinComb::zero()),
    };
    for term in terms {
        let coeff = parse_rational_str(
            term.get("coeff")
                .and_then(Value::as_str)
                .ok_or_else(|| CliError::Sort("term without coeff".into()))?,
        )?;
        let key = term
            .get("key")
            .and_then(Value::as_str)
            .ok_or_else(|| CliError::Sort("term without key".into()))?;
        let parsed = parse(key, sort, alphabet)?;
        match (&mut acc, parsed) {
            (ExprValue::MultiIndex(a), ExprValue::MultiIndex(x)) => {
                *a = a.combine(&x, &coeff);
            }
            (ExprValue::Bag(a), ExprValue::Bag(x)) => *a = a.combine(&x, &coeff),
            (ExprValue::Tree(a), ExprValue::Tree(x)) => *a = a.combine(&x, &coeff),
            (ExprValue::Forest(a), ExprValue::Forest(x)) => *a = a.combine(&x, &coeff),
            _ => unreachable!("parse returns the requested sort"),
        }
    }
    Ok(acc)
}

/// Rebuilds a two-leg bag tensor from its JSON document.
pub fn parse_json_tensor_bag(
    doc: &Value,
    alphabet: &Alphabet,
) -> Result<Tensor2<MonomialBag, MonomialBag>, CliError> {
    let terms = doc
        .get("terms")
        .and_then(Value::as_array)
        .ok_or_else(|| CliError::Sort("missing terms array".into()))?;
    let mut out = Tensor2::zero();
    for term in terms {
        let coeff = parse_rational_str(
            term.get("coeff")
                .and_then(Value::as_str)
                .ok_or_else(|| CliError::Sort("term without coeff".into()))?,
        )?;
        let left = single_bag(term.get("key"), alphabet)?;
        let right = single_bag(term.get("right"), alphabet)?;
        out.add_term((left, right), coeff);
    }
    Ok(out)
}

fn single_bag(v: Option<&Value>, alphabet: &Alphabet) -> Result<MonomialBag, CliError> {
    let s = v
        .and_then(Value::as_str)
        .ok_or_else(|| CliError::Sort("missing tensor leg".into()))?;
    match parse(s, Sort::Bag, alphabet)? {
        ExprValue::Bag(x) if x.num_terms() == 1 => {
            let (b, c) = x.iter().next().map(|(b, c)| (b.clone(), c.clone())).unwrap();
            if c.is_one() {
                Ok(b)
            } else {
                Err(CliError::Sort("tensor leg is not a basis element".into()))
            }
        }
        _ => Err(CliError::Sort("tensor leg is not a basis element".into())),
    }
}
