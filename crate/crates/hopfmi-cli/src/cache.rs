//! Persistence for the fertility-fiber cache: a JSON file mapping the text
//! form of each monomial to the text forms of its canonical trees, with a
//! header recording the alphabet and the generator version. Loaded entries
//! are revalidated by re-applying the fertility map to every tree.

use crate::error::CliError;
use crate::output::format_monomial;
use crate::parse::{parse, ExprValue, Sort};
use hopfmi::alphabet::Alphabet;
use hopfmi::fertility::PhiFibers;
use hopfmi::forests::Tree;
use hopfmi::multiindex::MultiIndex;
use num_traits::One;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::path::Path;

pub const CACHE_VERSION: &str = "1";

#[derive(Debug, Serialize, Deserialize)]
struct CacheFile {
    version: String,
    alphabet: String,
    entries: BTreeMap<String, Vec<String>>,
}

#[derive(Debug, PartialEq, Eq)]
pub enum LoadStatus {
    Missing,
    /// Header mismatch; the cache was ignored.
    Skipped(String),
    Loaded(usize),
}

pub fn load(path: &Path, alphabet: &Alphabet, fibers: &PhiFibers) -> Result<LoadStatus, CliError> {
    if !path.exists() {
        return Ok(LoadStatus::Missing);
    }
    let text = std::fs::read_to_string(path)?;
    let file: CacheFile = serde_json::from_str(&text)
        .map_err(|e| CliError::Cache(format!("{}: {e}", path.display())))?;
    if file.version != CACHE_VERSION {
        return Ok(LoadStatus::Skipped(format!(
            "generator version {} (expected {CACHE_VERSION})",
            file.version
        )));
    }
    if file.alphabet != alphabet.to_string() {
        return Ok(LoadStatus::Skipped(format!(
            "alphabet {} (session alphabet {alphabet})",
            file.alphabet
        )));
    }
    let mut loaded = 0;
    for (key, trees) in &file.entries {
        let monomial = parse_single_monomial(key, alphabet)
            .map_err(|e| CliError::Cache(format!("bad cache key {key:?}: {e}")))?;
        let trees = trees
            .iter()
            .map(|s| parse_single_tree(s, alphabet))
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| CliError::Cache(format!("bad cache entry for {key:?}: {e}")))?;
        fibers
            .insert_checked(monomial, trees)
            .map_err(|e| CliError::Cache(format!("rejected cache entry for {key:?}: {e}")))?;
        loaded += 1;
    }
    Ok(LoadStatus::Loaded(loaded))
}

pub fn save(path: &Path, alphabet: &Alphabet, fibers: &PhiFibers) -> Result<(), CliError> {
    let entries: BTreeMap<String, Vec<String>> = fibers
        .entries()
        .into_iter()
        .map(|(k, trees)| {
            (
                format_monomial(&k, alphabet),
                trees.iter().map(|t| t.to_string()).collect(),
            )
        })
        .collect();
    let file = CacheFile {
        version: CACHE_VERSION.to_string(),
        alphabet: alphabet.to_string(),
        entries,
    };
    let text = serde_json::to_string_pretty(&file).expect("cache serializes");
    std::fs::write(path, text)?;
    Ok(())
}

fn parse_single_monomial(s: &str, alphabet: &Alphabet) -> Result<MultiIndex, CliError> {
    match parse(s, Sort::MultiIndex, alphabet)? {
        ExprValue::MultiIndex(x) if x.num_terms() == 1 => {
            let (k, c) = x.iter().next().map(|(k, c)| (k.clone(), c.clone())).unwrap();
            if c.is_one() {
                return Ok(k);
            }
            Err(CliError::Sort("expected a single monomial".into()))
        }
        _ => Err(CliError::Sort("expected a single monomial".into())),
    }
}

fn parse_single_tree(s: &str, alphabet: &Alphabet) -> Result<Tree, CliError> {
    match parse(s, Sort::Tree, alphabet)? {
        ExprValue::Tree(x) if x.num_terms() == 1 => {
            let (t, c) = x.iter().next().map(|(t, c)| (t.clone(), c.clone())).unwrap();
            if c.is_one() {
                return Ok(t);
            }
            Err(CliError::Sort("expected a single tree".into()))
        }
        _ => Err(CliError::Sort("expected a single tree".into())),
    }
}
