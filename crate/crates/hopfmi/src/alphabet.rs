//! Decoration symbols and per-session alphabets.

use crate::error::AlgebraError;
use std::fmt;

/// A decoration: one symbol of a finite, totally ordered alphabet.
///
/// Symbols are single ASCII lowercase letters; the order on decorations is
/// the letter order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Decoration(char);

impl Decoration {
    pub fn new(symbol: char) -> Result<Self, AlgebraError> {
        if symbol.is_ascii_lowercase() {
            Ok(Decoration(symbol))
        } else {
            Err(AlgebraError::invalid(
                "decoration",
                format!("symbol {symbol:?} is not an ASCII lowercase letter"),
            ))
        }
    }

    pub fn symbol(&self) -> char {
        self.0
    }
}

impl fmt::Display for Decoration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// The finite decoration alphabet of a session, sorted and duplicate-free.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Alphabet {
    symbols: Vec<Decoration>,
}

impl Alphabet {
    pub fn new(symbols: impl IntoIterator<Item = char>) -> Result<Self, AlgebraError> {
        let mut list = symbols
            .into_iter()
            .map(Decoration::new)
            .collect::<Result<Vec<_>, _>>()?;
        list.sort();
        list.dedup();
        if list.is_empty() {
            return Err(AlgebraError::invalid("alphabet", "must not be empty"));
        }
        Ok(Alphabet { symbols: list })
    }

    /// The default singleton alphabet `{a}`.
    pub fn single_a() -> Self {
        Alphabet {
            symbols: vec![Decoration('a')],
        }
    }

    pub fn decorations(&self) -> &[Decoration] {
        &self.symbols
    }

    pub fn contains(&self, d: Decoration) -> bool {
        self.symbols.binary_search(&d).is_ok()
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn is_singleton(&self) -> bool {
        self.symbols.len() == 1
    }
}

impl Default for Alphabet {
    fn default() -> Self {
        Alphabet::single_a()
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, d) in self.symbols.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{d}")?;
        }
        Ok(())
    }
}
