use serde::{Deserialize, Serialize};

use super::MAX_ALPHABET;
use crate::{Error, Result};

/// A named finite alphabet with an ordered list of unique symbol labels.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Alphabet {
    name: String,
    symbols: Vec<String>,
}

impl Alphabet {
    pub fn new(name: impl Into<String>, symbols: Vec<String>) -> Result<Self> {
        let name = name.into();
        if symbols.is_empty() {
            return Err(Error::EmptyAlphabet { name });
        }
        if symbols.len() > MAX_ALPHABET {
            return Err(Error::AlphabetTooLarge {
                name,
                size: symbols.len(),
                max: MAX_ALPHABET,
            });
        }
        for (i, s) in symbols.iter().enumerate() {
            if symbols[..i].contains(s) {
                return Err(Error::DuplicateSymbol {
                    name,
                    symbol: s.clone(),
                });
            }
        }
        Ok(Self { name, symbols })
    }

    /// Alphabet `{0, 1, ..., size-1}` with decimal labels.
    pub fn indexed(name: impl Into<String>, size: usize) -> Result<Self> {
        Self::new(name, (0..size).map(|i| i.to_string()).collect())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn size(&self) -> usize {
        self.symbols.len()
    }

    pub fn symbols(&self) -> &[String] {
        &self.symbols
    }
}
