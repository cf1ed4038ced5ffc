use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};

/// Largest supported alphabet.
pub const MAX_ALPHABET: usize = 64;

/// Index of one map of the family.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Symbol(u8);

impl Symbol {
    pub fn new(index: usize) -> Result<Self> {
        if index >= MAX_ALPHABET {
            return Err(Error::SymbolOutOfRange { symbol: index, alphabet: MAX_ALPHABET });
        }
        Ok(Symbol(index as u8))
    }

    pub(crate) const fn from_raw(index: u8) -> Self {
        Symbol(index)
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// Nonempty symbol sequence, stored in application order: `symbols()[0]`
/// is applied first, so concatenation is temporal sequencing.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(Vec<Symbol>);

impl Word {
    pub fn new(symbols: Vec<Symbol>) -> Result<Self> {
        if symbols.is_empty() {
            return Err(Error::EmptyWord);
        }
        Ok(Word(symbols))
    }

    pub fn from_indices(indices: &[usize]) -> Result<Self> {
        let symbols = indices.iter().map(|&i| Symbol::new(i)).collect::<Result<Vec<_>>>()?;
        Word::new(symbols)
    }

    /// `symbol^len`.
    pub fn repeat(symbol: Symbol, len: usize) -> Result<Self> {
        Word::new(alloc::vec![symbol; len])
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.0
    }

    pub fn indices(&self) -> Vec<usize> {
        self.0.iter().map(|s| s.index()).collect()
    }

    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.0.len()
    }

    /// `self` followed by `next`.
    pub fn concat(&self, next: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&next.0);
        Word(v)
    }

    /// First `len` symbols, if that is still a nonempty word.
    pub fn truncated(&self, len: usize) -> Option<Word> {
        if len == 0 || len > self.0.len() {
            return None;
        }
        Some(Word(self.0[..len].to_vec()))
    }

    pub fn max_symbol(&self) -> usize {
        self.0.iter().map(|s| s.index()).max().unwrap_or(0)
    }

    pub fn check_alphabet(&self, alphabet: usize) -> Result<()> {
        let top = self.max_symbol();
        if top >= alphabet {
            return Err(Error::SymbolOutOfRange { symbol: top, alphabet });
        }
        Ok(())
    }

    /// Shortlex order: by length, then lexicographic.
    pub fn shortlex_cmp(&self, other: &Word) -> core::cmp::Ordering {
        self.len().cmp(&other.len()).then_with(|| self.0.cmp(&other.0))
    }
}

/// Digits when every symbol is below 10, dot-separated indices otherwise.
impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let compact = self.0.iter().all(|s| s.0 < 10);
        for (i, s) in self.0.iter().enumerate() {
            if !compact && i > 0 {
                f.write_str(".")?;
            }
            write!(f, "{}", s.0)?;
        }
        Ok(())
    }
}
