//! Alphabets, letters and finite words.
//!
//! An [`Alphabet`] is an ordered list of base symbols together with an arity.
//! Letters of an arity-`k` alphabet are `k`-tuples of base symbols, packed into
//! a single [`Letter`] using mixed-radix encoding (component 0 is the most
//! significant digit, so letter order is the lexicographic tuple order).

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Packed letter index.
pub type Letter = u64;

/// Largest supported tuple arity.
pub const MAX_ARITY: usize = 8;

/// A decoded tuple letter.
pub type Tuple = [u32; MAX_ARITY];

/// An ordered, closed set of symbols, possibly lifted to tuples.
#[derive(Clone)]
pub struct Alphabet {
    base: Arc<Vec<String>>,
    arity: usize,
}

impl Alphabet {
    /// Builds a plain (arity 1) alphabet from distinct symbol names.
    pub fn new<I, S>(symbols: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let base: Vec<String> = symbols.into_iter().map(Into::into).collect();
        if base.is_empty() {
            return Err(Error::input("alphabet must contain at least one symbol"));
        }
        let mut seen = rustc_hash::FxHashSet::default();
        for s in &base {
            if !seen.insert(s.as_str()) {
                return Err(Error::input(format!("duplicate symbol `{s}` in alphabet")));
            }
        }
        Ok(Alphabet {
            base: Arc::new(base),
            arity: 1,
        })
    }

    /// The same base symbols with a different arity.
    pub fn with_arity(&self, arity: usize) -> Result<Self> {
        if arity == 0 || arity > MAX_ARITY {
            return Err(Error::input(format!("unsupported arity {arity}")));
        }
        let size = (self.base.len() as u128).checked_pow(arity as u32);
        match size {
            Some(s) if s <= u64::MAX as u128 => Ok(Alphabet {
                base: Arc::clone(&self.base),
                arity,
            }),
            _ => Err(Error::AlphabetCapExceeded {
                size: u64::MAX,
                cap: u64::MAX,
            }),
        }
    }

    /// The arity-1 alphabet over the same base symbols.
    pub fn base(&self) -> Alphabet {
        Alphabet {
            base: Arc::clone(&self.base),
            arity: 1,
        }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn symbols(&self) -> &[String] {
        &self.base
    }

    pub fn base_len(&self) -> usize {
        self.base.len()
    }

    /// Number of letters (`|base|^arity`).
    pub fn len(&self) -> u64 {
        (self.base.len() as u64).pow(self.arity as u32)
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// True when both alphabets share the same base symbols (ignoring arity).
    pub fn same_base(&self, other: &Alphabet) -> bool {
        Arc::ptr_eq(&self.base, &other.base) || self.base == other.base
    }

    pub fn symbol_index(&self, name: &str) -> Option<u32> {
        self.base.iter().position(|s| s == name).map(|i| i as u32)
    }

    pub fn symbol_name(&self, idx: u32) -> &str {
        &self.base[idx as usize]
    }

    /// Packs a tuple of base-symbol indices.
    pub fn encode(&self, parts: &[u32]) -> Letter {
        debug_assert_eq!(parts.len(), self.arity);
        let radix = self.base.len() as u64;
        parts.iter().fold(0u64, |acc, &p| acc * radix + p as u64)
    }

    /// Unpacks a letter into its tuple components.
    pub fn decode(&self, letter: Letter) -> Tuple {
        let mut out = [0u32; MAX_ARITY];
        let radix = self.base.len() as u64;
        let mut rest = letter;
        for i in (0..self.arity).rev() {
            out[i] = (rest % radix) as u32;
            rest /= radix;
        }
        out
    }

    /// Iterates all letters in canonical order.
    pub fn letters(&self) -> impl Iterator<Item = Letter> {
        0..self.len()
    }

    /// Renders a letter as `a` or `a/b/...`.
    pub fn letter_name(&self, letter: Letter) -> String {
        let t = self.decode(letter);
        t[..self.arity]
            .iter()
            .map(|&i| self.symbol_name(i))
            .collect::<Vec<_>>()
            .join("/")
    }

    /// Parses a letter written as `a` or `a/b/...`.
    pub fn parse_letter(&self, text: &str) -> Result<Letter> {
        let parts: Vec<&str> = text.split('/').collect();
        if parts.len() != self.arity {
            return Err(Error::input(format!(
                "letter `{text}` has arity {} but the alphabet has arity {}",
                parts.len(),
                self.arity
            )));
        }
        let mut idx = Vec::with_capacity(parts.len());
        for p in parts {
            idx.push(
                self.symbol_index(p)
                    .ok_or_else(|| Error::UnknownSymbol(p.to_string()))?,
            );
        }
        Ok(self.encode(&idx))
    }

    /// Parses a word of space-separated (or, for single-character symbols,
    /// juxtaposed) letters.
    pub fn parse_word(&self, text: &str) -> Result<Word> {
        let text = text.trim();
        if text.is_empty() {
            return Ok(Word::default());
        }
        let tokens: Vec<String> = if text.contains(char::is_whitespace) || self.arity > 1 {
            text.split_whitespace().map(str::to_string).collect()
        } else if self.base.iter().all(|s| s.chars().count() == 1) {
            text.chars().map(|c| c.to_string()).collect()
        } else {
            vec![text.to_string()]
        };
        let letters = tokens
            .iter()
            .map(|t| self.parse_letter(t))
            .collect::<Result<Vec<_>>>()?;
        Ok(Word::new(letters))
    }

    /// Renders a word, juxtaposing single-character plain symbols.
    pub fn word_string(&self, w: &Word) -> String {
        let compact = self.arity == 1 && self.base.iter().all(|s| s.chars().count() == 1);
        let parts: Vec<String> = w.letters().iter().map(|&l| self.letter_name(l)).collect();
        if compact {
            parts.concat()
        } else {
            parts.join(" ")
        }
    }

    /// Checks that a word only uses letters of this alphabet.
    pub fn check_word(&self, w: &Word) -> Result<()> {
        let n = self.len();
        match w.letters().iter().find(|&&l| l >= n) {
            Some(l) => Err(Error::UnknownSymbol(format!("letter #{l}"))),
            None => Ok(()),
        }
    }
}

impl PartialEq for Alphabet {
    fn eq(&self, other: &Self) -> bool {
        self.arity == other.arity && self.same_base(other)
    }
}

impl Eq for Alphabet {}

impl fmt::Debug for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Alphabet({:?}^{})", self.base, self.arity)
    }
}

/// A finite word.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn new(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.0
    }
}

impl From<Vec<Letter>> for Word {
    fn from(v: Vec<Letter>) -> Self {
        Word(v)
    }
}

/// Pairs two same-length words letter by letter (the synchronous product
/// `w1 ×̄ w2`) into a word over the arity-2 alphabet.
pub fn pair_word(alphabet: &Alphabet, w1: &Word, w2: &Word) -> Option<Word> {
    if w1.len() != w2.len() {
        return None;
    }
    let pairs = alphabet.with_arity(2).ok()?;
    Some(Word::new(
        w1.letters()
            .iter()
            .zip(w2.letters())
            .map(|(&a, &b)| pairs.encode(&[a as u32, b as u32]))
            .collect(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn encode_decode_tuple() {
        let a = Alphabet::new(["N", "T", "X"]).unwrap().with_arity(3).unwrap();
        let l = a.encode(&[2, 0, 1]);
        assert_eq!(&a.decode(l)[..3], &[2, 0, 1]);
        assert_eq!(a.letter_name(l), "X/N/T");
        assert_eq!(a.parse_letter("X/N/T").unwrap(), l);
        assert_eq!(a.len(), 27);
    }

    #[test]
    fn duplicate_symbols_rejected() {
        assert!(Alphabet::new(["a", "a"]).is_err());
        assert!(Alphabet::new(Vec::<String>::new()).is_err());
    }

    #[test]
    fn compact_words() {
        let a = Alphabet::new(["N", "T"]).unwrap();
        let w = a.parse_word("TNN").unwrap();
        assert_eq!(w.letters(), &[1, 0, 0]);
        assert_eq!(a.word_string(&w), "TNN");
        assert!(a.parse_word("TNX").is_err());
    }

    #[test]
    fn letter_arity_mismatch() {
        let a = Alphabet::new(["a", "b"]).unwrap().with_arity(2).unwrap();
        assert!(a.parse_letter("a").is_err());
    }
}
