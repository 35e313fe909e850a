//! Plain alphabets whose symbols are tuples of labels from independent
//! domains (`Σ × Q × 2^COP`, …), and subset alphabets `2^P`.

use crate::alphabet::{Alphabet, Letter, Word};
use crate::error::{Error, Result};

/// A product of finite label domains, materialized as a plain alphabet.
/// Symbol indices use mixed-radix encoding, first domain most significant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductSymbols {
    radices: Vec<u32>,
    alphabet: Alphabet,
}

impl ProductSymbols {
    /// Builds the product alphabet; symbol names join the component names
    /// with `.`. Fails when the product has more than `cap` symbols.
    pub fn new(domains: &[Vec<String>], cap: u64) -> Result<Self> {
        let mut size: u64 = 1;
        for d in domains {
            if d.is_empty() {
                return Err(Error::input("empty label domain"));
            }
            size = size.saturating_mul(d.len() as u64);
        }
        if size > cap {
            return Err(Error::AlphabetCapExceeded { size, cap });
        }
        let radices: Vec<u32> = domains.iter().map(|d| d.len() as u32).collect();
        let mut names = Vec::with_capacity(size as usize);
        let mut idx = vec![0usize; domains.len()];
        for _ in 0..size {
            let parts: Vec<&str> = idx.iter().zip(domains).map(|(&i, d)| d[i].as_str()).collect();
            names.push(parts.join("."));
            for pos in (0..idx.len()).rev() {
                idx[pos] += 1;
                if idx[pos] < domains[pos].len() {
                    break;
                }
                idx[pos] = 0;
            }
        }
        Ok(ProductSymbols {
            radices,
            alphabet: Alphabet::new(names)?,
        })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn radices(&self) -> &[u32] {
        &self.radices
    }

    pub fn encode(&self, parts: &[u32]) -> u32 {
        debug_assert_eq!(parts.len(), self.radices.len());
        parts
            .iter()
            .zip(&self.radices)
            .fold(0u32, |acc, (&p, &r)| acc * r + p)
    }

    pub fn decode(&self, symbol: u32) -> Vec<u32> {
        let mut out = vec![0u32; self.radices.len()];
        let mut rest = symbol;
        for i in (0..self.radices.len()).rev() {
            out[i] = rest % self.radices[i];
            rest /= self.radices[i];
        }
        out
    }

    /// Component `i` of every letter of a word.
    pub fn track(&self, w: &Word, i: usize) -> Vec<u32> {
        w.letters().iter().map(|&l| self.decode(l as u32)[i]).collect()
    }

    /// Word over `base` formed by component `i` (which must index `base`).
    pub fn track_word(&self, w: &Word, i: usize) -> Word {
        Word::new(self.track(w, i).into_iter().map(Letter::from).collect())
    }
}

/// The alphabet `2^P` for `k` named properties: symbol `mask` is named `b`
/// followed by one bit per property in declaration order.
pub fn subset_alphabet(k: usize) -> Result<Alphabet> {
    if k > 16 {
        return Err(Error::SizeCap {
            what: "number of properties".into(),
            size: k,
            cap: 16,
        });
    }
    Alphabet::new(subset_names(k))
}

pub(crate) fn subset_names(k: usize) -> Vec<String> {
    (0..1u32 << k)
        .map(|m| {
            let bits: String = (0..k).map(|i| if m >> i & 1 == 1 { '1' } else { '0' }).collect();
            format!("b{bits}")
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_round_trip() {
        let p = ProductSymbols::new(
            &[
                vec!["N".into(), "T".into()],
                vec!["q0".into(), "q1".into(), "_".into()],
            ],
            100,
        )
        .unwrap();
        assert_eq!(p.alphabet().base_len(), 6);
        let s = p.encode(&[1, 2]);
        assert_eq!(p.decode(s), vec![1, 2]);
        assert_eq!(p.alphabet().symbol_name(s), "T._");
        assert!(ProductSymbols::new(&[vec!["a".into(); 1], vec!["b".into(), "c".into()]], 1).is_err());
    }

    #[test]
    fn subset_names_follow_declaration_order() {
        let a = subset_alphabet(2).unwrap();
        assert_eq!(a.symbols(), &["b00", "b10", "b01", "b11"]);
        assert_eq!(subset_alphabet(0).unwrap().symbols(), &["b"]);
    }
}
