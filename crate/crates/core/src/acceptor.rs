//! The operations transducers and systems need from their underlying
//! automata, implemented for finite-word automata and Büchi automata.

use std::fmt;
use std::hash::Hash;

use crate::alphabet::{Alphabet, Letter, Word};
use crate::error::Result;
use crate::graph::{join, Graph, ProductAcceptance};
use crate::nfa::Nfa;
use crate::omega::{product_mode, Buchi, UpWord};

/// Finite words or infinite words.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Finite,
    Omega,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Finite => "finite",
            Mode::Omega => "omega",
        })
    }
}

/// Words accepted by an [`Acceptor`].
pub trait WordLike: Clone + fmt::Debug + Eq + Hash + Ord + Send + Sync {
    fn map_letters(&self, f: impl FnMut(Letter) -> Letter) -> Self;

    /// Letter-by-letter pairing `w1 ×̄ w2` over `pairs` (arity 2); `None`
    /// when the words cannot be paired (different finite lengths).
    fn zip(&self, other: &Self, pairs: &Alphabet) -> Option<Self>;

    fn render(&self, alphabet: &Alphabet) -> String;

    /// Every letter position that matters: the whole word, or a lasso's
    /// prefix followed by one period.
    fn positions(&self) -> Vec<Letter>;
}

impl WordLike for Word {
    fn map_letters(&self, f: impl FnMut(Letter) -> Letter) -> Self {
        Word::new(self.letters().iter().copied().map(f).collect())
    }

    fn zip(&self, other: &Self, pairs: &Alphabet) -> Option<Self> {
        if self.len() != other.len() {
            return None;
        }
        Some(Word::new(
            self.letters()
                .iter()
                .zip(other.letters())
                .map(|(&a, &b)| pairs.encode(&[a as u32, b as u32]))
                .collect(),
        ))
    }

    fn render(&self, alphabet: &Alphabet) -> String {
        alphabet.word_string(self)
    }

    fn positions(&self) -> Vec<Letter> {
        self.letters().to_vec()
    }
}

impl WordLike for UpWord {
    fn map_letters(&self, mut f: impl FnMut(Letter) -> Letter) -> Self {
        UpWord {
            prefix: self.prefix.map_letters(&mut f),
            period: self.period.map_letters(&mut f),
        }
    }

    fn zip(&self, other: &Self, pairs: &Alphabet) -> Option<Self> {
        let p = self.prefix.len().max(other.prefix.len());
        let (a, b) = (self.period.len(), other.period.len());
        let per = a / gcd(a, b) * b;
        let at = |w: &UpWord, i: usize| w.letter_at(i);
        let pair = |i: usize| pairs.encode(&[at(self, i) as u32, at(other, i) as u32]);
        Some(UpWord {
            prefix: Word::new((0..p).map(pair).collect()),
            period: Word::new((p..p + per).map(pair).collect()),
        })
    }

    fn render(&self, alphabet: &Alphabet) -> String {
        self.to_string(alphabet)
    }

    fn positions(&self) -> Vec<Letter> {
        let mut v = self.prefix.letters().to_vec();
        v.extend_from_slice(self.period.letters());
        v
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

mod sealed {
    pub trait Sealed {}
    impl Sealed for crate::nfa::Nfa {}
    impl Sealed for crate::omega::Buchi {}
}

/// Automata usable as state sets and (with arity 2) as transducers.
pub trait Acceptor: Clone + fmt::Debug + PartialEq + Send + Sync + sealed::Sealed {
    type Word: WordLike;
    const MODE: Mode;

    fn graph(&self) -> &Graph;

    fn alphabet(&self) -> &Alphabet {
        &self.graph().alphabet
    }

    fn empty(alphabet: &Alphabet) -> Self;

    fn universal(alphabet: &Alphabet) -> Self;

    fn singleton(alphabet: &Alphabet, w: &Self::Word) -> Result<Self>;

    fn accepts(&self, w: &Self::Word) -> Result<bool>;

    fn is_empty(&self) -> bool;

    /// Some accepted word, if any (shortest, or a short lasso).
    fn pick(&self) -> Option<Self::Word>;

    fn union(&self, other: &Self) -> Result<Self>;

    fn intersect(&self, other: &Self) -> Result<Self>;

    fn difference(&self, other: &Self) -> Result<Self>;

    fn complement(&self) -> Result<Self>;

    fn includes_in(&self, other: &Self) -> Result<bool>;

    /// Canonical deterministic form; equal languages give equal values.
    fn canonical(&self) -> Result<Self>;

    /// Projection removing component `component` (1-based).
    fn project(&self, component: usize) -> Result<Self>;

    /// True when at most one run exists per word (one initial state, no
    /// branching) or the language is trivially empty.
    fn is_deterministic(&self) -> bool {
        let g = self.graph();
        g.initial.is_empty() || g.is_deterministic()
    }

    #[doc(hidden)]
    fn wrap(g: Graph) -> Self;

    #[doc(hidden)]
    fn join_at(&self, pa: &[usize], other: &Self, pb: &[usize], arity: usize) -> Result<Self>;
}

impl Acceptor for Nfa {
    type Word = Word;
    const MODE: Mode = Mode::Finite;

    fn graph(&self) -> &Graph {
        &self.g
    }

    fn empty(alphabet: &Alphabet) -> Self {
        Nfa::empty(alphabet)
    }

    fn universal(alphabet: &Alphabet) -> Self {
        Nfa::universal(alphabet)
    }

    fn singleton(alphabet: &Alphabet, w: &Word) -> Result<Self> {
        Nfa::word(alphabet, w)
    }

    fn accepts(&self, w: &Word) -> Result<bool> {
        Nfa::accepts(self, w)
    }

    fn is_empty(&self) -> bool {
        Nfa::is_empty(self)
    }

    fn pick(&self) -> Option<Word> {
        self.shortest_word()
    }

    fn union(&self, other: &Self) -> Result<Self> {
        Nfa::union(self, other)
    }

    fn intersect(&self, other: &Self) -> Result<Self> {
        Nfa::intersect(self, other)
    }

    fn difference(&self, other: &Self) -> Result<Self> {
        Nfa::difference(self, other)
    }

    fn complement(&self) -> Result<Self> {
        Ok(Nfa::complement(self))
    }

    fn includes_in(&self, other: &Self) -> Result<bool> {
        Nfa::includes_in(self, other)
    }

    fn canonical(&self) -> Result<Self> {
        Ok(Nfa::canonical(self))
    }

    fn project(&self, component: usize) -> Result<Self> {
        Nfa::project(self, component)
    }

    fn wrap(g: Graph) -> Self {
        Nfa::from_graph(g)
    }

    fn join_at(&self, pa: &[usize], other: &Self, pb: &[usize], arity: usize) -> Result<Self> {
        Ok(Nfa::from_graph(join(
            &self.g,
            pa,
            &other.g,
            pb,
            arity,
            ProductAcceptance::Both,
        )?))
    }
}

impl Acceptor for Buchi {
    type Word = UpWord;
    const MODE: Mode = Mode::Omega;

    fn graph(&self) -> &Graph {
        &self.g
    }

    fn empty(alphabet: &Alphabet) -> Self {
        Buchi::empty(alphabet)
    }

    fn universal(alphabet: &Alphabet) -> Self {
        Buchi::universal(alphabet)
    }

    fn singleton(alphabet: &Alphabet, w: &UpWord) -> Result<Self> {
        Buchi::up_word(alphabet, w)
    }

    fn accepts(&self, w: &UpWord) -> Result<bool> {
        self.accepts_up_word(w)
    }

    fn is_empty(&self) -> bool {
        Buchi::is_empty(self)
    }

    fn pick(&self) -> Option<UpWord> {
        self.emptiness_witness()
    }

    fn union(&self, other: &Self) -> Result<Self> {
        Buchi::union(self, other)
    }

    fn intersect(&self, other: &Self) -> Result<Self> {
        Buchi::intersect(self, other)
    }

    fn difference(&self, other: &Self) -> Result<Self> {
        Buchi::difference(self, other)
    }

    fn complement(&self) -> Result<Self> {
        self.canonical()?.complement_weak_dba()
    }

    fn includes_in(&self, other: &Self) -> Result<bool> {
        Buchi::includes_in(self, other)
    }

    fn canonical(&self) -> Result<Self> {
        Buchi::canonical(self)
    }

    fn project(&self, component: usize) -> Result<Self> {
        Buchi::project(self, component)
    }

    fn wrap(g: Graph) -> Self {
        Buchi::from_graph(g)
    }

    fn join_at(&self, pa: &[usize], other: &Self, pb: &[usize], arity: usize) -> Result<Self> {
        let mode = product_mode(self, other);
        Ok(Buchi::from_graph(join(&self.g, pa, &other.g, pb, arity, mode)?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lasso_zip_aligns_periods() {
        let a = Alphabet::new(["N", "T"]).unwrap();
        let pairs = a.with_arity(2).unwrap();
        let x = UpWord::parse(&a, "T(N)").unwrap();
        let y = UpWord::parse(&a, "(NT)").unwrap();
        let z = x.zip(&y, &pairs).unwrap();
        assert_eq!(z.prefix.len(), 1);
        assert_eq!(z.period.len(), 2);
        for i in 0..10 {
            let t = pairs.decode(z.letter_at(i));
            assert_eq!(t[0] as u64, x.letter_at(i));
            assert_eq!(t[1] as u64, y.letter_at(i));
        }
    }
}
