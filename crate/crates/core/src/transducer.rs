//! Structure-preserving transducers: relations between words of equal
//! length (or between infinite words), represented as automata over pairs.

use crate::acceptor::{Acceptor, Mode, WordLike};
use crate::alphabet::Alphabet;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::nfa::Nfa;
use crate::omega::Buchi;

/// A relation on words over a base alphabet, given by an automaton over the
/// pair alphabet `Σ × Σ`.
#[derive(Clone, Debug, PartialEq)]
pub struct Transducer<A: Acceptor> {
    inner: A,
}

pub type FiniteTransducer = Transducer<Nfa>;
pub type OmegaTransducer = Transducer<Buchi>;

/// `T⁺` or `T*`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClosureKind {
    Plus,
    Star,
}

/// Outcome of the iterative closure computation.
#[derive(Clone, Debug)]
pub struct ClosureResult<A: Acceptor> {
    pub relation: Transducer<A>,
    pub converged: bool,
    pub steps_used: usize,
    /// The relation came from an accelerator candidate that passed the
    /// inclusion check.
    pub accelerated: bool,
}

/// Proposes a candidate limit for the closure of `t` from the iterates
/// computed so far. Candidates are never trusted: the engine accepts one
/// only if it contains `t` and is closed under one more `t` step.
pub trait Accelerator<A: Acceptor>: Sync {
    fn propose(&self, t: &Transducer<A>, iterates: &[Transducer<A>]) -> Option<Transducer<A>>;
}

impl<A, F> Accelerator<A> for F
where
    A: Acceptor,
    F: Fn(&Transducer<A>, &[Transducer<A>]) -> Option<Transducer<A>> + Sync,
{
    fn propose(&self, t: &Transducer<A>, iterates: &[Transducer<A>]) -> Option<Transducer<A>> {
        self(t, iterates)
    }
}

impl<A: Acceptor> Transducer<A> {
    /// Wraps an automaton over an arity-2 alphabet.
    pub fn new(inner: A) -> Result<Self> {
        let k = inner.alphabet().arity();
        if k != 2 {
            return Err(Error::mismatch(format!(
                "a transducer needs a pair alphabet, got arity {k}"
            )));
        }
        Ok(Transducer { inner })
    }

    pub fn inner(&self) -> &A {
        &self.inner
    }

    pub fn into_inner(self) -> A {
        self.inner
    }

    pub fn mode(&self) -> Mode {
        A::MODE
    }

    pub fn base(&self) -> Alphabet {
        self.inner.alphabet().base()
    }

    pub fn pair_alphabet(&self) -> &Alphabet {
        self.inner.alphabet()
    }

    /// `{(w, w)}`, a single accepting state.
    pub fn identity(base: &Alphabet) -> Self {
        let pairs = base.with_arity(2).expect("pair alphabet");
        let mut g = Graph::new(pairs.clone());
        let q = g.add_state(true);
        g.initial.push(q);
        for s in 0..base.base_len() as u32 {
            g.add_transition(q, pairs.encode(&[s, s]), q);
        }
        Transducer { inner: A::wrap(g) }
    }

    /// All pairs of equal-length (or infinite) words.
    pub fn universal(base: &Alphabet) -> Self {
        Transducer {
            inner: A::universal(&base.with_arity(2).expect("pair alphabet")),
        }
    }

    pub fn empty(base: &Alphabet) -> Self {
        Transducer {
            inner: A::empty(&base.with_arity(2).expect("pair alphabet")),
        }
    }

    pub fn accepts_pair(&self, w1: &A::Word, w2: &A::Word) -> Result<bool> {
        match w1.zip(w2, self.pair_alphabet()) {
            Some(w) => self.inner.accepts(&w),
            None => Ok(false),
        }
    }

    pub fn union(&self, other: &Self) -> Result<Self> {
        Ok(Transducer {
            inner: self.inner.union(&other.inner)?,
        })
    }

    pub fn intersect(&self, other: &Self) -> Result<Self> {
        Ok(Transducer {
            inner: self.inner.intersect(&other.inner)?,
        })
    }

    pub fn difference(&self, other: &Self) -> Result<Self> {
        Ok(Transducer {
            inner: self.inner.difference(&other.inner)?,
        })
    }

    pub fn complement(&self) -> Result<Self> {
        Ok(Transducer {
            inner: self.inner.complement()?,
        })
    }

    pub fn includes_in(&self, other: &Self) -> Result<bool> {
        self.inner.includes_in(&other.inner)
    }

    pub fn is_empty(&self) -> bool {
        self.inner.is_empty()
    }

    pub fn canonical(&self) -> Result<Self> {
        Ok(Transducer {
            inner: self.inner.canonical()?,
        })
    }

    pub fn equivalent(&self, other: &Self) -> Result<bool> {
        Ok(self.includes_in(other)? && other.includes_in(self)?)
    }

    /// The relation "apply `self`, then `next`": pairs `(u, w)` with some
    /// `v` such that `(u, v) ∈ self` and `(v, w) ∈ next`. Computed as the
    /// projection on components 1 and 3 of the intersection of the two
    /// relations cylindrified over three tracks, then canonicalized (in ω
    /// mode this determinizes and fails with `NonWeakResult` when the
    /// relation is not weak-representable).
    pub fn compose(&self, next: &Self) -> Result<Self> {
        self.check_compatible(next)?;
        let three = self.inner.join_at(&[0, 1], &next.inner, &[1, 2], 3)?;
        Ok(Transducer {
            inner: three.project(2)?.canonical()?,
        })
    }

    /// `R(L(a))`: the words related to some word of `a`.
    pub fn image(&self, a: &A) -> Result<A> {
        if a.alphabet() != &self.base() {
            return Err(Error::mismatch(format!(
                "image of {:?} under a transducer over {:?}",
                a.alphabet(),
                self.base()
            )));
        }
        let two = a.join_at(&[0], &self.inner, &[0, 1], 2)?;
        two.project(1)?.canonical()
    }

    /// `R⁻¹(L(a))`.
    pub fn preimage(&self, a: &A) -> Result<A> {
        self.inverse().image(a)
    }

    /// Domain restriction: pairs of `self` whose first word is in `a`.
    pub fn restrict_domain(&self, a: &A) -> Result<Self> {
        Ok(Transducer {
            inner: a.join_at(&[0], &self.inner, &[0, 1], 2)?,
        })
    }

    /// Swaps the two components of every letter.
    pub fn inverse(&self) -> Self {
        let pairs = self.pair_alphabet().clone();
        let g = self.inner.graph().map_letters(pairs.clone(), |l| {
            let t = pairs.decode(l);
            Some(pairs.encode(&[t[1], t[0]]))
        });
        Transducer { inner: A::wrap(g) }
    }

    /// `self^i`, with `self^0` the identity.
    pub fn power(&self, i: usize) -> Result<Self> {
        let mut acc = Transducer::identity(&self.base());
        for _ in 0..i {
            acc = acc.compose(self)?;
        }
        Ok(acc)
    }

    /// The words `w` with `(w, w)` in the relation.
    pub fn diagonal(&self) -> Result<A> {
        Ok(A::wrap(self.inner.graph().diagonal(0, 1)?))
    }

    /// Words with at least one successor.
    pub fn domain(&self) -> Result<A> {
        self.inner.project(2)
    }

    /// Reflexivity: `L(T_id) ⊆ L(T)`.
    pub fn is_reflexive(&self) -> Result<bool> {
        Transducer::<A>::identity(&self.base()).includes_in(self)
    }

    /// Iterates `U₁ = T` (or `T ∪ id`), `U_{k+1} = U_k ∪ U_k∘T` until two
    /// consecutive iterates have equal canonical forms or `budget` iterates
    /// have been built.
    pub fn closure(
        &self,
        kind: ClosureKind,
        budget: usize,
        accelerator: Option<&dyn Accelerator<A>>,
    ) -> Result<ClosureResult<A>> {
        if budget == 0 {
            return Err(Error::input("closure budget must be at least 1"));
        }
        let base = self.base();
        let t = self.canonical()?;
        let mut u = match kind {
            ClosureKind::Plus => t.clone(),
            ClosureKind::Star => t.union(&Transducer::identity(&base))?.canonical()?,
        };
        let mut iterates = vec![u.clone()];
        for k in 1..=budget {
            if let Some(acc) = accelerator {
                if let Some(c) = acc.propose(&t, &iterates) {
                    if self.accepts_candidate(&c, kind)? {
                        return Ok(ClosureResult {
                            relation: c.canonical()?,
                            converged: true,
                            steps_used: k,
                            accelerated: true,
                        });
                    }
                }
            }
            let next = u.union(&u.compose(&t)?)?.canonical()?;
            if next == u {
                return Ok(ClosureResult {
                    relation: u,
                    converged: true,
                    steps_used: k,
                    accelerated: false,
                });
            }
            if k == budget {
                break;
            }
            u = next;
            iterates.push(u.clone());
        }
        Ok(ClosureResult {
            relation: u,
            converged: false,
            steps_used: budget,
            accelerated: false,
        })
    }

    /// Soundness check for an accelerator candidate `c`: `T ⊆ c`,
    /// `c∘T ⊆ c` (apply `c` then `T`), and `id ⊆ c` for star closures.
    fn accepts_candidate(&self, c: &Self, kind: ClosureKind) -> Result<bool> {
        if c.pair_alphabet() != self.pair_alphabet() {
            return Ok(false);
        }
        if !self.includes_in(c)? {
            return Ok(false);
        }
        if kind == ClosureKind::Star && !c.is_reflexive()? {
            return Ok(false);
        }
        c.compose(self)?.includes_in(c)
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.pair_alphabet() != other.pair_alphabet() {
            return Err(Error::mismatch(format!(
                "{:?} vs {:?}",
                self.pair_alphabet(),
                other.pair_alphabet()
            )));
        }
        Ok(())
    }
}

impl Transducer<Nfa> {
    /// Pairs of words of length exactly `n`.
    pub fn restrict_length(&self, n: usize) -> Result<Self> {
        Ok(Transducer {
            inner: self.inner.restrict_length(n)?.canonical(),
        })
    }
}
