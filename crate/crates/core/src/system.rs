//! Regular systems `(Σ, A_S0, T_R)`, Büchi regular systems, verdicts and
//! reachability checking.

use serde::Serialize;

use crate::acceptor::{Acceptor, Mode, WordLike};
use crate::alphabet::Alphabet;
use crate::error::{Error, Result};
use crate::nfa::Nfa;
use crate::omega::Buchi;
use crate::transducer::Transducer;

/// A regular (finite mode) or ω-regular (omega mode) system.
#[derive(Clone, Debug)]
pub struct RegularSystem<A: Acceptor> {
    alphabet: Alphabet,
    initial: A,
    relation: Transducer<A>,
}

pub type FiniteSystem = RegularSystem<Nfa>;
pub type OmegaSystem = RegularSystem<Buchi>;

/// A regular system together with a word-level acceptance condition `F`:
/// an execution is accepting when infinitely many of its states are in `F`.
#[derive(Clone, Debug)]
pub struct BuchiRegularSystem<A: Acceptor> {
    pub system: RegularSystem<A>,
    pub acceptance: A,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Holds,
    Violated,
    Unknown,
}

impl Status {
    pub fn as_str(&self) -> &'static str {
        match self {
            Status::Holds => "holds",
            Status::Violated => "violated",
            Status::Unknown => "unknown",
        }
    }
}

/// A path (`loop_start = None`) or a lasso of system states; in a lasso the
/// last word steps back to `words[loop_start]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness<W> {
    pub words: Vec<W>,
    pub loop_start: Option<usize>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Diagnostics {
    pub steps: usize,
    pub converged: bool,
    pub slice: Option<usize>,
    pub reason: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict<W> {
    pub status: Status,
    pub witness: Option<Witness<W>>,
    pub diagnostics: Diagnostics,
}

impl<W> Verdict<W> {
    pub fn holds(diagnostics: Diagnostics) -> Self {
        Verdict {
            status: Status::Holds,
            witness: None,
            diagnostics,
        }
    }

    pub fn violated(witness: Witness<W>, diagnostics: Diagnostics) -> Self {
        Verdict {
            status: Status::Violated,
            witness: Some(witness),
            diagnostics,
        }
    }

    pub fn unknown(reason: impl Into<String>, mut diagnostics: Diagnostics) -> Self {
        diagnostics.reason = Some(reason.into());
        Verdict {
            status: Status::Unknown,
            witness: None,
            diagnostics,
        }
    }

    pub fn with_slice(mut self, n: usize) -> Self {
        self.diagnostics.slice = Some(n);
        self
    }

    pub fn map_witness<V>(self, f: impl FnOnce(Witness<W>) -> Witness<V>) -> Verdict<V> {
        Verdict {
            status: self.status,
            witness: self.witness.map(f),
            diagnostics: self.diagnostics,
        }
    }
}

/// Evidence that every execution visits finitely many states.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Locality {
    /// Structure-preserving relation on finite words: executions stay
    /// within one length.
    LocallyFinite,
    Unknown,
}

/// Iterated image computation `A, A ∪ T(A), …`.
#[derive(Clone, Debug)]
pub struct Reach<A: Acceptor> {
    /// All states found (canonical form).
    pub set: A,
    pub converged: bool,
    pub steps: usize,
    /// `frontiers[k]`: states first reached after exactly `k` steps.
    pub frontiers: Vec<A>,
}

impl<A: Acceptor> RegularSystem<A> {
    /// Builds and validates a system: alphabets must agree; in finite mode
    /// the initial automaton must be deterministic; in omega mode both
    /// automata must be deterministic weak.
    pub fn new(initial: A, relation: Transducer<A>) -> Result<Self> {
        let alphabet = initial.alphabet().clone();
        if alphabet.arity() != 1 {
            return Err(Error::ModeMismatch(format!(
                "initial automaton has arity {}",
                alphabet.arity()
            )));
        }
        if relation.base() != alphabet {
            return Err(Error::ModeMismatch(format!(
                "relation over {:?} but initial states over {:?}",
                relation.base().symbols(),
                alphabet.symbols()
            )));
        }
        if !initial.is_deterministic() {
            return Err(Error::NotDeterministic("initial automaton".into()));
        }
        if A::MODE == Mode::Omega {
            for (what, g) in [("initial automaton", initial.graph()), ("relation", relation.inner().graph())] {
                let c = Buchi::from_graph(g.clone()).classify();
                if !c.weak {
                    return Err(Error::NotWeak(what.into()));
                }
                if !(c.deterministic || g.initial.is_empty()) {
                    return Err(Error::NotDeterministic(what.into()));
                }
            }
        }
        Ok(RegularSystem {
            alphabet,
            initial,
            relation,
        })
    }

    /// Re-runs validation on an existing system.
    pub fn validate(&self) -> Result<()> {
        RegularSystem::new(self.initial.clone(), self.relation.clone()).map(|_| ())
    }

    /// Systems whose automata are built internally (augmented systems):
    /// only the alphabets are checked.
    pub(crate) fn new_unchecked(initial: A, relation: Transducer<A>) -> Result<Self> {
        let alphabet = initial.alphabet().clone();
        if relation.base() != alphabet {
            return Err(Error::mismatch("initial automaton and relation"));
        }
        Ok(RegularSystem {
            alphabet,
            initial,
            relation,
        })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn initial(&self) -> &A {
        &self.initial
    }

    pub fn relation(&self) -> &Transducer<A> {
        &self.relation
    }

    pub fn mode(&self) -> Mode {
        A::MODE
    }

    pub fn locality_evidence(&self) -> Locality {
        match A::MODE {
            Mode::Finite => Locality::LocallyFinite,
            Mode::Omega => Locality::Unknown,
        }
    }

    /// `T*(A_S0)` by frontier iteration; converged when a step adds nothing.
    pub fn reachable(&self, budget: usize) -> Result<Reach<A>> {
        reach_from(&self.relation, &self.initial, budget)
    }

    /// Checks that no reachable state is in `bad`.
    pub fn check_reachability_property(&self, bad: &A, budget: usize) -> Result<Verdict<A::Word>> {
        if bad.alphabet() != &self.alphabet {
            return Err(Error::mismatch("bad-state automaton and system"));
        }
        let t = &self.relation;
        let mut set = self.initial.canonical()?;
        let mut frontiers = vec![set.clone()];
        let mut diag = Diagnostics::default();
        for k in 0..=budget {
            let hit = frontiers[k].intersect(bad)?;
            if let Some(w) = hit.pick() {
                diag.steps = k;
                let words = backtrack(t, &frontiers, k, w)?;
                return Ok(Verdict::violated(
                    Witness {
                        words,
                        loop_start: None,
                    },
                    diag,
                ));
            }
            if k == budget {
                break;
            }
            let next = t.image(&frontiers[k])?.difference(&set)?.canonical()?;
            if next.is_empty() {
                diag.steps = k + 1;
                diag.converged = true;
                return Ok(Verdict::holds(diag));
            }
            set = set.union(&next)?.canonical()?;
            frontiers.push(next);
        }
        diag.steps = budget;
        Ok(Verdict::unknown(
            format!("reachable set not converged after {budget} steps"),
            diag,
        ))
    }
}

/// Frontier iteration of `t` from `start`.
pub(crate) fn reach_from<A: Acceptor>(t: &Transducer<A>, start: &A, budget: usize) -> Result<Reach<A>> {
    let mut set = start.canonical()?;
    let mut frontiers = vec![set.clone()];
    for k in 0..budget {
        let next = t.image(&frontiers[k])?.difference(&set)?.canonical()?;
        if next.is_empty() {
            return Ok(Reach {
                set,
                converged: true,
                steps: k + 1,
                frontiers,
            });
        }
        set = set.union(&next)?.canonical()?;
        frontiers.push(next);
    }
    Ok(Reach {
        set,
        converged: false,
        steps: budget,
        frontiers,
    })
}

/// A path `w_0 … w_k = w` with `w_j ∈ frontiers[j]`, found backwards.
pub(crate) fn backtrack<A: Acceptor>(
    t: &Transducer<A>,
    frontiers: &[A],
    k: usize,
    w: A::Word,
) -> Result<Vec<A::Word>> {
    let alphabet = frontiers[0].alphabet().clone();
    let mut path = vec![w];
    for j in (0..k).rev() {
        let cur = A::singleton(&alphabet, path.last().expect("nonempty path"))?;
        let pre = t.preimage(&cur)?.intersect(&frontiers[j])?;
        let p = pre
            .pick()
            .ok_or_else(|| Error::input("witness reconstruction lost its predecessor"))?;
        path.push(p);
    }
    path.reverse();
    Ok(path)
}

impl RegularSystem<Nfa> {
    /// The instance of a parametric system with words of length `n`.
    pub fn slice(&self, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::input("slice length must be at least 1"));
        }
        Ok(RegularSystem {
            alphabet: self.alphabet.clone(),
            initial: self.initial.restrict_length(n)?.minimize(),
            relation: self.relation.restrict_length(n)?,
        })
    }

    /// Checks that every witness step is allowed: first word initial and
    /// consecutive words related (including the loop-closing step).
    pub fn replay(&self, w: &Witness<crate::alphabet::Word>) -> Result<bool> {
        replay_path(self, w)
    }
}

pub(crate) fn replay_path<A: Acceptor>(m: &RegularSystem<A>, w: &Witness<A::Word>) -> Result<bool> {
    let Some(first) = w.words.first() else {
        return Ok(false);
    };
    if !m.initial.accepts(first)? {
        return Ok(false);
    }
    for pair in w.words.windows(2) {
        if !m.relation.accepts_pair(&pair[0], &pair[1])? {
            return Ok(false);
        }
    }
    if let Some(s) = w.loop_start {
        let last = w.words.last().expect("nonempty");
        if s >= w.words.len() || !m.relation.accepts_pair(last, &w.words[s])? {
            return Ok(false);
        }
    }
    Ok(true)
}

impl<A: Acceptor> BuchiRegularSystem<A> {
    pub fn new(system: RegularSystem<A>, acceptance: A) -> Result<Self> {
        if acceptance.alphabet() != system.alphabet() {
            return Err(Error::mismatch("acceptance condition and system"));
        }
        Ok(BuchiRegularSystem { system, acceptance })
    }

    pub fn alphabet(&self) -> &Alphabet {
        self.system.alphabet()
    }

    /// Replays a lasso: a path of the system whose loop is closed by a
    /// step and visits an accepting state.
    pub fn replay(&self, w: &Witness<A::Word>) -> Result<bool> {
        let Some(s) = w.loop_start else {
            return Ok(false);
        };
        if !replay_path(&self.system, w)? {
            return Ok(false);
        }
        for x in &w.words[s..] {
            if self.acceptance.accepts(x)? {
                return Ok(true);
            }
        }
        Ok(false)
    }
}

/// Renders witness words over an alphabet.
pub fn render_witness<W: WordLike>(w: &Witness<W>, alphabet: &Alphabet) -> Vec<String> {
    w.words.iter().map(|x| x.render(alphabet)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::Word;

    fn nt() -> Alphabet {
        Alphabet::new(["N", "T"]).unwrap()
    }

    fn tn_star() -> Nfa {
        Nfa::from_parts(nt(), 2, [0], [1], [(0, 1, 1), (1, 0, 1)]).unwrap()
    }

    fn relation() -> crate::transducer::FiniteTransducer {
        let p = nt().with_arity(2).unwrap();
        let l = |s: &str| p.parse_letter(s).unwrap();
        Transducer::new(
            Nfa::from_parts(
                p.clone(),
                6,
                [0, 3],
                [2, 5],
                [
                    (0, l("N/N"), 0),
                    (0, l("T/N"), 1),
                    (1, l("N/T"), 2),
                    (2, l("N/N"), 2),
                    (3, l("N/T"), 4),
                    (4, l("N/N"), 4),
                    (4, l("T/N"), 5),
                ],
            )
            .unwrap(),
        )
        .unwrap()
    }

    fn ring() -> FiniteSystem {
        RegularSystem::new(tn_star(), relation()).unwrap()
    }

    fn two_tokens() -> Nfa {
        // Σ*TΣ*TΣ*
        Nfa::from_parts(
            nt(),
            3,
            [0],
            [2],
            [(0, 0, 0), (0, 1, 0), (0, 1, 1), (1, 0, 1), (1, 1, 1), (1, 1, 2), (2, 0, 2), (2, 1, 2)],
        )
        .unwrap()
    }

    fn w(s: &str) -> Word {
        nt().parse_word(s).unwrap()
    }

    #[test]
    fn validation() {
        assert!(ring().validate().is_ok());
        let other = Alphabet::new(["a", "b"]).unwrap();
        let bad = Transducer::identity(&other);
        assert!(matches!(
            RegularSystem::new(tn_star(), bad),
            Err(Error::ModeMismatch(_))
        ));
        // ω system with a non-weak initial automaton.
        let inf_t = Buchi::from_parts(nt(), 2, [0], [1], [(0, 0, 0), (0, 1, 1), (1, 0, 0), (1, 1, 1)])
            .unwrap();
        assert!(matches!(
            RegularSystem::new(inf_t, Transducer::identity(&nt())),
            Err(Error::NotWeak(_))
        ));
    }

    #[test]
    fn slicing() {
        let s = ring().slice(3).unwrap();
        assert_eq!(s.initial().enumerate(4), vec![w("TNN")]);
        let s1 = ring().slice(1).unwrap();
        assert!(s1.relation().is_empty());
        let again = s.slice(3).unwrap();
        assert_eq!(again.initial(), s.initial());
        assert_eq!(
            again.relation().canonical().unwrap(),
            s.relation().canonical().unwrap()
        );
    }

    #[test]
    fn reachable_slices() {
        let r = ring().slice(3).unwrap().reachable(16).unwrap();
        assert!(r.converged);
        assert_eq!(r.set.enumerate(3), vec![w("NNT"), w("NTN"), w("TNN")]);
        let r = ring().slice(5).unwrap().reachable(16).unwrap();
        assert_eq!(r.set.enumerate(5).len(), 5);
        let empty = RegularSystem::new(Nfa::empty(&nt()), relation()).unwrap();
        let r = empty.reachable(4).unwrap();
        assert!(r.converged && r.set.is_empty());
    }

    #[test]
    fn mutual_exclusion_per_slice() {
        for n in 2..=8 {
            let v = ring().slice(n).unwrap().check_reachability_property(&two_tokens(), 64).unwrap();
            assert_eq!(v.status, Status::Holds, "slice {n}");
        }
    }

    #[test]
    fn bad_initial_state_is_violated_at_step_zero() {
        // TN*TN*
        let init = Nfa::from_parts(nt(), 3, [0], [2], [(0, 1, 1), (1, 0, 1), (1, 1, 2), (2, 0, 2)]).unwrap();
        let m = RegularSystem::new(init, relation()).unwrap();
        let v = m.check_reachability_property(&two_tokens(), 8).unwrap();
        assert_eq!(v.status, Status::Violated);
        assert_eq!(v.diagnostics.steps, 0);
        assert!(m.replay(v.witness.as_ref().unwrap()).unwrap());
    }

    #[test]
    fn zero_budget_is_unknown() {
        let v = ring().slice(3).unwrap().check_reachability_property(&two_tokens(), 0).unwrap();
        assert_eq!(v.status, Status::Unknown);
    }

    #[test]
    fn locality() {
        assert_eq!(ring().locality_evidence(), Locality::LocallyFinite);
        let o = RegularSystem::new(Buchi::universal(&nt()), Transducer::identity(&nt())).unwrap();
        assert_eq!(o.locality_evidence(), Locality::Unknown);
    }
}
