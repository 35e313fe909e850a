//! Local-oriented system properties of parametric systems: local execution
//! properties checked along every position, the generalized-Büchi
//! reset construction, flags for alternating properties, and three-valued
//! combination of verdicts.

use std::collections::BTreeMap;

use crate::alphabet::{Alphabet, Letter, Word};
use crate::augment::{subset_alphabet, subset_names, ProductSymbols};
use crate::error::{Error, Result};
use crate::graph::{Graph, State};
use crate::nfa::Nfa;
use crate::omega::{Buchi, UpWord};
use crate::system::{replay_path, BuchiRegularSystem, FiniteSystem, RegularSystem, Status, Witness};
use crate::transducer::Transducer;

/// Largest LOSP augmented alphabet.
pub const MAX_LOSP_SYMBOLS: u64 = 65536;

/// Number of lassos used to cross-check a user-supplied complement.
pub const COMPLEMENT_SAMPLES: usize = 50;

/// A named `lep ⊆ Σ^ω` with a complete automaton and a complete automaton
/// for its complement.
#[derive(Clone, Debug)]
pub struct LocalExecutionProperty {
    name: String,
    automaton: Buchi,
    complement: Buchi,
}

impl LocalExecutionProperty {
    /// Completes both automata. Without a complement, the property must be
    /// weak deterministic and is complemented by flipping; a supplied
    /// complement is cross-checked on sampled lassos.
    pub fn new(name: impl Into<String>, automaton: Buchi, complement: Option<Buchi>) -> Result<Self> {
        let name = name.into();
        if automaton.alphabet().arity() != 1 {
            return Err(Error::IncompleteLepAutomaton(name));
        }
        let complement = match complement {
            Some(c) => {
                if c.alphabet() != automaton.alphabet() {
                    return Err(Error::mismatch(format!("complement of {name}")));
                }
                for w in UpWord::enumerate(automaton.alphabet(), 3, 3, COMPLEMENT_SAMPLES) {
                    if automaton.accepts_up_word(&w)? == c.accepts_up_word(&w)? {
                        return Err(Error::input(format!(
                            "complement of {name} disagrees with it on {}",
                            w.to_string(automaton.alphabet())
                        )));
                    }
                }
                c
            }
            None => complement_lep(&automaton).map_err(|e| match e {
                Error::NotWeakDeterministic => Error::MissingComplement(name.clone()),
                e => e,
            })?,
        };
        Ok(LocalExecutionProperty {
            automaton: Buchi::from_graph(automaton.graph().complete()),
            complement: Buchi::from_graph(complement.graph().complete()),
            name,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn automaton(&self) -> &Buchi {
        &self.automaton
    }

    pub fn complement(&self) -> &Buchi {
        &self.complement
    }

    /// Automaton for the property (`positive`) or its complement.
    fn side(&self, positive: bool) -> &Graph {
        if positive {
            &self.automaton.g
        } else {
            &self.complement.g
        }
    }
}

/// Complement of a deterministic weak lep by flipping acceptance.
pub fn complement_lep(a: &Buchi) -> Result<Buchi> {
    if !a.is_weak_deterministic() {
        return Err(Error::NotWeakDeterministic);
    }
    a.complement_weak_dba()
}

/// `A_¬losp`: a deterministic automaton over `2^LEP` accepting the label
/// sequences (one label per position) that violate the property.
#[derive(Clone, Debug)]
pub struct Losp {
    negation: Nfa,
    num_leps: usize,
}

impl Losp {
    pub fn new(negation: Nfa, num_leps: usize) -> Result<Self> {
        let expected = subset_alphabet(num_leps)?;
        if negation.alphabet() != &expected {
            return Err(Error::mismatch(format!(
                "negated losp over {:?}, expected {:?}",
                negation.alphabet().symbols(),
                expected.symbols()
            )));
        }
        Ok(Losp {
            negation: negation.minimize(),
            num_leps,
        })
    }

    /// Negates a property given as the set of allowed label sequences.
    pub fn from_losp(losp: &Nfa, num_leps: usize) -> Result<Self> {
        Losp::new(losp.complement(), num_leps)
    }

    pub fn negation(&self) -> &Nfa {
        &self.negation
    }

    pub fn num_leps(&self) -> usize {
        self.num_leps
    }
}

/// One position of an augmented LOSP word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LospLabel {
    pub symbol: u32,
    pub lep_states: Vec<State>,
    pub neg_states: Vec<State>,
    pub leps: u32,
    pub visited: u32,
    pub reset: bool,
}

/// The alphabet `Σ × ∏Q_lep × ∏Q_¬lep × 2^LEP × 2^LEP × {reset, noreset}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LospLayout {
    symbols: ProductSymbols,
    pairs: Alphabet,
    k: usize,
}

impl LospLayout {
    fn new(sigma: &Alphabet, leps: &[LocalExecutionProperty]) -> Result<Self> {
        let states = |n: usize, p: &str| (0..n).map(|i| format!("{p}{i}")).collect::<Vec<_>>();
        let mut domains = vec![sigma.symbols().to_vec()];
        for l in leps {
            domains.push(states(l.automaton.num_states(), "p"));
        }
        for l in leps {
            domains.push(states(l.complement.num_states(), "n"));
        }
        domains.push(subset_names(leps.len()));
        domains.push(subset_names(leps.len()));
        domains.push(vec!["noreset".into(), "reset".into()]);
        let symbols = ProductSymbols::new(&domains, MAX_LOSP_SYMBOLS)?;
        let pairs = symbols.alphabet().with_arity(2)?;
        Ok(LospLayout {
            symbols,
            pairs,
            k: leps.len(),
        })
    }

    pub fn alphabet(&self) -> &Alphabet {
        self.symbols.alphabet()
    }

    pub fn pair_alphabet(&self) -> &Alphabet {
        &self.pairs
    }

    pub fn label(&self, letter: Letter) -> LospLabel {
        let p = self.symbols.decode(letter as u32);
        let k = self.k;
        LospLabel {
            symbol: p[0],
            lep_states: p[1..1 + k].to_vec(),
            neg_states: p[1 + k..1 + 2 * k].to_vec(),
            leps: p[1 + 2 * k],
            visited: p[2 + 2 * k],
            reset: p[3 + 2 * k] == 1,
        }
    }

    fn encode(&self, l: &LospLabel) -> u32 {
        let mut parts = vec![l.symbol];
        parts.extend_from_slice(&l.lep_states);
        parts.extend_from_slice(&l.neg_states);
        parts.extend([l.leps, l.visited, l.reset as u32]);
        self.symbols.encode(&parts)
    }

    pub fn project_sigma(&self, w: &Word) -> Word {
        Word::new(w.letters().iter().map(|&l| Letter::from(self.label(l).symbol)).collect())
    }
}

/// `M^a_¬losp` with the layout of its alphabet.
#[derive(Clone, Debug)]
pub struct AugmentedLosp {
    pub system: BuchiRegularSystem<Nfa>,
    pub layout: LospLayout,
}

/// Every tuple of choices, one from each list.
fn choices(options: &[Vec<State>]) -> Vec<Vec<State>> {
    let mut out = vec![Vec::new()];
    for opts in options {
        let mut next = Vec::with_capacity(out.len() * opts.len());
        for prefix in &out {
            for &o in opts {
                let mut v = prefix.clone();
                v.push(o);
                next.push(v);
            }
        }
        out = next;
    }
    out
}

/// Builds `M^a_¬losp`. Every position runs each `A_lepᵢ` and `A_¬lepᵢ` on
/// its local projection, keeps its 2^LEP label fixed, and accumulates in
/// `lepF` the properties whose selected automaton visited an accepting
/// state. A position whose `lepF` is full may reset it; `Fᵃ` holds the words
/// where every position just reset.
pub fn build_augmented_losp(
    m: &FiniteSystem,
    losp: &Losp,
    leps: &[LocalExecutionProperty],
) -> Result<AugmentedLosp> {
    let sigma = m.alphabet();
    if leps.len() != losp.num_leps {
        return Err(Error::mismatch(format!(
            "{} local execution properties declared, negated losp expects {}",
            leps.len(),
            losp.num_leps
        )));
    }
    for l in leps {
        if l.automaton.alphabet() != sigma {
            return Err(Error::mismatch(format!("local execution property {} and system", l.name)));
        }
    }
    let layout = LospLayout::new(sigma, leps)?;
    let k = leps.len();
    let full = (1u32 << k) - 1;
    let sig2 = m.relation().pair_alphabet().clone();
    let graphs: Vec<&Graph> = leps
        .iter()
        .map(|l| l.side(true))
        .chain(leps.iter().map(|l| l.side(false)))
        .collect();

    // Letter pairs allowed at one position reading (a1, a2).
    let mut per_pair: Vec<Vec<Letter>> = Vec::with_capacity(sig2.len() as usize);
    let all_states: Vec<Vec<State>> = graphs.iter().map(|g| (0..g.num_states() as State).collect()).collect();
    let sources = choices(&all_states);
    for l in sig2.letters() {
        let t = sig2.decode(l);
        let (a1, a2) = (t[0], t[1]);
        let mut out = Vec::new();
        for q1 in &sources {
            let succ: Vec<Vec<State>> = q1
                .iter()
                .zip(&graphs)
                .map(|(&q, g)| g.step(q, Letter::from(a1)).collect())
                .collect();
            let targets = choices(&succ);
            for leps1 in 0..=full {
                let gained = (0..k).fold(0u32, |m, i| {
                    let positive = leps1 >> i & 1 == 1;
                    let q = if positive { q1[i] } else { q1[k + i] };
                    if graphs[if positive { i } else { k + i }].accepting[q as usize] {
                        m | 1 << i
                    } else {
                        m
                    }
                });
                for visited1 in 0..=full {
                    let next: Vec<(u32, bool)> = if visited1 == full {
                        vec![(0, true), (full, false)]
                    } else {
                        vec![(visited1 | gained, false)]
                    };
                    for reset1 in [false, true] {
                        let x = LospLabel {
                            symbol: a1,
                            lep_states: q1[..k].to_vec(),
                            neg_states: q1[k..].to_vec(),
                            leps: leps1,
                            visited: visited1,
                            reset: reset1,
                        };
                        let x = layout.encode(&x);
                        for q2 in &targets {
                            for &(visited2, reset2) in &next {
                                let y = LospLabel {
                                    symbol: a2,
                                    lep_states: q2[..k].to_vec(),
                                    neg_states: q2[k..].to_vec(),
                                    leps: leps1,
                                    visited: visited2,
                                    reset: reset2,
                                };
                                out.push(layout.pairs.encode(&[x, layout.encode(&y)]));
                            }
                        }
                    }
                }
            }
        }
        per_pair.push(out);
    }

    // Tᵃ_R: the transition graph of T_R with every letter expanded.
    let tr = m.relation().inner().graph();
    let mut g = Graph::new(layout.pairs.clone());
    for &acc in &tr.accepting {
        g.add_state(acc);
    }
    g.initial = tr.initial.clone();
    for (q, l, d) in tr.transitions() {
        for &x in &per_pair[l as usize] {
            g.add_transition(q, x, d);
        }
    }
    g.normalize();
    let relation = Transducer::new(Nfa::from_graph(g).canonical())?;

    // Aᵃ_S0: A_S0 × A_¬losp reading the Σ and lep-label components, with
    // initial automaton states, empty lepF and noreset everywhere.
    let init = m.initial().graph();
    let neg = losp.negation.graph();
    let initial_choices = choices(&graphs.iter().map(|g| g.initial.clone()).collect::<Vec<_>>());
    let mut a = Graph::new(layout.alphabet().clone());
    let nn = neg.num_states();
    for qs in 0..init.num_states() {
        for ql in 0..nn {
            a.add_state(init.accepting[qs] && neg.accepting[ql]);
        }
    }
    let id = |qs: State, ql: State| qs * nn as State + ql;
    for &qs in &init.initial {
        for &ql in &neg.initial {
            a.initial.push(id(qs, ql));
        }
    }
    for (qs, sym, qs2) in init.transitions() {
        for (ql, lab, ql2) in neg.transitions() {
            for q in &initial_choices {
                let x = LospLabel {
                    symbol: sym as u32,
                    lep_states: q[..k].to_vec(),
                    neg_states: q[k..].to_vec(),
                    leps: lab as u32,
                    visited: 0,
                    reset: false,
                };
                a.add_transition(id(qs, ql), Letter::from(layout.encode(&x)), id(qs2, ql2));
            }
        }
    }
    a.normalize();
    let initial = Nfa::from_graph(a).canonical();

    // Fᵃ: nonempty words in which every position is flagged reset.
    let mut f = Graph::new(layout.alphabet().clone());
    f.add_state(false);
    f.add_state(true);
    f.initial = vec![0];
    for s in 0..layout.alphabet().base_len() as u32 {
        if layout.label(Letter::from(s)).reset {
            f.add_transition(0, Letter::from(s), 1);
            f.add_transition(1, Letter::from(s), 1);
        }
    }
    f.normalize();
    let acceptance = Nfa::from_graph(f);

    let system = RegularSystem::new_unchecked(initial, relation)?;
    Ok(AugmentedLosp {
        system: BuchiRegularSystem::new(system, acceptance)?,
        layout,
    })
}

/// The `j`-th local projection of a lasso execution.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalProjection {
    pub position: usize,
    pub word: UpWord,
}

/// `Π_j` of a lasso over `Σ`: the letters at position `j` over time.
pub fn local_projection(w: &Witness<Word>, j: usize) -> Result<LocalProjection> {
    let s = w
        .loop_start
        .ok_or_else(|| Error::input("local projection needs a lasso"))?;
    let at = |x: &Word| -> Result<Letter> {
        x.letters()
            .get(j)
            .copied()
            .ok_or_else(|| Error::input(format!("position {j} beyond word length {}", x.len())))
    };
    let prefix = w.words[..s].iter().map(at).collect::<Result<Vec<_>>>()?;
    let period = w.words[s..].iter().map(at).collect::<Result<Vec<_>>>()?;
    Ok(LocalProjection {
        position: j,
        word: UpWord::new(Word::new(prefix), Word::new(period))?,
    })
}

/// Replays an accepting lasso of an augmented LOSP system: the lasso is
/// an accepting execution of the augmented system and `Π_Σ` of it an
/// execution of `m`; lep labels are constant per position and form a word
/// of `A_¬losp`; automaton states follow runs of every `A_lep`/`A_¬lep`
/// from initial states; and between consecutive global resets of the loop
/// every position visits an accepting state of each selected automaton.
pub fn replay_losp_witness(
    aug: &AugmentedLosp,
    m: &FiniteSystem,
    losp: &Losp,
    leps: &[LocalExecutionProperty],
    witness: &Witness<Word>,
) -> Result<bool> {
    let Some(s) = witness.loop_start else {
        return Ok(false);
    };
    if !aug.system.replay(witness)? {
        return Ok(false);
    }
    let projected = Witness {
        words: witness.words.iter().map(|w| aug.layout.project_sigma(w)).collect(),
        loop_start: Some(s),
    };
    if !replay_path(m, &projected)? {
        return Ok(false);
    }
    let k = leps.len();
    let labels: Vec<Vec<LospLabel>> = witness
        .words
        .iter()
        .map(|w| w.letters().iter().map(|&l| aug.layout.label(l)).collect())
        .collect();
    let n = labels[0].len();
    let first: Vec<u32> = labels[0].iter().map(|x| x.leps).collect();
    if labels.iter().any(|ls| ls.len() != n || ls.iter().map(|x| x.leps).ne(first.iter().copied())) {
        return Ok(false);
    }
    let label_word = Word::new(first.iter().map(|&x| Letter::from(x)).collect());
    if !losp.negation.accepts(&label_word)? {
        return Ok(false);
    }
    let states = |x: &LospLabel, i: usize| if i < k { x.lep_states[i] } else { x.neg_states[i - k] };
    let graph = |i: usize| if i < k { leps[i].side(true) } else { leps[i - k].side(false) };
    let len = labels.len();
    for j in 0..n {
        for i in 0..2 * k {
            if !graph(i).initial.contains(&states(&labels[0][j], i)) {
                return Ok(false);
            }
            for t in 0..len {
                let next = if t + 1 < len { t + 1 } else { s };
                let (x, y) = (&labels[t][j], &labels[next][j]);
                if !graph(i).step(states(x, i), Letter::from(x.symbol)).any(|q| q == states(y, i)) {
                    return Ok(false);
                }
            }
        }
    }
    let resets: Vec<usize> = (s..len).filter(|&t| labels[t].iter().all(|x| x.reset)).collect();
    if resets.is_empty() {
        return Ok(false);
    }
    for (idx, &r) in resets.iter().enumerate() {
        let end = resets.get(idx + 1).copied().unwrap_or(resets[0] + (len - s));
        let segment: Vec<usize> = (r..end).map(|t| if t < len { t } else { s + (t - len) }).collect();
        for j in 0..n {
            for i in 0..k {
                let positive = first[j] >> i & 1 == 1;
                let gi = if positive { i } else { k + i };
                if !segment
                    .iter()
                    .any(|&t| graph(gi).accepting[states(&labels[t][j], gi) as usize])
                {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Adds `flags` that can be true or false at any moment: the alphabet
/// becomes `Σ × {false, true}^k` (symbols `a_f` / `a_nf`), and every
/// transition is duplicated over all flag values.
pub fn extend_with_flags(m: &FiniteSystem, flags: &[&str]) -> Result<FiniteSystem> {
    if flags.is_empty() {
        return Ok(m.clone());
    }
    let sigma = m.alphabet();
    let k = flags.len();
    let size = (sigma.base_len() as u64).saturating_mul(1u64 << k.min(63));
    if k > 16 || size > MAX_LOSP_SYMBOLS {
        return Err(Error::AlphabetCapExceeded {
            size,
            cap: MAX_LOSP_SYMBOLS,
        });
    }
    let mut names = Vec::new();
    for a in sigma.symbols() {
        for mask in 0..1u32 << k {
            let mut s = a.clone();
            for (i, f) in flags.iter().enumerate() {
                s.push_str(if mask >> i & 1 == 1 { "_" } else { "_n" });
                s.push_str(f);
            }
            names.push(s);
        }
    }
    let ext = Alphabet::new(names)?;
    let lift = |a: u32| (a << k..(a + 1) << k).map(Letter::from);
    let init = m.initial().graph();
    let mut g = Graph::new(ext.clone());
    for &acc in &init.accepting {
        g.add_state(acc);
    }
    g.initial = init.initial.clone();
    for (q, l, d) in init.transitions() {
        for x in lift(l as u32) {
            g.add_transition(q, x, d);
        }
    }
    g.normalize();
    let pairs = ext.with_arity(2)?;
    let sig2 = m.relation().pair_alphabet().clone();
    let tr = m.relation().inner().graph();
    let mut t = Graph::new(pairs.clone());
    for &acc in &tr.accepting {
        t.add_state(acc);
    }
    t.initial = tr.initial.clone();
    for (q, l, d) in tr.transitions() {
        let p = sig2.decode(l);
        for x in lift(p[0]) {
            for y in lift(p[1]) {
                t.add_transition(q, pairs.encode(&[x as u32, y as u32]), d);
            }
        }
    }
    t.normalize();
    RegularSystem::new(Nfa::from_graph(g), Transducer::new(Nfa::from_graph(t))?)
}

/// Drops the flags of a word over an extended alphabet.
pub fn strip_flags(w: &Word, num_flags: usize) -> Word {
    Word::new(w.letters().iter().map(|&l| l >> num_flags).collect())
}

/// A Boolean combination of named checks. Negation is deliberately absent:
/// a negated property is checked by running the negated property.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VerdictExpr {
    Check(String),
    And(Vec<VerdictExpr>),
    Or(Vec<VerdictExpr>),
}

/// Three-valued evaluation: a conjunction holds when every part holds and
/// is violated when some part is; a disjunction dually; otherwise unknown.
pub fn combine_verdicts(expr: &VerdictExpr, verdicts: &BTreeMap<String, Status>) -> Result<Status> {
    match expr {
        VerdictExpr::Check(name) => verdicts
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnresolvedLiteral(name.clone())),
        VerdictExpr::And(parts) => {
            let vs = parts
                .iter()
                .map(|p| combine_verdicts(p, verdicts))
                .collect::<Result<Vec<_>>>()?;
            Ok(if vs.contains(&Status::Violated) {
                Status::Violated
            } else if vs.iter().all(|&v| v == Status::Holds) {
                Status::Holds
            } else {
                Status::Unknown
            })
        }
        VerdictExpr::Or(parts) => {
            let vs = parts
                .iter()
                .map(|p| combine_verdicts(p, verdicts))
                .collect::<Result<Vec<_>>>()?;
            Ok(if vs.contains(&Status::Holds) {
                Status::Holds
            } else if vs.iter().all(|&v| v == Status::Violated) {
                Status::Violated
            } else {
                Status::Unknown
            })
        }
    }
}
