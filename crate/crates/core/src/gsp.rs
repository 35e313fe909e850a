//! Global system properties: state properties, the negated-property
//! automaton, the augmented Büchi regular systems for finite and infinite
//! words, and loop-detection emptiness.

use rustc_hash::FxHashMap;

use crate::acceptor::{Acceptor, Mode, WordLike};
use crate::alphabet::{Alphabet, Letter};
use crate::augment::{subset_alphabet, subset_names, ProductSymbols};
use crate::error::{Error, Result};
use crate::graph::{Graph, State};
use crate::nfa::Nfa;
use crate::omega::Buchi;
use crate::system::{
    backtrack, reach_from, replay_path, BuchiRegularSystem, Diagnostics, RegularSystem, Verdict,
    Witness,
};
use crate::transducer::{ClosureKind, Transducer};

/// Default cap on the number of declared state properties.
pub const MAX_COPS: usize = 8;

/// Largest augmented alphabet the constructions will build.
pub const MAX_AUGMENTED_SYMBOLS: u64 = 65536;

/// A named set of states (`cop ⊆ Σ*`, or `cop ⊆ Σ^ω` in omega mode), held
/// as a complete deterministic automaton.
#[derive(Clone, Debug)]
pub struct StateProperty<A: Acceptor> {
    name: String,
    automaton: A,
}

impl<A: Acceptor> StateProperty<A> {
    /// Validates and completes the automaton. Nondeterministic automata are
    /// rejected with `IncompleteCopAutomaton`; in omega mode the automaton
    /// must also be weak.
    pub fn new(name: impl Into<String>, automaton: A) -> Result<Self> {
        let name = name.into();
        if automaton.alphabet().arity() != 1 {
            return Err(Error::mismatch(format!("state property {name} is not over Σ")));
        }
        if !automaton.is_deterministic() {
            return Err(Error::IncompleteCopAutomaton(name));
        }
        if A::MODE == Mode::Omega && !Buchi::from_graph(automaton.graph().clone()).classify().weak {
            return Err(Error::NotWeak(name));
        }
        let automaton = A::wrap(automaton.graph().complete());
        Ok(StateProperty { name, automaton })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn automaton(&self) -> &A {
        &self.automaton
    }

    fn start(&self) -> State {
        self.automaton.graph().initial[0]
    }

    fn next(&self, q: State, a: Letter) -> State {
        self.automaton
            .graph()
            .step(q, a)
            .next()
            .expect("state property automata are complete")
    }

    fn accepting(&self, q: State) -> bool {
        self.automaton.graph().accepting[q as usize]
    }
}

/// An element of `2^COP`: bit `i` is the `i`-th declared property.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CopSet(pub u32);

impl CopSet {
    pub fn contains(&self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    pub fn insert(&mut self, i: usize) {
        self.0 |= 1 << i;
    }

    /// Name of the corresponding symbol of the `2^COP` alphabet.
    pub fn name(&self, width: usize) -> String {
        subset_names(width)[self.0 as usize].clone()
    }
}

/// `cop(w)`: the declared properties satisfied by `w`.
pub fn cop_of<A: Acceptor>(w: &A::Word, cops: &[StateProperty<A>]) -> Result<CopSet> {
    let mut s = CopSet::default();
    for (i, c) in cops.iter().enumerate() {
        if c.automaton.accepts(w)? {
            s.insert(i);
        }
    }
    Ok(s)
}

/// `A_¬gsp`: a Büchi automaton over the `2^COP` alphabet accepting the
/// sequences of labels that violate the property.
#[derive(Clone, Debug)]
pub struct NegatedGsp {
    automaton: Buchi,
    num_cops: usize,
}

impl NegatedGsp {
    /// Checks the alphabet is exactly `2^COP` for `num_cops` properties and
    /// completes the automaton.
    pub fn new(automaton: Buchi, num_cops: usize) -> Result<Self> {
        if num_cops > MAX_COPS {
            return Err(Error::SizeCap {
                what: "state properties".into(),
                size: num_cops,
                cap: MAX_COPS,
            });
        }
        let expected = subset_alphabet(num_cops)?;
        if automaton.alphabet() != &expected {
            return Err(Error::mismatch(format!(
                "negated property over {:?}, expected {:?}",
                automaton.alphabet().symbols(),
                expected.symbols()
            )));
        }
        Ok(NegatedGsp {
            automaton: Buchi::from_graph(automaton.graph().complete()),
            num_cops,
        })
    }

    /// Negates a property given positively; only deterministic weak
    /// automata are complemented.
    pub fn from_gsp(gsp: &Buchi, num_cops: usize) -> Result<Self> {
        NegatedGsp::new(gsp.complement_weak_dba()?, num_cops)
    }

    pub fn automaton(&self) -> &Buchi {
        &self.automaton
    }

    pub fn num_cops(&self) -> usize {
        self.num_cops
    }

    fn num_states(&self) -> usize {
        self.automaton.num_states()
    }

    fn delta(&self, q: u32, lambda: u32) -> impl Iterator<Item = State> + '_ {
        self.automaton.g.step(q, Letter::from(lambda))
    }

    fn accepting(&self, q: u32) -> bool {
        self.automaton.g.accepting[q as usize]
    }

    fn initial(&self) -> &[State] {
        &self.automaton.g.initial
    }
}

/// The augmented alphabet: `Σ × (Q_¬gsp ∪ {⊥}) × (2^COP ∪ {⊥})` for finite
/// words, `Σ × Q_¬gsp × 2^COP` for infinite words. `⊥` is the last value
/// of its domain and is rendered `bot`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GspLayout {
    symbols: ProductSymbols,
    pairs: Alphabet,
    mode: Mode,
    num_states: u32,
    num_sets: u32,
}

/// Label components of one augmented letter.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GspLabel {
    pub symbol: u32,
    pub state: Option<u32>,
    pub cops: Option<CopSet>,
}

impl GspLayout {
    fn new(sigma: &Alphabet, neg: &NegatedGsp, mode: Mode) -> Result<Self> {
        let mut states: Vec<String> = (0..neg.num_states()).map(|i| format!("q{i}")).collect();
        let mut sets = subset_names(neg.num_cops);
        if mode == Mode::Finite {
            states.push("bot".into());
            sets.push("bot".into());
        }
        let symbols = ProductSymbols::new(
            &[sigma.symbols().to_vec(), states, sets],
            MAX_AUGMENTED_SYMBOLS,
        )?;
        let pairs = symbols.alphabet().with_arity(2)?;
        Ok(GspLayout {
            symbols,
            pairs,
            mode,
            num_states: neg.num_states() as u32,
            num_sets: 1 << neg.num_cops,
        })
    }

    pub fn alphabet(&self) -> &Alphabet {
        self.symbols.alphabet()
    }

    pub fn pair_alphabet(&self) -> &Alphabet {
        &self.pairs
    }

    fn letter(&self, a: u32, state: Option<u32>, cops: Option<u32>) -> u32 {
        self.symbols.encode(&[
            a,
            state.unwrap_or(self.num_states),
            cops.unwrap_or(self.num_sets),
        ])
    }

    fn pair(&self, x: u32, y: u32) -> Letter {
        self.pairs.encode(&[x, y])
    }

    pub fn label(&self, letter: Letter) -> GspLabel {
        let p = self.symbols.decode(letter as u32);
        GspLabel {
            symbol: p[0],
            state: (p[1] < self.num_states).then_some(p[1]),
            cops: (p[2] < self.num_sets).then_some(CopSet(p[2])),
        }
    }

    /// The automaton over the augmented alphabet accepting `w` iff `a`
    /// accepts `Π_Σ(w)`.
    pub fn lift<A: Acceptor>(&self, a: &A) -> A {
        let src = a.graph();
        let mut by_symbol = vec![Vec::new(); src.alphabet.base_len()];
        for s in 0..self.alphabet().base_len() as u32 {
            by_symbol[self.symbols.decode(s)[0] as usize].push(Letter::from(s));
        }
        let mut g = Graph::new(self.alphabet().clone());
        for &acc in &src.accepting {
            g.add_state(acc);
        }
        g.initial = src.initial.clone();
        for (q, l, d) in src.transitions() {
            for &x in &by_symbol[l as usize] {
                g.add_transition(q, x, d);
            }
        }
        g.normalize();
        A::wrap(g)
    }

    /// `Π_Σ`: drops the labels.
    pub fn project_sigma<W: WordLike>(&self, w: &W) -> W {
        w.map_letters(|l| Letter::from(self.label(l).symbol))
    }

    /// The `(state, cop set)` label a word carries: on its last letter in
    /// finite mode (other letters must be unlabeled), uniformly in omega
    /// mode. `None` for words of the wrong shape.
    pub fn word_label<W: WordLike>(&self, w: &W) -> Option<(u32, CopSet)> {
        let letters = w.positions();
        let labels: Vec<GspLabel> = letters.iter().map(|&l| self.label(l)).collect();
        match self.mode {
            Mode::Finite => {
                let (last, rest) = labels.split_last()?;
                if rest.iter().any(|x| x.state.is_some() || x.cops.is_some()) {
                    return None;
                }
                Some((last.state?, last.cops?))
            }
            Mode::Omega => {
                let first = labels.first()?;
                if labels.iter().any(|x| (x.state, x.cops) != (first.state, first.cops)) {
                    return None;
                }
                Some((first.state?, first.cops?))
            }
        }
    }
}

/// `M^a_¬gsp` with the layout of its alphabet.
#[derive(Clone, Debug)]
pub struct AugmentedGsp<A: Acceptor> {
    pub system: BuchiRegularSystem<A>,
    pub layout: GspLayout,
}

fn check_cops<A: Acceptor>(sigma: &Alphabet, neg: &NegatedGsp, cops: &[StateProperty<A>]) -> Result<()> {
    if cops.len() != neg.num_cops {
        return Err(Error::mismatch(format!(
            "{} state properties declared, negated property expects {}",
            cops.len(),
            neg.num_cops
        )));
    }
    for c in cops {
        if c.automaton.alphabet() != sigma {
            return Err(Error::mismatch(format!("state property {} and system", c.name)));
        }
    }
    Ok(())
}

/// Interns product states during a breadth-first construction.
struct Builder<K> {
    ids: FxHashMap<K, State>,
    queue: Vec<K>,
    g: Graph,
}

impl<K: Clone + Eq + std::hash::Hash> Builder<K> {
    fn new(alphabet: Alphabet) -> Self {
        Builder {
            ids: FxHashMap::default(),
            queue: Vec::new(),
            g: Graph::new(alphabet),
        }
    }

    fn id(&mut self, k: K, accepting: impl Fn(&K) -> bool) -> State {
        if let Some(&q) = self.ids.get(&k) {
            return q;
        }
        let q = self.g.add_state(accepting(&k));
        self.ids.insert(k.clone(), q);
        self.queue.push(k);
        q
    }

    fn finish(mut self) -> Graph {
        self.g.normalize();
        self.g
    }
}

fn cop_mask<A: Acceptor>(cops: &[StateProperty<A>], qc: &[State]) -> u32 {
    qc.iter()
        .zip(cops)
        .enumerate()
        .filter(|(_, (&q, c))| c.accepting(q))
        .fold(0, |m, (i, _)| m | 1 << i)
}

/// Builds `M^a_¬gsp` for a finite-word system. Transducer states are
/// `(q_R, q_cop₁ … q_copₖ, b)`; only the last letter of each word carries
/// labels, the flag `b` records that it was read, and that letter checks
/// `α₂ ∈ Δ_¬gsp(α₁, λ₁)` and `q'_copᵢ ∈ F_copᵢ ⇔ copᵢ ∈ λ₁`.
pub fn build_augmented_finite(
    m: &RegularSystem<Nfa>,
    neg: &NegatedGsp,
    cops: &[StateProperty<Nfa>],
) -> Result<AugmentedGsp<Nfa>> {
    let sigma = m.alphabet();
    check_cops(sigma, neg, cops)?;
    let layout = GspLayout::new(sigma, neg, Mode::Finite)?;
    let nq = neg.num_states() as u32;
    let nsets = 1u32 << neg.num_cops;
    let sig2 = m.relation().pair_alphabet().clone();

    // Tᵃ_R
    let tr = m.relation().inner().graph();
    type Key = (State, Vec<State>, bool);
    let mut b: Builder<Key> = Builder::new(layout.pairs.clone());
    let accepting = |k: &Key| k.2 && tr.accepting[k.0 as usize];
    let start: Vec<State> = cops.iter().map(|c| c.start()).collect();
    for &q in &tr.initial {
        let id = b.id((q, start.clone(), false), accepting);
        b.g.initial.push(id);
    }
    let mut next = 0;
    while next < b.queue.len() {
        let (qr, qc, flag) = b.queue[next].clone();
        let src = b.ids[&b.queue[next]];
        next += 1;
        if flag {
            continue;
        }
        for &(l, qr2) in &tr.succ[qr as usize] {
            let t = sig2.decode(l);
            let (a1, a2) = (t[0], t[1]);
            let qc2: Vec<State> = qc.iter().zip(cops).map(|(&q, c)| c.next(q, Letter::from(a1))).collect();
            let plain = layout.pair(layout.letter(a1, None, None), layout.letter(a2, None, None));
            let dst = b.id((qr2, qc2.clone(), false), accepting);
            b.g.add_transition(src, plain, dst);
            let lambda1 = cop_mask(cops, &qc2);
            let dst = b.id((qr2, qc2, true), accepting);
            for alpha1 in 0..nq {
                let x = layout.letter(a1, Some(alpha1), Some(lambda1));
                for alpha2 in neg.delta(alpha1, lambda1) {
                    for lambda2 in 0..nsets {
                        let y = layout.letter(a2, Some(alpha2), Some(lambda2));
                        b.g.add_transition(src, layout.pair(x, y), dst);
                    }
                }
            }
        }
    }
    let relation = Transducer::new(Nfa::from_graph(b.finish()).canonical())?;

    // Aᵃ_S0 = A_S0 ×̄ (⊥⊥)*(q₀ × 2^COP)
    let init = m.initial().graph();
    let mut g = Graph::new(layout.alphabet().clone());
    let n = init.num_states() as State;
    for _ in 0..n {
        g.add_state(false);
    }
    for q in 0..n {
        g.add_state(init.accepting[q as usize]);
    }
    g.initial = init.initial.clone();
    for q in 0..n {
        for &(a, q2) in &init.succ[q as usize] {
            let a = a as u32;
            g.add_transition(q, Letter::from(layout.letter(a, None, None)), q2);
            for &alpha in neg.initial() {
                for lambda in 0..nsets {
                    g.add_transition(q, Letter::from(layout.letter(a, Some(alpha), Some(lambda))), q2 + n);
                }
            }
        }
    }
    g.normalize();
    let initial = Nfa::from_graph(g).canonical();

    // Fᵃ = (Σ×⊥×⊥)*(Σ×F_¬gsp×2^COP)
    let mut f = Graph::new(layout.alphabet().clone());
    f.add_state(false);
    f.add_state(true);
    f.initial = vec![0];
    for a in 0..sigma.base_len() as u32 {
        f.add_transition(0, Letter::from(layout.letter(a, None, None)), 0);
        for alpha in (0..nq).filter(|&q| neg.accepting(q)) {
            for lambda in 0..nsets {
                f.add_transition(0, Letter::from(layout.letter(a, Some(alpha), Some(lambda))), 1);
            }
        }
    }
    f.normalize();
    let acceptance = Nfa::from_graph(f).canonical();

    let system = RegularSystem::new_unchecked(initial, relation)?;
    Ok(AugmentedGsp {
        system: BuchiRegularSystem::new(system, acceptance)?,
        layout,
    })
}

/// Builds `M^a_¬gsp` for an ω-word system. Every position of a word
/// carries the same label `(α, λ)`; the transducer remembers the labels of
/// both words after the first letter, so related words are uniformly
/// labeled. Accepting transducer states are those with `q_R ∈ F_R` whose
/// cop states agree with `λ₁`.
pub fn build_augmented_omega(
    m: &RegularSystem<Buchi>,
    neg: &NegatedGsp,
    cops: &[StateProperty<Buchi>],
) -> Result<AugmentedGsp<Buchi>> {
    let sigma = m.alphabet();
    check_cops(sigma, neg, cops)?;
    let layout = GspLayout::new(sigma, neg, Mode::Omega)?;
    let nq = neg.num_states() as u32;
    let nsets = 1u32 << neg.num_cops;
    let sig2 = m.relation().pair_alphabet().clone();

    // Tᵃ_R: states (q_R, q_cops, labels of both words once fixed)
    let tr = m.relation().inner().graph();
    type Key = (State, Vec<State>, Option<[u32; 4]>);
    let mut b: Builder<Key> = Builder::new(layout.pairs.clone());
    let accepting = |k: &Key| match k.2 {
        Some(lab) => tr.accepting[k.0 as usize] && cop_mask(cops, &k.1) == lab[1],
        None => false,
    };
    let start: Vec<State> = cops.iter().map(|c| c.start()).collect();
    for &q in &tr.initial {
        let id = b.id((q, start.clone(), None), accepting);
        b.g.initial.push(id);
    }
    let all_labels: Vec<[u32; 4]> = (0..nq)
        .flat_map(|a1| (0..nsets).map(move |l1| (a1, l1)))
        .flat_map(|(a1, l1)| {
            neg.delta(a1, l1)
                .flat_map(move |a2| (0..nsets).map(move |l2| [a1, l1, a2, l2]))
                .collect::<Vec<_>>()
        })
        .collect();
    let mut next = 0;
    while next < b.queue.len() {
        let (qr, qc, lab) = b.queue[next].clone();
        let src = b.ids[&b.queue[next]];
        next += 1;
        let choices: Vec<[u32; 4]> = match lab {
            Some(l) => vec![l],
            None => all_labels.clone(),
        };
        for &(l, qr2) in &tr.succ[qr as usize] {
            let t = sig2.decode(l);
            let (a1, a2) = (t[0], t[1]);
            let qc2: Vec<State> = qc.iter().zip(cops).map(|(&q, c)| c.next(q, Letter::from(a1))).collect();
            for &c in &choices {
                let x = layout.letter(a1, Some(c[0]), Some(c[1]));
                let y = layout.letter(a2, Some(c[2]), Some(c[3]));
                let dst = b.id((qr2, qc2.clone(), Some(c)), accepting);
                b.g.add_transition(src, layout.pair(x, y), dst);
            }
        }
    }
    let relation = Transducer::new(Buchi::from_graph(b.finish()))?;

    // Aᵃ_S0: words of A_S0 labeled uniformly with an initial state of
    // A_¬gsp and any cop set.
    let init = m.initial().graph();
    type IKey = (State, Option<(u32, u32)>);
    let mut ib: Builder<IKey> = Builder::new(layout.alphabet().clone());
    let iacc = |k: &IKey| k.1.is_some() && init.accepting[k.0 as usize];
    for &q in &init.initial {
        let id = ib.id((q, None), iacc);
        ib.g.initial.push(id);
    }
    let mut next = 0;
    while next < ib.queue.len() {
        let (q, lab) = ib.queue[next];
        let src = ib.ids[&ib.queue[next]];
        next += 1;
        let choices: Vec<(u32, u32)> = match lab {
            Some(l) => vec![l],
            None => neg
                .initial()
                .iter()
                .flat_map(|&a| (0..nsets).map(move |l| (a, l)))
                .collect(),
        };
        for &(a, q2) in &init.succ[q as usize] {
            for &(alpha, lambda) in &choices {
                let dst = ib.id((q2, Some((alpha, lambda))), iacc);
                ib.g.add_transition(src, Letter::from(layout.letter(a as u32, Some(alpha), Some(lambda))), dst);
            }
        }
    }
    let initial = Buchi::from_graph(ib.finish());

    // Fᵃ: uniformly labeled words whose state label is accepting in A_¬gsp.
    let mut f = Graph::new(layout.alphabet().clone());
    f.add_state(false);
    f.initial = vec![0];
    for alpha in (0..nq).filter(|&q| neg.accepting(q)) {
        for lambda in 0..nsets {
            let s = f.add_state(true);
            for a in 0..sigma.base_len() as u32 {
                let l = Letter::from(layout.letter(a, Some(alpha), Some(lambda)));
                f.add_transition(0, l, s);
                f.add_transition(s, l, s);
            }
        }
    }
    f.normalize();
    let acceptance = Buchi::from_graph(f);

    let system = RegularSystem::new_unchecked(initial, relation)?;
    Ok(AugmentedGsp {
        system: BuchiRegularSystem::new(system, acceptance)?,
        layout,
    })
}

/// Loop-detection emptiness: `L(T*(A_S0) ∩ F ∩ Π≠2(T⁺ ∩ T_id)) = ∅`.
///
/// The transducer is first restricted to the reachable set, which leaves
/// the formula unchanged. A nonempty result yields a lasso rebuilt from
/// concrete images and is reported `Violated`; an empty result is `Holds`
/// only when both the reachable set and the closure converged.
pub fn check_emptiness_loop<A: Acceptor>(
    msys: &BuchiRegularSystem<A>,
    budget: usize,
) -> Result<Verdict<A::Word>> {
    let t = msys.system.relation();
    let reach = reach_from(t, msys.system.initial(), budget)?;
    let restricted = t.restrict_domain(&reach.set)?.canonical()?;
    let mut diag = Diagnostics {
        steps: reach.steps,
        ..Diagnostics::default()
    };
    if budget == 0 {
        return Ok(Verdict::unknown("budget is zero", diag));
    }
    let plus = restricted.closure(ClosureKind::Plus, budget, None)?;
    diag.steps = reach.steps.max(plus.steps_used);
    let looping = plus.relation.diagonal()?;
    let x = looping.intersect(&msys.acceptance)?.intersect(&reach.set)?;
    if let Some(w) = x.pick() {
        if let Some(witness) = lasso_through(&restricted, &reach.frontiers, w, budget + 1)? {
            diag.converged = reach.converged && plus.converged;
            return Ok(Verdict::violated(witness, diag));
        }
        return Ok(Verdict::unknown(
            "accepting loop found symbolically but not rebuilt within budget",
            diag,
        ));
    }
    if reach.converged && plus.converged {
        diag.converged = true;
        return Ok(Verdict::holds(diag));
    }
    let what = if reach.converged { "transitive closure" } else { "reachable set" };
    Ok(Verdict::unknown(
        format!("no accepting loop found but {what} not converged within budget {budget}"),
        diag,
    ))
}

/// A lasso `w₀ … w … w` with `w` reachable and `w →⁺ w`, using images of
/// `{w}` for the loop (at most `max_loop` steps).
pub(crate) fn lasso_through<A: Acceptor>(
    t: &Transducer<A>,
    frontiers: &[A],
    w: A::Word,
    max_loop: usize,
) -> Result<Option<Witness<A::Word>>> {
    let alphabet = frontiers[0].alphabet().clone();
    let Some(k) = frontiers.iter().map(|f| f.accepts(&w)).position(|r| matches!(r, Ok(true))) else {
        return Ok(None);
    };
    let mut words = backtrack(t, frontiers, k, w.clone())?;
    let single = A::singleton(&alphabet, &w)?.canonical()?;
    let mut layers = vec![single.clone()];
    for i in 1..=max_loop {
        let next = t.image(&layers[i - 1])?;
        if next.is_empty() {
            return Ok(None);
        }
        let closes = next.accepts(&w)?;
        layers.push(next);
        if closes {
            layers[i] = single;
            let cycle = backtrack(t, &layers, i, w)?;
            let loop_start = words.len() - 1;
            words.extend(cycle[1..i].iter().cloned());
            return Ok(Some(Witness {
                words,
                loop_start: Some(loop_start),
            }));
        }
    }
    Ok(None)
}

/// Replays an accepting lasso of an augmented system against the original
/// system and properties: the augmented lasso is a valid accepting
/// execution, its `Π_Σ` projection is an execution of `m`, every word is
/// labeled with its true cop set, and the label trace is an accepting run
/// of `A_¬gsp`.
pub fn replay_gsp_witness<A: Acceptor>(
    aug: &AugmentedGsp<A>,
    m: &RegularSystem<A>,
    neg: &NegatedGsp,
    cops: &[StateProperty<A>],
    witness: &Witness<A::Word>,
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
    let mut labels = Vec::new();
    for (w, p) in witness.words.iter().zip(&projected.words) {
        let Some((alpha, lambda)) = aug.layout.word_label(w) else {
            return Ok(false);
        };
        if cop_of(p, cops)? != lambda {
            return Ok(false);
        }
        labels.push((alpha, lambda));
    }
    if !neg.initial().contains(&labels[0].0) {
        return Ok(false);
    }
    let n = labels.len();
    for i in 0..n {
        let (alpha, lambda) = labels[i];
        let target = labels[if i + 1 < n { i + 1 } else { s }].0;
        if !neg.delta(alpha, lambda.0).any(|q| q == target) {
            return Ok(false);
        }
    }
    Ok(labels[s..].iter().any(|&(alpha, _)| neg.accepting(alpha)))
}
