//! Finite-word automata: construction, Boolean operations, determinization,
//! canonical minimization, synchronous products and projections.

use std::collections::VecDeque;

use rustc_hash::FxHashMap;

use crate::alphabet::{Alphabet, Letter, Word};
use crate::error::{Error, Result};
use crate::graph::{join, merged_base, Graph, ProductAcceptance, State};

/// A finite-word automaton (NFA or DFA) over an indexed alphabet.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Nfa {
    pub(crate) g: Graph,
}

/// Binary and unary set operations on languages.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoolOp {
    Union,
    Intersect,
    Complement,
    Difference,
}

impl Nfa {
    /// Builds an automaton from explicit parts; every reference is checked.
    pub fn from_parts(
        alphabet: Alphabet,
        num_states: usize,
        initial: impl IntoIterator<Item = State>,
        accepting: impl IntoIterator<Item = State>,
        transitions: impl IntoIterator<Item = (State, Letter, State)>,
    ) -> Result<Self> {
        Ok(Nfa {
            g: graph_from_parts(alphabet, num_states, initial, accepting, transitions)?,
        })
    }

    pub(crate) fn from_graph(g: Graph) -> Self {
        Nfa { g }
    }

    pub fn graph(&self) -> &Graph {
        &self.g
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.g.alphabet
    }

    pub fn num_states(&self) -> usize {
        self.g.num_states()
    }

    pub fn initial(&self) -> &[State] {
        &self.g.initial
    }

    pub fn is_accepting(&self, q: State) -> bool {
        self.g.accepting[q as usize]
    }

    pub fn is_deterministic(&self) -> bool {
        self.g.is_deterministic()
    }

    pub fn is_complete(&self) -> bool {
        self.g.is_complete()
    }

    /// The empty language.
    pub fn empty(alphabet: &Alphabet) -> Self {
        Nfa {
            g: Graph::new(alphabet.clone()),
        }
    }

    /// All finite words, `Σ*`.
    pub fn universal(alphabet: &Alphabet) -> Self {
        let mut g = Graph::new(alphabet.clone());
        let q = g.add_state(true);
        g.initial.push(q);
        for l in alphabet.letters() {
            g.add_transition(q, l, q);
        }
        Nfa { g }
    }

    /// All words of length exactly `n`.
    pub fn length_exactly(alphabet: &Alphabet, n: usize) -> Self {
        let mut g = Graph::new(alphabet.clone());
        let states: Vec<State> = (0..=n).map(|i| g.add_state(i == n)).collect();
        g.initial.push(states[0]);
        for i in 0..n {
            for l in alphabet.letters() {
                g.add_transition(states[i], l, states[i + 1]);
            }
        }
        Nfa { g }
    }

    /// The singleton language `{w}`.
    pub fn word(alphabet: &Alphabet, w: &Word) -> Result<Self> {
        Self::words(alphabet, std::slice::from_ref(w))
    }

    /// A finite language given by its words.
    pub fn words(alphabet: &Alphabet, ws: &[Word]) -> Result<Self> {
        let mut g = Graph::new(alphabet.clone());
        let root = g.add_state(false);
        g.initial.push(root);
        let mut trie: FxHashMap<(State, Letter), State> = FxHashMap::default();
        for w in ws {
            alphabet.check_word(w)?;
            let mut q = root;
            for &l in w.letters() {
                q = match trie.get(&(q, l)) {
                    Some(&d) => d,
                    None => {
                        let d = g.add_state(false);
                        g.add_transition(q, l, d);
                        trie.insert((q, l), d);
                        d
                    }
                };
            }
            g.accepting[q as usize] = true;
        }
        g.normalize();
        Ok(Nfa { g })
    }

    /// True iff some run on `w` ends in an accepting state.
    pub fn accepts(&self, w: &Word) -> Result<bool> {
        self.g.alphabet.check_word(w)?;
        let mut cur: Vec<State> = self.g.initial.clone();
        let mut next = Vec::new();
        for &l in w.letters() {
            next.clear();
            for &q in &cur {
                next.extend(self.g.step(q, l));
            }
            next.sort_unstable();
            next.dedup();
            std::mem::swap(&mut cur, &mut next);
            if cur.is_empty() {
                return Ok(false);
            }
        }
        Ok(cur.iter().any(|&q| self.g.accepting[q as usize]))
    }

    /// Subset construction. The result is deterministic and complete, with
    /// states numbered in breadth-first discovery order and the rejecting
    /// sink (if needed) as the highest-numbered state.
    pub fn determinize(&self) -> Nfa {
        Nfa {
            g: subset_construction(&self.g.trim()).complete(),
        }
    }

    /// Canonical minimal complete DFA. Equal languages give identical
    /// automata (and therefore identical serializations).
    pub fn minimize(&self) -> Nfa {
        Nfa {
            g: self.canonical().g.complete(),
        }
    }

    /// Canonical minimal trimmed DFA (no sink). Equal languages give equal
    /// values; cheaper than [`Nfa::minimize`] for large alphabets.
    pub fn canonical(&self) -> Nfa {
        let d = if self.is_deterministic() {
            self.g.clone()
        } else {
            subset_construction(&self.g.trim())
        };
        Nfa {
            g: moore_minimize(&d.trim()),
        }
    }

    pub fn complement(&self) -> Nfa {
        let mut d = self.determinize();
        for a in &mut d.g.accepting {
            *a = !*a;
        }
        d
    }

    pub fn union(&self, other: &Nfa) -> Result<Nfa> {
        self.check_same_alphabet(other)?;
        Ok(Nfa {
            g: self.g.disjoint_union(&other.g),
        })
    }

    pub fn intersect(&self, other: &Nfa) -> Result<Nfa> {
        self.check_same_alphabet(other)?;
        let k = self.alphabet().arity();
        let pos: Vec<usize> = (0..k).collect();
        Ok(Nfa {
            g: join(&self.g, &pos, &other.g, &pos, k, ProductAcceptance::Both)?,
        })
    }

    /// `L(self) ∖ L(other)`, computed with an on-the-fly subset construction
    /// of `other`.
    pub fn difference(&self, other: &Nfa) -> Result<Nfa> {
        self.check_same_alphabet(other)?;
        Ok(Nfa {
            g: lazy_difference(&self.g, &other.g),
        })
    }

    pub fn boolean(op: BoolOp, a: &Nfa, b: Option<&Nfa>) -> Result<Nfa> {
        let need = || b.ok_or_else(|| Error::input("binary operation needs two operands"));
        match op {
            BoolOp::Union => a.union(need()?),
            BoolOp::Intersect => a.intersect(need()?),
            BoolOp::Difference => a.difference(need()?),
            BoolOp::Complement => Ok(a.complement()),
        }
    }

    /// Synchronous product of two or more automata; the result is over the
    /// tuple alphabet whose arity is the sum of the component arities.
    pub fn sync_product(parts: &[&Nfa]) -> Result<Nfa> {
        if parts.len() < 2 {
            return Err(Error::input("synchronous product needs at least two automata"));
        }
        let alphabets: Vec<&Alphabet> = parts.iter().map(|p| p.alphabet()).collect();
        let (base, maps) = merged_base(&alphabets)?;
        let rebased: Vec<Graph> = parts
            .iter()
            .zip(&maps)
            .map(|(p, m)| p.g.rebase(&base, m))
            .collect::<Result<_>>()?;
        let mut acc = rebased[0].clone();
        for next in &rebased[1..] {
            let ka = acc.alphabet.arity();
            let kb = next.alphabet.arity();
            let pa: Vec<usize> = (0..ka).collect();
            let pb: Vec<usize> = (ka..ka + kb).collect();
            acc = join(&acc, &pa, next, &pb, ka + kb, ProductAcceptance::Both)?;
        }
        Ok(Nfa { g: acc })
    }

    /// Projection removing tuple component `component` (1-based).
    pub fn project(&self, component: usize) -> Result<Nfa> {
        if component == 0 {
            return Err(Error::BadIndex {
                index: 0,
                arity: self.alphabet().arity(),
            });
        }
        Ok(Nfa {
            g: self.g.project_out(component - 1)?,
        })
    }

    pub fn is_empty(&self) -> bool {
        let r = self.g.reachable();
        !r.iter().zip(&self.g.accepting).any(|(a, b)| *a && *b)
    }

    /// `L(self) ⊆ L(other)`, decided as emptiness of `self ∖ other`.
    pub fn includes_in(&self, other: &Nfa) -> Result<bool> {
        Ok(self.difference(other)?.is_empty())
    }

    /// `L(b) ⊆ L(a)`.
    pub fn includes(a: &Nfa, b: &Nfa) -> Result<bool> {
        b.includes_in(a)
    }

    pub fn equivalent(&self, other: &Nfa) -> Result<bool> {
        Ok(self.includes_in(other)? && other.includes_in(self)?)
    }

    /// A shortest accepted word, if any.
    pub fn shortest_word(&self) -> Option<Word> {
        let n = self.num_states();
        let mut parent: Vec<Option<(State, Letter)>> = vec![None; n];
        let mut seen = vec![false; n];
        let mut queue = VecDeque::new();
        for &q in &self.g.initial {
            seen[q as usize] = true;
            queue.push_back(q);
        }
        while let Some(q) = queue.pop_front() {
            if self.g.accepting[q as usize] {
                let mut letters = Vec::new();
                let mut cur = q;
                while let Some((p, l)) = parent[cur as usize] {
                    letters.push(l);
                    cur = p;
                }
                letters.reverse();
                return Some(Word::new(letters));
            }
            for &(l, d) in &self.g.succ[q as usize] {
                if !seen[d as usize] {
                    seen[d as usize] = true;
                    parent[d as usize] = Some((q, l));
                    queue.push_back(d);
                }
            }
        }
        None
    }

    /// All accepted words of length at most `max_len`, sorted.
    pub fn enumerate(&self, max_len: usize) -> Vec<Word> {
        let mut out = Vec::new();
        let mut frontier: Vec<(Vec<Letter>, Vec<State>)> = vec![(Vec::new(), self.g.initial.clone())];
        for len in 0..=max_len {
            let mut next = Vec::new();
            for (w, qs) in &frontier {
                if qs.iter().any(|&q| self.g.accepting[q as usize]) {
                    out.push(Word::new(w.clone()));
                }
                if len == max_len {
                    continue;
                }
                let mut by_letter: FxHashMap<Letter, Vec<State>> = FxHashMap::default();
                for &q in qs {
                    for &(l, d) in &self.g.succ[q as usize] {
                        by_letter.entry(l).or_default().push(d);
                    }
                }
                for (l, mut ds) in by_letter {
                    ds.sort_unstable();
                    ds.dedup();
                    let mut w2 = w.clone();
                    w2.push(l);
                    next.push((w2, ds));
                }
            }
            frontier = next;
        }
        out.sort();
        out
    }

    /// Restriction to words of length exactly `n`.
    pub fn restrict_length(&self, n: usize) -> Result<Nfa> {
        self.intersect(&Nfa::length_exactly(self.alphabet(), n))
    }

    fn check_same_alphabet(&self, other: &Nfa) -> Result<()> {
        if self.alphabet() != other.alphabet() {
            return Err(Error::mismatch(format!(
                "{:?} vs {:?}",
                self.alphabet(),
                other.alphabet()
            )));
        }
        Ok(())
    }
}

pub(crate) fn graph_from_parts(
    alphabet: Alphabet,
    num_states: usize,
    initial: impl IntoIterator<Item = State>,
    accepting: impl IntoIterator<Item = State>,
    transitions: impl IntoIterator<Item = (State, Letter, State)>,
) -> Result<Graph> {
    let mut g = Graph::new(alphabet);
    for _ in 0..num_states {
        g.add_state(false);
    }
    g.initial = initial.into_iter().collect();
    for q in accepting {
        if q as usize >= num_states {
            return Err(Error::input(format!("accepting state {q} out of range")));
        }
        g.accepting[q as usize] = true;
    }
    for (s, l, d) in transitions {
        if s as usize >= num_states {
            return Err(Error::input(format!("transition source {s} out of range")));
        }
        g.succ[s as usize].push((l, d));
    }
    g.checked()
}

/// Subset construction without completion; state 0 is the initial subset
/// (absent if the automaton has no initial state).
pub(crate) fn subset_construction(g: &Graph) -> Graph {
    let mut out = Graph::new(g.alphabet.clone());
    let start: Vec<State> = g.initial.clone();
    if start.is_empty() {
        return out;
    }
    let mut ids: FxHashMap<Vec<State>, State> = FxHashMap::default();
    let mut queue: VecDeque<(Vec<State>, State)> = VecDeque::new();
    let acc = |set: &[State]| set.iter().any(|&q| g.accepting[q as usize]);
    let s0 = out.add_state(acc(&start));
    out.initial.push(s0);
    ids.insert(start.clone(), s0);
    queue.push_back((start, s0));
    let mut moves: Vec<(Letter, State)> = Vec::new();
    while let Some((set, id)) = queue.pop_front() {
        moves.clear();
        for &q in &set {
            moves.extend_from_slice(&g.succ[q as usize]);
        }
        moves.sort_unstable();
        moves.dedup();
        let mut i = 0;
        while i < moves.len() {
            let l = moves[i].0;
            let mut target = Vec::new();
            while i < moves.len() && moves[i].0 == l {
                target.push(moves[i].1);
                i += 1;
            }
            let dst = match ids.get(&target) {
                Some(&d) => d,
                None => {
                    let d = out.add_state(acc(&target));
                    ids.insert(target.clone(), d);
                    queue.push_back((target, d));
                    d
                }
            };
            out.succ[id as usize].push((l, dst));
        }
    }
    out
}

/// Moore partition refinement on a trimmed partial DFA, followed by
/// canonical breadth-first renumbering.
pub(crate) fn moore_minimize(d: &Graph) -> Graph {
    let n = d.num_states();
    if n == 0 {
        return Graph::new(d.alphabet.clone());
    }
    let mut class: Vec<u32> = d.accepting.iter().map(|&a| a as u32).collect();
    let mut count = {
        let mut c = class.clone();
        c.sort_unstable();
        c.dedup();
        c.len()
    };
    loop {
        let mut ids: FxHashMap<(u32, Vec<(Letter, u32)>), u32> = FxHashMap::default();
        let mut next = vec![0u32; n];
        for q in 0..n {
            let sig: Vec<(Letter, u32)> = d.succ[q]
                .iter()
                .map(|&(l, t)| (l, class[t as usize]))
                .collect();
            let len = ids.len() as u32;
            next[q] = *ids.entry((class[q], sig)).or_insert(len);
        }
        let new_count = ids.len();
        class = next;
        if new_count == count {
            break;
        }
        count = new_count;
    }
    let mut q = Graph::new(d.alphabet.clone());
    let mut rep = vec![u32::MAX; count];
    for s in 0..n {
        if rep[class[s] as usize] == u32::MAX {
            rep[class[s] as usize] = s as u32;
        }
    }
    for c in 0..count {
        q.add_state(d.accepting[rep[c] as usize]);
    }
    for c in 0..count {
        let s = rep[c] as usize;
        q.succ[c] = d.succ[s].iter().map(|&(l, t)| (l, class[t as usize])).collect();
    }
    q.initial = d.initial.iter().map(|&s| class[s as usize]).collect();
    q.normalize();
    q.bfs_renumber()
}

/// Product of `a` with the on-the-fly determinization of `b`, accepting
/// where `a` accepts and the `b`-subset does not.
pub(crate) fn lazy_difference(a: &Graph, b: &Graph) -> Graph {
    let mut out = Graph::new(a.alphabet.clone());
    let mut subsets: FxHashMap<Vec<State>, u32> = FxHashMap::default();
    let mut subset_list: Vec<Vec<State>> = Vec::new();
    let mut subset_acc: Vec<bool> = Vec::new();
    let mut intern_subset = |s: Vec<State>, list: &mut Vec<Vec<State>>, acc: &mut Vec<bool>| -> u32 {
        if let Some(&i) = subsets.get(&s) {
            return i;
        }
        let i = list.len() as u32;
        acc.push(s.iter().any(|&q| b.accepting[q as usize]));
        subsets.insert(s.clone(), i);
        list.push(s);
        i
    };
    let b0 = intern_subset(b.initial.clone(), &mut subset_list, &mut subset_acc);
    let mut ids: FxHashMap<(State, u32), State> = FxHashMap::default();
    let mut queue: VecDeque<(State, u32, State)> = VecDeque::new();
    for &qa in &a.initial {
        let id = out.add_state(a.accepting[qa as usize] && !subset_acc[b0 as usize]);
        ids.insert((qa, b0), id);
        out.initial.push(id);
        queue.push_back((qa, b0, id));
    }
    let mut step_cache: FxHashMap<(u32, Letter), u32> = FxHashMap::default();
    while let Some((qa, sb, id)) = queue.pop_front() {
        let mut ts = Vec::new();
        for &(l, da) in &a.succ[qa as usize] {
            let nb = match step_cache.get(&(sb, l)) {
                Some(&x) => x,
                None => {
                    let mut t: Vec<State> = subset_list[sb as usize]
                        .iter()
                        .flat_map(|&q| b.step(q, l))
                        .collect();
                    t.sort_unstable();
                    t.dedup();
                    let x = intern_subset(t, &mut subset_list, &mut subset_acc);
                    step_cache.insert((sb, l), x);
                    x
                }
            };
            let dst = match ids.get(&(da, nb)) {
                Some(&d) => d,
                None => {
                    let d = out.add_state(a.accepting[da as usize] && !subset_acc[nb as usize]);
                    ids.insert((da, nb), d);
                    queue.push_back((da, nb, d));
                    d
                }
            };
            ts.push((l, dst));
        }
        out.succ[id as usize] = ts;
    }
    out.normalize();
    out
}
