//! Explicit transition graphs shared by finite-word and Büchi automata.
//!
//! Transitions are stored sparsely per state, sorted by `(letter, target)`.
//! A missing letter means "no successor"; completion is an explicit operation.

use rustc_hash::FxHashMap;

use crate::alphabet::{Alphabet, Letter, MAX_ARITY};
use crate::error::{Error, Result};

pub type State = u32;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    pub(crate) alphabet: Alphabet,
    pub(crate) initial: Vec<State>,
    pub(crate) accepting: Vec<bool>,
    pub(crate) succ: Vec<Vec<(Letter, State)>>,
}

/// How the accepting set of a product is formed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum ProductAcceptance {
    /// Accepting iff both components accept.
    Both,
    /// Accepting iff either component accepts (components must be complete).
    Either,
    /// Two-copy generalized-to-plain Büchi construction.
    TwoCopy,
}

impl Graph {
    pub(crate) fn new(alphabet: Alphabet) -> Self {
        Graph {
            alphabet,
            initial: Vec::new(),
            accepting: Vec::new(),
            succ: Vec::new(),
        }
    }

    pub(crate) fn add_state(&mut self, accepting: bool) -> State {
        self.accepting.push(accepting);
        self.succ.push(Vec::new());
        (self.accepting.len() - 1) as State
    }

    pub(crate) fn add_transition(&mut self, src: State, letter: Letter, dst: State) {
        self.succ[src as usize].push((letter, dst));
    }

    /// Sorts and deduplicates transition lists and the initial set.
    pub(crate) fn normalize(&mut self) {
        self.initial.sort_unstable();
        self.initial.dedup();
        for s in &mut self.succ {
            s.sort_unstable();
            s.dedup();
        }
    }

    /// Validates references and returns a normalized graph.
    pub(crate) fn checked(mut self) -> Result<Self> {
        let n = self.num_states() as State;
        let size = self.alphabet.len();
        if self.initial.iter().any(|&q| q >= n) {
            return Err(Error::input("initial state out of range"));
        }
        for (src, ts) in self.succ.iter().enumerate() {
            for &(l, d) in ts {
                if d >= n {
                    return Err(Error::input(format!("transition {src} -> {d}: no such state")));
                }
                if l >= size {
                    return Err(Error::UnknownSymbol(format!("letter #{l}")));
                }
            }
        }
        self.normalize();
        Ok(self)
    }

    pub fn num_states(&self) -> usize {
        self.accepting.len()
    }

    pub fn num_transitions(&self) -> usize {
        self.succ.iter().map(Vec::len).sum()
    }

    pub fn transitions(&self) -> impl Iterator<Item = (State, Letter, State)> + '_ {
        self.succ
            .iter()
            .enumerate()
            .flat_map(|(s, ts)| ts.iter().map(move |&(l, d)| (s as State, l, d)))
    }

    pub fn is_deterministic(&self) -> bool {
        self.initial.len() == 1
            && self
                .succ
                .iter()
                .all(|ts| ts.windows(2).all(|w| w[0].0 != w[1].0))
    }

    pub fn is_complete(&self) -> bool {
        let size = self.alphabet.len();
        !self.initial.is_empty()
            && self.succ.iter().all(|ts| {
                let mut distinct = 0u64;
                let mut last = None;
                for &(l, _) in ts {
                    if last != Some(l) {
                        distinct += 1;
                        last = Some(l);
                    }
                }
                distinct == size
            })
    }

    /// Successors of `q` on `letter` (transition lists are sorted).
    pub(crate) fn step(&self, q: State, letter: Letter) -> impl Iterator<Item = State> + '_ {
        let ts = &self.succ[q as usize];
        let start = ts.partition_point(|&(l, _)| l < letter);
        ts[start..]
            .iter()
            .take_while(move |&&(l, _)| l == letter)
            .map(|&(_, d)| d)
    }

    pub(crate) fn reachable(&self) -> Vec<bool> {
        let mut seen = vec![false; self.num_states()];
        let mut stack: Vec<State> = self.initial.clone();
        for &q in &self.initial {
            seen[q as usize] = true;
        }
        while let Some(q) = stack.pop() {
            for &(_, d) in &self.succ[q as usize] {
                if !seen[d as usize] {
                    seen[d as usize] = true;
                    stack.push(d);
                }
            }
        }
        seen
    }

    /// States from which some state in `targets` is reachable.
    pub(crate) fn coreachable(&self, targets: &[bool]) -> Vec<bool> {
        let n = self.num_states();
        let mut pred: Vec<Vec<State>> = vec![Vec::new(); n];
        for (s, ts) in self.succ.iter().enumerate() {
            for &(_, d) in ts {
                pred[d as usize].push(s as State);
            }
        }
        let mut seen = targets.to_vec();
        let mut stack: Vec<State> = (0..n as State).filter(|&q| targets[q as usize]).collect();
        while let Some(q) = stack.pop() {
            for &p in &pred[q as usize] {
                if !seen[p as usize] {
                    seen[p as usize] = true;
                    stack.push(p);
                }
            }
        }
        seen
    }

    /// Keeps the states flagged in `keep`, renumbering them in order.
    pub(crate) fn restrict(&self, keep: &[bool]) -> Graph {
        let mut map = vec![State::MAX; self.num_states()];
        let mut g = Graph::new(self.alphabet.clone());
        for q in 0..self.num_states() {
            if keep[q] {
                map[q] = g.add_state(self.accepting[q]);
            }
        }
        for (s, ts) in self.succ.iter().enumerate() {
            if !keep[s] {
                continue;
            }
            for &(l, d) in ts {
                if keep[d as usize] {
                    g.succ[map[s] as usize].push((l, map[d as usize]));
                }
            }
        }
        g.initial = self
            .initial
            .iter()
            .filter(|&&q| keep[q as usize])
            .map(|&q| map[q as usize])
            .collect();
        g.normalize();
        g
    }

    /// Removes unreachable states and states that cannot reach an accepting state.
    pub(crate) fn trim(&self) -> Graph {
        let r = self.reachable();
        let c = self.coreachable(&self.accepting);
        let keep: Vec<bool> = r.iter().zip(&c).map(|(a, b)| *a && *b).collect();
        self.restrict(&keep)
    }

    /// Renumbers states in breadth-first discovery order from the initial
    /// states, visiting transitions in `(letter, target)` order. Unreachable
    /// states are dropped.
    pub(crate) fn bfs_renumber(&self) -> Graph {
        let n = self.num_states();
        let mut map = vec![State::MAX; n];
        let mut order = Vec::with_capacity(n);
        let mut queue = std::collections::VecDeque::new();
        for &q in &self.initial {
            if map[q as usize] == State::MAX {
                map[q as usize] = order.len() as State;
                order.push(q);
                queue.push_back(q);
            }
        }
        while let Some(q) = queue.pop_front() {
            for &(_, d) in &self.succ[q as usize] {
                if map[d as usize] == State::MAX {
                    map[d as usize] = order.len() as State;
                    order.push(d);
                    queue.push_back(d);
                }
            }
        }
        let mut g = Graph::new(self.alphabet.clone());
        for &q in &order {
            g.add_state(self.accepting[q as usize]);
        }
        for (new, &q) in order.iter().enumerate() {
            g.succ[new] = self.succ[q as usize]
                .iter()
                .map(|&(l, d)| (l, map[d as usize]))
                .collect();
        }
        g.initial = self.initial.iter().map(|&q| map[q as usize]).collect();
        g.normalize();
        g
    }

    /// Adds a rejecting sink (as the highest-numbered state) for every
    /// missing letter, if any letter is missing. An automaton without
    /// initial state gets the sink as its initial state.
    pub(crate) fn complete(&self) -> Graph {
        if self.is_complete() {
            return self.clone();
        }
        let mut g = self.clone();
        let sink = g.add_state(false);
        if g.initial.is_empty() {
            g.initial.push(sink);
        }
        let size = g.alphabet.len();
        for q in 0..g.num_states() {
            let present: Vec<Letter> = {
                let mut p: Vec<Letter> = g.succ[q].iter().map(|&(l, _)| l).collect();
                p.dedup();
                p
            };
            let mut extra = Vec::new();
            let mut it = present.iter().peekable();
            for l in 0..size {
                if it.peek() == Some(&&l) {
                    it.next();
                } else {
                    extra.push((l, sink));
                }
            }
            g.succ[q].extend(extra);
        }
        g.normalize();
        g
    }

    /// Strongly connected components (iterative Tarjan). Returns the
    /// component index of every state; components are numbered in reverse
    /// topological order (sinks first).
    pub(crate) fn sccs(&self) -> (Vec<usize>, usize) {
        let n = self.num_states();
        let mut index = vec![usize::MAX; n];
        let mut low = vec![0usize; n];
        let mut on_stack = vec![false; n];
        let mut comp = vec![usize::MAX; n];
        let mut stack: Vec<usize> = Vec::new();
        let mut counter = 0usize;
        let mut ncomp = 0usize;
        let mut call: Vec<(usize, usize)> = Vec::new();
        for root in 0..n {
            if index[root] != usize::MAX {
                continue;
            }
            call.push((root, 0));
            index[root] = counter;
            low[root] = counter;
            counter += 1;
            stack.push(root);
            on_stack[root] = true;
            while let Some(&mut (v, ref mut i)) = call.last_mut() {
                let ts = &self.succ[v];
                if *i < ts.len() {
                    let w = ts[*i].1 as usize;
                    *i += 1;
                    if index[w] == usize::MAX {
                        index[w] = counter;
                        low[w] = counter;
                        counter += 1;
                        stack.push(w);
                        on_stack[w] = true;
                        call.push((w, 0));
                    } else if on_stack[w] {
                        low[v] = low[v].min(index[w]);
                    }
                } else {
                    call.pop();
                    if let Some(&(p, _)) = call.last() {
                        low[p] = low[p].min(low[v]);
                    }
                    if low[v] == index[v] {
                        loop {
                            let w = stack.pop().expect("tarjan stack");
                            on_stack[w] = false;
                            comp[w] = ncomp;
                            if w == v {
                                break;
                            }
                        }
                        ncomp += 1;
                    }
                }
            }
        }
        (comp, ncomp)
    }

    /// For each component, whether it contains a cycle (more than one state
    /// or a self-loop).
    pub(crate) fn nontrivial_components(&self, comp: &[usize], ncomp: usize) -> Vec<bool> {
        let mut size = vec![0usize; ncomp];
        for &c in comp {
            size[c] += 1;
        }
        let mut nontrivial: Vec<bool> = size.iter().map(|&s| s > 1).collect();
        for (s, ts) in self.succ.iter().enumerate() {
            if ts.iter().any(|&(_, d)| d as usize == s) {
                nontrivial[comp[s]] = true;
            }
        }
        nontrivial
    }

    /// Relabels every letter through `f`; `None` drops the transition.
    pub(crate) fn map_letters<F>(&self, alphabet: Alphabet, mut f: F) -> Graph
    where
        F: FnMut(Letter) -> Option<Letter>,
    {
        let mut cache: FxHashMap<Letter, Option<Letter>> = FxHashMap::default();
        let mut g = Graph::new(alphabet);
        g.accepting = self.accepting.clone();
        g.initial = self.initial.clone();
        g.succ = self
            .succ
            .iter()
            .map(|ts| {
                ts.iter()
                    .filter_map(|&(l, d)| {
                        let m = *cache.entry(l).or_insert_with(|| f(l));
                        m.map(|m| (m, d))
                    })
                    .collect()
            })
            .collect();
        g.normalize();
        g
    }

    /// Drops tuple component `idx` (0-based).
    pub(crate) fn project_out(&self, idx: usize) -> Result<Graph> {
        let k = self.alphabet.arity();
        if idx >= k || k < 2 {
            return Err(Error::BadIndex { index: idx + 1, arity: k });
        }
        let from = self.alphabet.clone();
        let to = from.with_arity(k - 1)?;
        Ok(self.map_letters(to.clone(), |l| {
            let t = from.decode(l);
            let mut parts = [0u32; MAX_ARITY];
            let mut j = 0;
            for (i, &p) in t[..k].iter().enumerate() {
                if i != idx {
                    parts[j] = p;
                    j += 1;
                }
            }
            Some(to.encode(&parts[..k - 1]))
        }))
    }

    /// Keeps only letters whose components agree on `(i, j)` and then drops
    /// component `j`.
    pub(crate) fn diagonal(&self, i: usize, j: usize) -> Result<Graph> {
        let k = self.alphabet.arity();
        if i >= k || j >= k || i == j {
            return Err(Error::BadIndex { index: j + 1, arity: k });
        }
        let from = self.alphabet.clone();
        let to = from.with_arity(k - 1)?;
        Ok(self.map_letters(to.clone(), |l| {
            let t = from.decode(l);
            if t[i] != t[j] {
                return None;
            }
            let parts: Vec<u32> = (0..k).filter(|&x| x != j).map(|x| t[x]).collect();
            Some(to.encode(&parts))
        }))
    }

    /// Disjoint union of two graphs over the same alphabet.
    pub(crate) fn disjoint_union(&self, other: &Graph) -> Graph {
        let mut g = self.clone();
        let off = g.num_states() as State;
        g.accepting.extend(other.accepting.iter().copied());
        g.succ.extend(
            other
                .succ
                .iter()
                .map(|ts| ts.iter().map(|&(l, d)| (l, d + off)).collect()),
        );
        g.initial.extend(other.initial.iter().map(|&q| q + off));
        g.normalize();
        g
    }

    /// Reinterprets the graph over a larger base alphabet via `map` from old
    /// base indices to new ones.
    pub(crate) fn rebase(&self, base: &Alphabet, map: &[u32]) -> Result<Graph> {
        let k = self.alphabet.arity();
        let from = self.alphabet.clone();
        let to = base.with_arity(k)?;
        Ok(self.map_letters(to.clone(), |l| {
            let t = from.decode(l);
            let parts: Vec<u32> = t[..k].iter().map(|&p| map[p as usize]).collect();
            Some(to.encode(&parts))
        }))
    }
}

/// Synchronized product of `a` and `b`, where `a`'s tuple components land on
/// result positions `pa` and `b`'s on `pb`. Shared positions must carry equal
/// symbols; every result position must be covered. Both graphs must share
/// the same base alphabet.
///
/// With `pa = pb = 0..k` this is intersection; with disjoint positions it is
/// the synchronous product; overlapping positions give the cylindrified
/// intersection used by composition and image.
pub(crate) fn join(
    a: &Graph,
    pa: &[usize],
    b: &Graph,
    pb: &[usize],
    arity: usize,
    acceptance: ProductAcceptance,
) -> Result<Graph> {
    if !a.alphabet.same_base(&b.alphabet) {
        return Err(Error::mismatch("product of automata over different base alphabets"));
    }
    if pa.len() != a.alphabet.arity() || pb.len() != b.alphabet.arity() {
        return Err(Error::mismatch("component map does not match arity"));
    }
    let out = a.alphabet.with_arity(arity)?;
    let mut covered = [false; MAX_ARITY];
    for &p in pa.iter().chain(pb) {
        if p >= arity {
            return Err(Error::BadIndex { index: p + 1, arity });
        }
        covered[p] = true;
    }
    if covered[..arity].iter().any(|c| !c) {
        return Err(Error::input("product leaves a component unconstrained"));
    }
    // Overlap positions as (index in a, index in b).
    let mut overlap: Vec<(usize, usize)> = Vec::new();
    for (ia, &p) in pa.iter().enumerate() {
        if let Some(ib) = pb.iter().position(|&q| q == p) {
            overlap.push((ia, ib));
        }
    }
    let radix = a.alphabet.base_len() as u64;
    let key_of = |t: &[u32], side_a: bool| -> u64 {
        overlap.iter().fold(0u64, |acc, &(ia, ib)| {
            acc * radix + t[if side_a { ia } else { ib }] as u64
        })
    };

    // Per-state index of b's transitions by overlap key.
    let b_index: Vec<FxHashMap<u64, Vec<(Letter, State)>>> = b
        .succ
        .iter()
        .map(|ts| {
            let mut m: FxHashMap<u64, Vec<(Letter, State)>> = FxHashMap::default();
            for &(l, d) in ts {
                let t = b.alphabet.decode(l);
                m.entry(key_of(&t, false)).or_default().push((l, d));
            }
            m
        })
        .collect();

    let two_copy = acceptance == ProductAcceptance::TwoCopy;
    let mut g = Graph::new(out.clone());
    let mut ids: FxHashMap<(State, State, u8), State> = FxHashMap::default();
    let mut queue: Vec<((State, State, u8), State)> = Vec::new();
    let accept = |qa: State, qb: State, c: u8| -> bool {
        let fa = a.accepting[qa as usize];
        let fb = b.accepting[qb as usize];
        match acceptance {
            ProductAcceptance::Both => fa && fb,
            ProductAcceptance::Either => fa || fb,
            ProductAcceptance::TwoCopy => c == 0 && fa,
        }
    };
    let mut intern =
        |g: &mut Graph, queue: &mut Vec<((State, State, u8), State)>, key: (State, State, u8)| {
            *ids.entry(key).or_insert_with(|| {
                let id = g.add_state(accept(key.0, key.1, key.2));
                queue.push((key, id));
                id
            })
        };
    for &qa in &a.initial {
        for &qb in &b.initial {
            let id = intern(&mut g, &mut queue, (qa, qb, 0));
            g.initial.push(id);
        }
    }
    let mut head = 0;
    let mut parts = [0u32; MAX_ARITY];
    while head < queue.len() {
        let ((qa, qb, c), src) = queue[head];
        head += 1;
        let next_copy = if two_copy {
            match c {
                0 if a.accepting[qa as usize] => 1,
                1 if b.accepting[qb as usize] => 0,
                other => other,
            }
        } else {
            0
        };
        let bi = &b_index[qb as usize];
        let mut out_ts: Vec<(Letter, State)> = Vec::new();
        for &(la, da) in &a.succ[qa as usize] {
            let ta = a.alphabet.decode(la);
            let Some(matches) = bi.get(&key_of(&ta, true)) else {
                continue;
            };
            for &(lb, db) in matches {
                let tb = b.alphabet.decode(lb);
                for (i, &p) in pa.iter().enumerate() {
                    parts[p] = ta[i];
                }
                for (i, &p) in pb.iter().enumerate() {
                    parts[p] = tb[i];
                }
                let letter = out.encode(&parts[..arity]);
                let dst = intern(&mut g, &mut queue, (da, db, next_copy));
                out_ts.push((letter, dst));
            }
        }
        g.succ[src as usize].extend(out_ts);
    }
    g.normalize();
    Ok(g)
}

/// Base alphabet containing the symbols of all inputs, in first-seen order,
/// plus the index maps from each input base into it.
pub(crate) fn merged_base(alphabets: &[&Alphabet]) -> Result<(Alphabet, Vec<Vec<u32>>)> {
    if alphabets.iter().all(|a| a.same_base(alphabets[0])) {
        let maps = alphabets
            .iter()
            .map(|a| (0..a.base_len() as u32).collect())
            .collect();
        return Ok((alphabets[0].base(), maps));
    }
    let mut names: Vec<String> = Vec::new();
    let mut maps = Vec::new();
    for a in alphabets {
        let mut m = Vec::new();
        for s in a.symbols() {
            let idx = match names.iter().position(|n| n == s) {
                Some(i) => i,
                None => {
                    names.push(s.clone());
                    names.len() - 1
                }
            };
            m.push(idx as u32);
        }
        maps.push(m);
    }
    Ok((Alphabet::new(names)?, maps))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ab() -> Alphabet {
        Alphabet::new(["a", "b"]).unwrap()
    }

    #[test]
    fn tarjan_orders_sinks_first() {
        let mut g = Graph::new(ab());
        let s0 = g.add_state(false);
        let s1 = g.add_state(false);
        let s2 = g.add_state(true);
        g.initial = vec![s0];
        g.add_transition(s0, 0, s1);
        g.add_transition(s1, 0, s0);
        g.add_transition(s1, 1, s2);
        g.normalize();
        let (comp, n) = g.sccs();
        assert_eq!(n, 2);
        assert_eq!(comp[0], comp[1]);
        assert!(comp[2] < comp[0]);
        let nt = g.nontrivial_components(&comp, n);
        assert!(nt[comp[0]]);
        assert!(!nt[comp[2]]);
    }

    #[test]
    fn complete_adds_single_sink() {
        let mut g = Graph::new(ab());
        let s0 = g.add_state(true);
        g.initial = vec![s0];
        g.add_transition(s0, 0, s0);
        let c = g.complete();
        assert_eq!(c.num_states(), 2);
        assert!(c.is_complete());
        assert_eq!(c.succ[0], vec![(0, 0), (1, 1)]);
    }

    #[test]
    fn join_requires_full_coverage() {
        let g = Graph::new(ab().with_arity(2).unwrap());
        let h = Graph::new(ab().with_arity(2).unwrap());
        assert!(join(&g, &[0, 1], &h, &[1, 2], 4, ProductAcceptance::Both).is_err());
        assert!(join(&g, &[0, 1], &h, &[1, 2], 3, ProductAcceptance::Both).is_ok());
    }
}
