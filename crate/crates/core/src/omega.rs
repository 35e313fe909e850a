//! Büchi automata over infinite words, with the weak and inherently weak
//! classes that admit complementation by flipping and canonical minimization.

use std::collections::VecDeque;

use rustc_hash::FxHashMap;

use crate::alphabet::{Alphabet, Letter, Word};
use crate::error::{Error, Result};
use crate::graph::{join, merged_base, Graph, ProductAcceptance, State};
use crate::nfa::{graph_from_parts, moore_minimize};

/// A nondeterministic Büchi automaton.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Buchi {
    pub(crate) g: Graph,
}

/// Structural flags, always recomputed from the transition graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Classification {
    pub weak: bool,
    pub inherently_weak: bool,
    pub deterministic: bool,
}

/// An ultimately periodic word `prefix · period^ω`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct UpWord {
    pub prefix: Word,
    pub period: Word,
}

impl UpWord {
    pub fn new(prefix: Word, period: Word) -> Result<Self> {
        if period.is_empty() {
            return Err(Error::input("ultimately periodic word needs a nonempty period"));
        }
        Ok(UpWord { prefix, period })
    }

    /// Parses `prefix(period)`, e.g. `N(TN)`.
    pub fn parse(alphabet: &Alphabet, text: &str) -> Result<Self> {
        let text = text.trim();
        let open = text
            .find('(')
            .ok_or_else(|| Error::input(format!("`{text}`: expected prefix(period)")))?;
        let close = text
            .rfind(')')
            .filter(|&c| c > open && c + 1 == text.len())
            .ok_or_else(|| Error::input(format!("`{text}`: unbalanced period")))?;
        UpWord::new(
            alphabet.parse_word(&text[..open])?,
            alphabet.parse_word(&text[open + 1..close])?,
        )
    }

    pub fn to_string(&self, alphabet: &Alphabet) -> String {
        format!(
            "{}({})",
            alphabet.word_string(&self.prefix),
            alphabet.word_string(&self.period)
        )
    }

    /// Letter at position `i` of the infinite word.
    pub fn letter_at(&self, i: usize) -> Letter {
        let p = self.prefix.len();
        if i < p {
            self.prefix.letters()[i]
        } else {
            self.period.letters()[(i - p) % self.period.len()]
        }
    }

    /// All ultimately periodic words with `|prefix| ≤ max_prefix` and
    /// `1 ≤ |period| ≤ max_period`, in a fixed order, at most `limit` of them.
    pub fn enumerate(
        alphabet: &Alphabet,
        max_prefix: usize,
        max_period: usize,
        limit: usize,
    ) -> Vec<UpWord> {
        let words_upto = |n: usize| -> Vec<Word> {
            let mut all = vec![Word::default()];
            let mut layer = vec![Vec::<Letter>::new()];
            for _ in 0..n {
                let mut next = Vec::new();
                for w in &layer {
                    for l in alphabet.letters() {
                        let mut w2 = w.clone();
                        w2.push(l);
                        next.push(w2);
                    }
                }
                all.extend(next.iter().cloned().map(Word::new));
                layer = next;
                if all.len() > limit {
                    break;
                }
            }
            all
        };
        let prefixes = words_upto(max_prefix);
        let periods: Vec<Word> = words_upto(max_period)
            .into_iter()
            .filter(|w| !w.is_empty())
            .collect();
        let mut out = Vec::new();
        'outer: for per in &periods {
            for pre in &prefixes {
                if out.len() >= limit {
                    break 'outer;
                }
                out.push(UpWord {
                    prefix: pre.clone(),
                    period: per.clone(),
                });
            }
        }
        out
    }
}

impl Buchi {
    pub fn from_parts(
        alphabet: Alphabet,
        num_states: usize,
        initial: impl IntoIterator<Item = State>,
        accepting: impl IntoIterator<Item = State>,
        transitions: impl IntoIterator<Item = (State, Letter, State)>,
    ) -> Result<Self> {
        Ok(Buchi {
            g: graph_from_parts(alphabet, num_states, initial, accepting, transitions)?,
        })
    }

    pub(crate) fn from_graph(g: Graph) -> Self {
        Buchi { g }
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

    /// The empty ω-language.
    pub fn empty(alphabet: &Alphabet) -> Self {
        Buchi {
            g: Graph::new(alphabet.clone()),
        }
    }

    /// `Σ^ω`.
    pub fn universal(alphabet: &Alphabet) -> Self {
        let mut g = Graph::new(alphabet.clone());
        let q = g.add_state(true);
        g.initial.push(q);
        for l in alphabet.letters() {
            g.add_transition(q, l, q);
        }
        Buchi { g }
    }

    /// The singleton language `{w}`, as a deterministic lasso.
    pub fn up_word(alphabet: &Alphabet, w: &UpWord) -> Result<Self> {
        alphabet.check_word(&w.prefix)?;
        alphabet.check_word(&w.period)?;
        let p = w.prefix.len();
        let n = p + w.period.len();
        let mut g = Graph::new(alphabet.clone());
        for _ in 0..n {
            g.add_state(true);
        }
        g.initial.push(0);
        for i in 0..n {
            let dst = if i + 1 == n { p } else { i + 1 };
            g.add_transition(i as State, w.letter_at(i), dst as State);
        }
        Ok(Buchi { g })
    }

    pub fn classify(&self) -> Classification {
        let (comp, ncomp) = self.g.sccs();
        let nontrivial = self.g.nontrivial_components(&comp, ncomp);
        let mut has_acc = vec![false; ncomp];
        let mut has_rej = vec![false; ncomp];
        for (q, &c) in comp.iter().enumerate() {
            if self.g.accepting[q] {
                has_acc[c] = true;
            } else {
                has_rej[c] = true;
            }
        }
        let weak = (0..ncomp).all(|c| !(has_acc[c] && has_rej[c]));
        let rejecting_cycle = self.cycles_avoiding(&comp, |q| self.g.accepting[q]);
        let reach = self.g.reachable();
        let mut inherently_weak = true;
        for c in 0..ncomp {
            let reachable = comp.iter().enumerate().any(|(q, &cq)| cq == c && reach[q]);
            if reachable && nontrivial[c] && has_acc[c] && rejecting_cycle[c] {
                inherently_weak = false;
            }
        }
        Classification {
            weak,
            inherently_weak,
            deterministic: self.g.is_deterministic(),
        }
    }

    /// For each component of `comp`, whether it has a cycle that avoids every
    /// state satisfying `avoid`.
    fn cycles_avoiding(&self, comp: &[usize], avoid: impl Fn(usize) -> bool) -> Vec<bool> {
        let ncomp = comp.iter().copied().max().map_or(0, |m| m + 1);
        cycles_avoiding(&self.g, comp, ncomp, avoid)
    }

    pub fn is_weak_deterministic(&self) -> bool {
        let c = self.classify();
        c.weak && c.deterministic
    }

    /// True iff some run on `w` visits an accepting state infinitely often.
    pub fn accepts_up_word(&self, w: &UpWord) -> Result<bool> {
        let lasso = Buchi::up_word(self.alphabet(), w)?;
        let k = self.alphabet().arity();
        let pos: Vec<usize> = (0..k).collect();
        let p = join(&self.g, &pos, &lasso.g, &pos, k, ProductAcceptance::Both)?;
        Ok(!Buchi { g: p }.is_empty())
    }

    pub fn is_empty(&self) -> bool {
        self.emptiness_witness().is_none()
    }

    /// A lasso accepted by the automaton, or `None` when the language is
    /// empty. The stem is a shortest path to the first accepting state (in
    /// breadth-first order) that lies on a cycle.
    pub fn emptiness_witness(&self) -> Option<UpWord> {
        let (lasso, _) = self.lasso_states()?;
        Some(lasso)
    }

    /// Witness together with the visited states: stem states then loop states
    /// (the loop returns to its first state).
    pub(crate) fn lasso_states(&self) -> Option<(UpWord, (Vec<State>, Vec<State>))> {
        let g = &self.g;
        let (comp, ncomp) = g.sccs();
        let nontrivial = g.nontrivial_components(&comp, ncomp);
        let n = g.num_states();
        let mut parent: Vec<Option<(State, Letter)>> = vec![None; n];
        let mut seen = vec![false; n];
        let mut queue = VecDeque::new();
        for &q in &g.initial {
            if !seen[q as usize] {
                seen[q as usize] = true;
                queue.push_back(q);
            }
        }
        let mut target = None;
        while let Some(q) = queue.pop_front() {
            if g.accepting[q as usize] && nontrivial[comp[q as usize]] {
                target = Some(q);
                break;
            }
            for &(l, d) in &g.succ[q as usize] {
                if !seen[d as usize] {
                    seen[d as usize] = true;
                    parent[d as usize] = Some((q, l));
                    queue.push_back(d);
                }
            }
        }
        let f = target?;
        let mut stem_letters = Vec::new();
        let mut stem_states = vec![f];
        let mut cur = f;
        while let Some((p, l)) = parent[cur as usize] {
            stem_letters.push(l);
            stem_states.push(p);
            cur = p;
        }
        stem_letters.reverse();
        stem_states.reverse();
        stem_states.pop();
        // Shortest cycle through f inside its component.
        let c = comp[f as usize];
        let mut back: Vec<Option<(State, Letter)>> = vec![None; n];
        let mut seen = vec![false; n];
        let mut queue = VecDeque::new();
        let mut closing = None;
        queue.push_back(f);
        seen[f as usize] = true;
        'bfs: while let Some(q) = queue.pop_front() {
            for &(l, d) in &g.succ[q as usize] {
                if comp[d as usize] != c {
                    continue;
                }
                if d == f {
                    closing = Some((q, l));
                    break 'bfs;
                }
                if !seen[d as usize] {
                    seen[d as usize] = true;
                    back[d as usize] = Some((q, l));
                    queue.push_back(d);
                }
            }
        }
        let (last, last_letter) = closing.expect("accepting state on a cycle");
        let mut loop_letters = vec![last_letter];
        let mut loop_states = vec![last];
        let mut cur = last;
        while cur != f {
            let (p, l) = back[cur as usize].expect("cycle path");
            loop_letters.push(l);
            loop_states.push(p);
            cur = p;
        }
        loop_letters.reverse();
        loop_states.reverse();
        Some((
            UpWord {
                prefix: Word::new(stem_letters),
                period: Word::new(loop_letters),
            },
            (stem_states, loop_states),
        ))
    }

    /// Rewrites an inherently weak automaton into a weak one with the same
    /// language: components with an accepting cycle become accepting, all
    /// other components rejecting.
    pub fn normalize_weak(&self) -> Result<Buchi> {
        if !self.classify().inherently_weak {
            return Err(Error::NotWeak("automaton is not inherently weak".into()));
        }
        let g = self.g.restrict(&self.g.reachable());
        let (comp, ncomp) = g.sccs();
        let nontrivial = g.nontrivial_components(&comp, ncomp);
        let mut acc_comp = vec![false; ncomp];
        for (q, &c) in comp.iter().enumerate() {
            if g.accepting[q] && nontrivial[c] {
                acc_comp[c] = true;
            }
        }
        let mut g = g;
        for (q, &c) in comp.iter().enumerate() {
            g.accepting[q] = acc_comp[c];
        }
        Ok(Buchi { g })
    }

    /// Complement of a deterministic (inherently) weak automaton by
    /// completing it and flipping acceptance.
    pub fn complement_weak_dba(&self) -> Result<Buchi> {
        if self.g.initial.is_empty() {
            return Ok(Buchi::universal(self.alphabet()));
        }
        let c = self.classify();
        if !(c.deterministic && c.inherently_weak) {
            return Err(Error::NotWeakDeterministic);
        }
        let mut g = self.normalize_weak()?.g.complete();
        for a in &mut g.accepting {
            *a = !*a;
        }
        Ok(Buchi { g })
    }

    /// Deterministic weak automaton for the language of an inherently weak
    /// automaton, via the breakpoint construction. Fails with
    /// [`Error::NonWeakResult`] when the deterministic automaton is not weak.
    pub fn determinize_weak(&self) -> Result<Buchi> {
        let w = self.normalize_weak()?;
        if w.g.is_deterministic() {
            return Ok(Buchi { g: w.g.complete() });
        }
        let (g, breakpoint) = breakpoint_construction(&w.g);
        let (comp, ncomp) = g.sccs();
        let nontrivial = g.nontrivial_components(&comp, ncomp);
        let mut has_break = vec![false; ncomp];
        for (q, &c) in comp.iter().enumerate() {
            if breakpoint[q] {
                has_break[c] = true;
            }
        }
        let free_cycle = cycles_avoiding(&g, &comp, ncomp, |q| breakpoint[q]);
        let mut g = g;
        for (q, &c) in comp.iter().enumerate() {
            if nontrivial[c] && has_break[c] && free_cycle[c] {
                return Err(Error::NonWeakResult);
            }
            g.accepting[q] = nontrivial[c] && !has_break[c];
        }
        Ok(Buchi { g })
    }

    /// Canonical minimal weak DBA: maximal coloring of the components fixes
    /// acceptance, then finite-word minimization and breadth-first numbering.
    pub fn minimize_weak_dba(&self) -> Result<Buchi> {
        if self.g.initial.is_empty() {
            return Buchi::from_graph(self.g.complete()).minimize_weak_dba();
        }
        let c = self.classify();
        if !(c.deterministic && c.inherently_weak) {
            return Err(Error::NotWeakDeterministic);
        }
        let g = self.normalize_weak()?.g.complete();
        let g = g.restrict(&g.reachable());
        let (comp, ncomp) = g.sccs();
        let nontrivial = g.nontrivial_components(&comp, ncomp);
        let top = 2 * (ncomp + 1);
        let mut color = vec![top; ncomp];
        let mut members: Vec<Vec<usize>> = vec![Vec::new(); ncomp];
        for (q, &c) in comp.iter().enumerate() {
            members[c].push(q);
        }
        // Components are numbered sinks first.
        for c in 0..ncomp {
            let mut m = top;
            for &q in &members[c] {
                for &(_, d) in &g.succ[q] {
                    let dc = comp[d as usize];
                    if dc != c {
                        m = m.min(color[dc]);
                    }
                }
            }
            color[c] = if nontrivial[c] {
                let want_even = g.accepting[members[c][0]];
                if (m % 2 == 0) == want_even {
                    m
                } else {
                    m - 1
                }
            } else {
                m
            };
        }
        let mut g = g;
        for (q, &c) in comp.iter().enumerate() {
            g.accepting[q] = color[c] % 2 == 0;
        }
        Ok(Buchi {
            g: moore_minimize(&g),
        })
    }

    /// Determinizes (when needed) and minimizes: a canonical form for
    /// inherently weak languages.
    pub fn canonical(&self) -> Result<Buchi> {
        let c = self.classify();
        if self.g.initial.is_empty() || c.deterministic && c.inherently_weak {
            self.minimize_weak_dba()
        } else {
            self.determinize_weak()?.minimize_weak_dba()
        }
    }

    pub fn union(&self, other: &Buchi) -> Result<Buchi> {
        self.check_same_alphabet(other)?;
        if self.is_weak_deterministic() && other.is_weak_deterministic() {
            let k = self.alphabet().arity();
            let pos: Vec<usize> = (0..k).collect();
            let g = join(
                &self.g.complete(),
                &pos,
                &other.g.complete(),
                &pos,
                k,
                ProductAcceptance::Either,
            )?;
            return Ok(Buchi { g });
        }
        Ok(Buchi {
            g: self.g.disjoint_union(&other.g),
        })
    }

    pub fn intersect(&self, other: &Buchi) -> Result<Buchi> {
        self.check_same_alphabet(other)?;
        let k = self.alphabet().arity();
        let pos: Vec<usize> = (0..k).collect();
        Ok(Buchi {
            g: join(&self.g, &pos, &other.g, &pos, k, product_mode(self, other))?,
        })
    }

    /// Complement; defined only for (inherently) weak deterministic inputs.
    pub fn complement(&self) -> Result<Buchi> {
        self.complement_weak_dba()
    }

    /// `L(self) ∖ L(other)`; `other` must be determinizable to a weak DBA.
    pub fn difference(&self, other: &Buchi) -> Result<Buchi> {
        let c = other.classify();
        let co = if c.deterministic && c.inherently_weak {
            other.complement_weak_dba()?
        } else {
            other.determinize_weak()?.complement_weak_dba()?
        };
        self.intersect(&co)
    }

    /// `L(self) ⊆ L(other)`, exact; `other` must be weak-representable.
    pub fn includes_in(&self, other: &Buchi) -> Result<bool> {
        Ok(self.difference(other)?.is_empty())
    }

    /// Exact equality when both sides are weak-representable; otherwise a
    /// bounded lasso comparison (prefix and period length up to 5).
    pub fn equivalent(&self, other: &Buchi) -> Result<bool> {
        self.check_same_alphabet(other)?;
        match (self.canonical(), other.canonical()) {
            (Ok(a), Ok(b)) => Ok(a == b),
            _ => self.equivalent_on_lassos(other, 5, 20_000),
        }
    }

    pub fn equivalent_on_lassos(&self, other: &Buchi, max_len: usize, limit: usize) -> Result<bool> {
        for w in UpWord::enumerate(self.alphabet(), max_len, max_len, limit) {
            if self.accepts_up_word(&w)? != other.accepts_up_word(&w)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn sync_product(parts: &[&Buchi]) -> Result<Buchi> {
        if parts.len() < 2 {
            return Err(Error::input("synchronous product needs at least two automata"));
        }
        let alphabets: Vec<&Alphabet> = parts.iter().map(|p| p.alphabet()).collect();
        let (base, maps) = merged_base(&alphabets)?;
        let mut acc = Buchi {
            g: parts[0].g.rebase(&base, &maps[0])?,
        };
        for (p, m) in parts[1..].iter().zip(&maps[1..]) {
            let next = Buchi {
                g: p.g.rebase(&base, m)?,
            };
            let ka = acc.alphabet().arity();
            let kb = next.alphabet().arity();
            let pa: Vec<usize> = (0..ka).collect();
            let pb: Vec<usize> = (ka..ka + kb).collect();
            let mode = product_mode(&acc, &next);
            acc = Buchi {
                g: join(&acc.g, &pa, &next.g, &pb, ka + kb, mode)?,
            };
        }
        Ok(acc)
    }

    /// Projection removing tuple component `component` (1-based).
    pub fn project(&self, component: usize) -> Result<Buchi> {
        if component == 0 {
            return Err(Error::BadIndex {
                index: 0,
                arity: self.alphabet().arity(),
            });
        }
        Ok(Buchi {
            g: self.g.project_out(component - 1)?,
        })
    }

    fn check_same_alphabet(&self, other: &Buchi) -> Result<()> {
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

/// Products of weak automata keep homogeneous components with plain
/// state-pair acceptance; general Büchi products need the two-copy form.
pub(crate) fn product_mode(a: &Buchi, b: &Buchi) -> ProductAcceptance {
    if a.classify().weak && b.classify().weak {
        ProductAcceptance::Both
    } else {
        ProductAcceptance::TwoCopy
    }
}

fn cycles_avoiding(
    g: &Graph,
    comp: &[usize],
    ncomp: usize,
    avoid: impl Fn(usize) -> bool,
) -> Vec<bool> {
    let keep: Vec<bool> = (0..g.num_states()).map(|q| !avoid(q)).collect();
    let mut sub = Graph::new(g.alphabet.clone());
    let mut map = vec![State::MAX; g.num_states()];
    let mut back = Vec::new();
    for q in 0..g.num_states() {
        if keep[q] {
            map[q] = sub.add_state(false);
            back.push(q);
        }
    }
    for (s, ts) in g.succ.iter().enumerate() {
        if !keep[s] {
            continue;
        }
        for &(l, d) in ts {
            if keep[d as usize] && comp[d as usize] == comp[s] {
                sub.succ[map[s] as usize].push((l, map[d as usize]));
            }
        }
    }
    let (sc, sn) = sub.sccs();
    let snt = sub.nontrivial_components(&sc, sn);
    let mut out = vec![false; ncomp];
    for (i, &q) in back.iter().enumerate() {
        if snt[sc[i]] {
            out[comp[q]] = true;
        }
    }
    out
}

/// Breakpoint construction for a weak automaton read as a co-Büchi
/// condition (some run eventually stays in accepting states). Returns the
/// complete deterministic graph and the breakpoint flag of every state.
fn breakpoint_construction(g: &Graph) -> (Graph, Vec<bool>) {
    let mut out = Graph::new(g.alphabet.clone());
    let mut breakpoint = Vec::new();
    let acc_part = |set: &[State]| -> Vec<State> {
        set.iter().copied().filter(|&q| g.accepting[q as usize]).collect()
    };
    let mut ids: FxHashMap<(Vec<State>, Vec<State>), State> = FxHashMap::default();
    let mut queue: VecDeque<((Vec<State>, Vec<State>), State)> = VecDeque::new();
    let mut intern = |key: (Vec<State>, Vec<State>),
                      out: &mut Graph,
                      breakpoint: &mut Vec<bool>,
                      queue: &mut VecDeque<((Vec<State>, Vec<State>), State)>|
     -> State {
        if let Some(&id) = ids.get(&key) {
            return id;
        }
        let id = out.add_state(false);
        breakpoint.push(key.1.is_empty());
        ids.insert(key.clone(), id);
        queue.push_back((key, id));
        id
    };
    let s0 = g.initial.clone();
    let o0 = acc_part(&s0);
    let i0 = intern((s0, o0), &mut out, &mut breakpoint, &mut queue);
    out.initial.push(i0);
    let post = |set: &[State], l: Letter| -> Vec<State> {
        let mut t: Vec<State> = set.iter().flat_map(|&q| g.step(q, l)).collect();
        t.sort_unstable();
        t.dedup();
        t
    };
    while let Some(((s, o), id)) = queue.pop_front() {
        let mut ts = Vec::new();
        for l in g.alphabet.letters() {
            let s2 = post(&s, l);
            let o2 = if o.is_empty() {
                acc_part(&s2)
            } else {
                acc_part(&post(&o, l))
            };
            let d = intern((s2, o2), &mut out, &mut breakpoint, &mut queue);
            ts.push((l, d));
        }
        out.succ[id as usize] = ts;
    }
    out.normalize();
    (out, breakpoint)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn nt() -> Alphabet {
        Alphabet::new(["N", "T"]).unwrap()
    }

    fn up(s: &str) -> UpWord {
        UpWord::parse(&nt(), s).unwrap()
    }

    /// Infinitely many T.
    fn inf_t() -> Buchi {
        Buchi::from_parts(nt(), 2, [0], [1], [(0, 0, 0), (0, 1, 1), (1, 0, 0), (1, 1, 1)]).unwrap()
    }

    /// Infinitely many N.
    fn inf_n() -> Buchi {
        Buchi::from_parts(nt(), 2, [0], [1], [(0, 1, 0), (0, 0, 1), (1, 1, 0), (1, 0, 1)]).unwrap()
    }

    /// Always N, deterministic weak.
    fn always_n() -> Buchi {
        Buchi::from_parts(nt(), 2, [0], [0], [(0, 0, 0), (0, 1, 1), (1, 0, 1), (1, 1, 1)]).unwrap()
    }

    /// Finitely many T, nondeterministic weak: guess the last T.
    fn fin_t_nondet() -> Buchi {
        Buchi::from_parts(nt(), 2, [0], [1], [(0, 0, 0), (0, 1, 0), (0, 0, 1), (1, 0, 1)]).unwrap()
    }

    /// Eventually T, nondeterministic weak.
    fn ev_t_nondet() -> Buchi {
        Buchi::from_parts(
            nt(),
            2,
            [0],
            [1],
            [(0, 0, 0), (0, 1, 0), (0, 1, 1), (1, 0, 1), (1, 1, 1)],
        )
        .unwrap()
    }

    #[test]
    fn classify_examples() {
        let c = Buchi::universal(&nt()).classify();
        assert!(c.weak && c.inherently_weak && c.deterministic);
        // 2-state SCC: accepting state 0, non-accepting state 1 with self-loop.
        let mixed =
            Buchi::from_parts(nt(), 2, [0], [0], [(0, 0, 1), (1, 0, 1), (1, 1, 0)]).unwrap();
        let c = mixed.classify();
        assert!(!c.weak && !c.inherently_weak);
        // acyclic prefix into sinks
        let acyclic = Buchi::from_parts(nt(), 3, [0], [2], [(0, 0, 1), (1, 1, 2), (2, 0, 2)]).unwrap();
        assert!(acyclic.classify().weak);
        assert!(!inf_t().classify().inherently_weak);
    }

    #[test]
    fn lasso_acceptance() {
        assert!(inf_t().accepts_up_word(&up("N(T)")).unwrap());
        assert!(!inf_t().accepts_up_word(&up("T(N)")).unwrap());
        let bad = UpWord::new(Word::default(), Word::new(vec![9])).unwrap();
        assert!(inf_t().accepts_up_word(&bad).is_err());
    }

    #[test]
    fn weak_complement() {
        let c = always_n().complement_weak_dba().unwrap();
        assert!(c.accepts_up_word(&up("(NT)")).unwrap());
        assert!(c.accepts_up_word(&up("T(N)")).unwrap());
        assert!(!c.accepts_up_word(&up("(N)")).unwrap());
        assert_eq!(
            fin_t_nondet().complement_weak_dba(),
            Err(Error::NotWeakDeterministic)
        );
        let cc = c.complement_weak_dba().unwrap();
        for w in UpWord::enumerate(&nt(), 3, 3, 200) {
            assert_eq!(
                cc.accepts_up_word(&w).unwrap(),
                always_n().accepts_up_word(&w).unwrap()
            );
        }
    }

    #[test]
    fn determinize_weak_positive() {
        let a = ev_t_nondet();
        let d = a.determinize_weak().unwrap();
        assert!(d.is_weak_deterministic());
        for w in UpWord::enumerate(&nt(), 4, 4, 2000) {
            assert_eq!(d.accepts_up_word(&w).unwrap(), a.accepts_up_word(&w).unwrap());
        }
    }

    #[test]
    fn finitely_many_t_has_no_weak_dba() {
        assert_eq!(fin_t_nondet().determinize_weak(), Err(Error::NonWeakResult));
    }

    #[test]
    fn determinize_rejects_non_inherently_weak() {
        assert!(matches!(inf_t().determinize_weak(), Err(Error::NotWeak(_))));
    }

    #[test]
    fn minimize_variants_agree() {
        // Variant with a duplicated N-loop state and an incomplete sink.
        let v = Buchi::from_parts(nt(), 2, [0], [0, 1], [(0, 0, 1), (1, 0, 0)]).unwrap();
        let a = always_n().minimize_weak_dba().unwrap();
        let b = v.minimize_weak_dba().unwrap();
        assert_eq!(a, b);
        assert_eq!(a.num_states(), 2);
        assert!(a.classify().weak);
        let e = Buchi::from_parts(nt(), 1, [0], [], [(0, 0, 0), (0, 1, 0)]).unwrap();
        let m = e.minimize_weak_dba().unwrap();
        assert_eq!(m.num_states(), 1);
        assert!(!m.is_accepting(0));
        assert_eq!(Buchi::empty(&nt()).minimize_weak_dba().unwrap(), m);
    }

    #[test]
    fn intersection_two_copy() {
        let i = inf_t().intersect(&inf_n()).unwrap();
        assert!(i.accepts_up_word(&up("(TN)")).unwrap());
        assert!(!i.accepts_up_word(&up("(T)")).unwrap());
        assert!(!i.accepts_up_word(&up("T(N)")).unwrap());
    }

    #[test]
    fn union_and_projection() {
        let u = inf_t().union(&Buchi::empty(&nt())).unwrap();
        for w in UpWord::enumerate(&nt(), 3, 3, 300) {
            assert_eq!(u.accepts_up_word(&w).unwrap(), inf_t().accepts_up_word(&w).unwrap());
        }
        let p = Buchi::sync_product(&[&inf_t(), &Buchi::universal(&nt())]).unwrap();
        let back = p.project(2).unwrap();
        for w in UpWord::enumerate(&nt(), 3, 3, 300) {
            assert_eq!(back.accepts_up_word(&w).unwrap(), inf_t().accepts_up_word(&w).unwrap());
        }
    }

    #[test]
    fn emptiness_witnesses() {
        let unreachable = Buchi::from_parts(nt(), 2, [0], [1], [(0, 0, 0), (1, 0, 1)]).unwrap();
        assert!(unreachable.is_empty());
        let w = inf_t().emptiness_witness().unwrap();
        assert!(w.period.letters().contains(&1));
        assert!(inf_t().accepts_up_word(&w).unwrap());
        let none = Buchi::from_parts(nt(), 1, [0], [], [(0, 0, 0)]).unwrap();
        assert!(none.is_empty());
    }
}
