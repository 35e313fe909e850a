//! Explicit-state oracles and random generators shared by the integration
//! tests. The oracles here never call library algorithms; `Raw` only
//! converts into library values. `checks` compares the two.

#![allow(dead_code)]

pub mod checks;

use std::collections::{BTreeSet, HashMap, VecDeque};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rmckit::{Alphabet, Buchi, FiniteTransducer, Letter, Nfa, Transducer, Word};

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

pub fn nt() -> Alphabet {
    Alphabet::new(["N", "T"]).unwrap()
}

pub fn sigma(k: usize) -> Alphabet {
    Alphabet::new(["a", "b", "c"].into_iter().take(k)).unwrap()
}

/// An automaton kept as a transition list and simulated directly.
#[derive(Clone, Debug)]
pub struct Raw {
    pub alphabet: Alphabet,
    pub states: usize,
    pub initial: Vec<u32>,
    pub accepting: Vec<bool>,
    pub trans: Vec<(u32, Letter, u32)>,
}

impl Raw {
    fn accepting_list(&self) -> Vec<u32> {
        (0..self.states as u32).filter(|&q| self.accepting[q as usize]).collect()
    }

    pub fn nfa(&self) -> Nfa {
        Nfa::from_parts(
            self.alphabet.clone(),
            self.states,
            self.initial.clone(),
            self.accepting_list(),
            self.trans.clone(),
        )
        .unwrap()
    }

    pub fn buchi(&self) -> Buchi {
        Buchi::from_parts(
            self.alphabet.clone(),
            self.states,
            self.initial.clone(),
            self.accepting_list(),
            self.trans.clone(),
        )
        .unwrap()
    }

    pub fn transducer(&self) -> FiniteTransducer {
        Transducer::new(self.nfa()).unwrap()
    }

    pub fn post(&self, set: &BTreeSet<u32>, l: Letter) -> BTreeSet<u32> {
        self.trans
            .iter()
            .filter(|&&(s, x, _)| x == l && set.contains(&s))
            .map(|&(_, _, d)| d)
            .collect()
    }

    pub fn succ(&self, q: u32, l: Letter) -> Vec<u32> {
        self.trans
            .iter()
            .filter(|&&(s, x, _)| s == q && x == l)
            .map(|&(_, _, d)| d)
            .collect()
    }

    pub fn run(&self, w: &[Letter]) -> BTreeSet<u32> {
        let mut set: BTreeSet<u32> = self.initial.iter().copied().collect();
        for &l in w {
            set = self.post(&set, l);
        }
        set
    }

    pub fn accepts(&self, w: &[Letter]) -> bool {
        self.run(w).iter().any(|&q| self.accepting[q as usize])
    }

    /// Büchi acceptance of `prefix·period^ω` by search for an accepting
    /// node on a cycle of the product with the period positions.
    pub fn accepts_lasso(&self, prefix: &[Letter], period: &[Letter]) -> bool {
        assert!(!period.is_empty());
        let p = period.len();
        let node = |q: u32, i: usize| q as usize * p + i;
        let n = self.states * p;
        let mut succ = vec![Vec::new(); n];
        for q in 0..self.states as u32 {
            for (i, &l) in period.iter().enumerate() {
                for d in self.succ(q, l) {
                    succ[node(q, i)].push(node(d, (i + 1) % p));
                }
            }
        }
        let start: Vec<usize> = self.run(prefix).into_iter().map(|q| node(q, 0)).collect();
        let reach = reachable(n, &succ, &start);
        (0..n).any(|x| reach[x] && self.accepting[x / p] && on_cycle(&succ, x))
    }
}

/// Every letter of `a`.
pub fn letters(a: &Alphabet) -> Vec<Letter> {
    a.letters().collect()
}

pub fn all_words(letters: &[Letter], len: usize) -> Vec<Vec<Letter>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|w| {
                letters.iter().map(move |&l| {
                    let mut v = w.clone();
                    v.push(l);
                    v
                })
            })
            .collect();
    }
    out
}

pub fn words_upto(letters: &[Letter], max: usize) -> Vec<Vec<Letter>> {
    (0..=max).flat_map(|n| all_words(letters, n)).collect()
}

pub fn word(w: &[Letter]) -> Word {
    Word::new(w.to_vec())
}

pub fn zip(pairs: &Alphabet, x: &[Letter], y: &[Letter]) -> Vec<Letter> {
    x.iter().zip(y).map(|(&a, &b)| pairs.encode(&[a as u32, b as u32])).collect()
}

pub fn reachable(n: usize, succ: &[Vec<usize>], start: &[usize]) -> Vec<bool> {
    let mut seen = vec![false; n];
    let mut queue: VecDeque<usize> = VecDeque::new();
    for &s in start {
        if !seen[s] {
            seen[s] = true;
            queue.push_back(s);
        }
    }
    while let Some(x) = queue.pop_front() {
        for &y in &succ[x] {
            if !seen[y] {
                seen[y] = true;
                queue.push_back(y);
            }
        }
    }
    seen
}

pub fn on_cycle(succ: &[Vec<usize>], x: usize) -> bool {
    reachable(succ.len(), succ, &succ[x])[x]
}

/// Strongly connected components (Kosaraju, iterative): component id per
/// node.
pub fn sccs(succ: &[Vec<usize>]) -> Vec<usize> {
    let n = succ.len();
    let mut order = Vec::with_capacity(n);
    let mut seen = vec![false; n];
    for root in 0..n {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        let mut stack = vec![(root, 0usize)];
        while let Some(&mut (x, ref mut i)) = stack.last_mut() {
            if *i < succ[x].len() {
                let y = succ[x][*i];
                *i += 1;
                if !seen[y] {
                    seen[y] = true;
                    stack.push((y, 0));
                }
            } else {
                order.push(x);
                stack.pop();
            }
        }
    }
    let mut pred = vec![Vec::new(); n];
    for (x, ys) in succ.iter().enumerate() {
        for &y in ys {
            pred[y].push(x);
        }
    }
    let mut comp = vec![usize::MAX; n];
    let mut c = 0;
    for &root in order.iter().rev() {
        if comp[root] != usize::MAX {
            continue;
        }
        comp[root] = c;
        let mut stack = vec![root];
        while let Some(x) = stack.pop() {
            for &y in &pred[x] {
                if comp[y] == usize::MAX {
                    comp[y] = c;
                    stack.push(y);
                }
            }
        }
        c += 1;
    }
    comp
}

pub fn random_nfa(rng: &mut StdRng, alphabet: &Alphabet, max_states: usize) -> Raw {
    let states = rng.gen_range(1..=max_states);
    let ls = letters(alphabet);
    let mut trans = Vec::new();
    for q in 0..states as u32 {
        for &l in &ls {
            for d in 0..states as u32 {
                if rng.gen_bool(0.3) {
                    trans.push((q, l, d));
                }
            }
        }
    }
    let mut initial = vec![rng.gen_range(0..states as u32)];
    if rng.gen_bool(0.3) {
        initial.push(rng.gen_range(0..states as u32));
    }
    initial.sort_unstable();
    initial.dedup();
    Raw {
        alphabet: alphabet.clone(),
        states,
        initial,
        accepting: (0..states).map(|_| rng.gen_bool(0.4)).collect(),
        trans,
    }
}

/// A complete deterministic automaton with initial state 0.
pub fn random_dfa(rng: &mut StdRng, alphabet: &Alphabet, states: usize) -> Raw {
    let ls = letters(alphabet);
    let mut trans = Vec::new();
    for q in 0..states as u32 {
        for &l in &ls {
            trans.push((q, l, rng.gen_range(0..states as u32)));
        }
    }
    Raw {
        alphabet: alphabet.clone(),
        states,
        initial: vec![0],
        accepting: (0..states).map(|_| rng.gen_bool(0.5)).collect(),
        trans,
    }
}

/// A complete deterministic automaton whose acceptance is constant on each
/// strongly connected component.
pub fn random_weak_dba(rng: &mut StdRng, alphabet: &Alphabet, states: usize) -> Raw {
    let mut a = random_dfa(rng, alphabet, states);
    let mut succ = vec![Vec::new(); states];
    for &(s, _, d) in &a.trans {
        succ[s as usize].push(d as usize);
    }
    let comp = sccs(&succ);
    let ncomp = comp.iter().max().map_or(0, |m| m + 1);
    let flags: Vec<bool> = (0..ncomp).map(|_| rng.gen_bool(0.5)).collect();
    a.accepting = comp.iter().map(|&c| flags[c]).collect();
    a
}

/// A random length-preserving relation over `sigma`: a few states, sparse
/// transitions over pairs.
pub fn random_relation(rng: &mut StdRng, sigma: &Alphabet, max_states: usize) -> Raw {
    let pairs = sigma.with_arity(2).unwrap();
    let mut r = random_nfa(rng, &pairs, max_states);
    if r.accepting.iter().all(|&b| !b) {
        r.accepting[0] = true;
    }
    r
}

/// All length-`n` states of a system with their successor lists.
#[derive(Clone, Debug)]
pub struct Explicit {
    pub words: Vec<Vec<Letter>>,
    pub index: HashMap<Vec<Letter>, usize>,
    pub succ: Vec<Vec<usize>>,
    pub initial: Vec<usize>,
}

impl Explicit {
    pub fn new(init: &Raw, rel: &Raw, n: usize) -> Self {
        let sigma = init.alphabet.clone();
        let pairs = sigma.with_arity(2).unwrap();
        let words = all_words(&letters(&sigma), n);
        let index: HashMap<Vec<Letter>, usize> = words.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
        let succ = words
            .iter()
            .map(|x| {
                words
                    .iter()
                    .enumerate()
                    .filter(|(_, y)| rel.accepts(&zip(&pairs, x, y)))
                    .map(|(j, _)| j)
                    .collect()
            })
            .collect();
        let initial = (0..words.len()).filter(|&i| init.accepts(&words[i])).collect();
        Explicit {
            words,
            index,
            succ,
            initial,
        }
    }

    pub fn reachable(&self) -> Vec<bool> {
        reachable(self.words.len(), &self.succ, &self.initial)
    }

    pub fn reachable_words(&self) -> BTreeSet<Vec<Letter>> {
        let r = self.reachable();
        (0..self.words.len()).filter(|&i| r[i]).map(|i| self.words[i].clone()).collect()
    }
}

/// Bit `i` set iff `cops[i]` accepts `w`.
pub fn cop_mask(cops: &[Raw], w: &[Letter]) -> u32 {
    cops.iter().enumerate().filter(|(_, c)| c.accepts(w)).fold(0, |m, (i, _)| m | 1 << i)
}

/// Whether some infinite execution's cop trace is accepted by `neg`
/// (a Büchi automaton over cop masks): an accepting product node
/// `(state, automaton state)` reachable and on a cycle.
pub fn gsp_oracle(sys: &Explicit, cops: &[Raw], neg: &Raw) -> bool {
    let nq = neg.states;
    let n = sys.words.len() * nq;
    let masks: Vec<u32> = sys.words.iter().map(|w| cop_mask(cops, w)).collect();
    let mut succ = vec![Vec::new(); n];
    for (w, ws) in sys.succ.iter().enumerate() {
        for q in 0..nq as u32 {
            for d in neg.succ(q, Letter::from(masks[w])) {
                for &w2 in ws {
                    succ[w * nq + q as usize].push(w2 * nq + d as usize);
                }
            }
        }
    }
    let start: Vec<usize> = sys
        .initial
        .iter()
        .flat_map(|&w| neg.initial.iter().map(move |&q| w * nq + q as usize))
        .collect();
    let reach = reachable(n, &succ, &start);
    let comp = sccs(&succ);
    let mut size = HashMap::<usize, usize>::new();
    for &c in &comp {
        *size.entry(c).or_default() += 1;
    }
    (0..n).any(|x| {
        reach[x]
            && neg.accepting[x % nq]
            && (size[&comp[x]] > 1 || succ[x].contains(&x))
    })
}

/// Whether some infinite execution violates "every position satisfies the
/// local properties selected by a label word of `neg_losp`": for each
/// accepted labeling, a generalized Büchi product over the per-position
/// runs of the selected automata (`leps[i].0` when bit `i` is set, else
/// `leps[i].1`).
pub fn losp_oracle(sys: &Explicit, leps: &[(Raw, Raw)], neg_losp: &Raw) -> bool {
    let n = sys.words.first().map_or(0, Vec::len);
    let k = leps.len();
    let masks: Vec<Letter> = (0..1u64 << k).collect();
    for labeling in all_words(&masks, n) {
        if !neg_losp.accepts(&labeling) {
            continue;
        }
        let selected: Vec<&Raw> = (0..n)
            .flat_map(|j| {
                let lab = labeling[j];
                leps.iter()
                    .enumerate()
                    .map(move |(i, (a, c))| if lab >> i & 1 == 1 { a } else { c })
            })
            .collect();
        if generalized_nonempty(sys, &selected, k) {
            return true;
        }
    }
    false
}

fn generalized_nonempty(sys: &Explicit, auts: &[&Raw], k: usize) -> bool {
    type Node = (usize, Vec<u32>);
    let mut ids: HashMap<Node, usize> = HashMap::new();
    let mut nodes: Vec<Node> = Vec::new();
    let mut succ: Vec<Vec<usize>> = Vec::new();
    let intern = |x: Node, ids: &mut HashMap<Node, usize>, nodes: &mut Vec<Node>, succ: &mut Vec<Vec<usize>>| {
        *ids.entry(x.clone()).or_insert_with(|| {
            nodes.push(x);
            succ.push(Vec::new());
            nodes.len() - 1
        })
    };
    let combos = |opts: Vec<Vec<u32>>| -> Vec<Vec<u32>> {
        let mut out = vec![Vec::new()];
        for o in opts {
            out = out
                .into_iter()
                .flat_map(|p: Vec<u32>| {
                    o.iter().map(move |&x| {
                        let mut v = p.clone();
                        v.push(x);
                        v
                    })
                })
                .collect();
        }
        out
    };
    let mut queue = VecDeque::new();
    for &w in &sys.initial {
        for qs in combos(auts.iter().map(|a| a.initial.clone()).collect()) {
            let before = nodes.len();
            let id = intern((w, qs), &mut ids, &mut nodes, &mut succ);
            if id == before {
                queue.push_back(id);
            }
        }
    }
    while let Some(x) = queue.pop_front() {
        let (w, qs) = nodes[x].clone();
        let word = &sys.words[w];
        let opts: Vec<Vec<u32>> = auts
            .iter()
            .enumerate()
            .map(|(c, a)| a.succ(qs[c], word[c / k]))
            .collect();
        let nexts = combos(opts);
        for &w2 in &sys.succ[w] {
            for q2 in &nexts {
                let before = nodes.len();
                let id = intern((w2, q2.clone()), &mut ids, &mut nodes, &mut succ);
                succ[x].push(id);
                if id == before {
                    queue.push_back(id);
                }
            }
        }
    }
    let comp = sccs(&succ);
    let ncomp = comp.iter().max().map_or(0, |m| m + 1);
    let mut nontrivial = vec![false; ncomp];
    let mut covered = vec![vec![false; auts.len()]; ncomp];
    for (x, ys) in succ.iter().enumerate() {
        if ys.iter().any(|&y| comp[y] == comp[x]) {
            nontrivial[comp[x]] = true;
        }
        for (c, a) in auts.iter().enumerate() {
            if a.accepting[nodes[x].1[c] as usize] {
                covered[comp[x]][c] = true;
            }
        }
    }
    (0..ncomp).any(|c| nontrivial[c] && covered[c].iter().all(|&b| b))
}

/// Greatest simulation on an explicit graph, written independently of the
/// library: `(i, j)` means `j` simulates `i`.
pub fn greatest_simulation(succ: &[Vec<usize>], compatible: impl Fn(usize, usize) -> bool) -> BTreeSet<(usize, usize)> {
    let n = succ.len();
    let mut rel: BTreeSet<(usize, usize)> = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .filter(|&(i, j)| compatible(i, j))
        .collect();
    loop {
        let bad: Vec<(usize, usize)> = rel
            .iter()
            .copied()
            .filter(|&(i, j)| {
                succ[i]
                    .iter()
                    .any(|&i2| !succ[j].iter().any(|&j2| rel.contains(&(i2, j2))))
            })
            .collect();
        if bad.is_empty() {
            return rel;
        }
        for p in bad {
            rel.remove(&p);
        }
    }
}

fn from_named(alphabet: &Alphabet, states: usize, initial: &[u32], accepting: &[u32], trans: &[(u32, &str, u32)]) -> Raw {
    Raw {
        alphabet: alphabet.clone(),
        states,
        initial: initial.to_vec(),
        accepting: (0..states as u32).map(|q| accepting.contains(&q)).collect(),
        trans: trans
            .iter()
            .map(|&(s, l, d)| (s, alphabet.parse_letter(l).unwrap(), d))
            .collect(),
    }
}

/// `TN*`.
pub fn ring_initial() -> Raw {
    from_named(&nt(), 2, &[0], &[1], &[(0, "T", 1), (1, "N", 1)])
}

/// The token ring relation and its mutants, written out independently of
/// the example generator.
pub fn ring_relation(variant: &str) -> Raw {
    let p = nt().with_arity(2).unwrap();
    // (N,N)*(T,N)(N,T)(N,N)*: states 0,1,2
    // (N,T)(N,N)*(T,N): states 3,4,5
    let mut trans = vec![
        (0, "N/N", 0),
        (0, "T/N", 1),
        (1, "N/T", 2),
        (2, "N/N", 2),
        (3, "N/T", 4),
        (4, "N/N", 4),
        (4, "T/N", 5),
    ];
    let mut initial = vec![0, 3];
    let mut accepting = vec![2, 5];
    match variant {
        "token-ring" => {}
        "token-ring-idle-mutant" => {
            // (N,N)*(T,T)(N,N)*
            trans.extend([(0, "T/T", 6), (6, "N/N", 6)]);
            accepting.push(6);
        }
        "token-dup-mutant" => {
            // (N,N)*(T,T)(N,T)(N,N)*, plus identity on words with two or
            // more tokens
            trans.extend([
                (0, "T/T", 6),
                (6, "N/T", 7),
                (7, "N/N", 7),
                (8, "N/N", 8),
                (8, "T/T", 9),
                (9, "N/N", 9),
                (9, "T/T", 10),
                (10, "N/N", 10),
                (10, "T/T", 10),
            ]);
            initial.push(8);
            accepting.extend([7, 10]);
        }
        other => panic!("unknown variant {other}"),
    }
    from_named(&p, 11, &initial, &accepting, &trans)
}

/// `N*TN*`.
pub fn one_token_raw() -> Raw {
    from_named(&nt(), 2, &[0], &[1], &[(0, "N", 0), (0, "T", 1), (1, "N", 1)])
}

/// `□◇T` as a deterministic Büchi automaton.
pub fn infinitely_many_t() -> Raw {
    from_named(&nt(), 2, &[0], &[1], &[(0, "N", 0), (0, "T", 1), (1, "N", 0), (1, "T", 1)])
}

/// `◇□N`.
pub fn finitely_many_t() -> Raw {
    from_named(
        &nt(),
        2,
        &[0],
        &[1],
        &[(0, "N", 0), (0, "T", 0), (0, "N", 1), (1, "N", 1)],
    )
}

/// Over cop or lep masks for one property: eventually a `b0` letter.
pub fn eventually_b0() -> Raw {
    let a = rmckit::augment::subset_alphabet(1).unwrap();
    from_named(&a, 2, &[0], &[1], &[(0, "b1", 0), (0, "b0", 1), (1, "b0", 1), (1, "b1", 1)])
}

/// Flips acceptance of a complete weak deterministic automaton: its
/// complement.
pub fn flipped(a: &Raw) -> Raw {
    let mut c = a.clone();
    c.accepting = a.accepting.iter().map(|&b| !b).collect();
    c
}

/// A random sliced GSP instance over `sigma(k)`.
#[derive(Clone, Debug)]
pub struct GspInstance {
    pub n: usize,
    pub init: Raw,
    pub rel: Raw,
    pub cops: Vec<Raw>,
    pub neg: Raw,
}

impl GspInstance {
    pub fn random(r: &mut StdRng, max_states: usize) -> Self {
        let k = r.gen_range(2..=3usize);
        let max_n = if k == 2 { 6 } else { 4 };
        let n = r.gen_range(2..=max_n);
        debug_assert!(k.pow(n as u32) <= max_states);
        let s = sigma(k);
        let ncops = r.gen_range(1..=2usize);
        let cops: Vec<Raw> = (0..ncops)
            .map(|_| {
                let states = r.gen_range(1..=3);
                random_dfa(r, &s, states)
            })
            .collect();
        let neg_states = r.gen_range(1..=3);
        let neg = random_weak_dba(r, &rmckit::augment::subset_alphabet(ncops).unwrap(), neg_states);
        let init_states = r.gen_range(1..=3);
        GspInstance {
            n,
            init: random_nfa(r, &s, init_states),
            rel: random_relation(r, &s, 3),
            cops,
            neg,
        }
    }

    pub fn system(&self) -> rmckit::FiniteSystem {
        rmckit::RegularSystem::new(self.init.nfa().canonical(), self.rel.transducer())
            .unwrap()
            .slice(self.n)
            .unwrap()
    }

    pub fn cop_properties(&self) -> Vec<rmckit::StateProperty<Nfa>> {
        self.cops
            .iter()
            .enumerate()
            .map(|(i, c)| rmckit::StateProperty::new(format!("c{i}"), c.nfa()).unwrap())
            .collect()
    }

    pub fn negated(&self) -> rmckit::NegatedGsp {
        rmckit::NegatedGsp::new(self.neg.buchi(), self.cops.len()).unwrap()
    }

    pub fn explicit(&self) -> Explicit {
        Explicit::new(&self.init, &self.rel, self.n)
    }
}

/// The augmented words of a finite-mode GSP layout at length `n`: every
/// `Σ`-word with every label on its last letter. Returns `(Σ-word index,
/// automaton state, cop mask, augmented word)`.
pub fn gsp_aug_words(
    layout: &rmckit::GspLayout,
    sys: &Explicit,
    sigma: &Alphabet,
    num_states: usize,
    num_cops: usize,
) -> Vec<(usize, u32, u32, Word)> {
    let mut out = Vec::new();
    for (i, w) in sys.words.iter().enumerate() {
        for q in 0..num_states as u32 {
            for m in 0..1u32 << num_cops {
                let letters: Vec<Letter> = w
                    .iter()
                    .enumerate()
                    .map(|(j, &l)| {
                        let sym = sigma.symbol_name(l as u32);
                        let name = if j + 1 == w.len() {
                            format!("{sym}.q{q}.{}", rmckit::CopSet(m).name(num_cops))
                        } else {
                            format!("{sym}.bot.bot")
                        };
                        layout.alphabet().parse_letter(&name).unwrap()
                    })
                    .collect();
                out.push((i, q, m, Word::new(letters)));
            }
        }
    }
    out
}
