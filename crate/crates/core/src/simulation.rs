//! Greatest simulation of an augmented system, computed symbolically by
//! refinement, and simulation-based nonemptiness.

use std::collections::BTreeSet;

use crate::acceptor::Acceptor;
use crate::error::{Error, Result};
use crate::gsp::{AugmentedGsp, StateProperty};
use crate::system::{backtrack, reach_from, BuchiRegularSystem, Diagnostics, Verdict, Witness};
use crate::transducer::{ClosureKind, Transducer};

/// An iterate `Sim_k` of the refinement. A pair `(w₁, w₂)` means `w₂`
/// simulates `w₁`.
#[derive(Clone, Debug)]
pub struct SimRelation<A: Acceptor> {
    pub relation: Transducer<A>,
    pub iteration_index: usize,
    /// The refinement reached its fixpoint.
    pub exact: bool,
}

/// A user- or accelerator-supplied under-approximation of the simulation.
#[derive(Clone, Debug)]
pub struct SimCandidate<A: Acceptor> {
    pub relation: Transducer<A>,
    pub validated: bool,
}

/// What `check_emptiness_sim` may use.
#[derive(Clone, Copy, Debug)]
pub enum SimInput<'a, A: Acceptor> {
    Fixpoint(&'a SimRelation<A>),
    Candidate(&'a SimCandidate<A>),
}

/// `Sim₀`: pairs of words whose `Σ` projections satisfy the same state
/// properties and such that `w₁ ∈ F` implies `w₂ ∈ F`.
pub fn sim_init<A: Acceptor>(aug: &AugmentedGsp<A>, cops: &[StateProperty<A>]) -> Result<SimRelation<A>> {
    let layout = &aug.layout;
    let base = layout.alphabet().clone();
    let pairs = |x: &A, y: &A| x.join_at(&[0], y, &[1], 2);
    let mut rel = A::universal(layout.pair_alphabet());
    for c in cops {
        let yes = layout.lift(c.automaton());
        let no = layout.lift(&c.automaton().complement()?);
        let same = pairs(&yes, &yes)?.union(&pairs(&no, &no)?)?;
        rel = rel.intersect(&same)?.canonical()?;
    }
    let f = &aug.system.acceptance;
    if f.alphabet() != &base {
        return Err(Error::mismatch("acceptance condition and augmented alphabet"));
    }
    let lost = pairs(f, &f.complement()?)?;
    rel = rel.difference(&lost)?.canonical()?;
    Ok(SimRelation {
        relation: Transducer::new(rel)?,
        iteration_index: 0,
        exact: false,
    })
}

/// One refinement: removes `(w₁, w₂)` when some successor `w₃` of `w₁` is
/// matched by no successor `w₄` of `w₂` with `(w₃, w₄) ∈ Sim_k`.
pub fn sim_step<A: Acceptor>(s: &SimRelation<A>, t: &Transducer<A>) -> Result<SimRelation<A>> {
    Ok(SimRelation {
        relation: refine(&s.relation, t)?,
        iteration_index: s.iteration_index + 1,
        exact: false,
    })
}

fn refine<A: Acceptor>(s: &Transducer<A>, t: &Transducer<A>) -> Result<Transducer<A>> {
    // matched(w₂, w₃) ⇔ ∃w₄. (w₂, w₄) ∈ T ∧ (w₃, w₄) ∈ S
    let matched = t.compose(&s.inverse())?;
    // bad(w₁, w₂) ⇔ ∃w₃. (w₁, w₃) ∈ T ∧ ¬matched(w₂, w₃)
    let bad = t.compose(&matched.complement()?.inverse())?;
    s.difference(&bad)?.canonical()
}

/// Refines `Sim₀` until two iterates are equal or `budget` steps were made.
/// A non-exact result over-approximates the simulation.
pub fn sim_fixpoint<A: Acceptor>(
    aug: &AugmentedGsp<A>,
    cops: &[StateProperty<A>],
    budget: usize,
) -> Result<SimRelation<A>> {
    if budget == 0 {
        return Err(Error::input("simulation budget must be at least 1"));
    }
    let t = aug.system.system.relation();
    let mut s = sim_init(aug, cops)?;
    for _ in 0..budget {
        let next = sim_step(&s, t)?;
        if next.relation == s.relation {
            return Ok(SimRelation { exact: true, ..next });
        }
        s = next;
    }
    Ok(s)
}

/// Accepts `c` when `c ⊆ Sim₀` and one refinement step removes nothing
/// from it; such a `c` is a simulation, hence below the greatest one.
pub fn validate_candidate<A: Acceptor>(
    c: &Transducer<A>,
    aug: &AugmentedGsp<A>,
    cops: &[StateProperty<A>],
) -> Result<SimCandidate<A>> {
    let relation = c.clone();
    if c.pair_alphabet() != aug.layout.pair_alphabet() {
        return Ok(SimCandidate {
            relation,
            validated: false,
        });
    }
    let sim0 = sim_init(aug, cops)?;
    let validated =
        c.includes_in(&sim0.relation)? && c.includes_in(&refine(c, aug.system.system.relation())?)?;
    Ok(SimCandidate { relation, validated })
}

/// Simulation equivalence `Sim ∩ Sim⁻¹`.
pub fn sim_equivalence<A: Acceptor>(s: &Transducer<A>) -> Result<Transducer<A>> {
    s.intersect(&s.inverse())?.canonical()
}

/// Simulation-based check: nonempty when some reachable `w₁` reaches an
/// accepting `w₂` that simulates it. Violations are unfolded along the
/// simulation into a concrete lasso. `Holds` requires an exact fixpoint
/// and converged closures.
pub fn check_emptiness_sim<A: Acceptor>(
    msys: &BuchiRegularSystem<A>,
    sim: SimInput<'_, A>,
    budget: usize,
) -> Result<Verdict<A::Word>> {
    let (rel, exact) = match sim {
        SimInput::Fixpoint(s) if s.exact => (&s.relation, true),
        SimInput::Fixpoint(_) => {
            return Ok(Verdict::unknown(
                "simulation refinement did not reach its fixpoint",
                Diagnostics::default(),
            ))
        }
        SimInput::Candidate(c) if c.validated => (&c.relation, false),
        SimInput::Candidate(_) => {
            return Ok(Verdict::unknown(
                "simulation candidate was not validated",
                Diagnostics::default(),
            ))
        }
    };
    let t = msys.system.relation();
    if rel.pair_alphabet() != t.pair_alphabet() {
        return Err(Error::mismatch("simulation relation and system"));
    }
    let mut diag = Diagnostics::default();
    if budget == 0 {
        return Ok(Verdict::unknown("budget is zero", diag));
    }
    let reach = reach_from(t, msys.system.initial(), budget)?;
    let restricted = t.restrict_domain(&reach.set)?.canonical()?;
    let plus = restricted.closure(ClosureKind::Plus, budget, None)?;
    diag.steps = reach.steps.max(plus.steps_used);
    let universal = A::universal(msys.alphabet());
    let into_f = universal.join_at(&[0], &msys.acceptance, &[1], 2)?;
    let y = plus.relation.inner().intersect(&into_f)?.intersect(rel.inner())?;
    let y = Transducer::new(y)?;
    let x = y.domain()?.intersect(&reach.set)?;
    if let Some(w1) = x.pick() {
        let alphabet = msys.alphabet().clone();
        let w2 = y
            .image(&A::singleton(&alphabet, &w1)?)?
            .pick()
            .ok_or_else(|| Error::input("simulation witness lost its target"))?;
        if let Some(witness) = unfold(&restricted, rel, &reach.frontiers, &w1, &w2, budget)? {
            diag.converged = reach.converged && plus.converged;
            return Ok(Verdict::violated(witness, diag));
        }
        return Ok(Verdict::unknown(
            "simulation formula nonempty but no lasso rebuilt within budget",
            diag,
        ));
    }
    if exact && reach.converged && plus.converged {
        diag.converged = true;
        return Ok(Verdict::holds(diag));
    }
    let reason = if exact {
        "no accepting loop found but closures not converged"
    } else {
        "no accepting loop found with an under-approximated simulation"
    };
    Ok(Verdict::unknown(reason, diag))
}

/// A concrete path `from →⁺ to` of at most `max` steps.
fn path_between<A: Acceptor>(
    t: &Transducer<A>,
    from: &A::Word,
    to: &A::Word,
    max: usize,
) -> Result<Option<Vec<A::Word>>> {
    let alphabet = t.base();
    let mut layers = vec![A::singleton(&alphabet, from)?];
    for i in 1..=max {
        let next = t.image(&layers[i - 1])?;
        if next.is_empty() {
            return Ok(None);
        }
        let hit = next.accepts(to)?;
        layers.push(next);
        if hit {
            layers[i] = A::singleton(&alphabet, to)?;
            return Ok(Some(backtrack(t, &layers, i, to.clone())?));
        }
    }
    Ok(None)
}

/// Turns `w₁ →⁺ w₂`, `w₂ ∈ F`, `(w₁, w₂) ∈ Sim` into a lasso: `w₂` mimics
/// the path, then so does the word reached, and so on, until a round ends
/// on a word already seen at the end of a round.
fn unfold<A: Acceptor>(
    t: &Transducer<A>,
    sim: &Transducer<A>,
    frontiers: &[A],
    w1: &A::Word,
    w2: &A::Word,
    budget: usize,
) -> Result<Option<Witness<A::Word>>> {
    let alphabet = t.base();
    let Some(k) = frontiers.iter().position(|f| f.accepts(w1).unwrap_or(false)) else {
        return Ok(None);
    };
    let mut words = backtrack(t, frontiers, k, w1.clone())?;
    let Some(mut path) = path_between(t, w1, w2, budget + 1)? else {
        return Ok(None);
    };
    words.extend(path[1..].iter().cloned());
    let mut round_ends = vec![(w2.clone(), words.len() - 1)];
    let max_rounds = 4 * (budget + 1) + 16;
    for _ in 0..max_rounds {
        // the word at the end of the previous round simulates path[0]
        let mut v = path.last().expect("nonempty").clone();
        let mut mimic = vec![v.clone()];
        for u in &path[1..] {
            let options = t
                .image(&A::singleton(&alphabet, &v)?)?
                .intersect(&sim.image(&A::singleton(&alphabet, u)?)?)?;
            let Some(next) = options.pick() else {
                return Ok(None);
            };
            mimic.push(next.clone());
            v = next;
        }
        words.extend(mimic[1..].iter().cloned());
        if let Some(&(_, at)) = round_ends.iter().find(|(e, _)| *e == v) {
            words.pop();
            return Ok(Some(Witness {
                words,
                loop_start: Some(at),
            }));
        }
        round_ends.push((v, words.len() - 1));
        path = mimic;
    }
    Ok(None)
}

/// Greatest simulation on an explicit graph by naive refinement: `(i, j)`
/// is kept when `compatible(i, j)` and every move of `i` is matched by a
/// move of `j` into a kept pair.
pub fn brute_force_simulation(
    num_states: usize,
    transitions: &[(usize, usize)],
    compatible: impl Fn(usize, usize) -> bool,
) -> Result<BTreeSet<(usize, usize)>> {
    const CAP: usize = 500;
    if num_states > CAP {
        return Err(Error::SizeCap {
            what: "explicit states".into(),
            size: num_states,
            cap: CAP,
        });
    }
    let mut succ = vec![Vec::new(); num_states];
    for &(a, b) in transitions {
        succ[a].push(b);
    }
    let mut rel = vec![vec![false; num_states]; num_states];
    for (i, row) in rel.iter_mut().enumerate() {
        for (j, cell) in row.iter_mut().enumerate() {
            *cell = compatible(i, j);
        }
    }
    loop {
        let mut changed = false;
        for i in 0..num_states {
            for j in 0..num_states {
                if rel[i][j] && !succ[i].iter().all(|&i2| succ[j].iter().any(|&j2| rel[i2][j2])) {
                    rel[i][j] = false;
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    Ok((0..num_states)
        .flat_map(|i| (0..num_states).map(move |j| (i, j)))
        .filter(|&(i, j)| rel[i][j])
        .collect())
}
