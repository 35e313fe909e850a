//! Comparisons of library results against the oracles of this module.
//! Each returns a description of the first mismatch.

use std::collections::BTreeSet;

use rand::rngs::StdRng;
use rmckit::gsp::replay_gsp_witness;
use rmckit::losp::replay_losp_witness;
use rmckit::*;

use super::*;

/// Replays a GSP witness without the library: `Σ` words are consecutive
/// steps of the raw relation from a raw initial word, the loop closes, and
/// the cop mask trace is accepted by the raw negated property.
pub fn replay_independently(inst: &GspInstance, layout: &GspLayout, w: &Witness<Word>) -> bool {
    let pairs = inst.init.alphabet.with_arity(2).unwrap();
    let words: Vec<Vec<u64>> = w.words.iter().map(|x| layout.project_sigma(x).letters().to_vec()).collect();
    let Some(s) = w.loop_start else { return false };
    if words.is_empty() || s >= words.len() || !inst.init.accepts(&words[0]) {
        return false;
    }
    let steps = words.windows(2).all(|p| inst.rel.accepts(&zip(&pairs, &p[0], &p[1])));
    let closes = inst.rel.accepts(&zip(&pairs, words.last().unwrap(), &words[s]));
    let masks: Vec<u64> = words.iter().map(|x| u64::from(cop_mask(&inst.cops, x))).collect();
    steps && closes && inst.neg.accepts_lasso(&masks[..s], &masks[s..])
}

/// A random instance whose augmented state count stays within the
/// brute-force simulation cap.
pub fn small_instance(r: &mut StdRng) -> GspInstance {
    loop {
        let mut inst = GspInstance::random(r, 200);
        inst.n = inst.n.min(5);
        let size = (inst.init.alphabet.len().pow(inst.n as u32) as usize * inst.neg.states) << inst.cops.len();
        if size <= 500 {
            return inst;
        }
    }
}

/// Outcome of a GSP check: the loop verdict, its witness replay results.
pub struct GspRun {
    pub status: Status,
    pub expected: bool,
    pub replays: Vec<bool>,
}

/// `check_emptiness_loop` on the augmented instance against the explicit
/// product oracle; every witness is replayed by the library and
/// independently.
pub fn gsp_loop_run(inst: &GspInstance) -> GspRun {
    let m = inst.system();
    let cops = inst.cop_properties();
    let neg = inst.negated();
    let aug = build_augmented_finite(&m, &neg, &cops).unwrap();
    let v = check_emptiness_loop(&aug.system, 64).unwrap();
    let expected = gsp_oracle(&inst.explicit(), &inst.cops, &inst.neg);
    let replays = v
        .witness
        .iter()
        .map(|w| replay_gsp_witness(&aug, &m, &neg, &cops, w).unwrap() && replay_independently(inst, &aug.layout, w))
        .collect();
    GspRun {
        status: v.status,
        expected,
        replays,
    }
}

/// The simulation fixpoint restricted to the enumerated augmented states
/// against the oracle greatest simulation (and the library brute force),
/// then the simulation check against the loop check. Returns both verdicts
/// and the replay results of the simulation witnesses.
pub fn compare_simulation(inst: &GspInstance) -> Result<(Status, Status), String> {
    compare_simulation_with_replays(inst).map(|(s, l, _)| (s, l))
}

pub fn compare_simulation_with_replays(inst: &GspInstance) -> Result<(Status, Status, Vec<bool>), String> {
    let m = inst.system();
    let cops = inst.cop_properties();
    let neg = inst.negated();
    let aug = build_augmented_finite(&m, &neg, &cops).unwrap();
    let sys = inst.explicit();
    let states = gsp_aug_words(&aug.layout, &sys, &inst.init.alphabet, inst.neg.states, inst.cops.len());
    let t = aug.system.system.relation();
    let succ: Vec<Vec<usize>> = states
        .iter()
        .map(|(_, _, _, x)| {
            (0..states.len())
                .filter(|&j| t.accepts_pair(x, &states[j].3).unwrap())
                .collect()
        })
        .collect();
    // the augmented steps are exactly the labeled steps of the raw system
    // and the raw negated property
    let pairs = inst.init.alphabet.with_arity(2).unwrap();
    for (i, js) in succ.iter().enumerate() {
        let (w1, q1, m1, _) = states[i];
        let expected: Vec<usize> = (0..states.len())
            .filter(|&j| {
                let (w2, q2, _, _) = states[j];
                inst.rel.accepts(&zip(&pairs, &sys.words[w1], &sys.words[w2]))
                    && inst.neg.succ(q1, u64::from(m1)).contains(&q2)
                    && m1 == cop_mask(&inst.cops, &sys.words[w1])
            })
            .collect();
        if js != &expected {
            return Err(format!("augmented successors of state {i} differ"));
        }
    }
    let compatible = |i: usize, j: usize| {
        let (w1, q1, _, _) = states[i];
        let (w2, q2, _, _) = states[j];
        cop_mask(&inst.cops, &sys.words[w1]) == cop_mask(&inst.cops, &sys.words[w2])
            && (!inst.neg.accepting[q1 as usize] || inst.neg.accepting[q2 as usize])
    };
    let oracle = greatest_simulation(&succ, compatible);
    let edges: Vec<(usize, usize)> =
        succ.iter().enumerate().flat_map(|(i, js)| js.iter().map(move |&j| (i, j))).collect();
    let brute = brute_force_simulation(states.len(), &edges, compatible).unwrap();
    if brute != oracle {
        return Err("library brute-force simulation differs from the oracle".into());
    }
    let sim = sim_fixpoint(&aug, &cops, 64).unwrap();
    if !sim.exact {
        return Err("simulation fixpoint not reached within budget".into());
    }
    let restricted: BTreeSet<(usize, usize)> = (0..states.len())
        .flat_map(|i| (0..states.len()).map(move |j| (i, j)))
        .filter(|&(i, j)| sim.relation.accepts_pair(&states[i].3, &states[j].3).unwrap())
        .collect();
    if restricted != oracle {
        return Err(format!(
            "symbolic simulation has {} pairs on enumerated states, oracle {}",
            restricted.len(),
            oracle.len()
        ));
    }
    let by_sim = check_emptiness_sim(&aug.system, SimInput::Fixpoint(&sim), 64).unwrap();
    let by_loop = check_emptiness_loop(&aug.system, 64).unwrap();
    let replays = by_sim
        .witness
        .iter()
        .chain(by_loop.witness.iter())
        .map(|w| replay_gsp_witness(&aug, &m, &neg, &cops, w).unwrap() && replay_independently(inst, &aug.layout, w))
        .collect();
    Ok((by_sim.status, by_loop.status, replays))
}

/// LOSP check on a sliced system against the generalized Büchi oracle.
/// Returns the verdict, whether it matches the oracle, and the replay
/// results of the witness (library replay, label stability, `Σ` steps).
pub fn losp_run(
    m: &FiniteSystem,
    sys: &Explicit,
    losp_raw: &Raw,
    leps: &[LocalExecutionProperty],
    lep_raws: &[(Raw, Raw)],
) -> (Status, bool, Vec<bool>) {
    let losp = Losp::new(losp_raw.nfa(), leps.len()).unwrap();
    let aug = build_augmented_losp(m, &losp, leps).unwrap();
    let v = check_emptiness_loop(&aug.system, 64).unwrap();
    let expected = losp_oracle(sys, lep_raws, losp_raw);
    let agrees = v.status == if expected { Status::Violated } else { Status::Holds };
    let replays = v
        .witness
        .iter()
        .map(|w| {
            let library = replay_losp_witness(&aug, m, &losp, leps, w).unwrap();
            let labels: Vec<Vec<u32>> = w
                .words
                .iter()
                .map(|x| x.letters().iter().map(|&l| aug.layout.label(l).leps).collect())
                .collect();
            let stable = labels.windows(2).all(|p| p[0] == p[1]);
            let rel = m.relation();
            let sigma: Vec<Word> = w.words.iter().map(|x| aug.layout.project_sigma(x)).collect();
            let steps = sigma.windows(2).all(|p| rel.accepts_pair(&p[0], &p[1]).unwrap());
            let closes = w
                .loop_start
                .is_some_and(|s| rel.accepts_pair(sigma.last().unwrap(), &sigma[s]).unwrap());
            let initial = m.initial().accepts(&sigma[0]).unwrap();
            library && stable && steps && closes && initial
        })
        .collect();
    (v.status, agrees, replays)
}
