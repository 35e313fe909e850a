//! The token ring example and its mutants as file bundles.

use std::path::{Path, PathBuf};

use crate::alphabet::{Alphabet, Letter};
use crate::augment::subset_alphabet;
use crate::error::{Error, Result};
use crate::format::{serialize_aut, serialize_system, AutFile, AutKind, AutValue, LepDecl, PropertyDecl, PropertyKind, SystemFile};
use crate::graph::State;
use crate::nfa::Nfa;
use crate::omega::Buchi;
use crate::transducer::{FiniteTransducer, Transducer};

pub const EXAMPLES: [&str; 3] = ["token-ring", "token-ring-idle-mutant", "token-dup-mutant"];

/// Named files making up an example; `system.sys` refers to the others.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bundle {
    pub name: String,
    pub files: Vec<(String, String)>,
}

impl Bundle {
    pub fn file(&self, name: &str) -> Option<&str> {
        self.files.iter().find(|(n, _)| n == name).map(|(_, t)| t.as_str())
    }

    /// Writes every file into `dir` (created if missing).
    pub fn write(&self, dir: &Path) -> Result<PathBuf> {
        std::fs::create_dir_all(dir)?;
        for (name, text) in &self.files {
            std::fs::write(dir.join(name), text)?;
        }
        Ok(dir.join("system.sys"))
    }
}

fn nt() -> Alphabet {
    Alphabet::new(["N", "T"]).expect("static alphabet")
}

fn nfa(a: &Alphabet, n: usize, init: &[State], acc: &[State], trans: &[(State, &str, State)]) -> Nfa {
    let trans: Vec<(State, Letter, State)> = trans
        .iter()
        .map(|&(s, l, d)| (s, a.parse_letter(l).expect("static letter"), d))
        .collect();
    Nfa::from_parts(a.clone(), n, init.iter().copied(), acc.iter().copied(), trans).expect("static automaton")
}

fn buchi(a: &Alphabet, n: usize, acc: &[State], trans: &[(State, &str, State)]) -> Buchi {
    let trans: Vec<(State, Letter, State)> = trans
        .iter()
        .map(|&(s, l, d)| (s, a.parse_letter(l).expect("static letter"), d))
        .collect();
    Buchi::from_parts(a.clone(), n, [0], acc.iter().copied(), trans).expect("static automaton")
}

/// `TN*`: the token starts at position 0.
pub fn token_ring_initial() -> Nfa {
    nfa(&nt(), 2, &[0], &[1], &[(0, "T", 1), (1, "N", 1)]).canonical()
}

/// `(N,N)*(T,N)(N,T)(N,N)* ∪ (N,T)(N,N)*(T,N)`, plus the mutant branches.
pub fn token_ring_relation(variant: &str) -> Result<FiniteTransducer> {
    let p = nt().with_arity(2)?;
    let mut trans = vec![
        (0, "N/N", 0),
        (0, "T/N", 1),
        (1, "N/T", 2),
        (2, "N/N", 2),
        (10, "N/T", 3),
        (3, "N/N", 3),
        (3, "T/N", 4),
    ];
    let mut init = vec![0, 10];
    let mut acc = vec![2, 4];
    match variant {
        "token-ring" => {}
        // (N,N)*(T,T)(N,N)*: the token holder may keep the token
        "token-ring-idle-mutant" => {
            trans.extend([(0, "T/T", 5), (5, "N/N", 5)]);
            acc.push(5);
        }
        // (N,N)*(T,T)(N,T)(N,N)*: the token is passed and kept, and words
        // with two tokens or more may stutter
        "token-dup-mutant" => {
            trans.extend([
                (0, "T/T", 5),
                (5, "N/T", 6),
                (6, "N/N", 6),
                (7, "N/N", 7),
                (7, "T/T", 8),
                (8, "N/N", 8),
                (8, "T/T", 9),
                (9, "N/N", 9),
                (9, "T/T", 9),
            ]);
            init.push(7);
            acc.extend([6, 9]);
        }
        other => return Err(Error::input(format!("unknown example `{other}`"))),
    }
    Transducer::new(nfa(&p, 11, &init, &acc, &trans).canonical())
}

/// `N*TN*`.
pub fn one_token() -> Nfa {
    nfa(&nt(), 2, &[0], &[1], &[(0, "N", 0), (0, "T", 1), (1, "N", 1)]).canonical()
}

/// `Σ*TΣ*TΣ*`.
pub fn two_tokens() -> Nfa {
    nfa(
        &nt(),
        3,
        &[0],
        &[2],
        &[(0, "N", 0), (0, "T", 1), (1, "N", 1), (1, "T", 2), (2, "N", 2), (2, "T", 2)],
    )
    .canonical()
}

/// `A_¬gsp` for `□ one_token`: eventually a state without exactly one token.
pub fn eventually_not_one_token() -> Buchi {
    let a = subset_alphabet(1).expect("static alphabet");
    buchi(&a, 2, &[1], &[(0, "b1", 0), (0, "b0", 1), (1, "b0", 1), (1, "b1", 1)])
}

/// `□(N ⇒ ◇T)`, that is `□◇T`.
pub fn fair_token() -> Buchi {
    buchi(&nt(), 2, &[0], &[(0, "T", 0), (0, "N", 1), (1, "N", 1), (1, "T", 0)])
}

/// `◇□N`, the complement of [`fair_token`].
pub fn fair_token_complement() -> Buchi {
    buchi(
        &nt(),
        3,
        &[1],
        &[(0, "N", 0), (0, "T", 0), (0, "N", 1), (1, "N", 1), (1, "T", 2), (2, "N", 2), (2, "T", 2)],
    )
}

/// `A_¬losp` for "every position satisfies the lep": some label is `b0`.
pub fn some_position_unfair() -> Nfa {
    let a = subset_alphabet(1).expect("static alphabet");
    nfa(&a, 2, &[0], &[1], &[(0, "b1", 0), (0, "b0", 1), (1, "b0", 1), (1, "b1", 1)]).canonical()
}

/// Generates a named example bundle. Output is byte-stable.
pub fn gen_example(name: &str) -> Result<Bundle> {
    let relation = token_ring_relation(name)?;
    let aut = |kind, value| serialize_aut(&AutFile::new(kind, value));
    let system = SystemFile {
        omega: false,
        initial: "init.aut".into(),
        relation: "relation.aut".into(),
        cops: vec![("one_token".into(), "one_token.aut".into())],
        leps: vec![LepDecl {
            name: "fair".into(),
            file: "fair.aut".into(),
            complement: Some("fair_neg.aut".into()),
        }],
        properties: vec![
            PropertyDecl {
                name: "mutex".into(),
                kind: PropertyKind::ReachBad,
                file: "two_tokens.aut".into(),
            },
            PropertyDecl {
                name: "always_one_token".into(),
                kind: PropertyKind::GspNegated,
                file: "neg_gsp.aut".into(),
            },
            PropertyDecl {
                name: "all_fair".into(),
                kind: PropertyKind::LospNegated,
                file: "neg_losp.aut".into(),
            },
        ],
    };
    let files = vec![
        ("system.sys".to_string(), format!("# {name}\n{}", serialize_system(&system))),
        ("init.aut".into(), aut(AutKind::Dfa, AutValue::Finite(token_ring_initial()))),
        ("relation.aut".into(), aut(AutKind::Transducer, AutValue::Transducer(relation))),
        ("one_token.aut".into(), aut(AutKind::Dfa, AutValue::Finite(one_token()))),
        ("two_tokens.aut".into(), aut(AutKind::Dfa, AutValue::Finite(two_tokens()))),
        ("neg_gsp.aut".into(), aut(AutKind::WeakDba, AutValue::Omega(eventually_not_one_token()))),
        ("fair.aut".into(), aut(AutKind::Buchi, AutValue::Omega(fair_token()))),
        ("fair_neg.aut".into(), aut(AutKind::Buchi, AutValue::Omega(fair_token_complement()))),
        ("neg_losp.aut".into(), aut(AutKind::Dfa, AutValue::Finite(some_position_unfair()))),
    ];
    Ok(Bundle {
        name: name.to_string(),
        files,
    })
}
