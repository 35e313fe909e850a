//! Text formats: automaton files (`.aut`) and system files (`.sys`).
//!
//! An automaton file is a list of `key: value` lines followed by a `trans:`
//! section with one `src symbol dst` transition per line:
//!
//! ```text
//! kind: dfa
//! alphabet: N T
//! states: 0 1
//! initial: 0
//! accepting: 1
//! trans:
//! 0 T 1
//! 1 N 1
//! ```
//!
//! Transducer symbols are written `a/b`. `#` starts a comment.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use rustc_hash::FxHashMap;

use crate::alphabet::Alphabet;
use crate::error::{Error, Result};
use crate::graph::{Graph, State};
use crate::nfa::Nfa;
use crate::omega::Buchi;
use crate::transducer::{FiniteTransducer, OmegaTransducer, Transducer};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum AutKind {
    Nfa,
    Dfa,
    Buchi,
    WeakDba,
    Transducer,
    OmegaTransducer,
}

impl AutKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            AutKind::Nfa => "nfa",
            AutKind::Dfa => "dfa",
            AutKind::Buchi => "buchi",
            AutKind::WeakDba => "weak-dba",
            AutKind::Transducer => "transducer",
            AutKind::OmegaTransducer => "omega-transducer",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "nfa" => AutKind::Nfa,
            "dfa" => AutKind::Dfa,
            "buchi" => AutKind::Buchi,
            "weak-dba" => AutKind::WeakDba,
            "transducer" => AutKind::Transducer,
            "omega-transducer" => AutKind::OmegaTransducer,
            _ => return None,
        })
    }

    pub fn arity(&self) -> usize {
        match self {
            AutKind::Transducer | AutKind::OmegaTransducer => 2,
            _ => 1,
        }
    }

    pub fn is_omega(&self) -> bool {
        matches!(self, AutKind::Buchi | AutKind::WeakDba | AutKind::OmegaTransducer)
    }
}

/// A parsed automaton file.
#[derive(Clone, Debug)]
pub enum AutValue {
    Finite(Nfa),
    Omega(Buchi),
    Transducer(FiniteTransducer),
    OmegaTransducer(OmegaTransducer),
}

#[derive(Clone, Debug)]
pub struct AutFile {
    pub kind: AutKind,
    pub value: AutValue,
}

impl AutFile {
    pub fn new(kind: AutKind, value: AutValue) -> Self {
        AutFile { kind, value }
    }

    pub fn graph(&self) -> &Graph {
        match &self.value {
            AutValue::Finite(a) => a.graph(),
            AutValue::Omega(a) => a.graph(),
            AutValue::Transducer(t) => t.inner().graph(),
            AutValue::OmegaTransducer(t) => t.inner().graph(),
        }
    }

    pub fn into_nfa(self) -> Result<Nfa> {
        match self.value {
            AutValue::Finite(a) => Ok(a),
            _ => Err(kind_error("a finite-word automaton", self.kind)),
        }
    }

    pub fn into_buchi(self) -> Result<Buchi> {
        match self.value {
            AutValue::Omega(a) => Ok(a),
            _ => Err(kind_error("a Büchi automaton", self.kind)),
        }
    }

    pub fn into_transducer(self) -> Result<FiniteTransducer> {
        match self.value {
            AutValue::Transducer(t) => Ok(t),
            _ => Err(kind_error("a transducer", self.kind)),
        }
    }

    pub fn into_omega_transducer(self) -> Result<OmegaTransducer> {
        match self.value {
            AutValue::OmegaTransducer(t) => Ok(t),
            _ => Err(kind_error("an omega-transducer", self.kind)),
        }
    }
}

fn kind_error(expected: &str, got: AutKind) -> Error {
    Error::ModeMismatch(format!("expected {expected}, found kind {}", got.as_str()))
}

fn parse_error(file: &str, line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        file: file.to_string(),
        line,
        column,
        message: message.into(),
    }
}

pub(crate) fn is_name(s: &str) -> bool {
    !s.is_empty() && s.bytes().all(|b| b.is_ascii_alphanumeric() || b == b'_')
}

/// A whitespace-separated token and its 1-based column.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Token<'a> {
    pub text: &'a str,
    pub column: usize,
}

/// Non-empty lines of a file with comments removed, as (line number,
/// tokens). Rejects carriage returns.
pub(crate) fn lines<'a>(text: &'a str, file: &str) -> Result<Vec<(usize, Vec<Token<'a>>)>> {
    let mut out = Vec::new();
    for (i, raw) in text.split('\n').enumerate() {
        if let Some(c) = raw.find('\r') {
            return Err(parse_error(file, i + 1, c + 1, "carriage return (files must use LF line endings)"));
        }
        let content = raw.split('#').next().unwrap_or("");
        let mut tokens = Vec::new();
        let mut start = None;
        for (pos, ch) in content.char_indices().chain([(content.len(), ' ')]) {
            if ch.is_whitespace() {
                if let Some(s) = start.take() {
                    tokens.push(Token {
                        text: &content[s..pos],
                        column: content[..s].chars().count() + 1,
                    });
                }
            } else if start.is_none() {
                start = Some(pos);
            }
        }
        if !tokens.is_empty() {
            out.push((i + 1, tokens));
        }
    }
    Ok(out)
}

/// Parses an automaton file; `file` names it in error messages.
pub fn parse_aut(text: &str, file: &str) -> Result<AutFile> {
    const KEYS: [&str; 6] = ["kind:", "alphabet:", "states:", "initial:", "accepting:", "trans:"];
    let mut fields: FxHashMap<&str, (usize, Vec<Token>)> = FxHashMap::default();
    let mut trans: Vec<(usize, Vec<Token>)> = Vec::new();
    let mut in_trans = false;
    for (line, tokens) in lines(text, file)? {
        let head = tokens[0];
        if head.text.ends_with(':') {
            if !KEYS.contains(&head.text) {
                return Err(parse_error(file, line, head.column, format!("unknown key `{}`", head.text)));
            }
            if fields.contains_key(head.text) {
                return Err(parse_error(file, line, head.column, format!("duplicate key `{}`", head.text)));
            }
            if head.text == "trans:" && tokens.len() > 1 {
                return Err(parse_error(file, line, tokens[1].column, "transitions start on the line after `trans:`"));
            }
            in_trans = head.text == "trans:";
            fields.insert(head.text, (line, tokens[1..].to_vec()));
        } else if in_trans {
            trans.push((line, tokens));
        } else {
            return Err(parse_error(file, line, head.column, format!("expected a `key:` line, found `{}`", head.text)));
        }
    }
    let field = |key: &str| -> Result<&(usize, Vec<Token>)> {
        fields
            .get(key)
            .ok_or_else(|| parse_error(file, 1, 1, format!("missing key `{key}`")))
    };

    let (kline, ktoks) = field("kind:")?;
    let kind = match ktoks.as_slice() {
        [t] => AutKind::parse(t.text)
            .ok_or_else(|| parse_error(file, *kline, t.column, format!("unknown kind `{}`", t.text)))?,
        _ => return Err(parse_error(file, *kline, 1, "expected exactly one kind")),
    };

    let (aline, atoks) = field("alphabet:")?;
    if atoks.is_empty() {
        return Err(parse_error(file, *aline, 1, "empty alphabet"));
    }
    for t in atoks {
        if !is_name(t.text) {
            return Err(parse_error(file, *aline, t.column, format!("invalid symbol name `{}`", t.text)));
        }
    }
    let base = Alphabet::new(atoks.iter().map(|t| t.text))
        .map_err(|e| parse_error(file, *aline, atoks[0].column, e.to_string()))?;
    let alphabet = base.with_arity(kind.arity())?;

    let (sline, stoks) = field("states:")?;
    let mut ids: FxHashMap<&str, State> = FxHashMap::default();
    for t in stoks {
        if !is_name(t.text) {
            return Err(parse_error(file, *sline, t.column, format!("invalid state name `{}`", t.text)));
        }
        let id = ids.len() as State;
        if ids.insert(t.text, id).is_some() {
            return Err(parse_error(file, *sline, t.column, format!("duplicate state `{}`", t.text)));
        }
    }
    let state = |line: usize, t: &Token| -> Result<State> {
        ids.get(t.text)
            .copied()
            .ok_or_else(|| parse_error(file, line, t.column, format!("undeclared state `{}`", t.text)))
    };
    let mut g = Graph::new(alphabet.clone());
    for _ in 0..ids.len() {
        g.add_state(false);
    }
    if let Ok((line, toks)) = field("initial:") {
        for t in toks {
            g.initial.push(state(*line, t)?);
        }
    }
    if let Ok((line, toks)) = field("accepting:") {
        for t in toks {
            let q = state(*line, t)?;
            g.accepting[q as usize] = true;
        }
    }
    field("trans:")?;
    for (line, toks) in &trans {
        if toks.len() != 3 {
            return Err(parse_error(file, *line, toks[0].column, "expected `src symbol dst`"));
        }
        let src = state(*line, &toks[0])?;
        let dst = state(*line, &toks[2])?;
        let sym = toks[1];
        let parts = sym.text.split('/').count();
        if parts != kind.arity() {
            return Err(parse_error(
                file,
                *line,
                sym.column,
                format!("symbol `{}` has arity {parts}, kind {} needs arity {}", sym.text, kind.as_str(), kind.arity()),
            ));
        }
        let letter = alphabet
            .parse_letter(sym.text)
            .map_err(|e| parse_error(file, *line, sym.column, e.to_string()))?;
        g.add_transition(src, letter, dst);
    }
    g.normalize();

    let value = match kind {
        AutKind::Nfa => AutValue::Finite(Nfa::from_graph(g)),
        AutKind::Dfa => {
            if !(g.initial.is_empty() || g.is_deterministic()) {
                return Err(Error::NotDeterministic(file.to_string()));
            }
            AutValue::Finite(Nfa::from_graph(g))
        }
        AutKind::Buchi => AutValue::Omega(Buchi::from_graph(g)),
        AutKind::WeakDba => {
            let b = Buchi::from_graph(g);
            if !(b.graph().initial.is_empty() || b.is_weak_deterministic()) {
                return Err(Error::NotWeakDeterministic);
            }
            AutValue::Omega(b)
        }
        AutKind::Transducer => AutValue::Transducer(Transducer::new(Nfa::from_graph(g))?),
        AutKind::OmegaTransducer => AutValue::OmegaTransducer(Transducer::new(Buchi::from_graph(g))?),
    };
    Ok(AutFile { kind, value })
}

/// Serializes with states named by their indices and transitions sorted.
pub fn serialize_aut(f: &AutFile) -> String {
    let g = f.graph();
    let mut out = String::new();
    let mut field = |key: &str, values: Vec<String>| {
        out.push_str(key);
        out.push(':');
        for v in values {
            out.push(' ');
            out.push_str(&v);
        }
        out.push('\n');
    };
    field("kind", vec![f.kind.as_str().to_string()]);
    field("alphabet", g.alphabet.symbols().to_vec());
    field("states", (0..g.num_states()).map(|q| q.to_string()).collect());
    field("initial", g.initial.iter().map(|q| q.to_string()).collect());
    field(
        "accepting",
        (0..g.num_states()).filter(|&q| g.accepting[q]).map(|q| q.to_string()).collect(),
    );
    field("trans", Vec::new());
    for (q, l, d) in g.transitions() {
        let _ = writeln!(out, "{q} {} {d}", g.alphabet.letter_name(l));
    }
    out
}

pub fn read_aut(path: &Path) -> Result<AutFile> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_aut(&text, &path.display().to_string())
}

/// Kinds of property blocks in a system file.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PropertyKind {
    /// Bad states (finite automaton over Σ).
    ReachBad,
    /// `A_¬gsp` over `2^COP`.
    GspNegated,
    /// A gsp given positively; negated when weak deterministic.
    Gsp,
    /// `A_¬losp` over `2^LEP`.
    LospNegated,
    /// A losp given positively; negated by complementation.
    Losp,
}

impl PropertyKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            PropertyKind::ReachBad => "reach-bad",
            PropertyKind::GspNegated => "gsp-negated",
            PropertyKind::Gsp => "gsp",
            PropertyKind::LospNegated => "losp-negated",
            PropertyKind::Losp => "losp",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "reach-bad" => PropertyKind::ReachBad,
            "gsp-negated" => PropertyKind::GspNegated,
            "gsp" => PropertyKind::Gsp,
            "losp-negated" => PropertyKind::LospNegated,
            "losp" => PropertyKind::Losp,
            _ => return None,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PropertyDecl {
    pub name: String,
    pub kind: PropertyKind,
    pub file: PathBuf,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LepDecl {
    pub name: String,
    pub file: PathBuf,
    pub complement: Option<PathBuf>,
}

/// A parsed system file. Paths are kept as written (relative to the
/// system file's directory).
///
/// ```text
/// mode: finite
/// initial: init.aut
/// relation: relation.aut
/// cop one_token one_token.aut
/// lep fair fair.aut fair_neg.aut
/// property mutex reach-bad two_tokens.aut
/// ```
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SystemFile {
    pub omega: bool,
    pub initial: PathBuf,
    pub relation: PathBuf,
    pub cops: Vec<(String, PathBuf)>,
    pub leps: Vec<LepDecl>,
    pub properties: Vec<PropertyDecl>,
}

pub fn parse_system(text: &str, file: &str) -> Result<SystemFile> {
    let mut mode = None;
    let mut initial = None;
    let mut relation = None;
    let mut cops = Vec::new();
    let mut leps = Vec::new();
    let mut properties: Vec<PropertyDecl> = Vec::new();
    let mut names: Vec<String> = Vec::new();
    for (line, toks) in lines(text, file)? {
        let head = toks[0];
        let err = |t: &Token, m: String| parse_error(file, line, t.column, m);
        let arg_count = |n: &[usize]| -> Result<()> {
            if n.contains(&(toks.len() - 1)) {
                Ok(())
            } else {
                Err(err(&head, format!("wrong number of arguments for `{}`", head.text)))
            }
        };
        let mut fresh = |t: &Token| -> Result<String> {
            if !is_name(t.text) {
                return Err(err(t, format!("invalid name `{}`", t.text)));
            }
            if names.iter().any(|n| n == t.text) {
                return Err(err(t, format!("duplicate name `{}`", t.text)));
            }
            names.push(t.text.to_string());
            Ok(t.text.to_string())
        };
        match head.text {
            "mode:" => {
                arg_count(&[1])?;
                if mode.is_some() {
                    return Err(err(&head, "duplicate key `mode:`".into()));
                }
                mode = Some(match toks[1].text {
                    "finite" => false,
                    "omega" => true,
                    other => return Err(err(&toks[1], format!("unknown mode `{other}`"))),
                });
            }
            "initial:" | "relation:" => {
                arg_count(&[1])?;
                let slot = if head.text == "initial:" { &mut initial } else { &mut relation };
                if slot.is_some() {
                    return Err(err(&head, format!("duplicate key `{}`", head.text)));
                }
                *slot = Some(PathBuf::from(toks[1].text));
            }
            "cop" => {
                arg_count(&[2])?;
                cops.push((fresh(&toks[1])?, PathBuf::from(toks[2].text)));
            }
            "lep" => {
                arg_count(&[2, 3])?;
                leps.push(LepDecl {
                    name: fresh(&toks[1])?,
                    file: PathBuf::from(toks[2].text),
                    complement: toks.get(3).map(|t| PathBuf::from(t.text)),
                });
            }
            "property" => {
                arg_count(&[3])?;
                let name = fresh(&toks[1])?;
                let kind = PropertyKind::parse(toks[2].text)
                    .ok_or_else(|| err(&toks[2], format!("unknown property kind `{}`", toks[2].text)))?;
                properties.push(PropertyDecl {
                    name,
                    kind,
                    file: PathBuf::from(toks[3].text),
                });
            }
            other => return Err(err(&head, format!("unknown key `{other}`"))),
        }
    }
    let missing = |k: &str| parse_error(file, 1, 1, format!("missing key `{k}`"));
    Ok(SystemFile {
        omega: mode.ok_or_else(|| missing("mode:"))?,
        initial: initial.ok_or_else(|| missing("initial:"))?,
        relation: relation.ok_or_else(|| missing("relation:"))?,
        cops,
        leps,
        properties,
    })
}

pub fn serialize_system(s: &SystemFile) -> String {
    let p = |x: &PathBuf| x.display().to_string();
    let mut out = String::new();
    let _ = writeln!(out, "mode: {}", if s.omega { "omega" } else { "finite" });
    let _ = writeln!(out, "initial: {}", p(&s.initial));
    let _ = writeln!(out, "relation: {}", p(&s.relation));
    for (name, file) in &s.cops {
        let _ = writeln!(out, "cop {name} {}", p(file));
    }
    for l in &s.leps {
        match &l.complement {
            Some(c) => writeln!(out, "lep {} {} {}", l.name, p(&l.file), p(c)),
            None => writeln!(out, "lep {} {}", l.name, p(&l.file)),
        }
        .expect("writing to a string");
    }
    for d in &s.properties {
        let _ = writeln!(out, "property {} {} {}", d.name, d.kind.as_str(), p(&d.file));
    }
    out
}
