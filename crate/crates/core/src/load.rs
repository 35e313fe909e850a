//! Loading a system file and the automata it references.

use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::format::{parse_system, read_aut, AutValue, PropertyKind, SystemFile};
use crate::gsp::{NegatedGsp, StateProperty};
use crate::losp::{LocalExecutionProperty, Losp};
use crate::nfa::Nfa;
use crate::omega::Buchi;
use crate::system::{FiniteSystem, OmegaSystem, RegularSystem};

#[derive(Clone, Debug)]
pub enum AnySystem {
    Finite(FiniteSystem),
    Omega(OmegaSystem),
}

/// A resolved property.
#[derive(Clone, Debug)]
pub enum Property {
    BadFinite(Nfa),
    BadOmega(Buchi),
    NegGsp(NegatedGsp),
    NegLosp(Losp),
}

/// A system file with every referenced automaton loaded and validated.
/// Finite-word automata given nondeterministically (initial states, state
/// properties) are determinized on load.
#[derive(Clone, Debug)]
pub struct LoadedSystem {
    pub path: PathBuf,
    pub file: SystemFile,
    pub system: AnySystem,
    pub cops_finite: Vec<StateProperty<Nfa>>,
    pub cops_omega: Vec<StateProperty<Buchi>>,
    pub leps: Vec<LocalExecutionProperty>,
}

fn determinized(a: Nfa) -> Nfa {
    if a.is_deterministic() {
        a
    } else {
        a.canonical()
    }
}

impl LoadedSystem {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        let file = parse_system(&text, &path.display().to_string())?;
        let dir = path.parent().map(Path::to_path_buf).unwrap_or_default();
        let at = |p: &Path| dir.join(p);
        let initial = read_aut(&at(&file.initial))?;
        let relation = read_aut(&at(&file.relation))?;
        let mut out = LoadedSystem {
            path: path.to_path_buf(),
            system: if file.omega {
                AnySystem::Omega(RegularSystem::new(
                    initial.into_buchi()?,
                    relation.into_omega_transducer()?,
                )?)
            } else {
                AnySystem::Finite(RegularSystem::new(
                    determinized(initial.into_nfa()?),
                    relation.into_transducer()?,
                )?)
            },
            cops_finite: Vec::new(),
            cops_omega: Vec::new(),
            leps: Vec::new(),
            file: file.clone(),
        };
        for (name, p) in &file.cops {
            let a = read_aut(&at(p))?;
            if file.omega {
                out.cops_omega.push(StateProperty::new(name.clone(), a.into_buchi()?)?);
            } else {
                out.cops_finite.push(StateProperty::new(name.clone(), determinized(a.into_nfa()?))?);
            }
        }
        for l in &file.leps {
            let a = read_aut(&at(&l.file))?.into_buchi()?;
            let c = match &l.complement {
                Some(p) => Some(read_aut(&at(p))?.into_buchi()?),
                None => None,
            };
            out.leps.push(LocalExecutionProperty::new(l.name.clone(), a, c)?);
        }
        Ok(out)
    }

    pub fn num_cops(&self) -> usize {
        self.file.cops.len()
    }

    /// Resolves `selector` (a declared property name or an automaton file
    /// path) to a property of one of the `wanted` kinds; without selector,
    /// the first declared property of a wanted kind. Files given by path
    /// are read as the first wanted kind.
    pub fn property(&self, selector: Option<&str>, wanted: &[PropertyKind]) -> Result<(String, Property)> {
        let dir = self.path.parent().map(Path::to_path_buf).unwrap_or_default();
        let declared = self.file.properties.iter().find(|d| match selector {
            Some(s) => d.name == s,
            None => wanted.contains(&d.kind),
        });
        let (name, kind, path) = match (declared, selector) {
            (Some(d), _) => {
                if !wanted.contains(&d.kind) {
                    return Err(Error::input(format!(
                        "property `{}` has kind {}, this command needs {}",
                        d.name,
                        d.kind.as_str(),
                        wanted.iter().map(|k| k.as_str()).collect::<Vec<_>>().join(" or ")
                    )));
                }
                (d.name.clone(), d.kind, dir.join(&d.file))
            }
            (None, Some(s)) => (s.to_string(), wanted[0], PathBuf::from(s)),
            (None, None) => {
                return Err(Error::input(format!(
                    "no property of kind {} declared",
                    wanted.iter().map(|k| k.as_str()).collect::<Vec<_>>().join(" or ")
                )))
            }
        };
        let aut = read_aut(&path)?;
        let property = match kind {
            PropertyKind::ReachBad => match (&self.system, aut.value) {
                (AnySystem::Finite(_), AutValue::Finite(a)) => Property::BadFinite(a),
                (AnySystem::Omega(_), AutValue::Omega(a)) => Property::BadOmega(a),
                _ => return Err(Error::ModeMismatch(format!("bad-state automaton `{name}` and system"))),
            },
            PropertyKind::GspNegated => Property::NegGsp(NegatedGsp::new(aut.into_buchi()?, self.num_cops())?),
            PropertyKind::Gsp => Property::NegGsp(NegatedGsp::from_gsp(&aut.into_buchi()?, self.num_cops())?),
            PropertyKind::LospNegated => Property::NegLosp(Losp::new(aut.into_nfa()?, self.leps.len())?),
            PropertyKind::Losp => Property::NegLosp(Losp::from_losp(&aut.into_nfa()?, self.leps.len())?),
        };
        Ok((name, property))
    }
}
