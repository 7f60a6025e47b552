//! Neighbourhood balls and the induced topologies on a finite OML.
//!
//! Three families are supported:
//!
//! * [`Family::Atom`]: balls `B^At_n(a) = {b : (a, b) ∈ R^At_∞ \ R^At_n}` on atoms;
//! * [`Family::Lattice`]: balls on all of `L` lifted from the atom balls
//!   through `At(a)` and `At(b)`;
//! * [`Family::General`]: balls built from the lower-set relations on the
//!   smashed square, with no reference to atoms.
//!
//! A set `O` is open when every `a ∈ O` has some `n` with `B_n(a) ⊆ O`.
//! Balls decrease in `n` and are constant from the fixpoint index `n*` on,
//! so the search over `n` stops at `n* + 1`.

mod balls;
mod profile;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use balls::{ball_at, ball_general, ball_lattice};
pub use profile::{check_atomic_hypotheses, general_on_atoms, AtomProfile, GeneralProfile};

use crate::lattice::{ElementId, FiniteOml};

/// Largest lattice for which the smashed-square relations are computed.
pub const GENERAL_FAMILY_MAX: usize = 64;
/// Largest lattice for which the atom relations are computed.
pub const ATOM_FAMILY_MAX: usize = 128;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    #[serde(rename = "at")]
    Atom,
    Lattice,
    General,
}

impl Family {
    pub fn as_str(self) -> &'static str {
        match self {
            Family::Atom => "at",
            Family::Lattice => "lattice",
            Family::General => "general",
        }
    }
}

impl std::str::FromStr for Family {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "at" | "atom" => Ok(Family::Atom),
            "lattice" => Ok(Family::Lattice),
            "general" => Ok(Family::General),
            other => Err(format!("unknown family `{other}` (expected at, lattice or general)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TopologyError {
    #[error("lattice is not atomic")]
    NotAtomic,
    #[error("atom projection fails: `{atom}` & `{element}` is neither bottom nor an atom")]
    NoAtomProjection { atom: String, element: String },
    #[error("`{0}` is not an atom")]
    NotAnAtom(String),
    #[error("{n} elements exceeds the limit of {max} for this family")]
    SizeLimit { n: usize, max: usize },
}

impl TopologyError {
    pub fn kind(&self) -> &'static str {
        match self {
            TopologyError::NotAtomic => "not_atomic",
            TopologyError::NoAtomProjection { .. } => "no_atom_projection",
            TopologyError::NotAnAtom(_) => "not_an_atom",
            TopologyError::SizeLimit { .. } => "size_limit",
        }
    }
}

#[derive(Clone, Debug)]
enum Profiles {
    Atom(AtomProfile),
    General(GeneralProfile),
}

/// All balls of one family, tabulated for `n = 0 ..= n* + 1`.
#[derive(Clone, Debug)]
pub struct Topology<'l> {
    lattice: &'l FiniteOml,
    family: Family,
    profiles: Profiles,
    stabilization: usize,
    carrier: Vec<bool>,
    // balls[n][a * len + b] is b ∈ B_n(a)
    balls: Vec<Vec<bool>>,
}

impl<'l> Topology<'l> {
    pub fn new(lattice: &'l FiniteOml, family: Family) -> Result<Self, TopologyError> {
        let len = lattice.len();
        let (profiles, stabilization) = match family {
            Family::Atom | Family::Lattice => {
                let p = AtomProfile::compute(lattice)?;
                let s = p.stabilization();
                (Profiles::Atom(p), s)
            }
            Family::General => {
                let p = GeneralProfile::compute(lattice)?;
                let s = p.stabilization();
                (Profiles::General(p), s)
            }
        };
        let carrier: Vec<bool> = match family {
            Family::Atom => lattice.elements().map(|x| lattice.is_atom(x)).collect(),
            _ => vec![true; len],
        };
        let balls = (0..=stabilization + 1)
            .map(|n| match (&profiles, family) {
                (Profiles::Atom(p), Family::Atom) => balls::atom_table(lattice, p, n),
                (Profiles::Atom(p), _) => balls::lattice_table(lattice, p, n),
                (Profiles::General(p), _) => balls::general_table(lattice, p, n),
            })
            .collect();
        Ok(Topology { lattice, family, profiles, stabilization, carrier, balls })
    }

    pub fn atom(lattice: &'l FiniteOml) -> Result<Self, TopologyError> {
        Self::new(lattice, Family::Atom)
    }

    pub fn lattice_based(lattice: &'l FiniteOml) -> Result<Self, TopologyError> {
        Self::new(lattice, Family::Lattice)
    }

    pub fn general(lattice: &'l FiniteOml) -> Result<Self, TopologyError> {
        Self::new(lattice, Family::General)
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn lattice(&self) -> &'l FiniteOml {
        self.lattice
    }

    pub fn stabilization(&self) -> usize {
        self.stabilization
    }

    pub fn atom_profile(&self) -> Option<&AtomProfile> {
        match &self.profiles {
            Profiles::Atom(p) => Some(p),
            Profiles::General(_) => None,
        }
    }

    pub fn general_profile(&self) -> Option<&GeneralProfile> {
        match &self.profiles {
            Profiles::General(p) => Some(p),
            Profiles::Atom(_) => None,
        }
    }

    /// Elements the topology lives on: the atoms for [`Family::Atom`], all of `L` otherwise.
    pub fn carrier(&self) -> Vec<ElementId> {
        self.lattice.elements().filter(|x| self.carrier[x.index()]).collect()
    }

    pub fn in_carrier(&self, x: ElementId) -> bool {
        self.carrier[x.index()]
    }

    fn check_carrier(&self, x: ElementId) -> Result<(), TopologyError> {
        if self.in_carrier(x) {
            Ok(())
        } else {
            Err(TopologyError::NotAnAtom(self.lattice.name(x).to_owned()))
        }
    }

    fn row(&self, a: ElementId, n: usize) -> &[bool] {
        let len = self.lattice.len();
        let level = &self.balls[n.min(self.stabilization + 1)];
        &level[a.index() * len..(a.index() + 1) * len]
    }

    /// `B_n(a)` in index order.
    pub fn ball(&self, a: ElementId, n: usize) -> Result<Vec<ElementId>, TopologyError> {
        self.check_carrier(a)?;
        Ok(self.ball_unchecked(a, n))
    }

    fn ball_unchecked(&self, a: ElementId, n: usize) -> Vec<ElementId> {
        self.row(a, n).iter().enumerate().filter(|(_, &m)| m).map(|(b, _)| ElementId::new(b)).collect()
    }

    fn ball_within(&self, a: ElementId, n: usize, set: &[bool]) -> bool {
        self.row(a, n).iter().zip(set).all(|(&m, &s)| !m || s)
    }

    /// Membership of `subset` in the topology.
    pub fn is_open(&self, subset: &[ElementId]) -> Result<bool, TopologyError> {
        let mut mask = vec![false; self.lattice.len()];
        for &x in subset {
            self.check_carrier(x)?;
            mask[x.index()] = true;
        }
        Ok(subset.iter().all(|&a| (0..=self.stabilization + 1).any(|n| self.ball_within(a, n, &mask))))
    }

    /// Points whose singleton is open.
    pub fn isolated_points(&self) -> Vec<ElementId> {
        self.carrier()
            .into_iter()
            .filter(|&a| {
                let mut mask = vec![false; self.lattice.len()];
                mask[a.index()] = true;
                (0..=self.stabilization + 1).any(|n| self.ball_within(a, n, &mask))
            })
            .collect()
    }

    /// Smallest `n` with `B_n(a) = ∅`, if any.
    pub fn first_empty_ball(&self, a: ElementId) -> Option<usize> {
        (0..=self.stabilization + 1).find(|&n| self.row(a, n).iter().all(|&m| !m))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{boolean, mo};

    #[test]
    fn family_parsing() {
        assert_eq!("at".parse::<Family>().unwrap(), Family::Atom);
        assert_eq!("general".parse::<Family>().unwrap(), Family::General);
        assert!("nope".parse::<Family>().is_err());
        assert_eq!(serde_json::to_string(&Family::Atom).unwrap(), "\"at\"");
    }

    #[test]
    fn boolean_topology_is_discrete() {
        let l = boolean(3).unwrap();
        for family in [Family::Atom, Family::Lattice, Family::General] {
            let t = Topology::new(&l, family).unwrap();
            assert_eq!(t.isolated_points(), t.carrier(), "{family:?}");
        }
    }

    #[test]
    fn empty_and_full_sets_are_open() {
        let l = mo(2).unwrap();
        for family in [Family::Atom, Family::Lattice, Family::General] {
            let t = Topology::new(&l, family).unwrap();
            assert!(t.is_open(&[]).unwrap());
            assert!(t.is_open(&t.carrier()).unwrap());
        }
    }

    #[test]
    fn atom_family_rejects_non_atoms() {
        let l = mo(2).unwrap();
        let t = Topology::atom(&l).unwrap();
        assert_eq!(t.ball(l.top(), 0), Err(TopologyError::NotAnAtom("1".into())));
        assert!(t.is_open(&[l.top()]).is_err());
        assert!(t.ball(l.find("a1").unwrap(), 0).unwrap().is_empty());
    }

    #[test]
    fn bottom_ball_is_vacuously_bottom() {
        // Both clauses quantify over elements strictly above ⊥ below a = ⊥,
        // so they hold vacuously exactly when b has nothing above ⊥ either.
        let l = boolean(2).unwrap();
        for family in [Family::Lattice, Family::General] {
            let t = Topology::new(&l, family).unwrap();
            for n in 0..3 {
                assert_eq!(t.ball(l.bottom(), n).unwrap(), vec![l.bottom()]);
            }
            assert_eq!(t.first_empty_ball(l.bottom()), None);
        }
    }
}
