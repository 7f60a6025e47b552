//! Finite orthomodular lattices.
//!
//! A [`FiniteOml`] is built once from a [`RawLatticeSpec`] by [`validate`]
//! and is immutable afterwards. The order is kept as a dense `n × n` matrix
//! and the meet/join tables are filled at validation time, so every lattice
//! operation is a table lookup.

mod dot;
mod generators;
mod validate;

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use generators::{boolean, hexagon_o6, horizontal_sum, mo, product};
pub use validate::{validate, validate_with_limit};

use crate::order_sets::FinitePoset;

/// Largest lattice accepted by [`validate`] unless a different limit is passed.
pub const DEFAULT_MAX_ELEMENTS: usize = 256;

/// Largest boolean rank produced by [`boolean`] (2^5 = 32 elements).
pub const DEFAULT_MAX_BOOLEAN_RANK: usize = 5;

/// Dense index of an element inside one [`FiniteOml`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ElementId(u32);

impl ElementId {
    pub const fn new(index: usize) -> Self {
        ElementId(index as u32)
    }

    pub const fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for ElementId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OrderKind {
    /// `pairs` lists cover relations; the order is their reflexive-transitive closure.
    Covers,
    /// `pairs` lists the full order (reflexive pairs may be omitted).
    Full,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrderSpec {
    pub kind: OrderKind,
    /// `[i, j]` means element `i` lies below element `j`.
    pub pairs: Vec<[usize; 2]>,
}

/// Interchange form of a lattice, as read from or written to JSON.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawLatticeSpec {
    pub elements: Vec<String>,
    pub order: OrderSpec,
    /// Orthocomplement by name. One direction per pair is enough.
    pub ortho: BTreeMap<String, String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("lattice has no elements")]
    Empty,
    #[error("duplicate element name `{0}`")]
    DuplicateName(String),
    #[error("unknown element name `{0}`")]
    UnknownName(String),
    #[error("order pair references index {0}, out of range")]
    IndexOutOfRange(usize),
    #[error("{n} elements exceeds the limit of {max}")]
    SizeLimit { n: usize, max: usize },
    #[error("not a poset: {reason} (witness `{a}`, `{b}`)")]
    NotAPoset { a: String, b: String, reason: &'static str },
    #[error("not a lattice: `{a}` and `{b}` have no {op}")]
    NotALattice { a: String, b: String, op: &'static str },
    #[error("not an ortholattice: {reason} (witness `{a}`, `{b}`)")]
    NotAnOrtholattice { a: String, b: String, reason: &'static str },
    #[error("not orthomodular: `{a}` <= `{b}` but `{b}` != `{a}` v (`{b}` ^ `{a}`')")]
    NotOrthomodular { a: String, b: String },
}

impl LatticeError {
    /// The pair of element names witnessing a structural failure, if any.
    pub fn witness(&self) -> Option<(&str, &str)> {
        match self {
            LatticeError::NotAPoset { a, b, .. }
            | LatticeError::NotALattice { a, b, .. }
            | LatticeError::NotAnOrtholattice { a, b, .. }
            | LatticeError::NotOrthomodular { a, b } => Some((a, b)),
            _ => None,
        }
    }

    /// Short machine-readable tag.
    pub fn kind(&self) -> &'static str {
        match self {
            LatticeError::Empty => "empty",
            LatticeError::DuplicateName(_) => "duplicate_name",
            LatticeError::UnknownName(_) => "unknown_name",
            LatticeError::IndexOutOfRange(_) => "index_out_of_range",
            LatticeError::SizeLimit { .. } => "size_limit",
            LatticeError::NotAPoset { .. } => "not_a_poset",
            LatticeError::NotALattice { .. } => "not_a_lattice",
            LatticeError::NotAnOrtholattice { .. } => "not_an_ortholattice",
            LatticeError::NotOrthomodular { .. } => "not_orthomodular",
        }
    }
}

/// A validated finite orthomodular lattice.
#[derive(Clone, Debug)]
pub struct FiniteOml {
    names: Vec<String>,
    leq: Vec<bool>,
    ortho: Vec<ElementId>,
    meet: Vec<ElementId>,
    join: Vec<ElementId>,
    bottom: ElementId,
    top: ElementId,
    atoms: Vec<ElementId>,
    is_atom: Vec<bool>,
}

impl FiniteOml {
    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn elements(&self) -> impl DoubleEndedIterator<Item = ElementId> + ExactSizeIterator {
        (0..self.len()).map(ElementId::new)
    }

    pub fn name(&self, x: ElementId) -> &str {
        &self.names[x.index()]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn find(&self, name: &str) -> Option<ElementId> {
        self.names.iter().position(|n| n == name).map(ElementId::new)
    }

    pub fn bottom(&self) -> ElementId {
        self.bottom
    }

    pub fn top(&self) -> ElementId {
        self.top
    }

    /// Atoms in increasing index order.
    pub fn atoms(&self) -> &[ElementId] {
        &self.atoms
    }

    pub fn is_atom(&self, x: ElementId) -> bool {
        self.is_atom[x.index()]
    }

    #[inline]
    pub fn leq(&self, a: ElementId, b: ElementId) -> bool {
        self.leq[a.index() * self.len() + b.index()]
    }

    #[inline]
    pub fn lt(&self, a: ElementId, b: ElementId) -> bool {
        a != b && self.leq(a, b)
    }

    #[inline]
    pub fn meet(&self, a: ElementId, b: ElementId) -> ElementId {
        self.meet[a.index() * self.len() + b.index()]
    }

    #[inline]
    pub fn join(&self, a: ElementId, b: ElementId) -> ElementId {
        self.join[a.index() * self.len() + b.index()]
    }

    #[inline]
    pub fn ortho(&self, a: ElementId) -> ElementId {
        self.ortho[a.index()]
    }

    /// Sasaki projection of `a` onto `b`: `b ∧ (a ∨ b⊥)`.
    #[inline]
    pub fn sasaki(&self, a: ElementId, b: ElementId) -> ElementId {
        self.meet(b, self.join(a, self.ortho(b)))
    }

    pub fn atoms_below(&self, x: ElementId) -> Vec<ElementId> {
        self.atoms.iter().copied().filter(|&a| self.leq(a, x)).collect()
    }

    /// Elements `y` with `y ≤ x`, in index order.
    pub fn down(&self, x: ElementId) -> Vec<ElementId> {
        self.elements().filter(|&y| self.leq(y, x)).collect()
    }

    /// Elements `y` with `x ≤ y`, in index order.
    pub fn up(&self, x: ElementId) -> Vec<ElementId> {
        self.elements().filter(|&y| self.leq(x, y)).collect()
    }

    /// True iff every element above `⊥` has an atom below it.
    pub fn is_atomic(&self) -> bool {
        self.elements().filter(|&x| x != self.bottom).all(|x| self.atoms.iter().any(|&a| self.leq(a, x)))
    }

    /// First `(atom, b)` whose Sasaki projection is neither `⊥` nor an atom.
    pub fn atom_projection_violation(&self) -> Option<(ElementId, ElementId)> {
        self.atoms.iter().copied().find_map(|a| {
            self.elements()
                .find(|&b| {
                    let p = self.sasaki(a, b);
                    p != self.bottom && !self.is_atom(p)
                })
                .map(|b| (a, b))
        })
    }

    pub fn has_atom_projection(&self) -> bool {
        self.atom_projection_violation().is_none()
    }

    /// Cover pairs `(lo, hi)` of the Hasse diagram, sorted.
    pub fn covers(&self) -> Vec<(ElementId, ElementId)> {
        let mut out = Vec::new();
        for lo in self.elements() {
            for hi in self.elements() {
                if self.lt(lo, hi) && !self.elements().any(|z| self.lt(lo, z) && self.lt(z, hi)) {
                    out.push((lo, hi));
                }
            }
        }
        out
    }

    /// Underlying poset with `⊥` as least element.
    pub fn poset(&self) -> FinitePoset {
        FinitePoset::from_validated_matrix(self.len(), self.leq.clone(), self.bottom.index())
    }

    /// Interchange form using cover pairs.
    pub fn to_raw(&self) -> RawLatticeSpec {
        let pairs = self.covers().into_iter().map(|(lo, hi)| [lo.index(), hi.index()]).collect();
        let mut ortho = BTreeMap::new();
        for x in self.elements() {
            let y = self.ortho(x);
            if x <= y {
                ortho.insert(self.name(x).to_owned(), self.name(y).to_owned());
            }
        }
        RawLatticeSpec { elements: self.names.clone(), order: OrderSpec { kind: OrderKind::Covers, pairs }, ortho }
    }

    pub fn to_dot(&self) -> String {
        dot::hasse_dot(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::order_sets::Poset;

    fn id(l: &FiniteOml, name: &str) -> ElementId {
        l.find(name).unwrap()
    }

    #[test]
    fn two_chain_is_valid() {
        let l = boolean(1).unwrap();
        assert_eq!(l.len(), 2);
        assert_eq!(l.ortho(l.bottom()), l.top());
        assert_eq!(l.atoms(), &[l.top()]);
    }

    #[test]
    fn b2_basics() {
        let l = boolean(2).unwrap();
        assert_eq!(l.len(), 4);
        assert_eq!(l.atoms().len(), 2);
        let (p, q) = (id(&l, "a"), id(&l, "b"));
        assert_eq!(l.join(p, q), l.top());
        assert_eq!(l.meet(p, q), l.bottom());
        assert_eq!(l.ortho(p), q);
    }

    #[test]
    fn table_identities() {
        for l in [boolean(3).unwrap(), mo(3).unwrap()] {
            for x in l.elements() {
                assert_eq!(l.meet(x, l.top()), x);
                assert_eq!(l.join(x, l.bottom()), x);
                assert_eq!(l.ortho(l.ortho(x)), x);
                assert_eq!(l.sasaki(x, l.top()), x);
            }
        }
    }

    #[test]
    fn sasaki_is_meet_in_boolean_algebras() {
        let l = boolean(3).unwrap();
        for a in l.elements() {
            for b in l.elements() {
                assert_eq!(l.sasaki(a, b), l.meet(a, b));
            }
        }
    }

    #[test]
    fn sasaki_between_non_orthogonal_atoms_of_mo2() {
        let l = mo(2).unwrap();
        let (a, b) = (id(&l, "a1"), id(&l, "a2"));
        // a ∨ b⊥ = ⊤, so the projection is b itself.
        assert_eq!(l.join(a, l.ortho(b)), l.top());
        assert_eq!(l.sasaki(a, b), b);
        assert_eq!(l.sasaki(a, l.ortho(a)), l.bottom());
    }

    #[test]
    fn atoms_below_cases() {
        let l = boolean(3).unwrap();
        assert!(l.atoms_below(l.bottom()).is_empty());
        for &a in l.atoms() {
            assert_eq!(l.atoms_below(a), vec![a]);
        }
        let pq = l.join(id(&l, "a"), id(&l, "b"));
        assert_eq!(l.atoms_below(pq), vec![id(&l, "a"), id(&l, "b")]);
    }

    #[test]
    fn structural_predicates() {
        for l in [
            boolean(3).unwrap(),
            mo(2).unwrap(),
            mo(4).unwrap(),
            product(&boolean(2).unwrap(), &boolean(2).unwrap()).unwrap(),
        ] {
            assert!(l.is_atomic());
            assert!(l.has_atom_projection());
        }
    }

    #[test]
    fn raw_round_trip() {
        let l = mo(3).unwrap();
        let again = validate(&l.to_raw()).unwrap();
        assert_eq!(again.names(), l.names());
        for a in l.elements() {
            assert_eq!(again.ortho(a), l.ortho(a));
            for b in l.elements() {
                assert_eq!(again.leq(a, b), l.leq(a, b));
            }
        }
    }

    #[test]
    fn poset_view_agrees() {
        let l = mo(2).unwrap();
        let p = l.poset();
        assert_eq!(p.bottom(), l.bottom().index());
        assert_eq!(p.atoms().len(), 4);
    }
}
