//! The increasing relation sequences `R_0 ⊆ R_1 ⊆ …` and their fixpoints.

use rayon::prelude::*;

use super::{TopologyError, ATOM_FAMILY_MAX, GENERAL_FAMILY_MAX};
use crate::lattice::{ElementId, FiniteOml};
use crate::order_sets::{closure_negneg, is_lower_set, LowerSet, Poset, SmashedPoset};

/// Checks the standing hypotheses of the atom-based families.
pub fn check_atomic_hypotheses(l: &FiniteOml) -> Result<(), TopologyError> {
    if !l.is_atomic() {
        return Err(TopologyError::NotAtomic);
    }
    if let Some((a, b)) = l.atom_projection_violation() {
        return Err(TopologyError::NoAtomProjection { atom: l.name(a).to_owned(), element: l.name(b).to_owned() });
    }
    Ok(())
}

fn up_lists(l: &FiniteOml) -> Vec<Vec<ElementId>> {
    l.elements().map(|x| l.up(x)).collect()
}

/// Relations on pairs of atoms:
/// `R_0 = {(a, b) : a ≤ b⊥}` and
/// `R_{k+1} = {(a, b) : ∃ (a', b') ≥ (a, b), (a & b', b & a') ∈ R_k}`.
#[derive(Clone, Debug)]
pub struct AtomProfile {
    atoms: Vec<ElementId>,
    position: Vec<Option<usize>>,
    relations: Vec<Vec<bool>>,
    stabilization: usize,
}

impl AtomProfile {
    pub fn compute(l: &FiniteOml) -> Result<Self, TopologyError> {
        if l.len() > ATOM_FAMILY_MAX {
            return Err(TopologyError::SizeLimit { n: l.len(), max: ATOM_FAMILY_MAX });
        }
        check_atomic_hypotheses(l)?;
        let atoms = l.atoms().to_vec();
        let k = atoms.len();
        let mut position = vec![None; l.len()];
        for (i, a) in atoms.iter().enumerate() {
            position[a.index()] = Some(i);
        }
        let up = up_lists(l);

        let r0: Vec<bool> =
            atoms.iter().flat_map(|&a| atoms.iter().map(move |&b| (a, b))).map(|(a, b)| l.leq(a, l.ortho(b))).collect();
        let mut relations = vec![r0];
        loop {
            let prev = relations.last().expect("nonempty");
            let next: Vec<bool> = (0..k * k)
                .into_par_iter()
                .map(|p| {
                    let (a, b) = (atoms[p / k], atoms[p % k]);
                    up[a.index()].iter().any(|&a2| {
                        up[b.index()].iter().any(|&b2| {
                            match (position[l.sasaki(a, b2).index()], position[l.sasaki(b, a2).index()]) {
                                (Some(x), Some(y)) => prev[x * k + y],
                                _ => false,
                            }
                        })
                    })
                })
                .collect();
            if &next == prev {
                break;
            }
            relations.push(next);
        }
        let stabilization = relations.len() - 1;
        Ok(AtomProfile { atoms, position, relations, stabilization })
    }

    /// First index `n*` with `R_{n*+1} = R_{n*}`.
    pub fn stabilization(&self) -> usize {
        self.stabilization
    }

    pub fn atoms(&self) -> &[ElementId] {
        &self.atoms
    }

    /// `(a, b) ∈ R_n`; indices past the fixpoint read `R_{n*}`. Non-atoms are never members.
    pub fn contains(&self, n: usize, a: ElementId, b: ElementId) -> bool {
        let k = self.atoms.len();
        match (self.position[a.index()], self.position[b.index()]) {
            (Some(i), Some(j)) => self.relations[n.min(self.stabilization)][i * k + j],
            _ => false,
        }
    }

    /// `(a, b) ∈ R_∞`.
    pub fn contains_limit(&self, a: ElementId, b: ElementId) -> bool {
        self.contains(self.stabilization, a, b)
    }

    pub fn pairs(&self, n: usize) -> Vec<(ElementId, ElementId)> {
        let k = self.atoms.len();
        let rel = &self.relations[n.min(self.stabilization)];
        (0..k * k).filter(|&p| rel[p]).map(|p| (self.atoms[p / k], self.atoms[p % k])).collect()
    }
}

/// Relations on the smashed square `L^{#2}`:
/// `R_0 = ¬¬{(a, b) : a ≤ b⊥}` and
/// `R_{k+1} = ¬¬{(a, b) : ∃ (a', b') ≥ (a, b), (a & b', b & a') ∈ R_k}`.
///
/// A projected pair with exactly one `⊥` coordinate is read as `(⊥, ⊥)`,
/// the smashed identification. Such pairs only arise when `a ≤ b⊥`, where
/// `(a, b)` already qualifies through `(a', b') = (⊤, ⊤)`.
#[derive(Clone, Debug)]
pub struct GeneralProfile {
    smashed: SmashedPoset,
    relations: Vec<LowerSet>,
    stabilization: usize,
}

impl GeneralProfile {
    pub fn compute(l: &FiniteOml) -> Result<Self, TopologyError> {
        if l.len() > GENERAL_FAMILY_MAX {
            return Err(TopologyError::SizeLimit { n: l.len(), max: GENERAL_FAMILY_MAX });
        }
        let smashed = SmashedPoset::new(&l.poset());
        let up = up_lists(l);
        let id = ElementId::new;

        let seed: Vec<bool> = smashed.pairs().iter().map(|&(a, b)| l.leq(id(a), l.ortho(id(b)))).collect();
        let mut relations = vec![close(&smashed, seed)];
        loop {
            let prev = relations.last().expect("nonempty");
            let pre: Vec<bool> = smashed
                .pairs()
                .par_iter()
                .map(|&(a, b)| {
                    let (a, b) = (id(a), id(b));
                    up[a.index()].iter().any(|&a2| {
                        up[b.index()].iter().any(|&b2| {
                            let p = smashed.collapse(l.sasaki(a, b2).index(), l.sasaki(b, a2).index());
                            prev.contains(p)
                        })
                    })
                })
                .collect();
            let next = close(&smashed, pre);
            if &next == prev {
                break;
            }
            relations.push(next);
        }
        let stabilization = relations.len() - 1;
        Ok(GeneralProfile { smashed, relations, stabilization })
    }

    pub fn stabilization(&self) -> usize {
        self.stabilization
    }

    pub fn smashed(&self) -> &SmashedPoset {
        &self.smashed
    }

    /// `R_n` as a lower set of the smashed square; indices past the fixpoint read `R_{n*}`.
    pub fn relation(&self, n: usize) -> &LowerSet {
        &self.relations[n.min(self.stabilization)]
    }

    /// `R_∞ = R_{n*}`.
    pub fn limit(&self) -> &LowerSet {
        &self.relations[self.stabilization]
    }

    /// `(a, b) ∈ R_n`. Pairs outside `L^{#2}` are never members.
    pub fn contains(&self, n: usize, a: ElementId, b: ElementId) -> bool {
        self.smashed.index_of(a.index(), b.index()).is_some_and(|p| self.relation(n).contains(p))
    }

    pub fn pairs(&self, n: usize) -> Vec<(ElementId, ElementId)> {
        self.relation(n)
            .iter()
            .map(|p| {
                let (a, b) = self.smashed.pair(p);
                (ElementId::new(a), ElementId::new(b))
            })
            .collect()
    }
}

fn close(smashed: &SmashedPoset, pre: Vec<bool>) -> LowerSet {
    assert!(is_lower_set(smashed, &pre), "pre-closure relation is not a lower set of the smashed square");
    closure_negneg(smashed, &LowerSet::from_mask_unchecked(pre))
}

/// Sanity view used by reports: pairs of `R_n` restricted to atoms of `L^{#2}`.
pub fn general_on_atoms(profile: &GeneralProfile, n: usize) -> Vec<(ElementId, ElementId)> {
    let smashed = profile.smashed();
    smashed
        .atoms()
        .into_iter()
        .filter(|&p| profile.relation(n).contains(p))
        .map(|p| {
            let (a, b) = smashed.pair(p);
            (ElementId::new(a), ElementId::new(b))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{boolean, horizontal_sum, mo, product};

    fn sorted(mut v: Vec<(ElementId, ElementId)>) -> Vec<(ElementId, ElementId)> {
        v.sort();
        v
    }

    #[test]
    fn b3_atom_profile_is_distinct_atom_pairs() {
        let l = boolean(3).unwrap();
        let p = AtomProfile::compute(&l).unwrap();
        assert_eq!(p.stabilization(), 0);
        let atoms = l.atoms();
        let want: Vec<_> =
            atoms.iter().flat_map(|&a| atoms.iter().map(move |&b| (a, b))).filter(|(a, b)| a != b).collect();
        assert_eq!(sorted(p.pairs(0)), sorted(want));
    }

    #[test]
    fn mo2_atom_profile_is_orthogonal_pairs() {
        let l = mo(2).unwrap();
        let p = AtomProfile::compute(&l).unwrap();
        let id = |s| l.find(s).unwrap();
        let want = vec![(id("a1"), id("a1'")), (id("a1'"), id("a1")), (id("a2"), id("a2'")), (id("a2'"), id("a2"))];
        assert_eq!(sorted(p.pairs(0)), sorted(want.clone()));
        assert_eq!(sorted(p.pairs(1)), sorted(want));
        assert_eq!(p.stabilization(), 0);
    }

    #[test]
    fn atom_relation_is_irreflexive_symmetric_increasing() {
        for l in [boolean(3).unwrap(), mo(3).unwrap(), product(&boolean(2).unwrap(), &mo(2).unwrap()).unwrap()] {
            let p = AtomProfile::compute(&l).unwrap();
            for n in 0..=p.stabilization() + 1 {
                for &a in l.atoms() {
                    assert!(!p.contains(n, a, a));
                    for &b in l.atoms() {
                        assert_eq!(p.contains(n, a, b), p.contains(n, b, a));
                        if p.contains(n, a, b) {
                            assert!(p.contains(n + 1, a, b));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn b3_general_r0_is_disjoint_atom_pairs() {
        let l = boolean(3).unwrap();
        let p = GeneralProfile::compute(&l).unwrap();
        assert_eq!(p.stabilization(), 0);
        for (i, &(a, b)) in p.smashed().pairs().iter().enumerate() {
            let (a, b) = (ElementId::new(a), ElementId::new(b));
            let disjoint = l.atoms_below(a).iter().all(|x| !l.atoms_below(b).contains(x));
            assert_eq!(p.relation(0).contains(i), disjoint, "({a}, {b})");
            assert_eq!(p.relation(1), p.relation(0));
        }
    }

    #[test]
    fn bottom_pair_always_in_r0() {
        for l in [boolean(1).unwrap(), mo(2).unwrap()] {
            let p = GeneralProfile::compute(&l).unwrap();
            assert!(p.contains(0, l.bottom(), l.bottom()));
        }
    }

    #[test]
    fn two_chain_general_profile() {
        // Smashed square is {(0,0), (1,1)}; 1 ≤ 1⊥ = 0 fails, so R_0 = {(0,0)}.
        let l = boolean(1).unwrap();
        let p = GeneralProfile::compute(&l).unwrap();
        assert_eq!(p.stabilization(), 0);
        assert_eq!(p.pairs(0), vec![(l.bottom(), l.bottom())]);
    }

    #[test]
    fn atom_projection_fails_on_mixed_horizontal_sum() {
        // In B3 ⊕ B2 an atom of the B2 block projects onto a coatom of the B3 block.
        let l = horizontal_sum(&boolean(3).unwrap(), &boolean(2).unwrap()).unwrap();
        assert!(l.is_atomic());
        assert!(matches!(AtomProfile::compute(&l), Err(TopologyError::NoAtomProjection { .. })));
        assert!(GeneralProfile::compute(&l).is_ok());
    }

    #[test]
    fn general_family_size_cap() {
        let l = mo(32).unwrap();
        assert_eq!(l.len(), 66);
        assert!(matches!(GeneralProfile::compute(&l), Err(TopologyError::SizeLimit { n: 66, max: 64 })));
        assert!(AtomProfile::compute(&l).is_ok());
    }
}
