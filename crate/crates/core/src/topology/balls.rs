use super::{AtomProfile, GeneralProfile, TopologyError};
use crate::lattice::{ElementId, FiniteOml};
use crate::order_sets::complement_neg;

fn collect(row: Vec<bool>) -> Vec<ElementId> {
    row.into_iter().enumerate().filter(|(_, m)| *m).map(|(i, _)| ElementId::new(i)).collect()
}

/// `y ∈ B^At_n(x)`, i.e. `(x, y) ∈ R^At_∞ \ R^At_n`.
fn in_atom_ball(p: &AtomProfile, n: usize, x: ElementId, y: ElementId) -> bool {
    p.contains_limit(x, y) && !p.contains(n, x, y)
}

fn atom_row(l: &FiniteOml, p: &AtomProfile, a: ElementId, n: usize) -> Vec<bool> {
    l.elements().map(|b| l.is_atom(a) && l.is_atom(b) && in_atom_ball(p, n, a, b)).collect()
}

/// `B^At_n(a)`: atoms `b` with `(a, b) ∈ R^At_∞ \ R^At_n`.
pub fn ball_at(l: &FiniteOml, p: &AtomProfile, a: ElementId, n: usize) -> Result<Vec<ElementId>, TopologyError> {
    if !l.is_atom(a) {
        return Err(TopologyError::NotAnAtom(l.name(a).to_owned()));
    }
    Ok(collect(atom_row(l, p, a, n)))
}

pub(super) fn atom_table(l: &FiniteOml, p: &AtomProfile, n: usize) -> Vec<bool> {
    l.elements().flat_map(|a| atom_row(l, p, a, n)).collect()
}

fn lattice_row(l: &FiniteOml, p: &AtomProfile, atoms_of: &[Vec<ElementId>], a: ElementId, n: usize) -> Vec<bool> {
    let at_a = &atoms_of[a.index()];
    l.elements()
        .map(|b| {
            let at_b = &atoms_of[b.index()];
            at_a.iter().all(|&x| at_b.iter().any(|&y| in_atom_ball(p, n, x, y)))
                && at_b.iter().all(|&y| at_a.iter().any(|&x| in_atom_ball(p, n, y, x)))
        })
        .collect()
}

/// `B^L_n(a)`: elements `b` such that every atom of `a` has an atom of `b` in
/// its atom ball, and every atom of `b` has an atom of `a` in its atom ball.
pub fn ball_lattice(l: &FiniteOml, p: &AtomProfile, a: ElementId, n: usize) -> Vec<ElementId> {
    let atoms_of: Vec<_> = l.elements().map(|x| l.atoms_below(x)).collect();
    collect(lattice_row(l, p, &atoms_of, a, n))
}

pub(super) fn lattice_table(l: &FiniteOml, p: &AtomProfile, n: usize) -> Vec<bool> {
    let atoms_of: Vec<_> = l.elements().map(|x| l.atoms_below(x)).collect();
    l.elements().flat_map(|a| lattice_row(l, p, &atoms_of, a, n)).collect()
}

/// `reach[x * len + y]`: some `x'' ≤ x` and `y'' ≤ y`, both above `⊥`, have
/// `(x'', y'') ∈ R_∞ ∩ ¬R_n`.
struct Reach {
    len: usize,
    reach: Vec<bool>,
    nonzero_down: Vec<Vec<usize>>,
}

impl Reach {
    fn new(l: &FiniteOml, p: &GeneralProfile, n: usize) -> Self {
        let smashed = p.smashed();
        let target = p.limit().intersection(&complement_neg(smashed, p.relation(n)));
        let len = l.len();
        let bottom = l.bottom().index();
        let nonzero_down: Vec<Vec<usize>> = l
            .elements()
            .map(|x| l.down(x).into_iter().map(ElementId::index).filter(|&y| y != bottom).collect())
            .collect();
        let mut reach = vec![false; len * len];
        for x in 0..len {
            for y in 0..len {
                reach[x * len + y] = nonzero_down[x].iter().any(|&x2| {
                    nonzero_down[y].iter().any(|&y2| smashed.index_of(x2, y2).is_some_and(|q| target.contains(q)))
                });
            }
        }
        Reach { len, reach, nonzero_down }
    }

    fn get(&self, x: usize, y: usize) -> bool {
        self.reach[x * self.len + y]
    }

    /// `∀a' ≤_{⊥̸} a ∃a'' ≤_{⊥̸} a' ∃b' ≤_{⊥̸} b: (a'', b') ∈ R_∞ ∩ ¬R_n`
    /// together with the mirrored clause over `b`.
    fn row(&self, a: usize) -> Vec<bool> {
        (0..self.len)
            .map(|b| {
                self.nonzero_down[a].iter().all(|&a2| self.get(a2, b))
                    && self.nonzero_down[b].iter().all(|&b2| self.get(a, b2))
            })
            .collect()
    }
}

/// `B_n(a)` of the atom-free construction on the smashed square.
pub fn ball_general(l: &FiniteOml, p: &GeneralProfile, a: ElementId, n: usize) -> Vec<ElementId> {
    collect(Reach::new(l, p, n).row(a.index()))
}

pub(super) fn general_table(l: &FiniteOml, p: &GeneralProfile, n: usize) -> Vec<bool> {
    let reach = Reach::new(l, p, n);
    (0..l.len()).flat_map(|a| reach.row(a)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{boolean, mo, product};

    #[test]
    fn mo2_balls_are_empty() {
        let l = mo(2).unwrap();
        let p = AtomProfile::compute(&l).unwrap();
        for &a in l.atoms() {
            assert!(ball_at(&l, &p, a, 0).unwrap().is_empty());
        }
        let g = GeneralProfile::compute(&l).unwrap();
        for a in l.elements().filter(|&a| a != l.bottom()) {
            assert!(ball_lattice(&l, &p, a, 0).is_empty());
            assert!(ball_general(&l, &g, a, 0).is_empty());
        }
    }

    #[test]
    fn ball_at_requires_atom() {
        let l = boolean(2).unwrap();
        let p = AtomProfile::compute(&l).unwrap();
        assert!(matches!(ball_at(&l, &p, l.top(), 0), Err(TopologyError::NotAnAtom(_))));
    }

    #[test]
    fn boolean_general_balls_vanish_off_bottom() {
        let l = boolean(3).unwrap();
        let g = GeneralProfile::compute(&l).unwrap();
        for a in l.elements() {
            for n in 0..3 {
                let ball = ball_general(&l, &g, a, n);
                if a == l.bottom() {
                    assert_eq!(ball, vec![l.bottom()]);
                } else {
                    assert!(ball.is_empty());
                }
            }
        }
    }

    #[test]
    fn general_and_lattice_balls_agree() {
        for l in [boolean(2).unwrap(), mo(3).unwrap(), product(&boolean(1).unwrap(), &mo(2).unwrap()).unwrap()] {
            let p = AtomProfile::compute(&l).unwrap();
            let g = GeneralProfile::compute(&l).unwrap();
            for a in l.elements() {
                for n in 0..=g.stabilization().max(p.stabilization()) + 1 {
                    assert_eq!(ball_general(&l, &g, a, n), ball_lattice(&l, &p, a, n));
                }
            }
        }
    }
}
