use omltopo::lattice::{boolean, hexagon_o6, horizontal_sum, mo, product, validate, RawLatticeSpec};
use omltopo::order_sets::{closure_negneg, complement_neg, is_lower_set, FinitePoset, LowerSet, Poset};
use omltopo::topology::{AtomProfile, GeneralProfile};
use omltopo::{ElementId, Family, FiniteOml, LatticeError, Topology};
use proptest::prelude::*;

fn small_lattice() -> impl Strategy<Value = FiniteOml> {
    prop_oneof![
        (1usize..=4).prop_map(|k| boolean(k).unwrap()),
        (1usize..=5).prop_map(|k| mo(k).unwrap()),
        ((1usize..=2), (1usize..=2)).prop_map(|(i, j)| product(&boolean(i).unwrap(), &mo(j).unwrap()).unwrap()),
        ((1usize..=3), (1usize..=3))
            .prop_map(|(i, j)| horizontal_sum(&boolean(i).unwrap(), &boolean(j).unwrap()).unwrap()),
    ]
}

fn lattice_and_triple() -> impl Strategy<Value = (FiniteOml, usize, usize, usize)> {
    small_lattice().prop_flat_map(|l| {
        let n = l.len();
        (Just(l), 0..n, 0..n, 0..n)
    })
}

fn id(i: usize) -> ElementId {
    ElementId::new(i)
}

/// Random poset with least element 0, given by a relation over `i < j`.
fn poset_strategy() -> impl Strategy<Value = FinitePoset> {
    (1usize..=12).prop_flat_map(|n| (Just(n), proptest::collection::vec(any::<bool>(), n * n))).prop_map(|(n, bits)| {
        let mut rel = Vec::new();
        for j in 1..n {
            rel.push((0, j));
            for i in 1..j {
                if bits[i * n + j] {
                    rel.push((i, j));
                }
            }
        }
        FinitePoset::from_relation(n, &rel).unwrap()
    })
}

fn poset_and_lower_set() -> impl Strategy<Value = (FinitePoset, LowerSet)> {
    poset_strategy().prop_flat_map(|p| {
        let n = p.len();
        proptest::collection::vec(0..n, 1..=n).prop_map(move |gens| {
            let i = LowerSet::generated_by(&p, gens);
            (p.clone(), i)
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn lattice_laws((l, a, b, c) in lattice_and_triple()) {
        let (a, b, c) = (id(a), id(b), id(c));
        prop_assert_eq!(l.meet(a, l.top()), a);
        prop_assert_eq!(l.ortho(l.ortho(a)), a);
        prop_assert_eq!(l.join(a, l.ortho(a)), l.top());
        prop_assert_eq!(l.meet(a, l.ortho(a)), l.bottom());
        prop_assert_eq!(l.meet(a, l.join(b, c)) == a, l.leq(a, l.join(b, c)));
        if l.leq(a, b) {
            prop_assert_eq!(l.join(a, l.meet(b, l.ortho(a))), b);
            prop_assert!(l.leq(l.ortho(b), l.ortho(a)));
        }
    }

    #[test]
    fn sasaki_laws((l, a, b, c) in lattice_and_triple()) {
        let (a, b, c) = (id(a), id(b), id(c));
        prop_assert_eq!(l.sasaki(a, l.top()), a);
        prop_assert_eq!(l.sasaki(a, b), l.meet(b, l.join(a, l.ortho(b))));
        if l.leq(a, b) {
            prop_assert!(l.leq(l.sasaki(a, c), l.sasaki(b, c)));
        }
        if l.leq(l.sasaki(a, b), c) {
            prop_assert!(l.leq(l.sasaki(l.ortho(c), b), l.ortho(a)));
        }
        prop_assert_eq!(
            l.leq(l.sasaki(b, l.join(a, c)), c),
            l.leq(l.sasaki(a, l.join(b, c)), c)
        );
    }

    #[test]
    fn atom_projection_on_atomic_fixtures((l, a, b, _c) in lattice_and_triple()) {
        if l.has_atom_projection() && l.is_atom(id(a)) {
            let p = l.sasaki(id(a), id(b));
            prop_assert!(p == l.bottom() || l.is_atom(p));
        }
    }

    #[test]
    fn lower_set_algebra((p, i) in poset_and_lower_set()) {
        let neg = complement_neg(&p, &i);
        let negneg = closure_negneg(&p, &i);
        prop_assert!(is_lower_set(&p, neg.mask()));
        prop_assert!(i.is_subset(&negneg));
        prop_assert_eq!(complement_neg(&p, &negneg), neg.clone());
        prop_assert_eq!(closure_negneg(&p, &negneg), negneg.clone());
        prop_assert_eq!(i.intersection(&neg).iter().collect::<Vec<_>>(), vec![p.bottom()]);
        for a in p.atoms() {
            prop_assert_eq!(negneg.contains(a), i.contains(a));
        }
    }

    #[test]
    fn complement_is_antitone((p, i) in poset_and_lower_set(), extra in any::<prop::sample::Index>()) {
        let j = i.union(&LowerSet::generated_by(&p, [extra.index(p.len())]));
        prop_assert!(complement_neg(&p, &j).is_subset(&complement_neg(&p, &i)));
    }

    #[test]
    fn raw_roundtrip(l in small_lattice()) {
        let raw = l.to_raw();
        let json = serde_json::to_string(&raw).unwrap();
        let back: RawLatticeSpec = serde_json::from_str(&json).unwrap();
        let again = validate(&back).unwrap();
        prop_assert_eq!(again.names(), l.names());
        for a in l.elements() {
            prop_assert_eq!(again.ortho(a), l.ortho(a));
            for b in l.elements() {
                prop_assert_eq!(again.leq(a, b), l.leq(a, b));
            }
        }
    }
}

fn relation_chain_grows(l: &FiniteOml) {
    let g = GeneralProfile::compute(l).unwrap();
    for n in 0..=g.stabilization() + 1 {
        assert!(g.relation(n).is_subset(g.relation(n + 1)));
    }
    if let Ok(p) = AtomProfile::compute(l) {
        for n in 0..=p.stabilization() + 1 {
            for (a, b) in p.pairs(n) {
                assert_ne!(a, b, "irreflexive");
                assert!(p.contains(n, b, a), "symmetric");
                assert!(p.contains(n + 1, a, b), "increasing");
            }
        }
    }
}

#[test]
fn relations_increase_on_fixtures() {
    for l in [
        boolean(3).unwrap(),
        mo(3).unwrap(),
        product(&boolean(2).unwrap(), &mo(2).unwrap()).unwrap(),
        horizontal_sum(&boolean(3).unwrap(), &boolean(2).unwrap()).unwrap(),
    ] {
        relation_chain_grows(&l);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn balls_decrease_and_openness_is_a_topology(
        l in small_lattice(),
        family in prop_oneof![Just(Family::Atom), Just(Family::Lattice), Just(Family::General)],
        bits in proptest::collection::vec(any::<(bool, bool)>(), 36),
    ) {
        // the atom families need atom projection
        let Ok(t) = Topology::new(&l, family) else { return Ok(()) };
        let carrier = t.carrier();
        for &a in &carrier {
            for n in 0..=t.stabilization() {
                let now = t.ball(a, n).unwrap();
                let next = t.ball(a, n + 1).unwrap();
                prop_assert!(next.iter().all(|x| now.contains(x)));
            }
        }
        let u: Vec<ElementId> = carrier.iter().zip(&bits).filter(|(_, b)| b.0).map(|(&x, _)| x).collect();
        let v: Vec<ElementId> = carrier.iter().zip(&bits).filter(|(_, b)| b.1).map(|(&x, _)| x).collect();
        let union: Vec<ElementId> = carrier.iter().copied().filter(|x| u.contains(x) || v.contains(x)).collect();
        let inter: Vec<ElementId> = carrier.iter().copied().filter(|x| u.contains(x) && v.contains(x)).collect();
        let (ou, ov) = (t.is_open(&u).unwrap(), t.is_open(&v).unwrap());
        if ou && ov {
            prop_assert!(t.is_open(&union).unwrap());
            prop_assert!(t.is_open(&inter).unwrap());
        }
        prop_assert!(t.is_open(&[]).unwrap());
        prop_assert!(t.is_open(&carrier).unwrap());
    }
}

#[test]
fn finite_balls_vanish_away_from_bottom() {
    for l in [boolean(4).unwrap(), mo(4).unwrap(), product(&mo(2).unwrap(), &boolean(1).unwrap()).unwrap()] {
        let t = Topology::general(&l).unwrap();
        let n = t.stabilization();
        for a in l.elements() {
            let ball = t.ball(a, n).unwrap();
            if a == l.bottom() {
                assert_eq!(ball, vec![l.bottom()]);
            } else {
                assert!(ball.is_empty(), "{}", l.name(a));
            }
        }
        assert_eq!(t.isolated_points().len(), l.len());
    }
}

#[test]
fn hexagon_fails_orthomodularity() {
    let err = validate(&hexagon_o6()).unwrap_err();
    assert!(matches!(err, LatticeError::NotOrthomodular { .. }));
    assert_eq!(err.witness(), Some(("a", "b")));
}

#[test]
fn boolean_r0_is_disjointness() {
    for k in 1..=4 {
        let l = boolean(k).unwrap();
        let g = GeneralProfile::compute(&l).unwrap();
        for (a, b) in g.pairs(0) {
            assert_eq!(l.meet(a, b), l.bottom());
        }
        let expected = l
            .elements()
            .flat_map(|a| l.elements().map(move |b| (a, b)))
            .filter(|&(a, b)| (a == l.bottom()) == (b == l.bottom()) && l.meet(a, b) == l.bottom())
            .count();
        assert_eq!(g.pairs(0).len(), expected);
        assert_eq!(g.stabilization(), 0);
    }
}
