//! Standard fixtures: boolean algebras, the Chinese lanterns MO(k), direct
//! products and horizontal sums.

use std::collections::{BTreeMap, HashSet};

use super::{
    validate_with_limit, FiniteOml, LatticeError, OrderKind, OrderSpec, RawLatticeSpec, DEFAULT_MAX_BOOLEAN_RANK,
    DEFAULT_MAX_ELEMENTS,
};

/// Powerset of `k` points ordered by inclusion, `1 ≤ k ≤ 5`.
///
/// Element `i` is the subset with bitmask `i`. Atoms are named `a`, `b`, …;
/// the bounds are `0` and `1`; other elements concatenate their atom names.
pub fn boolean(k: usize) -> Result<FiniteOml, LatticeError> {
    boolean_with_limit(k, DEFAULT_MAX_BOOLEAN_RANK)
}

pub fn boolean_with_limit(k: usize, max_rank: usize) -> Result<FiniteOml, LatticeError> {
    if k == 0 || k > max_rank {
        return Err(LatticeError::SizeLimit { n: 1 << k.min(63), max: 1 << max_rank });
    }
    let n = 1usize << k;
    let full = n - 1;
    let elements = (0..n)
        .map(|m| match m {
            0 => "0".to_owned(),
            m if m == full => "1".to_owned(),
            m => (0..k).filter(|i| m >> i & 1 == 1).map(|i| (b'a' + i as u8) as char).collect(),
        })
        .collect::<Vec<_>>();
    let mut pairs = Vec::new();
    for x in 0..n {
        for y in 0..n {
            if x != y && x & y == x {
                pairs.push([x, y]);
            }
        }
    }
    let ortho = (0..n).filter(|&m| m < full - m).map(|m| (elements[m].clone(), elements[full - m].clone())).collect();
    validate_with_limit(
        &RawLatticeSpec { elements, order: OrderSpec { kind: OrderKind::Full, pairs }, ortho },
        DEFAULT_MAX_ELEMENTS,
    )
}

/// MO(k): `⊥`, `⊤` and `k` orthogonal pairs of atoms `a1, a1', …, ak, ak'`.
pub fn mo(k: usize) -> Result<FiniteOml, LatticeError> {
    let n = 2 * k + 2;
    if k == 0 || n > DEFAULT_MAX_ELEMENTS {
        return Err(LatticeError::SizeLimit { n, max: DEFAULT_MAX_ELEMENTS });
    }
    let mut elements = vec!["0".to_owned()];
    let mut ortho = BTreeMap::new();
    ortho.insert("0".to_owned(), "1".to_owned());
    for i in 1..=k {
        elements.push(format!("a{i}"));
        elements.push(format!("a{i}'"));
        ortho.insert(format!("a{i}"), format!("a{i}'"));
    }
    elements.push("1".to_owned());
    let top = n - 1;
    let pairs = (1..top).flat_map(|a| [[0, a], [a, top]]).collect();
    validate_with_limit(
        &RawLatticeSpec { elements, order: OrderSpec { kind: OrderKind::Covers, pairs }, ortho },
        DEFAULT_MAX_ELEMENTS,
    )
}

/// Direct product ordered pointwise with pointwise orthocomplement.
/// Element `(i, j)` has index `i * |right| + j` and name `(x,y)`.
pub fn product(left: &FiniteOml, right: &FiniteOml) -> Result<FiniteOml, LatticeError> {
    let (n1, n2) = (left.len(), right.len());
    let n = n1 * n2;
    if n > DEFAULT_MAX_ELEMENTS {
        return Err(LatticeError::SizeLimit { n, max: DEFAULT_MAX_ELEMENTS });
    }
    let elements: Vec<String> = left
        .elements()
        .flat_map(|x| right.elements().map(move |y| (x, y)))
        .map(|(x, y)| format!("({},{})", left.name(x), right.name(y)))
        .collect();
    let mut pairs = Vec::new();
    for x1 in left.elements() {
        for y1 in right.elements() {
            for x2 in left.up(x1) {
                for y2 in right.up(y1) {
                    pairs.push([x1.index() * n2 + y1.index(), x2.index() * n2 + y2.index()]);
                }
            }
        }
    }
    let mut ortho = BTreeMap::new();
    for x in left.elements() {
        for y in right.elements() {
            let o = left.ortho(x).index() * n2 + right.ortho(y).index();
            ortho.insert(elements[x.index() * n2 + y.index()].clone(), elements[o].clone());
        }
    }
    validate_with_limit(
        &RawLatticeSpec { elements, order: OrderSpec { kind: OrderKind::Full, pairs }, ortho },
        DEFAULT_MAX_ELEMENTS,
    )
}

/// Horizontal sum: the two lattices glued at their bounds, with the inner
/// elements of different summands incomparable. Bounds keep the left names;
/// right inner names that clash with a left name get a `_r` suffix.
pub fn horizontal_sum(left: &FiniteOml, right: &FiniteOml) -> Result<FiniteOml, LatticeError> {
    let inner = |l: &FiniteOml| l.elements().filter(|&x| x != l.bottom() && x != l.top()).collect::<Vec<_>>();
    let (li, ri) = (inner(left), inner(right));
    let n = li.len() + ri.len() + 2;
    if n > DEFAULT_MAX_ELEMENTS {
        return Err(LatticeError::SizeLimit { n, max: DEFAULT_MAX_ELEMENTS });
    }
    let mut elements = vec![left.name(left.bottom()).to_owned()];
    let mut index = [BTreeMap::new(), BTreeMap::new()];
    index[0].insert(left.bottom(), 0);
    index[1].insert(right.bottom(), 0);
    let mut seen: HashSet<String> = HashSet::new();
    seen.insert(left.name(left.bottom()).to_owned());
    seen.insert(left.name(left.top()).to_owned());
    for (side, (lat, xs)) in [(left, &li), (right, &ri)].into_iter().enumerate() {
        for &x in xs {
            let mut name = lat.name(x).to_owned();
            while !seen.insert(name.clone()) {
                name.push_str("_r");
            }
            index[side].insert(x, elements.len());
            elements.push(name);
        }
    }
    let top = elements.len();
    elements.push(left.name(left.top()).to_owned());
    index[0].insert(left.top(), top);
    index[1].insert(right.top(), top);

    let mut pairs = Vec::new();
    let mut ortho = BTreeMap::new();
    for (side, lat) in [left, right].into_iter().enumerate() {
        for x in lat.elements() {
            for y in lat.up(x) {
                pairs.push([index[side][&x], index[side][&y]]);
            }
            let (a, b) = (index[side][&x], index[side][&lat.ortho(x)]);
            ortho.insert(elements[a].clone(), elements[b].clone());
        }
    }
    pairs.sort_unstable();
    pairs.dedup();
    validate_with_limit(
        &RawLatticeSpec { elements, order: OrderSpec { kind: OrderKind::Full, pairs }, ortho },
        DEFAULT_MAX_ELEMENTS,
    )
}

/// The benzene-ring ortholattice O6: `0 < a < b < 1`, `0 < b' < a' < 1`.
/// It is an ortholattice but not orthomodular.
pub fn hexagon_o6() -> RawLatticeSpec {
    let elements = ["0", "a", "b", "b'", "a'", "1"].map(String::from).to_vec();
    let pairs = vec![[0, 1], [1, 2], [2, 5], [0, 3], [3, 4], [4, 5]];
    let ortho = [("0", "1"), ("a", "a'"), ("b", "b'")].into_iter().map(|(x, y)| (x.to_owned(), y.to_owned())).collect();
    RawLatticeSpec { elements, order: OrderSpec { kind: OrderKind::Covers, pairs }, ortho }
}
