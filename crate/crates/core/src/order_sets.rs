//! Lower sets of finite posets with a least element.
//!
//! For a lower set `I`, `¬I = {x : ∀y ≤ x, y ∈ I ⇒ y = ⊥}`. Double
//! complementation `¬¬` is a closure operator on lower sets; on atomic posets
//! `x ∈ ¬¬I` iff every atom below `x` lies in `I`.

use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrderError {
    #[error("relation matrix has {got} entries, expected {expected}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("not a poset: {reason} ({x}, {y})")]
    NotAPoset { x: usize, y: usize, reason: &'static str },
    #[error("poset has no least element")]
    NoLeastElement,
    #[error("not a lower set: {x} is a member but {y} <= {x} is not")]
    NotALowerSet { x: usize, y: usize },
}

/// A finite poset with a least element, elements indexed `0..len()`.
pub trait Poset {
    fn len(&self) -> usize;

    fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn bottom(&self) -> usize;

    fn leq(&self, x: usize, y: usize) -> bool;

    /// Every `y ≤ x`, including `x` and the least element.
    fn down(&self, x: usize) -> &[usize];

    /// Elements covering the least element.
    fn atoms(&self) -> Vec<usize> {
        (0..self.len()).filter(|&x| x != self.bottom() && self.down(x).len() == 2).collect()
    }
}

#[derive(Clone, Debug)]
pub struct FinitePoset {
    n: usize,
    leq: Vec<bool>,
    bottom: usize,
    down: Vec<Vec<usize>>,
}

impl FinitePoset {
    /// Validates a dense `n × n` order matrix (`leq[x * n + y]` is `x ≤ y`).
    pub fn new(n: usize, leq: Vec<bool>) -> Result<Self, OrderError> {
        if leq.len() != n * n {
            return Err(OrderError::LengthMismatch { expected: n * n, got: leq.len() });
        }
        for x in 0..n {
            if !leq[x * n + x] {
                return Err(OrderError::NotAPoset { x, y: x, reason: "not reflexive" });
            }
        }
        for x in 0..n {
            for y in 0..n {
                if x != y && leq[x * n + y] && leq[y * n + x] {
                    return Err(OrderError::NotAPoset { x, y, reason: "not antisymmetric" });
                }
                if !leq[x * n + y] {
                    continue;
                }
                for z in 0..n {
                    if leq[y * n + z] && !leq[x * n + z] {
                        return Err(OrderError::NotAPoset { x, y: z, reason: "not transitive" });
                    }
                }
            }
        }
        let bottom = (0..n).find(|&b| (0..n).all(|x| leq[b * n + x])).ok_or(OrderError::NoLeastElement)?;
        Ok(Self::from_validated_matrix(n, leq, bottom))
    }

    /// Reflexive-transitive closure of `pairs` (`[x, y]` meaning `x ≤ y`).
    pub fn from_relation(n: usize, pairs: &[(usize, usize)]) -> Result<Self, OrderError> {
        let mut leq = vec![false; n * n];
        for x in 0..n {
            leq[x * n + x] = true;
        }
        for &(x, y) in pairs {
            if x >= n || y >= n {
                return Err(OrderError::LengthMismatch { expected: n, got: x.max(y) + 1 });
            }
            leq[x * n + y] = true;
        }
        for k in 0..n {
            for i in 0..n {
                if leq[i * n + k] {
                    for j in 0..n {
                        if leq[k * n + j] {
                            leq[i * n + j] = true;
                        }
                    }
                }
            }
        }
        Self::new(n, leq)
    }

    pub(crate) fn from_validated_matrix(n: usize, leq: Vec<bool>, bottom: usize) -> Self {
        let down = (0..n).map(|x| (0..n).filter(|&y| leq[y * n + x]).collect()).collect();
        FinitePoset { n, leq, bottom, down }
    }
}

impl Poset for FinitePoset {
    fn len(&self) -> usize {
        self.n
    }

    fn bottom(&self) -> usize {
        self.bottom
    }

    fn leq(&self, x: usize, y: usize) -> bool {
        self.leq[x * self.n + y]
    }

    fn down(&self, x: usize) -> &[usize] {
        &self.down[x]
    }
}

/// A downward-closed subset, stored as a membership mask.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LowerSet {
    members: Vec<bool>,
}

impl LowerSet {
    pub fn new<P: Poset + ?Sized>(poset: &P, members: Vec<bool>) -> Result<Self, OrderError> {
        if members.len() != poset.len() {
            return Err(OrderError::LengthMismatch { expected: poset.len(), got: members.len() });
        }
        if let Some((x, y)) = lower_set_violation(poset, &members) {
            return Err(OrderError::NotALowerSet { x, y });
        }
        Ok(LowerSet { members })
    }

    /// Smallest lower set containing `generators`.
    pub fn generated_by<P: Poset + ?Sized>(poset: &P, generators: impl IntoIterator<Item = usize>) -> Self {
        let mut members = vec![false; poset.len()];
        for g in generators {
            for &y in poset.down(g) {
                members[y] = true;
            }
        }
        LowerSet { members }
    }

    pub fn bottom_only<P: Poset + ?Sized>(poset: &P) -> Self {
        Self::generated_by(poset, [poset.bottom()])
    }

    pub fn full<P: Poset + ?Sized>(poset: &P) -> Self {
        LowerSet { members: vec![true; poset.len()] }
    }

    pub fn contains(&self, x: usize) -> bool {
        self.members[x]
    }

    pub fn mask(&self) -> &[bool] {
        &self.members
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.iter().enumerate().filter(|(_, &m)| m).map(|(i, _)| i)
    }

    pub fn count(&self) -> usize {
        self.members.iter().filter(|&&m| m).count()
    }

    pub fn is_subset(&self, other: &LowerSet) -> bool {
        self.members.iter().zip(&other.members).all(|(&a, &b)| !a || b)
    }

    pub fn intersection(&self, other: &LowerSet) -> LowerSet {
        LowerSet { members: self.members.iter().zip(&other.members).map(|(&a, &b)| a && b).collect() }
    }

    pub fn union(&self, other: &LowerSet) -> LowerSet {
        LowerSet { members: self.members.iter().zip(&other.members).map(|(&a, &b)| a || b).collect() }
    }

    pub(crate) fn from_mask_unchecked(members: Vec<bool>) -> Self {
        LowerSet { members }
    }
}

fn lower_set_violation<P: Poset + ?Sized>(poset: &P, members: &[bool]) -> Option<(usize, usize)> {
    (0..poset.len()).filter(|&x| members[x]).find_map(|x| poset.down(x).iter().find(|&&y| !members[y]).map(|&y| (x, y)))
}

pub fn is_lower_set<P: Poset + ?Sized>(poset: &P, subset: &[bool]) -> bool {
    subset.len() == poset.len() && lower_set_violation(poset, subset).is_none()
}

/// `¬I`, computed from the definition by scanning each principal down-set.
pub fn complement_neg<P: Poset + ?Sized>(poset: &P, set: &LowerSet) -> LowerSet {
    let bottom = poset.bottom();
    let members = (0..poset.len()).map(|x| poset.down(x).iter().all(|&y| y == bottom || !set.contains(y))).collect();
    LowerSet { members }
}

/// `¬¬I`.
pub fn closure_negneg<P: Poset + ?Sized>(poset: &P, set: &LowerSet) -> LowerSet {
    complement_neg(poset, &complement_neg(poset, set))
}

/// The `⊥`-smashed square of a poset: pairs with both coordinates above `⊥`
/// plus the single pair `(⊥, ⊥)`, ordered pointwise.
///
/// Pairs are densely re-indexed: `(⊥, ⊥)` is index 0, then the remaining
/// pairs in lexicographic order of their base coordinates.
#[derive(Clone, Debug)]
pub struct SmashedPoset {
    base_len: usize,
    base_bottom: usize,
    pairs: Vec<(usize, usize)>,
    index: Vec<u32>,
    base_leq: Vec<bool>,
    down: Vec<Vec<usize>>,
}

const ABSENT: u32 = u32::MAX;

impl SmashedPoset {
    pub fn new<P: Poset + ?Sized>(base: &P) -> Self {
        let n = base.len();
        let bot = base.bottom();
        let mut pairs = vec![(bot, bot)];
        let mut index = vec![ABSENT; n * n];
        index[bot * n + bot] = 0;
        for a in (0..n).filter(|&a| a != bot) {
            for b in (0..n).filter(|&b| b != bot) {
                index[a * n + b] = pairs.len() as u32;
                pairs.push((a, b));
            }
        }
        let down = pairs
            .iter()
            .map(|&(a, b)| {
                if a == bot {
                    return vec![0];
                }
                let mut d = vec![0];
                for &x in base.down(a).iter().filter(|&&x| x != bot) {
                    for &y in base.down(b).iter().filter(|&&y| y != bot) {
                        d.push(index[x * n + y] as usize);
                    }
                }
                d
            })
            .collect();
        let base_leq = (0..n * n).map(|k| base.leq(k / n, k % n)).collect();
        SmashedPoset { base_len: n, base_bottom: bot, pairs, index, base_leq, down }
    }

    pub fn base_len(&self) -> usize {
        self.base_len
    }

    /// Base coordinates of smashed element `i`.
    pub fn pair(&self, i: usize) -> (usize, usize) {
        self.pairs[i]
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    /// Index of `(a, b)` if it is an element of the smashed square.
    pub fn index_of(&self, a: usize, b: usize) -> Option<usize> {
        match self.index[a * self.base_len + b] {
            ABSENT => None,
            i => Some(i as usize),
        }
    }

    /// Index of `(a, b)`, sending every pair with a `⊥` coordinate to `(⊥, ⊥)`.
    #[inline]
    pub fn collapse(&self, a: usize, b: usize) -> usize {
        if a == self.base_bottom || b == self.base_bottom {
            0
        } else {
            self.index[a * self.base_len + b] as usize
        }
    }
}

impl Poset for SmashedPoset {
    fn len(&self) -> usize {
        self.pairs.len()
    }

    fn bottom(&self) -> usize {
        0
    }

    fn leq(&self, x: usize, y: usize) -> bool {
        let ((a, b), (c, d)) = (self.pairs[x], self.pairs[y]);
        let n = self.base_len;
        x == 0 || (self.base_leq[a * n + c] && self.base_leq[b * n + d])
    }

    fn down(&self, x: usize) -> &[usize] {
        &self.down[x]
    }
}

pub fn smashed_product<P: Poset + ?Sized>(poset: &P) -> SmashedPoset {
    SmashedPoset::new(poset)
}

/// Sorted element names of a lower set, for reports.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct NamedSet(pub Vec<String>);

impl NamedSet {
    pub fn from_set(set: &LowerSet, name: impl Fn(usize) -> String) -> Self {
        let mut names: Vec<String> = set.iter().map(name).collect();
        names.sort();
        NamedSet(names)
    }
}
