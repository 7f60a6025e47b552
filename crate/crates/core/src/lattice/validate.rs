use std::collections::HashMap;

use super::{ElementId, FiniteOml, LatticeError, OrderKind, RawLatticeSpec, DEFAULT_MAX_ELEMENTS};

/// Validates `spec` as an orthomodular lattice with the default size limit.
pub fn validate(spec: &RawLatticeSpec) -> Result<FiniteOml, LatticeError> {
    validate_with_limit(spec, DEFAULT_MAX_ELEMENTS)
}

/// Checks, in order: poset axioms, existence of all meets and joins, the
/// orthocomplement axioms, and the orthomodular law `a ≤ b ⇒ b = a ∨ (b ∧ a⊥)`.
/// Each failure names the first witnessing pair in index order.
pub fn validate_with_limit(spec: &RawLatticeSpec, max_elements: usize) -> Result<FiniteOml, LatticeError> {
    let n = spec.elements.len();
    if n == 0 {
        return Err(LatticeError::Empty);
    }
    if n > max_elements {
        return Err(LatticeError::SizeLimit { n, max: max_elements });
    }
    let names = &spec.elements;
    let mut by_name = HashMap::with_capacity(n);
    for (i, name) in names.iter().enumerate() {
        if by_name.insert(name.as_str(), i).is_some() {
            return Err(LatticeError::DuplicateName(name.clone()));
        }
    }
    let name = |i: usize| names[i].clone();

    let mut leq = vec![false; n * n];
    for i in 0..n {
        leq[i * n + i] = true;
    }
    for &[i, j] in &spec.order.pairs {
        for k in [i, j] {
            if k >= n {
                return Err(LatticeError::IndexOutOfRange(k));
            }
        }
        leq[i * n + j] = true;
    }

    match spec.order.kind {
        OrderKind::Covers => warshall(&mut leq, n),
        OrderKind::Full => {
            for a in 0..n {
                for b in 0..n {
                    if !leq[a * n + b] {
                        continue;
                    }
                    for c in 0..n {
                        if leq[b * n + c] && !leq[a * n + c] {
                            return Err(LatticeError::NotAPoset {
                                a: name(a),
                                b: name(c),
                                reason: "order is not transitive",
                            });
                        }
                    }
                }
            }
        }
    }
    for a in 0..n {
        for b in a + 1..n {
            if leq[a * n + b] && leq[b * n + a] {
                return Err(LatticeError::NotAPoset { a: name(a), b: name(b), reason: "order is not antisymmetric" });
            }
        }
    }

    // Rank = size of the principal down-set; a greatest lower bound is the
    // lower bound of maximal rank, provided every other lower bound is below it.
    let rank: Vec<usize> = (0..n).map(|x| (0..n).filter(|&y| leq[y * n + x]).count()).collect();
    let corank: Vec<usize> = (0..n).map(|x| (0..n).filter(|&y| leq[x * n + y]).count()).collect();
    let mut meet = vec![ElementId::new(0); n * n];
    let mut join = vec![ElementId::new(0); n * n];
    for a in 0..n {
        for b in a..n {
            let m = extremal_bound(n, |x| leq[x * n + a] && leq[x * n + b], |x| rank[x], |x, y| leq[x * n + y])
                .ok_or_else(|| LatticeError::NotALattice { a: name(a), b: name(b), op: "meet" })?;
            let j = extremal_bound(n, |x| leq[a * n + x] && leq[b * n + x], |x| corank[x], |x, y| leq[y * n + x])
                .ok_or_else(|| LatticeError::NotALattice { a: name(a), b: name(b), op: "join" })?;
            for (p, q) in [(a, b), (b, a)] {
                meet[p * n + q] = ElementId::new(m);
                join[p * n + q] = ElementId::new(j);
            }
        }
    }
    let bottom = (0..n).find(|&x| rank[x] == 1).expect("a finite lattice has a least element");
    let top = (0..n).find(|&x| corank[x] == 1).expect("a finite lattice has a greatest element");

    let mut ortho: Vec<Option<usize>> = vec![None; n];
    let lookup = |s: &str| by_name.get(s).copied().ok_or_else(|| LatticeError::UnknownName(s.to_owned()));
    for (k, v) in &spec.ortho {
        let (x, y) = (lookup(k)?, lookup(v)?);
        for (p, q) in [(x, y), (y, x)] {
            match ortho[p] {
                Some(prev) if prev != q => {
                    return Err(LatticeError::NotAnOrtholattice {
                        a: name(p),
                        b: name(q),
                        reason: "orthocomplement is not an involution",
                    })
                }
                _ => ortho[p] = Some(q),
            }
        }
    }
    let mut ortho_ids = Vec::with_capacity(n);
    for (x, o) in ortho.iter().enumerate() {
        match o {
            Some(y) => ortho_ids.push(ElementId::new(*y)),
            None => {
                return Err(LatticeError::NotAnOrtholattice {
                    a: name(x),
                    b: name(x),
                    reason: "element has no orthocomplement",
                })
            }
        }
    }

    let mut is_atom = vec![false; n];
    for x in 0..n {
        is_atom[x] = x != bottom && rank[x] == 2;
    }
    let atoms = (0..n).filter(|&x| is_atom[x]).map(ElementId::new).collect();

    let oml = FiniteOml {
        names: names.clone(),
        leq,
        ortho: ortho_ids,
        meet,
        join,
        bottom: ElementId::new(bottom),
        top: ElementId::new(top),
        atoms,
        is_atom,
    };
    check_ortholattice(&oml)?;
    check_orthomodular(&oml)?;
    Ok(oml)
}

fn warshall(leq: &mut [bool], n: usize) {
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
}

/// Greatest element (w.r.t. `below`) of the set selected by `member`.
fn extremal_bound(
    n: usize,
    member: impl Fn(usize) -> bool,
    size: impl Fn(usize) -> usize,
    below: impl Fn(usize, usize) -> bool,
) -> Option<usize> {
    let candidate = (0..n).filter(|&x| member(x)).max_by_key(|&x| size(x))?;
    (0..n).filter(|&x| member(x)).all(|x| below(x, candidate)).then_some(candidate)
}

fn check_ortholattice(l: &FiniteOml) -> Result<(), LatticeError> {
    let err = |a: ElementId, b: ElementId, reason| LatticeError::NotAnOrtholattice {
        a: l.name(a).to_owned(),
        b: l.name(b).to_owned(),
        reason,
    };
    for x in l.elements() {
        if l.ortho(l.ortho(x)) != x {
            return Err(err(x, l.ortho(x), "orthocomplement is not an involution"));
        }
        if l.join(x, l.ortho(x)) != l.top() {
            return Err(err(x, l.ortho(x), "x v x' is not top"));
        }
        if l.meet(x, l.ortho(x)) != l.bottom() {
            return Err(err(x, l.ortho(x), "x ^ x' is not bottom"));
        }
    }
    for a in l.elements() {
        for b in l.elements() {
            if l.leq(a, b) && !l.leq(l.ortho(b), l.ortho(a)) {
                return Err(err(a, b, "orthocomplement is not order-reversing"));
            }
        }
    }
    Ok(())
}

fn check_orthomodular(l: &FiniteOml) -> Result<(), LatticeError> {
    for a in l.elements() {
        for b in l.elements() {
            if l.leq(a, b) && l.join(a, l.meet(b, l.ortho(a))) != b {
                return Err(LatticeError::NotOrthomodular { a: l.name(a).to_owned(), b: l.name(b).to_owned() });
            }
        }
    }
    Ok(())
}
