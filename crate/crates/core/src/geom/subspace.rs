//! Closed subspaces of R³, the projective metric, and the lattice metrics
//! built from it.

use serde::Serialize;

use super::{unit_tol, zero_tol, Angle, GeomError, Scalar, UnitVec3, Vec3};

/// A one-dimensional subspace, stored by a canonical unit direction whose
/// first non-negligible component is positive.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Line3<T> {
    direction: UnitVec3<T>,
}

impl<T: Scalar> Line3<T> {
    pub fn new(direction: UnitVec3<T>) -> Self {
        let eps = zero_tol::<T>();
        let first = direction.components().into_iter().find(|c| c.abs() > eps);
        match first {
            Some(c) if c < T::zero() => Line3 { direction: -direction },
            _ => Line3 { direction },
        }
    }

    /// Span of a nonzero vector.
    pub fn span(v: Vec3<T>) -> Option<Self> {
        UnitVec3::normalize(v).map(Self::new)
    }

    pub fn direction(&self) -> UnitVec3<T> {
        self.direction
    }

    pub fn as_subspace(&self) -> Subspace3<T> {
        Subspace3 { basis: vec![self.direction] }
    }
}

/// A subspace of R³ of dimension 0 to 3 with an orthonormal basis.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Subspace3<T> {
    basis: Vec<UnitVec3<T>>,
}

impl<T: Scalar> Subspace3<T> {
    pub fn zero() -> Self {
        Subspace3 { basis: Vec::new() }
    }

    pub fn whole() -> Self {
        Subspace3 { basis: (0..3).map(UnitVec3::basis).collect() }
    }

    /// Span of arbitrary vectors, orthonormalized by Gram-Schmidt;
    /// numerically dependent vectors are dropped.
    pub fn span(vectors: &[Vec3<T>]) -> Self {
        let mut basis: Vec<UnitVec3<T>> = Vec::new();
        for &v in vectors {
            let mut r = v;
            // two passes keep the basis orthogonal to working precision
            for _ in 0..2 {
                for e in &basis {
                    r = r - e.vec().scale(r.dot(e.vec()));
                }
            }
            if r.norm() > v.norm() * super::lit::<T>(1e-9) {
                if let Some(u) = UnitVec3::normalize(r) {
                    basis.push(u);
                }
            }
            if basis.len() == 3 {
                break;
            }
        }
        Subspace3 { basis }
    }

    /// Accepts an already orthonormal basis.
    pub fn from_orthonormal(basis: Vec<UnitVec3<T>>) -> Result<Self, GeomError> {
        if basis.len() > 3 {
            return Err(GeomError::NotOrthonormal);
        }
        let tol = unit_tol::<T>() * super::lit::<T>(100.0);
        for (i, a) in basis.iter().enumerate() {
            for b in &basis[i + 1..] {
                if a.dot(*b).abs() > tol {
                    return Err(GeomError::NotOrthonormal);
                }
            }
        }
        Ok(Subspace3 { basis })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[UnitVec3<T>] {
        &self.basis
    }

    /// Orthogonal projection `Π_E(v)`.
    pub fn project(&self, v: Vec3<T>) -> Vec3<T> {
        self.basis.iter().fold(Vec3::zero(), |acc, e| acc + e.vec().scale(v.dot(e.vec())))
    }

    pub fn contains(&self, v: Vec3<T>) -> bool {
        let r = v - self.project(v);
        r.norm() <= v.norm() * super::lit::<T>(1e3) * unit_tol::<T>()
    }

    pub fn contains_line(&self, line: &Line3<T>) -> bool {
        self.contains(line.direction().vec())
    }

    pub fn orthocomplement(&self) -> Self {
        let mut vecs: Vec<Vec3<T>> = self.basis.iter().map(|e| e.vec()).collect();
        vecs.extend((0..3).map(Vec3::basis));
        let full = Subspace3::span(&vecs);
        Subspace3 { basis: full.basis[self.dim()..].to_vec() }
    }
}

/// `d(A, B) = arccos |u·v|` for unit spanning vectors, in `[0, π/2]`.
pub fn proj_metric<T: Scalar>(a: &Line3<T>, b: &Line3<T>) -> Angle<T> {
    let (u, v) = (a.direction().vec(), b.direction().vec());
    Angle::from_sin_cos(u.cross(v).norm(), u.dot(v))
}

/// `B & E`: the span of the orthogonal projection of `B` onto `E`, or `None`
/// for the zero subspace when `B ⊥ E`.
pub fn sasaki_project<T: Scalar>(e: &Subspace3<T>, b: &Line3<T>) -> Option<Line3<T>> {
    let p = e.project(b.direction().vec());
    if p.norm() <= super::lit::<T>(1e3) * unit_tol::<T>() {
        None
    } else {
        Line3::span(p)
    }
}

/// `d_π(x, b) = min_{y ∈ At(b)} d(x, y) = arccos ‖Π_b u‖`.
pub fn d_pi<T: Scalar>(x: &Line3<T>, b: &Subspace3<T>) -> Result<Angle<T>, GeomError> {
    if b.dim() == 0 {
        return Err(GeomError::DimensionError);
    }
    let u = x.direction().vec();
    let p = b.project(u);
    Ok(Angle::from_sin_cos((u - p).norm(), p.norm()))
}

/// Largest angle between a line of `a` and the subspace `b`:
/// `max_{x ∈ At(a)} d_π(x, b) = arccos σ_min(Bᵀ A)`.
pub fn max_deviation<T: Scalar>(a: &Subspace3<T>, b: &Subspace3<T>) -> Result<Angle<T>, GeomError> {
    if a.dim() == 0 || b.dim() == 0 {
        return Err(GeomError::DimensionError);
    }
    // AᵀP_BA and Aᵀ(I − P_B)A sum to the identity, so they share eigenvectors;
    // their eigenvalues are cos² and sin² of the principal angles.
    let k = a.dim();
    let mut cos_gram = [[T::zero(); 3]; 3];
    let mut sin_gram = [[T::zero(); 3]; 3];
    let proj: Vec<Vec3<T>> = a.basis().iter().map(|e| b.project(e.vec())).collect();
    for i in 0..k {
        for j in 0..k {
            let ai = a.basis()[i].vec();
            let aj = a.basis()[j].vec();
            cos_gram[i][j] = proj[i].dot(proj[j]);
            sin_gram[i][j] = (ai - proj[i]).dot(aj - proj[j]);
        }
    }
    let cos2 = symmetric_eigenvalues(cos_gram, k).into_iter().fold(T::infinity(), T::min);
    let sin2 = symmetric_eigenvalues(sin_gram, k).into_iter().fold(T::neg_infinity(), T::max);
    Ok(Angle::from_sin_cos(sin2.max(T::zero()).sqrt(), cos2.max(T::zero()).sqrt()))
}

/// `d_L(a, b) = max(max_{x ∈ At(a)} d_π(x, b), max_{y ∈ At(b)} d_π(y, a))`.
pub fn d_l<T: Scalar>(a: &Subspace3<T>, b: &Subspace3<T>) -> Result<Angle<T>, GeomError> {
    let ab = max_deviation(a, b)?;
    let ba = max_deviation(b, a)?;
    Ok(if ab.radians() >= ba.radians() { ab } else { ba })
}

/// Eigenvalues of the leading `k × k` block of a symmetric matrix (cyclic Jacobi).
pub(crate) fn symmetric_eigenvalues<T: Scalar>(mut m: [[T; 3]; 3], k: usize) -> Vec<T> {
    let two = T::from(2.0).unwrap();
    for _sweep in 0..64 {
        let off = (0..k)
            .flat_map(|i| (0..k).map(move |j| (i, j)))
            .filter(|(i, j)| i != j)
            .fold(T::zero(), |s, (i, j)| s + m[i][j] * m[i][j]);
        if off <= T::epsilon() * T::epsilon() {
            break;
        }
        for p in 0..k {
            for q in p + 1..k {
                if m[p][q] == T::zero() {
                    continue;
                }
                let theta = (m[q][q] - m[p][p]) / (two * m[p][q]);
                let t = theta.signum() / (theta.abs() + (theta * theta + T::one()).sqrt());
                let c = T::one() / (t * t + T::one()).sqrt();
                let s = t * c;
                for row in m.iter_mut().take(k) {
                    let (mrp, mrq) = (row[p], row[q]);
                    row[p] = c * mrp - s * mrq;
                    row[q] = s * mrp + c * mrq;
                }
                let (row_p, row_q) = (m[p], m[q]);
                for r in 0..k {
                    m[p][r] = c * row_p[r] - s * row_q[r];
                    m[q][r] = s * row_p[r] + c * row_q[r];
                }
            }
        }
    }
    (0..k).map(|i| m[i][i]).collect()
}
