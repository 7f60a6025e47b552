use serde::Serialize;

use super::{
    lit, proj_metric, theta, zero_tol, Angle, GeomError, Line3, Scalar, Subspace3, UnitVec3, Vec3, PRECONDITION_SLACK,
};

/// Planes `A1 = E_α`, `A2 = E_{−α}` through `A` and the projected lines
/// `B & A1`, `B & A2`.
#[derive(Clone, Debug, Serialize)]
pub struct WitnessStep<T> {
    pub n: u64,
    pub alpha: T,
    pub a1: Subspace3<T>,
    pub a2: Subspace3<T>,
    pub next_a: Line3<T>,
    pub next_b: Line3<T>,
    pub angle: T,
    pub target: T,
    pub residual: T,
}

/// Adapted frame: `e1 = u`, `v = cos d e1 + sin d e2`, `e3 = e1 × e2`.
struct Frame<T> {
    e1: Vec3<T>,
    e2: Vec3<T>,
    e3: Vec3<T>,
    v: Vec3<T>,
}

impl<T: Scalar> Frame<T> {
    fn new(a: &Line3<T>, b: &Line3<T>) -> Result<(Self, T), GeomError> {
        let u = a.direction().vec();
        let mut v = b.direction().vec();
        let mut cd = u.dot(v);
        if cd < T::zero() {
            v = -v;
            cd = -cd;
        }
        let perp = v - u.scale(cd);
        let e2 = UnitVec3::normalize(perp)
            .filter(|_| perp.norm() > zero_tol::<T>())
            .ok_or_else(|| GeomError::DegenerateInput("d(A, B) = 0".into()))?
            .vec();
        Ok((Frame { e1: u, e2, e3: u.cross(e2), v }, cd))
    }

    fn w(&self, phi: T) -> Vec3<T> {
        let (s, c) = phi.sin_cos();
        self.e2.scale(c) + self.e3.scale(s)
    }

    fn plane(&self, phi: T) -> Subspace3<T> {
        Subspace3::span(&[self.e1, self.w(phi)])
    }

    /// Unnormalized `Π_{E_φ}(v)`, computed in the frame.
    fn projection(&self, phi: T) -> Vec3<T> {
        let w = self.w(phi);
        self.e1.scale(self.v.dot(self.e1)) + w.scale(self.v.dot(w))
    }

    fn projected_dot(&self, phi: T) -> T {
        let p = self.projection(phi);
        let q = self.projection(-phi);
        p.dot(q) / (p.norm() * q.norm())
    }
}

fn precondition<T: Scalar>(d: Angle<T>, n: u64) -> Result<(), GeomError> {
    if d.radians() < theta::<T>(n).radians() - lit(PRECONDITION_SLACK) {
        return Err(GeomError::PreconditionError(format!(
            "d(A, B) = {} < theta_{n} = {}",
            d.radians(),
            theta::<T>(n).radians()
        )));
    }
    Ok(())
}

/// Two planes above `A` whose projections of `B` lie at distance `θ_{n−1}`.
pub fn witness_step<T: Scalar>(a: &Line3<T>, b: &Line3<T>, n: u64) -> Result<WitnessStep<T>, GeomError> {
    if n == 0 {
        return Err(GeomError::PreconditionError("witness_step needs n >= 1".into()));
    }
    let (frame, cd) = Frame::new(a, b)?;
    let d = proj_metric(a, b);
    precondition(d, n)?;

    let target = T::from_u64(n - 1).expect("finite") / T::from_u64(n + 1).expect("finite");
    let phi_star = (cd / (T::one() + cd)).sqrt().acos();
    let (mut lo, mut hi) = (T::zero(), phi_star);
    for _ in 0..200 {
        let mid = (lo + hi) / lit(2.0);
        if mid <= lo || mid >= hi {
            break;
        }
        if frame.projected_dot(mid) > target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let alpha =
        if (frame.projected_dot(lo) - target).abs() <= (frame.projected_dot(hi) - target).abs() || hi >= phi_star {
            lo
        } else {
            hi
        };

    let a1 = frame.plane(alpha);
    let a2 = frame.plane(-alpha);
    let next_a =
        Line3::span(frame.projection(alpha)).ok_or_else(|| GeomError::DegenerateInput("B orthogonal to A1".into()))?;
    let next_b =
        Line3::span(frame.projection(-alpha)).ok_or_else(|| GeomError::DegenerateInput("B orthogonal to A2".into()))?;
    let angle = proj_metric(&next_a, &next_b).radians();
    let goal = theta::<T>(n - 1).radians();
    Ok(WitnessStep { n, alpha, a1, a2, next_a, next_b, angle, target: goal, residual: (angle - goal).abs() })
}

#[derive(Clone, Debug, Serialize)]
pub struct ChainLink<T> {
    pub k: u64,
    pub a: Line3<T>,
    pub b: Line3<T>,
    pub angle: T,
    /// `|d(A_k, B_k) − θ_k|`; zero for the input pair.
    pub residual: T,
}

#[derive(Clone, Debug, Serialize)]
pub struct ChainWitness<T> {
    pub links: Vec<ChainLink<T>>,
    /// `|d(A_0, B_0) − π/2|`.
    pub final_residual: T,
}

/// Pairs `(A_k, B_k)` for `k = n, …, 0` starting at `(A, B)`, each obtained by
/// one [`witness_step`] from the previous one.
pub fn chain_witness<T: Scalar>(a: &Line3<T>, b: &Line3<T>, n: u64) -> Result<ChainWitness<T>, GeomError> {
    let d = proj_metric(a, b);
    precondition(d, n)?;
    let mut links = vec![ChainLink { k: n, a: *a, b: *b, angle: d.radians(), residual: T::zero() }];
    let (mut cur_a, mut cur_b) = (*a, *b);
    for k in (1..=n).rev() {
        let step = witness_step(&cur_a, &cur_b, k)?;
        links.push(ChainLink { k: k - 1, a: step.next_a, b: step.next_b, angle: step.angle, residual: step.residual });
        cur_a = step.next_a;
        cur_b = step.next_b;
    }
    let last = links.last().expect("chain is nonempty").angle;
    Ok(ChainWitness { links, final_residual: (last - T::FRAC_PI_2()).abs() })
}
