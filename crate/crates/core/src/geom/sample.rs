//! Seeded random inputs for the numerical sweeps.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use super::{theta, Line3, Scalar, UnitVec3, Vec3};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn unit_vector<T: Scalar, R: Rng>(rng: &mut R) -> UnitVec3<T> {
    loop {
        let v = Vec3::new(
            rng.sample::<f64, _>(StandardNormal),
            rng.sample::<f64, _>(StandardNormal),
            rng.sample::<f64, _>(StandardNormal),
        );
        if let Some(u) = UnitVec3::normalize(v.cast::<T>()) {
            return u;
        }
    }
}

pub fn line<T: Scalar, R: Rng>(rng: &mut R) -> Line3<T> {
    Line3::new(unit_vector(rng))
}

/// Unit vector orthogonal to `u`.
pub fn orthogonal_to<T: Scalar, R: Rng>(rng: &mut R, u: UnitVec3<T>) -> UnitVec3<T> {
    loop {
        let w = unit_vector::<T, R>(rng).vec();
        let r = w - u.vec().scale(w.dot(u.vec()));
        if r.norm() > T::from_f64(1e-3).expect("finite") {
            if let Some(e) = UnitVec3::normalize(r) {
                return e;
            }
        }
    }
}

/// Lines `A`, `B` at a uniformly drawn distance in `[θ_n, π/2]`.
pub fn pair_at_least<T: Scalar, R: Rng>(rng: &mut R, n: u64) -> (Line3<T>, Line3<T>) {
    let lo = theta::<f64>(n).radians();
    let d = T::from_f64(rng.random_range(lo..=std::f64::consts::FRAC_PI_2)).expect("finite");
    let u = unit_vector::<T, R>(rng);
    let w = orthogonal_to(rng, u);
    let b = u.vec().scale(d.cos()) + w.vec().scale(d.sin());
    (Line3::new(u), Line3::span(b).expect("unit combination"))
}
