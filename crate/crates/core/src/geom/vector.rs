use std::ops::{Add, Mul, Neg, Sub};

use serde::Serialize;

use super::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(transparent)]
pub struct Vec3<T>(pub [T; 3]);

impl<T: Scalar> Vec3<T> {
    pub fn new(x: T, y: T, z: T) -> Self {
        Vec3([x, y, z])
    }

    pub fn zero() -> Self {
        Vec3([T::zero(); 3])
    }

    /// `i`-th standard basis vector.
    pub fn basis(i: usize) -> Self {
        let mut v = [T::zero(); 3];
        v[i] = T::one();
        Vec3(v)
    }

    pub fn dot(self, other: Self) -> T {
        self.0[0] * other.0[0] + self.0[1] * other.0[1] + self.0[2] * other.0[2]
    }

    pub fn cross(self, o: Self) -> Self {
        let [a, b, c] = self.0;
        let [x, y, z] = o.0;
        Vec3([b * z - c * y, c * x - a * z, a * y - b * x])
    }

    pub fn norm(self) -> T {
        self.dot(self).sqrt()
    }

    pub fn scale(self, k: T) -> Self {
        Vec3(self.0.map(|c| c * k))
    }

    pub fn components(self) -> [T; 3] {
        self.0
    }

    pub fn cast<U: Scalar>(self) -> Vec3<U> {
        Vec3(self.0.map(|c| U::from(c).expect("finite component")))
    }
}

impl<T: Scalar> Add for Vec3<T> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Vec3([self.0[0] + o.0[0], self.0[1] + o.0[1], self.0[2] + o.0[2]])
    }
}

impl<T: Scalar> Sub for Vec3<T> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Vec3([self.0[0] - o.0[0], self.0[1] - o.0[1], self.0[2] - o.0[2]])
    }
}

impl<T: Scalar> Neg for Vec3<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Vec3(self.0.map(|c| -c))
    }
}

impl<T: Scalar> Mul<T> for Vec3<T> {
    type Output = Self;
    fn mul(self, k: T) -> Self {
        self.scale(k)
    }
}

/// A vector of Euclidean norm one.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(transparent)]
pub struct UnitVec3<T>(Vec3<T>);

impl<T: Scalar> UnitVec3<T> {
    /// Normalizes `v`; `None` when `v` is numerically zero.
    pub fn normalize(v: Vec3<T>) -> Option<Self> {
        let n = v.norm();
        if n <= super::zero_tol::<T>() || !n.is_finite() {
            None
        } else {
            Some(UnitVec3(v.scale(T::one() / n)))
        }
    }

    pub fn basis(i: usize) -> Self {
        UnitVec3(Vec3::basis(i))
    }

    pub fn vec(self) -> Vec3<T> {
        self.0
    }

    pub fn dot(self, other: Self) -> T {
        self.0.dot(other.0)
    }

    pub fn components(self) -> [T; 3] {
        self.0 .0
    }
}

impl<T: Scalar> Neg for UnitVec3<T> {
    type Output = Self;
    fn neg(self) -> Self {
        UnitVec3(-self.0)
    }
}
