use num_integer::Integer;
use num_rational::Ratio;
use num_traits::FromPrimitive;
use serde::Serialize;

use super::{lit, Angle, GeomError, Scalar};

/// `f(x) = (3x − 1)/(x + 1)` on `[0, 1]`.
pub fn f<T: Scalar>(x: T) -> Result<T, GeomError> {
    if !(x >= T::zero() && x <= T::one()) {
        return Err(GeomError::DomainError { value: x.to_f64().unwrap_or(f64::NAN), domain: "[0, 1]" });
    }
    Ok((lit::<T>(3.0) * x - T::one()) / (x + T::one()))
}

/// `f⁻¹(y) = (1 + y)/(3 − y)` on `[−1, 1]`.
pub fn f_inv<T: Scalar>(y: T) -> Result<T, GeomError> {
    if !(y >= -T::one() && y <= T::one()) {
        return Err(GeomError::DomainError { value: y.to_f64().unwrap_or(f64::NAN), domain: "[-1, 1]" });
    }
    Ok((T::one() + y) / (lit::<T>(3.0) - y))
}

pub fn f_inv_exact<I: Integer + Clone + FromPrimitive>(y: &Ratio<I>) -> Ratio<I> {
    let one = Ratio::from_integer(I::one());
    let three = Ratio::from_integer(I::from_u8(3).expect("3 fits"));
    (one.clone() + y) / (three - y)
}

/// `c_n = n/(n + 2)`, exactly.
pub fn c<I: Integer + Clone + FromPrimitive>(n: u64) -> Ratio<I> {
    let num = I::from_u64(n).expect("n fits the integer type");
    let den = I::from_u64(n + 2).expect("n + 2 fits the integer type");
    Ratio::new(num, den)
}

/// `θ_n = arccos(c_n)`, with `θ_0 = π/2` exactly.
pub fn theta<T: Scalar>(n: u64) -> Angle<T> {
    if n == 0 {
        return Angle::new(T::FRAC_PI_2());
    }
    let nf = T::from_u64(n).expect("finite");
    Angle::new((nf / (nf + lit(2.0))).acos())
}

/// The sequences `c_n` and `θ_n` for `n = 0 ..= bound`.
#[derive(Clone, Debug, Serialize)]
pub struct ThetaLadder {
    pub bound: u64,
    /// `c_n` as `(numerator, denominator)` in lowest terms.
    pub c: Vec<(i64, i64)>,
    pub theta: Vec<f64>,
}

impl ThetaLadder {
    pub fn new(bound: u64) -> Self {
        let c = (0..=bound)
            .map(|n| {
                let r = c::<i64>(n);
                (*r.numer(), *r.denom())
            })
            .collect();
        let theta = (0..=bound).map(|n| theta::<f64>(n).radians()).collect();
        ThetaLadder { bound, c, theta }
    }

    /// First `n` where `f⁻¹(c_n) ≠ c_{n+1}` in exact arithmetic.
    pub fn recursion_failure(&self) -> Option<u64> {
        (0..self.bound).find(|&n| f_inv_exact(&c::<i64>(n)) != c::<i64>(n + 1))
    }

    pub fn strictly_decreasing(&self) -> bool {
        self.theta.windows(2).all(|w| w[1] < w[0])
    }

    pub fn theta_zero_is_right_angle(&self) -> bool {
        self.theta[0] == std::f64::consts::FRAC_PI_2
    }

    pub fn verify(&self) -> Result<(), GeomError> {
        if let Some(n) = self.recursion_failure() {
            return Err(GeomError::CertificateFailure {
                theta: self.theta[n as usize],
                detail: format!("f_inv(c_{n}) != c_{}", n + 1),
            });
        }
        if !self.theta_zero_is_right_angle() || !self.strictly_decreasing() {
            return Err(GeomError::CertificateFailure {
                theta: self.theta[0],
                detail: "ladder not strictly decreasing from pi/2".into(),
            });
        }
        Ok(())
    }
}
