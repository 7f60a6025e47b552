use serde::Serialize;

use super::{lit, GeomError, Scalar, UnitVec3, Vec3};

/// Grid points per axis of the coarse search.
pub const GRID: usize = 400;

fn check_theta<T: Scalar>(theta: T) -> Result<(), GeomError> {
    if theta > T::zero() && theta < T::FRAC_PI_2() {
        Ok(())
    } else {
        Err(GeomError::DomainError { value: theta.to_f64().unwrap_or(f64::NAN), domain: "(0, pi/2)" })
    }
}

/// Normalized projection of `v = (cos θ, sin θ, 0)` onto `span{e1, w_φ}`,
/// `w_φ = (0, cos φ, sin φ)`.
pub fn v_phi<T: Scalar>(theta: T, phi: T) -> UnitVec3<T> {
    let (st, ct) = theta.sin_cos();
    let (sp, cp) = phi.sin_cos();
    let norm = (ct * ct + st * st * cp * cp).sqrt();
    let v = Vec3::new(ct, st * cp * cp, st * cp * sp).scale(T::one() / norm);
    UnitVec3::normalize(v).expect("cos θ > 0 keeps v_φ nonzero")
}

/// `v_φ · v_ψ` from the closed form.
pub fn dot_closed_form<T: Scalar>(theta: T, phi: T, psi: T) -> T {
    let (st, ct) = theta.sin_cos();
    let (sp, cp) = phi.sin_cos();
    let (ss, cs) = psi.sin_cos();
    let (c2, s2) = (ct * ct, st * st);
    let num = c2 + s2 * (cp * cp * cs * cs + cp * cs * sp * ss);
    let den = ((c2 + s2 * cp * cp) * (c2 + s2 * cs * cs)).sqrt();
    num / den
}

/// `(3 cos θ − 1)/(cos θ + 1)`.
pub fn lemma_min_closed_form<T: Scalar>(theta: T) -> T {
    let c = theta.cos();
    (lit::<T>(3.0) * c - T::one()) / (c + T::one())
}

#[derive(Clone, Debug, Serialize)]
pub struct LemmaCertificate<T> {
    pub theta: T,
    pub closed_form_min: T,
    pub closed_form_max: T,
    pub grid_min: T,
    pub grid_max: T,
    pub refined_min: T,
    /// Minimizer of the refinement along `ψ = −φ`.
    pub phi: T,
    /// `|cos²φ − cos θ/(1 + cos θ)|` at the refined minimizer.
    pub location_residual: T,
    pub abs_err: T,
}

fn golden_section<T: Scalar>(g: impl Fn(T) -> T, mut lo: T, mut hi: T) -> T {
    let r = (lit::<T>(5.0).sqrt() - T::one()) / lit(2.0);
    let mut x1 = hi - r * (hi - lo);
    let mut x2 = lo + r * (hi - lo);
    let (mut g1, mut g2) = (g(x1), g(x2));
    for _ in 0..200 {
        if hi - lo <= T::epsilon() * lit(4.0) {
            break;
        }
        if g1 <= g2 {
            hi = x2;
            x2 = x1;
            g2 = g1;
            x1 = hi - r * (hi - lo);
            g1 = g(x1);
        } else {
            lo = x1;
            x1 = x2;
            g1 = g2;
            x2 = lo + r * (hi - lo);
            g2 = g(x2);
        }
    }
    (lo + hi) / lit(2.0)
}

/// Compass search in the `(φ, ψ)` plane.
fn pattern_search<T: Scalar>(g: impl Fn(T, T) -> T, mut x: T, mut y: T, mut step: T) -> T {
    let mut best = g(x, y);
    while step > T::epsilon() {
        let mut moved = false;
        for (dx, dy) in [(step, T::zero()), (-step, T::zero()), (T::zero(), step), (T::zero(), -step)] {
            let v = g(x + dx, y + dy);
            if v < best {
                best = v;
                x = x + dx;
                y = y + dy;
                moved = true;
                break;
            }
        }
        if !moved {
            step = step / lit(2.0);
        }
    }
    best
}

/// Grid and refined extrema of `v_φ · v_ψ` next to the closed form, unchecked.
pub fn lemma_certificate<T: Scalar>(theta: T) -> Result<LemmaCertificate<T>, GeomError> {
    check_theta(theta)?;
    let h = T::PI() / T::from_usize(GRID).expect("finite");
    let axis: Vec<T> = (0..GRID).map(|i| T::from_usize(i).expect("finite") * h).collect();
    let (mut grid_min, mut grid_max) = (T::infinity(), T::neg_infinity());
    let mut arg = (T::zero(), T::zero());
    for &phi in &axis {
        for &psi in &axis {
            let d = dot_closed_form(theta, phi, psi);
            if d < grid_min {
                grid_min = d;
                arg = (phi, psi);
            }
            grid_max = grid_max.max(d);
        }
    }

    let phi = golden_section(|p| dot_closed_form(theta, p, -p), T::zero(), T::FRAC_PI_2());
    let diagonal = dot_closed_form(theta, phi, -phi);
    let free = pattern_search(|p, q| dot_closed_form(theta, p, q), arg.0, arg.1, h);
    let refined_min = diagonal.min(free);

    let closed_form_min = lemma_min_closed_form(theta);
    let ct = theta.cos();
    let location_residual = (phi.cos().powi(2) - ct / (T::one() + ct)).abs();
    let abs_err = (refined_min - closed_form_min).abs();
    Ok(LemmaCertificate {
        theta,
        closed_form_min,
        closed_form_max: T::one(),
        grid_min,
        grid_max,
        refined_min,
        phi,
        location_residual,
        abs_err,
    })
}

impl<T: Scalar> LemmaCertificate<T> {
    /// Fails when the refined minimum misses the closed form, some grid value
    /// undercuts it, or the grid maximum is not 1, each beyond `tol`.
    pub fn check(&self, tol: T) -> Result<(), GeomError> {
        let theta = self.theta;
        let fail = |detail: String| GeomError::CertificateFailure { theta: theta.to_f64().unwrap_or(f64::NAN), detail };
        if self.abs_err > tol {
            return Err(fail(format!("refined minimum off by {}", self.abs_err)));
        }
        if self.grid_min < self.closed_form_min - tol {
            return Err(fail(format!("grid value {} below closed-form minimum", self.grid_min)));
        }
        if (self.grid_max - T::one()).abs() > tol {
            return Err(fail(format!("grid maximum {} differs from 1", self.grid_max)));
        }
        Ok(())
    }
}

/// Closed-form extrema `((3 cos θ − 1)/(cos θ + 1), 1)` of `v_φ · v_ψ`,
/// certified by a coarse grid and local refinement.
pub fn lemma_extrema<T: Scalar>(theta: T, tol: T) -> Result<LemmaCertificate<T>, GeomError> {
    let cert = lemma_certificate(theta)?;
    cert.check(tol)?;
    Ok(cert)
}

#[cfg(test)]
mod tests {
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_3};

    use super::*;
    use crate::geom::{sasaki_project, Line3, Subspace3};

    #[test]
    fn v_phi_endpoints() {
        let t = 0.8f64;
        let v = v_phi(t, 0.0).components();
        assert!((v[0] - t.cos()).abs() < 1e-15 && (v[1] - t.sin()).abs() < 1e-15);
        let u = v_phi(t, FRAC_PI_2).components();
        assert!((u[0] - 1.0).abs() < 1e-15 && u[1].abs() < 1e-15);
    }

    #[test]
    fn v_phi_is_a_projection() {
        let t = 0.6f64;
        for k in 0..20 {
            let phi = k as f64 * 0.3;
            let plane = Subspace3::span(&[Vec3::basis(0), Vec3::new(0.0, phi.cos(), phi.sin())]);
            let b = Line3::span(Vec3::new(t.cos(), t.sin(), 0.0)).unwrap();
            let p = sasaki_project(&plane, &b).unwrap();
            let w = Line3::new(v_phi(t, phi));
            assert!((p.direction().dot(w.direction()) - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn closed_form_dot_cases() {
        let t = 0.4f64;
        assert!((dot_closed_form(t, 1.1, 1.1) - 1.0).abs() < 1e-15);
        assert!((dot_closed_form(t, 0.0, FRAC_PI_2) - t.cos()).abs() < 1e-15);
        assert!((dot_closed_form(t, 0.3, -1.2) - v_phi(t, 0.3).dot(v_phi(t, -1.2))).abs() < 1e-15);
    }

    #[test]
    fn pi_over_three() {
        let cert = lemma_extrema(FRAC_PI_3, 1e-6).unwrap();
        assert!((cert.closed_form_min - 1.0 / 3.0).abs() < 1e-15);
        assert!(cert.abs_err < 1e-9);
        assert!(cert.location_residual < 1e-6);
    }

    #[test]
    fn small_theta_minimum_tends_to_one() {
        assert!(lemma_min_closed_form(1e-4f64) > 0.999_999);
    }

    #[test]
    fn domain_checked() {
        assert!(lemma_extrema(0.0f64, 1e-6).is_err());
        assert!(lemma_extrema(FRAC_PI_2, 1e-6).is_err());
    }

    #[test]
    fn works_in_f32() {
        let cert = lemma_extrema(1.0f32, 1e-3).unwrap();
        assert!(cert.abs_err < 1e-3);
    }
}
