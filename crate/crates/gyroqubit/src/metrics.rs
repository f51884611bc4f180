//! Distances: the Ungar gyrometric and rapidity metric on the ball, the
//! affine-invariant trace metric on positive definite matrices, and the
//! path-length machinery backing the geodesic-distance reading of the trace
//! metric.
//!
//! The trace metric is
//!
//! ```text
//! delta(A, B) = || log(A^{-1/2} B A^{-1/2}) ||_F
//! ```
//!
//! computed through the Hermitian kernel (eigenvalues of the congruent
//! Hermitian form, never a non-Hermitian product); the equality with
//! `|| log(A^{-1} B) ||_F` is a property the verification harness checks,
//! not an implementation path.

use crate::error::{Error, Result};
use crate::gyrovector::{einstein_add, gamma, BlochVector};
use crate::hermitian2::{congruence, Complex2x2, Hermitian2, MatFun, POSITIVE_SPECTRUM_FLOOR};

/// Distances below this collapse to exactly zero, so coincident inputs do
/// not pick up `log(1 +- ulp)` noise.
const COINCIDENT_FLOOR: f64 = 1e-12;

/// Eigenvalue floor applied when re-projecting a perturbed path sample back
/// into the positive definite cone.
const PATH_EIGENVALUE_FLOOR: f64 = 1e-6;

fn require_positive_definite(m: &Hermitian2) -> Result<()> {
    let min_eig = m.eig().lambda2;
    if min_eig <= POSITIVE_SPECTRUM_FLOOR {
        Err(Error::NotPositiveDefinite(min_eig))
    } else {
        Ok(())
    }
}

/// Ungar gyrometric `|(-u) (+) v|`, in `[0, 1)`.
pub fn gyrometric(u: &BlochVector, v: &BlochVector) -> Result<f64> {
    Ok(einstein_add(&u.neg(), v)?.norm())
}

/// Rapidity metric `atanh |(-u) (+) v|`; the hyperbolic distance of the
/// Beltrami-Klein ball.
///
/// Past a gyrometric of 0.9 the `atanh` is rewritten as `arcosh` of the
/// composed Lorentz factor `gamma_u gamma_v (1 - u.v)`: rounding in the
/// gyrometric gets amplified by `1/(1 - q^2)` under `atanh`, while the
/// factor form keeps the error at the relative level of its inputs.
pub fn rapidity_metric(u: &BlochVector, v: &BlochVector) -> Result<f64> {
    let q = gyrometric(u, v)?;
    if q < 0.9 {
        return Ok(q.atanh());
    }
    let g = gamma(u)? * gamma(v)? * (1.0 - u.dot(v));
    Ok((g + (g * g - 1.0).sqrt()).ln())
}

/// Trace metric on positive definite matrices.
///
/// The smaller log-eigenvalue of `A^{-1/2} B A^{-1/2}` is recovered through
/// the determinant identity `lambda1 lambda2 = det B / det A`: the direct
/// `mid - disc` form cancels catastrophically at large condition numbers,
/// while the determinants of the inputs are computed before any lossy
/// subtraction.
pub fn trace_metric(a: &Hermitian2, b: &Hermitian2) -> Result<f64> {
    require_positive_definite(a)?;
    require_positive_definite(b)?;
    let inv_root = a.matfun(MatFun::Power(-0.5))?;
    let w = congruence(&Complex2x2::from_hermitian(&inv_root), b)?;
    let s = w.eig();
    if s.lambda2 <= POSITIVE_SPECTRUM_FLOOR {
        return Err(Error::NotPositiveDefinite(s.lambda2));
    }
    let ln1 = s.lambda1.ln();
    let ln2 = b.det().ln() - a.det().ln() - ln1;
    let delta = ln1.hypot(ln2);
    Ok(if delta < COINCIDENT_FLOOR { 0.0 } else { delta })
}

/// Upper bound for the trace distance between two states in terms of their
/// overlap and determinants:
///
/// ```text
/// sqrt( ln^2(x/a) + ln^2(x/b) ),   x = (1 - u.v)/2,
///                                  a = det rho_u,  b = det rho_v.
/// ```
pub fn prop_bound(u: &BlochVector, v: &BlochVector) -> Result<f64> {
    if !u.is_interior() {
        return Err(Error::BoundaryVector { norm: u.norm(), limit: crate::gyrovector::INTERIOR_LIMIT });
    }
    if !v.is_interior() {
        return Err(Error::BoundaryVector { norm: v.norm(), limit: crate::gyrovector::INTERIOR_LIMIT });
    }
    let x = 0.5 * (1.0 - u.dot(v));
    let a = 0.25 * (1.0 - u.dot(u));
    let b = 0.25 * (1.0 - v.dot(v));
    Ok((x / a).ln().hypot((x / b).ln()))
}

/// Point at parameter `t` on the trace-metric geodesic
/// `A^{1/2} (A^{-1/2} B A^{-1/2})^t A^{1/2}`.
pub fn geodesic_point(a: &Hermitian2, b: &Hermitian2, t: f64) -> Result<Hermitian2> {
    require_positive_definite(a)?;
    require_positive_definite(b)?;
    let root = a.matfun(MatFun::Sqrt)?;
    let inv_root = a.matfun(MatFun::Power(-0.5))?;
    let w = congruence(&Complex2x2::from_hermitian(&inv_root), b)?;
    let wt = w.matfun(MatFun::Power(t))?;
    congruence(&Complex2x2::from_hermitian(&root), &wt)
}

/// Selects which stored parameter of a [`Hermitian2`] a path perturbation
/// bumps.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MatrixEntry {
    A11,
    A22,
    Re12,
    Im12,
}

impl MatrixEntry {
    /// Cycles through the four entries; handy for varying perturbations
    /// across trials.
    pub fn cycle(index: usize) -> Self {
        match index % 4 {
            0 => Self::A11,
            1 => Self::A22,
            2 => Self::Re12,
            _ => Self::Im12,
        }
    }

    fn bump(&self, m: &Hermitian2, amount: f64) -> Hermitian2 {
        let mut out = *m;
        match self {
            Self::A11 => out.a11 += amount,
            Self::A22 => out.a22 += amount,
            Self::Re12 => out.re12 += amount,
            Self::Im12 => out.im12 += amount,
        }
        out
    }
}

/// Re-project into the cone by flooring eigenvalues.
fn floor_positive(m: &Hermitian2, floor: f64) -> Hermitian2 {
    let s = m.eig();
    if s.lambda2 >= floor {
        return *m;
    }
    s.frame
        .mul(&Complex2x2::diagonal(s.lambda1.max(floor), s.lambda2.max(floor)))
        .mul(&s.frame.adjoint())
        .hermitian_part()
}

/// A sampled differentiable path in the positive definite cone, with fixed
/// endpoints and a segment count for quadrature.
pub struct PathSampler {
    endpoint_a: Hermitian2,
    endpoint_b: Hermitian2,
    rule: Box<dyn Fn(f64) -> Hermitian2>,
    segments: usize,
}

impl PathSampler {
    /// Wrap a parameter-to-matrix rule. The rule must hit the endpoints to
    /// `1e-12`; that is validated here, positive definiteness of interior
    /// samples is validated during integration.
    pub fn new(
        endpoint_a: Hermitian2,
        endpoint_b: Hermitian2,
        rule: Box<dyn Fn(f64) -> Hermitian2>,
        segments: usize,
    ) -> Result<Self> {
        require_positive_definite(&endpoint_a)?;
        require_positive_definite(&endpoint_b)?;
        assert!(segments >= 1, "need a positive segment count");
        let start_gap = rule(0.0).max_abs_diff(&endpoint_a);
        let end_gap = rule(1.0).max_abs_diff(&endpoint_b);
        assert!(
            start_gap <= 1e-12 && end_gap <= 1e-12,
            "rule misses endpoints: gaps {start_gap:.3e}, {end_gap:.3e}"
        );
        Ok(Self { endpoint_a, endpoint_b, rule, segments })
    }

    /// The geodesic path between `a` and `b`.
    pub fn geodesic(a: Hermitian2, b: Hermitian2, segments: usize) -> Result<Self> {
        require_positive_definite(&a)?;
        require_positive_definite(&b)?;
        let root = a.matfun(MatFun::Sqrt)?;
        let inv_root = a.matfun(MatFun::Power(-0.5))?;
        let w = congruence(&Complex2x2::from_hermitian(&inv_root), &b)?;
        let rule = move |t: f64| {
            let wt = w.matfun(MatFun::Power(t)).expect("midpoint spectrum stays positive");
            congruence(&Complex2x2::from_hermitian(&root), &wt).expect("square root is invertible")
        };
        Self::new(a, b, Box::new(rule), segments)
    }

    /// The geodesic with a smooth one-entry bump (`amplitude * sin^2(pi t)`)
    /// added and every sample floored back into the cone. Vanishes at the
    /// endpoints, so the endpoints are unchanged while the interior provably
    /// leaves the geodesic.
    pub fn perturbed_geodesic(
        a: Hermitian2,
        b: Hermitian2,
        segments: usize,
        entry: MatrixEntry,
        amplitude: f64,
    ) -> Result<Self> {
        let geo = Self::geodesic(a, b, segments)?;
        let inner = geo.rule;
        let rule = move |t: f64| {
            let bump = amplitude * (std::f64::consts::PI * t).sin().powi(2);
            floor_positive(&entry.bump(&inner(t), bump), PATH_EIGENVALUE_FLOOR)
        };
        Self::new(a, b, Box::new(rule), segments)
    }

    pub fn endpoints(&self) -> (Hermitian2, Hermitian2) {
        (self.endpoint_a, self.endpoint_b)
    }

    pub fn segments(&self) -> usize {
        self.segments
    }

    /// Numerical length `integral of || g^{-1/2}(t) g'(t) g^{-1/2}(t) ||_F dt`,
    /// by the midpoint rule with central-difference derivatives at `segments`
    /// uniform parameters. The difference step `0.125/n` keeps the
    /// truncation error an order below the quadrature tolerance on
    /// wide-spectrum endpoints.
    pub fn length(&self) -> Result<f64> {
        let n = self.segments;
        let h = 0.125 / n as f64;
        let mut sum = 0.0;
        for k in 0..n {
            let t = (k as f64 + 0.5) / n as f64;
            let here = (self.rule)(t);
            require_positive_definite(&here)?;
            let fwd = (self.rule)(t + h);
            let bwd = (self.rule)(t - h);
            require_positive_definite(&fwd)?;
            require_positive_definite(&bwd)?;
            let deriv = fwd.sub(&bwd).scale(1.0 / (2.0 * h));
            let inv_root = here.matfun(MatFun::Power(-0.5))?;
            let integrand = congruence(&Complex2x2::from_hermitian(&inv_root), &deriv)?;
            sum += integrand.frobenius_norm();
        }
        Ok(sum / n as f64)
    }
}
