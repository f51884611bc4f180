//! Closed-form 2x2 complex Hermitian kernel.
//!
//! A Hermitian 2x2 matrix is stored as four reals
//!
//! ```text
//!     [ a11          re12 + i*im12 ]
//!     [ re12 - i*im12         a22  ]
//! ```
//!
//! so Hermiticity holds by construction and cannot drift. Eigenvalues come
//! from the stable closed form `trace/2 ± hypot((a11 - a22)/2, |a12|)`,
//! matrix functions are applied on the spectrum, and congruence transforms
//! go through a general complex 2x2 type. Everything here is a pure function
//! over `Copy` values; concurrent use needs no synchronization.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Underflow guard: eigenvalues at or below this are treated as zero when a
/// matrix function requires a strictly positive spectrum.
pub const POSITIVE_SPECTRUM_FLOOR: f64 = 1e-300;

/// Hermitian 2x2 matrix in four real parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Hermitian2 {
    pub a11: f64,
    pub a22: f64,
    pub re12: f64,
    pub im12: f64,
}

/// General complex 2x2 matrix; used for congruence factors and eigenframes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Complex2x2 {
    /// Row-major entries.
    pub m: [[Complex64; 2]; 2],
}

/// Ordered spectral decomposition of a [`Hermitian2`].
///
/// `frame` holds unit eigenvector columns; `frame * diag(lambda1, lambda2) * frame^H`
/// reconstructs the input.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Spectrum2 {
    /// Larger eigenvalue.
    pub lambda1: f64,
    /// Smaller eigenvalue.
    pub lambda2: f64,
    /// Unitary eigenvector frame (column `j` belongs to `lambda{j+1}`).
    pub frame: Complex2x2,
}

/// Scalar function applied to the spectrum by [`Hermitian2::matfun`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MatFun {
    Sqrt,
    Log,
    Inverse,
    Power(f64),
}

impl Hermitian2 {
    pub const fn new(a11: f64, a22: f64, re12: f64, im12: f64) -> Self {
        Self { a11, a22, re12, im12 }
    }

    pub const fn diagonal(a11: f64, a22: f64) -> Self {
        Self::new(a11, a22, 0.0, 0.0)
    }

    pub const fn identity() -> Self {
        Self::diagonal(1.0, 1.0)
    }

    pub fn trace(&self) -> f64 {
        self.a11 + self.a22
    }

    pub fn det(&self) -> f64 {
        self.a11 * self.a22 - (self.re12 * self.re12 + self.im12 * self.im12)
    }

    /// Magnitude of the off-diagonal entry `a12`.
    pub fn off_abs(&self) -> f64 {
        self.re12.hypot(self.im12)
    }

    pub fn add(&self, rhs: &Self) -> Self {
        Self::new(
            self.a11 + rhs.a11,
            self.a22 + rhs.a22,
            self.re12 + rhs.re12,
            self.im12 + rhs.im12,
        )
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        Self::new(
            self.a11 - rhs.a11,
            self.a22 - rhs.a22,
            self.re12 - rhs.re12,
            self.im12 - rhs.im12,
        )
    }

    pub fn scale(&self, s: f64) -> Self {
        Self::new(s * self.a11, s * self.a22, s * self.re12, s * self.im12)
    }

    /// Largest absolute difference over the four stored parameters.
    pub fn max_abs_diff(&self, rhs: &Self) -> f64 {
        let d = self.sub(rhs);
        d.a11.abs().max(d.a22.abs()).max(d.re12.abs()).max(d.im12.abs())
    }

    /// Frobenius norm, `sqrt(a11^2 + a22^2 + 2|a12|^2)`; equals the l2 norm
    /// of the eigenvalue pair.
    pub fn frobenius_norm(&self) -> f64 {
        (self.a11 * self.a11
            + self.a22 * self.a22
            + 2.0 * (self.re12 * self.re12 + self.im12 * self.im12))
            .sqrt()
    }

    /// Closed-form spectral decomposition.
    ///
    /// The discriminant is evaluated as `hypot((a11 - a22)/2, |a12|)` to stay
    /// accurate near degenerate spectra. A spectrum degenerate within
    /// `1e-14 * |trace|` gets the identity frame (any unitary frame is valid
    /// there; the identity is canonical).
    pub fn eig(&self) -> Spectrum2 {
        let mid = 0.5 * (self.a11 + self.a22);
        let half_gap = 0.5 * (self.a11 - self.a22);
        let off = self.off_abs();
        let disc = half_gap.hypot(off);
        let lambda1 = mid + disc;
        let lambda2 = mid - disc;

        let frame = if disc <= 1e-14 * self.trace().abs() {
            Complex2x2::identity()
        } else if off == 0.0 {
            if self.a11 >= self.a22 {
                Complex2x2::identity()
            } else {
                Complex2x2::swap()
            }
        } else {
            // Eigenvector for lambda1 is (a12, lambda1 - a11); the second
            // component is computed cancellation-free from
            // disc^2 - half_gap^2 = off^2.
            let q = if half_gap >= 0.0 {
                off * off / (disc + half_gap)
            } else {
                disc - half_gap
            };
            let p = Complex64::new(self.re12, self.im12);
            let n = off.hypot(q);
            let pn = p / n;
            let qn = q / n;
            Complex2x2 {
                m: [
                    [pn, Complex64::new(-qn, 0.0)],
                    [Complex64::new(qn, 0.0), pn.conj()],
                ],
            }
        };

        Spectrum2 { lambda1, lambda2, frame }
    }

    /// Apply a scalar function to the spectrum and reassemble.
    ///
    /// `Log`, `Inverse`, and non-integer `Power` require a positive definite
    /// input; `Sqrt` requires positive semidefinite. Violations return
    /// [`Error::NonPositiveSpectrum`].
    pub fn matfun(&self, f: MatFun) -> Result<Hermitian2> {
        let s = self.eig();
        let (f1, f2) = match f {
            MatFun::Sqrt => {
                // Allow rounding-level negative eigenvalues and clamp them.
                if s.lambda2 < -1e-12 * s.lambda1.abs().max(1.0) {
                    return Err(Error::NonPositiveSpectrum(s.lambda2));
                }
                (s.lambda1.max(0.0).sqrt(), s.lambda2.max(0.0).sqrt())
            }
            MatFun::Log => {
                if s.lambda2 <= POSITIVE_SPECTRUM_FLOOR {
                    return Err(Error::NonPositiveSpectrum(s.lambda2));
                }
                (s.lambda1.ln(), s.lambda2.ln())
            }
            MatFun::Inverse => {
                if s.lambda2 <= POSITIVE_SPECTRUM_FLOOR {
                    return Err(Error::NonPositiveSpectrum(s.lambda2));
                }
                (1.0 / s.lambda1, 1.0 / s.lambda2)
            }
            MatFun::Power(t) => {
                if t.fract() != 0.0 {
                    if s.lambda2 <= POSITIVE_SPECTRUM_FLOOR {
                        return Err(Error::NonPositiveSpectrum(s.lambda2));
                    }
                } else if t < 0.0 && s.lambda2.abs() <= POSITIVE_SPECTRUM_FLOOR {
                    return Err(Error::NonPositiveSpectrum(s.lambda2));
                }
                (s.lambda1.powf(t), s.lambda2.powf(t))
            }
        };
        Ok(s.frame.mul(&Complex2x2::diagonal(f1, f2)).mul(&s.frame.adjoint()).hermitian_part())
    }
}

impl Spectrum2 {
    /// `frame * diag(lambda) * frame^H`, for reconstruction checks.
    pub fn reassemble(&self) -> Hermitian2 {
        self.frame
            .mul(&Complex2x2::diagonal(self.lambda1, self.lambda2))
            .mul(&self.frame.adjoint())
            .hermitian_part()
    }
}

impl Complex2x2 {
    pub fn identity() -> Self {
        Self::diagonal(1.0, 1.0)
    }

    /// The permutation [[0, 1], [1, 0]].
    pub fn swap() -> Self {
        Self {
            m: [
                [Complex64::ZERO, Complex64::ONE],
                [Complex64::ONE, Complex64::ZERO],
            ],
        }
    }

    pub fn diagonal(d1: f64, d2: f64) -> Self {
        Self {
            m: [
                [Complex64::new(d1, 0.0), Complex64::ZERO],
                [Complex64::ZERO, Complex64::new(d2, 0.0)],
            ],
        }
    }

    pub fn from_hermitian(h: &Hermitian2) -> Self {
        Self {
            m: [
                [Complex64::new(h.a11, 0.0), Complex64::new(h.re12, h.im12)],
                [Complex64::new(h.re12, -h.im12), Complex64::new(h.a22, 0.0)],
            ],
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let a = &self.m;
        let b = &rhs.m;
        let mut out = [[Complex64::ZERO; 2]; 2];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, entry) in row.iter_mut().enumerate() {
                *entry = a[i][0] * b[0][j] + a[i][1] * b[1][j];
            }
        }
        Self { m: out }
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self {
            m: [
                [self.m[0][0].conj(), self.m[1][0].conj()],
                [self.m[0][1].conj(), self.m[1][1].conj()],
            ],
        }
    }

    pub fn det(&self) -> Complex64 {
        self.m[0][0] * self.m[1][1] - self.m[0][1] * self.m[1][0]
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self {
            m: [
                [s * self.m[0][0], s * self.m[0][1]],
                [s * self.m[1][0], s * self.m[1][1]],
            ],
        }
    }

    /// Inverse via the adjugate; [`Error::SingularFactor`] below the
    /// underflow guard.
    pub fn inverse(&self) -> Result<Self> {
        let det = self.det();
        if det.norm() <= POSITIVE_SPECTRUM_FLOOR {
            return Err(Error::SingularFactor(det.norm()));
        }
        let inv = Complex64::ONE / det;
        Ok(Self {
            m: [
                [inv * self.m[1][1], -inv * self.m[0][1]],
                [-inv * self.m[1][0], inv * self.m[0][0]],
            ],
        })
    }

    /// Project onto the Hermitian parameters, symmetrizing the off-diagonal
    /// pair and discarding rounding-level imaginary parts on the diagonal.
    pub fn hermitian_part(&self) -> Hermitian2 {
        Hermitian2::new(
            self.m[0][0].re,
            self.m[1][1].re,
            0.5 * (self.m[0][1].re + self.m[1][0].re),
            0.5 * (self.m[0][1].im - self.m[1][0].im),
        )
    }

    pub fn max_abs_diff(&self, rhs: &Self) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..2 {
            for j in 0..2 {
                worst = worst.max((self.m[i][j] - rhs.m[i][j]).norm());
            }
        }
        worst
    }
}

/// Congruence transform `X * A * X^H`.
///
/// Preserves positive definiteness for invertible `X`; rejects factors whose
/// determinant magnitude sits below the underflow guard.
pub fn congruence(x: &Complex2x2, a: &Hermitian2) -> Result<Hermitian2> {
    let det = x.det().norm();
    if det <= POSITIVE_SPECTRUM_FLOOR {
        return Err(Error::SingularFactor(det));
    }
    Ok(x.mul(&Complex2x2::from_hermitian(a)).mul(&x.adjoint()).hermitian_part())
}
