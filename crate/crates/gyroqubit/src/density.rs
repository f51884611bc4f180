//! Qubit density matrices and the gyrogroup they form.
//!
//! A trace-1 Hermitian 2x2 matrix is parameterized by a Bloch vector `v`:
//!
//! ```text
//! rho_v = (1/2) [ 1 + z   x - iy ]   =   (1/2) (I + x sx + y sy + z sz)
//!               [ x + iy  1 - z  ]
//! ```
//!
//! with eigenvalues `(1 +- |v|)/2` and determinant `(1 - |v|^2)/4`. Interior
//! Bloch vectors give invertible (mixed) states; those form a gyrogroup
//! under
//!
//! ```text
//! rho_u (.) rho_v = (rho_u^{1/2} rho_v rho_u^{1/2}) / tr(rho_u^{1/2} rho_v rho_u^{1/2})
//! ```
//!
//! whose Bloch image is exactly Einstein addition of the underlying vectors.
//! [`DensityMatrix`] stores the Bloch vector canonically, so the unit trace
//! and Hermiticity cannot decay over long chains of `odot`; matrix views are
//! derived on demand.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gyrovector::{gamma, BlochVector};
use crate::hermitian2::{congruence, Complex2x2, Hermitian2};

/// Representation gate: Bloch vectors may sit on the boundary (pure states)
/// up to this rounding allowance, but gyrogroup operations stay interior.
pub const MAX_BLOCH_NORM: f64 = 1.0 + 1e-12;

/// The three Pauli matrices as Hermitian constants.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PauliVector {
    pub x: Hermitian2,
    pub y: Hermitian2,
    pub z: Hermitian2,
}

pub const PAULI: PauliVector = PauliVector {
    x: Hermitian2::new(0.0, 0.0, 1.0, 0.0),
    y: Hermitian2::new(0.0, 0.0, 0.0, -1.0),
    z: Hermitian2::new(1.0, -1.0, 0.0, 0.0),
};

/// A qubit state stored canonically as its Bloch vector.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DensityMatrix {
    bloch: BlochVector,
}

impl DensityMatrix {
    /// The maximally mixed state `(1/2) I`, the gyrogroup identity.
    pub fn maximally_mixed() -> Self {
        Self { bloch: BlochVector::zero() }
    }

    /// Build a state from a Bloch vector in the closed ball.
    pub fn from_bloch(v: BlochVector) -> Result<Self> {
        let norm = v.norm();
        if norm > MAX_BLOCH_NORM {
            return Err(Error::NormExceedsOne(norm));
        }
        Ok(Self { bloch: v })
    }

    /// Recover the Bloch vector of a trace-1 positive semidefinite matrix.
    ///
    /// Inverts the Pauli expansion through `v_k = tr(rho s_k)`, which on the
    /// stored parameters reads `(2 re12, -2 im12, a11 - a22)`.
    pub fn to_bloch(m: &Hermitian2) -> Result<BlochVector> {
        let trace = m.trace();
        if (trace - 1.0).abs() > 1e-12 {
            return Err(Error::NotTraceOne(trace));
        }
        let min_eig = m.eig().lambda2;
        if min_eig < -1e-12 {
            return Err(Error::NotPositive(min_eig));
        }
        Ok(BlochVector::new(2.0 * m.re12, -2.0 * m.im12, m.a11 - m.a22))
    }

    /// Build a state from an explicit matrix (trace-1, positive
    /// semidefinite).
    pub fn from_matrix(m: &Hermitian2) -> Result<Self> {
        Self::from_bloch(Self::to_bloch(m)?)
    }

    pub fn bloch(&self) -> BlochVector {
        self.bloch
    }

    /// Matrix view `(1/2)(I + v . sigma)`.
    pub fn matrix(&self) -> Hermitian2 {
        Hermitian2::new(
            0.5 * (1.0 + self.bloch.z),
            0.5 * (1.0 - self.bloch.z),
            0.5 * self.bloch.x,
            -0.5 * self.bloch.y,
        )
    }

    /// Invertible (mixed) states are the interior of the ball.
    pub fn is_invertible(&self) -> bool {
        self.bloch.is_interior()
    }

    fn require_invertible(&self) -> Result<()> {
        if self.is_invertible() {
            Ok(())
        } else {
            Err(Error::BoundaryVector {
                norm: self.bloch.norm(),
                limit: crate::gyrovector::INTERIOR_LIMIT,
            })
        }
    }

    /// Closed-form spectral data `((1 + |v|)/2, (1 - |v|)/2, (1 - |v|^2)/4)`.
    pub fn spectrum(&self) -> (f64, f64, f64) {
        let r = self.bloch.norm();
        ((1.0 + r) / 2.0, (1.0 - r) / 2.0, (1.0 - r * r) / 4.0)
    }

    /// Closed-form positive square root
    /// `sqrt(gamma/(1 + gamma)) (rho + I/(2 gamma))`.
    pub fn sqrt(&self) -> Result<Hermitian2> {
        self.require_invertible()?;
        let g = gamma(&self.bloch)?;
        let coeff = (g / (1.0 + g)).sqrt();
        Ok(self.matrix().add(&Hermitian2::identity().scale(0.5 / g)).scale(coeff))
    }

    /// Gyrogroup composition: congruence by the square root of `self`, then
    /// trace normalization.
    ///
    /// Deliberately computed in matrix form rather than through the Bloch
    /// image of Einstein addition, so the two routes stay independently
    /// comparable.
    pub fn odot(&self, other: &Self) -> Result<Self> {
        self.require_invertible()?;
        other.require_invertible()?;
        let root = Complex2x2::from_hermitian(&self.sqrt()?);
        let star = congruence(&root, &other.matrix())?;
        let m = star.scale(1.0 / star.trace());
        Ok(Self { bloch: BlochVector::new(2.0 * m.re12, -2.0 * m.im12, m.a11 - m.a22) })
    }

    /// `tr(rho_u rho_v) = (1 + u.v)/2`, the normalizer of `odot`.
    pub fn trace_product(&self, other: &Self) -> f64 {
        0.5 * (1.0 + self.bloch.dot(&other.bloch))
    }

    /// Gyrogroup inverse, `det(rho) rho^{-1}`.
    ///
    /// For a 2x2 matrix `det(rho) rho^{-1}` is the adjugate (swap the
    /// diagonal, negate the off-diagonal), which on Bloch parameters is
    /// exactly negation. Stored that way, the identity
    /// `inverse(rho_u) = rho_{-u}` holds bit-exactly.
    pub fn inverse(&self) -> Result<Self> {
        self.require_invertible()?;
        Ok(Self { bloch: self.bloch.neg() })
    }

    /// The single-gamma coefficient `1/(4 gamma) rho^{-1}` that circulates
    /// in print for the inverse state. Its trace is `gamma`, not 1, so it is
    /// not a density matrix for any nonzero Bloch vector; exposed so the
    /// discrepancy against [`DensityMatrix::inverse`] can be demonstrated.
    pub fn inverse_printed_form(&self) -> Result<Hermitian2> {
        self.require_invertible()?;
        let m = self.matrix();
        let det = m.det();
        let adjugate = Hermitian2::new(m.a22, m.a11, -m.re12, -m.im12);
        let g = gamma(&self.bloch)?;
        Ok(adjugate.scale(1.0 / (4.0 * g * det)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gyrovector::einstein_add;
    use proptest::prelude::*;

    fn close(a: f64, b: f64, tol: f64) {
        assert!((a - b).abs() <= tol, "{a} vs {b} (tol {tol})");
    }

    #[test]
    fn pauli_identities() {
        for s in [PAULI.x, PAULI.y, PAULI.z] {
            close(s.trace(), 0.0, 0.0);
            let sq = Complex2x2::from_hermitian(&s).mul(&Complex2x2::from_hermitian(&s));
            assert!(sq.max_abs_diff(&Complex2x2::identity()) <= 1e-16);
        }
        // Pairwise anticommutation: sx sy + sy sx = 0, and cyclic.
        let pairs = [(PAULI.x, PAULI.y), (PAULI.y, PAULI.z), (PAULI.z, PAULI.x)];
        for (a, b) in pairs {
            let ab = Complex2x2::from_hermitian(&a).mul(&Complex2x2::from_hermitian(&b));
            let ba = Complex2x2::from_hermitian(&b).mul(&Complex2x2::from_hermitian(&a));
            for i in 0..2 {
                for j in 0..2 {
                    assert!((ab.m[i][j] + ba.m[i][j]).norm() <= 1e-16);
                }
            }
        }
    }

    #[test]
    fn from_bloch_examples() {
        let mixed = DensityMatrix::maximally_mixed().matrix();
        assert_eq!(mixed, Hermitian2::diagonal(0.5, 0.5));

        let up = DensityMatrix::from_bloch(BlochVector::new(0.0, 0.0, 0.5)).unwrap();
        assert_eq!(up.matrix(), Hermitian2::diagonal(0.75, 0.25));

        let x6 = DensityMatrix::from_bloch(BlochVector::new(0.6, 0.0, 0.0)).unwrap();
        assert_eq!(x6.matrix(), Hermitian2::new(0.5, 0.5, 0.3, 0.0));

        // Pauli expansion agrees with the direct parametrization.
        let v = BlochVector::new(0.2, -0.4, 0.1);
        let rho = DensityMatrix::from_bloch(v).unwrap().matrix();
        let expansion = Hermitian2::identity()
            .add(&PAULI.x.scale(v.x))
            .add(&PAULI.y.scale(v.y))
            .add(&PAULI.z.scale(v.z))
            .scale(0.5);
        assert!(rho.max_abs_diff(&expansion) <= 1e-16);
    }

    #[test]
    fn from_bloch_rejects_outside_ball() {
        let v = BlochVector::new(0.8, 0.8, 0.0);
        assert!(matches!(DensityMatrix::from_bloch(v), Err(Error::NormExceedsOne(_))));
        // The boundary itself is representable.
        assert!(DensityMatrix::from_bloch(BlochVector::new(1.0, 0.0, 0.0)).is_ok());
    }

    #[test]
    fn to_bloch_examples_and_errors() {
        assert_eq!(
            DensityMatrix::to_bloch(&Hermitian2::diagonal(0.5, 0.5)).unwrap(),
            BlochVector::zero()
        );
        assert_eq!(
            DensityMatrix::to_bloch(&Hermitian2::diagonal(0.75, 0.25)).unwrap(),
            BlochVector::new(0.0, 0.0, 0.5)
        );
        assert!(matches!(
            DensityMatrix::to_bloch(&Hermitian2::diagonal(0.75, 0.35)),
            Err(Error::NotTraceOne(_))
        ));
        assert!(matches!(
            DensityMatrix::to_bloch(&Hermitian2::diagonal(1.25, -0.25)),
            Err(Error::NotPositive(_))
        ));
    }

    #[test]
    fn spectrum_examples() {
        let mixed = DensityMatrix::maximally_mixed();
        assert_eq!(mixed.spectrum(), (0.5, 0.5, 0.25));

        let rho = DensityMatrix::from_bloch(BlochVector::new(0.0, 0.0, 0.6)).unwrap();
        let (lp, lm, det) = rho.spectrum();
        close(lp, 0.8, 1e-15);
        close(lm, 0.2, 1e-15);
        close(det, 0.16, 1e-15);
        // det rho = 1/(4 gamma^2).
        let g = gamma(&rho.bloch()).unwrap();
        close(det, 1.0 / (4.0 * g * g), 1e-15);
    }

    #[test]
    fn sqrt_worked_example() {
        let rho = DensityMatrix::from_bloch(BlochVector::new(0.0, 0.0, 0.6)).unwrap();
        let root = rho.sqrt().unwrap();
        close(root.a11, 0.894_427_190_999_915_9, 1e-14);
        close(root.a22, 0.447_213_595_499_957_9, 1e-14);
        close(root.re12, 0.0, 1e-16);

        let mixed = DensityMatrix::maximally_mixed().sqrt().unwrap();
        close(mixed.a11, std::f64::consts::FRAC_1_SQRT_2, 1e-15);
        close(mixed.a22, std::f64::consts::FRAC_1_SQRT_2, 1e-15);
    }

    #[test]
    fn sqrt_rejects_pure_states() {
        let pure = DensityMatrix::from_bloch(BlochVector::new(0.0, 1.0, 0.0)).unwrap();
        assert!(matches!(pure.sqrt(), Err(Error::BoundaryVector { .. })));
    }

    #[test]
    fn odot_worked_examples() {
        let mixed = DensityMatrix::maximally_mixed();
        let rho = DensityMatrix::from_bloch(BlochVector::new(0.3, -0.1, 0.4)).unwrap();
        let out = mixed.odot(&rho).unwrap();
        assert!(out.bloch().max_abs_diff(&rho.bloch()) <= 1e-15);

        let a = DensityMatrix::from_bloch(BlochVector::new(0.5, 0.0, 0.0)).unwrap();
        let b = DensityMatrix::from_bloch(BlochVector::new(0.0, 0.5, 0.0)).unwrap();
        let ab = a.odot(&b).unwrap();
        let want = BlochVector::new(0.5, 0.433_012_701_892_219_3, 0.0);
        assert!(ab.bloch().max_abs_diff(&want) <= 1e-13);
        close(ab.matrix().trace(), 1.0, 0.0);
    }

    #[test]
    fn trace_product_examples() {
        let a = DensityMatrix::from_bloch(BlochVector::new(0.6, 0.0, 0.0)).unwrap();
        let b = DensityMatrix::from_bloch(BlochVector::new(0.0, 0.7, 0.0)).unwrap();
        close(a.trace_product(&b), 0.5, 0.0);
        close(a.trace_product(&a), 0.68, 1e-15);
        // tr(rho_{-u} rho_v) = (1 - u.v)/2.
        let am = a.inverse().unwrap();
        close(am.trace_product(&b), 0.5, 0.0);
        close(am.trace_product(&a), (1.0 - 0.36) / 2.0, 1e-15);
    }

    #[test]
    fn inverse_is_exact_bloch_negation() {
        let u = BlochVector::new(0.0, 0.0, 0.6);
        let rho = DensityMatrix::from_bloch(u).unwrap();
        let inv = rho.inverse().unwrap();
        assert_eq!(inv.bloch(), u.neg());
        assert_eq!(inv.matrix(), Hermitian2::diagonal(0.2, 0.8));
        // Composing with the inverse lands on the identity state.
        let prod = rho.odot(&inv).unwrap();
        assert!(prod.bloch().norm() <= 1e-13);
    }

    #[test]
    fn printed_inverse_form_breaks_unit_trace() {
        let rho = DensityMatrix::from_bloch(BlochVector::new(0.0, 0.0, 0.6)).unwrap();
        let printed = rho.inverse_printed_form().unwrap();
        // diag(0.25, 1): trace 1.25 = gamma, off by a factor gamma from a state.
        close(printed.a11, 0.25, 1e-15);
        close(printed.a22, 1.0, 1e-15);
        close(printed.trace(), 1.25, 1e-15);
        let corrected = rho.inverse().unwrap().matrix();
        close(corrected.trace(), 1.0, 0.0);
    }

    prop_compose! {
        fn arb_interior(cap: f64)(
            dx in -1.0f64..1.0,
            dy in -1.0f64..1.0,
            dz in -1.0f64..1.0,
            r in 0.0f64..1.0,
        ) -> BlochVector {
            let n = (dx * dx + dy * dy + dz * dz).sqrt();
            if n < 1e-6 {
                BlochVector::zero()
            } else {
                BlochVector::new(dx, dy, dz).scale(cap * r / n)
            }
        }
    }

    proptest! {
        #[test]
        fn bloch_roundtrip(v in arb_interior(0.999)) {
            let rho = DensityMatrix::from_bloch(v).unwrap();
            let back = DensityMatrix::to_bloch(&rho.matrix()).unwrap();
            prop_assert!(back.max_abs_diff(&v) <= 1e-15);
        }

        #[test]
        fn sqrt_squares_back(v in arb_interior(0.99)) {
            let rho = DensityMatrix::from_bloch(v).unwrap();
            let root = rho.sqrt().unwrap();
            let sq = Complex2x2::from_hermitian(&root)
                .mul(&Complex2x2::from_hermitian(&root))
                .hermitian_part();
            prop_assert!(sq.max_abs_diff(&rho.matrix()) <= 1e-13);
        }

        #[test]
        fn sqrt_agrees_with_the_spectral_square_root(v in arb_interior(0.99)) {
            let rho = DensityMatrix::from_bloch(v).unwrap();
            let closed_form = rho.sqrt().unwrap();
            let spectral = rho.matrix().matfun(crate::hermitian2::MatFun::Sqrt).unwrap();
            prop_assert!(closed_form.max_abs_diff(&spectral) <= 1e-12);
        }

        #[test]
        fn odot_matches_einstein_addition(u in arb_interior(0.95), v in arb_interior(0.95)) {
            let lhs = DensityMatrix::from_bloch(einstein_add(&u, &v).unwrap()).unwrap();
            let rhs = DensityMatrix::from_bloch(u).unwrap()
                .odot(&DensityMatrix::from_bloch(v).unwrap()).unwrap();
            prop_assert!(lhs.matrix().max_abs_diff(&rhs.matrix()) <= 1e-12);
        }

        #[test]
        fn state_composition_is_gyroassociative(
            a in arb_interior(0.9),
            b in arb_interior(0.9),
            c in arb_interior(0.9),
        ) {
            // The gyrogroup laws transport through Bloch storage.
            let sa = DensityMatrix::from_bloch(a).unwrap();
            let sb = DensityMatrix::from_bloch(b).unwrap();
            let sc = DensityMatrix::from_bloch(c).unwrap();
            let lhs = sa.odot(&sb.odot(&sc).unwrap()).unwrap();
            let corrected = crate::gyrovector::gyration(&a, &b).unwrap().apply(&c);
            let rhs = sa.odot(&sb).unwrap()
                .odot(&DensityMatrix::from_bloch(corrected).unwrap()).unwrap();
            prop_assert!(lhs.bloch().max_abs_diff(&rhs.bloch()) <= 1e-11);
        }

        #[test]
        fn trace_product_matches_explicit_product(u in arb_interior(0.999), v in arb_interior(0.999)) {
            let a = DensityMatrix::from_bloch(u).unwrap();
            let b = DensityMatrix::from_bloch(v).unwrap();
            let prod = Complex2x2::from_hermitian(&a.matrix())
                .mul(&Complex2x2::from_hermitian(&b.matrix()));
            let tr = (prod.m[0][0] + prod.m[1][1]).re;
            prop_assert!((a.trace_product(&b) - tr).abs() <= 1e-14);
        }
    }
}
