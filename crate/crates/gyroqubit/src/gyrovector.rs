//! Einstein velocity addition on the unit ball of R^3 and its gyrogroup
//! structure.
//!
//! Velocities are dimensionless (units of the speed of light) and live in
//! the open unit ball. The composition law is
//!
//! ```text
//! u (+) v = 1/(1 + u.v) * { u + v/gamma_u + (gamma_u/(1 + gamma_u)) (u.v) u }
//! ```
//!
//! with `gamma_u = 1/sqrt(1 - |u|^2)`. The law is neither commutative nor
//! associative; both failures are repaired by the Thomas gyration
//! `gyr[u, v]`, materialized here as a 3x3 rotation matrix. The module also
//! carries the 4x4 Lorentz boost that induces the same addition, scalar
//! multiplication along rapidity lines, and the extension of the addition to
//! the closed ball (where boundary vectors absorb: `u (+) v = u` whenever
//! `|u| = 1`).
//!
//! All operations are pure functions over `Copy` values.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Interior gate: gyrogroup operations accept vectors with norm at most
/// `1 - 1e-12`. Beyond it the Lorentz factor exceeds ~7e5 and the addition
/// formula loses its footing.
pub const INTERIOR_LIMIT: f64 = 1.0 - 1e-12;

/// Probe scale for materializing a gyration as a matrix: the defining
/// relation is applied to `PROBE * e_j`. Any interior scale is exact in
/// exact arithmetic; this one is fixed for reproducibility.
const PROBE: f64 = 1e-3;

/// A point of the (closed) unit ball: velocity in units of c, or a Bloch
/// vector.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(from = "[f64; 3]", into = "[f64; 3]")]
pub struct BlochVector {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl From<[f64; 3]> for BlochVector {
    fn from(a: [f64; 3]) -> Self {
        Self::new(a[0], a[1], a[2])
    }
}

impl From<BlochVector> for [f64; 3] {
    fn from(v: BlochVector) -> Self {
        [v.x, v.y, v.z]
    }
}

impl std::str::FromStr for BlochVector {
    type Err = String;

    /// Parses the CLI vector syntax `x,y,z` (no spaces).
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let parts: Vec<&str> = s.split(',').collect();
        if parts.len() != 3 {
            return Err(format!("expected three comma-separated components, got {:?}", s));
        }
        let mut c = [0.0; 3];
        for (slot, part) in c.iter_mut().zip(&parts) {
            *slot = part
                .parse::<f64>()
                .map_err(|e| format!("bad component {part:?}: {e}"))?;
        }
        Ok(Self::new(c[0], c[1], c[2]))
    }
}

impl BlochVector {
    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Self { x, y, z }
    }

    pub const fn zero() -> Self {
        Self::new(0.0, 0.0, 0.0)
    }

    pub fn dot(&self, rhs: &Self) -> f64 {
        self.x * rhs.x + self.y * rhs.y + self.z * rhs.z
    }

    pub fn norm(&self) -> f64 {
        self.dot(self).sqrt()
    }

    pub fn neg(&self) -> Self {
        Self::new(-self.x, -self.y, -self.z)
    }

    pub fn add(&self, rhs: &Self) -> Self {
        Self::new(self.x + rhs.x, self.y + rhs.y, self.z + rhs.z)
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        Self::new(self.x - rhs.x, self.y - rhs.y, self.z - rhs.z)
    }

    pub fn scale(&self, s: f64) -> Self {
        Self::new(s * self.x, s * self.y, s * self.z)
    }

    /// Largest absolute component difference.
    pub fn max_abs_diff(&self, rhs: &Self) -> f64 {
        let d = self.sub(rhs);
        d.x.abs().max(d.y.abs()).max(d.z.abs())
    }

    /// True when the vector clears the interior gate.
    pub fn is_interior(&self) -> bool {
        self.norm() <= INTERIOR_LIMIT
    }

    fn require_interior(&self) -> Result<()> {
        let norm = self.norm();
        if norm > INTERIOR_LIMIT {
            Err(Error::BoundaryVector { norm, limit: INTERIOR_LIMIT })
        } else {
            Ok(())
        }
    }
}

/// Nonnegative hyperbolic angle `atanh |u|`; velocities along a fixed
/// direction add linearly in this parameter.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Rapidity {
    pub phi: f64,
}

/// 3x3 rotation produced by a gyration.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Rotation3 {
    /// Row-major entries.
    pub m: [[f64; 3]; 3],
}

impl Rotation3 {
    pub fn identity() -> Self {
        Self { m: [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]] }
    }

    pub fn apply(&self, v: &BlochVector) -> BlochVector {
        let a = [v.x, v.y, v.z];
        let mut out = [0.0; 3];
        for (o, row) in out.iter_mut().zip(&self.m) {
            *o = row[0] * a[0] + row[1] * a[1] + row[2] * a[2];
        }
        BlochVector::new(out[0], out[1], out[2])
    }

    pub fn transpose(&self) -> Self {
        let mut out = [[0.0; 3]; 3];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, entry) in row.iter_mut().enumerate() {
                *entry = self.m[j][i];
            }
        }
        Self { m: out }
    }

    pub fn det(&self) -> f64 {
        let m = &self.m;
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    }

    pub fn max_abs_diff(&self, rhs: &Self) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..3 {
            for j in 0..3 {
                worst = worst.max((self.m[i][j] - rhs.m[i][j]).abs());
            }
        }
        worst
    }

    /// Largest entry of `R^T R - I`.
    pub fn orthogonality_residual(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..3 {
            for j in 0..3 {
                let mut s = 0.0;
                for row in &self.m {
                    s += row[i] * row[j];
                }
                let want = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((s - want).abs());
            }
        }
        worst
    }
}

/// 4x4 Lorentz boost, time row and column first. Symmetric by construction;
/// the zero velocity gives the identity.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Boost4 {
    /// Row-major entries.
    pub m: [[f64; 4]; 4],
}

impl Boost4 {
    pub fn identity() -> Self {
        let mut m = [[0.0; 4]; 4];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = 1.0;
        }
        Self { m }
    }

    pub fn apply(&self, four: &[f64; 4]) -> [f64; 4] {
        let mut out = [0.0; 4];
        for (o, row) in out.iter_mut().zip(&self.m) {
            *o = row.iter().zip(four).map(|(a, b)| a * b).sum();
        }
        out
    }

    pub fn max_abs_diff(&self, rhs: &Self) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..4 {
            for j in 0..4 {
                worst = worst.max((self.m[i][j] - rhs.m[i][j]).abs());
            }
        }
        worst
    }
}

fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

/// `1 + u.v` in one compensated pass, products made exact through FMA.
///
/// The plain expression collapses to `1/gamma^2` when `v` approaches the
/// inverse of `u`, and rounding it in f64 costs `eps * gamma^2` relative
/// error, fatal for gyrations of near-boundary vectors. Compensation keeps
/// the relative error at machine level for any interior arguments.
fn one_plus_dot(u: &BlochVector, v: &BlochVector) -> f64 {
    let mut hi = 1.0;
    let mut lo = 0.0;
    for (a, b) in [(u.x, v.x), (u.y, v.y), (u.z, v.z)] {
        let prod = a * b;
        let prod_err = a.mul_add(b, -prod);
        let (sum, sum_err) = two_sum(hi, prod);
        hi = sum;
        lo += sum_err + prod_err;
    }
    hi + lo
}

/// `1 - |u|^2`, compensated.
fn one_minus_norm_sq(u: &BlochVector) -> f64 {
    one_plus_dot(u, &u.neg())
}

/// Lorentz factor `1/sqrt(1 - |u|^2)`.
pub fn gamma(u: &BlochVector) -> Result<f64> {
    u.require_interior()?;
    Ok(gamma_unchecked(u))
}

fn gamma_unchecked(u: &BlochVector) -> f64 {
    1.0 / one_minus_norm_sq(u).sqrt()
}

/// Einstein addition of two interior vectors.
pub fn einstein_add(u: &BlochVector, v: &BlochVector) -> Result<BlochVector> {
    u.require_interior()?;
    v.require_interior()?;
    Ok(add_interior(u, v))
}

// Evaluated through p = u + v:
//
//   u (+) v = [ p/gamma + (gamma/(1+gamma)) (u.p) u ] / (1 + u.v),
//   u.p = (1 + u.v) - (1 - |u|^2).
//
// Substituting |u|^2 = (gamma^2 - 1)/gamma^2 recovers the usual three-term
// expression, but unlike it, every term here scales with p, so nothing of
// order one is left to cancel when v approaches the inverse of u. With the
// compensated scalars above, the result stays relatively accurate even
// where the sum is 1e-10 of the operands.
fn add_interior(u: &BlochVector, v: &BlochVector) -> BlochVector {
    let d_u = one_minus_norm_sq(u);
    let denom = one_plus_dot(u, v);
    let g = 1.0 / d_u.sqrt();
    let u_dot_p = denom - d_u;
    let p = u.add(v);
    p.scale(1.0 / g)
        .add(&u.scale((g / (1.0 + g)) * u_dot_p))
        .scale(1.0 / denom)
}

/// Einstein addition extended to the closed ball.
///
/// A boundary first argument absorbs: `u (+) v = u` (returned bit-exactly),
/// which also covers the antipodal pair, so the map is total. Interior
/// arguments reduce to [`einstein_add`].
pub fn einstein_add_closed(u: &BlochVector, v: &BlochVector) -> BlochVector {
    if u.norm() >= INTERIOR_LIMIT {
        *u
    } else {
        add_interior(u, v)
    }
}

/// Thomas gyration `gyr[u, v]` as a rotation matrix.
///
/// No closed form is used: the defining relation
/// `gyr[u, v] c = -(u (+) v) (+) (u (+) (v (+) c))` is applied to the three
/// basis vectors scaled to `PROBE` and extended linearly (gyrations are
/// linear orthogonal maps; linearity is exercised by the test suites rather
/// than assumed silently).
///
/// The chain runs in double-double arithmetic. The final addition divides
/// by `1 - |u (+) v|^2`, which shrinks like `gamma^-2`; intermediates
/// rounded to bare f64 would poison that quotient with `eps * gamma^2`
/// relative error (five to seven digits near the sampling cap) while the
/// extended intermediates keep the whole matrix at working precision.
pub fn gyration(u: &BlochVector, v: &BlochVector) -> Result<Rotation3> {
    u.require_interior()?;
    v.require_interior()?;
    let ud = dd::Vec3::from_bloch(u);
    let vd = dd::Vec3::from_bloch(v);
    let minus_uv = dd::add_interior(&ud, &vd).neg();
    let mut images = [BlochVector::zero(); 3];
    for (j, image) in images.iter_mut().enumerate() {
        let mut c = BlochVector::zero();
        match j {
            0 => c.x = PROBE,
            1 => c.y = PROBE,
            _ => c.z = PROBE,
        }
        let cd = dd::Vec3::from_bloch(&c);
        *image = dd::add_interior(&minus_uv, &dd::add_interior(&ud, &dd::add_interior(&vd, &cd)))
            .to_bloch()
            .scale(1.0 / PROBE);
    }
    Ok(Rotation3 {
        m: [
            [images[0].x, images[1].x, images[2].x],
            [images[0].y, images[1].y, images[2].y],
            [images[0].z, images[1].z, images[2].z],
        ],
    })
}

/// Scalar multiplication `t . u = tanh(t atanh |u|) u/|u|`, with `0` for
/// `t = 0` or `u = 0`.
pub fn scalar_mul(t: f64, u: &BlochVector) -> Result<BlochVector> {
    u.require_interior()?;
    let r = u.norm();
    if t == 0.0 || r == 0.0 {
        return Ok(BlochVector::zero());
    }
    let s = (t * r.atanh()).tanh();
    Ok(u.scale(s / r))
}

/// The 4x4 Lorentz boost of an interior velocity.
///
/// Applying it to `(1; v)` yields `(t; t (u (+) v))` with
/// `t = gamma_u (1 + u.v)`.
pub fn lorentz_boost(u: &BlochVector) -> Result<Boost4> {
    u.require_interior()?;
    let g = gamma_unchecked(u);
    let k = g * g / (1.0 + g);
    let a = [u.x, u.y, u.z];
    let mut m = [[0.0; 4]; 4];
    m[0][0] = g;
    for i in 0..3 {
        m[0][i + 1] = g * a[i];
        m[i + 1][0] = g * a[i];
        for j in 0..3 {
            m[i + 1][j + 1] = if i == j { 1.0 } else { 0.0 } + k * a[i] * a[j];
        }
    }
    Ok(Boost4 { m })
}

/// Einstein addition extracted from a boost: returns `(t, u (+) v)`.
pub fn boost_compose(u: &BlochVector, v: &BlochVector) -> Result<(f64, BlochVector)> {
    let b = lorentz_boost(u)?;
    let out = b.apply(&[1.0, v.x, v.y, v.z]);
    let t = out[0];
    Ok((t, BlochVector::new(out[1] / t, out[2] / t, out[3] / t)))
}

/// Restricted Einstein addition of scalars, `(s + t)/(1 + s t)`.
pub fn restricted_add(s: f64, t: f64) -> Result<f64> {
    if s.abs() >= 1.0 {
        return Err(Error::OutOfRange(s));
    }
    if t.abs() >= 1.0 {
        return Err(Error::OutOfRange(t));
    }
    Ok((s + t) / (1.0 + s * t))
}

/// Rapidity `atanh |u|` of an interior vector.
pub fn rapidity_of(u: &BlochVector) -> Result<Rapidity> {
    u.require_interior()?;
    Ok(Rapidity { phi: u.norm().atanh() })
}

/// Double-double (roughly 32-digit) kernels for the gyration chain.
///
/// Representation: an unevaluated sum `hi + lo` with `|lo| <= ulp(hi)/2`.
/// The algorithms are the standard error-free-transformation kernels
/// (Dekker/Knuth two-sum, FMA two-product, three-term division, one-step
/// square-root refinement).
mod dd {
    use super::BlochVector;

    #[derive(Debug, Clone, Copy)]
    pub struct Dd {
        hi: f64,
        lo: f64,
    }

    const ONE: Dd = Dd { hi: 1.0, lo: 0.0 };

    fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
        let s = a + b;
        (s, b - (s - a))
    }

    fn two_sum(a: f64, b: f64) -> (f64, f64) {
        let s = a + b;
        let bb = s - a;
        (s, (a - (s - bb)) + (b - bb))
    }

    fn two_prod(a: f64, b: f64) -> (f64, f64) {
        let p = a * b;
        (p, a.mul_add(b, -p))
    }

    impl Dd {
        pub fn from_f64(x: f64) -> Self {
            Self { hi: x, lo: 0.0 }
        }

        pub fn to_f64(self) -> f64 {
            self.hi + self.lo
        }

        pub fn neg(self) -> Self {
            Self { hi: -self.hi, lo: -self.lo }
        }

        pub fn add(self, rhs: Self) -> Self {
            let (s1, e1) = two_sum(self.hi, rhs.hi);
            let (s2, e2) = two_sum(self.lo, rhs.lo);
            let (s1, e1) = quick_two_sum(s1, e1 + s2);
            let (hi, lo) = quick_two_sum(s1, e1 + e2);
            Self { hi, lo }
        }

        pub fn sub(self, rhs: Self) -> Self {
            self.add(rhs.neg())
        }

        pub fn mul(self, rhs: Self) -> Self {
            let (p, e) = two_prod(self.hi, rhs.hi);
            let e = e + (self.hi * rhs.lo + self.lo * rhs.hi);
            let (hi, lo) = quick_two_sum(p, e);
            Self { hi, lo }
        }

        fn mul_f64(self, rhs: f64) -> Self {
            let (p, e) = two_prod(self.hi, rhs);
            let (hi, lo) = quick_two_sum(p, e + self.lo * rhs);
            Self { hi, lo }
        }

        pub fn div(self, rhs: Self) -> Self {
            let q1 = self.hi / rhs.hi;
            let r = self.sub(rhs.mul_f64(q1));
            let q2 = r.hi / rhs.hi;
            let r = r.sub(rhs.mul_f64(q2));
            let q3 = r.hi / rhs.hi;
            let (hi, lo) = quick_two_sum(q1, q2);
            Self { hi, lo }.add(Self::from_f64(q3))
        }

        pub fn recip(self) -> Self {
            ONE.div(self)
        }

        pub fn sqrt(self) -> Self {
            let s = self.hi.sqrt();
            if s == 0.0 {
                return Self::from_f64(0.0);
            }
            let r = self.sub(Self::from_f64(s).mul(Self::from_f64(s)));
            let (hi, lo) = quick_two_sum(s, r.hi / (2.0 * s));
            Self { hi, lo }
        }
    }

    #[derive(Debug, Clone, Copy)]
    pub struct Vec3 {
        x: Dd,
        y: Dd,
        z: Dd,
    }

    impl Vec3 {
        pub fn from_bloch(v: &BlochVector) -> Self {
            Self { x: Dd::from_f64(v.x), y: Dd::from_f64(v.y), z: Dd::from_f64(v.z) }
        }

        pub fn to_bloch(self) -> BlochVector {
            BlochVector::new(self.x.to_f64(), self.y.to_f64(), self.z.to_f64())
        }

        pub fn neg(&self) -> Self {
            Self { x: self.x.neg(), y: self.y.neg(), z: self.z.neg() }
        }

        fn add(&self, rhs: &Self) -> Self {
            Self { x: self.x.add(rhs.x), y: self.y.add(rhs.y), z: self.z.add(rhs.z) }
        }

        fn scale(&self, s: Dd) -> Self {
            Self { x: self.x.mul(s), y: self.y.mul(s), z: self.z.mul(s) }
        }

        fn dot(&self, rhs: &Self) -> Dd {
            self.x.mul(rhs.x).add(self.y.mul(rhs.y)).add(self.z.mul(rhs.z))
        }
    }

    /// The grouped Einstein addition, in double-double throughout.
    pub fn add_interior(u: &Vec3, v: &Vec3) -> Vec3 {
        let d_u = ONE.sub(u.dot(u));
        let denom = ONE.add(u.dot(v));
        let g = d_u.sqrt().recip();
        let u_dot_p = denom.sub(d_u);
        let p = u.add(v);
        let coeff = g.div(g.add(ONE)).mul(u_dot_p);
        p.scale(g.recip()).add(&u.scale(coeff)).scale(denom.recip())
    }

}
