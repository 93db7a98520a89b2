//! Exact arithmetic in quadratic extensions of the rationals.
//!
//! A [`QuadRat`] is a value `x + y*sqrt(D)` with rational `x`, `y` and a
//! squarefree radicand `D`. Radicands are normalized at construction so
//! that equal field elements compare equal componentwise. Negative
//! radicands are accepted; all ring operations are formal in `sqrt(D)`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::sequences::RecurrenceSpec;

/// `v = sf * f^2` with `sf` squarefree (sign kept on `sf`).
fn squarefree_decompose(v: i64) -> (i64, i64) {
    debug_assert!(v != 0);
    let sign = v.signum();
    let mut m = v.abs();
    let mut f = 1i64;
    let mut p = 2i64;
    while p * p <= m {
        while m % (p * p) == 0 {
            m /= p * p;
            f *= p;
        }
        p += 1;
    }
    (sign * m, f)
}

/// Exact integer square root when `v` is a perfect square. The float is
/// only a starting guess; the answer is confirmed by integer squaring.
fn exact_sqrt(v: i64) -> Option<i64> {
    if v < 0 {
        return None;
    }
    let r = (v as f64).sqrt().round() as i64;
    (r.saturating_sub(2)..=r.saturating_add(2)).find(|&c| c >= 0 && c.checked_mul(c) == Some(v))
}

fn is_perfect_square(v: i64) -> bool {
    exact_sqrt(v).is_some()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadRat {
    radicand: i64,
    x: BigRational,
    y: BigRational,
}

impl QuadRat {
    /// `x + y*sqrt(d)`. The square part of `d` is folded into `y`;
    /// `d = 0` or a perfect square is rejected.
    pub fn new(d: i64, x: BigRational, y: BigRational) -> Result<Self> {
        if d == 0 || is_perfect_square(d) {
            return Err(Error::DegenerateRadicand(d));
        }
        let (sf, f) = squarefree_decompose(d);
        Ok(Self {
            radicand: sf,
            x,
            y: y * BigRational::from_integer(f.into()),
        })
    }

    pub fn from_integers(d: i64, x: i64, y: i64) -> Result<Self> {
        Self::new(
            d,
            BigRational::from_integer(x.into()),
            BigRational::from_integer(y.into()),
        )
    }

    /// A rational value carried in the field with radicand `d`.
    pub fn rational(d: i64, x: BigRational) -> Result<Self> {
        Self::new(d, x, BigRational::zero())
    }

    pub fn radicand(&self) -> i64 {
        self.radicand
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.x
    }

    pub fn irrational_coeff(&self) -> &BigRational {
        &self.y
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    /// Exact integer value, when the element is a rational integer.
    pub fn as_integer(&self) -> Option<BigInt> {
        if self.y.is_zero() && self.x.is_integer() {
            Some(self.x.to_integer())
        } else {
            None
        }
    }

    fn check_same_field(&self, other: &Self) -> Result<()> {
        if self.radicand != other.radicand {
            return Err(Error::MixedRadicands(self.radicand, other.radicand));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_field(other)?;
        Ok(Self {
            radicand: self.radicand,
            x: &self.x + &other.x,
            y: &self.y + &other.y,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_same_field(other)?;
        Ok(Self {
            radicand: self.radicand,
            x: &self.x - &other.x,
            y: &self.y - &other.y,
        })
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_same_field(other)?;
        let d = BigRational::from_integer(self.radicand.into());
        Ok(Self {
            radicand: self.radicand,
            x: &self.x * &other.x + &self.y * &other.y * &d,
            y: &self.x * &other.y + &self.y * &other.x,
        })
    }

    pub fn neg(&self) -> Self {
        Self {
            radicand: self.radicand,
            x: -self.x.clone(),
            y: -self.y.clone(),
        }
    }

    pub fn conj(&self) -> Self {
        Self {
            radicand: self.radicand,
            x: self.x.clone(),
            y: -self.y.clone(),
        }
    }

    /// `x^2 - D y^2`; multiplicative, and zero only at zero since `D` is
    /// not a rational square.
    pub fn norm(&self) -> BigRational {
        let d = BigRational::from_integer(self.radicand.into());
        &self.x * &self.x - &self.y * &self.y * d
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroDivision(self.radicand));
        }
        let n = self.norm();
        debug_assert!(!n.is_zero());
        let c = self.conj();
        Ok(Self {
            radicand: self.radicand,
            x: c.x / &n,
            y: c.y / &n,
        })
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut k = e.unsigned_abs();
        let mut acc = Self::rational(self.radicand, BigRational::one())?;
        let mut sq = base;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&sq)?;
            }
            k >>= 1;
            if k > 0 {
                sq = sq.mul(&sq)?;
            }
        }
        Ok(acc)
    }

    /// Scale by a rational.
    pub fn scale(&self, c: &BigRational) -> Self {
        Self {
            radicand: self.radicand,
            x: &self.x * c,
            y: &self.y * c,
        }
    }
}

impl std::fmt::Display for QuadRat {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} + {}*sqrt({})", self.x, self.y, self.radicand)
    }
}

/// Roots of `X^2 - r X - s`, kept exact. A positive square discriminant
/// collapses to a rational pair instead of a `QuadRat`.
#[derive(Debug, Clone, PartialEq)]
pub enum RootPair {
    Quadratic {
        alpha: QuadRat,
        beta: QuadRat,
    },
    Rational {
        alpha: BigRational,
        beta: BigRational,
    },
}

fn discriminant(r: i64, s: i64) -> Result<i64> {
    let delta = (r as i128) * (r as i128) + 4 * (s as i128);
    if delta == 0 {
        return Err(Error::ZeroDiscriminant { r, s });
    }
    i64::try_from(delta).map_err(|_| Error::DiscriminantOverflow { r, s })
}

/// Roots `(r +- sqrt(r^2+4s)) / 2` of the characteristic polynomial, with
/// `alpha` carrying the `+` branch.
pub fn lucas_roots(r: i64, s: i64) -> Result<RootPair> {
    let delta = discriminant(r, s)?;
    let half = BigRational::new(BigInt::one(), 2.into());
    let r_half = BigRational::new(r.into(), 2.into());
    if let Some(root) = exact_sqrt(delta) {
        let root = BigRational::from_integer(root.into());
        return Ok(RootPair::Rational {
            alpha: &r_half + &half * &root,
            beta: &r_half - &half * &root,
        });
    }
    let (sf, f) = squarefree_decompose(delta);
    let y = BigRational::new(f.into(), 2.into());
    let alpha = QuadRat::new(sf, r_half.clone(), y.clone())?;
    let beta = QuadRat::new(sf, r_half, -y)?;
    Ok(RootPair::Quadratic { alpha, beta })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinetKind {
    /// Seed (0, 1): coefficients `(1/(alpha-beta), -1/(alpha-beta))`.
    First,
    /// Seed (2, r): coefficients `(1, 1)`.
    Second,
}

/// Closed-form evaluation of the order-2 family with parameters `(r, s)`.
/// The assembled expression is always a rational integer; the square-root
/// component cancels exactly.
pub fn binet_term(r: i64, s: i64, kind: BinetKind, n: u64) -> Result<BigInt> {
    match lucas_roots(r, s)? {
        RootPair::Quadratic { alpha, beta } => {
            let an = alpha.pow(n as i64)?;
            let bn = beta.pow(n as i64)?;
            let value = match kind {
                BinetKind::First => {
                    let diff = an.sub(&bn)?;
                    let denom = alpha.sub(&beta)?;
                    diff.mul(&denom.inv()?)?
                }
                BinetKind::Second => an.add(&bn)?,
            };
            value.as_integer().ok_or_else(|| {
                Error::InvalidSpec(format!(
                    "binet value for (r,s)=({r},{s}), n={n} is not integral: {value}"
                ))
            })
        }
        RootPair::Rational { alpha, beta } => {
            let an = pow_rational(&alpha, n);
            let bn = pow_rational(&beta, n);
            let value = match kind {
                BinetKind::First => (an - bn) / (alpha - beta),
                BinetKind::Second => an + bn,
            };
            if value.is_integer() {
                Ok(value.to_integer())
            } else {
                Err(Error::InvalidSpec(format!(
                    "binet value for (r,s)=({r},{s}), n={n} is not integral: {value}"
                )))
            }
        }
    }
}

fn pow_rational(v: &BigRational, mut e: u64) -> BigRational {
    let mut acc = BigRational::one();
    let mut sq = v.clone();
    while e > 0 {
        if e & 1 == 1 {
            acc *= &sq;
        }
        e >>= 1;
        if e > 0 {
            sq = sq.clone() * sq;
        }
    }
    acc
}

/// The golden-ratio power `phi^n`, asserted against the exact expansion
/// `F(n) phi + F(n-1)` before being returned. Requires `n >= 1`.
pub fn phi_power(n: u64) -> Result<QuadRat> {
    if n == 0 {
        return Err(Error::InvalidRange("phi_power requires n >= 1".into()));
    }
    let half = BigRational::new(BigInt::one(), 2.into());
    let phi = QuadRat::new(5, half.clone(), half)?;
    let p = phi.pow(n as i64)?;
    let fib = crate::sequences::fibonacci();
    let f_n = fib.term(n as i64).expect("non-negative index");
    let f_prev = fib.term(n as i64 - 1).expect("non-negative index");
    // F(n) phi + F(n-1) = (F(n)/2 + F(n-1)) + (F(n)/2) sqrt(5)
    let want_y = BigRational::new(f_n.clone(), 2.into());
    let want_x = &want_y + BigRational::from_integer(f_prev);
    assert_eq!(p.rational_part(), &want_x, "phi^{n} expansion drifted");
    assert_eq!(p.irrational_coeff(), &want_y, "phi^{n} expansion drifted");
    Ok(p)
}

/// The window constant `sum_{i=0}^{window-1} alpha^(i-offset)` evaluated
/// exactly in the field of `alpha`. Requires a positive non-square
/// discriminant; the caller inspects whether the result is a positive
/// integer.
pub fn closed_form_constant(r: i64, s: i64, window: u32, offset: i64) -> Result<QuadRat> {
    let delta = discriminant(r, s)?;
    if delta < 0 || is_perfect_square(delta) {
        return Err(Error::NotRealQuadratic { r, s, delta });
    }
    let RootPair::Quadratic { alpha, .. } = lucas_roots(r, s)? else {
        unreachable!("non-square discriminant yields quadratic roots");
    };
    geometric_window(&alpha, window, offset)
}

/// `sum_{i=0}^{window-1} alpha^(i-offset)` for an arbitrary quadratic
/// `alpha`; shared by the real and the formal (negative-radicand) cases.
pub fn geometric_window(alpha: &QuadRat, window: u32, offset: i64) -> Result<QuadRat> {
    let mut acc = alpha.pow(-offset)?;
    let mut total = QuadRat::rational(alpha.radicand(), BigRational::zero())?;
    for _ in 0..window {
        total = total.add(&acc)?;
        acc = acc.mul(alpha)?;
    }
    Ok(total)
}

/// Convenience: `alpha` root for `(r, s)` when the discriminant is not a
/// perfect square (any sign).
pub fn alpha_root(r: i64, s: i64) -> Result<QuadRat> {
    match lucas_roots(r, s)? {
        RootPair::Quadratic { alpha, .. } => Ok(alpha),
        RootPair::Rational { .. } => {
            let delta = discriminant(r, s)?;
            Err(Error::NotRealQuadratic { r, s, delta })
        }
    }
}

/// Binet coefficients agree with the iterative sequence for this spec.
pub fn matching_spec(r: i64, s: i64, kind: BinetKind) -> Result<RecurrenceSpec> {
    match kind {
        BinetKind::First => crate::sequences::lucas_u(r, s),
        BinetKind::Second => crate::sequences::lucas_v(r, s),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn construction_normalizes_square_parts() {
        let a = QuadRat::from_integers(8, 1, 1).unwrap(); // 1 + sqrt(8) = 1 + 2 sqrt(2)
        assert_eq!(a.radicand(), 2);
        assert_eq!(*a.irrational_coeff(), rat(2, 1));
        assert!(QuadRat::from_integers(9, 1, 1).is_err());
        assert!(QuadRat::from_integers(0, 1, 1).is_err());
        let g = QuadRat::from_integers(-12, 0, 1).unwrap();
        assert_eq!(g.radicand(), -3);
        assert_eq!(*g.irrational_coeff(), rat(2, 1));
    }

    #[test]
    fn silver_unit_and_its_conjugate() {
        let a = QuadRat::from_integers(2, 1, 1).unwrap();
        let b = QuadRat::from_integers(2, 1, -1).unwrap();
        let prod = a.mul(&b).unwrap();
        assert_eq!(prod, QuadRat::from_integers(2, -1, 0).unwrap());
        assert_eq!(a.pow(2).unwrap(), QuadRat::from_integers(2, 3, 2).unwrap());
        // b = -1/a
        assert_eq!(a.inv().unwrap().neg(), b);
    }

    #[test]
    fn golden_ratio_inverse() {
        let phi = QuadRat::new(5, rat(1, 2), rat(1, 2)).unwrap();
        let psi = QuadRat::new(5, rat(1, 2), rat(-1, 2)).unwrap();
        // psi = -1/phi and phi^-1 = phi - 1
        assert_eq!(phi.inv().unwrap(), psi.neg());
        let one = QuadRat::rational(5, rat(1, 1)).unwrap();
        assert_eq!(phi.inv().unwrap(), phi.sub(&one).unwrap());
        assert_eq!(phi.mul(&psi).unwrap(), one.neg());
    }

    #[test]
    fn mixed_radicands_rejected() {
        let a = QuadRat::from_integers(2, 1, 1).unwrap();
        let b = QuadRat::from_integers(5, 1, 1).unwrap();
        assert!(matches!(a.add(&b), Err(Error::MixedRadicands(2, 5))));
        assert!(matches!(a.mul(&b), Err(Error::MixedRadicands(2, 5))));
    }

    #[test]
    fn inversion_of_zero_rejected() {
        let z = QuadRat::rational(2, rat(0, 1)).unwrap();
        assert!(matches!(z.inv(), Err(Error::ZeroDivision(2))));
    }

    #[test]
    fn roots_of_seeded_families() {
        match lucas_roots(2, 1).unwrap() {
            RootPair::Quadratic { alpha, beta } => {
                assert_eq!(alpha, QuadRat::from_integers(2, 1, 1).unwrap());
                assert_eq!(beta, QuadRat::from_integers(2, 1, -1).unwrap());
            }
            _ => panic!("expected quadratic roots"),
        }
        match lucas_roots(1, 1).unwrap() {
            RootPair::Quadratic { alpha, .. } => {
                assert_eq!(alpha.radicand(), 5);
                assert_eq!(*alpha.rational_part(), rat(1, 2));
                assert_eq!(*alpha.irrational_coeff(), rat(1, 2));
            }
            _ => panic!("expected quadratic roots"),
        }
        match lucas_roots(3, -1).unwrap() {
            RootPair::Quadratic { alpha, beta } => {
                // alpha + beta = 3, alpha * beta = 1
                let sum = alpha.add(&beta).unwrap();
                let prod = alpha.mul(&beta).unwrap();
                assert_eq!(sum.as_integer().unwrap(), BigInt::from(3));
                assert_eq!(prod.as_integer().unwrap(), BigInt::from(1));
            }
            _ => panic!("expected quadratic roots"),
        }
        // perfect-square discriminant degenerates to rationals
        match lucas_roots(3, -2).unwrap() {
            RootPair::Rational { alpha, beta } => {
                assert_eq!(alpha, rat(2, 1));
                assert_eq!(beta, rat(1, 1));
            }
            _ => panic!("expected rational roots"),
        }
        assert!(matches!(
            lucas_roots(2, -1),
            Err(Error::ZeroDiscriminant { .. })
        ));
    }

    #[test]
    fn binet_matches_iteration_samples() {
        assert_eq!(
            binet_term(2, 1, BinetKind::First, 5).unwrap(),
            BigInt::from(29)
        );
        assert_eq!(
            binet_term(1, 1, BinetKind::Second, 4).unwrap(),
            BigInt::from(7)
        );
        assert_eq!(
            binet_term(7, 3, BinetKind::First, 0).unwrap(),
            BigInt::from(0)
        );
        // rational-root family: U(n) = 2^n - 1
        assert_eq!(
            binet_term(3, -2, BinetKind::First, 6).unwrap(),
            BigInt::from(63)
        );
    }

    #[test]
    fn phi_powers() {
        let p1 = phi_power(1).unwrap();
        assert_eq!(*p1.rational_part(), rat(1, 2));
        assert_eq!(*p1.irrational_coeff(), rat(1, 2));
        let p2 = phi_power(2).unwrap();
        // phi^2 = phi + 1
        assert_eq!(*p2.rational_part(), rat(3, 2));
        assert_eq!(*p2.irrational_coeff(), rat(1, 2));
        let p10 = phi_power(10).unwrap();
        // 55 phi + 34
        assert_eq!(*p10.rational_part(), rat(123, 2));
        assert_eq!(*p10.irrational_coeff(), rat(55, 2));
        assert!(phi_power(0).is_err());
    }

    #[test]
    fn closed_form_window_constants() {
        let c = closed_form_constant(2, 1, 8, 4).unwrap();
        assert_eq!(c.as_integer().unwrap(), BigInt::from(24));
        let c = closed_form_constant(2, 1, 4, 2).unwrap();
        assert_eq!(c.as_integer().unwrap(), BigInt::from(4));
        let c = closed_form_constant(1, 1, 6, 4).unwrap();
        assert_eq!(c.as_integer().unwrap(), BigInt::from(4));
        let c = closed_form_constant(2, 1, 4, 1).unwrap();
        assert!(!c.irrational_coeff().is_zero());
        assert!(matches!(
            closed_form_constant(1, -1, 3, 1),
            Err(Error::NotRealQuadratic { .. })
        ));
        assert!(matches!(
            closed_form_constant(3, -2, 3, 1),
            Err(Error::NotRealQuadratic { .. })
        ));
    }

    #[test]
    fn norms_multiply() {
        let a = QuadRat::new(13, rat(3, 7), rat(-2, 5)).unwrap();
        let b = QuadRat::new(13, rat(-1, 2), rat(9, 4)).unwrap();
        let lhs = a.mul(&b).unwrap().norm();
        let rhs = a.norm() * b.norm();
        assert_eq!(lhs, rhs);
    }
}
