//! Exact scalar and series arithmetic: arbitrary-precision rationals, sparse
//! polynomials in the symbols `b`, `c`, `g`, integer partitions, and truncated
//! power series generic over the coefficient ring.

pub mod bivar;
pub mod partition;
pub mod poly;
pub mod series;

pub use bivar::BivPoly;
pub use partition::{multiset_permutations, partitions_of, Partition};
pub use poly::{binom_poly, PolyBCG, Var};
pub use series::TruncSeries;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Reduced fraction with positive denominator; both invariants are maintained
/// by the underlying representation on every operation.
pub type Rational = num_rational::BigRational;

pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rat_zero() -> Rational {
    <Rational as Zero>::zero()
}

pub fn rat_one() -> Rational {
    <Rational as One>::one()
}

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn factorial(n: u32) -> BigInt {
    let mut acc = BigInt::one();
    for k in 2..=n as u64 {
        acc *= k;
    }
    acc
}

/// Integer binomial coefficient C(n, k).
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for r in 0..k {
        acc = acc * (n - r) / (r + 1);
    }
    acc
}

/// Generalized binomial coefficient C(alpha, k) = alpha (alpha-1) ... (alpha-k+1) / k!.
pub fn binom_rat(alpha: &Rational, k: u32) -> Rational {
    let mut acc = rat_one();
    for r in 0..k {
        acc *= alpha - rat_int(r as i64);
    }
    acc / Rational::from_integer(factorial(k))
}

/// Formats a rational as `num` when integral and `num/den` otherwise.
pub fn format_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Inverse of [`format_rational`]; also accepts explicit `num/1`.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let mut it = s.splitn(2, '/');
    let num: BigInt = it.next()?.trim().parse().ok()?;
    let den: BigInt = match it.next() {
        Some(d) => d.trim().parse().ok()?,
        None => BigInt::one(),
    };
    if den.is_zero() {
        return None;
    }
    Some(Rational::new(num, den))
}

/// Commutative ring with a rational scalar action; the coefficient contract
/// shared by the series code and the completion engine.
pub trait CoeffRing: Clone + PartialEq + std::fmt::Debug + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    fn from_rational(q: &Rational) -> Self;
    /// Scalar action of the rationals.
    fn scale(&self, q: &Rational) -> Self;
}

impl CoeffRing for Rational {
    fn zero() -> Self {
        num_traits::Zero::zero()
    }
    fn one() -> Self {
        num_traits::One::one()
    }
    fn is_zero(&self) -> bool {
        num_traits::Zero::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn from_rational(q: &Rational) -> Self {
        q.clone()
    }
    fn scale(&self, q: &Rational) -> Self {
        self * q
    }
}

/// Positive gcd, gcd(0, n) = n.
pub fn gcd_u(a: u64, b: u64) -> u64 {
    num_integer::gcd(a, b)
}

pub fn is_integer(q: &Rational) -> bool {
    q.denom().is_one()
}

pub fn rational_to_u64(q: &Rational) -> Option<u64> {
    if !is_integer(q) || q.is_negative() {
        return None;
    }
    use num_traits::ToPrimitive;
    q.numer().to_u64()
}
