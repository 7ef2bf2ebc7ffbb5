//! Truncated power series in one variable over a coefficient ring.

use super::{CoeffRing, Rational};

/// Series truncated at a fixed order: coefficients of t^0 .. t^order.
/// Every binary operation requires both operands to carry the same order.
#[derive(Clone, PartialEq, Debug)]
pub struct TruncSeries<R: CoeffRing> {
    coeffs: Vec<R>,
}

impl<R: CoeffRing> TruncSeries<R> {
    pub fn zero(order: usize) -> Self {
        Self {
            coeffs: vec![R::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = R::one();
        s
    }

    /// Pads with zeros up to `order` if fewer coefficients are given.
    pub fn from_coeffs(mut coeffs: Vec<R>, order: usize) -> Self {
        assert!(
            coeffs.len() <= order + 1,
            "got {} coefficients for order {order}",
            coeffs.len()
        );
        coeffs.resize(order + 1, R::zero());
        Self { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> &R {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn set_coeff(&mut self, k: usize, value: R) {
        self.coeffs[k] = value;
    }

    fn check_order(&self, rhs: &Self, op: &str) {
        assert!(
            self.order() == rhs.order(),
            "{op} on mixed truncation orders {} and {}",
            self.order(),
            rhs.order()
        );
    }

    pub fn add(&self, rhs: &Self) -> Self {
        self.check_order(rhs, "add");
        Self {
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.check_order(rhs, "sub");
        Self {
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a.sub(b))
                .collect(),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        self.check_order(rhs, "mul");
        let n = self.order();
        let mut out = Self::zero(n);
        for i in 0..=n {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..=n - i {
                if rhs.coeffs[j].is_zero() {
                    continue;
                }
                out.coeffs[i + j] = out.coeffs[i + j].add(&self.coeffs[i].mul(&rhs.coeffs[j]));
            }
        }
        out
    }

    pub fn scale(&self, q: &Rational) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|a| a.scale(q)).collect(),
        }
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0] == R::one() && self.coeffs[1..].iter().all(R::is_zero)
    }

    /// s^alpha for rational alpha; requires constant term 1.
    /// Computed by the first-order recurrence n f_n = sum_k (alpha k - (n-k)) s_k f_{n-k}.
    pub fn pow_frac(&self, alpha: &Rational) -> Self {
        assert!(
            self.coeffs[0] == R::one(),
            "pow_frac requires constant term 1"
        );
        let n = self.order();
        let mut f = Self::zero(n);
        f.coeffs[0] = R::one();
        for m in 1..=n {
            let mut acc = R::zero();
            for k in 1..=m {
                if self.coeffs[k].is_zero() {
                    continue;
                }
                let w = alpha * super::rat_int(k as i64) - super::rat_int((m - k) as i64);
                acc = acc.add(&self.coeffs[k].mul(&f.coeffs[m - k]).scale(&w));
            }
            f.coeffs[m] = acc.scale(&super::rat(1, m as i64));
        }
        f
    }

    /// Integer power through repeated multiplication (negative via pow_frac).
    pub fn pow_int(&self, e: i64) -> Self {
        if e < 0 {
            return self.pow_frac(&super::rat_int(e));
        }
        let mut acc = Self::one(self.order());
        let mut base = self.clone();
        let mut e = e as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// log s; requires constant term 1.
    pub fn log(&self) -> Self {
        assert!(self.coeffs[0] == R::one(), "log requires constant term 1");
        let n = self.order();
        let mut l = Self::zero(n);
        for m in 1..=n {
            let mut acc = self.coeffs[m].scale(&super::rat_int(m as i64));
            for k in 1..m {
                if l.coeffs[k].is_zero() || self.coeffs[m - k].is_zero() {
                    continue;
                }
                acc = acc.sub(
                    &l.coeffs[k]
                        .mul(&self.coeffs[m - k])
                        .scale(&super::rat_int(k as i64)),
                );
            }
            l.coeffs[m] = acc.scale(&super::rat(1, m as i64));
        }
        l
    }

    /// exp u; requires constant term 0.
    pub fn exp(&self) -> Self {
        assert!(self.coeffs[0].is_zero(), "exp requires constant term 0");
        let n = self.order();
        let mut e = Self::zero(n);
        e.coeffs[0] = R::one();
        for m in 1..=n {
            let mut acc = R::zero();
            for k in 1..=m {
                if self.coeffs[k].is_zero() {
                    continue;
                }
                acc = acc.add(
                    &self.coeffs[k]
                        .mul(&e.coeffs[m - k])
                        .scale(&super::rat_int(k as i64)),
                );
            }
            e.coeffs[m] = acc.scale(&super::rat(1, m as i64));
        }
        e
    }
}
