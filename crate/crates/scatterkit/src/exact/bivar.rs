//! Dense bivariate polynomials truncated at a total degree, generic over the
//! coefficient ring. The completion engine works with these as elements of
//! k[x1, x2] modulo total degree > n.

use super::{CoeffRing, Rational, TruncSeries};

/// Coefficients of x1^a x2^b for a + b <= order, stored on a square grid.
#[derive(Clone, PartialEq, Debug)]
pub struct BivPoly<R: CoeffRing> {
    order: usize,
    grid: Vec<R>,
}

impl<R: CoeffRing> BivPoly<R> {
    pub fn zero(order: usize) -> Self {
        Self {
            order,
            grid: vec![R::zero(); (order + 1) * (order + 1)],
        }
    }

    pub fn one(order: usize) -> Self {
        let mut p = Self::zero(order);
        p.grid[0] = R::one();
        p
    }

    pub fn monomial(order: usize, exp: (usize, usize), coef: R) -> Self {
        assert!(exp.0 + exp.1 <= order, "monomial beyond truncation");
        let mut p = Self::zero(order);
        p.grid[exp.0 * (order + 1) + exp.1] = coef;
        p
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    fn idx(&self, a: usize, b: usize) -> usize {
        a * (self.order + 1) + b
    }

    pub fn coeff(&self, a: usize, b: usize) -> &R {
        &self.grid[self.idx(a, b)]
    }

    pub fn set_coeff(&mut self, a: usize, b: usize, value: R) {
        assert!(a + b <= self.order, "coefficient beyond truncation");
        let i = self.idx(a, b);
        self.grid[i] = value;
    }

    pub fn add_coeff(&mut self, a: usize, b: usize, value: &R) {
        assert!(a + b <= self.order, "coefficient beyond truncation");
        let i = self.idx(a, b);
        self.grid[i] = self.grid[i].add(value);
    }

    fn check_order(&self, rhs: &Self, op: &str) {
        assert!(
            self.order == rhs.order,
            "{op} on mixed truncation orders {} and {}",
            self.order,
            rhs.order
        );
    }

    /// Nonzero terms in lexicographic (a, b) order.
    pub fn iter_nonzero(&self) -> impl Iterator<Item = ((usize, usize), &R)> {
        let n = self.order;
        self.grid.iter().enumerate().filter_map(move |(i, c)| {
            if c.is_zero() {
                None
            } else {
                Some(((i / (n + 1), i % (n + 1)), c))
            }
        })
    }

    pub fn is_one(&self) -> bool {
        self.grid[0] == R::one() && self.grid[1..].iter().all(R::is_zero)
    }

    /// Smallest total degree with a nonzero term, ignoring the constant.
    pub fn min_degree_above_constant(&self) -> Option<usize> {
        self.iter_nonzero()
            .filter(|((a, b), _)| a + b > 0)
            .map(|((a, b), _)| a + b)
            .min()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        self.check_order(rhs, "add");
        Self {
            order: self.order,
            grid: self
                .grid
                .iter()
                .zip(&rhs.grid)
                .map(|(x, y)| x.add(y))
                .collect(),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.check_order(rhs, "sub");
        Self {
            order: self.order,
            grid: self
                .grid
                .iter()
                .zip(&rhs.grid)
                .map(|(x, y)| x.sub(y))
                .collect(),
        }
    }

    pub fn scale(&self, q: &Rational) -> Self {
        Self {
            order: self.order,
            grid: self.grid.iter().map(|x| x.scale(q)).collect(),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        self.check_order(rhs, "mul");
        let n = self.order;
        let mut out = Self::zero(n);
        for ((a1, b1), c1) in self.iter_nonzero() {
            for ((a2, b2), c2) in rhs.iter_nonzero() {
                if a1 + a2 + b1 + b2 > n {
                    continue;
                }
                out.add_coeff(a1 + a2, b1 + b2, &c1.mul(c2));
            }
        }
        out
    }

    /// Multiplication by a univariate series placed along the direction
    /// `dir`: rhs = sum_l s_l x^(l dir). Cheaper than building the full grid.
    pub fn mul_dir(&self, series: &TruncSeries<R>, dir: (usize, usize)) -> Self {
        let n = self.order;
        let step = dir.0 + dir.1;
        assert!(step > 0, "direction must be nonzero");
        let mut out = Self::zero(n);
        for ((a, b), c) in self.iter_nonzero() {
            for (l, s) in series.coeffs().iter().enumerate() {
                if s.is_zero() {
                    continue;
                }
                let (ea, eb) = (a + l * dir.0, b + l * dir.1);
                if ea + eb > n {
                    break;
                }
                out.add_coeff(ea, eb, &c.mul(s));
            }
        }
        out
    }

    /// Lifts a univariate series onto the grid along `dir`.
    pub fn from_series(series: &TruncSeries<R>, dir: (usize, usize), order: usize) -> Self {
        Self::one(order).mul_dir(series, dir)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat_int, Rational};

    fn x1(n: usize) -> BivPoly<Rational> {
        BivPoly::monomial(n, (1, 0), rat_int(1))
    }

    fn x2(n: usize) -> BivPoly<Rational> {
        BivPoly::monomial(n, (0, 1), rat_int(1))
    }

    #[test]
    fn ring_laws_and_truncation() {
        let n = 4;
        let p = BivPoly::one(n).add(&x1(n)).add(&x2(n).scale(&rat_int(3)));
        let q = BivPoly::one(n).add(&x1(n).mul(&x2(n)));
        assert_eq!(p.mul(&q), q.mul(&p));
        assert_eq!(p.mul(&BivPoly::one(n)), p);
        assert_eq!(p.sub(&p), BivPoly::zero(n));
        // (1 + x1)^5 truncated at 4 drops the x1^5 term.
        let mut pow = BivPoly::one(n);
        let f = BivPoly::one(n).add(&x1(n));
        for _ in 0..5 {
            pow = pow.mul(&f);
        }
        assert_eq!(pow.coeff(4, 0), &rat_int(5));
        assert_eq!(pow.coeff(3, 0), &rat_int(10));
        assert!(pow.iter_nonzero().all(|((a, b), _)| a + b <= n));
    }

    #[test]
    fn mul_dir_agrees_with_grid_mul() {
        let n = 6;
        let p = BivPoly::one(n)
            .add(&x1(n).mul(&x2(n)).scale(&rat_int(2)))
            .add(&x2(n).scale(&rat_int(-1)));
        // series 1 + 3 z + z^2 along dir (1, 2)
        let s = TruncSeries::from_coeffs(vec![rat_int(1), rat_int(3), rat_int(1)], 2);
        let lifted = BivPoly::from_series(&s, (1, 2), n);
        assert_eq!(p.mul_dir(&s, (1, 2)), p.mul(&lifted));
        assert_eq!(lifted.coeff(1, 2), &rat_int(3));
        assert_eq!(lifted.coeff(2, 4), &rat_int(1));
    }

    #[test]
    fn min_degree_tracks_defect_order() {
        let n = 5;
        let mut p = BivPoly::one(n);
        assert_eq!(p.min_degree_above_constant(), None);
        assert!(p.is_one());
        p.add_coeff(2, 1, &rat_int(7));
        p.add_coeff(1, 1, &rat_int(1));
        assert_eq!(p.min_degree_above_constant(), Some(2));
        assert!(!p.is_one());
    }
}
