//! Sparse exact polynomials in the three symbols `b`, `c`, `g`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::One;

use super::{factorial, rat_one, rat_zero, CoeffRing, Rational};

/// Exponent triple (deg b, deg c, deg g); `BTreeMap` keys give lex order b > c > g.
pub type Exp = (u32, u32, u32);

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Var {
    B,
    C,
    G,
}

/// Polynomial in Q[b, c, g]; zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct PolyBCG {
    terms: BTreeMap<Exp, Rational>,
}

impl PolyBCG {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(rat_one())
    }

    pub fn constant(q: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if q != rat_zero() {
            terms.insert((0, 0, 0), q);
        }
        Self { terms }
    }

    pub fn var(v: Var) -> Self {
        Self::monomial(
            match v {
                Var::B => (1, 0, 0),
                Var::C => (0, 1, 0),
                Var::G => (0, 0, 1),
            },
            rat_one(),
        )
    }

    pub fn monomial(exp: Exp, coef: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if coef != rat_zero() {
            terms.insert(exp, coef);
        }
        Self { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exp, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, exp: Exp) -> Rational {
        self.terms.get(&exp).cloned().unwrap_or_else(rat_zero)
    }

    fn insert_add(&mut self, exp: Exp, coef: Rational) {
        if coef == rat_zero() {
            return;
        }
        match self.terms.entry(exp) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coef);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get() + &coef;
                if sum == rat_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (exp, coef) in &rhs.terms {
            out.insert_add(*exp, coef.clone());
        }
        out
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (exp, coef) in &rhs.terms {
            out.insert_add(*exp, -coef);
        }
        out
    }

    pub fn neg(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let mut out = Self::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                out.insert_add((e1.0 + e2.0, e1.1 + e2.1, e1.2 + e2.2), c1 * c2);
            }
        }
        out
    }

    pub fn scale(&self, q: &Rational) -> Self {
        if *q == rat_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(e, c)| (*e, c * q)).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn eval(&self, b: &Rational, c: &Rational, g: &Rational) -> Rational {
        let mut acc = rat_zero();
        let pow_cache = |base: &Rational, e: u32| -> Rational {
            let mut p = rat_one();
            for _ in 0..e {
                p *= base;
            }
            p
        };
        for (exp, coef) in &self.terms {
            acc += coef * pow_cache(b, exp.0) * pow_cache(c, exp.1) * pow_cache(g, exp.2);
        }
        acc
    }

    /// Degree in one variable; zero polynomial reports 0.
    pub fn degree(&self, v: Var) -> u32 {
        self.terms
            .keys()
            .map(|e| match v {
                Var::B => e.0,
                Var::C => e.1,
                Var::G => e.2,
            })
            .max()
            .unwrap_or(0)
    }

    /// Splits into coefficients of powers of g (each part has deg g = 0).
    pub fn split_by_g(&self) -> BTreeMap<u32, PolyBCG> {
        let mut out: BTreeMap<u32, PolyBCG> = BTreeMap::new();
        for (exp, coef) in &self.terms {
            out.entry(exp.2)
                .or_default()
                .insert_add((exp.0, exp.1, 0), coef.clone());
        }
        out
    }

    /// Substitutes c -> b and g -> b, returning the coefficients of the
    /// resulting univariate polynomial in b (index = power).
    pub fn collapse_to_b(&self) -> Vec<Rational> {
        let deg = self
            .terms
            .keys()
            .map(|e| e.0 + e.1 + e.2)
            .max()
            .unwrap_or(0) as usize;
        let mut out = vec![rat_zero(); deg + 1];
        for (exp, coef) in &self.terms {
            out[(exp.0 + exp.1 + exp.2) as usize] += coef;
        }
        out
    }

    /// Divides every term by b^db c^dc g^dg; `None` if any exponent would go negative.
    pub fn div_exact_monomial(&self, db: u32, dc: u32, dg: u32) -> Option<Self> {
        let mut terms = BTreeMap::new();
        for (exp, coef) in &self.terms {
            if exp.0 < db || exp.1 < dc || exp.2 < dg {
                return None;
            }
            terms.insert((exp.0 - db, exp.1 - dc, exp.2 - dg), coef.clone());
        }
        Some(Self { terms })
    }

    fn leading(&self) -> Option<(Exp, Rational)> {
        self.terms.iter().next_back().map(|(e, c)| (*e, c.clone()))
    }

    /// Exact single-divisor division under lex order; `None` when not divisible.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        assert!(!divisor.is_zero(), "division by zero polynomial");
        let (dexp, dcoef) = divisor.leading().unwrap();
        let mut rem = self.clone();
        let mut quot = Self::zero();
        while let Some((rexp, rcoef)) = rem.leading() {
            if rexp.0 < dexp.0 || rexp.1 < dexp.1 || rexp.2 < dexp.2 {
                return None;
            }
            let qexp = (rexp.0 - dexp.0, rexp.1 - dexp.1, rexp.2 - dexp.2);
            let qcoef = rcoef / &dcoef;
            let qterm = Self::monomial(qexp, qcoef);
            rem = rem.sub(&qterm.mul(divisor));
            quot = quot.add(&qterm);
        }
        Some(quot)
    }

    /// True when every coefficient is an integer.
    pub fn has_integer_coefficients(&self) -> bool {
        self.terms.values().all(|c| c.denom().is_one())
    }

    /// Deterministic term dump for serialization: sorted by exponent.
    pub fn term_list(&self) -> Vec<(Exp, Rational)> {
        self.terms.iter().map(|(e, c)| (*e, c.clone())).collect()
    }
}

impl fmt::Debug for PolyBCG {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for PolyBCG {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        // Highest term first reads naturally.
        for (exp, coef) in self.terms.iter().rev() {
            let mut mono = String::new();
            for (sym, e) in [("b", exp.0), ("c", exp.1), ("g", exp.2)] {
                if e == 1 {
                    mono.push_str(&format!("*{sym}"));
                } else if e > 1 {
                    mono.push_str(&format!("*{sym}^{e}"));
                }
            }
            let coef_s = super::format_rational(coef);
            let (sign, mag) = if coef_s.starts_with('-') {
                ("-", coef_s.trim_start_matches('-').to_string())
            } else {
                ("+", coef_s)
            };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, " {sign} ")?;
            }
            if mono.is_empty() {
                write!(f, "{mag}")?;
            } else if mag == "1" {
                write!(f, "{}", &mono[1..])?;
            } else {
                write!(f, "{mag}{mono}")?;
            }
        }
        Ok(())
    }
}

impl CoeffRing for PolyBCG {
    fn zero() -> Self {
        PolyBCG::zero()
    }
    fn one() -> Self {
        PolyBCG::one()
    }
    fn is_zero(&self) -> bool {
        PolyBCG::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        PolyBCG::add(self, rhs)
    }
    fn sub(&self, rhs: &Self) -> Self {
        PolyBCG::sub(self, rhs)
    }
    fn mul(&self, rhs: &Self) -> Self {
        PolyBCG::mul(self, rhs)
    }
    fn neg(&self) -> Self {
        PolyBCG::neg(self)
    }
    fn from_rational(q: &Rational) -> Self {
        PolyBCG::constant(q.clone())
    }
    fn scale(&self, q: &Rational) -> Self {
        PolyBCG::scale(self, q)
    }
}

/// Binomial coefficient C(v, k) = v (v-1) ... (v-k+1) / k! as a polynomial.
pub fn binom_poly(v: Var, k: u32) -> PolyBCG {
    binom_poly_of(&PolyBCG::var(v), k)
}

/// C(p, k) for an arbitrary polynomial argument p.
pub fn binom_poly_of(p: &PolyBCG, k: u32) -> PolyBCG {
    let mut acc = PolyBCG::one();
    for r in 0..k {
        acc = acc.mul(&p.sub(&PolyBCG::constant(super::rat_int(r as i64))));
    }
    acc.scale(&Rational::new(1.into(), factorial(k)))
}

/// Rising variant C(p + k - 1, k), the coefficient of t^k in (1 - t)^(-p).
pub fn binom_poly_rising(p: &PolyBCG, k: u32) -> PolyBCG {
    let mut acc = PolyBCG::one();
    for r in 0..k {
        acc = acc.mul(&p.add(&PolyBCG::constant(super::rat_int(r as i64))));
    }
    acc.scale(&Rational::new(1.into(), factorial(k)))
}
